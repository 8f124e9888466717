"""
Exact computations in the descent, cyclic-descent and augmented-descent
subalgebras of the group algebras of S_n and B_n, with P-partition oracles,
q-analogs and riffle-shuffle distributions.
"""

from .errors import (
    CapacityError, EulerianError, InconsistentPosetError, InvalidCaseError,
    InvariantViolation, SizeMismatchError, UnsupportedKindError,
)
from .perm_core import (
    Permutation, SignedPermutation, compose, cyclic_class, descent_stats, embed_tilde,
    enumerate_group, inverse, omega, parse_window, signed_descent_stats,
)
from .qpoly import QPolynomial, binom, binom_in_x, q_integer, qbinomial
from .group_algebra import GroupAlgebraElement, augmentation, ga_add, ga_bar, ga_convolve, ga_scale
from .poset_engine import (
    BPoset, Poset, bposet_from_covers, chain_poset, count_partitions, format_poset,
    linear_extensions, order_poly_closed, parse_poset, poset_from_covers, q_count_partitions,
    q_order_poly_closed, zigzag, zigzag_B,
)
from .descent_algebras import (
    KINDS, IdempotentFamily, StructureKind, VerificationReport, eulerian_element,
    eulerian_polynomial, get_kind, loday_elements, q_structure_poly, structure_poly_coeffs,
    structure_poly_eval, theta_map, verify_eulerian_props, verify_loday, verify_product_identity,
    verify_q_identity, verify_theta,
)
from .shuffle import (
    ShuffleDistribution, a_shuffle_distribution, gsr_oracle, repeated_shuffle,
    total_variation, tvd_table, uniform_distribution, verify_shuffle,
)

__version__ = "0.1.0"
