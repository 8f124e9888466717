"""
Riffle shuffles.

``a_shuffle_distribution(n, a)`` is the bar structure polynomial at x = a,
divided by a^n. The probability attached to a window pi is the chance that
one a-shuffle of a sorted deck leaves card pi(t) in position t.

``gsr_oracle`` gets the same numbers with no algebra: label the cards with
all a^n digit words, undo the shuffle by a stable sort on the digits, and
invert the resulting arrangement.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import factorial

from .descent_algebras import VerificationReport, structure_poly_eval
from .errors import CapacityError, SizeMismatchError
from .group_algebra import GroupAlgebraElement, ga_convolve
from .perm_core import _inverse_a, enumerate_windows, format_window
from .qpoly import fmt_rational

__all__ = [
    "ShuffleDistribution", "a_shuffle_distribution", "repeated_shuffle", "convolve_m_fold",
    "gsr_oracle", "total_variation", "uniform_distribution", "tvd_table", "verify_shuffle",
    "GSR_WORK_LIMIT",
]

GSR_WORK_LIMIT = 10 ** 7


@dataclass(frozen=True)
class ShuffleDistribution:
    n: int
    a: int
    probabilities: dict  # window -> Fraction, zero entries omitted

    def __post_init__(self):
        if any(p < 0 for p in self.probabilities.values()):
            raise ValueError("negative probability")
        if sum(self.probabilities.values(), Fraction(0)) != 1:
            raise ValueError("probabilities do not sum to 1")

    def __getitem__(self, window) -> Fraction:
        return Fraction(self.probabilities.get(tuple(window), 0))

    def __eq__(self, other):
        if not isinstance(other, ShuffleDistribution):
            return NotImplemented
        return self.n == other.n and self.probabilities == other.probabilities

    def to_element(self) -> GroupAlgebraElement:
        return GroupAlgebraElement("A", self.n, self.probabilities)

    @classmethod
    def from_element(cls, elem: GroupAlgebraElement, a: int) -> "ShuffleDistribution":
        return cls(elem.n, a, {w: Fraction(c) for w, c in elem.terms.items()})

    def to_json(self) -> dict:
        return {"n": self.n, "a": self.a,
                "probabilities": {format_window(w): fmt_rational(p)
                                  for w, p in sorted(self.probabilities.items())}}

    def to_csv(self) -> str:
        rows = ["window,probability"]
        rows += [f"\"{format_window(w)}\",{fmt_rational(p)}" for w, p in sorted(self.probabilities.items())]
        return "\n".join(rows) + "\n"


def a_shuffle_distribution(n: int, a: int) -> ShuffleDistribution:
    if a < 1:
        raise ValueError("shuffle parameter must be >= 1")
    elem = structure_poly_eval(n, "A", a, bar=True)
    scale = Fraction(1, a ** n)
    return ShuffleDistribution(n, a, {w: Fraction(c) * scale for w, c in elem.terms.items()})


def convolve_m_fold(dist: ShuffleDistribution, m: int) -> ShuffleDistribution:
    """Distribution after m independent shuffles, by repeated convolution."""
    elem = dist.to_element()
    acc = elem
    for _ in range(m - 1):
        acc = ga_convolve(acc, elem)
    return ShuffleDistribution.from_element(acc, dist.a ** m)


def repeated_shuffle(n: int, m: int, check: bool = False) -> ShuffleDistribution:
    """m riffle shuffles (a = 2) in closed form: the 2^m-shuffle distribution."""
    if m < 1:
        raise ValueError("m must be >= 1")
    closed = a_shuffle_distribution(n, 2 ** m)
    if check and closed != convolve_m_fold(a_shuffle_distribution(n, 2), m):
        raise AssertionError(f"closed form disagrees with {m}-fold convolution at n={n}")
    return closed


def gsr_oracle(n: int, a: int) -> ShuffleDistribution:
    if a < 1:
        raise ValueError("shuffle parameter must be >= 1")
    if a ** n > GSR_WORK_LIMIT:
        raise CapacityError(f"{a}^{n} digit words exceed the work limit")
    counts: dict = {}
    for digits in product(range(a), repeat=n):
        undone = tuple(p + 1 for p in sorted(range(n), key=lambda p: (digits[p], p)))
        w = _inverse_a(undone)
        counts[w] = counts.get(w, 0) + 1
    total = a ** n
    return ShuffleDistribution(n, a, {w: Fraction(c, total) for w, c in counts.items()})


def uniform_distribution(n: int) -> ShuffleDistribution:
    p = Fraction(1, factorial(n))
    return ShuffleDistribution(n, 0, {w: p for w in enumerate_windows(n, "A")})


def total_variation(d1: ShuffleDistribution, d2: ShuffleDistribution) -> Fraction:
    if d1.n != d2.n:
        raise SizeMismatchError(f"distributions on S_{d1.n} and S_{d2.n}")
    keys = set(d1.probabilities) | set(d2.probabilities)
    return sum((abs(d1[w] - d2[w]) for w in keys), Fraction(0)) / 2


def tvd_table(n: int, ms) -> list[tuple[int, Fraction]]:
    """Total variation distance to uniform after m riffle shuffles, for each m."""
    u = uniform_distribution(n)
    return [(m, total_variation(repeated_shuffle(n, m), u)) for m in ms]


def verify_shuffle(n: int, max_a: int = 4, max_m: int = 3) -> VerificationReport:
    """
    Compare the closed form against the digit-word oracle for a = 1..max_a
    (skipping sizes past the oracle's work limit), and the 2^m closed form
    against m-fold convolution for m = 1..max_m.
    """
    start = time.perf_counter()
    checks = {}
    counterexample = None
    for a in range(1, max_a + 1):
        if a ** n > GSR_WORK_LIMIT:
            continue
        ok = gsr_oracle(n, a) == a_shuffle_distribution(n, a)
        checks[f"gsr_a{a}"] = ok
        if not ok and counterexample is None:
            counterexample = {"check": "gsr", "a": a}
    base = a_shuffle_distribution(n, 2)
    for m in range(1, max_m + 1):
        ok = convolve_m_fold(base, m) == a_shuffle_distribution(n, 2 ** m)
        checks[f"repeated_m{m}"] = ok
        if not ok and counterexample is None:
            counterexample = {"check": "repeated", "m": m}
    return VerificationReport("shuffle", n, list(range(1, max_a + 1)), counterexample is None,
                              counterexample, (time.perf_counter() - start) * 1000, checks)
