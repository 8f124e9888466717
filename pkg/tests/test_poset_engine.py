from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from eulerian import (
    CapacityError, InconsistentPosetError, InvalidCaseError, Permutation, QPolynomial,
    SignedPermutation, bposet_from_covers, chain_poset, count_partitions, descent_stats,
    enumerate_group, format_poset, linear_extensions, order_poly_closed, parse_poset,
    poset_from_covers, q_count_partitions, q_order_poly_closed, qbinomial,
    signed_descent_stats, zigzag, zigzag_B,
)
from eulerian.poset_engine import enumerate_partitions

from helpers import extension_tags, random_posets

q = QPolynomial.monomial(1)


# -- construction ---------------------------------------------------------------------

def test_poset_from_covers_examples():
    P = poset_from_covers(3, [(3, 1), (3, 2)])
    assert P.less == {(3, 1), (3, 2)}
    assert poset_from_covers(4).less == frozenset()
    with pytest.raises(InconsistentPosetError):
        poset_from_covers(2, [(1, 2), (2, 1)])


def test_closure_is_transitive():
    P = poset_from_covers(4, [(1, 2), (2, 3), (3, 4)])
    assert P.lt(1, 4) and not P.lt(4, 1)
    assert P.covers() == [(1, 2), (2, 3), (3, 4)]


def test_bposet_examples():
    P = bposet_from_covers(1, [(0, 1)])
    assert P.less == {(-1, 0), (0, 1), (-1, 1)}
    Q = bposet_from_covers(2, [(0, -2), (-2, 1)])
    assert Q == chain_poset(SignedPermutation((-2, 1)))
    assert linear_extensions(Q) == [SignedPermutation((-2, 1))]
    with pytest.raises(InconsistentPosetError):
        bposet_from_covers(1, [(1, -1), (-1, 1)])


def test_bad_labels_rejected():
    with pytest.raises(ValueError):
        poset_from_covers(2, [(1, 3)])
    with pytest.raises(ValueError):
        bposet_from_covers(2, [(1, 3)])


# -- linear extensions ---------------------------------------------------------------------

def test_linear_extension_examples():
    P = poset_from_covers(3, [(3, 1), (3, 2)])
    assert set(linear_extensions(P)) == {Permutation((3, 2, 1)), Permutation((3, 1, 2))}
    assert len(linear_extensions(poset_from_covers(3))) == 6
    assert linear_extensions(poset_from_covers(3, [(1, 2), (2, 3)])) == [Permutation((1, 2, 3))]


@pytest.mark.parametrize("kind", ["A", "B"])
def test_chain_has_unique_extension(kind):
    for pi in enumerate_group(3, kind):
        assert linear_extensions(chain_poset(pi)) == [pi]


# -- zig-zag posets ---------------------------------------------------------------------------

def test_zigzag_examples():
    assert zigzag(Permutation.identity(4), []) == chain_poset(Permutation.identity(4))
    pi = Permutation((3, 1, 5, 2, 4))
    Z = zigzag(pi, {2, 3})
    w = pi.window
    assert Z.covers() == sorted([(w[0], w[1]), (w[2], w[1]), (w[3], w[2]), (w[3], w[4])])
    with pytest.raises(InvalidCaseError):
        zigzag(pi, {5})


def test_zigzag_b_examples():
    assert zigzag_B(SignedPermutation((1, 2)), []) == chain_poset(SignedPermutation((1, 2)))
    Z = zigzag_B(SignedPermutation((-2, 1)), {0})
    assert Z.lt(-2, 0) and Z.lt(-2, 1) and not Z.lt(0, 1) and not Z.lt(1, 0)
    with pytest.raises(InvalidCaseError):
        zigzag_B(SignedPermutation((1, 2)), {0, 1, 2}, flavor="augmented")
    with pytest.raises(InvalidCaseError):
        zigzag_B(SignedPermutation((1, 2)), set(), flavor="augmented")


def _subsets(items):
    items = list(items)
    for r in range(len(items) + 1):
        yield from (set(c) for c in combinations(items, r))


def test_zigzag_correspondence_s4():
    group = list(enumerate_group(4, "A"))
    for pi in group:
        for I in _subsets(range(1, 4)):
            expected = {s for s in group if descent_stats(s.inverse() * pi).des_set == I}
            assert set(linear_extensions(zigzag(pi, I))) == expected


@pytest.mark.parametrize("flavor", ["typeb", "augmented"])
def test_zigzag_correspondence_b3(flavor):
    group = list(enumerate_group(3, "B"))
    positions = range(3) if flavor == "typeb" else range(4)
    for pi in group:
        for I in _subsets(positions):
            if flavor == "augmented" and (not I or I == set(positions)):
                continue
            if flavor == "typeb":
                match = lambda s: signed_descent_stats(s.inverse() * pi).des_set == I
            else:
                match = lambda s: signed_descent_stats(s.inverse() * pi).ades_set == I
            expected = {s for s in group if match(s)}
            assert set(linear_extensions(zigzag_B(pi, I, flavor))) == expected


# -- P-partition oracles ------------------------------------------------------------------------

def test_count_examples():
    for k in range(1, 5):
        assert count_partitions(poset_from_covers(3), k, "ordinary") == k ** 3
        assert count_partitions(bposet_from_covers(2), k, "augmented") == (2 * k) ** 2
    assert count_partitions(chain_poset(Permutation((3, 2, 1, 4))), 3, "ordinary") == 1
    assert list(enumerate_partitions(chain_poset(Permutation((3, 2, 1, 4))), 3, "ordinary")) == [
        {1: 3, 2: 2, 3: 1, 4: 3}]


def test_closed_form_examples():
    assert order_poly_closed(Permutation((3, 2, 1, 4)), 3, "ordinary") == 1
    assert order_poly_closed(SignedPermutation((-2, 1)), 2, "typeb") == 3
    assert order_poly_closed(SignedPermutation((-2, 1)), 2, "augmented") == 1
    assert count_partitions(chain_poset(SignedPermutation((-2, 1))), 2, "typeb") == 3
    assert count_partitions(chain_poset(SignedPermutation((-2, 1))), 2, "augmented") == 1


def test_q_count_examples():
    assert q_count_partitions(chain_poset(Permutation((2, 1))), 2, "ordinary") == q
    assert q_order_poly_closed(Permutation((2, 1)), 2, "ordinary") == q
    for k in range(1, 6):
        assert q_count_partitions(poset_from_covers(1), k, "ordinary") == sum(
            (QPolynomial.monomial(i) for i in range(k)), QPolynomial())
        aug = chain_poset(SignedPermutation((-2, 1)))
        expected = q * q * qbinomial(k, 2)
        assert q_count_partitions(aug, k, "augmented") == expected
        assert q_order_poly_closed(SignedPermutation((-2, 1)), k, "augmented") == expected
        assert q_order_poly_closed(Permutation.identity(3), k, "ordinary") == qbinomial(k + 2, 3)


@pytest.mark.parametrize("kind,flavor", [("A", "ordinary"), ("B", "typeb"), ("B", "augmented")])
def test_q_specialization_matches_plain_count(kind, flavor):
    for P in random_posets(kind, 8, 3, seed=11):
        for k in (1, 2, 3):
            assert q_count_partitions(P, k, flavor)(1) == count_partitions(P, k, flavor)


def test_flavor_mismatch_and_limits():
    with pytest.raises(ValueError):
        count_partitions(poset_from_covers(2), 2, "typeb")
    with pytest.raises(ValueError):
        count_partitions(bposet_from_covers(2), 2, "ordinary")
    with pytest.raises(ValueError):
        count_partitions(poset_from_covers(2), 2, "weird")
    with pytest.raises(CapacityError):
        count_partitions(poset_from_covers(8), 11, "ordinary")


@pytest.mark.parametrize("kind,flavors,max_n", [
    ("A", ["ordinary"], 4), ("B", ["typeb", "augmented"], 3)])
def test_fundamental_decomposition_is_disjoint(kind, flavors, max_n):
    for P in random_posets(kind, 12, max_n, seed=5):
        exts = linear_extensions(P)
        for flavor in flavors:
            for k in (1, 2):
                total = 0
                for f in enumerate_partitions(P, k, flavor):
                    assert len(extension_tags(P, f, k, flavor, exts)) == 1
                    total += 1
                assert total == sum(order_poly_closed(pi, k, flavor) for pi in exts)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.permutations(range(1, n + 1))), st.integers(1, 4))
def test_enumerated_partitions_satisfy_definition(window, k):
    from eulerian.poset_engine import is_partition
    P = zigzag(Permutation(tuple(window)), {1} if len(window) > 1 else set())
    found = list(enumerate_partitions(P, k, "ordinary"))
    assert len({tuple(sorted(f.items())) for f in found}) == len(found)
    assert all(is_partition(P, f, k, "ordinary") for f in found)


# -- text format ------------------------------------------------------------------------------

def test_parse_poset_text():
    P = parse_poset("poset A 3\n# the V shape\n3 < 1\n3 < 2   # trailing comment\n")
    assert P == poset_from_covers(3, [(3, 1), (3, 2)])
    B = parse_poset("poset B 2\n0 < -2\n-2 < 1\n")
    assert B == chain_poset(SignedPermutation((-2, 1)))


@pytest.mark.parametrize("text", ["", "poset C 2\n", "poset A 2\n1 <\n", "poset A 2\n1 < 3\n"])
def test_parse_poset_errors(text):
    with pytest.raises(ValueError):
        parse_poset(text)


@pytest.mark.parametrize("kind", ["A", "B"])
def test_format_parse_round_trip(kind):
    for P in random_posets(kind, 25, 5, seed=3):
        assert parse_poset(format_poset(P)) == P
