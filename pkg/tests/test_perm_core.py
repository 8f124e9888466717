import pytest
from hypothesis import given, strategies as st

from eulerian import (
    CapacityError, Permutation, SignedPermutation, SizeMismatchError, compose, cyclic_class,
    descent_stats, embed_tilde, enumerate_group, inverse, omega, parse_window, signed_descent_stats,
)
from eulerian.perm_core import enumerate_windows, format_window, group_order, lifted_guardrails


def perms(min_n=1, max_n=7):
    return st.integers(min_n, max_n).flatmap(
        lambda n: st.permutations(range(1, n + 1)).map(lambda w: Permutation(tuple(w))))


@st.composite
def signed_perms(draw, min_n=1, max_n=6):
    n = draw(st.integers(min_n, max_n))
    w = draw(st.permutations(range(1, n + 1)))
    signs = draw(st.lists(st.sampled_from([1, -1]), min_size=n, max_size=n))
    return SignedPermutation(tuple(s * v for s, v in zip(signs, w)))


def same_size_triple(strategy):
    def build(first):
        cls, n = type(first), first.n
        pool = list(enumerate_group(n, first.kind)) if n <= 4 else None
        if pool is not None:
            return st.tuples(st.just(first), st.sampled_from(pool), st.sampled_from(pool))
        other = st.permutations(range(1, n + 1)).map(lambda w: cls(tuple(w)))
        return st.tuples(st.just(first), other, other)
    return strategy.flatmap(build)


# -- composition and inversion -------------------------------------------------

def test_compose_examples():
    assert compose(Permutation((1, 2, 3)), Permutation((3, 1, 2))) == Permutation((3, 1, 2))
    assert compose(Permutation((2, 1, 3)), Permutation((1, 3, 2))) == Permutation((2, 3, 1))
    assert compose(SignedPermutation((-1,)), SignedPermutation((-1,))) == SignedPermutation((1,))


def test_inverse_examples():
    assert inverse(Permutation((1, 2, 3))) == Permutation((1, 2, 3))
    assert inverse(Permutation((2, 3, 1))) == Permutation((3, 1, 2))
    assert inverse(SignedPermutation((-2, 1))) == SignedPermutation((2, -1))


def test_signed_call_is_odd():
    pi = SignedPermutation((-2, 3, 1))
    assert pi(0) == 0
    for s in range(1, 4):
        assert pi(-s) == -pi(s)


def test_compose_rejects_mismatched_operands():
    with pytest.raises(SizeMismatchError):
        compose(Permutation((1, 2)), Permutation((1, 2, 3)))
    with pytest.raises(SizeMismatchError):
        compose(Permutation((1, 2)), SignedPermutation((1, 2)))


@pytest.mark.parametrize("bad", [(1, 1), (0, 1), (2, 3), ()])
def test_invalid_windows_rejected(bad):
    with pytest.raises(ValueError):
        Permutation(bad)


def test_invalid_signed_windows_rejected():
    with pytest.raises(ValueError):
        SignedPermutation((1, -1))
    with pytest.raises(ValueError):
        SignedPermutation((0, 1))


@given(perms())
def test_inverse_is_two_sided(pi):
    e = Permutation.identity(pi.n)
    assert pi * pi.inverse() == e
    assert pi.inverse() * pi == e


@given(signed_perms())
def test_signed_inverse_is_two_sided(pi):
    e = SignedPermutation.identity(pi.n)
    assert pi * pi.inverse() == e == pi.inverse() * pi


@given(same_size_triple(perms(max_n=6)))
def test_composition_associative(triple):
    a, b, c = triple
    assert (a * b) * c == a * (b * c)


@given(same_size_triple(signed_perms(max_n=5)))
def test_signed_composition_associative(triple):
    a, b, c = triple
    assert (a * b) * c == a * (b * c)


@given(same_size_triple(signed_perms(max_n=5)))
def test_composition_is_pointwise(triple):
    a, b, _ = triple
    ab = a * b
    for i in range(-a.n, a.n + 1):
        assert ab(i) == a(b(i))


# -- statistics --------------------------------------------------------------------

def test_descent_examples():
    r = descent_stats(Permutation((1, 4, 3, 2)))
    assert r.des_set == {2, 3} and r.des == 2
    assert r.cdes_set == {2, 3, 4} and r.cdes == 3
    assert r.comaj == 3
    assert r.maj == 5


@pytest.mark.parametrize("n", [2, 3, 5])
def test_identity_statistics(n):
    r = descent_stats(Permutation.identity(n))
    assert r.des_set == set() and r.cdes_set == {n} and r.cdes == 1 and r.comaj == 0


def test_signed_descent_examples():
    r = signed_descent_stats(SignedPermutation((-2, 1)))
    assert r.des_set == {0} and r.des == 1
    assert r.ades_set == {0, 2} and r.ades == 2
    assert r.acomaj == 2
    r = signed_descent_stats(SignedPermutation((1, 2)))
    assert r.des_set == set() and r.ades_set == {2} and r.ades == 1 and r.acomaj == 0


@given(perms(min_n=2))
def test_cdes_bounds(pi):
    r = descent_stats(pi)
    assert 1 <= r.cdes <= pi.n - 1
    assert r.des <= r.cdes <= r.des + 1


@given(signed_perms())
def test_ades_bounds(pi):
    r = signed_descent_stats(pi)
    assert 1 <= r.ades <= pi.n
    assert r.comaj == sum(pi.n - d for d in r.des_set)
    assert r.acomaj == r.comaj


@given(perms(min_n=2), st.integers(0, 6))
def test_cdes_invariant_under_rotation_both_sides(pi, i):
    w = omega(pi.n)
    power = Permutation.identity(pi.n)
    for _ in range(i % pi.n):
        power = power * w
    c = descent_stats(pi).cdes
    assert descent_stats(pi * power).cdes == c
    assert descent_stats(power * pi).cdes == c


# -- embedding and cyclic classes ---------------------------------------------------

def test_embed_examples():
    assert embed_tilde(Permutation((2, 1))) == Permutation((2, 1, 3))
    assert embed_tilde(Permutation((1, 2))) == Permutation((1, 2, 3))
    assert descent_stats(Permutation((3, 1, 2))).des == 1
    assert descent_stats(embed_tilde(Permutation((3, 1, 2)))).cdes == 2


def test_cyclic_class_examples():
    assert set(cyclic_class(Permutation((1, 2)))) == {Permutation((1, 2)), Permutation((2, 1))}
    cls = cyclic_class(Permutation((2, 1, 3)))
    assert set(cls) == {Permutation((2, 1, 3)), Permutation((1, 3, 2)), Permutation((3, 2, 1))}
    assert {descent_stats(p).cdes for p in cls} == {2}


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_cyclic_classes_partition_the_group(n):
    seen = set()
    for pi in enumerate_group(n - 1, "A"):
        cls = cyclic_class(embed_tilde(pi))
        assert len(set(cls)) == n
        assert seen.isdisjoint(cls)
        seen.update(cls)
    assert len(seen) == group_order(n, "A")


# -- enumeration ----------------------------------------------------------------------

def test_enumeration_examples():
    assert len(list(enumerate_group(3, "A"))) == 6
    assert list(enumerate_group(1, "B")) == [SignedPermutation((-1,)), SignedPermutation((1,))]
    assert len(list(enumerate_group(2, "B"))) == 8


@pytest.mark.parametrize("kind,n", [("A", 1), ("A", 4), ("B", 1), ("B", 3)])
def test_enumeration_exhaustive_sorted_unique(kind, n):
    ws = list(enumerate_windows(n, kind))
    assert ws == sorted(set(ws))
    assert len(ws) == group_order(n, kind)


def test_guardrails():
    with pytest.raises(CapacityError):
        next(enumerate_windows(9, "A"))
    with pytest.raises(CapacityError):
        next(enumerate_windows(7, "B"))
    assert next(enumerate_windows(9, "A", force=True)) == tuple(range(1, 10))
    with lifted_guardrails():
        assert next(enumerate_windows(7, "B"))[0] == -7
    with pytest.raises(CapacityError):
        next(enumerate_windows(7, "B"))


def test_parse_and_format_round_trip():
    assert parse_window("2, 3,1") == Permutation((2, 3, 1))
    assert parse_window("-2,1", signed=True) == SignedPermutation((-2, 1))
    assert format_window((-2, 1)) == "-2,1"
    with pytest.raises(ValueError):
        parse_window("1,a")


@given(signed_perms())
def test_window_text_round_trip(pi):
    assert parse_window(str(pi), signed=True) == pi
