"""
Labeled posets, type B posets, linear extensions, zig-zag posets and
brute-force P-partition counting.

Three flavors of P-partition are supported:

``ordinary``
    f: [n] -> {1..k} (or {0..k-1} for the q-weighted count, weight q^sum f(i)),
    f(i) <= f(j) when i <_P j, strictly when additionally i > j.
``typeb``
    f: +-[n] -> {-k..k} with f(-i) = -f(i) and f(0) = 0, same order rules.
``augmented``
    as ``typeb``, and f(i) < k for every positive label i (k plays the
    top element of the scale).

For both signed flavors the q-weight of f is q^(|f(1)| + ... + |f(n)|); on
the chain of a signed permutation that is the product of q^(chain value).

The closed forms (``order_poly_closed``, ``q_order_poly_closed``) are kept
strictly separate from the enumerators so that each checks the other.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import comb
from typing import Iterable, Iterator, Union

from .errors import CapacityError, InconsistentPosetError, InvalidCaseError
from .perm_core import (
    Permutation, SignedPermutation, descent_stats, enumerate_group, signed_descent_stats,
)
from .qpoly import QPolynomial, qbinomial

__all__ = [
    "Poset", "BPoset", "poset_from_covers", "bposet_from_covers", "chain_poset",
    "linear_extensions", "zigzag", "zigzag_B", "enumerate_partitions", "is_partition",
    "count_partitions", "q_count_partitions", "order_poly_closed", "q_order_poly_closed",
    "parse_poset", "format_poset", "FLAVORS", "WORK_LIMIT",
]

FLAVORS = ("ordinary", "typeb", "augmented")
WORK_LIMIT = 10 ** 8


def _closure(elements: Iterable[int], pairs: set) -> frozenset:
    elements = sorted(elements)
    succ = {e: set() for e in elements}
    for i, j in pairs:
        succ[i].add(j)
    # Warshall
    for m in elements:
        for i in elements:
            if m in succ[i]:
                succ[i] |= succ[m]
    for i in elements:
        if i in succ[i]:
            partner = next((j for j in succ[i] if i in succ[j] and j != i), i)
            raise InconsistentPosetError((i, partner))
    return frozenset((i, j) for i in elements for j in succ[i])


def _hasse(less: frozenset) -> list[tuple[int, int]]:
    succ: dict = {}
    for i, j in less:
        succ.setdefault(i, set()).add(j)
    return sorted((i, j) for i, j in less
                  if not any(j in succ.get(m, ()) for m in succ.get(i, ()) if m != j))


@dataclass(frozen=True)
class Poset:
    """A poset on [n]; ``less`` is the full strict order relation."""

    n: int
    less: frozenset

    kind = "A"

    @property
    def elements(self) -> list[int]:
        return list(range(1, self.n + 1))

    def lt(self, i: int, j: int) -> bool:
        return (i, j) in self.less

    def covers(self) -> list[tuple[int, int]]:
        return _hasse(self.less)


@dataclass(frozen=True)
class BPoset:
    """A poset on {-n..n} closed under i < j  =>  -j < -i."""

    n: int
    less: frozenset

    kind = "B"

    @property
    def elements(self) -> list[int]:
        return list(range(-self.n, self.n + 1))

    def lt(self, i: int, j: int) -> bool:
        return (i, j) in self.less

    def covers(self) -> list[tuple[int, int]]:
        return _hasse(self.less)


AnyPoset = Union[Poset, BPoset]


def poset_from_covers(n: int, covers: Iterable[tuple[int, int]] = ()) -> Poset:
    pairs = set()
    for i, j in covers:
        if not (1 <= i <= n and 1 <= j <= n):
            raise ValueError(f"relation {i} < {j} is outside [{n}]")
        pairs.add((i, j))
    return Poset(n, _closure(range(1, n + 1), pairs))


def bposet_from_covers(n: int, covers: Iterable[tuple[int, int]] = ()) -> BPoset:
    pairs = set()
    for i, j in covers:
        if not (abs(i) <= n and abs(j) <= n):
            raise ValueError(f"relation {i} < {j} is outside +-[{n}]")
        pairs.add((i, j))
        pairs.add((-j, -i))
    return BPoset(n, _closure(range(-n, n + 1), pairs))


def chain_poset(pi: Union[Permutation, SignedPermutation]) -> AnyPoset:
    """The total order pi(1) < pi(2) < ... (preceded by 0 for signed pi)."""
    if isinstance(pi, SignedPermutation):
        w = (0,) + pi.window
        return bposet_from_covers(pi.n, zip(w, w[1:]))
    w = pi.window
    return poset_from_covers(pi.n, zip(w, w[1:]))


def linear_extensions(P: AnyPoset) -> list:
    """Every (signed) permutation pi with i <_P j  =>  pi^-1(i) < pi^-1(j)."""
    out = []
    for pi in enumerate_group(P.n, P.kind):
        pos = {0: 0}
        for s, v in enumerate(pi.window, 1):
            pos[v] = s
            pos[-v] = -s
        if all(pos[i] < pos[j] for i, j in P.less):
            out.append(pi)
    return out


def zigzag(pi: Permutation, I: Iterable[int]) -> Poset:
    """Chain through pi(1..n) stepping down exactly at the positions in I."""
    I = set(I)
    if not I <= set(range(1, pi.n)):
        raise InvalidCaseError(f"zig-zag positions {sorted(I)} not inside [{pi.n - 1}]")
    w = pi.window
    covers = [(w[s], w[s - 1]) if s in I else (w[s - 1], w[s]) for s in range(1, pi.n)]
    return poset_from_covers(pi.n, covers)


def zigzag_B(pi: SignedPermutation, I: Iterable[int], flavor: str = "typeb") -> BPoset:
    """
    Type B zig-zag through 0, pi(1), ..., pi(n) with downward steps on I.

    The augmented flavor closes the chain back to 0 after pi(n), so I may
    contain n but must be neither empty nor all of {0..n}.
    """
    I = set(I)
    n = pi.n
    w = (0,) + pi.window
    if flavor == "typeb":
        if not I <= set(range(n)):
            raise InvalidCaseError(f"type B zig-zag positions must lie in 0..{n - 1}")
    elif flavor == "augmented":
        if not I <= set(range(n + 1)):
            raise InvalidCaseError(f"augmented zig-zag positions must lie in 0..{n}")
        if not I or I == set(range(n + 1)):
            raise InvalidCaseError("augmented zig-zag needs a nonempty proper subset of {0..n}")
        w = w + (0,)
    else:
        raise ValueError(f"unknown zig-zag flavor {flavor!r}")
    covers = [(w[s + 1], w[s]) if s in I else (w[s], w[s + 1]) for s in range(len(w) - 1)]
    return bposet_from_covers(n, covers)


def _check_flavor(P: AnyPoset, flavor: str):
    if flavor not in FLAVORS:
        raise ValueError(f"unknown flavor {flavor!r}")
    if (flavor == "ordinary") != (P.kind == "A"):
        raise ValueError(f"flavor {flavor!r} does not apply to a type {P.kind} poset")


def _domain(P: AnyPoset, k: int, flavor: str, shifted: bool) -> range:
    if flavor == "ordinary":
        return range(0, k) if shifted else range(1, k + 1)
    return range(-k, k) if flavor == "augmented" else range(-k, k + 1)


def enumerate_partitions(P: AnyPoset, k: int, flavor: str, shifted: bool = False) -> Iterator[dict]:
    """
    Yield every P-partition as a dict label -> value over the labels 1..n.

    ``shifted`` selects the {0..k-1} scale for the ordinary flavor.
    Labels are assigned along a linear order of the variables; a partial
    assignment is abandoned as soon as a relation between assigned labels fails.
    """
    _check_flavor(P, flavor)
    if k < 1:
        raise ValueError("k must be positive")
    domain = _domain(P, k, flavor, shifted)
    if len(domain) ** P.n > WORK_LIMIT:
        raise CapacityError(f"{len(domain)}^{P.n} assignments exceed the work limit {WORK_LIMIT}")
    n = P.n
    if P.kind == "A":
        order = _topological(P)
    else:
        order = list(range(1, n + 1))
    rank = {v: r for r, v in enumerate(order)}

    # each relation is checked once, at the step that fixes its last variable
    checks: list[list] = [[] for _ in order]
    for i, j in P.less:
        vi, vj = abs(i), abs(j)
        last = max(rank.get(vi, -1), rank.get(vj, -1))
        if last < 0:
            continue
        checks[last].append((i, j, i > j))

    value = {0: 0}

    def f(x):
        return value[x] if x >= 0 else -value[-x]

    def step(r):
        if r == n:
            yield {v: value[v] for v in range(1, n + 1)}
            return
        var = order[r]
        for val in domain:
            value[var] = val
            ok = True
            for i, j, strict in checks[r]:
                fi, fj = f(i), f(j)
                if fi > fj or (strict and fi == fj):
                    ok = False
                    break
            if ok:
                yield from step(r + 1)
        del value[var]

    yield from step(0)


def _topological(P: Poset) -> list[int]:
    below = {j: {i for i, jj in P.less if jj == j} for j in P.elements}
    order, placed = [], set()
    while len(order) < P.n:
        nxt = min(j for j in P.elements if j not in placed and below[j] <= placed)
        order.append(nxt)
        placed.add(nxt)
    return order


def is_partition(P: AnyPoset, values: dict, k: int, flavor: str, shifted: bool = False) -> bool:
    """Check a single assignment (labels 1..n -> values) against P directly."""
    _check_flavor(P, flavor)
    domain = _domain(P, k, flavor, shifted)
    if any(values[v] not in domain for v in range(1, P.n + 1)):
        return False

    def f(x):
        return 0 if x == 0 else (values[x] if x > 0 else -values[-x])

    return all(f(i) < f(j) if i > j else f(i) <= f(j) for i, j in P.less)


def count_partitions(P: AnyPoset, k: int, flavor: str) -> int:
    """Number of P-partitions, by exhaustive enumeration."""
    return sum(1 for _ in enumerate_partitions(P, k, flavor))


def q_count_partitions(P: AnyPoset, k: int, flavor: str) -> QPolynomial:
    """q-weighted enumeration; ordinary flavor uses the {0..k-1} scale."""
    counts: dict = {}
    for f in enumerate_partitions(P, k, flavor, shifted=True):
        e = sum(abs(v) for v in f.values())
        counts[e] = counts.get(e, 0) + 1
    return QPolynomial(counts)


def _closed_args(pi, flavor: str) -> tuple[int, int, int]:
    """(top shift, statistic, q exponent) for the closed forms."""
    if flavor == "ordinary":
        if not isinstance(pi, Permutation):
            raise ValueError("ordinary flavor needs an unsigned permutation")
        st = descent_stats(pi)
        return pi.n - 1 - st.des, st.des, st.comaj
    if not isinstance(pi, SignedPermutation):
        raise ValueError(f"{flavor} flavor needs a signed permutation")
    st = signed_descent_stats(pi)
    if flavor == "typeb":
        return pi.n - st.des, st.des, st.comaj
    if flavor == "augmented":
        return pi.n - st.ades, st.ades, st.acomaj
    raise ValueError(f"unknown flavor {flavor!r}")


def order_poly_closed(pi, k: int, flavor: str) -> int:
    shift, _, _ = _closed_args(pi, flavor)
    top = k + shift
    return comb(top, pi.n) if top >= 0 else 0


def q_order_poly_closed(pi, k: int, flavor: str) -> QPolynomial:
    shift, _, stat = _closed_args(pi, flavor)
    top = k + shift
    if top < 0:
        return QPolynomial()
    return QPolynomial.monomial(stat) * qbinomial(top, pi.n)


_HEADER = re.compile(r"^poset\s+([AB])\s+(\d+)$")
_REL = re.compile(r"^(-?\d+)\s*<\s*(-?\d+)$")


def parse_poset(text: str) -> AnyPoset:
    """
    Read the text format::

        poset A 3
        3 < 1   # comments allowed
        3 < 2

    Type B files list one relation of each mirrored pair; closure adds the rest.
    """
    header = None
    covers = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if header is None:
            m = _HEADER.match(line)
            if not m:
                raise ValueError(f"line {lineno}: expected 'poset A|B <n>', got {raw!r}")
            header = (m.group(1), int(m.group(2)))
            continue
        m = _REL.match(line)
        if not m:
            raise ValueError(f"line {lineno}: expected 'a < b', got {raw!r}")
        covers.append((int(m.group(1)), int(m.group(2))))
    if header is None:
        raise ValueError("missing poset header")
    kind, n = header
    return poset_from_covers(n, covers) if kind == "A" else bposet_from_covers(n, covers)


def format_poset(P: AnyPoset) -> str:
    lines = [f"poset {P.kind} {P.n}"]
    covers = P.covers()
    if P.kind == "B":
        covers = sorted({min((i, j), (-j, -i)) for i, j in covers})
    lines += [f"{i} < {j}" for i, j in covers]
    return "\n".join(lines) + "\n"
