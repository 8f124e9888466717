"""
Permutations of [n] and signed permutations of +-[n], with the descent
statistics used throughout the package.

Elements are stored in one-line notation: ``window[i] == pi(i + 1)``.
Composition is functional, ``(a * b)(i) == a(b(i))``, everywhere.

>>> p = Permutation((1, 4, 3, 2))
>>> sorted(descent_stats(p).des_set)
[2, 3]
>>> SignedPermutation((-2, 1)).inverse()
SignedPermutation(window=(2, -1))
"""

from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass
from itertools import permutations
from typing import Iterator, Union

from .errors import CapacityError, SizeMismatchError

__all__ = [
    "Permutation", "SignedPermutation", "DescentRecord", "SignedDescentRecord",
    "compose", "inverse", "descent_stats", "signed_descent_stats",
    "embed_tilde", "omega", "cyclic_class", "enumerate_group", "enumerate_windows",
    "parse_window", "format_window", "group_order", "GUARDRAIL", "lifted_guardrails",
]

# largest rank each group may be enumerated at without an explicit override
GUARDRAIL = {"A": 8, "B": 6}


def _compose_a(a: tuple, b: tuple) -> tuple:
    return tuple(a[t - 1] for t in b)


def _compose_b(a: tuple, b: tuple) -> tuple:
    return tuple(a[t - 1] if t > 0 else -a[-t - 1] for t in b)


def _inverse_a(a: tuple) -> tuple:
    out = [0] * len(a)
    for i, v in enumerate(a, 1):
        out[v - 1] = i
    return tuple(out)


def _inverse_b(a: tuple) -> tuple:
    out = [0] * len(a)
    for i, v in enumerate(a, 1):
        if v > 0:
            out[v - 1] = i
        else:
            out[-v - 1] = -i
    return tuple(out)


@dataclass(frozen=True, slots=True)
class Permutation:
    """A bijection of [n], stored as its window (pi(1), ..., pi(n))."""

    window: tuple[int, ...]

    def __post_init__(self):
        w = tuple(int(v) for v in self.window)
        object.__setattr__(self, "window", w)
        if not w:
            raise ValueError("a permutation needs n >= 1")
        if sorted(w) != list(range(1, len(w) + 1)):
            raise ValueError(f"{w} is not a permutation of [{len(w)}]")

    kind = "A"

    @property
    def n(self) -> int:
        return len(self.window)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    def __call__(self, i: int) -> int:
        return self.window[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def inverse(self) -> "Permutation":
        return Permutation(_inverse_a(self.window))

    def __lt__(self, other):
        return self.window < other.window

    def __str__(self):
        return format_window(self.window)


@dataclass(frozen=True, slots=True)
class SignedPermutation:
    """
    An element of the hyperoctahedral group B_n.

    Only pi(1), ..., pi(n) are stored; pi(0) = 0 and pi(-s) = -pi(s) are implied.
    """

    window: tuple[int, ...]

    def __post_init__(self):
        w = tuple(int(v) for v in self.window)
        object.__setattr__(self, "window", w)
        if not w:
            raise ValueError("a signed permutation needs n >= 1")
        if 0 in w or sorted(abs(v) for v in w) != list(range(1, len(w) + 1)):
            raise ValueError(f"{w} is not a signed permutation of [{len(w)}]")

    kind = "B"

    @property
    def n(self) -> int:
        return len(self.window)

    @classmethod
    def identity(cls, n: int) -> "SignedPermutation":
        return cls(tuple(range(1, n + 1)))

    def __call__(self, i: int) -> int:
        if i == 0:
            return 0
        return self.window[i - 1] if i > 0 else -self.window[-i - 1]

    def __mul__(self, other: "SignedPermutation") -> "SignedPermutation":
        return compose(self, other)

    def inverse(self) -> "SignedPermutation":
        return SignedPermutation(_inverse_b(self.window))

    def __lt__(self, other):
        return self.window < other.window

    def __str__(self):
        return format_window(self.window)


Element = Union[Permutation, SignedPermutation]


def compose(a: Element, b: Element) -> Element:
    """Return the element ``i -> a(b(i))``."""
    if type(a) is not type(b) or a.n != b.n:
        raise SizeMismatchError(f"cannot compose {a!r} with {b!r}")
    if isinstance(a, Permutation):
        return Permutation(_compose_a(a.window, b.window))
    return SignedPermutation(_compose_b(a.window, b.window))


def inverse(a: Element) -> Element:
    return a.inverse()


@dataclass(frozen=True)
class DescentRecord:
    des_set: frozenset
    des: int
    cdes_set: frozenset
    cdes: int
    comaj: int
    maj: int


@dataclass(frozen=True)
class SignedDescentRecord:
    des_set: frozenset
    des: int
    ades_set: frozenset
    ades: int
    comaj: int
    acomaj: int


def _des_set(w: tuple) -> frozenset:
    return frozenset(i for i in range(1, len(w)) if w[i - 1] > w[i])


def descent_stats(pi: Permutation) -> DescentRecord:
    """Descent set, cyclic descent set, comajor and major index of ``pi``."""
    w = pi.window
    n = len(w)
    des = _des_set(w)
    cdes = des | {n} if n > 1 and w[-1] > w[0] else des
    return DescentRecord(
        des_set=des, des=len(des), cdes_set=frozenset(cdes), cdes=len(cdes),
        comaj=sum(n - s for s in des), maj=sum(des),
    )


def signed_descent_stats(pi: SignedPermutation) -> SignedDescentRecord:
    """Type B descents (pi(0) = 0 included) and augmented descents of ``pi``."""
    w = (0,) + pi.window
    n = pi.n
    des = frozenset(i for i in range(n) if w[i] > w[i + 1])
    ades = des | {n} if w[n] > 0 else des
    # a(s) = number of (augmented) descents strictly left of s; position n never counts
    comaj = sum(sum(1 for d in des if d < s) for s in range(1, n + 1))
    acomaj = sum(sum(1 for d in ades if d < s) for s in range(1, n + 1))
    return SignedDescentRecord(
        des_set=des, des=len(des), ades_set=frozenset(ades), ades=len(ades),
        comaj=comaj, acomaj=acomaj,
    )


def embed_tilde(pi: Permutation) -> Permutation:
    """Extend a permutation of [n-1] to [n] by fixing n."""
    return Permutation(pi.window + (pi.n + 1,))


def omega(n: int) -> Permutation:
    """The n-cycle i -> i+1 (mod n) as a concrete permutation."""
    return Permutation(tuple(range(2, n + 1)) + (1,))


def cyclic_class(sigma: Permutation) -> list[Permutation]:
    """The n rotations ``sigma * omega**i`` for i = 0, ..., n-1."""
    w = omega(sigma.n)
    out, cur = [], sigma
    for _ in range(sigma.n):
        out.append(cur)
        cur = compose(cur, w)
    return out


def group_order(n: int, kind: str) -> int:
    from math import factorial
    return factorial(n) * (2 ** n if kind == "B" else 1)


_lifted = False


@contextmanager
def lifted_guardrails():
    """Disable the enumeration guardrails inside the block (used by ``--force``)."""
    global _lifted
    prev, _lifted = _lifted, True
    try:
        yield
    finally:
        _lifted = prev


def _check_capacity(n: int, kind: str, force: bool):
    if kind not in GUARDRAIL:
        raise ValueError(f"unknown group kind {kind!r}")
    if n < 1:
        raise ValueError("n must be positive")
    if n > GUARDRAIL[kind] and not (force or _lifted):
        raise CapacityError(f"enumerating {kind}_{n} exceeds the guardrail n <= {GUARDRAIL[kind]}")


def enumerate_windows(n: int, kind: str = "A", force: bool = False) -> Iterator[tuple]:
    """Raw windows of the group, in lexicographic order."""
    _check_capacity(n, kind, force)
    if kind == "A":
        yield from permutations(range(1, n + 1))
        return
    values = sorted(v for i in range(1, n + 1) for v in (i, -i))
    prefix: list[int] = []
    used = [False] * (n + 1)

    def extend():
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for v in values:
            if not used[abs(v)]:
                used[abs(v)] = True
                prefix.append(v)
                yield from extend()
                prefix.pop()
                used[abs(v)] = False

    yield from extend()


def enumerate_group(n: int, kind: str = "A", force: bool = False) -> Iterator[Element]:
    """Every element of S_n (kind A) or B_n (kind B) exactly once, lexicographically."""
    cls = Permutation if kind == "A" else SignedPermutation
    for w in enumerate_windows(n, kind, force):
        yield cls(w)


def parse_window(text: str, signed: bool = False) -> Element:
    """Parse comma-separated one-line notation such as ``"2,3,1"`` or ``"-2,1"``."""
    try:
        values = tuple(int(tok) for tok in text.replace(" ", "").split(","))
    except ValueError:
        raise ValueError(f"malformed window {text!r}") from None
    return SignedPermutation(values) if signed else Permutation(values)


def format_window(window) -> str:
    return ",".join(str(v) for v in window)
