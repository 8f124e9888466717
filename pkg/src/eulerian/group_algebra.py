"""
Sparse elements of Q[S_n] and Q[B_n] (and of the same group algebras over
Q[q]), with the convolution product.

Keys are windows in one-line notation. Products of large elements go
through a cached multiplication table and integer arithmetic after
clearing denominators; small ones iterate support pairs directly. Both
routes give identical results.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import lcm
from types import MappingProxyType
from typing import Callable, Iterable, Mapping, Union

import numpy as np

from .errors import SizeMismatchError
from .perm_core import (
    Permutation, SignedPermutation, _compose_a, _compose_b, _inverse_a, _inverse_b,
    enumerate_windows,
)
from .qpoly import QPolynomial, _norm, fmt_rational

__all__ = [
    "GroupAlgebraElement", "GroupTable", "group_table", "ga_add", "ga_scale",
    "ga_convolve", "ga_bar", "augmentation",
]

RINGS = ("rational", "qpoly")
# below this many support pairs the direct double loop is cheaper than the table
DENSE_THRESHOLD = 4096


class GroupTable:
    """All elements of a group in lexicographic order, with a multiplication table."""

    def __init__(self, kind: str, n: int):
        self.kind = kind
        self.n = n
        self.windows = list(enumerate_windows(n, kind))
        self.index = {w: i for i, w in enumerate(self.windows)}
        self._mult = None

    def __len__(self):
        return len(self.windows)

    def _codes(self, arr: np.ndarray) -> np.ndarray:
        base = 2 * self.n + 1
        out = np.zeros(arr.shape[:-1], dtype=np.int64)
        for t in range(self.n):
            out = out * base + (arr[..., t] + self.n)
        return out

    @property
    def mult(self) -> np.ndarray:
        """``mult[i, j]`` is the index of ``windows[i] * windows[j]``."""
        if self._mult is None:
            W = np.array(self.windows, dtype=np.int64)
            codes = self._codes(W)
            size = len(W)
            table = np.empty((size, size), dtype=np.int32)
            absW = np.abs(W) - 1
            sign = np.sign(W)
            for i in range(size):
                prod = W[i][absW] * sign if self.kind == "B" else W[i][W - 1]
                table[i] = np.searchsorted(codes, self._codes(prod))
            self._mult = table
        return self._mult


@lru_cache(maxsize=None)
def group_table(kind: str, n: int) -> GroupTable:
    return GroupTable(kind, n)


def _key(perm) -> tuple:
    if isinstance(perm, (Permutation, SignedPermutation)):
        return perm.window
    return tuple(perm)


def _is_zero(c) -> bool:
    return not c


class GroupAlgebraElement:
    """
    A finite formal sum of group elements with coefficients in Q or Q[q].

    ``group`` is ``"A"`` (symmetric group) or ``"B"`` (hyperoctahedral
    group), ``ring`` is ``"rational"`` or ``"qpoly"``.
    """

    __slots__ = ("group", "n", "ring", "_terms")

    def __init__(self, group: str, n: int, terms: Union[Mapping, Iterable] = (), ring: str = "rational",
                 _trusted: bool = False):
        if group not in ("A", "B"):
            raise ValueError(f"unknown group {group!r}")
        if ring not in RINGS:
            raise ValueError(f"unknown coefficient ring {ring!r}")
        self.group, self.n, self.ring = group, n, ring
        if _trusted:
            self._terms = terms
            return
        items = terms.items() if isinstance(terms, Mapping) else terms
        out: dict = {}
        for perm, c in items:
            k = _key(perm)
            self._check_key(k)
            c = self._coerce_coeff(c)
            s = out.get(k, 0) + c if k in out else c
            if _is_zero(s):
                out.pop(k, None)
            else:
                out[k] = s
        self._terms = out

    def _check_key(self, k: tuple):
        if len(k) != self.n:
            raise SizeMismatchError(f"{k} is not an element of {self.group}_{self.n}")
        # validate through the element constructors
        (Permutation if self.group == "A" else SignedPermutation)(k)

    def _coerce_coeff(self, c):
        if self.ring == "rational":
            if isinstance(c, QPolynomial):
                raise SizeMismatchError("q-polynomial coefficient in a rational element")
            return _norm(Fraction(c)) if not isinstance(c, int) else c
        if isinstance(c, QPolynomial):
            return c
        return QPolynomial.constant(c)

    # construction helpers

    @classmethod
    def zero(cls, group: str, n: int, ring: str = "rational") -> "GroupAlgebraElement":
        return cls(group, n, {}, ring, _trusted=True)

    @classmethod
    def identity(cls, group: str, n: int, ring: str = "rational") -> "GroupAlgebraElement":
        one = 1 if ring == "rational" else QPolynomial.constant(1)
        return cls(group, n, {tuple(range(1, n + 1)): one}, ring, _trusted=True)

    @classmethod
    def basis(cls, perm, ring: str = "rational") -> "GroupAlgebraElement":
        group = "B" if isinstance(perm, SignedPermutation) or min(_key(perm)) < 0 else "A"
        one = 1 if ring == "rational" else QPolynomial.constant(1)
        return cls(group, len(_key(perm)), {_key(perm): one}, ring)

    # access

    @property
    def terms(self) -> Mapping:
        return MappingProxyType(self._terms)

    def coeff(self, perm):
        k = _key(perm)
        if k in self._terms:
            return self._terms[k]
        return 0 if self.ring == "rational" else QPolynomial()

    def support(self) -> list[tuple]:
        return sorted(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def _same_space(self, other: "GroupAlgebraElement"):
        if not isinstance(other, GroupAlgebraElement):
            raise TypeError(f"expected a group algebra element, got {type(other).__name__}")
        if (self.group, self.n, self.ring) != (other.group, other.n, other.ring):
            raise SizeMismatchError(
                f"{self.group}_{self.n}/{self.ring} vs {other.group}_{other.n}/{other.ring}")

    def __eq__(self, other):
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        return (self.group, self.n, self.ring) == (other.group, other.n, other.ring) \
            and self._terms == other._terms

    __hash__ = None

    def __add__(self, other):
        return ga_add(self, other)

    def __neg__(self):
        return ga_scale(-1, self)

    def __sub__(self, other):
        return ga_add(self, ga_scale(-1, other))

    def __mul__(self, other):
        if isinstance(other, GroupAlgebraElement):
            return ga_convolve(self, other)
        return ga_scale(other, self)

    def __rmul__(self, other):
        return ga_scale(other, self)

    def map_coeffs(self, fn: Callable, ring: str | None = None) -> "GroupAlgebraElement":
        return GroupAlgebraElement(self.group, self.n, {k: fn(c) for k, c in self._terms.items()},
                                   ring or self.ring)

    def bar(self) -> "GroupAlgebraElement":
        return ga_bar(self)

    def augmentation(self):
        return augmentation(self)

    def to_json(self) -> dict:
        terms = []
        for k, c in self.items():
            if self.ring == "rational":
                terms.append({"perm": list(k), "coeff": fmt_rational(c)})
            else:
                terms.append({"perm": list(k), "coeff_q": c.to_json()})
        return {"group": self.group, "n": self.n, "coeff_ring": self.ring, "terms": terms}

    @classmethod
    def from_json(cls, data: Mapping) -> "GroupAlgebraElement":
        ring = data["coeff_ring"]
        terms = []
        for t in data["terms"]:
            if ring == "rational":
                terms.append((tuple(t["perm"]), Fraction(t["coeff"])))
            else:
                terms.append((tuple(t["perm"]), QPolynomial.from_json(t["coeff_q"])))
        return cls(data["group"], int(data["n"]), terms, ring)

    def __repr__(self):
        if not self._terms:
            return f"GroupAlgebraElement({self.group}_{self.n}: 0)"
        body = " + ".join(f"({c})*[{','.join(map(str, k))}]" for k, c in self.items()[:8])
        more = " + ..." if len(self._terms) > 8 else ""
        return f"GroupAlgebraElement({self.group}_{self.n}: {body}{more})"


def ga_add(a: GroupAlgebraElement, b: GroupAlgebraElement) -> GroupAlgebraElement:
    a._same_space(b)
    out = dict(a._terms)
    for k, c in b._terms.items():
        s = out[k] + c if k in out else c
        if _is_zero(s):
            out.pop(k, None)
        else:
            out[k] = s
    return GroupAlgebraElement(a.group, a.n, out, a.ring, _trusted=True)


def ga_scale(c, a: GroupAlgebraElement) -> GroupAlgebraElement:
    if isinstance(c, QPolynomial) and a.ring != "qpoly":
        raise SizeMismatchError("cannot scale a rational element by a q-polynomial")
    if not isinstance(c, (int, Fraction, QPolynomial)):
        raise TypeError(f"unsupported scalar {c!r}")
    if _is_zero(c):
        return GroupAlgebraElement.zero(a.group, a.n, a.ring)
    if a.ring == "rational":
        c = _norm(c) if isinstance(c, Fraction) else c
        out = {k: _norm(v * c) if isinstance(v * c, Fraction) else v * c for k, v in a._terms.items()}
    else:
        out = {k: v * c for k, v in a._terms.items()}
    return GroupAlgebraElement(a.group, a.n, {k: v for k, v in out.items() if not _is_zero(v)},
                               a.ring, _trusted=True)


def ga_bar(a: GroupAlgebraElement) -> GroupAlgebraElement:
    """Move the coefficient of each element onto its inverse."""
    inv = _inverse_a if a.group == "A" else _inverse_b
    return GroupAlgebraElement(a.group, a.n, {inv(k): c for k, c in a._terms.items()}, a.ring,
                               _trusted=True)


def augmentation(a: GroupAlgebraElement):
    """Sum of all coefficients (the counit)."""
    zero = 0 if a.ring == "rational" else QPolynomial()
    total = sum(a._terms.values(), zero)
    return _norm(total) if isinstance(total, Fraction) else total


def ga_convolve(a: GroupAlgebraElement, b: GroupAlgebraElement, method: str = "auto") -> GroupAlgebraElement:
    """(a*b)[pi] = sum over sigma*tau = pi of a[sigma] b[tau]."""
    a._same_space(b)
    if not a._terms or not b._terms:
        return GroupAlgebraElement.zero(a.group, a.n, a.ring)
    if method == "auto":
        method = "dense" if len(a._terms) * len(b._terms) > DENSE_THRESHOLD else "sparse"
    if method == "sparse":
        return _convolve_sparse(a, b)
    if method != "dense":
        raise ValueError(f"unknown convolution method {method!r}")
    if a.ring == "rational":
        return _convolve_dense_rational(a, b)
    return _convolve_dense_qpoly(a, b)


def _convolve_sparse(a, b):
    comp = _compose_a if a.group == "A" else _compose_b
    out: dict = {}
    for s, cs in a._terms.items():
        for t, ct in b._terms.items():
            k = comp(s, t)
            v = cs * ct
            out[k] = out[k] + v if k in out else v
    if a.ring == "rational":
        out = {k: _norm(v) if isinstance(v, Fraction) else v for k, v in out.items()}
    return GroupAlgebraElement(a.group, a.n, {k: v for k, v in out.items() if not _is_zero(v)},
                               a.ring, _trusted=True)


def _scaled_ints(values) -> tuple[list[int], int]:
    den = 1
    for v in values:
        if isinstance(v, Fraction):
            den = lcm(den, v.denominator)
    return [int(v * den) for v in values], den


def _convolve_dense_rational(a, b):
    table = group_table(a.group, a.n)
    mult = table.mult
    ia = np.fromiter((table.index[k] for k in a._terms), dtype=np.int64, count=len(a._terms))
    ib = np.fromiter((table.index[k] for k in b._terms), dtype=np.int64, count=len(b._terms))
    va, da = _scaled_ints(list(a._terms.values()))
    vb, db = _scaled_ints(list(b._terms.values()))
    res = np.zeros(len(table), dtype=object)
    res[:] = 0
    if len(ia) <= len(ib):
        vb_arr = np.array(vb, dtype=object)
        for i, c in zip(ia, va):
            res[mult[i, ib]] += c * vb_arr
    else:
        va_arr = np.array(va, dtype=object)
        for j, c in zip(ib, vb):
            res[mult[ia, j]] += va_arr * c
    den = da * db
    out = {}
    for idx in np.flatnonzero(res != 0):
        v = res[idx]
        out[table.windows[idx]] = v // den if v % den == 0 else Fraction(v, den)
    return GroupAlgebraElement(a.group, a.n, out, a.ring, _trusted=True)


def _qpoly_matrix(terms: dict) -> tuple[np.ndarray, int]:
    polys = list(terms.values())
    den = 1
    for p in polys:
        for v in p._c.values():
            if isinstance(v, Fraction):
                den = lcm(den, v.denominator)
    width = max(int(p.degree) for p in polys) + 1
    mat = np.zeros((len(polys), width), dtype=object)
    mat[:] = 0
    for r, p in enumerate(polys):
        for e, v in p._c.items():
            mat[r, e] = int(v * den)
    return mat, den


def _convolve_dense_qpoly(a, b):
    table = group_table(a.group, a.n)
    mult = table.mult
    if len(a._terms) > len(b._terms):
        # (a*b)[pi] = sum over tau in supp b; walk the sparser side outermost
        outer, inner, flip = b, a, True
    else:
        outer, inner, flip = a, b, False
    i_in = np.fromiter((table.index[k] for k in inner._terms), dtype=np.int64, count=len(inner._terms))
    mat, d_in = _qpoly_matrix(inner._terms)
    outer_items = list(outer._terms.items())
    d_out = 1
    for _, p in outer_items:
        for v in p._c.values():
            if isinstance(v, Fraction):
                d_out = lcm(d_out, v.denominator)
    deg_out = max(int(p.degree) for _, p in outer_items)
    width = mat.shape[1]
    res = np.zeros((len(table), deg_out + width), dtype=object)
    res[:] = 0
    for k, p in outer_items:
        i = table.index[k]
        rows = mult[i_in, i] if flip else mult[i, i_in]
        block = res[rows]
        for e, v in p._c.items():
            block[:, e:e + width] += int(v * d_out) * mat
        res[rows] = block
    den = d_in * d_out
    out = {}
    for idx in np.flatnonzero((res != 0).any(axis=1)):
        row = res[idx]
        out[table.windows[idx]] = QPolynomial._raw(
            {e: (int(v) // den if v % den == 0 else Fraction(int(v), den))
             for e, v in enumerate(row) if v != 0})
    return GroupAlgebraElement(a.group, a.n, out, a.ring, _trusted=True)
