"""
Exact univariate polynomials with rational coefficients, q-binomial
coefficients, and the binomial-in-x expansions behind the structure
polynomials.

>>> qbinomial(4, 2)
QPolynomial('1 + q + 2q^2 + q^3 + q^4')
>>> binom_in_x(1, 2)
[Fraction(0, 1), Fraction(1, 2), Fraction(1, 2)]
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Mapping, Sequence, Union

__all__ = [
    "Rational", "QPolynomial", "qbinomial", "q_integer", "qp_substitute_power",
    "binom_in_x", "binom", "compose_affine", "poly_eval", "fmt_rational", "parse_rational",
]

Rational = Fraction
Scalar = Union[int, Fraction]


def _norm(c):
    # integral values stay ints; keeps the hot paths off Fraction arithmetic
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def fmt_rational(c) -> str:
    """Canonical ``"p/q"`` text for a rational (``0/1`` for zero)."""
    c = Fraction(c)
    return f"{c.numerator}/{c.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text)


class QPolynomial:
    """
    A polynomial in q with exact rational coefficients.

    Immutable; zero coefficients are never stored. Mixed arithmetic with
    ints and Fractions treats them as constant polynomials.
    """

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Union[Mapping[int, Scalar], Sequence[Scalar], None] = None):
        if coeffs is None:
            items: Iterable = ()
        elif isinstance(coeffs, Mapping):
            items = coeffs.items()
        else:
            items = enumerate(coeffs)
        c = {}
        for e, v in items:
            e = int(e)
            if e < 0:
                raise ValueError("negative exponents are not supported")
            if v:
                c[e] = _norm(Fraction(v)) if not isinstance(v, int) else v
        self._c = c
        self._hash = None

    @classmethod
    def _raw(cls, c: dict) -> "QPolynomial":
        p = cls.__new__(cls)
        p._c = c
        p._hash = None
        return p

    @classmethod
    def constant(cls, v: Scalar) -> "QPolynomial":
        return cls({0: v})

    @classmethod
    def monomial(cls, e: int, v: Scalar = 1) -> "QPolynomial":
        return cls({e: v})

    @property
    def coefficients(self) -> dict:
        return dict(self._c)

    def items(self):
        return sorted(self._c.items())

    def coeff(self, e: int):
        return self._c.get(e, 0)

    @property
    def degree(self) -> float:
        return max(self._c) if self._c else float("-inf")

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self):
        return bool(self._c)

    @staticmethod
    def _coerce(other) -> "QPolynomial":
        if isinstance(other, QPolynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return QPolynomial({0: other})
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        c = dict(self._c)
        for e, v in other._c.items():
            s = _norm(c.get(e, 0) + v)
            if s:
                c[e] = s
            else:
                c.pop(e, None)
        return QPolynomial._raw(c)

    __radd__ = __add__

    def __neg__(self):
        return QPolynomial._raw({e: -v for e, v in self._c.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return QPolynomial._raw({})
            return QPolynomial._raw({e: _norm(v * other) for e, v in self._c.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        c: dict = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                e = e1 + e2
                c[e] = c.get(e, 0) + v1 * v2
        return QPolynomial._raw({e: _norm(v) for e, v in c.items() if v})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = QPolynomial.constant(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __call__(self, x):
        return self.evaluate(x)

    def evaluate(self, x):
        """Value at q = x, exact for int or Fraction x."""
        return _norm(sum((v * x ** e for e, v in self._c.items()), Fraction(0)))

    def substitute_power(self, k: int) -> "QPolynomial":
        return qp_substitute_power(self, k)

    def to_json(self) -> dict:
        return {str(e): fmt_rational(v) for e, v in self.items()}

    @classmethod
    def from_json(cls, data: Mapping[str, str]) -> "QPolynomial":
        return cls({int(e): Fraction(v) for e, v in data.items()})

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for e, v in self.items():
            if e == 0:
                parts.append(str(v))
                continue
            mono = "q" if e == 1 else f"q^{e}"
            if v == 1:
                parts.append(mono)
            elif v == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{v}{mono}" if isinstance(v, int) else f"({v}){mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"QPolynomial('{self}')"


def q_integer(m: int) -> QPolynomial:
    """[m]_q = 1 + q + ... + q^(m-1)."""
    return QPolynomial._raw({e: 1 for e in range(m)})


@lru_cache(maxsize=None)
def qbinomial(a: int, b: int) -> QPolynomial:
    """The Gaussian binomial coefficient, built from the q-Pascal recurrence."""
    if a < 0 or b < 0:
        raise ValueError("q-binomial arguments must be nonnegative")
    if b > a:
        return QPolynomial._raw({})
    if b == 0 or b == a:
        return QPolynomial._raw({0: 1})
    # [a, b] = [a-1, b-1] + q^b [a-1, b]
    c = dict(qbinomial(a - 1, b - 1)._c)
    for e, v in qbinomial(a - 1, b)._c.items():
        c[e + b] = c.get(e + b, 0) + v
    return QPolynomial._raw(c)


def qp_substitute_power(p: QPolynomial, k: int) -> QPolynomial:
    """Substitute q -> q^k."""
    if k < 1:
        raise ValueError("substitution exponent must be positive")
    return QPolynomial._raw({e * k: v for e, v in p._c.items()})


def binom(x, n: int):
    """C(x, n) as the falling-factorial polynomial, for any rational x."""
    if n < 0:
        return 0
    if isinstance(x, int):
        return comb(x, n) if x >= 0 else _norm(_falling(Fraction(x), n) / factorial(n))
    return _norm(_falling(Fraction(x), n) / factorial(n))


def _falling(x: Fraction, n: int) -> Fraction:
    out = Fraction(1)
    for t in range(n):
        out *= x - t
    return out


def _poly_mul(a: list, b: list) -> list:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, u in enumerate(a):
        if u:
            for j, v in enumerate(b):
                out[i + j] += u * v
    return out


def binom_in_x(c: int, n: int) -> list[Fraction]:
    """Coefficients p_0..p_n of C(x + c, n) in powers of x."""
    poly = [Fraction(1)]
    for t in range(n):
        poly = _poly_mul(poly, [Fraction(c - t), Fraction(1)])
    return [v / factorial(n) for v in poly]


def compose_affine(coeffs: Sequence[Fraction], a, b) -> list[Fraction]:
    """Coefficients of p(a*x + b), expanded with the binomial theorem."""
    a, b = Fraction(a), Fraction(b)
    out = [Fraction(0)] * len(coeffs)
    for d, p in enumerate(coeffs):
        if not p:
            continue
        for i in range(d + 1):
            out[i] += p * comb(d, i) * a ** i * b ** (d - i)
    return out


def poly_eval(coeffs: Sequence[Fraction], x) -> Fraction:
    acc = Fraction(0)
    for p in reversed(coeffs):
        acc = acc * x + p
    return acc
