"""Exact Laurent polynomials in one variable ``A`` over the rationals.

The coefficient ring of every skein computation.  Besides ring arithmetic the
module offers the (A+1)-adic tools used throughout: jets at ``A = -1``,
(A+1)-valuation, and exact division.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Iterable, Mapping, Union

Scalar = Union[int, Fraction]


class NotDivisible(ArithmeticError):
    """Raised when an exact quotient of Laurent polynomials does not exist."""


def _frac(x: Scalar | str) -> Fraction:
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


class LaurentPoly:
    """Sparse Laurent polynomial ``sum c_e A^e`` with rational coefficients.

    Instances are immutable and hashable.  Zero coefficients are never stored.
    """

    __slots__ = ("_c", "_h")

    def __init__(self, coeffs: Mapping[int, Scalar] | None = None):
        c: dict[int, Fraction] = {}
        if coeffs:
            for e, v in coeffs.items():
                v = _frac(v)
                if v:
                    c[int(e)] = v
        self._c = c
        self._h = None

    # constructors -------------------------------------------------------
    @classmethod
    def _raw(cls, c: dict[int, Fraction]) -> "LaurentPoly":
        p = cls.__new__(cls)
        p._c = c
        p._h = None
        return p

    @classmethod
    def const(cls, v: Scalar) -> "LaurentPoly":
        return cls({0: v})

    @classmethod
    def monomial(cls, e: int, v: Scalar = 1) -> "LaurentPoly":
        return cls({e: v})

    @classmethod
    def from_int_dict(cls, d: Mapping[int, int]) -> "LaurentPoly":
        return cls._raw({e: Fraction(v) for e, v in d.items() if v})

    # basic access ---------------------------------------------------------
    @property
    def coeffs(self) -> dict[int, Fraction]:
        return dict(self._c)

    def items(self):
        return sorted(self._c.items())

    def coeff(self, e: int) -> Fraction:
        return self._c.get(e, Fraction(0))

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    def min_exp(self) -> int:
        return min(self._c) if self._c else 0

    def max_exp(self) -> int:
        return max(self._c) if self._c else 0

    def constant_value(self) -> Fraction | None:
        """The scalar value if the polynomial is a constant, else None."""
        if not self._c:
            return Fraction(0)
        if list(self._c) == [0]:
            return self._c[0]
        return None

    # ring operations --------------------------------------------------------
    def __add__(self, other) -> "LaurentPoly":
        other = as_poly(other)
        c = dict(self._c)
        for e, v in other._c.items():
            w = c.get(e, 0) + v
            if w:
                c[e] = w
            else:
                c.pop(e, None)
        return LaurentPoly._raw(c)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({e: -v for e, v in self._c.items()})

    def __sub__(self, other) -> "LaurentPoly":
        return self + (-as_poly(other))

    def __rsub__(self, other) -> "LaurentPoly":
        return as_poly(other) - self

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = as_poly(other)
        c: dict[int, Fraction] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                e = e1 + e2
                c[e] = c.get(e, 0) + v1 * v2
        return LaurentPoly._raw({e: v for e, v in c.items() if v})

    __rmul__ = __mul__

    def scale(self, s: Scalar) -> "LaurentPoly":
        s = _frac(s)
        if not s:
            return ZERO
        return LaurentPoly._raw({e: v * s for e, v in self._c.items()})

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``A^k``."""
        return LaurentPoly._raw({e + k: v for e, v in self._c.items()})

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            if len(self._c) == 1:
                (e, v), = self._c.items()
                return LaurentPoly({e * n: v ** n})
            raise ValueError("negative power of a non-monomial")
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __truediv__(self, other) -> "LaurentPoly":
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(1) / _frac(other))
        return div_exact(self, as_poly(other))

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        if self._h is None:
            self._h = hash(frozenset(self._c.items()))
        return self._h

    # evaluation -------------------------------------------------------------
    def at_minus_one(self) -> Fraction:
        return sum((v if e % 2 == 0 else -v for e, v in self._c.items()), Fraction(0))

    def substitute_inverse(self) -> "LaurentPoly":
        """The bar involution ``A -> A^{-1}``."""
        return LaurentPoly._raw({-e: v for e, v in self._c.items()})

    # printing ----------------------------------------------------------------
    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    def __str__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for e, v in sorted(self._c.items(), reverse=True):
            if e == 0:
                mono = ""
            elif e == 1:
                mono = "A"
            else:
                mono = f"A^{e}"
            if mono and v == 1:
                s = mono
            elif mono and v == -1:
                s = "-" + mono
            elif mono:
                s = f"{v}*{mono}"
            else:
                s = str(v)
            parts.append(s)
        out = parts[0]
        for s in parts[1:]:
            out += " - " + s[1:] if s.startswith("-") else " + " + s
        return out

    # serialization -------------------------------------------------------------
    def to_json(self) -> dict[str, str]:
        return {str(e): format_rational(v) for e, v in sorted(self._c.items())}

    @classmethod
    def from_json(cls, obj: Mapping[str, str]) -> "LaurentPoly":
        if not isinstance(obj, Mapping):
            raise ValueError("LaurentPoly JSON must be an object {exponent: 'num/den'}")
        return cls({int(e): parse_rational(v) for e, v in obj.items()})


def parse_rational(v) -> Fraction:
    if isinstance(v, bool):
        raise ValueError("boolean is not a rational")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        return Fraction(v.strip())
    raise ValueError(f"cannot read rational from {v!r}")


def format_rational(q: Fraction) -> str:
    """``"num/den"``, or just ``"num"`` for integers."""
    return str(Fraction(q))


def as_poly(x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return LaurentPoly.const(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to LaurentPoly")


ZERO = LaurentPoly()
ONE = LaurentPoly.const(1)
A = LaurentPoly.monomial(1)
A_INV = LaurentPoly.monomial(-1)
DELTA = LaurentPoly({2: -1, -2: -1})
"""The trivial-loop factor ``-A^2 - A^{-2}``."""
A_PLUS_1 = LaurentPoly({1: 1, 0: 1})
Q_UNIT = LaurentPoly({1: -1, -1: 1})
"""``-A + A^{-1}``, the denominator of the Lie bracket."""


def lp_arith(op: str, p: LaurentPoly, q: LaurentPoly | Scalar | None = None) -> LaurentPoly:
    """Dispatch ``add|sub|mul|neg|scale`` on Laurent polynomials."""
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    if op == "neg":
        return -p
    if op == "scale":
        return p.scale(q)
    raise ValueError(f"unknown operation {op!r}")


def lp_jet_at_minus1(p: LaurentPoly, k: int) -> list[Fraction]:
    """Coefficients ``c_0..c_k`` of ``p = sum c_j (A+1)^j + O((A+1)^{k+1})``."""
    if k < 0:
        raise ValueError("order must be nonnegative")
    out = [Fraction(0)] * (k + 1)
    # A = t - 1 with t = A + 1
    for e, v in p._c.items():
        if e >= 0:
            for j in range(min(e, k) + 1):
                c = comb(e, j) * (-1 if (e - j) % 2 else 1)
                out[j] += v * c
        else:
            n = -e
            s = -1 if n % 2 else 1
            for j in range(k + 1):
                out[j] += v * s * comb(n + j - 1, j)
    return out


def from_jet(coeffs: Iterable[Scalar]) -> LaurentPoly:
    """The polynomial ``sum c_j (A+1)^j``."""
    out = ZERO
    power = ONE
    for c in coeffs:
        if c:
            out = out + power.scale(c)
        power = power * A_PLUS_1
    return out


def _as_shifted_poly(p: LaurentPoly) -> tuple[int, list[Fraction]]:
    lo, hi = p.min_exp(), p.max_exp()
    return lo, [p.coeff(e) for e in range(lo, hi + 1)]


def lp_val_aplus1(p: LaurentPoly) -> float | int:
    """Largest ``v`` with ``(A+1)^v | p``; ``inf`` for the zero polynomial."""
    if p.is_zero():
        return float("inf")
    _, c = _as_shifted_poly(p)
    v = 0
    while True:
        # synthetic division of c (ascending) by (A + 1)
        n = len(c) - 1
        q = [Fraction(0)] * n
        r = c[n]
        for i in range(n - 1, -1, -1):
            q[i] = r
            r = c[i] - r
        if r != 0 or n == 0:
            return v
        v += 1
        c = q


def lp_div_exact(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """Return ``r`` with ``p == q * r``; raise :class:`NotDivisible` otherwise."""
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if p.is_zero():
        return ZERO
    a, num = _as_shifted_poly(p)
    c, den = _as_shifted_poly(q)
    num = num[:]
    dn = len(den) - 1
    lead = den[-1]
    if len(num) - 1 < dn:
        raise NotDivisible(f"{q} does not divide {p}")
    quot = [Fraction(0)] * (len(num) - dn)
    for i in range(len(num) - 1 - dn, -1, -1):
        f = num[i + dn] / lead
        quot[i] = f
        if f:
            for j in range(dn + 1):
                num[i + j] -= f * den[j]
    if any(num[:dn]):
        raise NotDivisible(f"{q} does not divide {p}")
    return LaurentPoly({a - c + i: v for i, v in enumerate(quot)})


div_exact = lp_div_exact


def residue_mod_aplus1(p: LaurentPoly, k: int) -> list[Fraction]:
    """Jet of order ``k-1``: the class of ``p`` modulo ``(A+1)^k``."""
    if k <= 0:
        return []
    return lp_jet_at_minus1(p, k - 1)
