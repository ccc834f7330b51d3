"""Algebra structure on skein elements: product, bracket, action, augmentation."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from threading import Lock
from typing import Iterable, Sequence

from .geom import EMPTY, Multicurve, realize, stack
from .laurent import A_PLUS_1, DELTA, ONE, Q_UNIT, ZERO, LaurentPoly, as_poly, div_exact
from .reduce import SkeinElement, resolve

_PRODUCT_CACHE: dict[tuple[int, Multicurve, Multicurve], SkeinElement] = {}
_CACHE_LOCK = Lock()


def product_cache_size() -> int:
    return len(_PRODUCT_CACHE)


def mul_multicurves(b: int, m1: Multicurve, m2: Multicurve) -> SkeinElement:
    """Product of two basis multicurves: ``m1`` stacked above ``m2``."""
    if not m1.components:
        return SkeinElement(b, {m2: ONE})
    if not m2.components:
        return SkeinElement(b, {m1: ONE})
    key = (b, m1, m2)
    hit = _PRODUCT_CACHE.get(key)
    if hit is not None:
        return hit
    out = resolve(stack(realize(m1, b), realize(m2, b)))
    with _CACHE_LOCK:
        _PRODUCT_CACHE.setdefault(key, out)
    return out


def mul(x: SkeinElement, y: SkeinElement) -> SkeinElement:
    if x.b != y.b:
        raise ValueError(f"skein elements on different disks (b={x.b} vs b={y.b})")
    acc: dict[Multicurve, LaurentPoly] = {}
    for m1, p1 in x.terms.items():
        for m2, p2 in y.terms.items():
            p = p1 * p2
            for m, q in mul_multicurves(x.b, m1, m2).terms.items():
                acc[m] = acc[m] + p * q if m in acc else p * q
    return SkeinElement(x.b, acc)


def mul_many(xs: Sequence[SkeinElement]) -> SkeinElement:
    out = xs[0]
    for y in xs[1:]:
        out = mul(out, y)
    return out


def power(x: SkeinElement, n: int) -> SkeinElement:
    if n < 0:
        raise ValueError("negative power")
    out = SkeinElement.scalar(x.b, ONE)
    for _ in range(n):
        out = mul(out, x)
    return out


def eps(x: SkeinElement) -> Fraction:
    """Augmentation: ``A -> -1`` and each component ``-> -2``."""
    return sum((p.at_minus_one() * Fraction(-2) ** len(m) for m, p in x.terms.items()), Fraction(0))


def _div_q(x: SkeinElement) -> SkeinElement:
    return SkeinElement(x.b, {m: div_exact(p, Q_UNIT) for m, p in x.terms.items()})


def commutator(x: SkeinElement, y: SkeinElement) -> SkeinElement:
    return mul(x, y) - mul(y, x)


def lie(x: SkeinElement, y: SkeinElement) -> SkeinElement:
    """``(xy - yx) / (-A + A^-1)``, divided exactly."""
    return _div_q(commutator(x, y))


def sigma(x: SkeinElement, z: SkeinElement) -> SkeinElement:
    """The action ``sigma(x)(z)``; equal to the bracket on the skein algebra."""
    return _div_q(commutator(x, z))


# ---------------------------------------------------------------------------
# named elements


@dataclass(frozen=True)
class NamedBasisRep:
    kind: str  # "scalar" | "h" (the element A+1) | "pair" | "triple" | "subset"
    idx: tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind == "pair":
            if len(self.idx) != 2 or self.idx[0] > self.idx[1]:
                raise ValueError("pair needs i <= j")
        elif self.kind == "triple":
            if len(self.idx) != 3 or not (self.idx[0] < self.idx[1] < self.idx[2]):
                raise ValueError("triple needs i < j < k")
        elif self.kind == "subset":
            if list(self.idx) != sorted(set(self.idx)):
                raise ValueError("subset indices must be strictly increasing")
        elif self.kind not in ("scalar", "h"):
            raise ValueError(f"unknown basis kind {self.kind!r}")
        if any(i < 1 for i in self.idx):
            raise ValueError("indices start at 1")

    def __str__(self) -> str:
        if self.kind == "scalar":
            return "1"
        if self.kind == "h":
            return "A+1"
        return "<" + ",".join(map(str, self.idx)) + ">"


def curve(b: int, *members: int) -> SkeinElement:
    """The subset curve ``c_I``; the empty subset is the scalar ``delta``."""
    if not members:
        return SkeinElement.scalar(b, DELTA)
    return SkeinElement.curve(b, members)


def alt_rep(b: int, idx: Sequence[int]) -> SkeinElement:
    """Alternating sum ``sum_{K subset I} (-1)^{|I|-|K|} c_K`` with ``c_{} = delta``."""
    idx = tuple(idx)
    out = SkeinElement(b, {})
    n = len(idx)
    for r in range(n + 1):
        for K in combinations(idx, r):
            out = out + curve(b, *K).scale((-1) ** (n - r))
    return out


def basis_rep(n: NamedBasisRep, b: int) -> SkeinElement:
    if any(i > b for i in n.idx):
        raise ValueError(f"index out of range for b={b}")
    if n.kind == "scalar":
        return SkeinElement.scalar(b, ONE)
    if n.kind == "h":
        return SkeinElement.scalar(b, A_PLUS_1)
    if n.kind == "pair" and n.idx[0] == n.idx[1]:
        i = n.idx[0]
        return (curve(b, i) - curve(b)).scale(2)
    return alt_rep(b, n.idx)


def pair(b: int, i: int, j: int) -> SkeinElement:
    return basis_rep(NamedBasisRep("pair", (min(i, j), max(i, j))), b)


def triple(b: int, i: int, j: int, k: int) -> SkeinElement:
    return basis_rep(NamedBasisRep("triple", tuple(sorted((i, j, k)))), b)


def basis_reps(b: int, include_unit: bool = True) -> list[tuple[NamedBasisRep, SkeinElement]]:
    """The reps of ``{1, A+1, <i,j>, <i,j,k>}`` in a fixed order."""
    out = []
    if include_unit:
        out.append((NamedBasisRep("scalar"), SkeinElement.scalar(b, ONE)))
    out.append((NamedBasisRep("h"), SkeinElement.scalar(b, A_PLUS_1)))
    for i in range(1, b + 1):
        for j in range(i, b + 1):
            n = NamedBasisRep("pair", (i, j))
            out.append((n, basis_rep(n, b)))
    for c in combinations(range(1, b + 1), 3):
        n = NamedBasisRep("triple", c)
        out.append((n, basis_rep(n, b)))
    return out


# ---------------------------------------------------------------------------
# exact identities for <1,3><2,4> +- <2,4><1,3> on four punctures


@dataclass
class Identity:
    name: str
    form: str  # "reference" or "corrected"
    lhs: SkeinElement
    rhs: SkeinElement

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs


def commutator_identities(b: int = 4) -> list[Identity]:
    """Sum and difference of ``<1,3><2,4>`` and ``<2,4><1,3>`` against closed forms.

    ``reference`` forms are the expressions as usually quoted; ``corrected``
    forms are the versions the engine satisfies exactly (see README).
    """
    if b < 4:
        raise ValueError("the identities need at least four punctures")
    P = lambda *i: alt_rep(b, i)  # noqa: E731
    c = lambda *i: curve(b, *i)  # noqa: E731
    S = LaurentPoly({2: 1, -2: 1})
    S4 = LaurentPoly({4: 1, -4: 1})
    D2 = LaurentPoly({2: 1, -2: -1})
    amin2 = LaurentPoly({2: 1, 0: -2, -2: 1})
    aplus2 = LaurentPoly({2: 1, 0: 2, -2: 1})
    half = Fraction(1, 2)

    lhs_sum = mul(P(1, 3), P(2, 4)) + mul(P(2, 4), P(1, 3))
    common = ((mul(P(1, 2), P(3, 4)) + mul(P(1, 4), P(2, 3))).scale(S4)
              + (mul_many([P(1, 2), P(3), P(4)]) + mul_many([P(2, 3), P(4), P(1)])
                 + mul_many([P(1, 4), P(2), P(3)]) + mul_many([P(3, 4), P(1), P(2)])).scale(S)
              + (mul(P(1), P(2, 3, 4)) + mul(P(2), P(1, 3, 4)) + mul(P(3), P(1, 2, 4))
                 + mul(P(4), P(1, 2, 3))).scale(2)
              + mul_many([P(1), P(2), P(3), P(4)]).scale(2))
    ref_sum = P(1, 2, 3, 4).scale(S) + common
    cor_sum = P(1, 2, 3, 4).scale(S * 2) + common

    lhs_diff = mul(P(1, 3), P(2, 4)) - mul(P(2, 4), P(1, 3))

    def F(i, j):
        return c(i, j).scale(2) - mul(c(i), c(j)) + (c(i) + c(j)).scale(amin2)

    def H(i, j):
        return c(i, j).scale(2) - mul(c(i), c(j))

    cross = mul(c(1, 2), c(3, 4)) - mul(c(1, 4), c(2, 3))
    ref_diff = (mul(F(1, 4), F(2, 3)).scale(half) - mul(F(1, 2), F(3, 4)).scale(half)
                + cross.scale(amin2)).scale(D2)
    cor_diff = (mul(H(1, 4), H(2, 3)).scale(half) - mul(H(1, 2), H(3, 4)).scale(half)
                + cross.scale(aplus2)).scale(D2)
    return [
        Identity("sum", "reference", lhs_sum, ref_sum),
        Identity("sum", "corrected", lhs_sum, cor_sum),
        Identity("difference", "reference", lhs_diff, ref_diff),
        Identity("difference", "corrected", lhs_diff, cor_diff),
    ]


def scalar(b: int, p) -> SkeinElement:
    return SkeinElement.scalar(b, as_poly(p))


def zero(b: int) -> SkeinElement:
    return SkeinElement(b, {})


__all__ = [
    "EMPTY", "Identity", "NamedBasisRep", "alt_rep", "basis_rep", "basis_reps", "commutator", "commutator_identities", "curve", "eps", "lie",
    "mul", "mul_many", "mul_multicurves", "pair", "power", "scalar", "sigma", "triple", "zero", "ZERO",
]
