"""The quotient by the square of the augmentation ideal.

Coordinates are taken over the basis ``{1, A+1, <i,j> (i<=j), <i,j,k> (i<j<k)}``.
Modulo the square of the augmentation ideal, a coefficient ``p(A)`` only
matters through ``p(-1)`` and ``p'(-1)``: ``(A+1)^2`` and ``(A+1)`` times any
augmentation-zero element already vanish.  A curve ``c`` is ``-2 + <c>`` where
``<c>`` is read from the degree-3 Magnus expansion of its word.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .algebra import NamedBasisRep, basis_rep, eps
from .geom import Diagram, Multicurve, Word
from .laurent import format_rational, lp_jet_at_minus1, parse_rational
from .reduce import SkeinElement, resolve

Q = Fraction


@dataclass
class QuotClass2:
    unit: Fraction = Q(0)
    h: Fraction = Q(0)
    pairs: dict[tuple[int, int], Fraction] = field(default_factory=dict)
    triples: dict[tuple[int, int, int], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        self.unit = Q(self.unit)
        self.h = Q(self.h)
        self.pairs = {k: Q(v) for k, v in self.pairs.items() if v}
        self.triples = {k: Q(v) for k, v in self.triples.items() if v}
        for (i, j) in self.pairs:
            if not 1 <= i <= j:
                raise ValueError(f"pair index ({i},{j}) must satisfy 1 <= i <= j")
        for (i, j, k) in self.triples:
            if not 1 <= i < j < k:
                raise ValueError(f"triple index ({i},{j},{k}) must be strictly increasing")

    # linear structure ---------------------------------------------------------
    def __add__(self, o: "QuotClass2") -> "QuotClass2":
        p = dict(self.pairs)
        for k, v in o.pairs.items():
            p[k] = p.get(k, 0) + v
        t = dict(self.triples)
        for k, v in o.triples.items():
            t[k] = t.get(k, 0) + v
        return QuotClass2(self.unit + o.unit, self.h + o.h, p, t)

    def scale(self, s) -> "QuotClass2":
        s = Q(s)
        return QuotClass2(self.unit * s, self.h * s, {k: v * s for k, v in self.pairs.items()},
                          {k: v * s for k, v in self.triples.items()})

    def __neg__(self) -> "QuotClass2":
        return self.scale(-1)

    def __sub__(self, o: "QuotClass2") -> "QuotClass2":
        return self + (-o)

    def __rmul__(self, s) -> "QuotClass2":
        return self.scale(s)

    def __eq__(self, o) -> bool:
        if not isinstance(o, QuotClass2):
            return NotImplemented
        return (self.unit, self.h, self.pairs, self.triples) == (o.unit, o.h, o.pairs, o.triples)

    def is_zero(self) -> bool:
        return not (self.unit or self.h or self.pairs or self.triples)

    def in_image_of_lambda(self) -> bool:
        return not (self.unit or self.h or self.pairs)

    # io -------------------------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "unit": format_rational(self.unit),
            "h": format_rational(self.h),
            "pairs": {f"{i},{j}": format_rational(v) for (i, j), v in sorted(self.pairs.items())},
            "triples": {f"{i},{j},{k}": format_rational(v) for (i, j, k), v in sorted(self.triples.items())},
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "QuotClass2":
        try:
            pairs = {tuple(int(a) for a in k.split(",")): parse_rational(v) for k, v in obj.get("pairs", {}).items()}
            triples = {tuple(int(a) for a in k.split(",")): parse_rational(v) for k, v in obj.get("triples", {}).items()}
            for k in pairs:
                if len(k) != 2:
                    raise ValueError(f"pair key {k} needs two indices")
            for k in triples:
                if len(k) != 3:
                    raise ValueError(f"triple key {k} needs three indices")
            return cls(parse_rational(obj.get("unit", "0")), parse_rational(obj.get("h", "0")), pairs, triples)
        except (AttributeError, TypeError) as exc:
            raise ValueError(f"malformed class JSON: {exc}") from exc

    def __str__(self) -> str:
        parts = []
        if self.unit:
            parts.append(f"{self.unit}·1")
        if self.h:
            parts.append(f"{self.h}·(A+1)")
        for (i, j), v in sorted(self.pairs.items()):
            parts.append(f"{v}·<{i},{j}>")
        for (i, j, k), v in sorted(self.triples.items()):
            parts.append(f"{v}·<{i},{j},{k}>")
        return " + ".join(parts) if parts else "0"


def unit_class(v=1) -> QuotClass2:
    return QuotClass2(unit=Q(v))


def h_class(v=1) -> QuotClass2:
    return QuotClass2(h=Q(v))


def pair_class(i: int, j: int, v=1) -> QuotClass2:
    return QuotClass2(pairs={(min(i, j), max(i, j)): Q(v)})


def triple_class(i: int, j: int, k: int, v=1) -> QuotClass2:
    return QuotClass2(triples={tuple(sorted((i, j, k))): Q(v)})


# ---------------------------------------------------------------------------
# Magnus expansion and the word map

TruncTensor = dict[tuple[int, ...], Fraction]


def magnus3(w: Iterable[int]) -> TruncTensor:
    """Degree-3 truncation of ``r_i -> 1 + e_i``, ``r_i^-1 -> 1 - e_i + e_i^2 - e_i^3``."""
    out: TruncTensor = {(): Q(1)}
    for a in w:
        i = abs(a)
        if a > 0:
            f = {(): Q(1), (i,): Q(1)}
        else:
            f = {(): Q(1), (i,): Q(-1), (i, i): Q(1), (i, i, i): Q(-1)}
        nxt: TruncTensor = {}
        for k1, v1 in out.items():
            for k2, v2 in f.items():
                k = k1 + k2
                if len(k) <= 3:
                    nxt[k] = nxt.get(k, 0) + v1 * v2
        out = {k: v for k, v in nxt.items() if v}
    return out


def _perm_sign(t: Sequence[int]) -> int:
    s = 1
    t = list(t)
    for i in range(len(t)):
        for j in range(i + 1, len(t)):
            if t[i] > t[j]:
                s = -s
    return s


def tensor_class(t: TruncTensor) -> QuotClass2:
    pairs: dict = {}
    triples: dict = {}
    for k, v in t.items():
        if len(k) == 1:
            key = (k[0], k[0])
            pairs[key] = pairs.get(key, 0) + v / 2
        elif len(k) == 2:
            key = (min(k), max(k))
            pairs[key] = pairs.get(key, 0) + v
        elif len(k) == 3 and len(set(k)) == 3:
            key = tuple(sorted(k))
            triples[key] = triples.get(key, 0) + _perm_sign(k) * v
    return QuotClass2(pairs=pairs, triples=triples)


def word_class(w: Iterable[int]) -> QuotClass2:
    """The class ``<w>`` of the curve freely homotopic to the word ``w``."""
    return tensor_class(magnus3(w))


_WORD_CACHE: dict[Word, QuotClass2] = {}


def _cached_word_class(c: Word) -> QuotClass2:
    r = _WORD_CACHE.get(c)
    if r is None:
        r = _WORD_CACHE[c] = word_class(c)
    return r


# ---------------------------------------------------------------------------
# normal forms


def nf2(x: SkeinElement) -> QuotClass2:
    unit = Q(0)
    h = Q(0)
    pairs: dict = {}
    triples: dict = {}
    for m, p in x.terms.items():
        c0, c1 = lp_jet_at_minus1(p, 1)
        n = len(m)
        unit += c0 * Q(-2) ** n
        h += c1 * Q(-2) ** n
        if n and c0:
            f = c0 * Q(-2) ** (n - 1)
            for comp in m.components:
                k = _cached_word_class(comp)
                for key, v in k.pairs.items():
                    pairs[key] = pairs.get(key, 0) + f * v
                for key, v in k.triples.items():
                    triples[key] = triples.get(key, 0) + f * v
    return QuotClass2(unit, h, pairs, triples)


def lift(c: QuotClass2, b: int) -> SkeinElement:
    """A representative of ``c`` built from the basis reps; ``nf2(lift(c, b)) == c``."""
    out = SkeinElement.scalar(b, 0)
    if c.unit:
        out = out + basis_rep(NamedBasisRep("scalar"), b).scale(c.unit)
    if c.h:
        out = out + basis_rep(NamedBasisRep("h"), b).scale(c.h)
    for k, v in sorted(c.pairs.items()):
        out = out + basis_rep(NamedBasisRep("pair", k), b).scale(v)
    for k, v in sorted(c.triples.items()):
        out = out + basis_rep(NamedBasisRep("triple", k), b).scale(v)
    return out


def class_key(c: QuotClass2) -> tuple:
    return (c.unit, c.h, tuple(sorted(c.pairs.items())), tuple(sorted(c.triples.items())))


def writhe_correction(w: int) -> QuotClass2:
    """Class of ``-3 w (A - A^-1)``."""
    return h_class(-6 * w)


def link_class(d: Diagram) -> QuotClass2:
    """Writhe-corrected class of a knot, or the normalized class of a link."""
    r = resolve(d)
    n = len(d.strands)
    if n == 1:
        return nf2(r) + unit_class(2) + writhe_correction(d.writhe())
    return nf2(r.scale(Q(-2) ** (-n) if n else 1))


def lambda_map(i: int, j: int, k: int) -> QuotClass2:
    if len({i, j, k}) < 3:
        return QuotClass2()
    return triple_class(i, j, k, _perm_sign((i, j, k)))


def rho_map(arg) -> QuotClass2:
    if arg == "unit" or arg is None:
        return h_class(1)
    i, j = arg
    return pair_class(i, j)


def f3_test(x: SkeinElement) -> bool:
    """Membership in the third filtration step: augmentation zero, class in the image of lambda."""
    return eps(x) == 0 and nf2(x).in_image_of_lambda()


def f2_test(x: SkeinElement) -> bool:
    """Membership in the augmentation ideal modulo nothing: ``eps(x) = 0``."""
    return eps(x) == 0


def sub_multicurve_sum(m: Multicurve, b: int) -> SkeinElement:
    """``sum_{L' subset L} (-1)^{|L'|} (-2)^{-|L'|} [L']`` over component subsets."""
    comps = m.components
    acc: dict[Multicurve, Fraction] = {}
    for r in range(len(comps) + 1):
        for sub in combinations(range(len(comps)), r):
            key = Multicurve(tuple(comps[i] for i in sub))
            acc[key] = acc.get(key, 0) + Q(-1) ** r * Q(-2) ** (-r)
    return SkeinElement(b, {k: v for k, v in acc.items()})


def ftype_sum_check(m: Multicurve, n: int, b: int | None = None) -> QuotClass2:
    if len(m) <= n:
        raise ValueError("the multicurve needs more components than the order")
    b = b if b is not None else max(1, m.max_index())
    return nf2(sub_multicurve_sum(m, b))


__all__ = [
    "QuotClass2", "class_key", "f2_test", "f3_test", "ftype_sum_check", "h_class", "lambda_map", "link_class", "lift",
    "magnus3", "nf2", "pair_class", "rho_map", "sub_multicurve_sum", "tensor_class", "triple_class",
    "unit_class", "word_class", "writhe_correction",
]

