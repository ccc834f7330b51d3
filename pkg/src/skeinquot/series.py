"""Truncated series: the twist logarithm ``L(c)``, ``exp(sigma(.))``, BCH and the zeta checks.

Budgets are filtration degrees ``N``: ``(A+1)^a (c+2)^k`` sits in degree
``2a + 2k`` and everything of degree ``>= N`` is discarded.  Verification runs
in the quotient by the square of the augmentation ideal (budget 4), where the
bracket is nilpotent: ``[F^n, F^m]`` lands in degree ``n + m - 1`` or more
whenever one side is augmentation-free.  On that quotient ``sigma(s)`` and the
bracket are computed on basis lifts, so intermediate elements stay small.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

from .algebra import NamedBasisRep, basis_rep, curve, eps, lie, mul, sigma
from .geom import Multicurve, SubsetCurve, dehn_surgery, realize
from .laurent import A_PLUS_1, ONE, LaurentPoly
from .quotient import QuotClass2, class_key, lift, nf2
from .reduce import SkeinElement, resolve

Q = Fraction
NF2_BUDGET = 4


class StabilizationFailure(RuntimeError):
    """A truncated series did not settle within its iteration cap."""


# ---------------------------------------------------------------------------
# scalar series


@dataclass(frozen=True)
class RationalSeries:
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(Q(c) for c in self.coeffs))

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Q(0)

    def __len__(self) -> int:
        return len(self.coeffs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __add__(self, o: "RationalSeries") -> "RationalSeries":
        n = min(len(self), len(o))
        return RationalSeries(tuple(self[k] + o[k] for k in range(n)))

    def __mul__(self, o: "RationalSeries") -> "RationalSeries":
        n = min(len(self), len(o))
        return RationalSeries(tuple(sum((self[i] * o[k - i] for i in range(k + 1)), Q(0)) for k in range(n)))

    def scale(self, s) -> "RationalSeries":
        return RationalSeries(tuple(c * Q(s) for c in self.coeffs))

    def valuation(self) -> int | float:
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        return float("inf")

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]


def arccosh_sq_series(K: int) -> RationalSeries:
    """``(arccosh(1 - u/2))^2 = -2 sum_{n>=1} u^n / (n^2 binom(2n, n))`` up to ``u^K``."""
    if K < 1:
        raise ValueError("order must be at least 1")
    return RationalSeries((Q(0),) + tuple(Q(-2, n * n * comb(2 * n, n)) for n in range(1, K + 1)))


def _log_minus_a(K: int) -> RationalSeries:
    """``log(-A) = log(1 - x) = -sum x^k / k`` with ``x = A + 1``."""
    return RationalSeries((Q(0),) + tuple(Q(-1, k) for k in range(1, K + 1)))


def _q_unit(K: int) -> RationalSeries:
    """``-A + A^-1 = 1 - x - 1/(1 - x)`` with ``x = A + 1``."""
    return RationalSeries(tuple([Q(0), Q(-2)] + [Q(-1)] * (K - 1))[: K + 1])


def prefactor_series(K: int) -> RationalSeries:
    """``(-A + A^-1) / (4 log(-A))`` in powers of ``A + 1``; both sides lose one factor of x."""
    if K < 0:
        raise ValueError("order must be nonnegative")
    num = _q_unit(K + 1).coeffs[1:]
    den = [4 * c for c in _log_minus_a(K + 1).coeffs[1:]]
    out: list[Fraction] = []
    for k in range(K + 1):
        acc = num[k] - sum((out[i] * den[k - i] for i in range(k)), Q(0))
        out.append(acc / den[0])
    return RationalSeries(tuple(out))


def zeta_correction_series(K: int) -> RationalSeries:
    """The central term ``-(-A + A^-1) log(-A)`` of the zeta variant."""
    return (_q_unit(K) * _log_minus_a(K)).scale(-1)


def _poly_in_aplus1(coeffs: Sequence[Fraction]) -> LaurentPoly:
    out = LaurentPoly()
    pw = ONE
    for c in coeffs:
        if c:
            out = out + pw.scale(c)
        pw = pw * A_PLUS_1
    return out


# ---------------------------------------------------------------------------
# truncated elements


@dataclass
class TruncElement:
    value: SkeinElement
    budget: int
    provenance: tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.budget < 1:
            raise ValueError("budget must be at least 1")

    @property
    def b(self) -> int:
        return self.value.b

    def cls(self) -> QuotClass2:
        return nf2(self.value)

    def __neg__(self) -> "TruncElement":
        return TruncElement(self.value.scale(-1), self.budget, self.provenance + ("neg",))

    def scale(self, s) -> "TruncElement":
        return TruncElement(self.value.scale(s), self.budget, self.provenance + (f"scale {s}",))


def _members(s: SubsetCurve | Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(s.members if isinstance(s, SubsetCurve) else set(s)))


def L_of(s: SubsetCurve | Iterable[int], N: int, variant: str = "plain", b: int | None = None) -> TruncElement:
    """``L(c_s)`` truncated below filtration degree ``N``."""
    if N < 2:
        raise ValueError("budget must be at least 2")
    if variant not in ("plain", "zeta"):
        raise ValueError(f"unknown variant {variant!r}")
    mem = _members(s)
    b = b if b is not None else max(mem)
    K = N // 2
    pre = prefactor_series(K)
    g = arccosh_sq_series(max(K, 1))
    u = curve(b, *mem) + SkeinElement.scalar(b, 2)
    out = SkeinElement(b, {})
    upow = u
    for k in range(1, K + 1):
        if 2 * k >= N:
            break
        coeffs = [pre[a] * g[k] for a in range(K + 1) if 2 * a + 2 * k < N]
        out = out + upow.scale(_poly_in_aplus1(coeffs))
        upow = mul(upow, u)
    if variant == "zeta":
        z = zeta_correction_series(K)
        out = out + SkeinElement.scalar(b, _poly_in_aplus1([z[a] for a in range(K + 1) if 2 * a < N]))
    name = "c" + "".join(map(str, mem))
    return TruncElement(out, N, (f"L({name}) {variant} N={N}",))


# ---------------------------------------------------------------------------
# operations on the quotient


_BRACKET_CACHE: dict[tuple, QuotClass2] = {}


def _basis_items(c: QuotClass2) -> list[tuple[NamedBasisRep, Fraction]]:
    out = []
    if c.unit:
        out.append((NamedBasisRep("scalar"), c.unit))
    if c.h:
        out.append((NamedBasisRep("h"), c.h))
    out += [(NamedBasisRep("pair", k), v) for k, v in sorted(c.pairs.items())]
    out += [(NamedBasisRep("triple", k), v) for k, v in sorted(c.triples.items())]
    return out


def _basis_bracket(b: int, u: NamedBasisRep, v: NamedBasisRep) -> QuotClass2:
    if u.kind in ("scalar", "h") or v.kind in ("scalar", "h") or u == v:
        return QuotClass2()
    key = (b, u, v)
    r = _BRACKET_CACHE.get(key)
    if r is None:
        r = _BRACKET_CACHE[key] = nf2(lie(basis_rep(u, b), basis_rep(v, b)))
        _BRACKET_CACHE[(b, v, u)] = -r
    return r


def bracket_class(x: QuotClass2, y: QuotClass2, b: int) -> QuotClass2:
    """The bracket induced on the quotient, computed on basis lifts."""
    out = QuotClass2()
    for u, p in _basis_items(x):
        for v, q in _basis_items(y):
            br = _basis_bracket(b, u, v)
            if not br.is_zero():
                out = out + br.scale(p * q)
    return out


def _require_aug_free(c: QuotClass2, what: str) -> None:
    if c.unit:
        raise ValueError(f"{what} must lie in the augmentation ideal")


def exp_sigma(s: TruncElement, z: SkeinElement, N: int = NF2_BUDGET) -> TruncElement:
    """``sum_j sigma(s)^j (z) / j!`` truncated below degree ``N``.

    For ``N <= 4`` the iteration runs on the quotient and stops when a term
    vanishes; otherwise all ``2N - 1`` terms are computed in the skein algebra.
    """
    if s.b != z.b:
        raise ValueError("arguments on different disks")
    if eps(s.value) != 0:
        raise ValueError("the exponent must lie in the augmentation ideal")
    J = 2 * N - 1
    b = z.b
    if N <= NF2_BUDGET:
        sc = nf2(s.value)
        total = nf2(z)
        term = total
        for j in range(1, J + 2):
            term = bracket_class(sc, term, b).scale(Q(1, j))
            if term.is_zero():
                return TruncElement(lift(total, b), N, s.provenance + (f"exp_sigma j<{j}",))
            total = total + term
        raise StabilizationFailure(f"sigma-exponential did not settle within {J} terms")
    total = z
    term = z
    for j in range(1, J + 1):
        term = sigma(s.value, term).scale(Q(1, j))
        total = total + term
    if not nf2(term).is_zero():
        raise StabilizationFailure(f"term {J} of the sigma-exponential is visible modulo the square ideal")
    return TruncElement(total, N, s.provenance + (f"exp_sigma J={J}",))


def _bch2(x: QuotClass2, y: QuotClass2, b: int) -> QuotClass2:
    br = lambda u, v: bracket_class(u, v, b)  # noqa: E731
    xy = br(x, y)
    d3 = (br(x, xy) + br(y, br(y, x))).scale(Q(1, 12))
    d4 = br(y, br(x, xy)).scale(Q(-1, 24))
    if not d4.is_zero():
        raise StabilizationFailure("degree-4 BCH term is visible modulo the square ideal")
    return x + y + xy.scale(Q(1, 2)) + d3


def bch_class(args: Sequence[QuotClass2], b: int) -> QuotClass2:
    out = QuotClass2()
    for a in args:
        _require_aug_free(a, "bch argument")
        out = _bch2(out, a, b)
    return out


def bch(args: Sequence[TruncElement], N: int = NF2_BUDGET) -> TruncElement:
    """The group law ``(-A + A^-1) log(prod exp(a_i / (-A + A^-1)))`` modulo the square ideal."""
    if N > NF2_BUDGET:
        raise ValueError(f"bch is evaluated modulo the square ideal (budget <= {NF2_BUDGET})")
    if not args:
        raise ValueError("bch needs at least one argument")
    b = args[0].b
    if any(a.b != b for a in args):
        raise ValueError("arguments on different disks")
    c = bch_class([nf2(a.value) for a in args], b)
    return TruncElement(lift(c, b), N, ("bch",) + tuple(p for a in args for p in a.provenance))


# ---------------------------------------------------------------------------
# verification harnesses


@dataclass
class Report:
    name: str
    lhs: QuotClass2
    rhs: QuotClass2

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs

    @property
    def verdict(self) -> str:
        return "PASS" if self.equal else "FAIL"

    def to_json(self) -> dict:
        return {"relation": self.name, "lhs_class": self.lhs.to_json(), "rhs_class": self.rhs.to_json(),
                "verdict": self.verdict}


def twist_element(z: SkeinElement, s: SubsetCurve | Iterable[int], sign: int = 1) -> SkeinElement:
    """Geometric image of ``z`` under the Dehn twist about ``c_s``."""
    out = SkeinElement(z.b, {})
    for m, p in z.terms.items():
        if not m.components:
            out = out + SkeinElement.scalar(z.b, p)
            continue
        out = out + resolve(dehn_surgery(realize(m, z.b), _members(s), sign)).scale(p)
    return out


def dehn_verify(s: SubsetCurve | Iterable[int], z: SkeinElement, sign: int = 1) -> Report:
    """Compare the geometric twist of ``z`` with ``exp(sigma(L(c_s)))(z)`` modulo the square ideal."""
    mem = _members(s)
    b = z.b
    if not 2 <= len(mem) <= b - 1:
        raise ValueError("the twisting curve must enclose between 2 and b-1 punctures")
    geo = nf2(twist_element(z, mem, sign))
    L = L_of(mem, NF2_BUDGET, "plain", b)
    alg = nf2(exp_sigma(L if sign > 0 else -L, z).value)
    return Report(f"twist c{''.join(map(str, mem))}^{sign:+d} on {_describe(z)}", geo, alg)


def _describe(z: SkeinElement) -> str:
    if len(z) == 1:
        (m, p), = z.terms.items()
        if p == ONE:
            return str(m)
    return "element"


# zeta relations: each is (conjugating word, conjugated curve); a word letter is (curve, exponent)
Letter = tuple[tuple[int, ...], int]

RELATION_FAMILIES = ("ti-tj", "ts-tij", "rs-ij-disjoint", "rs-ij-nested", "rs-rj", "rs-ij-sj", "rs-rj-sj")


def relation_instances(family: str, b: int) -> list[tuple[str, list[Letter], tuple[int, ...]]]:
    """All instances of one family of the pure braid presentation with indices in ``1..b``."""
    out = []
    idx = range(1, b + 1)
    if family == "ti-tj":
        for i in idx:
            for j in idx:
                if i != j:
                    out.append((f"ad(t{i})(t{j})", [((i,), 1)], (j,)))
    elif family == "ts-tij":
        for s in idx:
            for i, j in combinations(idx, 2):
                out.append((f"ad(t{s})(t{i}{j})", [((s,), 1)], (i, j)))
    elif family == "rs-ij-disjoint":
        for r, s, i, j in combinations(idx, 4):
            out.append((f"ad(t{r}{s})(t{i}{j})", [((r, s), 1)], (i, j)))
    elif family == "rs-ij-nested":
        for i, r, s, j in combinations(idx, 4):
            out.append((f"ad(t{r}{s})(t{i}{j})", [((r, s), 1)], (i, j)))
    elif family == "rs-rj":
        for r, s, j in combinations(idx, 3):
            i = s
            out.append((f"ad(t{r}{s}t{r}{j})(t{i}{j})", [((r, s), 1), ((r, j), 1)], (i, j)))
    elif family == "rs-ij-sj":
        for r, s, j in combinations(idx, 3):
            i = r
            out.append((f"ad(t{r}{s}t{i}{j}t{s}{j})(t{i}{j})", [((r, s), 1), ((i, j), 1), ((s, j), 1)], (i, j)))
    elif family == "rs-rj-sj":
        for r, i, s, j in combinations(idx, 4):
            word = [((r, s), 1), ((r, j), 1), ((s, j), 1), ((r, j), -1), ((s, j), -1)]
            out.append((f"ad(t{r}{s}t{r}{j}t{s}{j}t{r}{j}^-1t{s}{j}^-1)(t{i}{j})", word, (i, j)))
    else:
        raise ValueError(f"unknown relation family {family!r}")
    return out


def zeta_check(name: str, word: Sequence[Letter], target: Sequence[int], b: int) -> list[Report]:
    """Check ``bch(w, L(c), w^-1) = L(c)`` two ways: as a BCH word and by conjugation."""
    Lc = {}

    def Lcls(m):
        if m not in Lc:
            Lc[m] = nf2(L_of(m, NF2_BUDGET, "zeta", b).value)
        return Lc[m]

    tgt = Lcls(tuple(target))
    args = [Lcls(m).scale(e) for m, e in word]
    lhs_bch = bch_class(args + [tgt] + [a.scale(-1) for a in reversed(args)], b)
    cur = lift(tgt, b)
    for m, e in reversed(word):
        s = TruncElement(lift(Lcls(m).scale(e), b), NF2_BUDGET)
        cur = exp_sigma(s, cur).value
    return [Report(name + " [bch]", lhs_bch, tgt), Report(name + " [conjugation]", nf2(cur), tgt)]


def zeta_suite(b: int = 4, families: Sequence[str] = RELATION_FAMILIES) -> list[Report]:
    out = []
    for fam in families:
        for name, word, target in relation_instances(fam, b):
            out += zeta_check(name, word, target, b)
    return out


def lantern_check() -> Report:
    """``bch(L(c123), -L(c12), -L(c23), -L(c13), L(c1), L(c2), L(c3))`` vanishes modulo the square ideal."""
    b = 3
    seq = [((1, 2, 3), 1), ((1, 2), -1), ((2, 3), -1), ((1, 3), -1), ((1,), 1), ((2,), 1), ((3,), 1)]
    args = [nf2(L_of(m, NF2_BUDGET, "zeta", b).value).scale(e) for m, e in seq]
    return Report("lantern", bch_class(args, b), QuotClass2())


def clear_caches() -> None:
    _BRACKET_CACHE.clear()


__all__ = [
    "L_of", "NF2_BUDGET", "RELATION_FAMILIES", "RationalSeries", "Report", "StabilizationFailure",
    "TruncElement", "arccosh_sq_series", "bch", "bch_class", "bracket_class", "clear_caches",
    "dehn_verify", "exp_sigma", "lantern_check", "prefactor_series", "relation_instances",
    "twist_element", "zeta_check", "zeta_correction_series", "zeta_suite",
]
