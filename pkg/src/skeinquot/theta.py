"""The evaluation pairing into Laurent polynomials and its certificates.

``theta`` sends a multicurve to the bracket of the link obtained by drawing it
in the plane, inserting a positive framed full twist on the cable crossing the
upward ray of every puncture, and forgetting the punctures.  It is linear, and
``theta(x y)`` is a symmetric bilinear form in ``x, y``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from threading import Lock
from typing import Iterable, Sequence

from .algebra import NamedBasisRep, alt_rep, basis_rep, basis_reps, mul, mul_many
from .geom import Diagram, Multicurve, insert_ray_twists, realize, stack
from .laurent import (
    A_PLUS_1,
    DELTA,
    ONE,
    ZERO,
    LaurentPoly,
    div_exact,
    lp_jet_at_minus1,
    lp_val_aplus1,
)
from .reduce import SkeinElement, bracket_plane, resolve

MINUS_A3 = LaurentPoly({3: -1})


class InsufficientValuation(ArithmeticError):
    """The pairing value is not divisible by the requested power of ``A+1``."""


# ---------------------------------------------------------------------------
# evaluation


def twisted(d: Diagram, sign: int = 1) -> Diagram:
    """Insert the framed full twist at every puncture."""
    return insert_ray_twists(d, range(1, d.b + 1), sign)


def theta_diagram(d: Diagram) -> LaurentPoly:
    return bracket_plane(twisted(d))


_THETA_CACHE: dict[tuple[int, Multicurve], LaurentPoly] = {}
_PAIR_CACHE: dict[tuple[int, Multicurve, Multicurve], LaurentPoly] = {}
_LOCK = Lock()


def theta_multicurve(m: Multicurve, b: int) -> LaurentPoly:
    key = (b, m)
    hit = _THETA_CACHE.get(key)
    if hit is not None:
        return hit
    if not m.components:
        val = ONE
    else:
        val = theta_diagram(realize(m, b))
    with _LOCK:
        _THETA_CACHE[key] = val
    return val


def theta(x: SkeinElement) -> LaurentPoly:
    out = ZERO
    for m, p in x.terms.items():
        out = out + p * theta_multicurve(m, x.b)
    return out


def theta_stacked(b: int, m1: Multicurve, m2: Multicurve) -> LaurentPoly:
    """``theta(m1 m2)`` straight from the stacked picture, without expanding."""
    if not m1.components:
        return theta_multicurve(m2, b)
    if not m2.components:
        return theta_multicurve(m1, b)
    key = (b, m1, m2)
    hit = _PAIR_CACHE.get(key)
    if hit is not None:
        return hit
    val = theta_diagram(stack(realize(m1, b), realize(m2, b)))
    with _LOCK:
        _PAIR_CACHE[key] = val
    return val


def theta_pairing(x: SkeinElement, y: SkeinElement) -> LaurentPoly:
    """``theta(x y)`` by bilinearity over stacked basis pictures."""
    if x.b != y.b:
        raise ValueError("elements on different disks")
    out = ZERO
    for m1, p1 in x.terms.items():
        for m2, p2 in y.terms.items():
            out = out + p1 * p2 * theta_stacked(x.b, m1, m2)
    return out


# ---------------------------------------------------------------------------
# closed forms


def K_L(n: int) -> LaurentPoly:
    """Bracket of the closure of the 2-braid with ``2n`` positive crossings."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return LaurentPoly({2 * n + 4: 1, 2 * n: 1, 2 * n - 4: 1}) + LaurentPoly({-6 * n: 1})


def theta_pair_oracle(I: Iterable[int], J: Iterable[int]) -> LaurentPoly:
    """``(-A^3)^{|I|+|J|-k} K(L_k)`` with ``k = |I & J|``; one empty side gives ``(-A^3)^{|I|} delta``."""
    I, J = frozenset(I), frozenset(J)
    if not I and not J:
        return ONE
    if not I or not J:
        return MINUS_A3 ** len(I | J) * DELTA
    k = len(I & J)
    return MINUS_A3 ** (len(I) + len(J) - k) * K_L(k)


def theta_pair_closed_form(I: Iterable[int], J: Iterable[int]) -> LaurentPoly:
    """``(-A^3)^{|I|+|J|} K(L_k)``: every strand on a twisted cable carries one curl."""
    I, J = frozenset(I), frozenset(J)
    if not I and not J:
        return ONE
    if not I or not J:
        return MINUS_A3 ** len(I | J) * DELTA
    return MINUS_A3 ** (len(I) + len(J)) * K_L(len(I & J))


def _alt_terms(idx: Sequence[int]) -> list[tuple[LaurentPoly, tuple[int, ...]]]:
    """Terms ``(coefficient, subset)`` of a basis rep; the empty subset stands for the unit."""
    idx = tuple(idx)
    if len(idx) == 2 and idx[0] == idx[1]:
        return [(LaurentPoly.const(2), (idx[0],)), (DELTA * -2, ())]
    out = []
    n = len(idx)
    for r in range(n + 1):
        for K in combinations(idx, r):
            c = LaurentPoly.const((-1) ** (n - r))
            out.append((c * DELTA if not K else c, K))
    return out


def rep_terms(n: NamedBasisRep) -> list[tuple[LaurentPoly, tuple[int, ...]]]:
    if n.kind == "scalar":
        return [(ONE, ())]
    if n.kind == "h":
        return [(A_PLUS_1, ())]
    return _alt_terms(n.idx)


def closed_form_pairing(u: NamedBasisRep, v: NamedBasisRep) -> LaurentPoly:
    out = ZERO
    for p, I in rep_terms(u):
        for q, J in rep_terms(v):
            out = out + p * q * theta_pair_closed_form(I, J)
    return out


# Reference values of theta(u v) on pairs of basis reps, by index-overlap
# pattern.  Each entry: (u, v, exact value or None, residue order, residue).
_P = LaurentPoly({12: 1, 8: 1, 7: 2, 4: 2, 3: 4, 0: 3, -1: 2, -4: 1})
_Q2 = LaurentPoly({20: 1, 16: 1, 15: 4, 12: 3, 11: 4, 10: 4, 8: 2, 7: 8, 6: 8, 4: 3, 3: 12, 2: 4, 0: 5, -1: 4, -4: 1})
_R3 = LaurentPoly({28: 1, 24: 1, 23: 6, 20: 4, 19: 6, 18: 12, 16: 3, 15: 18, 14: 12, 13: 8, 12: 6, 11: 12,
                   10: 24, 9: 16, 8: 3, 7: 18, 6: 36, 5: 8, 4: 4, 3: 30, 2: 12, 0: 9, -1: 6, -4: 1})
_A3P1 = LaurentPoly({3: 1, 0: 1})
_S = LaurentPoly({2: 1, -2: 1})


def _pr(*idx):
    return NamedBasisRep("pair", idx)


def _tr(*idx):
    return NamedBasisRep("triple", idx)


def reference_pairing_table() -> list[dict]:
    """Exact reference values and (A+1)-residues of the pairing on basis reps (b = 6)."""
    rows = []

    def add(case, u, v, exact, order, residue):
        rows.append({"case": case, "u": u, "v": v, "exact": exact, "order": order, "residue": residue})

    add("pp-ii-same", _pr(1, 1), _pr(1, 1), _P * 4, 3, 240)
    add("pp-ii-diff", _pr(1, 1), _pr(2, 2), _A3P1 ** 2 * _S ** 2 * 4, 3, 144)
    add("pq-in", _pr(1, 2), _pr(1, 1), _A3P1 * _P * -2, 3, 0)
    add("pq-in", _pr(1, 2), _pr(2, 2), _A3P1 * _P * -2, 3, 0)
    add("pq-out", _pr(1, 2), _pr(3, 3), _A3P1 ** 3 * _S ** 2 * -2, 3, 0)
    add("tq-in", _tr(1, 2, 3), _pr(2, 2), _A3P1 ** 2 * _P * 2, 4, 0)
    add("tq-out", _tr(1, 2, 3), _pr(4, 4), _A3P1 ** 4 * _S ** 2 * 2, 4, 0)
    add("qq-0", _pr(1, 2), _pr(3, 4), _A3P1 ** 4 * _S ** 2, 3, 0)
    add("qq-1", _pr(1, 2), _pr(2, 3), _A3P1 ** 2 * _P, 3, 0)
    add("qq-1", _pr(1, 3), _pr(2, 3), _A3P1 ** 2 * _P, 3, 0)
    add("qq-2", _pr(1, 2), _pr(1, 2), _Q2, 3, 48)
    add("tp-0", _tr(1, 2, 3), _pr(4, 5), -(_A3P1 ** 5) * _S ** 2, 3, 0)
    add("tp-1", _tr(1, 2, 3), _pr(3, 4), -(_A3P1 ** 3) * _P, 3, 0)
    add("tp-2", _tr(1, 2, 3), _pr(1, 3), -_A3P1 * _Q2, 3, 0)
    add("tt-0", _tr(1, 2, 3), _tr(4, 5, 6), _A3P1 ** 6 * _S ** 2, 4, 0)
    add("tt-1", _tr(1, 2, 3), _tr(3, 4, 5), _A3P1 ** 4 * _P, 4, 0)
    add("tt-2", _tr(1, 2, 3), _tr(2, 3, 4), _A3P1 ** 2 * _Q2, 4, 0)
    add("tt-2", _tr(1, 2, 4), _tr(1, 3, 4), _A3P1 ** 2 * _Q2, 4, 0)
    add("tt-3", _tr(1, 2, 3), _tr(1, 2, 3), _R3, 4, 192)
    return rows


def residue_coefficient(p: LaurentPoly, order: int) -> tuple[bool, Fraction]:
    """Whether ``p`` vanishes below ``(A+1)^{order-1}``, and its coefficient there."""
    jet = lp_jet_at_minus1(p, order - 1)
    return all(c == 0 for c in jet[:-1]), jet[-1]


# ---------------------------------------------------------------------------
# Gram matrices and the independence form


@dataclass
class Gram:
    b: int
    labels: list[NamedBasisRep]
    matrix: list[list[LaurentPoly]]
    closed_form_ok: bool
    mismatches: list[tuple[str, str]] = field(default_factory=list)

    def to_csv(self) -> str:
        head = "," + ",".join(str(l) for l in self.labels)
        lines = [head]
        for l, row in zip(self.labels, self.matrix):
            lines.append(f"\"{l}\"," + ",".join(f"\"{p}\"" for p in row))
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "b": self.b,
            "labels": [str(l) for l in self.labels],
            "matrix": [[p.to_json() for p in row] for row in self.matrix],
            "closed_form_ok": self.closed_form_ok,
            "mismatches": [list(m) for m in self.mismatches],
        }


def gram(b: int, labels: Sequence[NamedBasisRep] | None = None, verify: bool = True) -> Gram:
    if labels is None:
        labels = [n for n, _ in basis_reps(b, include_unit=False)]
    reps = {n: basis_rep(n, b) for n in labels}
    mat: list[list[LaurentPoly]] = [[ZERO] * len(labels) for _ in labels]
    mism = []
    for i, u in enumerate(labels):
        for j in range(i, len(labels)):
            v = labels[j]
            val = theta_pairing(reps[u], reps[v])
            mat[i][j] = mat[j][i] = val
            if verify and val != closed_form_pairing(u, v):
                mism.append((str(u), str(v)))
    return Gram(b, list(labels), mat, not mism, mism)


def independence_labels(b: int) -> list[NamedBasisRep]:
    return [n for n, _ in basis_reps(b, include_unit=False)]


def independence_form(g: Gram, q_h, q_diag: dict, q_pair: dict, q_triple: dict) -> LaurentPoly:
    """``theta(X^2)`` for ``X = q(A+1) + sum q_i(<i,i> - 12(A+1)) + sum q_ij <i,j> + sum q_ijk <i,j,k>``."""
    idx = {l: n for n, l in enumerate(g.labels)}
    coeffs = [Fraction(0)] * len(g.labels)
    h = idx[NamedBasisRep("h")]
    coeffs[h] += Fraction(q_h)
    for i, q in q_diag.items():
        coeffs[idx[NamedBasisRep("pair", (i, i))]] += Fraction(q)
        coeffs[h] -= 12 * Fraction(q)
    for (i, j), q in q_pair.items():
        coeffs[idx[NamedBasisRep("pair", (i, j))]] += Fraction(q)
    for t, q in q_triple.items():
        coeffs[idx[NamedBasisRep("triple", t)]] += Fraction(q)
    out = ZERO
    n = len(coeffs)
    for a in range(n):
        if not coeffs[a]:
            continue
        for c in range(n):
            if coeffs[c]:
                out = out + g.matrix[a][c].scale(coeffs[a] * coeffs[c])
    return out


def dimension_count(b: int) -> int:
    """Dimension of the quotient by the square of the augmentation ideal."""
    return 1 + 1 + b * (b + 1) // 2 + comb(b, 3)


# ---------------------------------------------------------------------------
# finite type values and certificates


def ev(L: Multicurve | Diagram, x: SkeinElement, n: int, m: int) -> list[Fraction]:
    """Jet of ``theta((-2)^{-|L|}[L] x) / (A+1)^n`` modulo ``(A+1)^m``."""
    if isinstance(L, Diagram):
        if L.b != x.b:
            raise ValueError("link and element on different disks")
        Lel = resolve(L)
        size = len(L.strands)
    else:
        Lel = SkeinElement(x.b, {L: ONE})
        size = len(L)
    val = theta(mul(Lel.scale(Fraction(-2) ** (-size)), x))
    v = lp_val_aplus1(val)
    if v < n:
        raise InsufficientValuation(f"valuation {v} < {n}")
    q = div_exact(val, A_PLUS_1 ** n) if n else val
    return lp_jet_at_minus1(q, m - 1) if m > 0 else []


@dataclass
class Certificate:
    degree: int
    entries: list[tuple[str, float | int, int]]
    verdict: str

    def to_json(self) -> dict:
        return {
            "claimed_degree": self.degree,
            "kind": "necessary-condition",
            "entries": [{"test": t, "observed": ("inf" if o == float("inf") else o), "required": r}
                        for t, o, r in self.entries],
            "verdict": self.verdict,
        }


def required_valuation(n: int, m: int) -> int:
    return (n + m + 1) // 2


def divisibility_certificate(x: SkeinElement, n: int, tests: Sequence[tuple[str, SkeinElement, int]],
                             pairing=None) -> Certificate:
    """Check ``val(theta(x y)) >= floor((n+m+1)/2)`` for each test ``(id, y, m)``."""
    pairing = pairing or theta_pairing
    entries = []
    ok = True
    for tid, y, m in tests:
        obs = lp_val_aplus1(pairing(x, y))
        req = required_valuation(n, m)
        entries.append((tid, obs, req))
        if obs < req:
            ok = False
    return Certificate(n, entries, "consistent" if ok else "refuted")


def rep_degree(n: NamedBasisRep) -> int:
    return {"scalar": 0, "h": 2, "pair": 2, "triple": 3}[n.kind]


def standard_tests(b: int, products: bool = True) -> list[tuple[str, SkeinElement, int]]:
    """Basis reps with their filtration degrees, optionally with all pairwise products."""
    reps = basis_reps(b)
    out = [(str(n), x, rep_degree(n)) for n, x in reps]
    if products:
        for a in range(len(reps)):
            for c in range(a, len(reps)):
                (n1, x1), (n2, x2) = reps[a], reps[c]
                if n1.kind == "scalar" or n2.kind == "scalar":
                    continue
                out.append((f"{n1}{n2}", mul(x1, x2), rep_degree(n1) + rep_degree(n2)))
    return out


# ---------------------------------------------------------------------------
# elements with claimed filtration degrees


def four_point_defect(b: int = 4) -> SkeinElement:
    """``<1,2,3,4> - (-<1,2><3,4> - <1,4><2,3> + <1,3><2,4>)/2``, claimed in degree 5."""
    P = lambda *i: alt_rep(b, i)  # noqa: E731
    s = mul(P(1, 2), P(3, 4)).scale(-1) - mul(P(1, 4), P(2, 3)) + mul(P(1, 3), P(2, 4))
    return P(1, 2, 3, 4) - s.scale(Fraction(1, 2))


def split_triple_product(b: int = 6) -> SkeinElement:
    """``<1,2,4><3,5,6>``, claimed in degree 6."""
    return mul(alt_rep(b, (1, 2, 4)), alt_rep(b, (3, 5, 6)))


def six_point_defect(b: int = 6) -> SkeinElement:
    """``2<1,2,4><3,5,6>`` minus its signed sum of pair triples, claimed in degree 7."""
    P = lambda *i: alt_rep(b, i)  # noqa: E731

    def t(x, y, z):
        return mul_many([P(*x), P(*y), P(*z)])

    s = (t((1, 3), (2, 5), (4, 6)) + t((1, 5), (2, 6), (3, 4)) + t((1, 6), (2, 3), (4, 5))
         - t((1, 3), (2, 6), (4, 5)) - t((2, 5), (1, 6), (3, 4)) - t((1, 5), (2, 3), (4, 6)))
    return split_triple_product(b).scale(2) - s


def clear_caches() -> None:
    _THETA_CACHE.clear()
    _PAIR_CACHE.clear()


__all__ = [
    "Certificate", "Gram", "InsufficientValuation", "K_L", "closed_form_pairing", "clear_caches",
    "dimension_count", "divisibility_certificate", "ev", "four_point_defect", "gram", "independence_form",
    "reference_pairing_table", "rep_terms", "six_point_defect", "split_triple_product", "required_valuation", "residue_coefficient",
    "standard_tests", "theta", "theta_diagram", "theta_multicurve", "theta_pair_closed_form",
    "theta_pair_oracle", "theta_pairing", "theta_stacked", "twisted",
]

