"""Kauffman state sums: resolve a decorated diagram into multicurves.

Each crossing is replaced by its two smoothings (weights ``A`` and ``A^-1``);
crossing-free loops are read off by their ray words, trivial ones give a factor
``delta = -A^2 - A^-2``.  The sum is organized as a frontier dynamic program: a
state records only the open arcs that still touch unprocessed crossings and the
closed loops produced so far, so equal states are merged.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .geom import (
    Diagram,
    GeneralPositionFailure,
    Multicurve,
    Point,
    Word,
    canonical_curve,
    find_intersections,
    free_reduce,
    invert,
    is_standard,
    polyline_word,
    register_curve,
    registered_curve,
    segment_ray_letters,
    _curve_sort_key,
)
from .laurent import DELTA, ONE, ZERO, LaurentPoly, as_poly


class HasPunctures(ValueError):
    """The scalar bracket needs a diagram in the plane without punctures."""


# ---------------------------------------------------------------------------
# skein elements


class SkeinElement:
    """Finite sum ``sum p_M * M`` over multicurves ``M`` of a disk with ``b`` punctures."""

    __slots__ = ("b", "_t", "_h")

    def __init__(self, b: int, terms: Mapping[Multicurve, LaurentPoly | int | Fraction] | None = None):
        self.b = int(b)
        t: dict[Multicurve, LaurentPoly] = {}
        if terms:
            for m, p in terms.items():
                p = as_poly(p)
                if not p.is_zero():
                    t[m] = t[m] + p if m in t else p
                    if t[m].is_zero():
                        del t[m]
        self._t = t
        self._h = None

    @classmethod
    def _raw(cls, b: int, t: dict) -> "SkeinElement":
        x = cls.__new__(cls)
        x.b = b
        x._t = t
        x._h = None
        return x

    @classmethod
    def scalar(cls, b: int, p) -> "SkeinElement":
        return cls(b, {Multicurve(()): as_poly(p)})

    @classmethod
    def curve(cls, b: int, members: Iterable[int]) -> "SkeinElement":
        m = Multicurve.of([tuple(members)])
        if m.max_index() > b:
            raise ValueError(f"curve {sorted(members)} exceeds b={b}")
        return cls(b, {m: ONE})

    @classmethod
    def multicurve(cls, b: int, comps: Iterable[Iterable[int]], coeff=ONE) -> "SkeinElement":
        m = Multicurve.of(comps)
        if m.max_index() > b:
            raise ValueError(f"multicurve {m} exceeds b={b}")
        return cls(b, {m: as_poly(coeff)})

    @property
    def terms(self) -> dict[Multicurve, LaurentPoly]:
        return dict(self._t)

    def items(self):
        return sorted(self._t.items())

    def coeff(self, m: Multicurve) -> LaurentPoly:
        return self._t.get(m, ZERO)

    def is_zero(self) -> bool:
        return not self._t

    def __len__(self):
        return len(self._t)

    def _check(self, other: "SkeinElement"):
        if self.b != other.b:
            raise ValueError(f"skein elements on different disks (b={self.b} vs b={other.b})")

    def __add__(self, other) -> "SkeinElement":
        if not isinstance(other, SkeinElement):
            other = SkeinElement.scalar(self.b, other)
        self._check(other)
        t = dict(self._t)
        for m, p in other._t.items():
            q = t[m] + p if m in t else p
            if q.is_zero():
                t.pop(m, None)
            else:
                t[m] = q
        return SkeinElement._raw(self.b, t)

    __radd__ = __add__

    def __neg__(self) -> "SkeinElement":
        return SkeinElement._raw(self.b, {m: -p for m, p in self._t.items()})

    def __sub__(self, other) -> "SkeinElement":
        if not isinstance(other, SkeinElement):
            other = SkeinElement.scalar(self.b, other)
        return self + (-other)

    def __rsub__(self, other) -> "SkeinElement":
        return (-self) + other

    def scale(self, p) -> "SkeinElement":
        p = as_poly(p)
        if p.is_zero():
            return SkeinElement._raw(self.b, {})
        return SkeinElement._raw(self.b, {m: q * p for m, q in self._t.items() if not (q * p).is_zero()})

    def __mul__(self, other):
        if isinstance(other, SkeinElement):
            raise TypeError("use algebra.mul for skein products")
        return self.scale(other)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, SkeinElement):
            return self.b == other.b and self._t == other._t
        return NotImplemented

    def __hash__(self):
        if self._h is None:
            self._h = hash((self.b, frozenset(self._t.items())))
        return self._h

    def map_coeffs(self, f) -> "SkeinElement":
        return SkeinElement(self.b, {m: f(p) for m, p in self._t.items()})

    def __repr__(self) -> str:
        return f"SkeinElement(b={self.b}, {self})"

    def __str__(self) -> str:
        if not self._t:
            return "0"
        return " + ".join(f"({p})·{m}" for m, p in self.items())

    # json -------------------------------------------------------------------
    def to_json(self) -> dict:
        terms = []
        for m, p in self.items():
            curves = [list(c) if is_standard(c) else {"word": list(c)} for c in m.components]
            terms.append({"curves": curves, "coeff": p.to_json()})
        return {"b": self.b, "terms": terms}

    @classmethod
    def from_json(cls, obj: Mapping) -> "SkeinElement":
        try:
            b = int(obj["b"])
            out: dict[Multicurve, LaurentPoly] = {}
            for t in obj["terms"]:
                comps = []
                for c in t["curves"]:
                    if isinstance(c, Mapping):
                        w = [int(a) for a in c["word"]]
                        if any(a == 0 or abs(a) > b for a in w):
                            raise ValueError(f"word letter out of range 1..{b}")
                        cw = canonical_curve(w)
                        if not cw:
                            raise ValueError("a curve word must not be null-homotopic")
                        comps.append(cw)
                    else:
                        s = [int(i) for i in c]
                        if not s:
                            raise ValueError("curve subsets must be nonempty")
                        if len(set(s)) != len(s):
                            raise ValueError(f"curve subset {s} repeats a puncture")
                        if any(i < 1 or i > b for i in s):
                            raise ValueError(f"curve subset {s} not inside 1..{b}")
                        comps.append(tuple(sorted(s)))
                m = Multicurve(tuple(sorted(comps, key=_curve_sort_key)))
                p = LaurentPoly.from_json(t.get("coeff", {"0": "1/1"}))
                out[m] = out[m] + p if m in out else p
        except (KeyError, TypeError, AttributeError) as exc:
            raise ValueError(f"malformed skein element JSON: {exc}") from exc
        return cls(b, out)


def as_element(x, b: int) -> SkeinElement:
    if isinstance(x, SkeinElement):
        return x
    return SkeinElement.scalar(b, x)


# ---------------------------------------------------------------------------
# the state sum


@dataclass
class _Edge:
    strand: int
    pts: list[Point]
    word: Word
    start: int  # crossing id at the start
    end: int


def _build_edges(d: Diagram, words: bool):
    crossings = d.crossings()
    events: dict[int, list] = {}
    for ci, c in enumerate(crossings):
        s, k, t = c.over
        events.setdefault(s, []).append((k, t, ci, True))
        s, k, t = c.under
        events.setdefault(s, []).append((k, t, ci, False))
    edges: list[_Edge] = []
    # half-edge ends: 2e = start of edge e, 2e+1 = end
    ends_at: list[dict[str, int]] = [dict() for _ in crossings]
    free_loops: list[Word] = []
    free_polys: list[tuple] = []
    for s, pts in enumerate(d.strands):
        ev = sorted(events.get(s, []))
        if not ev:
            w = polyline_word(pts, d.b) if words else ()
            free_loops.append(w)
            free_polys.append(tuple(pts))
            continue
        n = len(pts)
        m = len(ev)
        for j in range(m):
            k0, t0, c0, o0 = ev[j]
            k1, t1, c1, o1 = ev[(j + 1) % m]
            p_start = crossings[c0].point
            p_end = crossings[c1].point
            poly = [p_start]
            if (k1, t1) > (k0, t0) and j + 1 < m:
                idx = list(range(k0 + 1, k1 + 1))
            else:
                idx = list(range(k0 + 1, n)) + list(range(0, k1 + 1))
            poly.extend(pts[i] for i in idx)
            poly.append(p_end)
            w: Word = ()
            if words:
                lw = []
                for a in range(len(poly) - 1):
                    lw.extend(l for _, l in segment_ray_letters(poly[a], poly[a + 1], d.b))
                w = tuple(lw)
            e = len(edges)
            edges.append(_Edge(s, poly, w, c0, c1))
            ends_at[c0]["o_out" if o0 else "u_out"] = 2 * e
            ends_at[c1]["o_in" if o1 else "u_in"] = 2 * e + 1
    pairings = []
    for ci, c in enumerate(crossings):
        a1, a2 = d.segment(c.over[0], c.over[1])
        b1, b2 = d.segment(c.under[0], c.under[1])
        do = (a2[0] - a1[0], a2[1] - a1[1])
        du = (b2[0] - b1[0], b2[1] - b1[1])
        cr = do[0] * du[1] - do[1] * du[0]
        E = ends_at[ci]
        if cr > 0:
            ua, ub = E["u_out"], E["u_in"]
        else:
            ua, ub = E["u_in"], E["u_out"]
        a_pairs = ((E["o_out"], ub), (E["o_in"], ua))
        b_pairs = ((E["o_out"], ua), (E["o_in"], ub))
        pairings.append((a_pairs, b_pairs) if SMOOTHING_A_FIRST else (b_pairs, a_pairs))
    return crossings, edges, pairings, free_loops, free_polys


# Normative convention: with the counterclockwise order (o_out, u_a, o_in, u_b)
# of half-edges around a crossing, the A-smoothing joins o_out to u_b and
# o_in to u_a, i.e. it merges the two regions swept counterclockwise from the
# over-strand.  A positive curl then contributes -A^3.
SMOOTHING_A_FIRST = True


def _crossing_order(crossings, edges) -> list[int]:
    n = len(crossings)
    if n == 0:
        return []
    adj: list[list[int]] = [[] for _ in range(n)]
    for e in edges:
        adj[e.start].append(e.end)
        adj[e.end].append(e.start)
    done = [False] * n
    active_count = [0] * n
    order = []
    for _ in range(n):
        best = None
        for c in range(n):
            if not done[c] and (best is None or active_count[c] > active_count[best]):
                best = c
        done[best] = True
        order.append(best)
        for o in adj[best]:
            active_count[o] += 1
    return order


def _poly_mul_delta(p: dict[int, int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for e, v in p.items():
        out[e + 2] = out.get(e + 2, 0) - v
        out[e - 2] = out.get(e - 2, 0) - v
    return {e: v for e, v in out.items() if v}


def _poly_add_into(target: dict[int, int], p: dict[int, int], shift: int = 0):
    for e, v in p.items():
        e2 = e + shift
        w = target.get(e2, 0) + v
        if w:
            target[e2] = w
        else:
            target.pop(e2, None)


def _run_dp(crossings, edges, pairings, order, words: bool):
    """Returns {closed-loop key: (poly dict, witness)} after all crossings."""
    edge_of_end = lambda x: x >> 1  # noqa: E731
    # path: (end_a, end_b, word from a to b)
    states: dict = {(frozenset(), ()): ({0: 1}, None)}
    active: set[int] = set()
    for step, ci in enumerate(order):
        new_states: dict = {}
        for (paths, loops), (poly, wit) in states.items():
            for choice, pairs in enumerate(pairings[ci]):
                endmap: dict[int, tuple] = {}
                plist = list(paths)
                for p in plist:
                    endmap[p[0]] = p
                    endmap[p[1]] = p
                # activate fresh edges touched by this crossing
                for pair in pairs:
                    for x in pair:
                        e = edge_of_end(x)
                        if e not in active and x not in endmap:
                            w = edges[e].word
                            p = (2 * e, 2 * e + 1, w)
                            endmap[2 * e] = p
                            endmap[2 * e + 1] = p
                new_loops = list(loops)
                n_trivial = 0
                for x, y in pairs:
                    P = endmap.pop(x)
                    Q = endmap.pop(y)
                    if P is Q:
                        wloop = P[2]
                        c = canonical_curve(wloop) if words else ()
                        if c:
                            new_loops.append(c)
                        else:
                            n_trivial += 1
                        continue
                    # orient P to end at x, Q to start at y
                    pw = P[2] if P[1] == x else invert(P[2])
                    pa = P[0] if P[1] == x else P[1]
                    qw = Q[2] if Q[0] == y else invert(Q[2])
                    qb = Q[1] if Q[0] == y else Q[0]
                    nw = free_reduce(pw + qw) if words else ()
                    R = (pa, qb, nw) if pa < qb else (qb, pa, invert(nw))
                    endmap.pop(pa, None)
                    endmap.pop(qb, None)
                    endmap[pa] = R
                    endmap[qb] = R
                newpaths = frozenset(endmap.values())
                key = (newpaths, tuple(sorted(new_loops, key=_curve_sort_key)))
                p2 = poly
                for _ in range(n_trivial):
                    p2 = _poly_mul_delta(p2)
                shift = 1 if choice == 0 else -1
                nw_ = (wit, choice)
                if key in new_states:
                    acc, w0 = new_states[key]
                    _poly_add_into(acc, p2, shift)
                else:
                    acc = {}
                    _poly_add_into(acc, p2, shift)
                    new_states[key] = (acc, nw_)
        for pair in pairings[ci][0]:
            for x in pair:
                active.add(edge_of_end(x))
        states = {k: v for k, v in new_states.items() if v[0]}
    out = {}
    for (paths, loops), val in states.items():
        if paths:
            raise GeneralPositionFailure("open arcs left after resolving every crossing")
        out[loops] = val
    return out


def _unwind(wit) -> list[int]:
    out = []
    while wit is not None:
        wit, ch = wit
        out.append(ch)
    return out[::-1]


def _trace_loops(edges, pairings, order, choices):
    """Closed loops of a fixed state as lists of (edge, forward)."""
    partner: dict[int, int] = {}
    for ci, ch in zip(order, choices):
        for x, y in pairings[ci][ch]:
            partner[x] = y
            partner[y] = x
    seen: set[int] = set()
    loops = []
    for e in range(len(edges)):
        if e in seen:
            continue
        loop = []
        cur, fwd = e, True
        while True:
            seen.add(cur)
            loop.append((cur, fwd))
            exit_end = 2 * cur + 1 if fwd else 2 * cur
            nxt = partner[exit_end]
            cur, fwd = nxt >> 1, (nxt & 1) == 0
            if cur == e and fwd:
                break
            if cur == e and not fwd and len(loop) > 0 and (cur, fwd) == loop[0]:
                break
        loops.append(loop)
    return loops


def _loop_polygon(edges, loop, t: Fraction) -> list[Point]:
    pts: list[Point] = []
    for e, fwd in loop:
        poly = edges[e].pts if fwd else edges[e].pts[::-1]
        pts.extend(poly[:-1])
    # every crossing point sits at the start of an edge: shave it
    out: list[Point] = []
    n = len(pts)
    starts = set()
    k = 0
    for e, fwd in loop:
        starts.add(k)
        k += len(edges[e].pts) - 1
    for i in range(n):
        p = pts[i]
        if i in starts:
            prv, nxt = pts[i - 1], pts[(i + 1) % n]
            out.append((p[0] + t * (prv[0] - p[0]), p[1] + t * (prv[1] - p[1])))
            out.append((p[0] + t * (nxt[0] - p[0]), p[1] + t * (nxt[1] - p[1])))
        else:
            out.append(p)
    return out


def _register_from_witness(d: Diagram, edges, pairings, order, wit, loops_needed: set[Word]):
    choices = _unwind(wit)
    for loop in _trace_loops(edges, pairings, order, choices):
        w = []
        for e, fwd in loop:
            w.extend(edges[e].word if fwd else invert(edges[e].word))
        c = canonical_curve(w)
        if c not in loops_needed or registered_curve(c) is not None:
            continue
        t = Fraction(1, 4)
        for _ in range(30):
            poly = _loop_polygon(edges, loop, t)
            try:
                if not find_intersections([poly], d.b):
                    if canonical_curve(polyline_word(poly, d.b)) == c:
                        register_curve(c, poly)
                        break
            except GeneralPositionFailure:
                pass
            t /= 2


def resolve(d: Diagram, order: list[int] | None = None) -> SkeinElement:
    """Expand a diagram in the multicurve basis of the punctured disk."""
    words = d.b > 0
    crossings, edges, pairings, free_loops, free_polys = _build_edges(d, words)
    if order is None:
        order = _crossing_order(crossings, edges)
    elif sorted(order) != list(range(len(crossings))):
        raise ValueError("order must be a permutation of the crossings")
    free_key = []
    n_free_trivial = 0
    for w, poly in zip(free_loops, free_polys):
        c = canonical_curve(w)
        if c:
            free_key.append(c)
            if not is_standard(c):
                register_curve(c, poly)
        else:
            n_free_trivial += 1
    final = _run_dp(crossings, edges, pairings, order, words)
    out: dict[Multicurve, LaurentPoly] = {}
    for loops, (poly, wit) in final.items():
        comps = tuple(sorted(list(loops) + free_key, key=_curve_sort_key))
        need = {c for c in loops if not is_standard(c) and registered_curve(c) is None}
        if need:
            _register_from_witness(d, edges, pairings, order, wit, need)
        p = LaurentPoly.from_int_dict(poly)
        for _ in range(n_free_trivial):
            p = p * DELTA
        m = Multicurve(comps)
        out[m] = out[m] + p if m in out else p
    return SkeinElement(d.b, out)


def bracket_s3(d: Diagram) -> LaurentPoly:
    """Kauffman bracket of a diagram in the plane, with ``K(unknot) = delta``."""
    if d.b != 0:
        raise HasPunctures("bracket_s3 needs b = 0; delete the punctures first")
    r = resolve(d)
    return r.coeff(Multicurve(()))


def bracket_plane(d: Diagram) -> LaurentPoly:
    """Bracket after forgetting the punctures."""
    return bracket_s3(d.without_punctures())
