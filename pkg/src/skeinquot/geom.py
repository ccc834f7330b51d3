"""Exact planar pictures of curves in a punctured disk.

Punctures sit at ``(i, 0)`` for ``i = 1..b``.  Every curve is a closed polyline
with rational vertices; all predicates are exact sign-of-determinant tests.

Homotopy bookkeeping uses the upward vertical ray from every puncture.  Crossing
ray ``i`` moving rightward reads the letter ``+i``, moving leftward reads ``-i``.
With this convention the standard curve around the punctures ``i1 < ... < ik``
(corridors dipping below the other punctures) reads the cyclic word
``r_i1 r_i2 ... r_ik`` when traversed clockwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Callable, Iterable, Mapping, Sequence

Point = tuple[Fraction, Fraction]
Word = tuple[int, ...]


class GeneralPositionFailure(RuntimeError):
    """A configuration violated the transversality requirements."""


class RayThroughVertex(GeneralPositionFailure):
    """A vertex or crossing sits on one of the upward puncture rays."""


F = Fraction
HALF = F(1, 2)


def P(x, y) -> Point:
    return (F(x), F(y))


# ---------------------------------------------------------------------------
# curve words


def free_reduce(w: Iterable[int]) -> Word:
    out: list[int] = []
    for a in w:
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


def invert(w: Sequence[int]) -> Word:
    return tuple(-a for a in reversed(w))


def cyclic_reduce(w: Sequence[int]) -> Word:
    w = list(free_reduce(w))
    i, j = 0, len(w) - 1
    while i < j and w[i] == -w[j]:
        i += 1
        j -= 1
    return tuple(w[i : j + 1])


def _letter_key(a: int) -> tuple[int, int]:
    return (abs(a), 1 if a < 0 else 0)


def canonical_curve(w: Sequence[int]) -> Word:
    """Canonical representative of an unoriented free homotopy class.

    The empty tuple is the trivial class.  For a standard curve the result is
    the increasing tuple of its punctures.
    """
    w = cyclic_reduce(w)
    if not w:
        return ()
    best = None
    best_key = None
    for cand in (w, invert(w)):
        n = len(cand)
        for r in range(n):
            rot = cand[r:] + cand[:r]
            key = tuple(_letter_key(a) for a in rot)
            if best_key is None or key < best_key:
                best, best_key = rot, key
    return tuple(best)


def is_standard(c: Word) -> bool:
    return bool(c) and all(a > 0 for a in c) and all(c[i] < c[i + 1] for i in range(len(c) - 1))


def enclosed_set(c: Word) -> frozenset[int]:
    """Punctures with nonzero winding, i.e. nonzero exponent sum."""
    tot: dict[int, int] = {}
    for a in c:
        tot[abs(a)] = tot.get(abs(a), 0) + (1 if a > 0 else -1)
    return frozenset(i for i, v in tot.items() if v)


def standard_curve(members: Iterable[int]) -> Word:
    s = tuple(sorted(set(int(i) for i in members)))
    if not s or s[0] < 1:
        raise ValueError("a subset curve needs a nonempty set of positive punctures")
    return s


# ---------------------------------------------------------------------------
# domain types


@dataclass(frozen=True)
class DiskConfig:
    b: int

    def __post_init__(self):
        if self.b < 0:
            raise ValueError("b must be nonnegative")

    def punctures(self) -> list[Point]:
        return [(F(i), F(0)) for i in range(1, self.b + 1)]


@dataclass(frozen=True)
class SubsetCurve:
    members: frozenset[int]

    def __post_init__(self):
        if not self.members:
            raise ValueError("SubsetCurve must be nonempty")

    @property
    def word(self) -> Word:
        return standard_curve(self.members)


@dataclass(frozen=True, order=True)
class Multicurve:
    """Sorted multiset of curves, each an unoriented canonical cyclic word.

    A standard subset curve is stored as its increasing puncture tuple, so a
    multicurve of subset curves is literally a sorted tuple of subsets.
    """

    components: tuple[Word, ...] = ()

    @classmethod
    def of(cls, comps: Iterable[Iterable[int] | Word]) -> "Multicurve":
        out = []
        for c in comps:
            c = tuple(c)
            if c and all(a > 0 for a in c):
                # positive entries are read as a subset
                out.append(standard_curve(c))
            else:
                w = canonical_curve(c)
                if not w:
                    raise ValueError("null-homotopic component in a multicurve")
                out.append(w)
        return cls(tuple(sorted(out, key=_curve_sort_key)))

    def __len__(self) -> int:
        return len(self.components)

    def is_standard(self) -> bool:
        return all(is_standard(c) for c in self.components)

    def max_index(self) -> int:
        return max((abs(a) for c in self.components for a in c), default=0)

    def sets(self) -> list[frozenset[int]]:
        return [enclosed_set(c) for c in self.components]

    def __str__(self) -> str:
        if not self.components:
            return "{}"
        parts = []
        for c in self.components:
            if is_standard(c):
                parts.append("c" + "".join(str(i) if i < 10 else f"({i})" for i in c))
            else:
                parts.append("|" + " ".join(f"r{a}" if a > 0 else f"r{-a}^-1" for a in c) + "|")
        return "·".join(parts)


def _curve_sort_key(c: Word):
    return (len(c), tuple(_letter_key(a) for a in c))


EMPTY = Multicurve(())


def is_laminar(sets: Sequence[frozenset[int]]) -> bool:
    """Nested or disjoint, and disjoint sets never interleave."""
    for x in range(len(sets)):
        for y in range(x + 1, len(sets)):
            a, b = sets[x], sets[y]
            if a <= b or b <= a:
                continue
            if a & b:
                return False
            if _interleaved(a, b):
                return False
    return True


def _interleaved(a: frozenset[int], b: frozenset[int]) -> bool:
    sa = sorted(a)

    def gap(t: int) -> int:
        return sum(1 for s in sa if s < t)

    if len({gap(t) for t in b}) > 1:
        return True
    sb = sorted(b)
    return len({sum(1 for s in sb if s < t) for t in a}) > 1


# ---------------------------------------------------------------------------
# exact planar predicates


def _cross(ax, ay, bx, by):
    return ax * by - ay * bx


def orient(a: Point, b: Point, c: Point) -> int:
    v = _cross(b[0] - a[0], b[1] - a[1], c[0] - a[0], c[1] - a[1])
    return (v > 0) - (v < 0)


def _denoms(strands: Iterable[Sequence[Point]], extra: Iterable[Point] = ()) -> int:
    L = 1
    for s in strands:
        for x, y in s:
            L = lcm(L, x.denominator, y.denominator)
    for x, y in extra:
        L = lcm(L, x.denominator, y.denominator)
    return L


@dataclass
class _Seg:
    s: int
    k: int
    x1: int
    y1: int
    x2: int
    y2: int
    lo: int
    hi: int
    ylo: int
    yhi: int


def _segments(strands: Sequence[Sequence[Point]], L: int) -> list[_Seg]:
    out = []
    for s, pts in enumerate(strands):
        n = len(pts)
        for k in range(n):
            a, b = pts[k], pts[(k + 1) % n]
            x1, y1 = int(a[0] * L), int(a[1] * L)
            x2, y2 = int(b[0] * L), int(b[1] * L)
            out.append(_Seg(s, k, x1, y1, x2, y2, min(x1, x2), max(x1, x2), min(y1, y2), max(y1, y2)))
    return out


def find_intersections(strands: Sequence[Sequence[Point]], b: int = 0, check_rays: bool = True):
    """All crossings of a family of closed polylines.

    Returns a list ``(point, (s1, k1, t1), (s2, k2, t2))`` where ``t`` is the
    position along the segment.  Raises :class:`GeneralPositionFailure` unless
    every intersection is a transverse double point interior to both segments,
    no segment meets a puncture, and (when ``check_rays``) no vertex or crossing
    lies on an upward puncture ray.
    """
    for s, pts in enumerate(strands):
        if len(pts) < 3:
            raise GeneralPositionFailure(f"strand {s} has fewer than three vertices")
        for k in range(len(pts)):
            if pts[k] == pts[(k + 1) % len(pts)]:
                raise GeneralPositionFailure(f"strand {s} has a zero-length segment")
    punct = [(F(i), F(0)) for i in range(1, b + 1)]
    L = _denoms(strands, punct)
    segs = _segments(strands, L)
    segs.sort(key=lambda g: g.lo)
    nseg_of = [len(p) for p in strands]
    found = []
    seen_points: dict[Point, int] = {}
    n = len(segs)
    for ia in range(n):
        g = segs[ia]
        for ib in range(ia + 1, n):
            h = segs[ib]
            if h.lo > g.hi:
                break
            if h.ylo > g.yhi or g.ylo > h.yhi:
                continue
            adjacent = None
            if g.s == h.s:
                m = nseg_of[g.s]
                if (g.k + 1) % m == h.k:
                    adjacent = (g, h)
                elif (h.k + 1) % m == g.k:
                    adjacent = (h, g)
            dx1, dy1 = g.x2 - g.x1, g.y2 - g.y1
            dx2, dy2 = h.x2 - h.x1, h.y2 - h.y1
            den = _cross(dx1, dy1, dx2, dy2)
            qx, qy = h.x1 - g.x1, h.y1 - g.y1
            if den == 0:
                if _cross(qx, qy, dx1, dy1) != 0:
                    continue
                # collinear: overlapping beyond a shared vertex is degenerate
                dd = dx1 * dx1 + dy1 * dy1
                t0 = qx * dx1 + qy * dy1
                t1 = (h.x2 - g.x1) * dx1 + (h.y2 - g.y1) * dy1
                lo_, hi_ = min(t0, t1), max(t0, t1)
                ov_lo, ov_hi = max(lo_, 0), min(hi_, dd)
                if ov_lo < ov_hi:
                    raise GeneralPositionFailure("collinear overlapping segments")
                if ov_lo == ov_hi and adjacent is None:
                    raise GeneralPositionFailure("segments touch at an endpoint")
                continue
            tn = _cross(qx, qy, dx2, dy2)
            un = _cross(qx, qy, dx1, dy1)
            if den < 0:
                den, tn, un = -den, -tn, -un
            if tn < 0 or tn > den or un < 0 or un > den:
                continue
            if adjacent is not None:
                first, second = adjacent
                # shared vertex is the end of `first` and the start of `second`
                if first is g:
                    ok = tn == den and un == 0
                else:
                    ok = tn == 0 and un == den
                if ok:
                    continue
                raise GeneralPositionFailure("adjacent segments meet away from their shared vertex")
            if tn == 0 or tn == den or un == 0 or un == den:
                raise GeneralPositionFailure("a vertex lies on another segment")
            t = F(tn, den)
            u = F(un, den)
            px = F(g.x1 * den + tn * dx1, den * L)
            py = F(g.y1 * den + tn * dy1, den * L)
            pt = (px, py)
            if pt in seen_points:
                raise GeneralPositionFailure("three segments meet at a point")
            seen_points[pt] = 1
            found.append((pt, (g.s, g.k, t), (h.s, h.k, u)))
    # punctures and rays
    for i in range(1, b + 1):
        X = i * L
        for g in segs:
            if g.lo <= X <= g.hi and g.ylo <= 0 <= g.yhi:
                if _cross(g.x2 - g.x1, g.y2 - g.y1, X - g.x1, -g.y1) == 0:
                    raise GeneralPositionFailure(f"segment passes through puncture {i}")
        if check_rays:
            for g in segs:
                if g.x1 == X and g.y1 > 0:
                    raise RayThroughVertex(f"vertex on the ray of puncture {i}")
            for pt, _, _ in found:
                if pt[0] == i and pt[1] > 0:
                    raise RayThroughVertex(f"crossing on the ray of puncture {i}")
    return found


def segment_ray_letters(a: Point, b: Point, nb: int) -> list[tuple[Fraction, int]]:
    """Ray crossings of the segment ``a -> b`` as ``(position, letter)`` pairs."""
    out = []
    x1, y1 = a
    x2, y2 = b
    if x1 == x2:
        return out
    lo, hi = (x1, x2) if x1 < x2 else (x2, x1)
    i0 = max(1, int(lo) + (0 if lo != int(lo) else 1) if lo > 0 else 1)
    i = int(lo)
    if i < lo or i < 1:
        i += 1
    i = max(i, 1)
    while i <= nb and i < hi:
        if i > lo:
            t = (i - x1) / (x2 - x1)
            y = y1 + t * (y2 - y1)
            if y > 0:
                out.append((t, i if x2 > x1 else -i))
        i += 1
    out.sort()
    return out


def polyline_word(pts: Sequence[Point], nb: int, closed: bool = True) -> Word:
    w: list[int] = []
    n = len(pts)
    m = n if closed else n - 1
    for k in range(m):
        for _, a in segment_ray_letters(pts[k], pts[(k + 1) % n], nb):
            w.append(a)
    return tuple(w)


def point_in_polygon(p: Point, poly: Sequence[Point]) -> bool:
    """Even-odd rule; ``p`` must not lie on the boundary."""
    x, y = p
    inside = False
    n = len(poly)
    for k in range(n):
        (x1, y1), (x2, y2) = poly[k], poly[(k + 1) % n]
        if (y1 > y) != (y2 > y):
            xi = x1 + (y - y1) * (x2 - x1) / (y2 - y1)
            if xi > x:
                inside = not inside
    return inside


def polygon_is_simple(poly: Sequence[Point]) -> bool:
    try:
        return not find_intersections([poly], 0, check_rays=False)
    except GeneralPositionFailure:
        return False


def signed_area2(poly: Sequence[Point]) -> Fraction:
    n = len(poly)
    return sum((poly[k][0] * poly[(k + 1) % n][1] - poly[(k + 1) % n][0] * poly[k][1] for k in range(n)), F(0))


def _dist2_point_segment(p: Point, a: Point, b: Point) -> Fraction:
    dx, dy = b[0] - a[0], b[1] - a[1]
    px, py = p[0] - a[0], p[1] - a[1]
    dd = dx * dx + dy * dy
    t = (px * dx + py * dy) / dd
    if t < 0:
        t = F(0)
    elif t > 1:
        t = F(1)
    ex, ey = px - t * dx, py - t * dy
    return ex * ex + ey * ey


def clearance2(strands: Sequence[Sequence[Point]], b: int) -> Fraction:
    """Squared distance from the strands to the nearest puncture."""
    best = None
    for pts in strands:
        n = len(pts)
        for k in range(n):
            for i in range(1, b + 1):
                d = _dist2_point_segment((F(i), F(0)), pts[k], pts[(k + 1) % n])
                if best is None or d < best:
                    best = d
    return best if best is not None else F(1)


# ---------------------------------------------------------------------------
# diagrams


def _direction(a: Point, b: Point) -> tuple[Fraction, Fraction]:
    return (b[0] - a[0], b[1] - a[1])


@dataclass
class Crossing:
    point: Point
    over: tuple[int, int, Fraction]
    under: tuple[int, int, Fraction]


@dataclass(eq=False)
class Diagram:
    """Decorated planar link diagram in the disk with ``b`` punctures.

    ``strands`` are closed polylines (last vertex joins the first).  ``over``
    maps each crossing point to the ``(strand, segment)`` passing over it.
    """

    b: int
    strands: tuple[tuple[Point, ...], ...]
    over: dict[Point, tuple[int, int]] = field(default_factory=dict)
    _crossings: list | None = field(default=None, repr=False)

    @property
    def config(self) -> DiskConfig:
        return DiskConfig(self.b)

    def crossings(self) -> list[Crossing]:
        if self._crossings is None:
            out = []
            for pt, (s1, k1, t1), (s2, k2, t2) in find_intersections(self.strands, self.b):
                ov = self.over.get(pt)
                if ov == (s1, k1):
                    out.append(Crossing(pt, (s1, k1, t1), (s2, k2, t2)))
                elif ov == (s2, k2):
                    out.append(Crossing(pt, (s2, k2, t2), (s1, k1, t1)))
                else:
                    raise GeneralPositionFailure(f"crossing at {pt} has no valid decoration")
            if len(out) != len(self.over):
                raise GeneralPositionFailure("decoration names a point that is not a crossing")
            self._crossings = out
        return self._crossings

    def validate(self) -> None:
        self.crossings()

    def n_crossings(self) -> int:
        return len(self.crossings())

    def segment(self, s: int, k: int) -> tuple[Point, Point]:
        pts = self.strands[s]
        return pts[k], pts[(k + 1) % len(pts)]

    def crossing_sign(self, c: Crossing) -> int:
        a1, a2 = self.segment(c.over[0], c.over[1])
        b1, b2 = self.segment(c.under[0], c.under[1])
        v = _cross(*_direction(a1, a2), *_direction(b1, b2))
        return 1 if v > 0 else -1

    def writhe(self) -> int:
        return sum(self.crossing_sign(c) for c in self.crossings())

    def over_directions(self) -> dict[Point, tuple[Fraction, Fraction]]:
        out = {}
        for pt, (s, k) in self.over.items():
            a, b = self.segment(s, k)
            out[pt] = _direction(a, b)
        return out

    def strand_word(self, s: int) -> Word:
        return polyline_word(self.strands[s], self.b)

    def without_punctures(self) -> "Diagram":
        return Diagram(0, self.strands, dict(self.over), list(self.crossings()))

    # json -----------------------------------------------------------------
    def to_json(self) -> dict:
        def enc(p: Point):
            return [p[0].numerator, p[0].denominator, p[1].numerator, p[1].denominator]

        over = []
        for c in sorted(self.crossings(), key=lambda c: c.point):
            over.append([c.over[0], c.under[0], enc(c.point), c.over[1], c.under[1]])
        return {"b": self.b, "strands": [[enc(p) for p in s] for s in self.strands], "over": over}

    @classmethod
    def from_json(cls, obj: Mapping) -> "Diagram":
        try:
            b = int(obj["b"])
            strands = []
            for s in obj["strands"]:
                strands.append(tuple((F(int(v[0]), int(v[1])), F(int(v[2]), int(v[3]))) for v in s))
            raw_over = obj.get("over", [])
        except (KeyError, TypeError, ValueError, IndexError, ZeroDivisionError) as exc:
            raise ValueError(f"malformed diagram JSON: {exc}") from exc
        strands_t = tuple(strands)
        inter = find_intersections(strands_t, b)
        by_point = {pt: (x, y) for pt, x, y in inter}
        over: dict[Point, tuple[int, int]] = {}
        for entry in raw_over:
            a, bb, v = entry[0], entry[1], entry[2]
            pt = (F(int(v[0]), int(v[1])), F(int(v[2]), int(v[3])))
            if pt not in by_point:
                raise ValueError(f"decorated point {pt} is not a crossing")
            x, y = by_point[pt]
            if len(entry) >= 5:
                want = (int(a), int(entry[3]))
            else:
                if int(a) == int(bb):
                    raise ValueError("self-crossings need segment indices [a, b, point, seg_a, seg_b]")
                cand = [s for s in (x, y) if s[0] == int(a)]
                if len(cand) != 1:
                    raise ValueError(f"strand {a} does not pass through {pt}")
                want = cand[0][:2]
            if want not in ((x[0], x[1]), (y[0], y[1])):
                raise ValueError(f"segment {want} does not pass through {pt}")
            over[pt] = want
        if len(over) != len(inter):
            raise ValueError("every crossing needs an over/under decoration")
        d = cls(b, strands_t, over)
        d.validate()
        return d


def assemble(b: int, strands: Sequence[Sequence[Point]], decide: Callable) -> Diagram:
    """Build a diagram; ``decide(point, seg1, seg2)`` returns the over segment."""
    strands_t = tuple(tuple(s) for s in strands)
    over = {}
    crossings = []
    for pt, x, y in find_intersections(strands_t, b):
        w = decide(pt, (x[0], x[1]), (y[0], y[1]))
        if w == (x[0], x[1]):
            crossings.append(Crossing(pt, x, y))
        elif w == (y[0], y[1]):
            crossings.append(Crossing(pt, y, x))
        else:
            raise GeneralPositionFailure(f"no decoration available at {pt}")
        over[pt] = w
    return Diagram(b, strands_t, over, crossings)


def _by_direction(strands, over_dirs: Mapping[Point, tuple[Fraction, Fraction]]):
    def seg_dir(s, k):
        pts = strands[s]
        return _direction(pts[k], pts[(k + 1) % len(pts)])

    def decide(pt, x, y):
        d = over_dirs.get(pt)
        if d is None:
            return None
        if _cross(*d, *seg_dir(*x)) == 0:
            return x
        if _cross(*d, *seg_dir(*y)) == 0:
            return y
        return None

    return decide


def assemble_by_direction(b, strands, over_dirs) -> Diagram:
    strands_t = tuple(tuple(s) for s in strands)
    return assemble(b, strands_t, _by_direction(strands_t, over_dirs))


def _straight_through(a: Point, m: Point, c: Point) -> bool:
    """``m`` lies on the segment from ``a`` to ``c`` and the path does not turn back there."""
    if orient(a, m, c) != 0:
        return False
    return (m[0] - a[0]) * (c[0] - m[0]) + (m[1] - a[1]) * (c[1] - m[1]) > 0


def _dedupe(pts: list[Point]) -> list[Point]:
    """Drop repeated and collinear-straight-through vertices of a closed path."""
    out: list[Point] = []
    for p in pts:
        if out and out[-1] == p:
            continue
        while len(out) >= 2 and _straight_through(out[-2], out[-1], p):
            out.pop()
        out.append(p)
    if len(out) > 1 and out[0] == out[-1]:
        out.pop()
    # close the loop: tidy the seam at both ends
    changed = True
    while changed and len(out) > 3:
        changed = False
        if _straight_through(out[-2], out[-1], out[0]):
            out.pop()
            changed = True
        elif _straight_through(out[-1], out[0], out[1]):
            out.pop(0)
            changed = True
    return out


# ---------------------------------------------------------------------------
# realization of multicurves


_REGISTRY: dict[Word, tuple[Point, ...]] = {}
"""Representative simple polygons for non-standard curves met during resolution."""


def register_curve(word: Word, poly: Sequence[Point]) -> None:
    _REGISTRY.setdefault(word, tuple(poly))


def registered_curve(word: Word) -> tuple[Point, ...] | None:
    return _REGISTRY.get(word)


def registry_size() -> int:
    return len(_REGISTRY)


def _standard_polygon(members: Sequence[int], m: Fraction, c: Fraction) -> list[Point]:
    """Boundary of legs ``[i-m,i+m] x [c-m, m]`` joined by the band around height ``c``."""
    ms = sorted(members)
    bot, top_band = c - m, c + m
    lo, hi = ms[0], ms[-1]
    if len(ms) == 1:
        i = ms[0]
        return [P(i - m, bot), P(i + m, bot), P(i + m, m), P(i - m, m)]
    pts = [P(lo - m, bot), P(hi + m, bot), P(hi + m, m), P(hi - m, m)]
    for a in range(len(ms) - 1, 0, -1):
        right, left = ms[a], ms[a - 1]
        pts.append(P(right - m, top_band))
        pts.append(P(left + m, top_band))
        pts.append(P(left + m, m))
        pts.append(P(left - m, m))
    return pts


def _laminar_layout(sets: list[frozenset[int]]) -> list[tuple[Fraction, Fraction]]:
    """Margins ``m`` and band centres ``c`` giving disjoint nested polygons."""
    n = len(sets)
    order = sorted(range(n), key=lambda v: (-len(sets[v]), v))
    parent: dict[int, int | None] = {}
    done: list[int] = []
    for v in order:
        best = None
        for u in done:
            if sets[v] <= sets[u]:
                if best is None or len(sets[u]) < len(sets[best]) or (len(sets[u]) == len(sets[best])):
                    if best is None or len(sets[u]) <= len(sets[best]):
                        best = u
        parent[v] = best
        done.append(v)
    children: dict[int | None, list[int]] = {}
    for v in order:
        children.setdefault(parent[v], []).append(v)

    def width(v):
        return max(sets[v]) - min(sets[v])

    H: dict[int, int] = {}

    def height(v) -> int:
        ch = children.get(v, [])
        h = sum(height(c) for c in ch) + len(ch) + 1 if ch else 2
        H[v] = max(h, 2)
        return H[v]

    roots = children.get(None, [])
    total = sum(height(r) for r in roots) + len(roots) + 1
    unit = F(1, 2 * total + 4)
    out: dict[int, tuple[Fraction, Fraction]] = {}

    def place(kids: list[int], top: Fraction):
        kids = sorted(kids, key=lambda v: (width(v), v))
        y = top - unit
        for v in kids:
            h = H[v] * unit
            centre = y - h / 2
            out[v] = (h / 2, centre)
            place(children.get(v, []), y)
            y -= h + unit

    place(roots, -unit)
    return [out[v] for v in range(n)]


def realize_component_polygons(m: Multicurve) -> list[list[tuple[Point, ...]]]:
    """Layers of polygons: one laminar layer of subset curves, then one per other curve."""
    std = [c for c in m.components if is_standard(c)]
    other = [c for c in m.components if not is_standard(c)]
    layers: list[list[tuple[Point, ...]]] = []
    sets = [frozenset(c) for c in std]
    if std and is_laminar(sets):
        lay = _laminar_layout(sets)
        layers.append([tuple(_standard_polygon(sorted(s), mm, cc)) for s, (mm, cc) in zip(sets, lay)])
    else:
        for s in sets:
            (mm, cc), = _laminar_layout([s])
            layers.append([tuple(_standard_polygon(sorted(s), mm, cc))])
    for c in other:
        poly = _REGISTRY.get(c)
        if poly is None:
            raise ValueError(f"no planar representative known for the curve {c}")
        layers.append([poly])
    return layers


_REALIZE_CACHE: dict[tuple[Multicurve, int], Diagram] = {}


def realize(m: Multicurve, cfg: DiskConfig | int) -> Diagram:
    """Planar diagram of a multicurve; crossing components are stacked in order.

    Diagrams are treated as immutable, so results are shared between callers.
    """
    b = cfg.b if isinstance(cfg, DiskConfig) else int(cfg)
    if m.max_index() > b:
        raise ValueError(f"multicurve {m} needs more than {b} punctures")
    hit = _REALIZE_CACHE.get((m, b))
    if hit is None:
        hit = _REALIZE_CACHE[(m, b)] = _realize(m, b)
    return hit


def _realize(m: Multicurve, b: int) -> Diagram:
    layers = realize_component_polygons(m)
    out: Diagram | None = None
    for layer in layers:
        d = Diagram(b, tuple(layer), {})
        d.validate()
        out = d if out is None else stack(out, d)
    return out if out is not None else Diagram(b, (), {})


def _perturbations(b: int, strands) -> Iterable[tuple[Fraction, Fraction]]:
    clear2 = clearance2(strands, b) if b else F(1)
    primes = [(3, 7), (5, 11), (13, 17), (19, 23), (29, 31), (37, 41), (43, 47), (53, 59)]
    scale = F(1, 16)
    while (2 * scale) ** 2 * 4 >= clear2:
        scale /= 2
    for k in range(40):
        p, q = primes[k % len(primes)]
        yield (scale * F(p, q * 2 ** (k // 2)), scale * F(q, p * 3 * 2 ** (k // 2)) * (1 if k % 2 else -1))


def translate(strands, v) -> tuple:
    return tuple(tuple((x + v[0], y + v[1]) for x, y in s) for s in strands)


def stack(top: Diagram, bottom: Diagram) -> Diagram:
    """``top`` drawn above ``bottom``; the bottom is nudged into general position."""
    if top.b != bottom.b:
        raise ValueError("stacking diagrams on different disks")
    b = top.b
    if not top.strands:
        return bottom
    if not bottom.strands:
        return top
    nt = len(top.strands)
    top_dirs = top.over_directions()
    last_exc: Exception | None = None
    for v in [(F(0), F(0))] + list(_perturbations(b, bottom.strands)):
        moved = translate(bottom.strands, v)
        bot_dirs = {(p[0] + v[0], p[1] + v[1]): d for p, d in bottom.over_directions().items()}
        strands = top.strands + moved

        def decide(pt, x, y, strands=strands, bot_dirs=bot_dirs):
            tx, ty = x[0] < nt, y[0] < nt
            if tx and not ty:
                return x
            if ty and not tx:
                return y
            dirs = top_dirs if tx else bot_dirs
            return _by_direction(strands, dirs)(pt, x, y)

        try:
            d = assemble(b, strands, decide)
            d.validate()
            return d
        except GeneralPositionFailure as exc:
            last_exc = exc
            continue
    raise GeneralPositionFailure(f"stack: perturbation schedule exhausted ({last_exc})")


def stack_many(diagrams: Sequence[Diagram]) -> Diagram:
    out = diagrams[0]
    for d in diagrams[1:]:
        out = stack(out, d)
    return out


# ---------------------------------------------------------------------------
# braid boxes: crossings drawn between horizontal slots


# Decoration conventions, pinned by the golden tests: a positive generator
# sends the strand rising from the lower slot over the other one; a positive
# curl has its horizontal first stretch under the vertical return.
RISING_OVER_POSITIVE = False
CURL_HORIZONTAL_OVER_POSITIVE = False


def braid_box(x0: Fraction, x1: Fraction, slots: Sequence[Fraction], word: Sequence[tuple[int, int]],
              curls: Sequence[tuple[int, int]] = ()):
    """Draw a braid word followed by framing curls between ``x0`` and ``x1``.

    ``word`` holds ``(k, sign)`` for the generator exchanging slots ``k-1`` and
    ``k`` (0-based).  ``curls`` holds ``(slot, sign)``.  Returns
    ``(paths, perm, over_dirs)``: ``paths[j]`` is the left-to-right polyline of
    the strand entering at slot ``j``, ``perm[j]`` its exit slot.
    """
    n = len(slots)
    cols = len(word) + len(curls)
    width = (x1 - x0) / max(cols, 1)
    pos = list(range(n))  # pos[j] = current slot of strand j
    paths = [[(x0, slots[j])] for j in range(n)]
    over_dirs: dict[Point, tuple[Fraction, Fraction]] = {}
    gap = min((slots[a + 1] - slots[a] for a in range(n - 1)), default=F(1))
    col = 0
    for k, sign in word:
        xa = x0 + col * width
        xb = xa + width
        lo_slot, hi_slot = k - 1, k
        js = [j for j in range(n) if pos[j] in (lo_slot, hi_slot)]
        jl = [j for j in js if pos[j] == lo_slot][0]
        jh = [j for j in js if pos[j] == hi_slot][0]
        paths[jl].append((xa, slots[lo_slot]))
        paths[jl].append((xb, slots[hi_slot]))
        paths[jh].append((xa, slots[hi_slot]))
        paths[jh].append((xb, slots[lo_slot]))
        mid = ((xa + xb) / 2, (slots[lo_slot] + slots[hi_slot]) / 2)
        rising = (width, slots[hi_slot] - slots[lo_slot])
        falling = (width, slots[lo_slot] - slots[hi_slot])
        rising_over = RISING_OVER_POSITIVE if sign > 0 else not RISING_OVER_POSITIVE
        over_dirs[mid] = rising if rising_over else falling
        pos[jl], pos[jh] = hi_slot, lo_slot
        col += 1
    for slot, sign in curls:
        xa = x0 + col * width
        u = width / 4
        v = gap / 4
        j = [j for j in range(n) if pos[j] == slot][0]
        s = slots[slot]
        paths[j].extend([
            (xa, s), (xa + 2 * u, s), (xa + 2 * u, s + v), (xa + u, s + v),
            (xa + u, s - v), (xa + 3 * u, s - v), (xa + 3 * u, s),
        ])
        horiz_over = CURL_HORIZONTAL_OVER_POSITIVE if sign > 0 else not CURL_HORIZONTAL_OVER_POSITIVE
        over_dirs[(xa + u, s)] = (F(1), F(0)) if horiz_over else (F(0), F(1))
        col += 1
    perm = pos[:]
    for j in range(n):
        paths[j].append((x1, slots[pos[j]]))
    return paths, perm, over_dirs


def braid_closure(n: int, word: Sequence[tuple[int, int]], curls: Sequence[tuple[int, int]] = (), b: int = 0) -> Diagram:
    """Plat-free closure of a braid drawn in the plane (above the punctures)."""
    slots = [F(10 + 2 * j) for j in range(n)]
    x0, x1 = F(0), F(2 * max(1, len(word) + len(curls)))
    paths, perm, over_dirs = braid_box(x0, x1, slots, word, curls)
    d = F(1, 2)
    top = slots[-1] + 1
    # strand entering at slot j leaves at perm[j]; close slot s back to slot s
    closure = {}
    for s in range(n):
        off = (n - s) * d
        closure[s] = [(x1 + off, slots[s]), (x1 + off, top + off), (x0 - off, top + off), (x0 - off, slots[s])]
    strands = []
    used = [False] * n
    for j0 in range(n):
        if used[j0]:
            continue
        pts: list[Point] = []
        j = j0
        while not used[j]:
            used[j] = True
            pts.extend(paths[j])
            pts.extend(closure[perm[j]])
            j = perm[j]
        strands.append(_dedupe(pts))
    # shift well away from any punctures
    if b:
        strands = [[(x + F(b + 2), y) for x, y in s] for s in strands]
        over_dirs = {(p[0] + F(b + 2), p[1]): v for p, v in over_dirs.items()}
    return assemble_by_direction(b, strands, over_dirs)


def clasp_diagram(n: int) -> Diagram:
    """The two-component link closing the 2-braid ``sigma_1^{2n}``."""
    return braid_closure(2, [(1, 1)] * (2 * n))


# ---------------------------------------------------------------------------
# local surgeries


def _splice(strands: list[list[Point]], s: int, k: int, a_pt: Point, path: Sequence[Point], b_pt: Point) -> None:
    """Replace the stretch of segment ``k`` of strand ``s`` between ``a_pt`` and ``b_pt``."""
    pts = strands[s]
    strands[s] = pts[: k + 1] + [a_pt] + list(path) + [b_pt] + pts[k + 1 :]


def _clip_x(a: Point, b: Point, x: Fraction) -> Point:
    t = (x - a[0]) / (b[0] - a[0])
    return (x, a[1] + t * (b[1] - a[1]))


def _ray_hits(d: Diagram) -> dict[int, list[tuple[Fraction, int, int]]]:
    """``(height, strand, seg)`` of every crossing with each upward ray."""
    out: dict[int, list] = {}
    for s, pts in enumerate(d.strands):
        m = len(pts)
        for k in range(m):
            a, bpt = pts[k], pts[(k + 1) % m]
            for t, letter in segment_ray_letters(a, bpt, d.b):
                out.setdefault(abs(letter), []).append((a[1] + t * (bpt[1] - a[1]), s, k))
    return out


def _ray_twist_plan(d: Diagram, i: int, sign: int, hits: list | None = None):
    """Edits ``(strand, seg, along, path)`` placing a framed full twist at the ray of ``i``."""
    if hits is None:
        hits = _ray_hits(d).get(i, [])
    hits = list(hits)
    if not hits:
        return [], {}
    hits.sort()
    ys = [h[0] for h in hits]
    n = len(hits)
    y_bot = ys[0] / 2
    y_top = ys[-1] + 1
    X = F(i)
    w = F(1, 8)
    for _ in range(60):
        if _box_ok(d, X, w, y_bot, y_top, hits):
            break
        w /= 2
    else:
        raise GeneralPositionFailure("no clean box around the puncture ray")
    xl, xr = X - w, X + w
    slots = [y_bot + (y_top - y_bot) * (j + 1) / (n + 1) for j in range(n)]
    word = [(k, sign) for _ in range(n) for k in range(1, n)]
    curls = [(j, sign) for j in range(n)]
    fan = w / 8
    # the braid sits left of the ray so no new vertex or crossing lands on it
    paths, perm, new_dirs = braid_box(xl + fan, X - fan, slots, word, curls)
    assert perm == list(range(n))
    edits = []
    for j, (y, s, k) in enumerate(hits):
        a, bpt = d.segment(s, k)
        pl, pr = _clip_x(a, bpt, xl), _clip_x(a, bpt, xr)
        path = [pl] + paths[j] + [pr]
        if a[0] > bpt[0]:
            path = path[::-1]
        along = abs(path[0][0] - a[0])
        edits.append((s, k, along, path))
    return edits, new_dirs


def _apply_edits(d: Diagram, edits, new_dirs) -> Diagram:
    strands = [list(p) for p in d.strands]
    # splice from the far end of each strand so earlier indices stay valid; on a
    # shared segment the stretch farther along is spliced first
    for s, k, _, path in sorted(edits, key=lambda e: (e[0], e[1], e[2]), reverse=True):
        _splice(strands, s, k, path[0], path[1:-1], path[-1])
    touched = {e[0] for e in edits}
    strands = [_dedupe(x) if s in touched else x for s, x in enumerate(strands)]
    dirs = d.over_directions()
    dirs.update(new_dirs)
    return assemble_by_direction(d.b, strands, dirs)


def insert_ray_twist(d: Diagram, i: int, sign: int = 1) -> Diagram:
    """Insert a framed full twist on the cable crossing the upward ray at ``i``.

    The cable receives the braid ``(s_1 ... s_{n-1})^n`` and each strand one
    framing curl, all of the given sign.  One strand gets a single curl; no
    strands leaves the diagram unchanged.
    """
    return insert_ray_twists(d, [i], sign)


def insert_ray_twists(d: Diagram, punctures: Iterable[int], sign: int = 1) -> Diagram:
    """Full twists at several rays at once; the boxes are disjoint, so one assembly suffices."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    edits = []
    dirs: dict = {}
    all_hits = _ray_hits(d)
    for i in punctures:
        e, nd = _ray_twist_plan(d, i, sign, all_hits.get(i, []))
        edits += e
        dirs.update(nd)
    if not edits:
        return d
    return _apply_edits(d, edits, dirs)


def _box_ok(d: Diagram, X, w, y_bot, y_top, hits) -> bool:
    hit_keys = {(s, k) for _, s, k in hits}
    xl, xr = X - w, X + w
    for s, pts in enumerate(d.strands):
        m = len(pts)
        for k in range(m):
            a, b = pts[k], pts[(k + 1) % m]
            if (s, k) in hit_keys:
                if not ((a[0] < xl and b[0] > xr) or (b[0] < xl and a[0] > xr)):
                    return False
                for x in (xl, xr):
                    y = _clip_x(a, b, x)[1]
                    if not (y_bot < y < y_top):
                        return False
            elif (min(a[0], b[0]) <= xr and max(a[0], b[0]) >= xl and min(a[1], b[1]) <= y_top
                  and max(a[1], b[1]) >= y_bot and _segment_meets_box(a, b, xl, xr, y_bot, y_top)):
                return False
    for pt in d.over:
        if xl <= pt[0] <= xr and y_bot <= pt[1] <= y_top:
            return False
    # cable strands keep their order across the box
    order_l = sorted(range(len(hits)), key=lambda j: _clip_x(*d.segment(hits[j][1], hits[j][2]), xl)[1])
    order_r = sorted(range(len(hits)), key=lambda j: _clip_x(*d.segment(hits[j][1], hits[j][2]), xr)[1])
    return order_l == order_r == list(range(len(hits)))


def _segment_meets_box(a: Point, b: Point, xl, xr, yb, yt) -> bool:
    # Liang-Barsky clipping with closed box
    t0, t1 = F(0), F(1)
    dx, dy = b[0] - a[0], b[1] - a[1]
    for p, q in ((-dx, a[0] - xl), (dx, xr - a[0]), (-dy, a[1] - yb), (dy, yt - a[1])):
        if p == 0:
            if q < 0:
                return False
        else:
            r = q / p
            if p < 0:
                if r > t1:
                    return False
                if r > t0:
                    t0 = r
            else:
                if r < t0:
                    return False
                if r < t1:
                    t1 = r
    return t0 <= t1


def add_kink(d: Diagram, s: int, k: int, sign: int = 1, where: Fraction = HALF, size: Fraction | None = None) -> Diagram:
    """Insert a Reidemeister-I curl of the given writhe sign into a segment."""
    pts = d.strands[s]
    a, b = pts[k], pts[(k + 1) % len(pts)]
    ux, uy = b[0] - a[0], b[1] - a[1]
    nx, ny = -uy, ux
    size = size if size is not None else F(1, 64)
    for _ in range(40):
        c = (a[0] + where * ux, a[1] + where * uy)

        def at(p, q):
            return (c[0] + p * size * ux + q * size * nx, c[1] + p * size * uy + q * size * ny)

        loop = [at(0, 0), at(2, 0), at(2, 1), at(1, 1), at(1, -1), at(3, -1), at(3, 0)]
        cross_pt = at(1, 0)
        horiz_dir = (ux, uy)
        vert_dir = (nx, ny)
        # writhe sign of the curl: compute with the horizontal stretch over
        v = _cross(*horiz_dir, *(-nx, -ny))
        horiz_over = (v > 0) == (sign > 0)
        strands = [list(p) for p in d.strands]
        strands[s] = list(pts[: k + 1]) + loop + list(pts[k + 1 :])
        dirs = d.over_directions()
        dirs[cross_pt] = horiz_dir if horiz_over else vert_dir
        try:
            out = assemble_by_direction(d.b, strands, dirs)
            out.validate()
            return out
        except GeneralPositionFailure:
            size /= 2
    raise GeneralPositionFailure("could not place a kink")


# ---------------------------------------------------------------------------
# Dehn twists


def _outward_normals(poly: Sequence[Point]) -> list[tuple[Fraction, Fraction]]:
    """Unit outward normals of the edges of a counterclockwise rectilinear polygon."""
    out = []
    n = len(poly)
    for k in range(n):
        a, b = poly[k], poly[(k + 1) % n]
        dx, dy = b[0] - a[0], b[1] - a[1]
        if dx != 0 and dy != 0:
            raise ValueError("collar construction needs a rectilinear curve")
        sx = (dx > 0) - (dx < 0)
        sy = (dy > 0) - (dy < 0)
        out.append((F(sy), F(-sx)))
    return out


def _offset(poly, normals, e) -> list[Point]:
    n = len(poly)
    out = []
    for k in range(n):
        n1, n2 = normals[k - 1], normals[k]
        out.append((poly[k][0] + e * (n1[0] + n2[0]), poly[k][1] + e * (n1[1] + n2[1])))
    return out


def _seg_seg_point(a, b, c, d):
    """Proper or touching intersection point of two segments, else None."""
    r = _direction(a, b)
    s = _direction(c, d)
    den = _cross(*r, *s)
    if den == 0:
        return None
    q = (c[0] - a[0], c[1] - a[1])
    t = _cross(*q, *s) / den
    u = _cross(*q, *r) / den
    if 0 <= t <= 1 and 0 <= u <= 1:
        return (a[0] + t * r[0], a[1] + t * r[1]), t, u
    return None


def _poly_hits(a, b, poly):
    out = []
    n = len(poly)
    for k in range(n):
        h = _seg_seg_point(a, b, poly[k], poly[(k + 1) % n])
        if h is not None:
            out.append((k, h))
    return out


def twist_curve_polygon(s: Iterable[int], b: int, d: Diagram | None = None) -> list[Point]:
    """A counterclockwise rectilinear representative of ``c_s`` in general position to ``d``."""
    mem = sorted(set(s))
    (mm, cc), = _laminar_layout([frozenset(mem)])
    base = _standard_polygon(mem, mm, cc)
    cand = [(F(0), F(0))] + list(_perturbations(b, [base]))
    for v in cand:
        poly = [(x + v[0], y + v[1]) for x, y in base]
        strands = ((tuple(poly),) + (d.strands if d else ()))
        try:
            find_intersections(strands, b)
            return poly
        except GeneralPositionFailure:
            continue
    raise GeneralPositionFailure("no transverse position for the twisting curve")


def dehn_surgery(d: Diagram, s: SubsetCurve | Iterable[int], sign: int = 1) -> Diagram:
    """Image of the diagram under the Dehn twist about ``c_s`` (``sign`` = power).

    Each arc crossing a thin collar of the curve is rerouted once around the
    collar; the twist is a homeomorphism, so no new crossings appear.
    """
    members = sorted(s.members if isinstance(s, SubsetCurve) else set(s))
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    gamma = twist_curve_polygon(members, d.b, d)
    d = _split_multiple_hits(d, gamma)
    normals = _outward_normals(gamma)
    e = F(1, 64)
    for _ in range(40):
        plan = _collar_plan(d, gamma, normals, e)
        if plan is not None:
            break
        e /= 2
    else:
        raise GeneralPositionFailure("no clean collar around the twisting curve")
    inner, outer, crossers = plan
    if not crossers:
        return d
    n = len(gamma)
    # stations: corners and crossing rungs, ordered counterclockwise
    stations = []
    for k in range(n):
        stations.append(((k, F(0)), inner[k], outer[k], None))
    for idx, c in enumerate(crossers):
        stations.append(((c["edge"], c["tau"]), c["inner_pt"], c["outer_pt"], idx))
    stations.sort(key=lambda st: st[0])
    S = len(stations)
    pos_of = {st[3]: p for p, st in enumerate(stations) if st[3] is not None}
    strands = [list(p) for p in d.strands]
    edits = []
    for idx, c in enumerate(crossers):
        p0 = pos_of[idx]
        path = []
        # positive twist: travelling outward, go clockwise (decreasing station order)
        step = -1 if sign > 0 else 1
        for mstep in range(S + 1):
            st = stations[(p0 + step * mstep) % S]
            lev = F(2 * mstep, S) - 1
            lam = (lev + 1) / 2
            ip, op = st[1], st[2]
            path.append((ip[0] + lam * (op[0] - ip[0]), ip[1] + lam * (op[1] - ip[1])))
        # path runs inner -> outer; orient along the strand
        if not c["outward"]:
            path = path[::-1]
        edits.append((c["strand"], c["seg"], path))
    per: dict[int, list] = {}
    for s_, k, path in edits:
        per.setdefault(s_, []).append((k, path))
    for s_, lst in per.items():
        for k, path in sorted(lst, key=lambda z: z[0], reverse=True):
            _splice(strands, s_, k, path[0], path[1:-1], path[-1])
    strands = [_dedupe(x) for x in strands]
    return assemble_by_direction(d.b, strands, d.over_directions())


def _split_multiple_hits(d: Diagram, gamma) -> Diagram:
    """Subdivide strand segments so that each one meets ``gamma`` at most once."""
    avoid = set(d.over)
    changed = False
    strands = []
    for pts in d.strands:
        out: list[Point] = []
        m = len(pts)
        for k in range(m):
            a, b = pts[k], pts[(k + 1) % m]
            out.append(a)
            ts = sorted({h[1][1] for h in _poly_hits(a, b, gamma)})
            for t0, t1 in zip(ts, ts[1:]):
                for frac in (HALF, F(1, 3), F(2, 3), F(2, 7), F(5, 7)):
                    t = t0 + frac * (t1 - t0)
                    q = (a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))
                    if q not in avoid and q[0].denominator != 1:
                        out.append(q)
                        changed = True
                        break
                else:
                    raise GeneralPositionFailure("cannot subdivide a strand between twist crossings")
        strands.append(out)
    if not changed:
        return d
    return assemble_by_direction(d.b, strands, d.over_directions())


def _collar_plan(d: Diagram, gamma, normals, e):
    inner = _offset(gamma, normals, -e)
    outer = _offset(gamma, normals, e)
    if not (polygon_is_simple(inner) and polygon_is_simple(outer)):
        return None

    def in_collar(p):
        return point_in_polygon(p, outer) and not point_in_polygon(p, inner)

    for i in range(1, d.b + 1):
        if in_collar((F(i), F(0))):
            return None
    for pts in d.strands:
        for p in pts:
            if in_collar(p) or _on_boundary(p, inner) or _on_boundary(p, outer):
                return None
    for pt in d.over:
        if in_collar(pt):
            return None
    crossers = []
    for s, pts in enumerate(d.strands):
        m = len(pts)
        for k in range(m):
            a, b = pts[k], pts[(k + 1) % m]
            h0 = _poly_hits(a, b, gamma)
            hi = _poly_hits(a, b, inner)
            ho = _poly_hits(a, b, outer)
            if not h0:
                if hi or ho:
                    return None
                continue
            if len(h0) != 1 or len(hi) != 1 or len(ho) != 1:
                return None
            (k0, (p0, t0, u0)), = h0
            (ki, (pi, ti, _)), = hi
            (ko, (po, to, _)), = ho
            if not (k0 == ki == ko) or u0 in (0, 1):
                return None
            crossers.append({
                "strand": s, "seg": k, "edge": k0, "tau": u0,
                "inner_pt": pi, "outer_pt": po, "outward": ti < to,
            })
    return inner, outer, crossers


def _on_boundary(p, poly) -> bool:
    n = len(poly)
    for k in range(n):
        a, b = poly[k], poly[(k + 1) % n]
        if orient(a, b, p) == 0 and min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]):
            return True
    return False
