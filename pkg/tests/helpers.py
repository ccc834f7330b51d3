"""Diagram builders shared by the tests."""

from __future__ import annotations

from fractions import Fraction as F
from itertools import combinations, combinations_with_replacement

from skeinquot.geom import Diagram, Multicurve, assemble_by_direction, braid_box, is_laminar


def punctured_closure(n: int, word, b: int, curls=()) -> Diagram:
    """Closure of an ``n``-braid drawn above the punctures whose return arcs pass below them.

    Every strand of the closure therefore winds around all ``b`` punctures.
    """
    slots = [F(2 + j) for j in range(n)]
    cols = max(1, len(word) + len(curls))
    x0 = F(1, 3)
    x1 = x0 + F(2 * cols) + b
    paths, perm, over_dirs = braid_box(x0, x1, slots, word, curls)
    d = F(1, 5)
    closure = {}
    for s in range(n):
        off = (s + 1) * d
        closure[s] = [(x1 + off, slots[s]), (x1 + off, -1 - off), (x0 - off, -1 - off), (x0 - off, slots[s])]
    strands = []
    used = [False] * n
    for j0 in range(n):
        if used[j0]:
            continue
        pts = []
        j = j0
        while not used[j]:
            used[j] = True
            pts.extend(paths[j])
            pts.extend(closure[perm[j]])
            j = perm[j]
        out = []
        for p in pts:
            if not out or out[-1] != p:
                out.append(p)
        if out[0] == out[-1]:
            out.pop()
        strands.append(out)
    return assemble_by_direction(b, strands, over_dirs)


def laminar_multicurves(b: int, k: int) -> list[Multicurve]:
    """All multicurves of ``k`` subset curves (repeats allowed) on ``b`` punctures."""
    subs = [frozenset(s) for r in range(1, b + 1) for s in combinations(range(1, b + 1), r)]
    out = set()
    for combo in combinations_with_replacement(subs, k):
        if is_laminar(list(set(combo))):
            out.add(Multicurve.of([tuple(sorted(s)) for s in combo]))
    return sorted(out)
