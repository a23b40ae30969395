"""Canonical labelings of posets by colour refinement and backtracking."""

from __future__ import annotations

from .poset import Poset

Key = tuple[int, tuple[tuple[int, int], ...]]


def _renumber(sigs: list) -> list[int]:
    order = {s: k for k, s in enumerate(sorted(set(sigs)))}
    return [order[s] for s in sigs]


def _refine(colors: list[int], ups: list[list[int]], downs: list[list[int]]) -> list[int]:
    while True:
        sigs = [
            (colors[x], tuple(sorted(colors[y] for y in ups[x])), tuple(sorted(colors[y] for y in downs[x])))
            for x in range(len(colors))
        ]
        new = _renumber(sigs)
        if max(new, default=-1) == max(colors, default=-1):
            return new
        colors = new


def canonical_labeling(p: Poset) -> list[int]:
    """Order of the original (0-based) elements in the canonical labeling.

    The initial colouring starts with chain depth, so every labeling explored
    is a linear extension and the result is again naturally labeled.
    """
    n = p.n
    ups = [[j - 1 for j in p.up(i + 1)] for i in range(n)]
    downs = [[j - 1 for j in p.down(i + 1)] for i in range(n)]
    start = _renumber([(p.depth[x], p.co_depth[x], len(ups[x]), len(downs[x])) for x in range(n)])
    best: tuple | None = None
    best_order: list[int] = []

    def leaf_key(colors: list[int]) -> tuple:
        order = sorted(range(n), key=lambda x: colors[x])
        pos = {x: k for k, x in enumerate(order)}
        return tuple(sorted((pos[a], pos[b]) for a in range(n) for b in ups[a])), order

    def search(colors: list[int]) -> None:
        nonlocal best, best_order
        colors = _refine(colors, ups, downs)
        sizes: dict[int, list[int]] = {}
        for x, c in enumerate(colors):
            sizes.setdefault(c, []).append(x)
        target = next((c for c in sorted(sizes) if len(sizes[c]) > 1), None)
        if target is None:
            key, order = leaf_key(colors)
            if best is None or key < best:
                best, best_order = key, order
            return
        cell = sizes[target]
        # elements with identical strict up- and down-sets are interchangeable
        twins = all(set(ups[x]) == set(ups[cell[0]]) and set(downs[x]) == set(downs[cell[0]]) for x in cell)
        for v in cell[:1] if twins else cell:
            search(_renumber([(c, 0 if x == v else 1) for x, c in enumerate(colors)]))

    search(start)
    return best_order


def canonical_form(p: Poset) -> Poset:
    order = canonical_labeling(p)
    pos = {x + 1: k + 1 for k, x in enumerate(order)}
    return Poset.from_relations(p.n, [(pos[a], pos[b]) for a, b in p.relations])


def canonical_key(p: Poset) -> Key:
    return canonical_form(p).key()


def is_isomorphic(p: Poset, q: Poset) -> bool:
    return p.n == q.n and len(p.relations) == len(q.relations) and canonical_key(p) == canonical_key(q)
