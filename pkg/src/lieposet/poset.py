"""Finite posets on {1..n}, their statistics and constructions.

Every :class:`Poset` is naturally labeled: ``i < j`` in the order implies
``i < j`` as integers.  All user-facing functions take and return 1-based
labels; the strict order is stored as a dense boolean table indexed from 0.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from math import ceil
from typing import TYPE_CHECKING, Iterable, Mapping, Sequence

if TYPE_CHECKING:
    from .signed import SignedPoset

Table = tuple[tuple[bool, ...], ...]


class PosetError(ValueError):
    """Invalid poset input or construction."""


class CycleError(PosetError):
    def __init__(self, cycle: list[int]):
        self.cycle = cycle
        super().__init__(f"relation contains a cycle: {' < '.join(map(str, cycle + cycle[:1]))}")


def _close(n: int, pairs: Iterable[tuple[int, int]]) -> list[list[bool]]:
    """Transitive closure of 0-based pairs; raises CycleError on cycles."""
    succ: list[list[int]] = [[] for _ in range(n)]
    rel = [[False] * n for _ in range(n)]
    for a, b in pairs:
        if a == b:
            raise CycleError([a + 1])
        if not rel[a][b]:
            rel[a][b] = True
            succ[a].append(b)
    _check_acyclic(n, succ)
    for k in range(n):
        rk = rel[k]
        for i in range(n):
            if rel[i][k]:
                ri = rel[i]
                for j in range(n):
                    if rk[j]:
                        ri[j] = True
    return rel


def _check_acyclic(n: int, succ: list[list[int]]) -> None:
    color = [0] * n
    stack_path: list[int] = []

    def visit(v: int) -> None:
        color[v] = 1
        stack_path.append(v)
        for w in succ[v]:
            if color[w] == 1:
                start = stack_path.index(w)
                raise CycleError([x + 1 for x in stack_path[start:]])
            if color[w] == 0:
                visit(w)
        stack_path.pop()
        color[v] = 2

    for v in range(n):
        if color[v] == 0:
            visit(v)


def _stable_topological_order(rel: Sequence[Sequence[bool]]) -> list[int]:
    """Kahn's algorithm, always taking the smallest available index."""
    n = len(rel)
    indeg = [sum(1 for i in range(n) if rel[i][j]) for j in range(n)]
    order = []
    done = [False] * n
    while len(order) < n:
        v = next(j for j in range(n) if not done[j] and indeg[j] == 0)
        done[v] = True
        order.append(v)
        for j in range(n):
            if rel[v][j]:
                indeg[j] -= 1
    return order


def _natural(rel: Sequence[Sequence[bool]]) -> tuple["Poset", dict[int, int]]:
    """Relabel a closed acyclic relation naturally; return poset and old->new labels."""
    order = _stable_topological_order(rel)
    pos = {old: new for new, old in enumerate(order)}
    n = len(rel)
    table = tuple(tuple(bool(rel[order[i]][order[j]]) for j in range(n)) for i in range(n))
    return Poset(n, table), {old + 1: new + 1 for old, new in pos.items()}


@dataclass(frozen=True)
class Poset:
    """A naturally labeled finite poset.

    ``less[i][j]`` is true when element ``i+1`` is strictly below ``j+1``.
    Two posets are equal exactly when their tables agree label by label.
    """

    n: int
    less: Table = field(repr=False)

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 1:
            raise PosetError("ground set size must be a positive integer")
        if len(self.less) != self.n or any(len(r) != self.n for r in self.less):
            raise PosetError("relation table has the wrong shape")
        for i in range(self.n):
            for j in range(self.n):
                if self.less[i][j]:
                    if j <= i:
                        raise PosetError(f"not naturally labeled: {i + 1} < {j + 1}")
                    for k in range(self.n):
                        if self.less[j][k] and not self.less[i][k]:
                            raise PosetError("relation is not transitive")

    # construction -------------------------------------------------------

    @classmethod
    def from_relations(cls, n: int, pairs: Iterable[tuple[int, int]]) -> "Poset":
        """Build from any generating set of relations ``(i, j)`` meaning i < j."""
        return cls.from_relations_with_map(n, pairs)[0]

    @classmethod
    def from_relations_with_map(cls, n: int, pairs: Iterable[tuple[int, int]]) -> tuple["Poset", dict[int, int]]:
        if not isinstance(n, int) or n < 1:
            raise PosetError("ground set size must be a positive integer")
        zero = []
        for a, b in pairs:
            if not (1 <= a <= n and 1 <= b <= n):
                raise PosetError(f"relation ({a}, {b}) is outside 1..{n}")
            zero.append((a - 1, b - 1))
        return _natural(_close(n, zero))

    @cached_property
    def _up(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(j + 1 for j in range(self.n) if self.less[i][j]) for i in range(self.n))

    @cached_property
    def _down(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(i + 1 for i in range(self.n) if self.less[i][j]) for j in range(self.n))

    # queries -------------------------------------------------------------

    @property
    def elements(self) -> range:
        return range(1, self.n + 1)

    def lt(self, i: int, j: int) -> bool:
        return self.less[i - 1][j - 1]

    def le(self, i: int, j: int) -> bool:
        return i == j or self.less[i - 1][j - 1]

    def comparable(self, i: int, j: int) -> bool:
        return self.le(i, j) or self.le(j, i)

    def up(self, i: int) -> frozenset[int]:
        """Elements strictly above ``i``."""
        return self._up[i - 1]

    def down(self, i: int) -> frozenset[int]:
        """Elements strictly below ``i``."""
        return self._down[i - 1]

    @cached_property
    def relations(self) -> tuple[tuple[int, int], ...]:
        return tuple((i, j) for i in self.elements for j in sorted(self.up(i)))

    @cached_property
    def covers(self) -> tuple[tuple[int, int], ...]:
        out = []
        for i, j in self.relations:
            if not any(self.lt(k, j) for k in self.up(i)):
                out.append((i, j))
        return tuple(out)

    @cached_property
    def minimal(self) -> tuple[int, ...]:
        return tuple(i for i in self.elements if not self.down(i))

    @cached_property
    def maximal(self) -> tuple[int, ...]:
        return tuple(i for i in self.elements if not self.up(i))

    @cached_property
    def extremal(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.minimal) | set(self.maximal)))

    @cached_property
    def depth(self) -> tuple[int, ...]:
        """Length of the longest chain ending at each element (index = label - 1)."""
        d = [0] * self.n
        for j in range(self.n):
            d[j] = max((d[i - 1] + 1 for i in self.down(j + 1)), default=0)
        return tuple(d)

    @cached_property
    def co_depth(self) -> tuple[int, ...]:
        d = [0] * self.n
        for i in reversed(range(self.n)):
            d[i] = max((d[j - 1] + 1 for j in self.up(i + 1)), default=0)
        return tuple(d)

    @cached_property
    def height(self) -> int:
        return max(self.depth)

    @cached_property
    def components(self) -> tuple[tuple[int, ...], ...]:
        """Connected components of the comparability graph, sorted."""
        seen: set[int] = set()
        comps = []
        for s in self.elements:
            if s in seen:
                continue
            comp = {s}
            queue = deque([s])
            while queue:
                v = queue.popleft()
                for w in self.up(v) | self.down(v):
                    if w not in comp:
                        comp.add(w)
                        queue.append(w)
            seen |= comp
            comps.append(tuple(sorted(comp)))
        return tuple(comps)

    @property
    def is_connected(self) -> bool:
        return len(self.components) == 1

    @cached_property
    def is_pure(self) -> bool:
        if any(self.depth[j - 1] != self.depth[i - 1] + 1 for i, j in self.covers):
            return False
        return all(self.depth[m - 1] == self.height for m in self.maximal)

    @property
    def ranks(self) -> dict[int, int] | None:
        """Rank of every element when the poset is pure, else ``None``."""
        if not self.is_pure:
            return None
        return {i: self.depth[i - 1] for i in self.elements}

    def key(self) -> tuple[int, tuple[tuple[int, int], ...]]:
        return (self.n, self.covers)

    # serialization -----------------------------------------------------------

    def to_json(self) -> dict:
        return {"n": self.n, "covers": [list(c) for c in self.covers]}

    @classmethod
    def from_json(cls, data: Mapping) -> "Poset":
        try:
            n = data["n"]
            covers = [tuple(c) for c in data["covers"]]
        except (KeyError, TypeError) as exc:
            raise PosetError(f"malformed poset JSON: {exc}") from exc
        if any(len(c) != 2 for c in covers):
            raise PosetError("each cover must be a pair")
        return cls.from_relations(n, covers)

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    def __str__(self) -> str:
        return f"Poset(n={self.n}, covers={list(self.covers)})"


def from_cover_relations(n: int, covers: Iterable[tuple[int, int]]) -> Poset:
    """Build the poset generated by ``covers``, relabeled naturally."""
    return Poset.from_relations(n, covers)


def antichain(n: int) -> Poset:
    return Poset.from_relations(n, [])


def chain(n: int) -> Poset:
    return Poset.from_relations(n, [(i, i + 1) for i in range(1, n)])


def complete_poset(ranks: Sequence[int]) -> Poset:
    """``P(r_0, ..., r_t)``: ranks of the given sizes, each element below every
    element of every higher rank."""
    if not ranks or any(not isinstance(r, int) or r < 1 for r in ranks):
        raise PosetError("rank sizes must be positive integers")
    levels = []
    start = 1
    for r in ranks:
        levels.append(range(start, start + r))
        start += r
    pairs = [(a, b) for lo, hi in zip(levels, levels[1:]) for a in lo for b in hi]
    return Poset.from_relations(sum(ranks), pairs)


# statistics -----------------------------------------------------------------


@dataclass(frozen=True)
class PosetStatistics:
    n: int
    rel: int
    covers: int
    height: int
    components: int
    is_pure: bool
    minimal: tuple[int, ...]
    maximal: tuple[int, ...]
    extremal: tuple[int, ...]
    rel_extremal: int
    up: dict[int, int]
    down: dict[int, int]
    ud: dict[int, int]
    ranks: dict[int, int] | None


def ud_value(up: int, down: int) -> int:
    return abs(up - down) if up != down else 2


def statistics(p: Poset) -> PosetStatistics:
    """Counts used by the index formulas.

    ``up[j]`` and ``down[j]`` count the elements strictly above and below ``j``;
    ``rel_extremal`` counts relations between two extremal elements.
    """
    ext = set(p.extremal)
    up = {j: len(p.up(j)) for j in p.elements}
    down = {j: len(p.down(j)) for j in p.elements}
    return PosetStatistics(
        n=p.n,
        rel=len(p.relations),
        covers=len(p.covers),
        height=p.height,
        components=len(p.components),
        is_pure=p.is_pure,
        minimal=p.minimal,
        maximal=p.maximal,
        extremal=p.extremal,
        rel_extremal=sum(1 for i, j in p.relations if i in ext and j in ext),
        up=up,
        down=down,
        ud={j: ud_value(up[j], down[j]) for j in p.elements},
        ranks=p.ranks,
    )


# constructions ----------------------------------------------------------------


def dual(p: Poset) -> Poset:
    return Poset.from_relations(p.n, [(j, i) for i, j in p.relations])


def induced(p: Poset, subset: Iterable[int]) -> Poset:
    """Induced subposet; the k-th smallest label of ``subset`` becomes ``k``."""
    s = sorted(set(subset))
    if not s:
        raise PosetError("induced subposet of the empty set")
    if any(x not in p.elements for x in s):
        raise PosetError("subset is not contained in the ground set")
    pos = {x: k + 1 for k, x in enumerate(s)}
    return Poset.from_relations(len(s), [(pos[i], pos[j]) for i, j in p.relations if i in pos and j in pos])


def cone(p: Poset, i: int) -> Poset:
    """Subposet of everything comparable to the non-extremal element ``i``."""
    if i in p.extremal:
        raise PosetError(f"element {i} is extremal")
    return induced(p, p.down(i) | p.up(i) | {i})


def disjoint_union(*posets: Poset) -> Poset:
    pairs = []
    offset = 0
    for q in posets:
        pairs += [(a + offset, b + offset) for a, b in q.relations]
        offset += q.n
    return Poset.from_relations(offset, pairs)


def glue_with_maps(
    p: Poset,
    q: Poset,
    pairs: Iterable[tuple[int, int]],
    allow_mixed: bool = False,
) -> tuple[Poset, dict[int, int], dict[int, int]]:
    """Identify ``(p_k, q_k)`` pairs of extremal elements.

    Returns the glued poset and label maps from ``p`` and from ``q``.  Each
    pair must be two minimal or two maximal elements unless ``allow_mixed``.
    """
    pairs = list(pairs)
    ps = [a for a, _ in pairs]
    qs = [b for _, b in pairs]
    if len(set(ps)) != len(ps) or len(set(qs)) != len(qs):
        raise PosetError("each element may be identified at most once")
    for a, b in pairs:
        if a not in p.elements or b not in q.elements:
            raise PosetError(f"pair ({a}, {b}) refers to a missing element")
        if a not in p.extremal or b not in q.extremal:
            raise PosetError(f"pair ({a}, {b}) identifies a non-extremal element")
        same = (a in p.minimal and b in q.minimal) or (a in p.maximal and b in q.maximal)
        if not same and not allow_mixed:
            raise PosetError(f"pair ({a}, {b}) mixes a minimal and a maximal element")
    ident = {b: a for a, b in pairs}
    qmap: dict[int, int] = {}
    nxt = p.n
    for b in q.elements:
        if b in ident:
            qmap[b] = ident[b]
        else:
            nxt += 1
            qmap[b] = nxt
    rel = list(p.relations) + [(qmap[a], qmap[b]) for a, b in q.relations]
    total = nxt
    closed = _close(total, [(a - 1, b - 1) for a, b in rel])
    glued, relabel = _natural(closed)
    pmap = {a: relabel[a] for a in p.elements}
    qmap = {b: relabel[v] for b, v in qmap.items()}
    return glued, pmap, qmap


def glue(p: Poset, q: Poset, pairs: Iterable[tuple[int, int]], allow_mixed: bool = False) -> Poset:
    return glue_with_maps(p, q, pairs, allow_mixed)[0]


# fixtures ------------------------------------------------------------------------


def sg(n: int) -> Poset:
    """Chain 1 < ... < n with an extra element n+1 covering ceil(n/2)."""
    if n < 2:
        raise PosetError("SG(n) needs n >= 2")
    covers = [(i, i + 1) for i in range(1, n)] + [(ceil(n / 2), n + 1)]
    return Poset.from_relations(n + 1, covers)


def tree_q() -> Poset:
    return Poset.from_relations(6, [(1, 2), (2, 3), (2, 4), (3, 5), (4, 6)])


def fixtures() -> dict[str, "Poset | SignedPoset"]:
    """Named small posets used throughout the tests and demos."""
    from .signed import hexagon_bcd

    out: dict[str, Poset] = {f"SG({n})": sg(n) for n in range(2, 7)}
    out["P(1,2,2)"] = complete_poset([1, 2, 2])
    out["P(1,2,2,2)"] = complete_poset([1, 2, 2, 2])
    out["P(2,2,1)"] = complete_poset([2, 2, 1])
    out["P(2,2,2,1)"] = complete_poset([2, 2, 2, 1])
    out["Q"] = tree_q()
    out["Q*"] = dual(tree_q())
    out["hexagon_BCD"] = hexagon_bcd()
    return out
