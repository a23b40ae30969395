"""Maximum matchings of small undirected graphs (thin wrapper over networkx)."""

from __future__ import annotations

from typing import Sequence

import networkx as nx


def maximum_matching(adj: Sequence[set[int] | frozenset[int]]) -> set[tuple[int, int]]:
    """Edges ``(u, v)`` with ``u < v`` of a maximum cardinality matching."""
    g = nx.Graph()
    g.add_nodes_from(range(len(adj)))
    g.add_edges_from((v, u) for v in range(len(adj)) for u in adj[v] if u != v)
    return {(min(e), max(e)) for e in nx.max_weight_matching(g, maxcardinality=True)}


def matching_number(adj: Sequence[set[int] | frozenset[int]]) -> int:
    return len(maximum_matching(adj))
