"""Shared test utilities: small-graph enumeration up to isomorphism."""

from __future__ import annotations

import itertools

from branchdp.graphs import Graph, graph_from_edges

EdgeSet = frozenset[tuple[int, int]]


def canonical_form(n: int, edges) -> tuple:
    """Exact canonical form: lexicographically smallest edge tuple over all
    relabelings that respect degree classes (others cannot be smaller)."""
    if n <= 1:
        return ()
    deg = {v: 0 for v in range(1, n + 1)}
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    # vertices grouped by degree; only permutations mapping classes to
    # equal-degree positions can realize the canonical labeling
    by_deg: dict[int, list[int]] = {}
    for v in range(1, n + 1):
        by_deg.setdefault(deg[v], []).append(v)
    classes = [by_deg[d] for d in sorted(by_deg, reverse=True)]
    positions = []
    start = 1
    for cls in classes:
        positions.append(list(range(start, start + len(cls))))
        start += len(cls)

    best = None
    for parts in itertools.product(*[itertools.permutations(c) for c in classes]):
        p = {}
        for cls_perm, pos in zip(parts, positions):
            for v, q in zip(cls_perm, pos):
                p[v] = q
        cand = tuple(sorted(tuple(sorted((p[u], p[v]))) for u, v in edges))
        if best is None or cand < best:
            best = cand
    return best


def all_graphs_up_to_iso(n: int) -> list[EdgeSet]:
    """Every graph on exactly n labeled-canonical vertices, one per iso
    class, grown by vertex augmentation."""
    if n == 0:
        return [frozenset()]
    if n == 1:
        return [frozenset()]
    out: dict[tuple, EdgeSet] = {}
    for smaller in all_graphs_up_to_iso(n - 1):
        for nbhd_bits in range(1 << (n - 1)):
            edges = set(smaller)
            for i in range(n - 1):
                if nbhd_bits >> i & 1:
                    edges.add((i + 1, n))
            key = canonical_form(n, edges)
            if key not in out:
                out[key] = frozenset(edges)
    return list(out.values())


def connected_graphs_up_to_iso(n_max: int) -> list[Graph]:
    graphs = []
    for n in range(1, n_max + 1):
        for edges in all_graphs_up_to_iso(n):
            g = graph_from_edges(n, sorted(edges))
            if g.is_connected():
                graphs.append(g)
    return graphs
