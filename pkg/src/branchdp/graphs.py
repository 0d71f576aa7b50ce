"""Core graph types: simple undirected graphs with dense 1-based vertex ids,
optional vertex colors, and terminal-pair request lists."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Mapping

Edge = tuple[int, int]


def norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 1..n. Loops and multi-edges rejected."""

    n: int
    edges: frozenset[Edge]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (u < v):
                raise ValueError(f"edge ({u},{v}) not normalized")
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise ValueError(f"edge ({u},{v}) out of range 1..{self.n}")

    @property
    def m(self) -> int:
        return len(self.edges)

    def vertices(self) -> range:
        return range(1, self.n + 1)

    def adjacency(self) -> dict[int, set[int]]:
        adj: dict[int, set[int]] = {v: set() for v in self.vertices()}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def max_degree(self) -> int:
        if self.n == 0:
            return 0
        adj = self.adjacency()
        return max(len(a) for a in adj.values())

    def has_edge(self, u: int, v: int) -> bool:
        return norm_edge(u, v) in self.edges

    def connected_components(self) -> list[set[int]]:
        adj = self.adjacency()
        seen: set[int] = set()
        comps = []
        for s in self.vertices():
            if s in seen:
                continue
            comp = {s}
            stack = [s]
            seen.add(s)
            while stack:
                x = stack.pop()
                for y in adj[x]:
                    if y not in seen:
                        seen.add(y)
                        comp.add(y)
                        stack.append(y)
            comps.append(comp)
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.connected_components()) == 1


def graph_from_edges(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Normalize and deduplicate-check an edge list. Duplicates are an error."""
    out: set[Edge] = set()
    for u, v in edges:
        e = norm_edge(u, v)
        if e in out:
            raise ValueError(f"duplicate edge ({u},{v})")
        out.add(e)
    return Graph(n=n, edges=frozenset(out))


@dataclass(frozen=True)
class ColoredGraph:
    """A graph plus a total color map; color 0 is the wildcard."""

    graph: Graph
    colors: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        full = {v: 0 for v in self.graph.vertices()}
        for v, c in self.colors.items():
            if not (1 <= v <= self.graph.n):
                raise ValueError(f"color for unknown vertex {v}")
            if c < 0:
                raise ValueError(f"negative color {c} at vertex {v}")
            full[v] = c
        object.__setattr__(self, "colors", full)

    def color(self, v: int) -> int:
        return self.colors[v]

    def max_color(self) -> int:
        return max(self.colors.values(), default=0)


def colors_compatible(c1: int, c2: int) -> bool:
    """Wildcard-0 compatibility: equal, or at least one of them is 0."""
    return c1 == 0 or c2 == 0 or c1 == c2


def all_zero(g: Graph) -> ColoredGraph:
    return ColoredGraph(graph=g, colors={})


@dataclass(frozen=True)
class RequestSet:
    """Ordered terminal pairs {s_i, t_i}; paths are indexed by position."""

    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        for s, t in self.pairs:
            if s == t:
                raise ValueError(f"request with equal endpoints {s}")

    def validate_against(self, g: Graph) -> None:
        for s, t in self.pairs:
            for x in (s, t):
                if not (1 <= x <= g.n):
                    raise ValueError(f"request endpoint {x} outside 1..{g.n}")

    def __len__(self) -> int:
        return len(self.pairs)

    def terminals(self) -> set[int]:
        return {x for p in self.pairs for x in p}


def grid(m: int, k: int) -> Graph:
    """The m*k grid: vertex a_{i,j} is (i-1)*k + j, rows i in [m], columns j in [k]."""
    if m < 1 or k < 1:
        raise ValueError("grid dimensions must be >= 1")

    def vid(i: int, j: int) -> int:
        return (i - 1) * k + j

    edges = []
    for i in range(1, m + 1):
        for j in range(1, k + 1):
            if i < m:
                edges.append((vid(i, j), vid(i + 1, j)))
            if j < k:
                edges.append((vid(i, j), vid(i, j + 1)))
    return graph_from_edges(m * k, edges)


def grid_coordinates(m: int, k: int) -> dict[int, tuple[int, int]]:
    return {(i - 1) * k + j: (j, -i) for i in range(1, m + 1) for j in range(1, k + 1)}


def random_planar_graph(n: int, rng: random.Random) -> tuple[Graph, "object"]:
    """A random connected plane graph on <= n vertices with its rotation system.

    Mixes two families: induced grid subgraphs and polygons with non-crossing
    chords. Both come with coordinates, so the embedding is the angular one.
    """
    from .embeddings import rotation_from_coordinates

    if n < 1:
        raise ValueError("need n >= 1")
    if n >= 3 and rng.random() < 0.5:
        # polygon with random non-crossing chords
        edges = [(i, i + 1) for i in range(1, n)] + [(1, n)]
        chords: list[tuple[int, int]] = []
        attempts = rng.randrange(0, n)
        for _ in range(attempts):
            a = rng.randrange(1, n + 1)
            b = rng.randrange(1, n + 1)
            a, b = min(a, b), max(a, b)
            if b - a <= 1 or (a == 1 and b == n):
                continue
            ok = True
            for c, d in chords:
                if (c, d) == (a, b):
                    ok = False
                    break
                # proper crossing of chords (a,b),(c,d) on the cycle
                if (a < c < b < d and not (c == a or c == b)) or (c < a < d < b):
                    ok = False
                    break
            if ok:
                chords.append((a, b))
        g = graph_from_edges(n, edges + chords)
        import math
        from fractions import Fraction

        coords = {}
        for v in range(1, n + 1):
            ang = 2 * math.pi * (v - 1) / n
            coords[v] = (Fraction(round(math.cos(ang) * 10**6), 10**6),
                         Fraction(round(math.sin(ang) * 10**6), 10**6))
        return g, rotation_from_coordinates(g, coords)

    # connected induced subgraph of a grid, grown at random
    rows = rng.randrange(2, 5)
    cols = rng.randrange(2, 5)
    full = grid(rows, cols)
    coords_full = grid_coordinates(rows, cols)
    adj = full.adjacency()
    start = rng.randrange(1, rows * cols + 1)
    chosen = {start}
    frontier = set(adj[start])
    while len(chosen) < min(n, rows * cols) and frontier:
        v = rng.choice(sorted(frontier))
        chosen.add(v)
        frontier |= adj[v]
        frontier -= chosen
    remap = {v: i + 1 for i, v in enumerate(sorted(chosen))}
    edges = [(remap[u], remap[v]) for u, v in full.edges if u in chosen and v in chosen]
    g = graph_from_edges(len(chosen), edges)
    from fractions import Fraction

    coords = {remap[v]: (Fraction(coords_full[v][0]), Fraction(coords_full[v][1]))
              for v in chosen}
    return g, rotation_from_coordinates(g, coords)
