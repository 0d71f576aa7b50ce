"""Line-based file formats.

Graph file:      `p graph <n> <m>` header, `e u v` edges, `c v color` colors,
                 `r s t` requests, `#` comments, `rot v n1 n2 ...` rotations.
Branch dec.:     `p branchdec <nodes> <tree-edges>`, `t a b`, `l leaf u v`.
Tree dec.:       `p treedec <nodes> <tree-edges>`, `b node v1 v2 ...`, `t a b`.
Hitting set:     `p hs <k> <m>`, per-set `s r1 c1 r2 c2 ...`.
Witnesses/results travel as JSON.
"""

from __future__ import annotations

from .decomp import BranchDecomposition, TreeDecomposition
from .embeddings import RotationSystem
from .graphs import ColoredGraph, Graph, RequestSet, graph_from_edges
from .oracle import HittingSetInstance


class ParseError(ValueError):
    pass


def _tokens(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, line.split()


def parse_instance(text: str) -> tuple[ColoredGraph, RequestSet, RotationSystem | None]:
    """Parse a graph file; returns colored graph, requests, optional embedding."""
    n = None
    m_declared = None
    edges: list[tuple[int, int]] = []
    colors: dict[int, int] = {}
    requests: list[tuple[int, int]] = []
    rotations: dict[int, tuple[int, ...]] = {}
    for lineno, tok in _tokens(text):
        kind = tok[0]
        try:
            if kind == "p":
                if tok[1] != "graph" or len(tok) != 4:
                    raise ParseError(f"line {lineno}: expected 'p graph <n> <m>'")
                if n is not None:
                    raise ParseError(f"line {lineno}: duplicate header")
                n, m_declared = int(tok[2]), int(tok[3])
            elif kind == "e":
                u, v = int(tok[1]), int(tok[2])
                edges.append((u, v))
            elif kind == "c":
                v, c = int(tok[1]), int(tok[2])
                colors[v] = c
            elif kind == "r":
                s, t = int(tok[1]), int(tok[2])
                requests.append((s, t))
            elif kind == "rot":
                v = int(tok[1])
                rotations[v] = tuple(int(x) for x in tok[2:])
            else:
                raise ParseError(f"line {lineno}: unknown record '{kind}'")
        except (IndexError, ValueError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"line {lineno}: malformed record") from exc
    if n is None:
        raise ParseError("missing 'p graph' header")
    try:
        g = graph_from_edges(n, edges)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    if m_declared is not None and m_declared != g.m:
        raise ParseError(f"header declares {m_declared} edges, found {g.m}")
    try:
        cg = ColoredGraph(graph=g, colors=colors)
        req = RequestSet(pairs=tuple(requests))
        req.validate_against(g)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    rs = None
    if rotations:
        rs = RotationSystem(rotations=rotations)
        try:
            rs.validate_against(g)
        except ValueError as exc:
            raise ParseError(str(exc)) from exc
    return cg, req, rs


def serialize_instance(cg: ColoredGraph, req: RequestSet | None = None,
                       rs: RotationSystem | None = None) -> str:
    g = cg.graph
    lines = [f"p graph {g.n} {g.m}"]
    for u, v in sorted(g.edges):
        lines.append(f"e {u} {v}")
    for v in g.vertices():
        if cg.color(v) != 0:
            lines.append(f"c {v} {cg.color(v)}")
    if req is not None:
        for s, t in req.pairs:
            lines.append(f"r {s} {t}")
    if rs is not None:
        for v in g.vertices():
            rot = rs.rotations.get(v, ())
            if rot:
                lines.append("rot " + " ".join(str(x) for x in (v,) + tuple(rot)))
    return "\n".join(lines) + "\n"


def parse_branch_decomposition(text: str) -> BranchDecomposition:
    nodes: set[int] = set()
    tree_edges: list[tuple[int, int]] = []
    leaf_map: dict[int, tuple[int, int]] = {}
    header = False
    for lineno, tok in _tokens(text):
        try:
            if tok[0] == "p":
                if tok[1] != "branchdec":
                    raise ParseError(f"line {lineno}: expected 'p branchdec'")
                header = True
            elif tok[0] == "t":
                a, b = int(tok[1]), int(tok[2])
                tree_edges.append((a, b))
                nodes.update((a, b))
            elif tok[0] == "l":
                leaf, u, v = int(tok[1]), int(tok[2]), int(tok[3])
                if leaf in leaf_map:
                    raise ParseError(f"line {lineno}: duplicate leaf {leaf}")
                leaf_map[leaf] = (min(u, v), max(u, v))
                nodes.add(leaf)
            else:
                raise ParseError(f"line {lineno}: unknown record '{tok[0]}'")
        except (IndexError, ValueError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"line {lineno}: malformed record") from exc
    if not header:
        raise ParseError("missing 'p branchdec' header")
    return BranchDecomposition(nodes=frozenset(nodes),
                               tree_edges=frozenset(tuple(sorted(e)) for e in tree_edges),
                               leaf_map=leaf_map)


def serialize_branch_decomposition(bd: BranchDecomposition) -> str:
    lines = [f"p branchdec {len(bd.nodes)} {len(bd.tree_edges)}"]
    for a, b in sorted(bd.tree_edges):
        lines.append(f"t {a} {b}")
    for leaf in sorted(bd.leaf_map):
        u, v = bd.leaf_map[leaf]
        lines.append(f"l {leaf} {u} {v}")
    return "\n".join(lines) + "\n"


def parse_tree_decomposition(text: str) -> TreeDecomposition:
    bags: dict[int, frozenset[int]] = {}
    tree_edges: list[tuple[int, int]] = []
    header = False
    for lineno, tok in _tokens(text):
        try:
            if tok[0] == "p":
                if tok[1] != "treedec":
                    raise ParseError(f"line {lineno}: expected 'p treedec'")
                header = True
            elif tok[0] == "b":
                node = int(tok[1])
                if node in bags:
                    raise ParseError(f"line {lineno}: duplicate bag {node}")
                bags[node] = frozenset(int(x) for x in tok[2:])
            elif tok[0] == "t":
                tree_edges.append((int(tok[1]), int(tok[2])))
            else:
                raise ParseError(f"line {lineno}: unknown record '{tok[0]}'")
        except (IndexError, ValueError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"line {lineno}: malformed record") from exc
    if not header:
        raise ParseError("missing 'p treedec' header")
    return TreeDecomposition(bags=bags,
                             tree_edges=frozenset(tuple(sorted(e)) for e in tree_edges))


def serialize_tree_decomposition(td: TreeDecomposition) -> str:
    lines = [f"p treedec {len(td.bags)} {len(td.tree_edges)}"]
    for node in sorted(td.bags):
        lines.append("b " + " ".join(str(x) for x in (node,) + tuple(sorted(td.bags[node]))))
    for a, b in sorted(td.tree_edges):
        lines.append(f"t {a} {b}")
    return "\n".join(lines) + "\n"


def parse_hitting_set(text: str) -> HittingSetInstance:
    k = None
    m = None
    sets: list[frozenset[tuple[int, int]]] = []
    for lineno, tok in _tokens(text):
        try:
            if tok[0] == "p":
                if tok[1] != "hs" or len(tok) != 4:
                    raise ParseError(f"line {lineno}: expected 'p hs <k> <m>'")
                k, m = int(tok[2]), int(tok[3])
            elif tok[0] == "s":
                coords = [int(x) for x in tok[1:]]
                if len(coords) % 2 != 0:
                    raise ParseError(f"line {lineno}: odd coordinate count")
                pairs = {(coords[i], coords[i + 1]) for i in range(0, len(coords), 2)}
                sets.append(frozenset(pairs))
            else:
                raise ParseError(f"line {lineno}: unknown record '{tok[0]}'")
        except (IndexError, ValueError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"line {lineno}: malformed record") from exc
    if k is None:
        raise ParseError("missing 'p hs' header")
    if m is not None and m != len(sets):
        raise ParseError(f"header declares {m} sets, found {len(sets)}")
    return HittingSetInstance(k=k, sets=tuple(sets))


def serialize_hitting_set(inst: HittingSetInstance) -> str:
    lines = [f"p hs {inst.k} {len(inst.sets)}"]
    for s in inst.sets:
        flat = [str(x) for rc in sorted(s) for x in rc]
        lines.append("s" + ("" if not flat else " " + " ".join(flat)))
    return "\n".join(lines) + "\n"
