"""Planar 3-colorability (max degree 5) -> planar disjoint paths.

Same picture as the cycle-packing reduction with the path-flavored gadgets:
the selector asks one request routed over one of three color branches, each
color quad asks one request excluding the endpoints' same-color branches,
and path-crossing expels ask one request each.
"""

from __future__ import annotations

from ..embeddings import RotationSystem
from ..graphs import ColoredGraph, Graph, RequestSet
from .layout import PlaneBuilder
from .packing_common import (EDGE_SPAN, PORT_X, LayoutUnsupported,
                             add_edge_gadget, add_sc_path, chain_between,
                             pcg_expel_paths, require_planar_certified)
from .registry import ReductionOutput

COLOR_INDEX = {"a": 1, "b": 2, "c": 3}
INDEX_COLOR = {v: k for k, v in COLOR_INDEX.items()}


def reduce_planar3col_to_disjoint_paths(g: Graph, rs: RotationSystem) -> ReductionOutput:
    require_planar_certified(g, rs)
    b = PlaneBuilder(flavor="path")
    if g.n == 1 and g.m == 0:
        sc = {1: add_sc_path(b, 1, (0, 0), mirror=False)}
        traversals = b.resolve_crossings(expected_crossings=3)
    elif g.n == 2 and g.m == 1:
        left = add_sc_path(b, 1, (0, 0), mirror=False)
        right = add_sc_path(b, 2, (2 * PORT_X + EDGE_SPAN, 0), mirror=True)
        sc = {1: left, 2: right}
        add_edge_gadget(b, "path", left, right, origin_x=0)
        traversals = b.resolve_crossings(expected_crossings=3 + 3 + 12)
    else:
        raise LayoutUnsupported(
            "disjoint-paths generator lays out single vertices and single "
            f"edges; got n={g.n}, m={g.m}")
    graph, rotation = b.finish()
    return ReductionOutput(kind="3col-to-disjoint-paths",
                           graph=ColoredGraph(graph=graph),
                           requests=RequestSet(pairs=tuple(b.requests)),
                           embedding=rotation, registry=b.registry,
                           id_map={"sc": {i: dict(v) for i, v in sc.items()},
                                   "names": dict(b.names),
                                   "traversals": {f"{k[0]},{k[1]}": v
                                                  for k, v in traversals.items()}},
                           source=g)


def _traversal_lookup(out: ReductionOutput):
    raw = out.id_map["traversals"]
    return {tuple(int(x) for x in key.split(",")): seq for key, seq in raw.items()}


def dp_forward_witness(out: ReductionOutput, coloring: dict[int, int]) -> list[list[int]]:
    """Route every request according to a source coloring; paths come back
    in request order. Improper colorings route mechanically and fail the
    verifier's disjointness check."""
    g: Graph = out.source
    traversals = _traversal_lookup(out)
    sc_map = out.id_map["sc"]
    routed: dict[tuple[int, int], list[int]] = {}
    used: set[int] = set()

    for i in g.vertices():
        ids = {k: int(v) for k, v in sc_map[i].items()}
        branch = ids[INDEX_COLOR[coloring[i]]]
        first = chain_between(traversals, ids["s"], branch)
        second = chain_between(traversals, branch, ids["t"])
        path = first + second[1:]
        routed[(ids["s"], ids["t"])] = path
        used.update(path)

    for quad in out.registry.by_kind("edge-quad"):
        pi, pj = quad.vertices["pi"], quad.vertices["pj"]
        s, t = quad.vertices["s"], quad.vertices["t"]
        if pi not in used:
            path = [s, pi, t]
        else:
            right = chain_between(traversals, s, pj)
            back = chain_between(traversals, pj, t)
            path = right + back[1:]
        routed[(s, t)] = path
        used.update(path)

    for _idx, path in pcg_expel_paths(out.registry, used):
        routed[(path[0], path[-1])] = path
        used.update(path)

    ordered = []
    for s, t in out.requests.pairs:
        path = routed.get((s, t)) or list(reversed(routed.get((t, s), [])))
        if not path:
            raise ValueError(f"request ({s},{t}) was never routed")
        ordered.append(path)
    return ordered


def dp_backward_witness(out: ReductionOutput, paths: list[list[int]]) -> dict[int, int]:
    """Read the branch choice of each selector request back into a coloring."""
    g: Graph = out.source
    sc_map = out.id_map["sc"]
    by_pair = {}
    for (s, t), path in zip(out.requests.pairs, paths):
        by_pair[(s, t)] = path
    coloring: dict[int, int] = {}
    for i in g.vertices():
        ids = {k: int(v) for k, v in sc_map[i].items()}
        path = by_pair.get((ids["s"], ids["t"]))
        if path is None:
            raise ValueError(f"selector request of vertex {i} missing")
        hits = [c for c in ("a", "b", "c") if ids[c] in path]
        if len(hits) != 1:
            raise ValueError(f"selector path of vertex {i} uses branches {hits}")
        coloring[i] = COLOR_INDEX[hits[0]]
    for u, v in g.edges:
        if coloring[u] == coloring[v]:
            raise ValueError(f"extracted coloring repeats on edge ({u},{v})")
    return coloring
