"""Planar 3-colorability (max degree 5) -> planar cycle packing.

Per source vertex a selector gadget asks one cycle that must run through one
of three color ports; per source edge three quad gadgets each ask one cycle
and forbid the two endpoints' same-color ports from being selected together.
Crossings introduced by the quads are resolved into path-crossing gadgets
whose expel cycles police straight traversal. The cycle budget is the total
number of asked cycles, computed from the registry.
"""

from __future__ import annotations

from ..embeddings import RotationSystem
from ..graphs import ColoredGraph, Graph, RequestSet
from .layout import PlaneBuilder
from .packing_common import (COLOR_ROWS, EDGE_SPAN, PORT_X, TEMPLATES,
                             LayoutUnsupported, add_edge_gadget, add_sc_cycle,
                             chain_between, pcg_expel_cycles,
                             require_planar_certified)
from .registry import ReductionOutput

COLOR_INDEX = {"a": 1, "b": 2, "c": 3}
INDEX_COLOR = {v: k for k, v in COLOR_INDEX.items()}


def reduce_planar3col_to_cycle_packing(g: Graph, rs: RotationSystem) -> ReductionOutput:
    require_planar_certified(g, rs)
    b = PlaneBuilder(flavor="cycle")
    if g.n == 1 and g.m == 0:
        sc = {1: add_sc_cycle(b, 1, (0, 0), mirror=False)}
        traversals = b.resolve_crossings(expected_crossings=0)
    elif g.n == 2 and g.m == 1:
        left = add_sc_cycle(b, 1, (0, 0), mirror=False)
        right = add_sc_cycle(b, 2, (2 * PORT_X + EDGE_SPAN, 0), mirror=True)
        sc = {1: left, 2: right}
        add_edge_gadget(b, "cycle", left, right, origin_x=0)
        traversals = b.resolve_crossings(expected_crossings=12)
    else:
        raise LayoutUnsupported(
            "cycle-packing generator lays out single vertices and single "
            f"edges; got n={g.n}, m={g.m}")
    graph, rotation = b.finish()
    l0 = b.registry.total_asks()
    return ReductionOutput(kind="3col-to-cycle-packing",
                           graph=ColoredGraph(graph=graph),
                           requests=RequestSet(pairs=()),
                           embedding=rotation, registry=b.registry,
                           id_map={"sc": {i: dict(v) for i, v in sc.items()},
                                   "names": dict(b.names),
                                   "traversals": {f"{k[0]},{k[1]}": v
                                                  for k, v in traversals.items()}},
                           l0=l0, source=g)


def _traversal_lookup(out: ReductionOutput):
    raw = out.id_map["traversals"]
    return {tuple(int(x) for x in key.split(",")): seq for key, seq in raw.items()}


def cp_forward_witness(out: ReductionOutput, coloring: dict[int, int]) -> list[list[int]]:
    """Build the full cycle packing realized by a proper source coloring.

    Colorings are maps source vertex -> 1..3 (port rows a, b, c). Improper
    colorings are translated mechanically; the verifier then reports the
    collision.
    """
    g: Graph = out.source
    traversals = _traversal_lookup(out)
    sc_map = out.id_map["sc"]
    tpl = TEMPLATES["sc_cycle"]
    cycles: list[list[int]] = []
    used: set[int] = set()

    for i in g.vertices():
        ids = {k: int(v) for k, v in sc_map[i].items()}
        color = INDEX_COLOR[coloring[i]]
        cyc = [ids[name] for name in tpl["selection_cycles"][color]]
        cycles.append(cyc)
        used.update(cyc)

    for quad in out.registry.by_kind("edge-quad"):
        color = quad.meta["color"]
        pi, pj = quad.vertices["pi"], quad.vertices["pj"]
        a1, a2 = quad.vertices["A1"], quad.vertices["A2"]
        if pi not in used:
            cyc = [pi, a1, a2]
        else:
            # route through the far port; the long sides thread the
            # path-crossing gadgets
            right = chain_between(traversals, a2, pj)
            back = chain_between(traversals, pj, a1)
            cyc = [a2] + right[1:] + back[1:]
        cycles.append(cyc)
        used.update(cyc)

    cycles.extend(pcg_expel_cycles(out.registry, used))
    return cycles


def cp_backward_witness(out: ReductionOutput, cycles: list[list[int]]) -> dict[int, int]:
    """Read a coloring out of the selector cycles of a packing."""
    g: Graph = out.source
    sc_map = out.id_map["sc"]
    coloring: dict[int, int] = {}
    for i in g.vertices():
        ids = {k: int(v) for k, v in sc_map[i].items()}
        members = set(ids.values())
        ports = {ids[c]: c for c in COLOR_ROWS}
        chosen = None
        for cyc in cycles:
            if set(cyc) <= members:
                hit = [ports[v] for v in cyc if v in ports]
                if len(hit) == 1:
                    chosen = hit[0]
                    break
        if chosen is None:
            raise ValueError(f"no selector cycle found for source vertex {i}")
        coloring[i] = COLOR_INDEX[chosen]
    for u, v in g.edges:
        if coloring[u] == coloring[v]:
            raise ValueError(f"extracted coloring repeats on edge ({u},{v})")
    return coloring
