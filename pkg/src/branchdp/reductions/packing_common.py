"""Shared assembly for the two selector-gadget reductions.

Both build the same picture: one selector strip per source vertex, ports in
row order (a, c, b) as the selector's outer face dictates, and one edge
gadget of three color quads between facing strips. The right strip is
mirrored in both axes, which reverses its port rows and yields exactly the
twelve quad crossings of the reference drawing.

Supported source shapes are a single vertex and a single edge; anything
larger would need selector ports on more than one strip side, which the
fixed gadget drawings do not provide. Callers see LayoutUnsupported.
"""

from __future__ import annotations

import json
from fractions import Fraction
from importlib import resources

from ..embeddings import RotationSystem, euler_check
from ..graphs import Graph
from .layout import PlaneBuilder

F = Fraction

COLOR_ROWS = ("a", "c", "b")            # top-to-bottom port order
ROW_Y = {"a": 0, "c": -6, "b": -12}
PORT_X = 6
EDGE_SPAN = 16                           # distance between facing port columns
QUAD_ANCHORS = {"a": (10, 0), "c": (9, -6), "b": (8, -12)}

SC_CYCLE_COORDS = {
    "a": (6, 0), "c": (6, -6), "b": (6, -12),
    "u1": (F(22, 5), -3), "u3": (F(22, 5), -9), "u2": (2, -6), "u0": (4, -6),
}
SC_PATH_COORDS = {
    "s": (0, 0), "t": (0, -12),
    "a": (6, 0), "c": (6, -6), "b": (6, -12),
}


class LayoutUnsupported(ValueError):
    pass


def load_packing_templates():
    text = resources.files("branchdp.reductions.data").joinpath(
        "gadgets_packing.json").read_text()
    return json.loads(text)


TEMPLATES = load_packing_templates()


def require_planar_certified(g: Graph, rs: RotationSystem) -> None:
    if g.max_degree() > 5:
        raise ValueError(f"maximum degree {g.max_degree()} exceeds 5")
    report = euler_check(g, rs)
    if not report.planar:
        raise ValueError("planarity certificate fails the Euler check")


def place(coords: dict, origin: tuple[int, int], mirror: bool):
    """Translate template coordinates; mirroring flips both axes around the
    strip box so port rows reverse."""
    ox, oy = origin
    out = {}
    for name, (x, y) in coords.items():
        if mirror:
            x, y = -F(x), -12 - F(y)
        out[name] = (F(x) + ox, F(y) + oy)
    return out


def add_sc_cycle(b: PlaneBuilder, idx: int, origin, mirror: bool):
    tpl = TEMPLATES["sc_cycle"]
    pos = place(SC_CYCLE_COORDS, origin, mirror)
    ids = {name: b.vertex(f"sc{idx}:{name}", *pos[name]) for name in pos}
    for x, y in tpl["edges"]:
        b.edge(ids[x], ids[y])
    b.registry.add("SC", ids, asks=1, source_vertex=idx)
    return ids


def add_sc_path(b: PlaneBuilder, idx: int, origin, mirror: bool):
    tpl = TEMPLATES["sc_path"]
    pos = place(SC_PATH_COORDS, origin, mirror)
    ids = {name: b.vertex(f"sc{idx}:{name}", *pos[name]) for name in pos}
    for x, y in tpl["edges"]:
        b.edge(ids[x], ids[y], carrier=True, host=f"sc{idx}")
    b.request(ids["s"], ids["t"])
    b.registry.add("SC", ids, asks=1, source_vertex=idx)
    return ids


def add_edge_gadget(b: PlaneBuilder, flavor: str, left_ports: dict[str, int],
                    right_ports: dict[str, int], origin_x: int):
    """Three color quads between two facing port columns. Long sides are
    carriers and produce the twelve crossings downstream."""
    host = b.registry.add("edge", {}, asks=0)
    quads = {}
    for color in COLOR_ROWS:
        ax, ay = QUAD_ANCHORS[color]
        ax += origin_x
        pi = left_ports[color]
        pj = right_ports[color]
        if flavor == "cycle":
            a1 = b.vertex(f"edge:{color}:A1", ax, ay + 1)
            a2 = b.vertex(f"edge:{color}:A2", ax, ay - 1)
            b.edge(a1, a2)
            b.edge(a1, pi)
            b.edge(pi, a2)
            b.edge(a2, pj, carrier=True, host="edge")
            b.edge(pj, a1, carrier=True, host="edge")
            ids = {"pi": pi, "pj": pj, "A1": a1, "A2": a2}
            b.registry.add("edge-quad", ids, asks=1, color=color,
                           host="edge", host_index=host.index)
            quads[color] = ids
        else:
            s = b.vertex(f"edge:{color}:s", ax, ay + 1)
            t = b.vertex(f"edge:{color}:t", ax, ay - 1)
            b.edge(s, pi)
            b.edge(pi, t)
            b.edge(t, pj, carrier=True, host="edge")
            b.edge(pj, s, carrier=True, host="edge")
            b.request(s, t)
            ids = {"pi": pi, "pj": pj, "s": s, "t": t}
            b.registry.add("edge-quad", ids, asks=1, color=color,
                           host="edge", host_index=host.index)
            quads[color] = ids
    return host, quads


def chain_between(traversals, a: int, bvert: int) -> list[int]:
    """Traversal sequence of the carrier edge (a, b), oriented a -> b."""
    for (x, y), seq in traversals.items():
        if (x, y) == (a, bvert):
            return list(seq)
        if (x, y) == (bvert, a):
            return list(reversed(seq))
    return [a, bvert]


def pcg_expel_cycles(registry, used: set[int]) -> list[list[int]]:
    """One inner cycle per path-crossing expel, avoiding used terminals."""
    cycles = []
    for gad in registry.by_kind("expel"):
        u, up = gad.vertices["u"], gad.vertices["up"]
        v, vp = gad.vertices["v"], gad.vertices["vp"]
        if u in used and up in used:
            raise ValueError(f"both expel terminals used at gadget {gad.index}")
        inner = [up, v, vp] if u in used else [u, v, vp]
        cycles.append(inner)
    return cycles


def pcg_expel_paths(registry, used: set[int]) -> list[tuple[int, list[int]]]:
    """One routed request per path-crossing expel, avoiding used terminals."""
    out = []
    for gad in registry.by_kind("expel"):
        s, t = gad.vertices["s"], gad.vertices["t"]
        u, v = gad.vertices["u"], gad.vertices["v"]
        if u in used and v in used:
            raise ValueError(f"both expel terminals used at gadget {gad.index}")
        via = v if u in used else u
        out.append((gad.index, [s, via, t]))
    return out
