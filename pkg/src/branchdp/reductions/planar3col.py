"""General 3-colorability -> planar 3-colorability with maximum degree 5.

The target graph is a triangular grid of crossover boxes: column i carries
the color of source vertex i downwards, row j carries it rightwards, and the
box at (i, j) swaps them past each other. A plain edge between the column
and row carriers at (i, j) exists exactly when the source graph has edge
(i, j), forcing distinct colors. Equality along carriers is maintained by
color gadgets; carrier vertices that would exceed degree 5 are split into a
chain of three linked copies.
"""

from __future__ import annotations

import itertools
import json
from fractions import Fraction
from importlib import resources

from ..embeddings import rotation_from_coordinates
from ..graphs import ColoredGraph, Graph, RequestSet, graph_from_edges
from .registry import GadgetRegistry, ReductionOutput

F = Fraction
S = 16          # box spacing
RING = 2        # crossover ring radius
SPLIT = 2       # offset of split copies


def _load_gadget_templates():
    text = resources.files("branchdp.reductions.data").joinpath(
        "gadgets_3col.json").read_text()
    return json.loads(text)


_TEMPLATES = _load_gadget_templates()


def cc_completions() -> dict[tuple[int, int], dict[str, int]]:
    """Proper colorings of the crossover interior for every terminal combo."""
    tpl = _TEMPLATES["cross-color"]
    internals = sorted(tpl["internals"])
    idx = {nm: i for i, nm in enumerate(["u", "up", "v", "vp"] + internals)}
    edges = [(idx[a], idx[b]) for a, b in tpl["edges"]]
    out: dict[tuple[int, int], dict[str, int]] = {}
    for cu, cv in itertools.product((1, 2, 3), repeat=2):
        for combo in itertools.product((1, 2, 3), repeat=len(internals)):
            coloring = [cu, cu, cv, cv] + list(combo)
            if all(coloring[a] != coloring[b] for a, b in edges):
                out[(cu, cv)] = dict(zip(internals, combo))
                break
        else:
            raise AssertionError(f"crossover has no completion for {(cu, cv)}")
    return out


class _Builder:
    def __init__(self) -> None:
        self.next_id = 0
        self.coords: dict[int, tuple[F, F]] = {}
        self.names: dict[str, int] = {}
        self.edges: list[tuple[int, int]] = []
        self.registry = GadgetRegistry()

    def vertex(self, name: str, x, y) -> int:
        self.next_id += 1
        if name in self.names:
            raise ValueError(f"duplicate vertex name {name}")
        self.names[name] = self.next_id
        self.coords[self.next_id] = (F(x), F(y))
        return self.next_id

    def edge(self, a: int, b: int) -> None:
        self.edges.append((a, b))

    def color_gadget(self, tag: str, a: int, b: int) -> None:
        """K4 minus an edge between existing vertices a and b. Both inner
        vertices sit on one side of the corridor (west of vertical runs,
        south of horizontal ones) so diagonal edges can pass on the other."""
        ax, ay = self.coords[a]
        bx, by = self.coords[b]
        mx, my = (ax + bx) / 2, (ay + by) / 2
        dx, dy = bx - ax, by - ay
        norm = max(abs(dx), abs(dy))
        px, py = -dy / norm, dx / norm
        if px > 0 or (px == 0 and py > 0):
            px, py = -px, -py
        p = self.vertex(f"C:{tag}:p", mx + px * F(6, 5), my + py * F(6, 5))
        q = self.vertex(f"C:{tag}:q", mx + px * F(12, 5), my + py * F(12, 5))
        for t in (a, b):
            self.edge(t, p)
            self.edge(t, q)
        self.edge(p, q)
        self.registry.add("C", {"u": a, "up": b, "p": p, "q": q}, asks=0, tag=tag)

    def crossover(self, tag: str, cx, cy, top: int, bottom: int,
                  left: int, right: int) -> dict[str, int]:
        tpl = _TEMPLATES["cross-color"]
        ids: dict[str, int] = {"u": top, "up": bottom, "v": left, "vp": right}
        for nm, (ox, oy) in sorted(tpl["internals"].items()):
            ids[nm] = self.vertex(f"CC:{tag}:{nm}", F(cx) + F(ox), F(cy) + F(oy))
        for a, b in tpl["edges"]:
            self.edge(ids[a], ids[b])
        self.registry.add("CC", ids, asks=0, tag=tag)
        return ids


def reduce_3col_to_planar3col(g: Graph) -> ReductionOutput:
    n = g.n
    b = _Builder()

    def box_center(i: int, j: int) -> tuple[int, int]:
        return (i * S, -j * S)

    # carrier terminals; split decisions are made from the final degree load
    has_edge = {(i, j): g.has_edge(i, j) for i in range(1, n + 1)
                for j in range(i + 1, n + 1)}

    u_ids = {}
    v_ids = {}
    w_ids = {}
    for i in range(1, n + 1):
        u_ids[i] = b.vertex(f"u_{i}", i * S, -i * S)
    for j in range(1, n + 1):
        if j == 1:
            v_ids[1] = b.vertex("v_1", S - F(S, 2), -S)
        else:
            v_ids[j] = b.vertex(f"v_{j}", S - F(S, 2), -j * S)
    for i in range(1, n + 1):
        w_ids[i] = b.vertex(f"w_{i}", i * S, -n * S - F(S, 2))

    # alpha carriers: column i entering box (i, j) from above
    # beta carriers: row j leaving box (i, j) to the right
    alpha_parts: dict[tuple[int, int], dict[str, int]] = {}
    beta_parts: dict[tuple[int, int], dict[str, int]] = {}

    def make_carrier(kind: str, i: int, j: int, x, y, vertical: bool,
                     up_load: int, down_load: int, carries_edge: bool):
        """One carrier vertex, split into a linked chain when its degree
        would exceed 5. Returns attachment points (up/mid/down)."""
        name = f"{kind}_{i}_{j}"
        total = up_load + down_load + (1 if carries_edge else 0)
        if total <= 5:
            v = b.vertex(name, x, y)
            return {"up": v, "mid": v, "down": v, "rep": v}
        dx, dy = (0, SPLIT) if vertical else (-SPLIT, 0)
        x1 = b.vertex(f"{name}:x1", F(x) + dx, F(y) + dy)
        x2 = b.vertex(f"{name}:x2", x, y)
        x3 = b.vertex(f"{name}:x3", F(x) - dx, F(y) - dy)
        b.color_gadget(f"{name}:a", x1, x2)
        b.color_gadget(f"{name}:b", x2, x3)
        return {"up": x1, "mid": x2, "down": x3, "rep": x2}

    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            cx, cy = box_center(i, j)
            up_load = 2 if j == i + 1 else 3
            alpha_parts[(i, j)] = make_carrier(
                "alpha", i, j, cx, cy + F(S, 2), True,
                up_load, 3, has_edge[(i, j)])
            east_load = 2 if i == j - 1 else 3
            beta_parts[(i, j)] = make_carrier(
                "beta", i, j, cx + F(S, 2), cy, False,
                3, east_load, has_edge[(i, j)])

    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            cx, cy = box_center(i, j)
            top = alpha_parts[(i, j)]["down"]
            bottom = alpha_parts[(i, j + 1)]["up"] if j < n else w_ids[i]
            left = beta_parts[(i - 1, j)]["down"] if i > 1 else v_ids[j]
            right = beta_parts[(i, j)]["up"]
            b.crossover(f"{i}_{j}", cx, cy, top, bottom, left, right)
            if has_edge[(i, j)]:
                b.edge(alpha_parts[(i, j)]["mid"], beta_parts[(i, j)]["mid"])

    for i in range(1, n + 1):
        if i < n:
            b.color_gadget(f"col_{i}", u_ids[i], alpha_parts[(i, i + 1)]["up"])
        if i > 1:
            b.color_gadget(f"row_{i}", u_ids[i], beta_parts[(i - 1, i)]["down"])
    b.color_gadget("u1v1", u_ids[1], v_ids[1])
    b.color_gadget("unwn", u_ids[n], w_ids[n])

    h = graph_from_edges(b.next_id, b.edges)
    rs = rotation_from_coordinates(h, b.coords)
    id_map = {
        "u": {i: u_ids[i] for i in u_ids},
        "v": dict(v_ids), "w": dict(w_ids),
        "alpha": {f"{i},{j}": parts["rep"] for (i, j), parts in alpha_parts.items()},
        "beta": {f"{i},{j}": parts["rep"] for (i, j), parts in beta_parts.items()},
        "names": dict(b.names),
    }
    return ReductionOutput(kind="3col-to-planar3col",
                           graph=ColoredGraph(graph=h),
                           requests=RequestSet(pairs=()),
                           embedding=rs, registry=b.registry,
                           id_map=id_map, source=g)


def planar3col_forward_witness(out: ReductionOutput,
                               coloring: dict[int, int]) -> dict[int, int]:
    """Lift a proper coloring of the source graph to the target graph."""
    g: Graph = out.source
    names = out.id_map["names"]
    completions = cc_completions()
    result: dict[int, int] = {}

    def carrier_color(name: str) -> int:
        base = name.split(":")[0]
        kind, *nums = base.split("_")
        if kind in ("u", "v", "w"):
            return coloring[int(nums[0])]
        i, j = int(nums[0]), int(nums[1])
        return coloring[i] if kind == "alpha" else coloring[j]

    for name, vid in names.items():
        if name.startswith(("C:", "CC:")):
            continue
        result[vid] = carrier_color(name)

    for gad in out.registry.gadgets:
        if gad.kind == "C":
            cu = result[gad.vertices["u"]]
            others = [c for c in (1, 2, 3) if c != cu]
            result[gad.vertices["p"]] = others[0]
            result[gad.vertices["q"]] = others[1]
        else:
            cu = result[gad.vertices["u"]]
            cv = result[gad.vertices["v"]]
            for nm, col in completions[(cu, cv)].items():
                result[gad.vertices[nm]] = col
    return result


def planar3col_backward_witness(out: ReductionOutput,
                                coloring: dict[int, int]) -> dict[int, int]:
    """Read the source coloring off the column heads."""
    return {i: coloring[vid] for i, vid in out.id_map["u"].items()}
