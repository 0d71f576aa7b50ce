"""Grid hitting set -> planar monochromatic disjoint paths.

One horizontal lane per row. A fan of k colored vertices at the lane's start
commits the lane's path to a column color; each set contributes a column of
lane sections where the committed color may pass through the set's own
colored vertex, and inter-lane expel requests make sure at least one lane
does so. The explicit path decomposition of the construction is emitted
alongside the instance.
"""

from __future__ import annotations

from fractions import Fraction

from ..decomp import TreeDecomposition
from ..embeddings import rotation_from_coordinates
from ..graphs import ColoredGraph, RequestSet, graph_from_edges
from ..oracle import HittingSetInstance
from .registry import GadgetRegistry, ReductionOutput

F = Fraction


def reduce_hs_to_mdp(inst: HittingSetInstance) -> ReductionOutput:
    k, m = inst.k, inst.m
    set_row_color: list[dict[int, int]] = []
    for s in inst.sets:
        set_row_color.append({r: c for (r, c) in s})

    next_id = [0]
    names: dict[str, int] = {}
    coords: dict[int, tuple[F, F]] = {}

    def vertex(name: str, x, y) -> int:
        next_id[0] += 1
        names[name] = next_id[0]
        coords[next_id[0]] = (F(x), F(y))
        return next_id[0]

    def y_row(r: int) -> int:
        return -4 * k * r

    edges: list[tuple[int, int]] = []
    colors: dict[int, int] = {}
    registry = GadgetRegistry()

    for r in range(1, k + 1):
        y = y_row(r)
        s_r = vertex(f"s_{r}", 0, y)
        v_prev = vertex(f"v_{r},0", 4, y)
        fan = {}
        for c in range(1, k + 1):
            u = vertex(f"u_{r},{c}", 2, y + F(k + 1 - 2 * c, 1))
            colors[u] = c
            edges.append((s_r, u))
            edges.append((u, v_prev))
            fan[f"u_{c}"] = u
        registry.add("color-selection", {"s": s_r, "v0": v_prev, **fan}, asks=0,
                     row=r)
        for i in range(1, m + 1):
            x_right = 4 + 4 * i
            x_mid = x_right - 2
            v_next = vertex(f"v_{r},{i}", x_right, y)
            gadget_vertices = {"v_in": v_prev, "v_out": v_next}
            if r != 1:
                w1 = vertex(f"w_{r},{i},1", x_mid, y + 1)
                edges.append((v_prev, w1))
                edges.append((w1, v_next))
                gadget_vertices["w1"] = w1
            if r != k:
                w2 = vertex(f"w_{r},{i},2", x_mid, y - 1)
                edges.append((v_prev, w2))
                edges.append((w2, v_next))
                gadget_vertices["w2"] = w2
            if r in set_row_color[i - 1]:
                a = vertex(f"a_{r},{i}", x_mid, y)
                colors[a] = set_row_color[i - 1][r]
                edges.append((v_prev, a))
                edges.append((a, v_next))
                gadget_vertices["a"] = a
            registry.add("set", gadget_vertices, asks=0, row=r, set_index=i)
            v_prev = v_next
        t_r = vertex(f"t_{r}", 4 + 4 * m + 2, y)
        edges.append((v_prev, t_r))

    requests: list[tuple[int, int]] = []
    for r in range(1, k + 1):
        requests.append((names[f"s_{r}"], names[f"t_{r}"]))
    for r in range(1, k):
        for i in range(1, m + 1):
            x_mid = 4 + 4 * i - 2
            y_mid = y_row(r) - 2 * k
            se = vertex(f"se_{r},{i}", x_mid - F(1, 2), y_mid)
            te = vertex(f"te_{r},{i}", x_mid + F(1, 2), y_mid)
            w_top = names[f"w_{r},{i},2"]
            w_bot = names[f"w_{r + 1},{i},1"]
            edges.extend([(se, w_top), (se, w_bot), (te, w_top), (te, w_bot)])
            requests.append((se, te))
            registry.add("expel", {"s": se, "t": te, "u": w_top, "v": w_bot},
                         asks=1, row=r, set_index=i)

    g = graph_from_edges(next_id[0], edges)
    cg = ColoredGraph(graph=g, colors=colors)
    req = RequestSet(pairs=tuple(requests))
    rs = rotation_from_coordinates(g, coords)

    pd = _path_decomposition(inst, names)
    return ReductionOutput(kind="hs-to-mdp", graph=cg, requests=req,
                           embedding=rs, registry=registry,
                           id_map={"names": dict(names)},
                           path_decomposition=pd, source=inst)


def _path_decomposition(inst: HittingSetInstance, names: dict[str, int]) -> TreeDecomposition:
    k, m = inst.k, inst.m
    bags: dict[int, frozenset[int]] = {}
    order: list[int] = []
    nid = [0]

    def bag(vertices) -> int:
        nid[0] += 1
        bags[nid[0]] = frozenset(vertices)
        order.append(nid[0])
        return nid[0]

    base = [names[f"s_{r}"] for r in range(1, k + 1)]
    base += [names[f"v_{r},0"] for r in range(1, k + 1)]
    for r in range(1, k + 1):
        for c in range(1, k + 1):
            bag(base + [names[f"u_{r},{c}"]])
    for i in range(1, m + 1):
        members = []
        for r in range(1, k + 1):
            members.append(names[f"v_{r},{i - 1}"])
            members.append(names[f"v_{r},{i}"])
            for key in (f"a_{r},{i}", f"w_{r},{i},1", f"w_{r},{i},2"):
                if key in names:
                    members.append(names[key])
        for r in range(1, k):
            members.append(names[f"se_{r},{i}"])
            members.append(names[f"te_{r},{i}"])
        bag(members)
    bag([names[f"v_{r},{m}"] for r in range(1, k + 1)]
        + [names[f"t_{r}"] for r in range(1, k + 1)])
    tree_edges = frozenset((order[i], order[i + 1]) for i in range(len(order) - 1))
    return TreeDecomposition(bags=bags, tree_edges=tree_edges)


def hs_forward_witness(out: ReductionOutput, selection: set[tuple[int, int]]) -> list[list[int]]:
    """Translate a hitting-set selection into a full routed path system."""
    inst: HittingSetInstance = out.source
    names = out.id_map["names"]
    k, m = inst.k, inst.m
    col_of = {r: c for (r, c) in selection}
    set_row_color = [{r: c for (r, c) in s} for s in inst.sets]
    hitter: list[int] = []
    for i in range(1, m + 1):
        rows = [r for r in range(1, k + 1)
                if r in set_row_color[i - 1] and set_row_color[i - 1][r] == col_of[r]]
        if not rows:
            raise ValueError(f"selection does not hit set {i}")
        hitter.append(min(rows))

    paths: list[list[int]] = []
    for r in range(1, k + 1):
        path = [names[f"s_{r}"], names[f"u_{r},{col_of[r]}"], names[f"v_{r},0"]]
        for i in range(1, m + 1):
            rstar = hitter[i - 1]
            if r == rstar:
                path.append(names[f"a_{r},{i}"])
            elif r < rstar:
                path.append(names[f"w_{r},{i},2"])
            else:
                path.append(names[f"w_{r},{i},1"])
            path.append(names[f"v_{r},{i}"])
        path.append(names[f"t_{r}"])
        paths.append(path)
    for r in range(1, k):
        for i in range(1, m + 1):
            rstar = hitter[i - 1]
            via = names[f"w_{r + 1},{i},1"] if r < rstar else names[f"w_{r},{i},2"]
            paths.append([names[f"se_{r},{i}"], via, names[f"te_{r},{i}"]])
    return paths


def hs_backward_witness(out: ReductionOutput, paths: list[list[int]]) -> set[tuple[int, int]]:
    """Read the row selection from the colors the lane paths committed to."""
    inst: HittingSetInstance = out.source
    names = out.id_map["names"]
    k = inst.k
    u_cell = {}
    for r in range(1, k + 1):
        for c in range(1, k + 1):
            u_cell[names[f"u_{r},{c}"]] = (r, c)
    selection: set[tuple[int, int]] = set()
    for r in range(1, k + 1):
        lane = paths[r - 1]
        cells = [u_cell[v] for v in lane if v in u_cell]
        if len(cells) != 1 or cells[0][0] != r:
            raise ValueError(f"lane {r} does not select exactly one column")
        selection.add(cells[0])
    return selection
