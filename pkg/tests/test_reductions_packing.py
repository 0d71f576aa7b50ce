from __future__ import annotations

import pytest

from branchdp.cyclepack import solve_cycle_packing
from branchdp.embeddings import RotationSystem, euler_check
from branchdp.graphs import Graph, graph_from_edges
from branchdp.oracle import brute_cycle_packing, verify_witness
from branchdp.reductions.cyclepacking import (cp_backward_witness,
                                              cp_forward_witness,
                                              reduce_planar3col_to_cycle_packing)
from branchdp.reductions.disjointpaths import (dp_backward_witness,
                                               dp_forward_witness,
                                               reduce_planar3col_to_disjoint_paths)
from branchdp.reductions.layout import PlaneBuilder
from branchdp.reductions.packing_common import LayoutUnsupported
from branchdp.reductions.validate import validate_reduction


def single_vertex():
    return graph_from_edges(1, []), RotationSystem({})


def single_edge():
    return graph_from_edges(2, [(1, 2)]), RotationSystem({1: (2,), 2: (1,)})


def sc_gadget() -> tuple[Graph, dict[str, int]]:
    names = ["a", "b", "c", "u0", "u1", "u2", "u3"]
    idx = {nm: i + 1 for i, nm in enumerate(names)}
    edges = [("u0", "u1"), ("u0", "u2"), ("u0", "u3"), ("a", "u1"), ("a", "u2"),
             ("b", "u2"), ("b", "u3"), ("c", "u1"), ("c", "u3")]
    return graph_from_edges(7, [(idx[a], idx[b]) for a, b in edges]), idx


def without(g: Graph, drop: set[int]) -> Graph:
    keep = [v for v in g.vertices() if v not in drop]
    remap = {v: i + 1 for i, v in enumerate(keep)}
    return graph_from_edges(len(keep), [(remap[u], remap[v]) for u, v in g.edges
                                        if u not in drop and v not in drop])


# ---------------------------------------------------------------- selectors

def test_sc_selection_semantics_exhaustive():
    g, idx = sc_gadget()
    value, cycles = brute_cycle_packing(g)
    assert value == 1
    ports = {idx["a"], idx["b"], idx["c"]}
    # no cycle at all once the three ports are gone
    assert brute_cycle_packing(without(g, ports))[0] == 0
    # each single color is selectable with the other two left free
    for color in ("a", "b", "c"):
        others = {idx[c] for c in ("a", "b", "c") if c != color}
        value, cycles = brute_cycle_packing(without(g, others))
        assert value == 1


def test_expel_exclusion_exhaustive():
    idx = {"u": 1, "up": 2, "v": 3, "vp": 4}
    g = graph_from_edges(4, [(1, 3), (1, 4), (2, 3), (2, 4), (3, 4)])
    assert brute_cycle_packing(g)[0] == 1
    # u externally used: the inner cycle must pick up u'
    value, cycles = brute_cycle_packing(without(g, {idx["u"]}))
    assert value == 1
    # with both terminals taken there is no inner cycle left
    assert brute_cycle_packing(without(g, {idx["u"], idx["up"]}))[0] == 0


def test_double_expel_exclusion_exhaustive():
    idx = {"u": 1, "up": 2, "upp": 3, "v": 4, "vp": 5}
    g = graph_from_edges(5, [(1, 4), (1, 5), (2, 4), (3, 5), (2, 3), (4, 5)])
    assert brute_cycle_packing(g)[0] == 1
    # u used externally: the survivor cycle runs through both u' and u''
    value, cycles = brute_cycle_packing(without(g, {1}))
    assert value == 1 and set(cycles[0]) == {1, 2, 3, 4}  # renumbered ids
    # u' used externally: the survivor must use u
    g_no_up = without(g, {2})
    value, cycles = brute_cycle_packing(g_no_up)
    assert value == 1
    assert 1 in cycles[0]  # u keeps id 1 after renumbering


# ----------------------------------------------------------- path crossing

def isolated_path_crossing():
    b = PlaneBuilder(flavor="cycle")
    a = b.vertex("A", -12, 0)
    bb = b.vertex("B", 12, 0)
    c = b.vertex("C", 0, -12)
    d = b.vertex("D", 0, 12)
    b.edge(a, bb, carrier=True, host="t")
    b.edge(c, d, carrier=True, host="t")
    b.resolve_crossings(expected_crossings=1)
    g, _ = b.finish()
    return g, b


def test_path_crossing_straight_traversal():
    g, b = isolated_path_crossing()
    assert g.n == 25  # 21 gadget vertices plus the four carrier endpoints
    # untouched gadget: exactly the four expel cycles
    base = solve_cycle_packing(g, 4)
    assert base.feasible
    assert not solve_cycle_packing(g, 5).feasible
    # closing A-B invites one straight traversal on top
    ab = Graph(n=g.n, edges=g.edges | {(min(b.names["A"], b.names["B"]),
                                        max(b.names["A"], b.names["B"]))})
    assert solve_cycle_packing(ab, 5).feasible
    assert not solve_cycle_packing(ab, 6).feasible


def test_path_crossing_turn_costs_a_cycle():
    g, b = isolated_path_crossing()
    # closing A-C only allows a turning traversal, which kills an expel
    corner = tuple(sorted((b.names["A"], b.names["C"])))
    ac = Graph(n=g.n, edges=g.edges | {corner})
    assert solve_cycle_packing(ac, 4).feasible
    assert not solve_cycle_packing(ac, 5).feasible


# ----------------------------------------------------------- whole outputs

def test_cycle_packing_single_vertex():
    g, rs = single_vertex()
    out = reduce_planar3col_to_cycle_packing(g, rs)
    assert out.l0 == 1
    assert brute_cycle_packing(out.graph.graph)[0] == 1
    res = solve_cycle_packing(out.graph.graph, out.l0)
    assert res.feasible
    assert all(r.ok for r in validate_reduction(out))


def test_cycle_packing_single_edge_witness_roundtrip():
    g, rs = single_edge()
    out = reduce_planar3col_to_cycle_packing(g, rs)
    assert out.l0 == 2 * 1 + 3 + 12 * 4
    cycles = cp_forward_witness(out, {1: 1, 2: 2})
    assert len(cycles) == out.l0
    assert verify_witness("cycle-packing", (out.graph.graph, out.l0), cycles) is None
    extracted = cp_backward_witness(out, cycles)
    assert extracted[1] != extracted[2]
    assert all(r.ok for r in validate_reduction(out))


def test_cycle_packing_all_proper_colorings():
    g, rs = single_edge()
    out = reduce_planar3col_to_cycle_packing(g, rs)
    for c1 in (1, 2, 3):
        for c2 in (1, 2, 3):
            if c1 == c2:
                continue
            cycles = cp_forward_witness(out, {1: c1, 2: c2})
            assert verify_witness("cycle-packing",
                                  (out.graph.graph, out.l0), cycles) is None
            assert cp_backward_witness(out, cycles) == {1: c1, 2: c2}


def test_disjoint_paths_single_vertex():
    g, rs = single_vertex()
    out = reduce_planar3col_to_disjoint_paths(g, rs)
    for color in (1, 2, 3):
        paths = dp_forward_witness(out, {1: color})
        assert verify_witness("disjoint-paths",
                              (out.graph.graph, out.requests), paths) is None
    assert all(r.ok for r in validate_reduction(out))


def test_disjoint_paths_single_edge_witness_roundtrip():
    g, rs = single_edge()
    out = reduce_planar3col_to_disjoint_paths(g, rs)
    paths = dp_forward_witness(out, {1: 3, 2: 1})
    assert verify_witness("disjoint-paths",
                          (out.graph.graph, out.requests), paths) is None
    assert dp_backward_witness(out, paths) == {1: 3, 2: 1}
    assert all(r.ok for r in validate_reduction(out))


def test_disjoint_paths_same_color_collides():
    g, rs = single_edge()
    out = reduce_planar3col_to_disjoint_paths(g, rs)
    paths = dp_forward_witness(out, {1: 2, 2: 2})
    bad = verify_witness("disjoint-paths", (out.graph.graph, out.requests), paths)
    assert bad is not None and bad.reason == "disjointness"


def test_unsupported_layouts_raise():
    g = graph_from_edges(3, [(1, 2), (2, 3), (1, 3)])
    rs = RotationSystem({1: (2, 3), 2: (1, 3), 3: (1, 2)})
    with pytest.raises(LayoutUnsupported):
        reduce_planar3col_to_cycle_packing(g, rs)
    with pytest.raises(LayoutUnsupported):
        reduce_planar3col_to_disjoint_paths(g, rs)


def test_degree_precondition_enforced():
    g = graph_from_edges(7, [(1, k) for k in range(2, 8)])
    rot = {1: tuple(range(2, 8))}
    rot.update({k: (1,) for k in range(2, 8)})
    with pytest.raises(ValueError):
        reduce_planar3col_to_cycle_packing(g, RotationSystem(rot))


def test_generated_instances_are_deterministic():
    from branchdp.io import serialize_instance

    g, rs = single_edge()
    out1 = reduce_planar3col_to_cycle_packing(g, rs)
    out2 = reduce_planar3col_to_cycle_packing(g, rs)
    s1 = serialize_instance(out1.graph, out1.requests, out1.embedding)
    s2 = serialize_instance(out2.graph, out2.requests, out2.embedding)
    assert s1 == s2
    assert out1.registry.to_jsonl() == out2.registry.to_jsonl()
