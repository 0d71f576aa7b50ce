from __future__ import annotations

import itertools
import random

import pytest

from branchdp.graphs import (ColoredGraph, RequestSet, all_zero,
                             graph_from_edges, grid)
from branchdp.oracle import (CapExceeded, HittingSetInstance, brute_3coloring,
                             brute_cycle_packing, brute_hitting_set,
                             brute_mono_disjoint_paths, verify_witness)


def triangle():
    return graph_from_edges(3, [(1, 2), (2, 3), (1, 3)])


def k4():
    return graph_from_edges(4, list(itertools.combinations(range(1, 5), 2)))


def test_cycle_packing_triangle():
    value, cycles = brute_cycle_packing(triangle())
    assert value == 1
    assert verify_witness("cycle-packing", (triangle(), 1), cycles) is None


def test_cycle_packing_two_triangles():
    g = graph_from_edges(6, [(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6)])
    value, cycles = brute_cycle_packing(g)
    assert value == 2


def test_cycle_packing_k4():
    value, _ = brute_cycle_packing(k4())
    assert value == 1


def test_cycle_packing_tree():
    g = graph_from_edges(5, [(1, 2), (2, 3), (3, 4), (3, 5)])
    value, cycles = brute_cycle_packing(g)
    assert value == 0 and cycles == []


def test_cycle_packing_4x4_grid_packs_four():
    value, cycles = brute_cycle_packing(grid(4, 4), cap=16)
    assert value == 4
    assert verify_witness("cycle-packing", (grid(4, 4), 4), cycles) is None


def test_cycle_packing_cap():
    with pytest.raises(CapExceeded):
        brute_cycle_packing(grid(4, 4))


def test_cycle_packing_monotone_under_edge_addition():
    rng = random.Random(11)
    for _ in range(15):
        n = rng.randrange(3, 8)
        all_edges = list(itertools.combinations(range(1, n + 1), 2))
        rng.shuffle(all_edges)
        cut = rng.randrange(0, len(all_edges))
        g1 = graph_from_edges(n, all_edges[:cut])
        extra = all_edges[cut:cut + 2]
        g2 = graph_from_edges(n, all_edges[:cut] + extra)
        assert brute_cycle_packing(g1)[0] <= brute_cycle_packing(g2)[0]


def test_mono_paths_single_edge():
    g = graph_from_edges(2, [(1, 2)])
    ok, paths = brute_mono_disjoint_paths(all_zero(g), RequestSet(pairs=((1, 2),)))
    assert ok and paths == [[1, 2]]


def test_mono_paths_blocked_by_color():
    g = graph_from_edges(3, [(1, 2), (2, 3)])
    cg = ColoredGraph(graph=g, colors={1: 1, 2: 2, 3: 1})
    ok, _ = brute_mono_disjoint_paths(cg, RequestSet(pairs=((1, 3),)))
    assert not ok


def test_mono_paths_wildcard_passes():
    g = graph_from_edges(3, [(1, 2), (2, 3)])
    cg = ColoredGraph(graph=g, colors={1: 1, 3: 1})
    ok, paths = brute_mono_disjoint_paths(cg, RequestSet(pairs=((1, 3),)))
    assert ok and paths == [[1, 2, 3]]


def test_mono_paths_respects_disjointness():
    g = graph_from_edges(4, [(1, 2), (2, 3), (3, 4)])
    ok, _ = brute_mono_disjoint_paths(all_zero(g), RequestSet(pairs=((1, 3), (2, 4))))
    assert not ok


def test_3coloring_odd_cycle():
    g = graph_from_edges(5, [(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)])
    coloring = brute_3coloring(g)
    assert coloring is not None
    assert verify_witness("3-coloring", g, coloring) is None


def test_3coloring_k4_unsat():
    assert brute_3coloring(k4()) is None


def test_hitting_set_trivial():
    inst = HittingSetInstance(k=1, sets=(frozenset({(1, 1)}),))
    sel = brute_hitting_set(inst)
    assert sel == {(1, 1)}
    assert verify_witness("hitting-set", inst, sel) is None


def test_hitting_set_row_conflict_unsat():
    inst = HittingSetInstance(k=2, sets=(frozenset({(1, 1)}), frozenset({(1, 2)})))
    assert brute_hitting_set(inst) is None


def test_hitting_set_one_set_two_options():
    inst = HittingSetInstance(k=2, sets=(frozenset({(1, 1), (2, 1)}),))
    sel = brute_hitting_set(inst)
    assert sel is not None and verify_witness("hitting-set", inst, sel) is None


def test_hitting_set_rejects_two_cells_per_row():
    with pytest.raises(ValueError):
        HittingSetInstance(k=2, sets=(frozenset({(1, 1), (1, 2)}),))


def test_verify_rejects_shared_vertex_paths():
    g = graph_from_edges(4, [(1, 2), (2, 3), (2, 4)])
    req = RequestSet(pairs=((1, 3), (1, 4)))
    bad = verify_witness("disjoint-paths", (g, req), [[1, 2, 3], [1, 2, 4]])
    assert bad is not None and bad.reason == "disjointness"


def test_verify_rejects_color_mix():
    g = graph_from_edges(3, [(1, 2), (2, 3)])
    cg = ColoredGraph(graph=g, colors={1: 1, 2: 2})
    req = RequestSet(pairs=((1, 3),))
    bad = verify_witness("mono-disjoint-paths", (cg, req), [[1, 2, 3]])
    assert bad is not None and bad.reason == "monochromatic"


def test_verify_rejects_non_cycle():
    bad = verify_witness("cycle-packing", (triangle(), 1), [[1, 2]])
    assert bad is not None


def test_verifier_accepts_own_witnesses_on_random_instances():
    rng = random.Random(5)
    for _ in range(30):
        n = rng.randrange(3, 8)
        edges = [e for e in itertools.combinations(range(1, n + 1), 2)
                 if rng.random() < 0.5]
        g = graph_from_edges(n, edges)
        value, cycles = brute_cycle_packing(g)
        assert verify_witness("cycle-packing", (g, value), cycles) is None
        colors = {v: rng.randrange(0, 3) for v in g.vertices()}
        cg = ColoredGraph(graph=g, colors=colors)
        pool = [v for v in g.vertices()]
        rng.shuffle(pool)
        if n >= 4:
            req = RequestSet(pairs=((pool[0], pool[1]), (pool[2], pool[3])))
            ok, paths = brute_mono_disjoint_paths(cg, req)
            if ok:
                assert verify_witness("mono-disjoint-paths", (cg, req), paths) is None
