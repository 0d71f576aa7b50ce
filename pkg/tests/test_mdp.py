from __future__ import annotations

import itertools
import random

from branchdp.decomp import build_branch_decomposition, root_decomposition
from branchdp.graphs import (ColoredGraph, RequestSet, all_zero,
                             graph_from_edges, grid)
from branchdp.mdp import solve_disjoint_paths, solve_mdp
from branchdp.oracle import brute_mono_disjoint_paths, verify_witness


def test_single_edge_request():
    g = graph_from_edges(2, [(1, 2)])
    res = solve_mdp(all_zero(g), RequestSet(pairs=((1, 2),)))
    assert res.feasible and res.witness == [[1, 2]]


def test_color_blocked_path():
    g = graph_from_edges(3, [(1, 2), (2, 3)])
    cg = ColoredGraph(graph=g, colors={1: 1, 2: 2, 3: 1})
    res = solve_mdp(cg, RequestSet(pairs=((1, 3),)))
    assert not res.feasible and res.witness is None


def test_wildcard_middle_vertex():
    g = graph_from_edges(3, [(1, 2), (2, 3)])
    cg = ColoredGraph(graph=g, colors={1: 1, 3: 1})
    res = solve_mdp(cg, RequestSet(pairs=((1, 3),)))
    assert res.feasible and res.witness == [[1, 2, 3]]


def test_k4_two_direct_requests():
    g = graph_from_edges(4, list(itertools.combinations(range(1, 5), 2)))
    res = solve_disjoint_paths(g, RequestSet(pairs=((1, 2), (3, 4))))
    assert res.feasible


def test_p4_two_crossing_requests_infeasible():
    g = graph_from_edges(4, [(1, 2), (2, 3), (3, 4)])
    res = solve_disjoint_paths(g, RequestSet(pairs=((1, 3), (2, 4))))
    assert not res.feasible


def test_no_requests_trivially_yes():
    g = graph_from_edges(3, [(1, 2)])
    res = solve_mdp(all_zero(g), RequestSet(pairs=()))
    assert res.feasible and res.witness == []


def test_degree_zero_terminal_is_no():
    g = graph_from_edges(3, [(1, 2)])
    res = solve_mdp(all_zero(g), RequestSet(pairs=((1, 3),)))
    assert not res.feasible


def test_shared_terminal_is_no():
    g = graph_from_edges(4, [(1, 2), (1, 3), (1, 4), (2, 3), (3, 4)])
    res = solve_disjoint_paths(g, RequestSet(pairs=((1, 2), (1, 4))))
    assert not res.feasible


def test_two_requests_need_detour():
    # 2x3 grid: route (1,3) along the top and (4,6) along the bottom
    g = grid(2, 3)
    res = solve_disjoint_paths(g, RequestSet(pairs=((1, 3), (4, 6))))
    assert res.feasible
    bad = verify_witness("disjoint-paths", (g, RequestSet(pairs=((1, 3), (4, 6)))),
                         res.witness)
    assert bad is None


def test_colored_grid_forced_routing():
    # colors force one request around the other
    g = grid(2, 3)
    cg = ColoredGraph(graph=g, colors={2: 1, 5: 2})
    req = RequestSet(pairs=((1, 3), (4, 6)))
    ok, _ = brute_mono_disjoint_paths(cg, req)
    res = solve_mdp(cg, req)
    assert res.feasible == ok


def random_instance(rng: random.Random):
    n = rng.randrange(2, 9)
    edges = [e for e in itertools.combinations(range(1, n + 1), 2)
             if rng.random() < 0.45]
    g = graph_from_edges(n, edges)
    colors = {v: rng.randrange(0, 4) for v in g.vertices()
              if rng.random() < 0.7}
    cg = ColoredGraph(graph=g, colors=colors)
    vs = list(g.vertices())
    rng.shuffle(vs)
    m = rng.randrange(1, 4)
    pairs = []
    while len(pairs) < m and len(vs) >= 2:
        s, t = vs.pop(), vs.pop()
        pairs.append((s, t))
    return cg, RequestSet(pairs=tuple(pairs))


def test_oracle_equivalence_random_sample():
    rng = random.Random(1234)
    checked = 0
    for _ in range(120):
        cg, req = random_instance(rng)
        if cg.graph.m == 0:
            continue
        ok, _ = brute_mono_disjoint_paths(cg, req)
        res = solve_mdp(cg, req)
        assert res.feasible == ok, f"mismatch on {cg} {req}"
        if res.feasible:
            assert verify_witness("mono-disjoint-paths", (cg, req), res.witness) is None
        checked += 1
    assert checked > 80


def test_oracle_equivalence_both_strategies():
    rng = random.Random(77)
    for _ in range(40):
        cg, req = random_instance(rng)
        if cg.graph.m == 0:
            continue
        ok, _ = brute_mono_disjoint_paths(cg, req)
        for strategy in ("caterpillar-by-edge-order", "from-tree-decomposition"):
            rbd = root_decomposition(cg.graph,
                                     build_branch_decomposition(cg.graph, strategy))
            assert solve_mdp(cg, req, rbd).feasible == ok
