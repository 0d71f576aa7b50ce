from __future__ import annotations

import itertools

import pytest

from branchdp.embeddings import euler_check
from branchdp.graphs import graph_from_edges
from branchdp.oracle import brute_3coloring, verify_witness
from branchdp.reductions.planar3col import (cc_completions,
                                            planar3col_backward_witness,
                                            planar3col_forward_witness,
                                            reduce_3col_to_planar3col)


def k3():
    return graph_from_edges(3, [(1, 2), (2, 3), (1, 3)])


def k4():
    return graph_from_edges(4, list(itertools.combinations(range(1, 5), 2)))


def test_crossover_completions_cover_all_combos():
    table = cc_completions()
    assert set(table) == set(itertools.product((1, 2, 3), repeat=2))


def test_single_vertex_source():
    g = graph_from_edges(1, [])
    out = reduce_3col_to_planar3col(g)
    h = out.graph.graph
    assert euler_check(h, out.embedding).planar
    assert h.max_degree() <= 5
    coloring = brute_3coloring(h)
    assert coloring is not None


def test_structure_bounds_small_graphs():
    for n in range(1, 5):
        for bits in range(1 << (n * (n - 1) // 2)):
            pass  # covered exhaustively in acceptance; spot rules here
    g = k3()
    out = reduce_3col_to_planar3col(g)
    h = out.graph.graph
    assert h.max_degree() <= 5
    assert h.n <= 65 * g.n ** 2
    assert euler_check(h, out.embedding).planar


def test_k3_roundtrip_coloring():
    g = k3()
    out = reduce_3col_to_planar3col(g)
    h = out.graph.graph
    src = brute_3coloring(g)
    assert src is not None
    lifted = planar3col_forward_witness(out, src)
    assert verify_witness("3-coloring", h, lifted) is None
    recovered = planar3col_backward_witness(out, lifted)
    assert verify_witness("3-coloring", g, recovered) is None


def test_h_coloring_projects_to_source():
    g = graph_from_edges(4, [(1, 2), (2, 3), (3, 4), (1, 4)])
    out = reduce_3col_to_planar3col(g)
    coloring = brute_3coloring(out.graph.graph, timeout_s=60)
    assert coloring is not None
    recovered = planar3col_backward_witness(out, coloring)
    assert verify_witness("3-coloring", g, recovered) is None


@pytest.mark.slow
def test_k4_target_not_colorable():
    out = reduce_3col_to_planar3col(k4())
    assert brute_3coloring(out.graph.graph, timeout_s=60) is None


def test_forward_witness_on_paths_and_cycles():
    for g in (graph_from_edges(2, [(1, 2)]),
              graph_from_edges(4, [(1, 2), (2, 3), (3, 4)]),
              graph_from_edges(5, [(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)])):
        out = reduce_3col_to_planar3col(g)
        assert euler_check(out.graph.graph, out.embedding).planar
        assert out.graph.graph.max_degree() <= 5
        src = brute_3coloring(g)
        lifted = planar3col_forward_witness(out, src)
        assert verify_witness("3-coloring", out.graph.graph, lifted) is None
