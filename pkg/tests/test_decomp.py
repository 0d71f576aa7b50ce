from __future__ import annotations

import itertools
import random

import pytest

from branchdp.decomp import (BranchDecomposition, InvalidDecomposition,
                             TreeDecomposition, branch_from_tree_decomposition,
                             build_branch_decomposition, check_sc_candidate,
                             check_width_relation, middle_sets,
                             min_fill_tree_decomposition, root_decomposition,
                             validate_tree_decomposition)
from branchdp.embeddings import RotationSystem
from branchdp.graphs import graph_from_edges, grid


def triangle():
    return graph_from_edges(3, [(1, 2), (2, 3), (1, 3)])


def star_decomposition_of_triangle():
    return BranchDecomposition(
        nodes=frozenset({1, 2, 3, 4}),
        tree_edges=frozenset({(1, 4), (2, 4), (3, 4)}),
        leaf_map={1: (1, 2), 2: (1, 3), 3: (2, 3)},
    )


def test_single_bag_decomposition_of_triangle():
    td = TreeDecomposition(bags={1: frozenset({1, 2, 3})}, tree_edges=frozenset())
    report = validate_tree_decomposition(triangle(), td)
    assert report.ok and report.width == 2


def test_path_decomposition_of_p3():
    g = graph_from_edges(3, [(1, 2), (2, 3)])
    td = TreeDecomposition(bags={1: frozenset({1, 2}), 2: frozenset({2, 3})},
                           tree_edges=frozenset({(1, 2)}))
    report = validate_tree_decomposition(g, td)
    assert report.ok and report.width == 1
    assert td.is_path()


def test_edge_coverage_violation_reported():
    g = graph_from_edges(3, [(2, 3)])
    td = TreeDecomposition(bags={1: frozenset({1, 2}), 2: frozenset({3})},
                           tree_edges=frozenset({(1, 2)}))
    report = validate_tree_decomposition(g, td)
    assert not report.ok
    assert report.violation.kind == "edge-coverage"
    assert report.violation.witness == (2, 3)


def test_connectivity_violation_reported():
    g = graph_from_edges(3, [(1, 2), (2, 3)])
    td = TreeDecomposition(bags={1: frozenset({1, 2}), 2: frozenset({2, 3}),
                                 3: frozenset({1, 3})},
                           tree_edges=frozenset({(1, 2), (2, 3)}))
    report = validate_tree_decomposition(g, td)
    assert not report.ok
    assert report.violation.kind == "connectivity"


def test_middle_sets_of_triangle_star():
    mids, width = middle_sets(triangle(), star_decomposition_of_triangle())
    assert width == 2
    assert all(len(m) == 2 for m in mids.values())


def test_middle_set_empty_for_disjoint_edges():
    g = graph_from_edges(4, [(1, 2), (3, 4)])
    bd = BranchDecomposition(nodes=frozenset({1, 2}),
                             tree_edges=frozenset({(1, 2)}),
                             leaf_map={1: (1, 2), 2: (3, 4)})
    mids, width = middle_sets(g, bd)
    assert mids[(1, 2)] == frozenset()
    assert width == 0


def test_middle_set_of_p3():
    g = graph_from_edges(3, [(1, 2), (2, 3)])
    bd = BranchDecomposition(nodes=frozenset({1, 2}),
                             tree_edges=frozenset({(1, 2)}),
                             leaf_map={1: (1, 2), 2: (2, 3)})
    mids, width = middle_sets(g, bd)
    assert mids[(1, 2)] == frozenset({2})
    assert width == 1


def test_leaf_map_must_be_bijection():
    g = triangle()
    bd = BranchDecomposition(nodes=frozenset({1, 2}),
                             tree_edges=frozenset({(1, 2)}),
                             leaf_map={1: (1, 2), 2: (1, 2)})
    with pytest.raises(InvalidDecomposition):
        middle_sets(g, bd)


def test_rooting_triangle_star_preserves_width_and_counts():
    g = triangle()
    rbd = root_decomposition(g, star_decomposition_of_triangle())
    assert rbd.width == 2
    # subdividing one of the three star edges and attaching the root gives
    # five directed tree edges (two nodes added to a four-node tree)
    assert len(rbd.mid) == 5
    assert rbd.mid[rbd.root_edge] == frozenset()
    # the subdivision halves inherit the split edge's middle set
    halves = [e for e in rbd.mid
              if e != rbd.root_edge and rbd.mid[e] == frozenset({1, 2})]
    assert len(halves) == 2


def test_rooting_single_edge_graph():
    g = graph_from_edges(2, [(1, 2)])
    bd = build_branch_decomposition(g)
    rbd = root_decomposition(g, bd)
    assert rbd.mid[rbd.root_edge] == frozenset()
    assert len(rbd.leaf_edge) == 1


def test_rooting_two_edge_graph_has_three_tree_edges_total():
    g = graph_from_edges(3, [(1, 2), (2, 3)])
    bd = build_branch_decomposition(g)
    rbd = root_decomposition(g, bd)
    assert len(rbd.mid) == 3  # the subdivided tree edge plus the root edge
    assert rbd.mid[rbd.root_edge] == frozenset()


def test_build_caterpillar_on_triangle():
    g = triangle()
    bd = build_branch_decomposition(g)
    _, width = middle_sets(g, bd)
    assert width == 2


def test_build_from_tree_decomposition_grid33():
    g = grid(3, 3)
    bd = build_branch_decomposition(g, "from-tree-decomposition")
    _, width = middle_sets(g, bd)
    assert width <= 4


def test_min_fill_width_transfer_bound():
    rng = random.Random(7)
    for _ in range(15):
        n = rng.randrange(3, 9)
        edges = [e for e in itertools.combinations(range(1, n + 1), 2)
                 if rng.random() < 0.5]
        if not edges:
            continue
        g = graph_from_edges(n, edges)
        td = min_fill_tree_decomposition(g)
        assert validate_tree_decomposition(g, td).ok
        bd = branch_from_tree_decomposition(g, td)
        _, bw = middle_sets(g, bd)
        assert bw <= td.width() + 1


def test_edgeless_graph_rejected():
    with pytest.raises(InvalidDecomposition):
        build_branch_decomposition(graph_from_edges(3, []))


def test_width_relation_triangle():
    g = triangle()
    bd = build_branch_decomposition(g)
    td = min_fill_tree_decomposition(g)
    rel = check_width_relation(g, bd, td)
    assert rel.bw_width == 2 and rel.tw_width == 2
    assert rel.consistent


def test_width_relation_grid33():
    g = grid(3, 3)
    bd = build_branch_decomposition(g, "from-tree-decomposition")
    td = min_fill_tree_decomposition(g)
    rel = check_width_relation(g, bd, td)
    assert rel.lower_ok


def test_width_relation_star_logged_not_asserted():
    g = graph_from_edges(4, [(1, 2), (1, 3), (1, 4)])
    bd = build_branch_decomposition(g)
    td = min_fill_tree_decomposition(g)
    rel = check_width_relation(g, bd, td)
    assert rel.bw_width == 1 and rel.tw_width == 1
    assert rel.upper_ok is None
    assert rel.consistent


def test_width_relation_needs_three_edges():
    g = graph_from_edges(3, [(1, 2), (2, 3)])
    bd = build_branch_decomposition(g)
    td = min_fill_tree_decomposition(g)
    with pytest.raises(ValueError):
        check_width_relation(g, bd, td)


def test_middle_set_containment_property():
    # mid(e) is covered by the children's middle sets, on small random graphs
    rng = random.Random(3)
    for _ in range(20):
        n = rng.randrange(2, 7)
        edges = [e for e in itertools.combinations(range(1, n + 1), 2)
                 if rng.random() < 0.6]
        if not edges:
            continue
        g = graph_from_edges(n, edges)
        rbd = root_decomposition(g, build_branch_decomposition(g))
        for e, kids in rbd.children.items():
            if len(kids) == 2:
                assert rbd.mid[e] <= rbd.mid[kids[0]] | rbd.mid[kids[1]]
            for c in kids:
                stray = (rbd.mid[kids[0]] & rbd.mid[kids[1]]) - rbd.mid[e] if len(kids) == 2 else frozenset()
                # vertices forgotten here never reappear above
                for anc, anc_kids in rbd.children.items():
                    if e in anc_kids:
                        assert not (stray & rbd.mid[anc])


def sc_triangle_setup():
    g = triangle()
    rs = RotationSystem({1: (2, 3), 2: (1, 3), 3: (1, 2)})
    rbd = root_decomposition(g, star_decomposition_of_triangle())
    return g, rs, rbd


def test_sc_candidate_triangle_all_ok():
    g, rs, rbd = sc_triangle_setup()
    flags = check_sc_candidate(g, rs, rbd)
    assert all(info is not None for info in flags.values())


def test_sc_candidate_empty_mid_vacuous():
    g = graph_from_edges(4, [(1, 2), (3, 4)])
    rs = RotationSystem({1: (2,), 2: (1,), 3: (4,), 4: (3,)})
    rbd = root_decomposition(g, build_branch_decomposition(g))
    flags = check_sc_candidate(g, rs, rbd)
    assert flags[rbd.root_edge] is not None


def test_noose_search_fails_without_shared_faces():
    # opposite corner and interior vertex of a 4x4 grid lie on no common face
    from fractions import Fraction

    from branchdp.decomp import _find_noose, _vertex_faces
    from branchdp.embeddings import rotation_from_coordinates
    from branchdp.graphs import grid_coordinates

    g = grid(4, 4)
    coords = {v: (Fraction(x), Fraction(y)) for v, (x, y) in grid_coordinates(4, 4).items()}
    rs = rotation_from_coordinates(g, coords)
    vfaces = _vertex_faces(g, rs)
    assert not (vfaces[6] & vfaces[16])
    inside = frozenset({e for e in g.edges if 6 in e})
    assert _find_noose(g, rs, vfaces, [6, 16], inside) is None


def test_grid_embedding_sc_flags_exist():
    from branchdp.embeddings import rotation_from_coordinates
    from branchdp.graphs import grid_coordinates
    from fractions import Fraction

    g = grid(2, 3)
    coords = {v: (Fraction(x), Fraction(y)) for v, (x, y) in grid_coordinates(2, 3).items()}
    rs = rotation_from_coordinates(g, coords)
    rbd = root_decomposition(g, build_branch_decomposition(g))
    flags = check_sc_candidate(g, rs, rbd)
    assert flags[rbd.root_edge] is not None
    assert sum(1 for info in flags.values() if info is not None) >= len(flags) // 2
