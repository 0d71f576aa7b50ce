from __future__ import annotations

import itertools
import random

import pytest

from branchdp.decomp import validate_tree_decomposition
from branchdp.embeddings import euler_check
from branchdp.oracle import (HittingSetInstance, brute_hitting_set,
                             brute_mono_disjoint_paths, verify_witness)
from branchdp.reductions.hittingset import (hs_backward_witness,
                                            hs_forward_witness, reduce_hs_to_mdp)


def all_k2_families(max_sets: int):
    cells_by_row = {1: [None, (1, 1), (1, 2)], 2: [None, (2, 1), (2, 2)]}
    single_sets = []
    for c1 in cells_by_row[1]:
        for c2 in cells_by_row[2]:
            s = frozenset(x for x in (c1, c2) if x is not None)
            single_sets.append(s)
    single_sets = sorted(set(single_sets), key=sorted)
    yield HittingSetInstance(k=2, sets=())
    for s in single_sets:
        yield HittingSetInstance(k=2, sets=(s,))
    if max_sets >= 2:
        for s1, s2 in itertools.combinations_with_replacement(single_sets, 2):
            yield HittingSetInstance(k=2, sets=(s1, s2))


def test_trivial_instance_k1():
    inst = HittingSetInstance(k=1, sets=())
    out = reduce_hs_to_mdp(inst)
    assert len(out.requests) == 1
    assert euler_check(out.graph.graph, out.embedding).planar
    ok, _ = brute_mono_disjoint_paths(out.graph, out.requests)
    assert ok


def test_request_count_formula():
    for k, m in [(1, 0), (2, 1), (2, 2), (3, 2), (4, 3), (5, 2)]:
        sets = tuple(frozenset({(r, 1)}) for r in range(1, min(m + 1, k + 1)))
        sets = sets + tuple(frozenset({(1, 1)}) for _ in range(m - len(sets)))
        inst = HittingSetInstance(k=k, sets=sets[:m])
        out = reduce_hs_to_mdp(inst)
        assert len(out.requests) == k + (k - 1) * m


def test_path_decomposition_validates_with_bag_bound():
    rng = random.Random(4)
    for k in range(1, 6):
        for m in range(0, 3):
            sets = []
            for _ in range(m):
                rows = rng.sample(range(1, k + 1), rng.randrange(0, k + 1))
                sets.append(frozenset((r, rng.randrange(1, k + 1)) for r in rows))
            inst = HittingSetInstance(k=k, sets=tuple(sets))
            out = reduce_hs_to_mdp(inst)
            report = validate_tree_decomposition(out.graph.graph,
                                                 out.path_decomposition)
            assert report.ok
            assert out.path_decomposition.is_path()
            max_bag = max(len(b) for b in out.path_decomposition.bags.values())
            assert max_bag <= 2 * (k - 1) + 5 * k - 2


def test_embeddings_planar():
    rng = random.Random(8)
    for k in (2, 3, 4):
        sets = tuple(frozenset({(r, rng.randrange(1, k + 1))})
                     for r in range(1, k + 1))
        inst = HittingSetInstance(k=k, sets=sets)
        out = reduce_hs_to_mdp(inst)
        assert euler_check(out.graph.graph, out.embedding).planar


def test_equivalence_exhaustive_k2():
    for inst in all_k2_families(2):
        out = reduce_hs_to_mdp(inst)
        hs = brute_hitting_set(inst)
        ok, _ = brute_mono_disjoint_paths(out.graph, out.requests, cap=40)
        assert (hs is not None) == ok, f"mismatch for {inst}"


def test_forward_and_backward_witnesses():
    inst = HittingSetInstance(k=2, sets=(frozenset({(1, 1)}),
                                         frozenset({(1, 1), (2, 2)})))
    out = reduce_hs_to_mdp(inst)
    sel = brute_hitting_set(inst)
    assert sel is not None
    paths = hs_forward_witness(out, sel)
    assert verify_witness("mono-disjoint-paths", (out.graph, out.requests), paths) is None
    back = hs_backward_witness(out, paths)
    assert verify_witness("hitting-set", inst, back) is None


def test_unsat_k2_maps_to_no():
    inst = HittingSetInstance(k=2, sets=(frozenset({(1, 1)}), frozenset({(1, 2)})))
    assert brute_hitting_set(inst) is None
    out = reduce_hs_to_mdp(inst)
    ok, _ = brute_mono_disjoint_paths(out.graph, out.requests, cap=40)
    assert not ok


def test_forward_witness_rejects_nonhitting_selection():
    inst = HittingSetInstance(k=2, sets=(frozenset({(1, 1)}),))
    out = reduce_hs_to_mdp(inst)
    with pytest.raises(ValueError):
        hs_forward_witness(out, {(1, 2), (2, 1)})
