"""Cycle packing by dynamic programming over a rooted branch decomposition.

A table entry at a tree edge is (X, M, l): X holds middle-set vertices whose
two structure edges are already in place, M matches the open path ends lying
in the middle set, and l counts completed cycles (capped at the target, and
only the largest l per (X, M) is kept). Merging two child entries glues the
child paths at shared end vertices; glue points go to X, path components
whose ends survive in the middle set become the new M, and closed components
bump the cycle count.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .decomp import NooseInfo, RootedBranchDecomposition
from .graphs import Graph
from .noncross import is_noncrossing_matching

Matching = frozenset[frozenset[int]]
StateKey = tuple[frozenset[int], Matching]
AuxEdge = tuple[frozenset[int], int]  # (matched pair, child side)

EMPTY_MATCHING: Matching = frozenset()


@dataclass
class CPStats:
    """Per-edge table sizes for the size-bound monitor."""

    max_table: int = 0
    tables: list[tuple[int, int]] = field(default_factory=list)  # (|mid|, |table|)

    def record(self, mid_size: int, table_size: int) -> None:
        self.max_table = max(self.max_table, table_size)
        self.tables.append((mid_size, table_size))


@dataclass(frozen=True)
class CPResult:
    feasible: bool
    witness: list[list[int]] | None
    max_cycles: int
    stats: CPStats


class PruneError(ValueError):
    pass


def _components(m1: Matching, m2: Matching):
    """Split the union multigraph of two matchings into path and cycle
    components. Every vertex has at most one edge per side, so components
    are simple. Paths come back as (end1, end2, edge chain), cycles as edge
    chains; chain edges are (pair, side) in walk order.
    """
    inc: dict[int, list[AuxEdge]] = {}
    for side, matching in ((1, m1), (2, m2)):
        for pair in matching:
            for v in pair:
                inc.setdefault(v, []).append((pair, side))
    unused: set[AuxEdge] = {(pair, side) for side, m in ((1, m1), (2, m2)) for pair in m}

    def walk(start: int, edge: AuxEdge):
        chain = [edge]
        unused.discard(edge)
        cur = start
        while True:
            nxt = next(x for x in chain[-1][0] if x != cur)
            options = [e for e in inc[nxt] if e in unused]
            if not options:
                return nxt, chain
            unused.discard(options[0])
            chain.append(options[0])
            cur = nxt

    paths = []
    for start in sorted(inc):
        if len(inc[start]) != 1:
            continue
        edge = inc[start][0]
        if edge not in unused:
            continue
        end, chain = walk(start, edge)
        paths.append((start, end, chain))
    cycles = []
    while unused:
        edge = min(unused, key=lambda e: (sorted(e[0]), e[1]))
        start = min(edge[0])
        end, chain = walk(start, edge)
        assert end == start, "leftover component must close into a cycle"
        cycles.append(chain)
    return paths, cycles


def merge_cp_states(s1: tuple[frozenset[int], Matching, int],
                    s2: tuple[frozenset[int], Matching, int],
                    mid_e: frozenset[int], l0: int):
    """Combine two child states. Yields at most one (state, trace) pair; the
    trace records, per surviving pair, the chain of child pairs realizing it,
    plus the chains that closed into cycles.

    Combinations die when the children overlap illegally or some open end
    falls outside the parent middle set.
    """
    x1, m1, l1 = s1
    x2, m2, l2 = s2
    set_m1 = frozenset(v for p in m1 for v in p)
    set_m2 = frozenset(v for p in m2 for v in p)
    if x1 & (x2 | set_m2) or x2 & (x1 | set_m1):
        return
    paths, cycles = _components(m1, m2)

    new_pairs: dict[frozenset[int], list[AuxEdge]] = {}
    for end1, end2, chain in paths:
        if end1 not in mid_e or end2 not in mid_e:
            return
        new_pairs[frozenset((end1, end2))] = chain
    glue = set_m1 & set_m2
    new_x = (x1 | x2 | glue) & mid_e
    new_l = min(l1 + l2 + len(cycles), l0)
    state = (new_x, frozenset(new_pairs), new_l)
    yield state, (new_pairs, cycles)


def _leaf_states(edge: tuple[int, int], mid: frozenset[int]):
    u, v = edge
    states: list[tuple[tuple[frozenset[int], Matching, int], str | None]] = [
        ((frozenset(), EMPTY_MATCHING, 0), None)
    ]
    if u in mid and v in mid:
        # an edge with a degree-1 endpoint can never lie on a cycle
        states.append(((frozenset(), frozenset({frozenset((u, v))}), 0), "take"))
    return states


def solve_cycle_packing(g: Graph, l0: int, rbd: RootedBranchDecomposition | None = None,
                        prune: str = "none",
                        sc_info: dict | None = None, workers: int = 1) -> CPResult:
    """Decide whether g packs l0 vertex-disjoint cycles; on yes the result
    carries a witness that has already passed the independent verifier.

    prune="noncrossing" drops states whose matching crosses the noose order
    at edges flagged sc-ok; sc_info (from check_sc_candidate) is then
    required.
    """
    if l0 < 0:
        raise ValueError("l0 must be nonnegative")
    if prune not in ("none", "noncrossing"):
        raise ValueError(f"unknown prune mode {prune!r}")
    if prune == "noncrossing" and sc_info is None:
        raise PruneError("noncrossing pruning requires sphere-cut candidate info")
    stats = CPStats()
    if g.m == 0:
        return CPResult(feasible=l0 == 0, witness=[] if l0 == 0 else None,
                        max_cycles=0, stats=stats)
    if rbd is None:
        from .decomp import build_branch_decomposition, root_decomposition
        rbd = root_decomposition(g, build_branch_decomposition(g))

    cap = max(l0, 1)
    tables, back = _run_tables(g, rbd, cap, prune, sc_info, stats, workers)
    best = tables[rbd.root_edge].get((frozenset(), EMPTY_MATCHING), 0)
    feasible = best >= l0
    witness = None
    if feasible:
        if l0 == 0:
            witness = []
        else:
            _, cycles = _extract(rbd, back, rbd.root_edge,
                                 (frozenset(), EMPTY_MATCHING))
            witness = cycles[:l0]
            from .oracle import verify_witness
            bad = verify_witness("cycle-packing", (g, l0), witness)
            if bad is not None:
                raise AssertionError(f"internal witness failed verification: {bad}")
    return CPResult(feasible=feasible, witness=witness, max_cycles=best, stats=stats)


def max_cycle_packing(g: Graph, rbd: RootedBranchDecomposition | None = None,
                      prune: str = "none", sc_info: dict | None = None,
                      stats: CPStats | None = None, workers: int = 1) -> int:
    """Largest feasible cycle count (0 for edgeless graphs)."""
    if g.m == 0:
        return 0
    if rbd is None:
        from .decomp import build_branch_decomposition, root_decomposition
        rbd = root_decomposition(g, build_branch_decomposition(g))
    if stats is None:
        stats = CPStats()
    cap = max(g.n // 3, 1)
    tables, _ = _run_tables(g, rbd, cap, prune, sc_info, stats, workers)
    return tables[rbd.root_edge].get((frozenset(), EMPTY_MATCHING), 0)


def _prune_table(table, trace, edge, prune, sc_info):
    if prune != "noncrossing" or sc_info is None:
        return table, trace
    info: NooseInfo | None = sc_info.get(edge)
    if info is None or len(info.vertex_order) < 4:
        return table, trace
    order = info.vertex_order
    kept = {k: l for k, l in table.items()
            if is_noncrossing_matching([tuple(p) for p in k[1]], order)}
    return kept, {k: t for k, t in trace.items() if k in kept}


def _merge_rows(rows, table2, mid, l0):
    out = []
    for (x1, m1), l1 in rows:
        for (x2, m2), l2 in table2.items():
            for (nx, nm, nl), gtrace in merge_cp_states((x1, m1, l1), (x2, m2, l2), mid, l0):
                out.append(((nx, nm), nl, (x1, m1), (x2, m2), gtrace))
    return out


def _run_tables(g: Graph, rbd: RootedBranchDecomposition, l0: int, prune: str,
                sc_info: dict | None, stats: CPStats, workers: int = 1):
    tables: dict[tuple[int, int], dict[StateKey, int]] = {}
    back: dict[tuple[int, int], dict[StateKey, tuple]] = {}
    for edge in rbd.edges_bottom_up():
        mid = rbd.mid[edge]
        table: dict[StateKey, int] = {}
        trace: dict[StateKey, tuple] = {}
        kids = rbd.children.get(edge, ())
        if edge in rbd.leaf_edge:
            for (x, m, l), tag in _leaf_states(rbd.leaf_edge[edge], mid):
                table[(x, m)] = l
                trace[(x, m)] = ("leaf", tag)
        elif len(kids) == 1:
            child = kids[0]
            empty = (frozenset(), EMPTY_MATCHING, 0)
            for (cx, cm), cl in tables[child].items():
                for (nx, nm, nl), gtrace in merge_cp_states((cx, cm, cl), empty, mid, l0):
                    key = (nx, nm)
                    if table.get(key, -1) < nl:
                        table[key] = nl
                        trace[key] = ("merge1", child, (cx, cm), gtrace)
        else:
            c1, c2 = kids
            rows = list(tables[c1].items())
            if workers > 1 and len(rows) >= workers:
                # chunks are combined in submission order, so the resulting
                # table never depends on the worker count
                from concurrent.futures import ThreadPoolExecutor

                step = (len(rows) + workers - 1) // workers
                chunks = [rows[i:i + step] for i in range(0, len(rows), step)]
                with ThreadPoolExecutor(max_workers=workers) as pool:
                    results = list(pool.map(
                        lambda ch: _merge_rows(ch, tables[c2], mid, l0), chunks))
            else:
                results = [_merge_rows(rows, tables[c2], mid, l0)]
            for part in results:
                for key, nl, k1, k2, gtrace in part:
                    if table.get(key, -1) < nl:
                        table[key] = nl
                        trace[key] = ("merge", c1, k1, c2, k2, gtrace)
        table, trace = _prune_table(table, trace, edge, prune, sc_info)
        stats.record(len(mid), len(table))
        assert len(table) <= 6 ** len(mid) * max(l0, 1), (
            f"table at {edge} has {len(table)} entries, over the "
            f"6^{len(mid)} * {max(l0, 1)} bound")
        tables[edge] = table
        back[edge] = trace
    return tables, back


def _extract(rbd, back, edge, key):
    """Rebuild (paths, cycles) realizing a table entry: paths maps each
    matched pair to its vertex sequence, cycles are closed sequences."""
    entry = back[edge][key]
    if entry[0] == "leaf":
        _, tag = entry
        u, v = rbd.leaf_edge[edge]
        if tag == "take":
            return {frozenset((u, v)): [u, v]}, []
        return {}, []
    if entry[0] == "merge1":
        _, child, ckey, gtrace = entry
        paths, cycles = _extract(rbd, back, child, ckey)
        return _reglue(paths, {}, cycles, gtrace)
    _, c1, k1, c2, k2, gtrace = entry
    paths1, cycles1 = _extract(rbd, back, c1, k1)
    paths2, cycles2 = _extract(rbd, back, c2, k2)
    return _reglue(paths1, paths2, cycles1 + cycles2, gtrace)


def _reglue(paths1, paths2, cycles, gtrace):
    new_pairs, closed = gtrace
    sides = {1: paths1, 2: paths2}

    def chain_to_path(start: int, chain, close: bool):
        seq = [start]
        cur = start
        for pair, side in chain:
            seg = sides[side][pair]
            if seg[0] != cur:
                seg = list(reversed(seg))
            assert seg[0] == cur, "chain segments must share endpoints"
            seq.extend(seg[1:])
            cur = seq[-1]
        if close:
            assert seq[0] == seq[-1]
            seq = seq[:-1]
        return seq

    out_paths = {}
    for pair, chain in new_pairs.items():
        first_pair, _ = chain[0]
        start = next(x for x in sorted(pair) if x in first_pair)
        out_paths[pair] = chain_to_path(start, chain, close=False)
    out_cycles = list(cycles)
    for chain in closed:
        start = min(chain[0][0])
        out_cycles.append(chain_to_path(start, chain, close=True))
    return out_paths, out_cycles
