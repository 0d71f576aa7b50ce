"""Exact brute-force solvers and independent certificate verifiers.

These are the ground truth the dynamic programs are tested against, so none
of them share code with the solvers they check.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass

from .graphs import ColoredGraph, Graph, RequestSet, colors_compatible, norm_edge


class CapExceeded(ValueError):
    pass


class SolveTimeout(RuntimeError):
    pass


def brute_cycle_packing(g: Graph, cap: int = 12) -> tuple[int, list[list[int]]]:
    """Maximum number of vertex-disjoint cycles, by subset DP.

    best(S) either skips min(S) or packs one simple cycle through it; the
    recursion visits each vertex subset at most once.
    """
    if g.n > cap:
        raise CapExceeded(f"{g.n} vertices exceeds cap {cap}")
    adj_bits = [0] * (g.n + 1)
    for u, v in g.edges:
        adj_bits[u] |= 1 << (v - 1)
        adj_bits[v] |= 1 << (u - 1)

    def cycles_through(v: int, mask: int):
        """Simple cycles through v inside mask, one orientation each."""
        out = []
        vbit = 1 << (v - 1)
        stack = [(v, vbit, (v,))]
        while stack:
            cur, used, path = stack.pop()
            nbrs = adj_bits[cur] & mask
            w = 1
            idx = 1
            while nbrs:
                if nbrs & 1:
                    wbit = 1 << (idx - 1)
                    if idx == v and len(path) >= 3 and path[1] < path[-1]:
                        out.append((used, path))
                    elif not (used & wbit) and idx > v:
                        stack.append((idx, used | wbit, path + (idx,)))
                nbrs >>= 1
                idx += 1
        return out

    memo: dict[int, tuple[int, tuple]] = {}

    def best(mask: int) -> tuple[int, tuple]:
        if mask == 0:
            return 0, ()
        if mask in memo:
            return memo[mask]
        v = (mask & -mask).bit_length()
        val, wit = best(mask & ~(1 << (v - 1)))
        for used, path in cycles_through(v, mask):
            sub_val, sub_wit = best(mask & ~used)
            if 1 + sub_val > val:
                val, wit = 1 + sub_val, (path,) + sub_wit
        memo[mask] = (val, wit)
        return val, wit

    full = (1 << g.n) - 1
    value, witness = best(full)
    return value, [list(c) for c in witness]


def _monochromatic(colors: list[int]) -> bool:
    nonzero = {c for c in colors if c != 0}
    return len(nonzero) <= 1


def brute_mono_disjoint_paths(cg: ColoredGraph, req: RequestSet,
                              cap: int = 14) -> tuple[bool, list[list[int]] | None]:
    """Exhaustive routing, one request at a time."""
    g = cg.graph
    if g.n > cap or len(req) > cap:
        raise CapExceeded(f"instance exceeds cap {cap}")
    req.validate_against(g)
    adj = g.adjacency()

    def route(i: int, used: set[int], acc: list[list[int]]):
        if i == len(req.pairs):
            return list(acc)
        s, t = req.pairs[i]
        if s in used or t in used:
            return None
        # DFS over simple monochromatic paths s..t avoiding used vertices
        stack = [([s], {s}, cg.color(s))]
        while stack:
            path, onpath, pathcolor = stack.pop()
            cur = path[-1]
            for w in sorted(adj[cur]):
                if w in used or w in onpath:
                    continue
                cw = cg.color(w)
                if pathcolor != 0 and cw != 0 and cw != pathcolor:
                    continue
                newcolor = pathcolor if cw == 0 else cw
                if w == t:
                    full = path + [t]
                    res = route(i + 1, used | set(full), acc + [full])
                    if res is not None:
                        return res
                else:
                    stack.append((path + [w], onpath | {w}, newcolor))
        return None

    result = route(0, set(), [])
    return (result is not None), result


BITS = {1: 0b001, 2: 0b010, 3: 0b100}
COLOR_OF_BIT = {0b001: 1, 0b010: 2, 0b100: 3}
POPCOUNT = [bin(i).count("1") for i in range(8)]


def brute_3coloring(g: Graph, timeout_s: float | None = None) -> dict[int, int] | None:
    """Proper 3-coloring or None, by most-constrained-first backtracking
    with unit propagation (trail-based, bitmask domains).

    Ties go to the highest-degree vertex, and the first branching vertex has
    its color fixed to break symmetry. Raises SolveTimeout when the budget
    runs out, which is reported distinctly from unsatisfiability.
    """
    n = g.n
    adj: list[list[int]] = [[] for _ in range(n + 1)]
    for u, v in g.edges:
        adj[u].append(v)
        adj[v].append(u)
    deadline = None if timeout_s is None else time.monotonic() + timeout_s
    dom = [0b111] * (n + 1)
    trail: list[tuple[int, int]] = []

    def propagate(queue: list[int]) -> bool:
        while queue:
            v = queue.pop()
            c = dom[v]
            for w in adj[v]:
                if dom[w] & c:
                    nxt = dom[w] & ~c
                    if nxt == 0:
                        return False
                    trail.append((w, dom[w]))
                    dom[w] = nxt
                    if POPCOUNT[nxt] == 1:
                        queue.append(w)
        return True

    first_branch = [True]
    ticker = [0]

    def tick() -> None:
        ticker[0] += 1
        if deadline is not None and ticker[0] % 256 == 0 and time.monotonic() > deadline:
            raise SolveTimeout("3-coloring search exceeded its time budget")

    def lookahead() -> bool:
        """Failed-literal filtering to fixpoint: a color that propagates to
        a dead end is pruned. This is what pushes forced equalities through
        gadget chains without branching."""
        changed = True
        while changed:
            changed = False
            for v in range(1, n + 1):
                if POPCOUNT[dom[v]] <= 1:
                    continue
                for bit in (1, 2, 4):
                    if not dom[v] & bit:
                        continue
                    tick()
                    mark = len(trail)
                    trail.append((v, dom[v]))
                    dom[v] = bit
                    ok = propagate([v])
                    while len(trail) > mark:
                        w, old = trail.pop()
                        dom[w] = old
                    if not ok:
                        trail.append((v, dom[v]))
                        dom[v] &= ~bit
                        if dom[v] == 0:
                            return False
                        if POPCOUNT[dom[v]] == 1 and not propagate([v]):
                            return False
                        changed = True
        return True

    def search() -> bool:
        tick()
        if not lookahead():
            return False
        best_v, best_key = 0, None
        for v in range(1, n + 1):
            size = POPCOUNT[dom[v]]
            if size > 1:
                key = (size, -len(adj[v]), v)
                if best_key is None or key < best_key:
                    best_v, best_key = v, key
        if best_key is None:
            return True
        choices = [b for b in (1, 2, 4) if dom[best_v] & b]
        if first_branch[0]:
            choices = choices[:1]
            first_branch[0] = False
        for bit in choices:
            mark = len(trail)
            trail.append((best_v, dom[best_v]))
            dom[best_v] = bit
            if propagate([best_v]) and search():
                return True
            while len(trail) > mark:
                w, old = trail.pop()
                dom[w] = old
        return False

    if not propagate([v for v in range(1, n + 1) if POPCOUNT[dom[v]] == 1]):
        return None
    if not search():
        return None
    return {v: COLOR_OF_BIT[dom[v]] for v in range(1, n + 1)}


@dataclass(frozen=True)
class HittingSetInstance:
    """Sets over the k-by-k grid, each holding at most one cell per row."""

    k: int
    sets: tuple[frozenset[tuple[int, int]], ...]

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError("k must be >= 1")
        for s in self.sets:
            rows = [r for r, _ in s]
            if len(rows) != len(set(rows)):
                raise ValueError(f"set {sorted(s)} repeats a row")
            for r, c in s:
                if not (1 <= r <= self.k and 1 <= c <= self.k):
                    raise ValueError(f"cell {(r, c)} outside [{self.k}]x[{self.k}]")

    @property
    def m(self) -> int:
        return len(self.sets)


def brute_hitting_set(inst: HittingSetInstance, cap_k: int = 6) -> set[tuple[int, int]] | None:
    """Try all k^k row selections."""
    if inst.k > cap_k:
        raise CapExceeded(f"k={inst.k} exceeds cap {cap_k}")
    for cols in itertools.product(range(1, inst.k + 1), repeat=inst.k):
        chosen = {(r + 1, cols[r]) for r in range(inst.k)}
        if all(chosen & s for s in inst.sets):
            return chosen
    return None


@dataclass(frozen=True)
class Violation:
    reason: str
    detail: str = ""

    def __str__(self) -> str:
        return f"{self.reason}: {self.detail}" if self.detail else self.reason


def _check_cycle(g: Graph, cycle: list[int]) -> Violation | None:
    if len(cycle) < 3:
        return Violation("cycle-too-short", str(cycle))
    if len(set(cycle)) != len(cycle):
        return Violation("cycle-repeats-vertex", str(cycle))
    for i, u in enumerate(cycle):
        v = cycle[(i + 1) % len(cycle)]
        if norm_edge(u, v) not in g.edges:
            return Violation("cycle-uses-non-edge", f"({u},{v})")
    return None


def _check_path(g: Graph, path: list[int], s: int, t: int) -> Violation | None:
    if len(path) < 2:
        return Violation("path-too-short", str(path))
    if len(set(path)) != len(path):
        return Violation("path-repeats-vertex", str(path))
    if {path[0], path[-1]} != {s, t}:
        return Violation("path-endpoints", f"expected {{{s},{t}}}, got ends {path[0]},{path[-1]}")
    for u, v in zip(path, path[1:]):
        if norm_edge(u, v) not in g.edges:
            return Violation("path-uses-non-edge", f"({u},{v})")
    return None


def verify_witness(kind: str, instance, witness) -> Violation | None:
    """Check a certificate against the defining constraints of its problem.

    Kinds: cycle-packing (instance (Graph, l0), witness list of cycles),
    disjoint-paths ((Graph, RequestSet), list of paths), mono-disjoint-paths
    ((ColoredGraph, RequestSet), list of paths), 3-coloring (Graph, map),
    hitting-set (HittingSetInstance, cell set).
    """
    if kind == "cycle-packing":
        g, l0 = instance
        cycles = witness
        if len(cycles) < l0:
            return Violation("too-few-cycles", f"{len(cycles)} < {l0}")
        used: set[int] = set()
        for cyc in cycles:
            bad = _check_cycle(g, cyc)
            if bad:
                return bad
            if used & set(cyc):
                return Violation("disjointness", f"shared {sorted(used & set(cyc))}")
            used |= set(cyc)
        return None

    if kind in ("disjoint-paths", "mono-disjoint-paths"):
        if kind == "mono-disjoint-paths":
            cg, req = instance
            g = cg.graph
        else:
            g, req = instance
            cg = None
        paths = witness
        if len(paths) != len(req.pairs):
            return Violation("path-count", f"{len(paths)} != {len(req.pairs)}")
        used = set()
        for (s, t), path in zip(req.pairs, paths):
            bad = _check_path(g, path, s, t)
            if bad:
                return bad
            if used & set(path):
                return Violation("disjointness", f"shared {sorted(used & set(path))}")
            used |= set(path)
            if cg is not None and not _monochromatic([cg.color(v) for v in path]):
                return Violation("monochromatic", f"path {path} mixes colors")
        return None

    if kind == "3-coloring":
        g = instance
        coloring = witness
        for v in g.vertices():
            if coloring.get(v) not in (1, 2, 3):
                return Violation("color-range", f"vertex {v}")
        for u, v in g.edges:
            if coloring[u] == coloring[v]:
                return Violation("monochromatic-edge", f"({u},{v})")
        return None

    if kind == "hitting-set":
        inst = instance
        chosen = set(witness)
        rows = sorted(r for r, _ in chosen)
        if rows != list(range(1, inst.k + 1)):
            return Violation("row-selection", f"rows {rows}")
        for r, c in chosen:
            if not (1 <= c <= inst.k):
                return Violation("column-range", f"{(r, c)}")
        for i, s in enumerate(inst.sets):
            if not (chosen & s):
                return Violation("unhit-set", f"set {i}")
        return None

    raise ValueError(f"unknown witness kind {kind!r}")
