"""Monochromatic disjoint paths by dynamic programming over a rooted branch
decomposition.

A table entry at a tree edge describes how a partial solution inside the
subgraph below the edge meets the middle set:

  * X: middle-set vertices with no remaining capacity (interior to a path,
    or a terminal already serving as a path endpoint);
  * segment records (a, b, c): an unassigned monochromatic path with open
    ends a, b in the middle set, colored c, touching no terminal;
  * request records (j, pieces): the grown pieces of request j, one per
    terminal of j inside the subgraph; each piece (T, v, c) runs from
    terminal T to its front v (v == T when ungrown), is monochromatic, and
    has color c. Fronts lie in the middle set.

Completed requests leave no record; their endpoints are saturated into X
while visible. Colors follow the wildcard rule: recorded colors are the
maximum over the piece so far, and two parts may join only when their
nonzero colors agree.

Request ids and piece sources are carried explicitly, which keeps every
merge decision local; the classical (X, P, M, L, gamma, phi) view of a state
is available for reporting via `paper_view`.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .decomp import RootedBranchDecomposition
from .graphs import ColoredGraph, Graph, RequestSet, colors_compatible

Piece = tuple[int, int, int]            # (source terminal, front, color)
RequestRecord = tuple[int, frozenset[Piece]]
Segment = tuple[int, int, int]          # (end a < end b, color)
StateKey = tuple[frozenset[int], frozenset[Segment], frozenset[RequestRecord]]

EMPTY_STATE: StateKey = (frozenset(), frozenset(), frozenset())


@dataclass
class MDPStats:
    max_table: int = 0
    tables: list[tuple[int, int]] = field(default_factory=list)

    def record(self, mid_size: int, table_size: int) -> None:
        self.max_table = max(self.max_table, table_size)
        self.tables.append((mid_size, table_size))


@dataclass(frozen=True)
class MDPResult:
    feasible: bool
    witness: list[list[int]] | None
    stats: MDPStats


def _join_colors(c1: int, c2: int) -> int | None:
    if not colors_compatible(c1, c2):
        return None
    return max(c1, c2)


class _Item:
    """A live path fragment during a merge: either an unassigned segment or
    a request piece, together with its realization."""

    __slots__ = ("kind", "j", "source", "ends", "color", "path")

    def __init__(self, kind, j, source, ends, color, path):
        self.kind = kind      # "seg" | "piece"
        self.j = j            # request id for pieces
        self.source = source  # terminal for pieces
        self.ends = ends      # open end vertices: 2 for seg, 1 for piece
        self.color = color
        self.path = path      # vertex list; for pieces runs source -> front


def _state_items(state: StateKey, payload, side: int):
    items = []
    _, segs, recs = state
    for (a, b, c) in sorted(segs):
        items.append(_Item("seg", None, None, [a, b], c,
                           list(payload["seg"][(a, b, c)])))
    for (j, pieces) in sorted(recs):
        for (t, v, c) in sorted(pieces):
            items.append(_Item("piece", j, t, [v], c,
                               list(payload["piece"][(j, t)])))
    return items


def _edge_use(state: StateKey, terminals: dict[int, int]) -> dict[int, int]:
    """Capacity units consumed at each visible vertex: 2 saturates."""
    x, segs, recs = state
    use: dict[int, int] = {}
    for v in x:
        use[v] = 2
    for (a, b, _c) in segs:
        use[a] = use.get(a, 0) + 1
        use[b] = use.get(b, 0) + 1
    for (_j, pieces) in recs:
        for (t, v, _c) in pieces:
            if t != v:
                use[v] = use.get(v, 0) + 1
                use[t] = use.get(t, 0) + 1
            else:
                use.setdefault(v, 0)
    return use


def merge_mdp_states(s1: StateKey, p1, s2: StateKey, p2,
                     mid_e: frozenset[int], terminals: dict[int, int],
                     request_pairs):
    """Combine two child states; yields (state, payload) or nothing.

    The glue loop joins fragments meeting at a shared vertex until every
    vertex hosts at most one open fragment end; fragments then become the
    new records, and anything not representable on the middle set kills the
    combination.
    """
    use1 = _edge_use(s1, terminals)
    use2 = _edge_use(s2, terminals)
    for v in set(use1) | set(use2):
        u1, u2 = use1.get(v, 0), use2.get(v, 0)
        if v in terminals:
            if (u1 and u2) or u1 > 2 or u2 > 2:
                return
        elif u1 + u2 > 2:
            return

    items = _state_items(s1, p1, 1) + _state_items(s2, p2, 2)
    done: dict[int, list[int]] = {}
    for payload in (p1, p2):
        for j, path in payload["done"].items():
            if j in done:
                return  # the same request served twice cannot be disjoint
            done[j] = list(path)

    # same-source pieces across the two sides: at most one may be grown;
    # ungrown fronts of an already-served request are stale claims to drop
    by_source: dict[tuple[int, int], list[_Item]] = {}
    for it in items:
        if it.kind == "piece":
            by_source.setdefault((it.j, it.source), []).append(it)
    drop: set[int] = set()
    for (j, t), group in by_source.items():
        if j in done:
            if any(g.ends[0] != t for g in group):
                return
            drop.update(id(g) for g in group)
            continue
        if len(group) > 2:
            return
        if len(group) == 2:
            grown = [g for g in group if g.ends[0] != t]
            if len(grown) == 2:
                return  # terminal would gain two path edges
            keep = grown[0] if grown else group[0]
            for g in group:
                if g is not keep:
                    drop.add(id(g))
    items = [it for it in items if id(it) not in drop]

    saturated: set[int] = set()

    def endpoints(it: _Item):
        return list(it.ends)

    # glue fragments meeting at shared vertices
    while True:
        at: dict[int, list[_Item]] = {}
        for it in items:
            for v in endpoints(it):
                if it.kind == "piece" and it.ends[0] == it.source:
                    continue  # ungrown pieces hold no edge at their front
                at.setdefault(v, []).append(it)
        spot = None
        for v in sorted(at):
            group = at[v]
            if len(group) == 2 and group[0] is not group[1]:
                spot = (v, group[0], group[1])
                break
            if len(group) == 2 and group[0] is group[1]:
                return  # a fragment closing onto itself is a useless cycle
            if len(group) > 2:
                return
        if spot is None:
            break
        v, f1, f2 = spot
        if v in terminals:
            return
        merged = _join_fragments(v, f1, f2, done)
        if merged is None:
            return
        saturated.add(v)
        items.remove(f1)
        items.remove(f2)
        if merged is not True:
            items.append(merged)

    # ungrown pieces may coincide with another fragment's vertex only if
    # that fragment is their own request's other piece ending there
    # (handled in completion); any other overlap is a conflict.
    occupied: dict[int, _Item] = {}
    for it in items:
        for v in it.path:
            if v in occupied and occupied[v] is not it:
                return
            occupied[v] = it

    new_x: set[int] = set()
    for xv in (s1[0] | s2[0]):
        new_x.add(xv)
    new_segs: set[Segment] = set()
    new_recs: dict[int, set[Piece]] = {}
    payload = {"seg": {}, "piece": {}, "done": done}

    for it in items:
        if it.kind == "seg":
            a, b = it.ends
            if a not in mid_e or b not in mid_e:
                return
            a2, b2 = (a, b) if a < b else (b, a)
            seg = (a2, b2, it.color)
            new_segs.add(seg)
            path = it.path if it.path[0] == a2 else list(reversed(it.path))
            payload["seg"][seg] = path
        else:
            front = it.ends[0]
            if front not in mid_e:
                return
            if front != it.source and front in terminals:
                return  # grew onto a foreign terminal: dead either way
            new_recs.setdefault(it.j, set()).add((it.source, front, it.color))
            payload["piece"][(it.j, it.source)] = list(it.path)

    for j, pieces in new_recs.items():
        if len(pieces) > 2 or j in done:
            return
        if len(pieces) == 2:
            srcs = {t for (t, _v, _c) in pieces}
            if srcs != set(request_pairs[j]):
                return

    # stored X covers saturation the records cannot express: glue interiors
    # and the vertices of completed paths; live fronts and piece sources are
    # derivable and stay out
    for v in saturated:
        new_x.add(v)
    for j, path in done.items():
        for v in path:
            if v in mid_e:
                new_x.add(v)
    live: set[int] = set()
    for seg in new_segs:
        live.update((seg[0], seg[1]))
    for j, pieces in new_recs.items():
        for (t, v, _c) in pieces:
            live.add(v)
            live.add(t)
    new_x &= mid_e
    new_x -= live
    for it in items:
        for v in it.path:
            if v in mid_e and v not in live and v not in new_x:
                new_x.add(v)

    state = (frozenset(new_x),
             frozenset(new_segs),
             frozenset((j, frozenset(ps)) for j, ps in new_recs.items()))
    yield state, payload


def _join_fragments(v: int, f1: _Item, f2: _Item, done: dict[int, list[int]]):
    """Join two fragments at v. Returns the merged fragment, True when the
    join completed a request (recorded in done), or None when invalid."""
    c = _join_colors(f1.color, f2.color)
    if c is None:
        return None

    def oriented(it: _Item, toward: int):
        p = it.path
        return p if p[-1] == toward else list(reversed(p))

    if f1.kind == "seg" and f2.kind == "seg":
        p = oriented(f1, v) + oriented(f2, v)[::-1][1:]
        ends = [e for it in (f1, f2) for e in it.ends if e != v]
        if len(ends) != 2:
            return None
        return _Item("seg", None, None, ends, c, p)
    if f1.kind == "seg" or f2.kind == "seg":
        seg, piece = (f1, f2) if f1.kind == "seg" else (f2, f1)
        p = piece.path + oriented(seg, v)[::-1][1:]
        other = next(e for e in seg.ends if e != v)
        return _Item("piece", piece.j, piece.source, [other], c, p)
    # piece + piece
    if f1.j != f2.j:
        return None
    if f1.source == f2.source:
        return None
    full = f1.path + list(reversed(f2.path))[1:]
    done[f1.j] = full
    return True


def _leaf_table(edge, mid: frozenset[int], cg: ColoredGraph,
                terminals: dict[int, int], request_pairs):
    x, y = edge
    gx, gy = cg.color(x), cg.color(y)
    tx, ty = terminals.get(x), terminals.get(y)
    out: list[tuple[StateKey, dict]] = []

    def payload(segs=(), pieces=(), done=()):
        return {"seg": {s: list(p) for s, p in segs},
                "piece": {k: list(p) for k, p in pieces},
                "done": {j: list(p) for j, p in done}}

    if tx is not None and ty is not None and tx == ty:
        if colors_compatible(gx, gy):
            out.append(((frozenset({x, y} & mid), frozenset(), frozenset()),
                        payload(done=[(tx, [x, y] if request_pairs[tx][0] == x else [y, x])])))
        return out
    if tx is not None and ty is not None:
        if x in mid and y in mid:
            recs = frozenset({(tx, frozenset({(x, x, gx)})),
                              (ty, frozenset({(y, y, gy)}))})
            out.append(((frozenset(), frozenset(), recs),
                        payload(pieces=[((tx, x), [x]), ((ty, y), [y])])))
        return out
    if tx is not None or ty is not None:
        if ty is not None:
            x, y, gx, gy, tx = y, x, gy, gx, ty
        # trivial front at the terminal
        if x in mid:
            recs = frozenset({(tx, frozenset({(x, x, gx)}))})
            out.append(((frozenset(), frozenset(), recs),
                        payload(pieces=[((tx, x), [x])])))
        # grown across the edge; the source terminal is derivable, not X
        joined = _join_colors(gx, gy)
        if joined is not None and y in mid:
            recs = frozenset({(tx, frozenset({(x, y, joined)}))})
            out.append(((frozenset(), frozenset(), recs),
                        payload(pieces=[((tx, x), [x, y])])))
        return out
    # no terminals on this edge
    out.append((EMPTY_STATE, payload()))
    joined = _join_colors(gx, gy)
    if joined is not None and x in mid and y in mid:
        a, b = (x, y) if x < y else (y, x)
        seg = (a, b, joined)
        out.append(((frozenset(), frozenset({seg}), frozenset()),
                    payload(segs=[(seg, [a, b])])))
    return out


def solve_mdp(cg: ColoredGraph, req: RequestSet,
              rbd: RootedBranchDecomposition | None = None) -> MDPResult:
    """Decide monochromatic disjoint paths; on yes the witness (one path per
    request, in request order) has already passed the independent verifier."""
    g = cg.graph
    req.validate_against(g)
    stats = MDPStats()
    if len(req) == 0:
        return MDPResult(feasible=True, witness=[], stats=stats)

    terminals: dict[int, int] = {}
    for i, (s, t) in enumerate(req.pairs):
        for v in (s, t):
            if v in terminals:
                # two requests sharing a terminal can never be disjoint
                return MDPResult(feasible=False, witness=None, stats=stats)
            terminals[v] = i
    degree = {v: 0 for v in g.vertices()}
    for u, v in g.edges:
        degree[u] += 1
        degree[v] += 1
    if any(degree[v] == 0 for v in terminals):
        return MDPResult(feasible=False, witness=None, stats=stats)

    if rbd is None:
        from .decomp import build_branch_decomposition, root_decomposition
        rbd = root_decomposition(g, build_branch_decomposition(g))

    request_pairs = {i: pair for i, pair in enumerate(req.pairs)}
    tables: dict[tuple[int, int], dict[StateKey, dict]] = {}
    n_colors = cg.max_color()
    m = len(req)
    for edge in rbd.edges_bottom_up():
        mid = rbd.mid[edge]
        table: dict[StateKey, dict] = {}
        kids = rbd.children.get(edge, ())
        if edge in rbd.leaf_edge:
            for key, payload in _leaf_table(rbd.leaf_edge[edge], mid, cg,
                                            terminals, request_pairs):
                table.setdefault(key, payload)
        elif len(kids) == 1:
            child = kids[0]
            empty_payload = {"seg": {}, "piece": {}, "done": {}}
            for ck, cp in tables[child].items():
                for nk, np in merge_mdp_states(ck, cp, EMPTY_STATE, empty_payload,
                                               mid, terminals, request_pairs):
                    table.setdefault(nk, np)
        else:
            c1, c2 = kids
            for k1, q1 in tables[c1].items():
                for k2, q2 in tables[c2].items():
                    for nk, np in merge_mdp_states(k1, q1, k2, q2, mid,
                                                   terminals, request_pairs):
                        table.setdefault(nk, np)
        stats.record(len(mid), len(table))
        k = len(mid)
        bound = (5 ** k) * ((n_colors + 1) ** k) * (max(k, 1) ** k) * (max(2 * m, 1) ** k)
        assert len(table) <= bound, (
            f"table at {edge} has {len(table)} entries, over the adapted "
            f"5^k (C+1)^k k^k (2m)^k bound {bound}")
        tables[edge] = table

    root = tables[rbd.root_edge]
    winner = root.get(EMPTY_STATE)
    if winner is None:
        return MDPResult(feasible=False, witness=None, stats=stats)
    done = winner["done"]
    witness = []
    for i, (s, t) in enumerate(req.pairs):
        path = done.get(i)
        if path is None:
            return MDPResult(feasible=False, witness=None, stats=stats)
        if path[0] != s:
            path = list(reversed(path))
        witness.append(path)
    from .oracle import verify_witness
    bad = verify_witness("mono-disjoint-paths", (cg, req), witness)
    if bad is not None:
        raise AssertionError(f"internal witness failed verification: {bad}")
    return MDPResult(feasible=True, witness=witness, stats=stats)


def solve_disjoint_paths(g: Graph, req: RequestSet,
                         rbd: RootedBranchDecomposition | None = None) -> MDPResult:
    """Plain disjoint paths: the all-zero coloring makes every path
    monochromatic."""
    from .graphs import all_zero
    return solve_mdp(all_zero(g), req, rbd)


def paper_view(state: StateKey, terminals_inside: dict[int, set[int]] | None = None):
    """Render a state in the classical (X, P, M, L, gamma, phi) shape."""
    x, segs, recs = state
    P = set()
    M = set()
    L = set()
    gamma: dict[int, int] = {}
    phi: dict[int, int] = {}
    for (a, b, c) in segs:
        L.add(frozenset((a, b)))
        gamma[a] = c
        gamma[b] = c
    for (j, pieces) in recs:
        ps = sorted(pieces)
        if len(ps) == 1:
            t, v, c = ps[0]
            P.add(v)
            phi[v] = j
            gamma[v] = c
        else:
            (t1, v1, c1), (t2, v2, c2) = ps
            M.add(frozenset((v1, v2)))
            gamma[v1] = max(c1, c2)
            gamma[v2] = max(c1, c2)
    return (set(x), P, M, L, gamma, phi)
