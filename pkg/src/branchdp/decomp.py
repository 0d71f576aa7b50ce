"""Tree, path, and branch decompositions: validation, middle sets, rooting,
and heuristic construction."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Literal

from .embeddings import RotationSystem, trace_faces
from .graphs import Edge, Graph, norm_edge


@dataclass(frozen=True)
class TreeDecomposition:
    bags: dict[int, frozenset[int]]
    tree_edges: frozenset[tuple[int, int]]

    def width(self) -> int:
        return max((len(b) for b in self.bags.values()), default=0) - 1

    def is_path(self) -> bool:
        deg: dict[int, int] = {n: 0 for n in self.bags}
        for a, b in self.tree_edges:
            deg[a] += 1
            deg[b] += 1
        return all(d <= 2 for d in deg.values())


@dataclass(frozen=True)
class TDViolation:
    kind: str  # vertex-coverage | edge-coverage | connectivity | tree-shape
    witness: tuple

    def __str__(self) -> str:
        return f"{self.kind}: {self.witness}"


@dataclass(frozen=True)
class TDReport:
    ok: bool
    width: int | None
    violation: TDViolation | None


def _tree_adjacency(nodes: Iterable[int], edges: Iterable[tuple[int, int]]):
    adj: dict[int, set[int]] = {n: set() for n in nodes}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    return adj


def _is_tree(nodes: set[int], edges: frozenset[tuple[int, int]]) -> bool:
    if not nodes:
        return False
    if len(edges) != len(nodes) - 1:
        return False
    adj = _tree_adjacency(nodes, edges)
    seen = set()
    stack = [next(iter(nodes))]
    while stack:
        x = stack.pop()
        if x in seen:
            continue
        seen.add(x)
        stack.extend(adj[x] - seen)
    return seen == nodes


def validate_tree_decomposition(g: Graph, td: TreeDecomposition) -> TDReport:
    """Check the defining properties; on failure name the first violated one."""
    nodes = set(td.bags)
    if not _is_tree(nodes, td.tree_edges):
        return TDReport(False, None, TDViolation("tree-shape", (sorted(nodes),)))
    covered = set().union(*td.bags.values()) if td.bags else set()
    for v in g.vertices():
        if v not in covered:
            return TDReport(False, None, TDViolation("vertex-coverage", (v,)))
    for u, v in sorted(g.edges):
        if not any(u in b and v in b for b in td.bags.values()):
            return TDReport(False, None, TDViolation("edge-coverage", (u, v)))
    adj = _tree_adjacency(nodes, td.tree_edges)
    for v in g.vertices():
        holders = {n for n, b in td.bags.items() if v in b}
        start = next(iter(holders))
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y in holders and y not in seen:
                    seen.add(y)
                    stack.append(y)
        if seen != holders:
            return TDReport(False, None, TDViolation("connectivity", (v, tuple(sorted(holders - seen)))))
    return TDReport(True, td.width(), None)


@dataclass(frozen=True)
class BranchDecomposition:
    """Unrooted tree with internal nodes of degree exactly 3 and a bijection
    from leaves to graph edges."""

    nodes: frozenset[int]
    tree_edges: frozenset[tuple[int, int]]
    leaf_map: dict[int, Edge]

    def leaves(self) -> set[int]:
        return set(self.leaf_map)


class InvalidDecomposition(ValueError):
    pass


def validate_branch_decomposition(g: Graph, bd: BranchDecomposition) -> None:
    nodes = set(bd.nodes)
    if len(nodes) == 1:
        if bd.tree_edges:
            raise InvalidDecomposition("single node with tree edges")
    elif not _is_tree(nodes, bd.tree_edges):
        raise InvalidDecomposition("decomposition tree is not a tree")
    adj = _tree_adjacency(nodes, bd.tree_edges)
    mapped = {}
    for leaf, e in bd.leaf_map.items():
        if leaf not in nodes:
            raise InvalidDecomposition(f"leaf {leaf} not a tree node")
        if len(nodes) > 1 and len(adj[leaf]) != 1:
            raise InvalidDecomposition(f"mapped node {leaf} has degree {len(adj[leaf])}")
        e = norm_edge(*e)
        if e not in g.edges:
            raise InvalidDecomposition(f"leaf {leaf} maps to non-edge {e}")
        if e in mapped.values():
            raise InvalidDecomposition(f"edge {e} mapped twice")
        mapped[leaf] = e
    if set(mapped.values()) != set(g.edges):
        missing = set(g.edges) - set(mapped.values())
        raise InvalidDecomposition(f"leaf map misses edges {sorted(missing)}")
    for x in nodes:
        d = len(adj[x])
        if x in bd.leaf_map:
            continue
        if len(nodes) > 1 and d not in (1, 3):
            raise InvalidDecomposition(f"internal node {x} has degree {d}")
        if d == 1 and x not in bd.leaf_map:
            raise InvalidDecomposition(f"leaf node {x} unmapped")


def middle_sets(g: Graph, bd: BranchDecomposition) -> tuple[dict[tuple[int, int], frozenset[int]], int]:
    """mid(e) for every tree edge: vertices shared by the edge sets of the
    two sides of e. Width is the largest middle set."""
    validate_branch_decomposition(g, bd)
    adj = _tree_adjacency(bd.nodes, bd.tree_edges)
    result: dict[tuple[int, int], frozenset[int]] = {}
    width = 0
    for te in sorted(bd.tree_edges):
        a, b = te
        side = _leaves_on_side(bd, adj, a, b)
        edges1 = {bd.leaf_map[x] for x in side if x in bd.leaf_map}
        edges2 = set(bd.leaf_map.values()) - edges1
        v1 = {v for e in edges1 for v in e}
        v2 = {v for e in edges2 for v in e}
        mid = frozenset(v1 & v2)
        result[te] = mid
        width = max(width, len(mid))
    return result, width


def _leaves_on_side(bd: BranchDecomposition, adj, a: int, b: int) -> set[int]:
    """Tree nodes in the component of `a` after deleting edge (a, b)."""
    seen = {a}
    stack = [a]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if (x, y) in ((a, b), (b, a)):
                continue
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


@dataclass(frozen=True)
class RootedBranchDecomposition:
    """Rooted variant: edges are directed away from the root node; every
    non-leaf edge has exactly the children listed in `children`."""

    graph: Graph
    nodes: frozenset[int]
    root_edge: tuple[int, int]  # (parent, child)
    children: dict[tuple[int, int], tuple[tuple[int, int], ...]]
    mid: dict[tuple[int, int], frozenset[int]]
    leaf_edge: dict[tuple[int, int], Edge]  # DP leaf edges -> graph edge
    width: int = field(default=0)

    def edges_bottom_up(self) -> list[tuple[int, int]]:
        order: list[tuple[int, int]] = []
        stack = [self.root_edge]
        while stack:
            e = stack.pop()
            order.append(e)
            stack.extend(self.children.get(e, ()))
        order.reverse()
        return order

    def subtree_vertices(self) -> dict[tuple[int, int], frozenset[int]]:
        """Graph vertices appearing in leaf edges below each tree edge."""
        out: dict[tuple[int, int], frozenset[int]] = {}
        for e in self.edges_bottom_up():
            if e in self.leaf_edge:
                out[e] = frozenset(self.leaf_edge[e])
            else:
                acc: set[int] = set()
                for c in self.children.get(e, ()):
                    acc |= out[c]
                out[e] = frozenset(acc)
        return out


def root_decomposition(g: Graph, bd: BranchDecomposition) -> RootedBranchDecomposition:
    """Subdivide a deterministically chosen tree edge, hang a new root above
    the subdivision node, and orient everything away from the root.

    The chosen edge is the one incident to the leaf whose graph edge is
    lexicographically smallest, so repeated runs agree. Middle sets come out
    of the generic computation: both subdivision halves inherit mid of the
    split edge and the root edge has an empty middle set.
    """
    validate_branch_decomposition(g, bd)
    if not bd.leaf_map:
        raise InvalidDecomposition("cannot root an empty decomposition")
    mids, width = middle_sets(g, bd)
    fresh = max(bd.nodes) + 1
    s_node, r_node = fresh, fresh + 1

    best_leaf = min(bd.leaf_map, key=lambda x: bd.leaf_map[x])
    adj = _tree_adjacency(bd.nodes, bd.tree_edges)

    nodes = set(bd.nodes) | {s_node, r_node}
    edges = set(bd.tree_edges)
    if adj[best_leaf]:
        nbr = next(iter(adj[best_leaf]))
        split = tuple(sorted((best_leaf, nbr)))
        edges.remove(split)
        edges.add(tuple(sorted((best_leaf, s_node))))
        edges.add(tuple(sorted((nbr, s_node))))
    # single-node decomposition: s attaches directly to the lone leaf
    else:
        edges.add(tuple(sorted((best_leaf, s_node))))
    edges.add(tuple(sorted((s_node, r_node))))

    adj2 = _tree_adjacency(nodes, edges)

    # orient away from the root, collecting children lists
    children: dict[tuple[int, int], tuple[tuple[int, int], ...]] = {}
    leaf_edge: dict[tuple[int, int], Edge] = {}
    root_edge = (r_node, s_node)

    def subtree_min_leaf(e: tuple[int, int]) -> Edge:
        return min_leaf[e]

    # bottom-up min-leaf labels for deterministic child ordering
    min_leaf: dict[tuple[int, int], Edge] = {}
    order: list[tuple[int, int]] = []
    stack = [root_edge]
    while stack:
        parent, child = stack.pop()
        order.append((parent, child))
        for nxt in sorted(adj2[child] - {parent}):
            stack.append((child, nxt))
    for parent, child in reversed(order):
        if child in bd.leaf_map:
            min_leaf[(parent, child)] = bd.leaf_map[child]
        else:
            min_leaf[(parent, child)] = min(
                min_leaf[(child, nxt)] for nxt in adj2[child] - {parent}
            )
    for parent, child in order:
        kids = sorted(((child, nxt) for nxt in adj2[child] - {parent}),
                      key=subtree_min_leaf)
        children[(parent, child)] = tuple(kids)
        if child in bd.leaf_map:
            leaf_edge[(parent, child)] = bd.leaf_map[child]

    # middle sets on the rooted tree; subdivision halves inherit, root is empty
    mid: dict[tuple[int, int], frozenset[int]] = {}
    below: dict[tuple[int, int], set[Edge]] = {}
    for e in reversed(order):
        if e in leaf_edge:
            below[e] = {leaf_edge[e]}
        else:
            below[e] = set().union(*(below[c] for c in children[e])) if children[e] else set()
    all_edges = set(bd.leaf_map.values())
    for e in order:
        inside = below[e]
        outside = all_edges - inside
        v1 = {v for ed in inside for v in ed}
        v2 = {v for ed in outside for v in ed}
        mid[e] = frozenset(v1 & v2)
    rwidth = max((len(s) for s in mid.values()), default=0)
    assert rwidth == width, "rooting must preserve width"
    return RootedBranchDecomposition(graph=g, nodes=frozenset(nodes),
                                     root_edge=root_edge, children=children,
                                     mid=mid, leaf_edge=leaf_edge, width=rwidth)


def _bfs_edge_order(g: Graph) -> list[Edge]:
    adj = g.adjacency()
    seen_v: set[int] = set()
    seen_e: set[Edge] = set()
    order: list[Edge] = []
    for start in g.vertices():
        if start in seen_v or not adj[start]:
            continue
        queue = [start]
        seen_v.add(start)
        while queue:
            x = queue.pop(0)
            for y in sorted(adj[x]):
                e = norm_edge(x, y)
                if e not in seen_e:
                    seen_e.add(e)
                    order.append(e)
                if y not in seen_v:
                    seen_v.add(y)
                    queue.append(y)
    return order


def _caterpillar(g: Graph) -> BranchDecomposition:
    edges = _bfs_edge_order(g)
    m = len(edges)
    if m == 0:
        raise InvalidDecomposition("edgeless graph has no branch decomposition")
    leaf_map = {i + 1: edges[i] for i in range(m)}
    nodes = set(leaf_map)
    tree_edges: set[tuple[int, int]] = set()
    if m == 1:
        return BranchDecomposition(frozenset(nodes), frozenset(), leaf_map)
    if m == 2:
        tree_edges.add((1, 2))
        return BranchDecomposition(frozenset(nodes), frozenset(tree_edges), leaf_map)
    spine = [m + i + 1 for i in range(m - 2)]
    nodes.update(spine)
    tree_edges.add(tuple(sorted((1, spine[0]))))
    tree_edges.add(tuple(sorted((2, spine[0]))))
    for i, s in enumerate(spine[1:], start=1):
        tree_edges.add(tuple(sorted((spine[i - 1], s))))
        tree_edges.add(tuple(sorted((i + 2, s))))
    tree_edges.add(tuple(sorted((spine[-1], m))))
    return BranchDecomposition(frozenset(nodes), frozenset(tree_edges), leaf_map)


def min_fill_tree_decomposition(g: Graph) -> TreeDecomposition:
    """Elimination-order heuristic; ties broken toward the lowest vertex id."""
    adj = {v: set(nbrs) for v, nbrs in g.adjacency().items()}
    order: list[int] = []
    bags_by_vertex: dict[int, frozenset[int]] = {}
    alive = set(g.vertices())
    while alive:
        best, best_fill = None, None
        for v in sorted(alive):
            nbrs = adj[v]
            fill = sum(1 for a, b in itertools.combinations(sorted(nbrs), 2)
                       if b not in adj[a])
            if best_fill is None or fill < best_fill:
                best, best_fill = v, fill
        v = best
        nbrs = set(adj[v])
        bags_by_vertex[v] = frozenset({v} | nbrs)
        for a, b in itertools.combinations(sorted(nbrs), 2):
            adj[a].add(b)
            adj[b].add(a)
        for w in nbrs:
            adj[w].discard(v)
        del adj[v]
        alive.remove(v)
        order.append(v)

    position = {v: i for i, v in enumerate(order)}
    node_of = {v: i + 1 for i, v in enumerate(order)}
    bags = {node_of[v]: bags_by_vertex[v] for v in order}
    tree_edges: set[tuple[int, int]] = set()
    roots = []
    for v in order:
        later = [w for w in bags_by_vertex[v] if w != v and position[w] > position[v]]
        if later:
            parent = min(later, key=lambda w: position[w])
            tree_edges.add(tuple(sorted((node_of[v], node_of[parent]))))
        else:
            roots.append(node_of[v])
    # disconnected graphs leave one parentless bag per component; chain them
    for a, b in zip(roots, roots[1:]):
        tree_edges.add(tuple(sorted((a, b))))
    return TreeDecomposition(bags=bags, tree_edges=frozenset(tree_edges))


def branch_from_tree_decomposition(g: Graph, td: TreeDecomposition) -> BranchDecomposition:
    """Width transfer: combine, per bag, the locally assigned graph edges and
    the child connectors into a binary comb. Yields width <= td width + 1."""
    if g.m == 0:
        raise InvalidDecomposition("edgeless graph has no branch decomposition")
    report = validate_tree_decomposition(g, td)
    if not report.ok:
        raise InvalidDecomposition(f"tree decomposition invalid: {report.violation}")

    td_nodes = sorted(td.bags)
    adj = _tree_adjacency(td_nodes, td.tree_edges)
    root = td_nodes[0]
    # assign each graph edge to one bag containing it
    assignment: dict[int, list[Edge]] = {n: [] for n in td_nodes}
    for e in sorted(g.edges):
        holder = min(n for n in td_nodes if e[0] in td.bags[n] and e[1] in td.bags[n])
        assignment[holder].append(e)

    next_id = [1]
    nodes: set[int] = set()
    tree_edges: set[tuple[int, int]] = set()
    leaf_map: dict[int, Edge] = {}

    def new_node() -> int:
        i = next_id[0]
        next_id[0] += 1
        nodes.add(i)
        return i

    def build(td_node: int, parent: int | None) -> int | None:
        """Return the connector node of this subtree's comb, or None if empty."""
        items: list[int] = []
        for e in assignment[td_node]:
            leaf = new_node()
            leaf_map[leaf] = e
            items.append(leaf)
        for child in sorted(adj[td_node] - ({parent} if parent is not None else set())):
            sub = build(child, td_node)
            if sub is not None:
                items.append(sub)
        if not items:
            return None
        while len(items) > 1:
            joined = []
            for i in range(0, len(items) - 1, 2):
                j = new_node()
                tree_edges.add(tuple(sorted((j, items[i]))))
                tree_edges.add(tuple(sorted((j, items[i + 1]))))
                joined.append(j)
            if len(items) % 2 == 1:
                joined.append(items[-1])
            items = joined
        return items[0]

    top = build(root, None)
    assert top is not None
    # the comb root may have degree 2; splice it out to restore ternarity
    _splice_degree_two(nodes, tree_edges, leaf_map)
    return BranchDecomposition(frozenset(nodes), frozenset(tree_edges), leaf_map)


def _splice_degree_two(nodes: set[int], tree_edges: set[tuple[int, int]],
                       leaf_map: dict[int, Edge]) -> None:
    changed = True
    while changed:
        changed = False
        adj = _tree_adjacency(nodes, tree_edges)
        for x in sorted(nodes):
            if x in leaf_map:
                continue
            if len(adj[x]) == 2:
                a, b = sorted(adj[x])
                tree_edges.discard(tuple(sorted((x, a))))
                tree_edges.discard(tuple(sorted((x, b))))
                tree_edges.add(tuple(sorted((a, b))))
                nodes.remove(x)
                changed = True
                break
            if len(adj[x]) == 0 and len(nodes) > 1:
                nodes.remove(x)
                changed = True
                break


Strategy = Literal["caterpillar-by-edge-order", "from-tree-decomposition"]


def build_branch_decomposition(g: Graph, strategy: Strategy = "caterpillar-by-edge-order") -> BranchDecomposition:
    if g.m == 0:
        raise InvalidDecomposition("edgeless graph has no branch decomposition")
    if strategy == "caterpillar-by-edge-order":
        bd = _caterpillar(g)
    elif strategy == "from-tree-decomposition":
        bd = branch_from_tree_decomposition(g, min_fill_tree_decomposition(g))
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    validate_branch_decomposition(g, bd)
    return bd


@dataclass(frozen=True)
class WidthRelation:
    bw_width: int
    tw_width: int
    lower_ok: bool           # bw - 1 <= tw
    upper_ok: bool | None    # tw <= floor(3/2 bw) - 1; None when bw <= 1
    note: str = ""

    @property
    def consistent(self) -> bool:
        return self.lower_ok and (self.upper_ok is not False)


def check_width_relation(g: Graph, bd: BranchDecomposition, td: TreeDecomposition) -> WidthRelation:
    """Sanity monitor for the bw/tw inequality; meaningful for optimal widths.

    The upper bound is reported but not judged when bw <= 1, where star-like
    graphs genuinely violate it.
    """
    if g.m < 3:
        raise ValueError("width relation requires at least 3 edges")
    _, bw = middle_sets(g, bd)
    report = validate_tree_decomposition(g, td)
    if not report.ok:
        raise InvalidDecomposition(f"tree decomposition invalid: {report.violation}")
    tw = report.width
    lower_ok = bw - 1 <= tw
    upper_ok: bool | None
    if bw <= 1:
        upper_ok = None
        note = "upper bound skipped for bw <= 1 (fails on stars)"
    else:
        upper_ok = tw <= (3 * bw) // 2 - 1
        note = ""
    return WidthRelation(bw_width=bw, tw_width=tw, lower_ok=lower_ok,
                         upper_ok=upper_ok, note=note)


@dataclass(frozen=True)
class NooseInfo:
    """A closed vertex-face walk through exactly one middle set."""

    vertex_order: tuple[int, ...]
    faces: tuple[int, ...]


def _corner_faces(g: Graph, rs: RotationSystem) -> tuple[dict[tuple[int, int, int], int], int]:
    """Map corner (v, pred_nbr, next_nbr) -> face id; corners are consecutive
    neighbor pairs in the rotation at v."""
    faces = trace_faces(g, rs)
    corner_face: dict[tuple[int, int, int], int] = {}
    for fid, face in enumerate(faces):
        for (u, v) in face:
            w = rs.next_after(v, u)
            corner_face[(v, u, w)] = fid
    return corner_face, len(faces)


def _vertex_faces(g: Graph, rs: RotationSystem) -> dict[int, set[int]]:
    corner_face, nfaces = _corner_faces(g, rs)
    out: dict[int, set[int]] = {v: set() for v in g.vertices()}
    for (v, _, _), fid in corner_face.items():
        out[v].add(fid)
    return out


def check_sc_candidate(g: Graph, rs: RotationSystem,
                       rbd: RootedBranchDecomposition) -> dict[tuple[int, int], NooseInfo | None]:
    """Conservative per-edge noose search.

    An edge gets a NooseInfo only when the middle set can be threaded onto a
    closed vertex-face walk (each face once) that separates the edges below
    the tree edge from the rest. False negatives are possible, false
    positives are not.
    """
    corner_face, _ = _corner_faces(g, rs)
    vfaces: dict[int, set[int]] = {v: set() for v in g.vertices()}
    for (v, _, _), fid in corner_face.items():
        vfaces[v].add(fid)

    below = rbd.subtree_vertices()
    below_edges: dict[tuple[int, int], frozenset[Edge]] = {}
    for e in rbd.edges_bottom_up():
        if e in rbd.leaf_edge:
            below_edges[e] = frozenset({rbd.leaf_edge[e]})
        else:
            acc: set[Edge] = set()
            for c in rbd.children.get(e, ()):
                acc |= below_edges[c]
            below_edges[e] = frozenset(acc)

    result: dict[tuple[int, int], NooseInfo | None] = {}
    for e in rbd.edges_bottom_up():
        mid = sorted(rbd.mid[e])
        result[e] = _find_noose(g, rs, vfaces, mid, below_edges[e])
    return result


def _rotation_arcs(rot: tuple[int, ...], c1: int, c2: int) -> tuple[set[int], set[int]]:
    """Split a rotation into the two arcs delimited by corner indices c1 < c2.

    Corner i sits between rot[i] and rot[i+1]; the arc from corner c1 to
    corner c2 contains rot[c1+1..c2]."""
    k = len(rot)
    arc1 = {rot[(c1 + 1 + j) % k] for j in range(((c2 - c1) % k))}
    arc2 = set(rot) - arc1
    return arc1, arc2


def _find_noose(g: Graph, rs: RotationSystem, vfaces: dict[int, set[int]],
                mid: list[int], inside_edges: frozenset[Edge]) -> NooseInfo | None:
    k = len(mid)
    if k == 0:
        return NooseInfo(vertex_order=(), faces=())
    adj = g.adjacency()
    if k == 1:
        v = mid[0]
        rot = rs.rotations[v]
        inside_here = {w for w in rot if norm_edge(v, w) in inside_edges}
        corner_face, _ = _corner_faces(g, rs)
        n = len(rot)
        for c1 in range(n):
            for c2 in range(n):
                if c1 == c2:
                    continue
                arc1, _ = _rotation_arcs(rot, min(c1, c2), max(c1, c2))
                if arc1 != inside_here and (set(rot) - arc1) != inside_here:
                    continue
                f1 = corner_face[(v, rot[min(c1, c2)], rot[(min(c1, c2) + 1) % n])]
                f2 = corner_face[(v, rot[max(c1, c2)], rot[(max(c1, c2) + 1) % n])]
                if f1 == f2:
                    return NooseInfo(vertex_order=(v,), faces=(f1,))
        return None

    first = mid[0]
    rest = mid[1:]
    for perm in itertools.permutations(rest):
        order = (first,) + perm
        if k > 2 and order[1] > order[-1]:
            continue  # skip mirrored walks
        noose = _try_order(g, rs, vfaces, order, inside_edges, adj)
        if noose is not None:
            return noose
    return None


def _try_order(g: Graph, rs: RotationSystem, vfaces, order: tuple[int, ...],
               inside_edges: frozenset[Edge], adj) -> NooseInfo | None:
    k = len(order)
    corner_face, _ = _corner_faces(g, rs)

    # choose distinct faces joining consecutive vertices (SDR by backtracking)
    options = []
    for i in range(k):
        a, b = order[i], order[(i + 1) % k]
        common = sorted(vfaces[a] & vfaces[b])
        if not common:
            return None
        options.append(common)

    chosen: list[int] = []

    def pick(i: int) -> bool:
        if i == k:
            return _noose_separates(g, rs, corner_face, order, tuple(chosen), inside_edges)
        for f in options[i]:
            if f in chosen:
                continue
            chosen.append(f)
            if pick(i + 1):
                return True
            chosen.pop()
        return False

    if k == 2:
        # two chords through two distinct common faces
        a, b = order
        commons = sorted(vfaces[a] & vfaces[b])
        for f1 in commons:
            for f2 in commons:
                if f1 == f2:
                    continue
                if _noose_separates(g, rs, corner_face, order, (f1, f2), inside_edges):
                    return NooseInfo(vertex_order=order, faces=(f1, f2))
        return None

    if pick(0):
        return NooseInfo(vertex_order=order, faces=tuple(chosen))
    return None


def _noose_separates(g: Graph, rs: RotationSystem, corner_face, order, faces,
                     inside_edges: frozenset[Edge]) -> bool:
    """Check that walking order[i] --faces[i]-- order[i+1] can split every
    middle-set rotation into (inside | outside) arcs consistently."""
    k = len(order)
    pos = {v: i for i, v in enumerate(order)}
    for i, v in enumerate(order):
        f_in = faces[(i - 1) % k]
        f_out = faces[i]
        rot = rs.rotations[v]
        n = len(rot)
        inside_here = {w for w in rot if norm_edge(v, w) in inside_edges}
        found = False
        corners_in = [c for c in range(n)
                      if corner_face[(v, rot[c], rot[(c + 1) % n])] == f_in]
        corners_out = [c for c in range(n)
                       if corner_face[(v, rot[c], rot[(c + 1) % n])] == f_out]
        for c1 in corners_in:
            for c2 in corners_out:
                if c1 == c2:
                    continue
                lo, hi = min(c1, c2), max(c1, c2)
                arc1, arc2 = _rotation_arcs(rot, lo, hi)
                if arc1 == inside_here or arc2 == inside_here:
                    found = True
                    break
            if found:
                break
        if not found:
            return False
    return True
