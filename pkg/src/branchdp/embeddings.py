"""Combinatorial embeddings as rotation systems, face tracing, and the
Euler-formula planarity certificate."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .graphs import Graph


@dataclass(frozen=True)
class RotationSystem:
    """Cyclic order of neighbor ids around every vertex."""

    rotations: Mapping[int, tuple[int, ...]]

    def validate_against(self, g: Graph) -> None:
        for v in g.vertices():
            rot = self.rotations.get(v, ())
            nbrs = sorted(w for e in g.edges if v in e for w in e if w != v)
            if sorted(rot) != nbrs:
                raise ValueError(
                    f"rotation at {v} lists {sorted(rot)} but incident "
                    f"neighbors are {nbrs}"
                )
        for v in self.rotations:
            if not (1 <= v <= g.n):
                raise ValueError(f"rotation for unknown vertex {v}")

    def next_after(self, v: int, w: int) -> int:
        """Neighbor following w in the cyclic order at v."""
        rot = self.rotations[v]
        i = rot.index(w)
        return rot[(i + 1) % len(rot)]


def trace_faces(g: Graph, rs: RotationSystem) -> list[tuple[tuple[int, int], ...]]:
    """Face boundaries as orbits of directed edges.

    Successor of dart (u, v) is (v, w) with w the neighbor after u in the
    rotation at v; every dart lies on exactly one face.
    """
    rs.validate_against(g)
    darts = set()
    for u, v in g.edges:
        darts.add((u, v))
        darts.add((v, u))
    faces = []
    seen: set[tuple[int, int]] = set()
    for d0 in sorted(darts):
        if d0 in seen:
            continue
        face = []
        d = d0
        while True:
            face.append(d)
            seen.add(d)
            u, v = d
            w = rs.next_after(v, u)
            d = (v, w)
            if d == d0:
                break
        faces.append(tuple(face))
    return faces


@dataclass(frozen=True)
class EulerReport:
    face_count: int
    planar: bool
    components: tuple[tuple[int, int, int], ...]  # (V, E, F) per component


def euler_check(g: Graph, rs: RotationSystem) -> EulerReport:
    """Trace faces and verify V - E + F = 2 on every connected component.

    Isolated vertices count one face each. The flag certifies that the given
    rotation system is a sphere embedding; it says nothing about other
    embeddings of the same graph.
    """
    faces = trace_faces(g, rs)
    comp_of: dict[int, int] = {}
    comps = g.connected_components()
    for idx, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = idx
    counts = []
    ok = True
    for idx, comp in enumerate(comps):
        vcount = len(comp)
        ecount = sum(1 for u, v in g.edges if comp_of[u] == idx)
        if ecount == 0:
            fcount = 1
        else:
            fcount = sum(1 for f in faces if comp_of[f[0][0]] == idx)
        counts.append((vcount, ecount, fcount))
        if vcount - ecount + fcount != 2:
            ok = False
    total_faces = sum(c[2] for c in counts)
    return EulerReport(face_count=total_faces, planar=ok, components=tuple(counts))


Point = tuple[Fraction, Fraction]


def _half(p: Point) -> int:
    """0 for angles in [0, pi), 1 for [pi, 2pi); origin vectors are invalid."""
    x, y = p
    if y > 0 or (y == 0 and x > 0):
        return 0
    return 1


def angle_key(origin: Point, target: Point):
    """Sort key for counterclockwise angle of target around origin, exact."""
    dx = target[0] - origin[0]
    dy = target[1] - origin[1]
    if dx == 0 and dy == 0:
        raise ValueError("coincident points have no direction")

    class _Key:
        __slots__ = ("h", "dx", "dy")

        def __init__(self) -> None:
            self.h = _half((dx, dy))
            self.dx = dx
            self.dy = dy

        def __lt__(self, other: "_Key") -> bool:
            if self.h != other.h:
                return self.h < other.h
            cross = self.dx * other.dy - self.dy * other.dx
            return cross > 0

        def __eq__(self, other: object) -> bool:
            if not isinstance(other, _Key):
                return NotImplemented
            return (self.h == other.h
                    and self.dx * other.dy == self.dy * other.dx
                    and (self.dx * other.dx > 0 or self.dy * other.dy > 0
                         or (self.dx == 0 and other.dx == 0)
                         or (self.dy == 0 and other.dy == 0)))

    return _Key()


def rotation_from_coordinates(g: Graph, coords: Mapping[int, Point]) -> RotationSystem:
    """Rotation system of a straight-line drawing: neighbors sorted by angle."""
    rots = {}
    adj = g.adjacency()
    for v in g.vertices():
        nbrs = sorted(adj[v])
        if len({coords[w] for w in nbrs}) != len(nbrs):
            raise ValueError(f"two neighbors of {v} share coordinates")
        ordered = sorted(nbrs, key=lambda w: angle_key(coords[v], coords[w]))
        rots[v] = tuple(ordered)
    return RotationSystem(rotations=rots)
