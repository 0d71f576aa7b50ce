"""Exact-arithmetic plane layout shared by the gadget reductions.

Vertices carry Fraction coordinates and edges are straight segments. Edges
marked as carriers may cross each other; after the skeleton is assembled,
every such crossing is replaced by a path-crossing gadget whose pieces live
in a small disc around the crossing point, and the carrier edge becomes a
chain threading straight through its gadgets. A final angular sort yields
the rotation system; the Euler check downstream certifies the embedding.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..embeddings import rotation_from_coordinates
from ..graphs import graph_from_edges
from .registry import GadgetRegistry

F = Fraction
Point = tuple[F, F]


def seg_intersection(p1: Point, p2: Point, p3: Point, p4: Point) -> Point | None:
    """Proper interior intersection of two segments, or None."""
    x1, y1 = p1
    x2, y2 = p2
    x3, y3 = p3
    x4, y4 = p4
    d = (x2 - x1) * (y4 - y3) - (y2 - y1) * (x4 - x3)
    if d == 0:
        return None
    t = ((x3 - x1) * (y4 - y3) - (y3 - y1) * (x4 - x3)) / d
    s = ((x3 - x1) * (y2 - y1) - (y3 - y1) * (x2 - x1)) / d
    if 0 < t < 1 and 0 < s < 1:
        return (x1 + t * (x2 - x1), y1 + t * (y2 - y1))
    return None


@dataclass
class PlaneBuilder:
    flavor: str  # "cycle" or "path": which expel variant path crossings use
    next_id: int = 0
    coords: dict[int, Point] = field(default_factory=dict)
    names: dict[str, int] = field(default_factory=dict)
    plain_edges: list[tuple[int, int]] = field(default_factory=list)
    carriers: list[tuple[int, int]] = field(default_factory=list)
    carrier_host: dict[tuple[int, int], str] = field(default_factory=dict)
    _host_at: dict = field(default_factory=dict)
    registry: GadgetRegistry = field(default_factory=GadgetRegistry)
    requests: list[tuple[int, int]] = field(default_factory=list)

    def vertex(self, name: str, x, y) -> int:
        if name in self.names:
            raise ValueError(f"duplicate vertex name {name}")
        self.next_id += 1
        self.names[name] = self.next_id
        self.coords[self.next_id] = (F(x), F(y))
        return self.next_id

    def edge(self, a: int, b: int, carrier: bool = False, host: str = "") -> None:
        if carrier:
            self.carriers.append((a, b))
            self.carrier_host[(a, b)] = host
        else:
            self.plain_edges.append((a, b))

    def request(self, s: int, t: int) -> None:
        self.requests.append((s, t))

    # ------------------------------------------------------------------
    def resolve_crossings(self, expected_crossings: int | None = None
                          ) -> dict[tuple[int, int], list[int]]:
        """Replace carrier-carrier crossings with path-crossing gadgets.

        Returns, per carrier edge, the straight traversal sequence from one
        endpoint to the other. Plain edges must cross nothing; asserted.
        """
        for i, (a, b) in enumerate(self.plain_edges):
            for c, d in self.plain_edges[i + 1:] + self.carriers:
                if {a, b} & {c, d}:
                    continue
                if seg_intersection(self.coords[a], self.coords[b],
                                    self.coords[c], self.coords[d]):
                    raise AssertionError(
                        f"non-carrier edge ({a},{b}) crosses ({c},{d})")

        crossings: dict[tuple[int, int], list[tuple[F, Point]]] = {
            e: [] for e in self.carriers}
        count = 0
        for i, e1 in enumerate(self.carriers):
            for e2 in self.carriers[i + 1:]:
                if set(e1) & set(e2):
                    continue
                pt = seg_intersection(self.coords[e1[0]], self.coords[e1[1]],
                                      self.coords[e2[0]], self.coords[e2[1]])
                if pt is None:
                    continue
                h1 = self.carrier_host.get(e1, "")
                h2 = self.carrier_host.get(e2, "")
                assert h1 == h2, (
                    f"carriers of different gadgets cross: {h1!r} vs {h2!r}")
                count += 1
                self._host_at[pt] = h1
                crossings[e1].append((self._param(e1, pt), pt))
                crossings[e2].append((self._param(e2, pt), pt))
        if expected_crossings is not None:
            assert count == expected_crossings, (
                f"expected {expected_crossings} crossings, found {count}")

        gadget_at: dict[Point, dict] = {}
        traversals: dict[tuple[int, int], list[int]] = {}
        for e in self.carriers:
            pts = sorted(crossings[e])
            seq = [e[0]]
            prev_t = F(0)
            prev_vertex = e[0]
            for idx, (t, pt) in enumerate(pts):
                next_t = pts[idx + 1][0] if idx + 1 < len(pts) else F(1)
                inst = gadget_at.get(pt)
                if inst is None:
                    inst = {"point": pt, "rays": {}, "w0": None,
                            "tag": f"pcg{len(gadget_at)}"}
                    gadget_at[pt] = inst
                pc_in, internal, pc_out = self._attach(inst, e, t - prev_t,
                                                       next_t - t)
                self.plain_edges.append((prev_vertex, pc_in))
                seq.extend([pc_in] + internal + [pc_out])
                prev_vertex = pc_out
                prev_t = t
            self.plain_edges.append((prev_vertex, e[1]))
            seq.append(e[1])
            traversals[e] = seq
        return traversals

    def _param(self, e: tuple[int, int], pt: Point) -> F:
        a, b = self.coords[e[0]], self.coords[e[1]]
        if b[0] != a[0]:
            return (pt[0] - a[0]) / (b[0] - a[0])
        return (pt[1] - a[1]) / (b[1] - a[1])

    def _attach(self, inst: dict, e: tuple[int, int], gap_before: F, gap_after: F):
        """Place one edge's spine through the gadget: six new vertices along
        the edge at fractions of the free gaps on each side."""
        tag = inst["tag"]
        pt = inst["point"]
        if inst["w0"] is None:
            inst["w0"] = self.vertex(f"{tag}:w0", *pt)
        a = self.coords[e[0]]
        b = self.coords[e[1]]
        da = (a[0] - pt[0], a[1] - pt[1])
        db = (b[0] - pt[0], b[1] - pt[1])
        side = "first" if not inst["rays"] else "second"
        names = {"first": ("pc1", "w11", "w12", "w32", "w31", "pc3"),
                 "second": ("pc2", "w21", "w22", "w42", "w41", "pc4")}[side]
        # stubs sit a third of the free gap away from the crossing, measured
        # in edge parameter, then rescaled to the ray vectors (which span the
        # full remainder toward each endpoint)
        ra = (gap_before / 3) / self._remainder(e, pt, toward="a")
        rb = (gap_after / 3) / self._remainder(e, pt, toward="b")
        pc_in = self.vertex(f"{tag}:{names[0]}", *self._mix(pt, da, ra))
        wa1 = self.vertex(f"{tag}:{names[1]}", *self._mix(pt, da, ra * F(2, 3)))
        wa2 = self.vertex(f"{tag}:{names[2]}", *self._mix(pt, da, ra * F(1, 3)))
        wb2 = self.vertex(f"{tag}:{names[3]}", *self._mix(pt, db, rb * F(1, 3)))
        wb1 = self.vertex(f"{tag}:{names[4]}", *self._mix(pt, db, rb * F(2, 3)))
        pc_out = self.vertex(f"{tag}:{names[5]}", *self._mix(pt, db, rb))
        for x, y in ((pc_in, wa1), (wa1, wa2), (wa2, inst["w0"]),
                     (inst["w0"], wb2), (wb2, wb1), (wb1, pc_out)):
            self.plain_edges.append((x, y))
        inst["rays"][side] = {
            "A": {"outer": wa1, "inner": wa2, "dir": da, "scale": ra},
            "B": {"outer": wb1, "inner": wb2, "dir": db, "scale": rb},
            "stubs": (pc_in, pc_out),
        }
        if side == "second":
            self._finish_path_crossing(inst)
        return pc_in, [wa1, wa2, inst["w0"], wb2, wb1], pc_out

    def _remainder(self, e, pt, toward: str) -> F:
        t = self._param(e, pt)
        return t if toward == "a" else F(1) - t

    @staticmethod
    def _mix(pt: Point, d: Point, frac: F) -> Point:
        return (pt[0] + d[0] * frac, pt[1] + d[1] * frac)

    def _finish_path_crossing(self, inst: dict) -> None:
        """Add the four expel gadgets bridging angularly adjacent rays."""
        tag = inst["tag"]
        pt = inst["point"]
        first = inst["rays"]["first"]
        second = inst["rays"]["second"]
        ray = {"A": first["A"], "B": first["B"],
               "C": second["A"], "D": second["B"]}

        def cross(d1, d2):
            return d1[0] * d2[1] - d1[1] * d2[0]

        if cross(ray["A"]["dir"], ray["C"]["dir"]) < 0:
            ray["C"], ray["D"] = ray["D"], ray["C"]
        host = self.registry.add(
            "path-crossing",
            {"w0": inst["w0"],
             "pc1": first["stubs"][0], "pc3": first["stubs"][1],
             "pc2": second["stubs"][0], "pc4": second["stubs"][1]},
            asks=0, point=(str(pt[0]), str(pt[1])),
            parent=self._host_at.get(pt, ""))
        for k, (r1, r2) in enumerate([("A", "C"), ("C", "B"),
                                      ("B", "D"), ("D", "A")]):
            u = ray[r1]["outer"]
            v = ray[r2]["inner"]
            pu, pv = self.coords[u], self.coords[v]
            mid = ((pu[0] + pv[0]) / 2, (pu[1] + pv[1]) / 2)
            inward = (pt[0] - mid[0], pt[1] - mid[1])
            p_in1 = (mid[0] + inward[0] / 4, mid[1] + inward[1] / 4)
            p_in2 = (mid[0] + inward[0] / 2, mid[1] + inward[1] / 2)
            if self.flavor == "cycle":
                x1 = self.vertex(f"{tag}:e{k}:v", *p_in1)
                x2 = self.vertex(f"{tag}:e{k}:vp", *p_in2)
                for edge in ((u, x1), (u, x2), (v, x1), (v, x2), (x1, x2)):
                    self.plain_edges.append(edge)
                self.registry.add("expel", {"u": u, "up": v, "v": x1, "vp": x2},
                                  asks=1, host="path-crossing",
                                  host_index=host.index)
            else:
                s = self.vertex(f"{tag}:e{k}:s", *p_in1)
                t2 = self.vertex(f"{tag}:e{k}:t", *p_in2)
                for edge in ((s, u), (u, t2), (t2, v), (v, s)):
                    self.plain_edges.append(edge)
                self.request(s, t2)
                self.registry.add("expel", {"s": s, "t": t2, "u": u, "v": v},
                                  asks=1, host="path-crossing",
                                  host_index=host.index)

    # ------------------------------------------------------------------
    def finish(self):
        g = graph_from_edges(self.next_id, self.plain_edges)
        rs = rotation_from_coordinates(g, self.coords)
        return g, rs
