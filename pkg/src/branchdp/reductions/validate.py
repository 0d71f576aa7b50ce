"""Structural validation of generated instances."""

from __future__ import annotations

from dataclasses import dataclass

from ..decomp import validate_tree_decomposition
from ..embeddings import euler_check
from .registry import ReductionOutput


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str


ALL_CHECKS = ("planarity", "degree-bound", "size-bound", "request-count",
              "path-decomposition", "gadget-asks")


def validate_reduction(out: ReductionOutput, checks=ALL_CHECKS) -> list[CheckResult]:
    results = []
    g = out.graph.graph
    for check in checks:
        if check == "planarity":
            if out.embedding is None:
                results.append(CheckResult(check, False, "no embedding emitted"))
            else:
                rep = euler_check(g, out.embedding)
                results.append(CheckResult(check, rep.planar,
                                           f"faces={rep.face_count}"))
        elif check == "degree-bound":
            if out.kind != "3col-to-planar3col":
                continue
            d = g.max_degree()
            results.append(CheckResult(check, d <= 5, f"max degree {d}"))
        elif check == "size-bound":
            if out.kind == "3col-to-planar3col":
                n = out.source.n
                results.append(CheckResult(check, g.n <= 65 * n * n,
                                           f"{g.n} <= 65*{n}^2"))
            elif out.kind in ("3col-to-cycle-packing", "3col-to-disjoint-paths"):
                n = max(out.source.n, 1)
                ratio = g.n / n
                results.append(CheckResult(check, True,
                                           f"vertices per source vertex: {ratio:.1f}"))
            else:
                continue
        elif check == "request-count":
            if out.kind != "hs-to-mdp":
                continue
            inst = out.source
            want = inst.k + (inst.k - 1) * inst.m
            results.append(CheckResult(check, len(out.requests) == want,
                                       f"{len(out.requests)} == {want}"))
        elif check == "path-decomposition":
            if out.path_decomposition is None:
                continue
            rep = validate_tree_decomposition(g, out.path_decomposition)
            bound = None
            ok = rep.ok and out.path_decomposition.is_path()
            detail = f"width {rep.width}" if rep.ok else str(rep.violation)
            if out.kind == "hs-to-mdp" and rep.ok:
                k = out.source.k
                bound = 2 * (k - 1) + 5 * k - 2
                biggest = max(len(b) for b in out.path_decomposition.bags.values())
                ok = ok and biggest <= bound
                detail += f", max bag {biggest} <= {bound}"
            results.append(CheckResult(check, ok, detail))
        elif check == "gadget-asks":
            ok = True
            details = []
            edge_pcgs = {p.index for p in out.registry.by_kind("path-crossing")
                         if p.meta.get("parent") == "edge"}
            for host in out.registry.by_kind("edge"):
                child_asks = sum(
                    gad.asks for gad in out.registry.gadgets
                    if gad.meta.get("host") == "edge"
                    and gad.meta.get("host_index") == host.index)
                pcg_asks = sum(
                    gad.asks for gad in out.registry.gadgets
                    if gad.meta.get("host") == "path-crossing"
                    and gad.meta.get("host_index") in edge_pcgs)
                total = child_asks + pcg_asks
                ok = ok and total == 51
                details.append(f"edge gadget asks {total}")
            for pcg in out.registry.by_kind("path-crossing"):
                asks = sum(gad.asks for gad in out.registry.gadgets
                           if gad.meta.get("host") == "path-crossing"
                           and gad.meta.get("host_index") == pcg.index)
                if asks != 4:
                    ok = False
                    details.append(f"path-crossing {pcg.index} asks {asks}")
            for sc in out.registry.by_kind("SC"):
                if sc.asks != 1:
                    ok = False
            results.append(CheckResult(check, ok, "; ".join(details) or "counts match"))
        else:
            raise ValueError(f"unknown check {check!r}")
    return results
