"""Gadget bookkeeping shared by all instance generators."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from ..decomp import TreeDecomposition
from ..embeddings import RotationSystem
from ..graphs import ColoredGraph, RequestSet


@dataclass
class GadgetInstance:
    kind: str
    index: int
    vertices: dict[str, int]          # symbolic name -> graph vertex id
    asks: int                         # cycles or requests this gadget asks
    meta: dict = field(default_factory=dict)


@dataclass
class GadgetRegistry:
    gadgets: list[GadgetInstance] = field(default_factory=list)

    def add(self, kind: str, vertices: dict[str, int], asks: int, **meta) -> GadgetInstance:
        inst = GadgetInstance(kind=kind, index=len(self.gadgets),
                              vertices=dict(vertices), asks=asks, meta=dict(meta))
        self.gadgets.append(inst)
        return inst

    def by_kind(self, kind: str) -> list[GadgetInstance]:
        return [g for g in self.gadgets if g.kind == kind]

    def total_asks(self) -> int:
        return sum(g.asks for g in self.gadgets)

    def to_jsonl(self) -> str:
        lines = []
        for g in self.gadgets:
            lines.append(json.dumps({
                "kind": g.kind, "index": g.index, "asks": g.asks,
                "vertices": g.vertices, "meta": g.meta,
            }, sort_keys=True))
        return "\n".join(lines) + ("\n" if lines else "")

    @classmethod
    def from_jsonl(cls, text: str) -> "GadgetRegistry":
        reg = cls()
        for line in text.splitlines():
            if not line.strip():
                continue
            d = json.loads(line)
            reg.gadgets.append(GadgetInstance(
                kind=d["kind"], index=d["index"],
                vertices={k: int(v) for k, v in d["vertices"].items()},
                asks=d["asks"], meta=d.get("meta", {})))
        return reg


@dataclass
class ReductionOutput:
    kind: str
    graph: ColoredGraph
    requests: RequestSet
    embedding: RotationSystem | None
    registry: GadgetRegistry
    id_map: dict
    l0: int | None = None
    path_decomposition: TreeDecomposition | None = None
    source: object = None
