"""Non-crossing matchings and partitions over an ordered ground set."""

from __future__ import annotations

import itertools
import math
from typing import Iterable, Sequence

Pair = frozenset


def catalan(n: int) -> int:
    return math.comb(2 * n, n) // (n + 1)


def _position_map(order: Sequence) -> dict:
    pos = {}
    for i, x in enumerate(order, start=1):
        if x in pos:
            raise ValueError(f"duplicate ground element {x!r}")
        pos[x] = i
    return pos


def _pairs_cross(a: int, b: int, c: int, d: int) -> bool:
    """True unless positions fall into one of the four nested/disjoint
    patterns a<b<c<d, a<c<d<b, c<d<a<b, c<a<b<d."""
    assert a < b and c < d
    ok = (a < b < c < d) or (a < c < d < b) or (c < d < a < b) or (c < a < b < d)
    return not ok


def is_noncrossing_matching(pairs: Iterable[Iterable], order: Sequence) -> bool:
    pos = _position_map(order)
    seen: set = set()
    normalized = []
    for p in pairs:
        p = list(p)
        if len(p) != 2 or p[0] == p[1]:
            raise ValueError(f"not a pair: {p!r}")
        for x in p:
            if x not in pos:
                raise ValueError(f"pair member {x!r} outside the ground set")
            if x in seen:
                raise ValueError(f"element {x!r} matched twice")
            seen.add(x)
        a, b = sorted((pos[p[0]], pos[p[1]]))
        normalized.append((a, b))
    for (a, b), (c, d) in itertools.combinations(normalized, 2):
        if _pairs_cross(a, b, c, d):
            return False
    return True


def enumerate_noncrossing_perfect_matchings(order: Sequence) -> list[frozenset[Pair]]:
    """All non-crossing perfect matchings, Catalan(k/2) many, in lexicographic
    order of their sorted pair lists. Odd ground sets have none."""
    k = len(order)
    _position_map(order)
    if k % 2 == 1:
        return []

    def rec(idxs: tuple[int, ...]) -> list[list[tuple[int, int]]]:
        if not idxs:
            return [[]]
        out = []
        first = idxs[0]
        for j in range(1, len(idxs), 2):
            inside = idxs[1:j]
            outside = idxs[j + 1:]
            for m1 in rec(inside):
                for m2 in rec(outside):
                    out.append([(first, idxs[j])] + m1 + m2)
        return out

    raw = rec(tuple(range(k)))
    result = []
    for m in raw:
        result.append(frozenset(frozenset((order[i], order[j])) for i, j in m))
    result.sort(key=lambda m: sorted(tuple(sorted(p, key=str)) for p in m))
    return result


def all_perfect_matchings(order: Sequence) -> list[frozenset[Pair]]:
    """Brute-force enumeration of every perfect matching (test oracle)."""
    k = len(order)
    if k % 2 == 1:
        return []

    def rec(items: tuple) -> list[list[Pair]]:
        if not items:
            return [[]]
        first, rest = items[0], items[1:]
        out = []
        for i, other in enumerate(rest):
            for m in rec(rest[:i] + rest[i + 1:]):
                out.append([frozenset((first, other))] + m)
        return out

    return [frozenset(m) for m in rec(tuple(order))]


def all_partitions(k: int) -> list[frozenset[frozenset[int]]]:
    """Every set partition of [k] (Bell(k) many)."""
    if k == 0:
        return [frozenset()]
    out: list[list[list[int]]] = [[[1]]]
    for x in range(2, k + 1):
        nxt = []
        for part in out:
            for i in range(len(part)):
                nxt.append([blk + [x] if j == i else blk for j, blk in enumerate(part)])
            nxt.append(part + [[x]])
        out = nxt
    return [frozenset(frozenset(b) for b in part) for part in out]


def is_noncrossing_partition(partition: Iterable[Iterable[int]]) -> bool:
    blocks = [sorted(b) for b in partition]
    for b1, b2 in itertools.combinations(blocks, 2):
        for a, b in itertools.combinations(b1, 2):
            for c, d in itertools.combinations(b2, 2):
                if _pairs_cross(a, b, c, d):
                    return False
    return True


def enumerate_noncrossing_partitions(k: int) -> list[frozenset[frozenset[int]]]:
    """All non-crossing partitions of [k], Catalan(k) many, lexicographically
    ordered on sorted block lists."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    result = [p for p in all_partitions(k) if is_noncrossing_partition(p)]
    result.sort(key=lambda p: sorted(sorted(b) for b in p))
    return result
