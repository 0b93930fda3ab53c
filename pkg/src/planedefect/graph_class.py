"""Membership in the class of graphs without 5-cycles whose triangles are
pairwise vertex-disjoint, plus the separating-cycle audit."""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

from .plane_graph import Graph, PlaneGraph, classify_cycle, identify, simple_cycles

__all__ = [
    "ClassReport",
    "SeparatingCycle",
    "triangles",
    "triangle_distance",
    "find_five_cycle",
    "in_class_G",
    "separating_cycle_audit",
    "identification_in_G",
    "on_triangle",
]


@dataclass(frozen=True)
class ClassReport:
    in_class: bool
    five_cycle_witness: Optional[Tuple[int, ...]]
    triangle_pair_witness: Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]]
    triangle_distance: float
    embedding_unverified: bool = False

    def to_dict(self) -> dict:
        d = self.triangle_distance
        return {
            "in_class": self.in_class,
            "five_cycle_witness": list(self.five_cycle_witness) if self.five_cycle_witness else None,
            "triangle_pair_witness": ([list(t) for t in self.triangle_pair_witness]
                                      if self.triangle_pair_witness else None),
            "triangle_distance": "inf" if math.isinf(d) else int(d),
            "embedding_unverified": self.embedding_unverified,
        }


@dataclass(frozen=True)
class SeparatingCycle:
    cycle: Tuple[int, ...]
    interior: frozenset
    exterior: frozenset
    # only meaningful for 4-cycles: exterior is {b, c} with b, c and one
    # cycle vertex forming a triangle
    exterior_shape_ok: Optional[bool] = None

    def to_dict(self) -> dict:
        return {
            "cycle": list(self.cycle),
            "length": len(self.cycle),
            "interior": sorted(self.interior),
            "exterior": sorted(self.exterior),
            "exterior_shape_ok": self.exterior_shape_ok,
        }


def triangles(g: Graph) -> List[Tuple[int, int, int]]:
    out = []
    for u in range(g.n):
        for v in sorted(g.adj[u]):
            if v <= u:
                continue
            for w in sorted(g.adj[u] & g.adj[v]):
                if w > v:
                    out.append((u, v, w))
    return out


def on_triangle(g: Graph) -> List[bool]:
    """``flags[v]`` is true when ``v`` lies on some 3-cycle."""
    flags = [False] * g.n
    for t in triangles(g):
        for v in t:
            flags[v] = True
    return flags


def _closest_triangles(g: Graph, tris):
    best, pair = math.inf, None
    for i, t in enumerate(tris):
        dist = g.distances_from(t)
        for s in tris[i + 1:]:
            d = min(dist.get(x, math.inf) for x in s)
            if d < best:
                best, pair = d, (t, s)
    return best, pair


def triangle_distance(g: Graph) -> float:
    """Minimum graph distance between two triangles; ``inf`` with fewer than two."""
    return _closest_triangles(g, triangles(g))[0]


def find_five_cycle(g: Graph) -> Optional[Tuple[int, ...]]:
    return next(simple_cycles(g, 5, min_len=5), None)


def in_class_G(g: Graph, embedding_unverified: bool = False) -> ClassReport:
    tris = triangles(g)
    dist, pair = _closest_triangles(g, tris)
    five = find_five_cycle(g)
    witness = pair if dist < 1 else None
    return ClassReport(
        in_class=five is None and witness is None,
        five_cycle_witness=five,
        triangle_pair_witness=witness,
        triangle_distance=dist,
        embedding_unverified=embedding_unverified,
    )


def _four_cycle_shape(g: Graph, cycle, exterior) -> bool:
    if len(exterior) != 2:
        return False
    b, c = sorted(exterior)
    return g.has_edge(b, c) and any(g.has_edge(v, b) and g.has_edge(v, c) for v in cycle)


def separating_cycle_audit(g: PlaneGraph, lengths: Sequence[int] = (3, 4, 7)) -> List[SeparatingCycle]:
    """All separating cycles of the given lengths, with the outer face as outside."""
    found = []
    wanted = set(lengths)
    for cyc in sorted(simple_cycles(g, max(wanted)), key=lambda c: (len(c), c)):
        if len(cyc) not in wanted:
            continue
        ref = classify_cycle(g, cyc)
        if not ref.separating:
            continue
        shape = _four_cycle_shape(g, cyc, ref.exterior) if len(cyc) == 4 else None
        found.append(SeparatingCycle(cyc, ref.interior, ref.exterior, shape))
    return found


def identification_in_G(g: Graph, parts: Sequence[Sequence[int]]) -> ClassReport:
    """Identify ``parts`` and test the abstract result for class membership."""
    return in_class_G(identify(g, parts), embedding_unverified=True)


def triangle_pairs_sharing_vertex(g: Graph):
    tris = triangles(g)
    return [(s, t) for s, t in combinations(tris, 2) if set(s) & set(t)]
