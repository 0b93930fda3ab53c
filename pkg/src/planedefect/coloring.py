"""Defective 3-colorings: verification, an exact backtracking solver, and the
superextension check for a precolored triangle or 7-cycle.

A coloring is a plain ``dict`` mapping vertex -> color in {1, 2, 3}. The
defect of a colored vertex counts its colored neighbors of the same color;
uncolored neighbors never count.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .plane_graph import Graph

__all__ = [
    "ColoringSpec",
    "Violation",
    "SolveResult",
    "BoundaryResult",
    "SuperextensionReport",
    "defect",
    "verify",
    "is_properly_colored",
    "is_nicely_colored",
    "solve",
    "enumerate_boundary_colorings",
    "check_superextendable",
    "brute_force_extend",
]

COLORS = (1, 2, 3)


@dataclass(frozen=True)
class ColoringSpec:
    """Per-color defect caps; the deficiency used by "nicely colored" equals the cap."""

    caps: Tuple[int, int, int] = (1, 1, 0)

    def __post_init__(self):
        caps = tuple(int(c) for c in self.caps)
        if len(caps) != 3 or min(caps) < 0:
            raise ValueError(f"expected three nonnegative caps, got {self.caps!r}")
        object.__setattr__(self, "caps", caps)

    def cap(self, color: int) -> int:
        return self.caps[color - 1]

    @classmethod
    def parse(cls, text: str) -> "ColoringSpec":
        return cls(tuple(int(t) for t in text.split(",")))


@dataclass(frozen=True)
class Violation:
    vertex: int
    color: int
    defect: int
    cap: int


@dataclass
class SolveResult:
    coloring: Optional[Dict[int, int]]
    nodes: int = 0
    max_depth: int = 0

    @property
    def sat(self) -> bool:
        return self.coloring is not None

    def to_dict(self) -> dict:
        return {
            "status": "SAT" if self.sat else "UNSAT",
            "coloring": ({str(v): c for v, c in sorted(self.coloring.items())}
                         if self.sat else None),
            "nodes": self.nodes,
            "max_depth": self.max_depth,
        }


def defect(g: Graph, col: Dict[int, int], v: int) -> int:
    c = col[v]
    return sum(1 for u in g.adj[v] if col.get(u) == c)


def verify(g: Graph, col: Dict[int, int], spec: ColoringSpec = ColoringSpec()) -> List[Violation]:
    """Every vertex whose defect exceeds its color's cap; empty means valid."""
    missing = [v for v in range(g.n) if v not in col]
    if missing:
        raise ValueError(f"coloring is not total, uncolored: {missing[:5]}")
    out = []
    for v in range(g.n):
        c = col[v]
        if c not in COLORS:
            raise ValueError(f"vertex {v} has invalid color {c}")
        d = defect(g, col, v)
        if d > spec.cap(c):
            out.append(Violation(v, c, d, spec.cap(c)))
    return out


def _partial_violations(g: Graph, col: Dict[int, int], spec: ColoringSpec) -> List[Violation]:
    return [Violation(v, c, defect(g, col, v), spec.cap(c))
            for v, c in col.items() if defect(g, col, v) > spec.cap(c)]


def is_properly_colored(g: Graph, col: Dict[int, int], v: int) -> bool:
    if v not in col:
        raise ValueError(f"vertex {v} is uncolored")
    return defect(g, col, v) == 0


def is_nicely_colored(g: Graph, col: Dict[int, int], v: int,
                      spec: ColoringSpec = ColoringSpec()) -> bool:
    if v not in col:
        raise ValueError(f"vertex {v} is uncolored")
    return defect(g, col, v) <= max(spec.cap(col[v]) - 1, 0)


def solve(g: Graph, spec: ColoringSpec = ColoringSpec(), pinned: Optional[Dict[int, int]] = None,
          proper_frontier: Iterable[int] = (), anchor: Optional[Iterable[int]] = None) -> SolveResult:
    """Extend ``pinned`` to a total valid coloring, or report UNSAT.

    Vertices in ``proper_frontier`` must avoid the colors of their neighbors
    in ``anchor`` (all pinned vertices by default). The search branches on the uncolored vertex with the fewest
    feasible colors (lowest id on ties) and tries colors in order 1, 2, 3,
    so the result is deterministic.
    """
    pinned = dict(pinned or {})
    bad = _partial_violations(g, pinned, spec)
    if bad:
        raise ValueError(f"pinned assignment is invalid at vertices {[b.vertex for b in bad]}")
    n = g.n
    adj = [tuple(sorted(a)) for a in g.adj]
    caps = (None,) + spec.caps
    anchor = set(pinned) if anchor is None else set(anchor)
    if not anchor <= set(pinned):
        raise ValueError("anchor vertices must be pinned")
    forbidden = [0] * n  # bitmask over colors
    for v in set(proper_frontier):
        for u in adj[v]:
            if u in anchor:
                forbidden[v] |= 1 << pinned[u]
    color = [0] * n
    same = [0] * n
    for v, c in pinned.items():
        if forbidden[v] & (1 << c):
            return SolveResult(None)
        color[v] = c
    for v in pinned:
        same[v] = sum(1 for u in adj[v] if color[u] == color[v])
    result = SolveResult(None)

    def feasible(v):
        out = []
        for c in COLORS:
            if forbidden[v] & (1 << c):
                continue
            cap = caps[c]
            k = 0
            ok = True
            for u in adj[v]:
                if color[u] == c:
                    k += 1
                    if k > cap or same[u] + 1 > cap:
                        ok = False
                        break
            if ok:
                out.append(c)
        return out

    def search(depth):
        result.nodes += 1
        result.max_depth = max(result.max_depth, depth)
        best, best_opts = -1, None
        for v in range(n):
            if color[v]:
                continue
            opts = feasible(v)
            if not opts:
                return False
            if best_opts is None or len(opts) < len(best_opts):
                best, best_opts = v, opts
                if len(opts) == 1:
                    break
        if best_opts is None:
            return True
        v = best
        for c in best_opts:
            color[v] = c
            nbrs = [u for u in adj[v] if color[u] == c]
            same[v] = len(nbrs)
            for u in nbrs:
                same[u] += 1
            if search(depth + 1):
                return True
            for u in nbrs:
                same[u] -= 1
            color[v] = 0
            same[v] = 0
        return False

    if search(0):
        result.coloring = {v: color[v] for v in range(n)}
    return result


def _cycle_graph_ok(cycle: Sequence[int], col: Dict[int, int], spec: ColoringSpec) -> bool:
    k = len(cycle)
    for i in range(k):
        c = col[cycle[i]]
        d = (col[cycle[i - 1]] == c) + (col[cycle[(i + 1) % k]] == c)
        if d > spec.cap(c):
            return False
    return True


def enumerate_boundary_colorings(cycle: Sequence[int], spec: ColoringSpec = ColoringSpec(),
                                 g: Optional[Graph] = None) -> List[Dict[int, int]]:
    """All colorings of ``cycle`` that are valid on the cycle as a standalone graph."""
    cycle = tuple(cycle)
    if len(cycle) < 3 or len(set(cycle)) != len(cycle):
        raise ValueError(f"{cycle} is not a cycle")
    if g is not None:
        for i in range(len(cycle)):
            if not g.has_edge(cycle[i], cycle[(i + 1) % len(cycle)]):
                raise ValueError(f"{cycle} is not a cycle of the graph")
    out = []
    for colors in product(COLORS, repeat=len(cycle)):
        col = dict(zip(cycle, colors))
        if _cycle_graph_ok(cycle, col, spec):
            out.append(col)
    return out


@dataclass
class BoundaryResult:
    boundary: Dict[int, int]
    extension: Optional[Dict[int, int]]
    nodes: int = 0

    @property
    def passed(self) -> bool:
        return self.extension is not None


@dataclass
class SuperextensionReport:
    cycle: Tuple[int, ...]
    results: List[BoundaryResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def failures(self) -> List[BoundaryResult]:
        return [r for r in self.results if not r.passed]

    def to_dict(self) -> dict:
        return {
            "cycle": list(self.cycle),
            "boundary_colorings": len(self.results),
            "passed": self.passed,
            "failures": [{str(v): c for v, c in sorted(r.boundary.items())} for r in self.failures],
        }


def without_chords(g: Graph, cycle: Sequence[int]) -> Graph:
    """``g`` minus edges joining two cycle vertices that are not cycle edges."""
    on = set(cycle)
    k = len(cycle)
    keep = {frozenset((cycle[i], cycle[(i + 1) % k])) for i in range(k)}
    adj = [set(a) for a in g.adj]
    for u, v in g.edges():
        if u in on and v in on and frozenset((u, v)) not in keep:
            adj[u].discard(v)
            adj[v].discard(u)
    return Graph(adj, origin=g.origin)


def check_superextendable(g: Graph, cycle: Sequence[int],
                          spec: ColoringSpec = ColoringSpec()) -> SuperextensionReport:
    """Try to superextend every valid coloring of ``cycle`` to all of ``g``.

    Defects among cycle vertices are measured on the cycle alone, so chords
    of the cycle are ignored while extending.
    """
    boundary = enumerate_boundary_colorings(cycle, spec, g)
    host = without_chords(g, cycle)
    on = set(cycle)
    frontier = [v for v in range(g.n) if v not in on and g.adj[v] & on]
    report = SuperextensionReport(tuple(cycle))
    for col in boundary:
        res = solve(host, spec, col, frontier)
        report.results.append(BoundaryResult(col, res.coloring, res.nodes))
    return report


def brute_force_extend(g: Graph, spec: ColoringSpec, pinned: Dict[int, int],
                       proper_frontier: Iterable[int] = (),
                       anchor: Optional[Iterable[int]] = None) -> Optional[Dict[int, int]]:
    """Plain enumeration of every completion of ``pinned``; first valid one wins.

    Shares no code with :func:`solve` and is meant as its independent check
    on small graphs.
    """
    frontier = set(proper_frontier)
    anchor = set(pinned) if anchor is None else set(anchor)
    free = [v for v in range(g.n) if v not in pinned]
    edges = g.edges()
    caps = dict(zip(COLORS, spec.caps))
    for colors in product(COLORS, repeat=len(free)):
        col = dict(pinned)
        col.update(zip(free, colors))
        if any(col[v] == col[u] for v in frontier for u in g.adj[v] if u in anchor):
            continue
        count = [0] * g.n
        for u, v in edges:
            if col[u] == col[v]:
                count[u] += 1
                count[v] += 1
        if all(count[v] <= caps[col[v]] for v in range(g.n)):
            return col
    return None
