"""Simple graphs, plane graphs given by rotation systems, and the cycle tools
built on top of them (face tracing, bounded cycle search, interior/exterior
of a cycle, vertex identification)."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

__all__ = [
    "GraphFormatError",
    "EmbeddingError",
    "Graph",
    "PlaneGraph",
    "Face",
    "CycleRef",
    "load",
    "loads_any",
    "dumps",
    "dumps_adjacency",
    "trace_faces",
    "find_cycles_up_to",
    "classify_cycle",
    "identify",
    "delete_vertices",
    "reduce_graph",
    "sigma",
]


class GraphFormatError(ValueError):
    """Raised when a graph file cannot be parsed."""


class EmbeddingError(ValueError):
    """Raised when a rotation system does not describe a connected plane graph."""


class Graph:
    """An undirected simple graph on vertices ``0..n-1``.

    ``origin[i]`` lists the vertices of some parent graph that were merged
    into vertex ``i`` (identity when the graph was built directly).
    """

    def __init__(self, adj: Sequence[Iterable[int]], origin=None):
        self.adj: Tuple[frozenset, ...] = tuple(frozenset(a) for a in adj)
        n = len(self.adj)
        for v, nbrs in enumerate(self.adj):
            for u in nbrs:
                if not 0 <= u < n:
                    raise GraphFormatError(f"vertex {v} lists unknown neighbor {u}")
                if u == v:
                    raise GraphFormatError(f"loop at vertex {v}")
                if v not in self.adj[u]:
                    raise GraphFormatError(f"asymmetric adjacency between {v} and {u}")
        if origin is None:
            origin = tuple((v,) for v in range(n))
        self.origin: Tuple[Tuple[int, ...], ...] = tuple(tuple(o) for o in origin)

    @property
    def n(self) -> int:
        return len(self.adj)

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def edges(self) -> List[Tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in sorted(self.adj[u]) if u < v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for u in self.adj[v]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return len(seen) == self.n

    def distances_from(self, sources: Iterable[int]) -> Dict[int, int]:
        dist = {s: 0 for s in sources}
        frontier = list(dist)
        while frontier:
            nxt = []
            for v in frontier:
                for u in self.adj[v]:
                    if u not in dist:
                        dist[u] = dist[v] + 1
                        nxt.append(u)
            frontier = nxt
        return dist

    def __repr__(self) -> str:
        return f"{type(self).__name__}(n={self.n}, m={self.edge_count})"


@dataclass(frozen=True)
class Face:
    id: int
    walk: Tuple[Tuple[int, int], ...]
    degree: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "degree", len(self.walk))

    @property
    def vertices(self) -> Tuple[int, ...]:
        """Vertices in walk order (a vertex may repeat on non-simple faces)."""
        return tuple(u for u, _ in self.walk)

    @property
    def boundary(self) -> frozenset:
        return frozenset(u for u, _ in self.walk)

    @property
    def is_simple(self) -> bool:
        return self.degree >= 3 and len(self.boundary) == self.degree


def trace_faces(g: "PlaneGraph") -> List[Face]:
    """Trace the faces of a rotation system.

    Arriving at ``v`` along ``(u, v)`` the walk leaves along ``(v, w)`` where
    ``w`` follows ``u`` in the clockwise rotation of ``v``. Darts are visited
    in (tail, rotation position) order, which fixes the face ids.
    """
    if g.n == 1:
        return [Face(0, ())]
    pos = [{u: i for i, u in enumerate(r)} for r in g.rotation]
    face_of: Dict[Tuple[int, int], int] = {}
    faces = []
    for u in range(g.n):
        for v in g.rotation[u]:
            if (u, v) in face_of:
                continue
            fid = len(faces)
            walk = []
            a, b = u, v
            while (a, b) not in face_of:
                face_of[(a, b)] = fid
                walk.append((a, b))
                rot_b = g.rotation[b]
                c = rot_b[(pos[b][a] + 1) % len(rot_b)]
                a, b = b, c
            faces.append(Face(fid, tuple(walk)))
    return faces


class PlaneGraph(Graph):
    """A connected simple plane graph described by a rotation system.

    ``rotation[v]`` lists the neighbors of ``v`` in clockwise order. Faces are
    traced eagerly; ``outer`` is the id of the designated outer face.
    """

    def __init__(self, rotation: Sequence[Sequence[int]], outer: Optional[int] = None,
                 precolor: Optional[Dict[int, int]] = None):
        if len(rotation) < 1:
            raise EmbeddingError("a plane graph needs at least one vertex")
        self.rotation: Tuple[Tuple[int, ...], ...] = tuple(tuple(r) for r in rotation)
        for v, r in enumerate(self.rotation):
            if len(set(r)) != len(r):
                raise EmbeddingError(f"vertex {v} lists a neighbor twice")
        try:
            super().__init__(self.rotation)
        except GraphFormatError as exc:
            raise EmbeddingError(str(exc)) from exc
        if not self.is_connected():
            raise EmbeddingError("graph is disconnected")
        self.faces: Tuple[Face, ...] = tuple(trace_faces(self))
        euler = self.n - self.edge_count + len(self.faces)
        if euler != 2:
            raise EmbeddingError(f"Euler check failed: V-E+F = {euler}, rotation system is not planar")
        self.face_of: Dict[Tuple[int, int], int] = {
            d: f.id for f in self.faces for d in f.walk}
        if outer is None:
            outer = max(self.faces, key=lambda f: (f.degree, -f.id)).id
        if not 0 <= outer < len(self.faces):
            raise EmbeddingError(f"no face with id {outer}")
        self.outer: int = outer
        self.precolor: Dict[int, int] = dict(precolor or {})

    @property
    def outer_face(self) -> Face:
        return self.faces[self.outer]

    def with_outer(self, outer: int) -> "PlaneGraph":
        return PlaneGraph(self.rotation, outer=outer, precolor=self.precolor)

    def face_for_cycle(self, cycle: Sequence[int]) -> Optional[int]:
        """Id of the face whose boundary walk is ``cycle`` (either direction)."""
        k = len(cycle)
        cyc = tuple(cycle)
        rev = tuple(reversed(cyc))
        for f in self.faces:
            if f.degree != k:
                continue
            vs = f.vertices
            for i in range(k):
                rotated = vs[i:] + vs[:i]
                if rotated == cyc or rotated == rev:
                    return f.id
        return None

    def incident_faces(self, v: int) -> List[int]:
        """Face ids at the corners of ``v`` in rotation order (may repeat)."""
        return [self.face_of[(v, u)] for u in self.rotation[v]]


@dataclass(frozen=True)
class CycleRef:
    cycle: Tuple[int, ...]
    interior: frozenset
    exterior: frozenset

    @property
    def separating(self) -> bool:
        return bool(self.interior) and bool(self.exterior)

    def __len__(self) -> int:
        return len(self.cycle)


def sigma(g: Graph) -> int:
    return g.n + g.edge_count


def _check_cycle(g: Graph, cycle: Sequence[int]) -> None:
    k = len(cycle)
    if k < 3 or len(set(cycle)) != k:
        raise ValueError(f"{tuple(cycle)} is not a simple cycle")
    for i in range(k):
        if not g.has_edge(cycle[i], cycle[(i + 1) % k]):
            raise ValueError(f"{tuple(cycle)} is not a cycle of the graph: "
                             f"missing edge {cycle[i]}-{cycle[(i + 1) % k]}")


def simple_cycles(g: Graph, max_len: int, min_len: int = 3):
    """Yield each simple cycle of length in ``[min_len, max_len]`` once.

    A cycle is reported starting from its smallest vertex, in the direction
    whose second vertex is smaller than its last.
    """
    adj = [sorted(a) for a in g.adj]
    for s in range(g.n):
        path = [s]
        on_path = {s}

        def extend(v):
            for w in adj[v]:
                if w == s and len(path) >= min_len and path[1] < path[-1]:
                    yield tuple(path)
                elif w > s and w not in on_path and len(path) < max_len:
                    path.append(w)
                    on_path.add(w)
                    yield from extend(w)
                    path.pop()
                    on_path.discard(w)

        yield from extend(s)


def find_cycles_up_to(g: Graph, max_len: int) -> List[Tuple[int, ...]]:
    """All simple cycles of length at most ``max_len`` (at most 7)."""
    if max_len > 7:
        raise ValueError("cycle search is bounded to length 7")
    return sorted(simple_cycles(g, max_len), key=lambda c: (len(c), c))


def classify_cycle(g: PlaneGraph, cycle: Sequence[int]) -> CycleRef:
    """Split ``V - C`` into the vertices inside and outside ``cycle``.

    The side holding the designated outer face counts as outside.
    """
    _check_cycle(g, cycle)
    k = len(cycle)
    on_cycle = set(cycle)
    cycle_edges = {frozenset((cycle[i], cycle[(i + 1) % k])) for i in range(k)}
    parent = list(range(len(g.faces)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (a, b), fid in g.face_of.items():
        if frozenset((a, b)) not in cycle_edges:
            ra, rb = find(fid), find(g.face_of[(b, a)])
            if ra != rb:
                parent[ra] = rb
    outside = find(g.outer)
    interior, exterior = set(), set()
    for v in range(g.n):
        if v in on_cycle:
            continue
        side = find(g.face_of[(v, g.rotation[v][0])])
        (exterior if side == outside else interior).add(v)
    return CycleRef(tuple(cycle), frozenset(interior), frozenset(exterior))


def delete_vertices(g: Graph, removed: Iterable[int]) -> Graph:
    removed = set(removed)
    keep = [v for v in range(g.n) if v not in removed]
    new_id = {v: i for i, v in enumerate(keep)}
    adj = [[new_id[u] for u in g.adj[v] if u in new_id] for v in keep]
    return Graph(adj, origin=[g.origin[v] for v in keep])


def identify(g: Graph, parts: Sequence[Sequence[int]]) -> Graph:
    """Merge each vertex set in ``parts`` into one vertex.

    Parallel edges are merged. The merged vertex takes the position of the
    first listed member of its part; ``origin`` records the merged vertices.
    Raises ``ValueError`` if a part contains two adjacent vertices.
    """
    rep = list(range(g.n))
    seen = set()
    for part in parts:
        part = list(part)
        if not part:
            continue
        if seen.intersection(part):
            raise ValueError("parts must be pairwise disjoint")
        seen.update(part)
        members = set(part)
        for v in part:
            if g.adj[v] & members:
                u = min(g.adj[v] & members)
                raise ValueError(f"identifying adjacent vertices {v} and {u} would create a loop")
            rep[v] = part[0]
    keep = [v for v in range(g.n) if rep[v] == v]
    new_id = {v: i for i, v in enumerate(keep)}
    adj = [set() for _ in keep]
    for u, v in g.edges():
        a, b = new_id[rep[u]], new_id[rep[v]]
        adj[a].add(b)
        adj[b].add(a)
    origin = [[] for _ in keep]
    for v in range(g.n):
        origin[new_id[rep[v]]].extend(g.origin[v])
    return Graph(adj, origin=[tuple(sorted(o)) for o in origin])


def reduce_graph(g: Graph, delete: Iterable[int] = (), parts: Sequence[Sequence[int]] = ()) -> Graph:
    """Delete vertices, then identify parts (given in ``g``'s ids)."""
    h = delete_vertices(g, delete)
    where = {o[0]: i for i, o in enumerate(h.origin)}
    return identify(h, [[where[v] for v in part] for part in parts])


# ---------------------------------------------------------------------------
# text format

_HEADER = re.compile(r"^(vertices|graph)\s+(\d+)$")


def _strip(text: str) -> List[Tuple[int, str]]:
    lines = []
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append((no, line))
    return lines


def _parse(text: str):
    lines = _strip(text)
    if not lines:
        raise GraphFormatError("empty graph file")
    no, head = lines[0]
    m = _HEADER.match(head)
    if not m:
        raise GraphFormatError(f"line {no}: expected 'vertices N' or 'graph N'")
    kind, n = m.group(1), int(m.group(2))
    rows: Dict[int, List[int]] = {}
    outer = None
    precolor: Dict[int, int] = {}
    for no, line in lines[1:]:
        key, sep, rest = line.partition(":")
        if not sep:
            raise GraphFormatError(f"line {no}: missing ':'")
        key = key.strip()
        try:
            if key == "outer":
                outer = [int(t) for t in rest.split()]
            elif key == "precolor":
                for tok in rest.split():
                    v, _, c = tok.partition("=")
                    precolor[int(v)] = int(c)
            else:
                v = int(key)
                if v in rows:
                    raise GraphFormatError(f"line {no}: vertex {v} listed twice")
                rows[v] = [int(t) for t in rest.replace(",", " ").split()]
        except ValueError as exc:
            if isinstance(exc, GraphFormatError):
                raise
            raise GraphFormatError(f"line {no}: {exc}") from exc
    if sorted(rows) != list(range(n)):
        raise GraphFormatError(f"expected rows for vertices 0..{n - 1}")
    for v, c in precolor.items():
        if not 0 <= v < n or c not in (1, 2, 3):
            raise GraphFormatError(f"bad precolor entry {v}={c}")
    return kind, [rows[v] for v in range(n)], outer, precolor


def load(text: str) -> PlaneGraph:
    """Parse the ``.pg`` plane-graph format."""
    kind, rows, outer, precolor = _parse(text)
    if kind != "vertices":
        raise GraphFormatError("expected a plane graph ('vertices N' header)")
    g = PlaneGraph(rows, precolor=precolor)
    if outer is not None:
        fid = g.face_for_cycle(outer)
        if fid is None:
            raise EmbeddingError(f"outer walk {outer} does not match a traced face")
        g = g.with_outer(fid)
    return g


def loads_any(text: str) -> Graph:
    """Parse either a ``.pg`` plane graph or an adjacency-list graph."""
    kind, rows, _, _ = _parse(text)
    if kind == "vertices":
        return load(text)
    return Graph(rows)


def dumps(g: PlaneGraph, outer: bool = True) -> str:
    lines = [f"vertices {g.n}"]
    lines += [f"{v}: {' '.join(map(str, r))}" for v, r in enumerate(g.rotation)]
    if outer and g.outer_face.degree:
        lines.append("outer: " + " ".join(map(str, g.outer_face.vertices)))
    if g.precolor:
        lines.append("precolor: " + " ".join(f"{v}={c}" for v, c in sorted(g.precolor.items())))
    return "\n".join(lines) + "\n"


def dumps_adjacency(g: Graph) -> str:
    lines = [f"graph {g.n}"]
    lines += [f"{v}: {' '.join(map(str, sorted(a)))}" for v, a in enumerate(g.adj)]
    return "\n".join(lines) + "\n"
