"""Test-instance generators: exhaustive small plane graphs, random members of
the class, and graphs with a configuration planted around a chosen vertex.

Randomness always comes from ``random.Random(seed)`` (Mersenne Twister), so
equal seeds give equal graphs on every platform.
"""

from __future__ import annotations

import math
import random
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np
from scipy.spatial import Delaunay

from .graph_class import find_five_cycle, in_class_G, triangles
from .plane_graph import EmbeddingError, Graph, PlaneGraph

__all__ = [
    "canonical_form",
    "from_networkx",
    "from_drawing",
    "enumerate_plane_graphs",
    "enumerate_connected_planar",
    "sample_in_class",
    "SamplerGaveUp",
    "plant_configuration",
    "PLANTABLE",
]


class SamplerGaveUp(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# conversions


def from_networkx(G: nx.Graph, outer: Optional[int] = None) -> PlaneGraph:
    """Embed an abstract planar graph (vertices must be ``0..n-1``)."""
    ok, emb = nx.check_planarity(G)
    if not ok:
        raise EmbeddingError("graph is not planar")
    n = G.number_of_nodes()
    return PlaneGraph([list(emb.neighbors_cw_order(v)) if G.degree(v) else [] for v in range(n)],
                      outer=outer)


def from_drawing(pos: Sequence[Tuple[float, float]], edges, outer_cycle=None) -> PlaneGraph:
    """Rotation system read off a straight-line drawing (clockwise by angle).

    If ``outer_cycle`` is given, that face becomes the outer face.
    """
    nbrs: List[List[int]] = [[] for _ in pos]
    for u, v in edges:
        nbrs[u].append(v)
        nbrs[v].append(u)
    rot = []
    for v, ns in enumerate(nbrs):
        x, y = pos[v]
        rot.append(sorted(ns, key=lambda u: -math.atan2(pos[u][1] - y, pos[u][0] - x)))
    g = PlaneGraph(rot)
    if outer_cycle is not None:
        fid = g.face_for_cycle(outer_cycle)
        if fid is None:
            raise EmbeddingError("outer cycle is not a face of the drawing")
        g = g.with_outer(fid)
    return g


# ---------------------------------------------------------------------------
# canonical form (individualization-refinement, twins collapsed)


def _refine(adj, cells):
    cells = [list(c) for c in cells]
    while True:
        index = {}
        for i, c in enumerate(cells):
            for v in c:
                index[v] = i
        out = []
        for c in cells:
            if len(c) == 1:
                out.append(c)
                continue
            sig = {}
            for v in c:
                counts = [0] * len(cells)
                for u in adj[v]:
                    counts[index[u]] += 1
                sig.setdefault(tuple(counts), []).append(v)
            for key in sorted(sig):
                out.append(sig[key])
        if len(out) == len(cells):
            return out
        cells = out


def canonical_form(adj: Sequence[frozenset]) -> Tuple[int, int]:
    """``(n, bits)`` where ``bits`` encodes the lexicographically least
    adjacency matrix over the refinement search tree; equal iff isomorphic."""
    n = len(adj)
    best = [None]

    def cert(order):
        pos = {v: i for i, v in enumerate(order)}
        bits = 0
        for v in range(n):
            for u in adj[v]:
                a, b = pos[v], pos[u]
                if a < b:
                    bits |= 1 << (a * n + b)
        return bits

    def search(cells):
        cells = _refine(adj, cells)
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            c = cert([c[0] for c in cells])
            if best[0] is None or c < best[0]:
                best[0] = c
            return
        cell = cells[target]
        tried = []
        for v in cell:
            # twins are interchangeable, so one representative suffices
            if any(adj[v] - {w} == adj[w] - {v} for w in tried):
                continue
            tried.append(v)
            rest = [w for w in cell if w != v]
            search(cells[:target] + [[v], rest] + cells[target + 1:])

    search([list(range(n))] if n else [])
    return n, best[0] or 0


# ---------------------------------------------------------------------------
# enumeration


def _articulation(adj, n):
    g = nx.Graph()
    g.add_nodes_from(range(n))
    g.add_edges_from((u, v) for u in range(n) for v in adj[u] if u < v)
    return set(nx.articulation_points(g))


def _is_planar(adj, n):
    m = sum(len(a) for a in adj) // 2
    if n >= 3 and m > 3 * n - 6:
        return False
    g = nx.Graph()
    g.add_nodes_from(range(n))
    g.add_edges_from((u, v) for u in range(n) for v in adj[u] if u < v)
    return nx.check_planarity(g)[0]


def enumerate_connected_planar(n: int) -> List[Tuple[frozenset, ...]]:
    """Adjacency tuples of all connected planar graphs on ``n`` vertices, one
    per isomorphism class, in a fixed order.

    A graph is built from a smaller one by adding a vertex of least degree
    among its non-cut vertices; that vertex's removal keeps the graph
    connected and planar, so every class is reached.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n > 10:
        raise ValueError("enumeration is limited to n <= 10")
    level = [(frozenset(),)]
    for k in range(2, n + 1):
        seen = {}
        for adj in level:
            for mask in range(1, 1 << (k - 1)):
                nb = frozenset(i for i in range(k - 1) if mask >> i & 1)
                new = [set(a) for a in adj] + [set(nb)]
                for u in nb:
                    new[u].add(k - 1)
                child = tuple(frozenset(a) for a in new)
                cut = _articulation(child, k)
                low = min(len(child[v]) for v in range(k) if v not in cut)
                if len(nb) != low:
                    continue
                key = canonical_form(child)
                if key in seen:
                    continue
                if _is_planar(child, k):
                    seen[key] = child
                else:
                    seen[key] = None
        level = [seen[key] for key in sorted(seen) if seen[key] is not None]
    return level


def enumerate_plane_graphs(n: int) -> Iterator[PlaneGraph]:
    """Every connected simple planar graph on ``n`` vertices up to
    isomorphism, each with one embedding."""
    for adj in enumerate_connected_planar(n):
        g = nx.Graph()
        g.add_nodes_from(range(n))
        g.add_edges_from((u, v) for u in range(n) for v in adj[u] if u < v)
        yield from_networkx(g)


# ---------------------------------------------------------------------------
# random members of the class


def _witness_edges(g: Graph, protected) -> List[Tuple[int, int]]:
    five = find_five_cycle(g)
    if five is not None:
        cyc = list(five)
    else:
        tris = triangles(g)
        cyc = None
        for i, s in enumerate(tris):
            for t in tris[i + 1:]:
                if set(s) & set(t):
                    # break the triangle that is not protected
                    cyc = list(t) if all(frozenset(e) in protected for e in _cycle_edges(s)) else list(s)
                    break
            if cyc:
                break
        if cyc is None:
            return []
    return [e for e in _cycle_edges(cyc) if frozenset(e) not in protected]


def _cycle_edges(cyc):
    return [(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc))]


def sample_in_class(n: int, seed: int, outer: int = 3, max_tries: int = 50,
                    min_degree: int = 0) -> PlaneGraph:
    """A random connected plane graph in the class with a triangle or
    7-cycle as its outer face.

    ``n`` points (the ``outer`` hull corners plus random interior points)
    are Delaunay-triangulated, then edges on 5-cycles or on intersecting
    triangles are deleted at random until none remain. Hull edges are never
    deleted, and every deleted edge lies on a cycle, so the graph stays
    connected and the hull stays the outer face.
    """
    if outer not in (3, 7):
        raise ValueError("outer face must have length 3 or 7")
    if not outer <= n <= 40:
        raise ValueError(f"n must be between {outer} and 40")
    rng = random.Random(seed)
    for _ in range(max_tries):
        g = _thin(_triangulation(n, outer, rng), outer, rng, greedy=min_degree > 0)
        if g is not None and all(g.degree(v) >= min_degree for v in range(outer, n)):
            return g
    raise SamplerGaveUp(f"no in-class sample after {max_tries} tries (n={n}, seed={seed})")


def _triangulation(n, outer, rng):
    hull = [(math.cos(2 * math.pi * i / outer), math.sin(2 * math.pi * i / outer)) for i in range(outer)]
    inner_r = math.cos(math.pi / outer) * 0.9
    pts = list(hull)
    while len(pts) < n:
        r = inner_r * math.sqrt(rng.random())
        a = 2 * math.pi * rng.random()
        pts.append((r * math.cos(a), r * math.sin(a)))
    arr = np.array(pts)
    tri = Delaunay(arr)
    edges = set()
    for simplex in tri.simplices:
        a, b, c = (int(x) for x in simplex)
        edges |= {frozenset((a, b)), frozenset((b, c)), frozenset((a, c))}
    return pts, edges


def _thin(drawing, outer, rng, greedy=False):
    pts, edges = drawing
    n = len(pts)
    protected = {frozenset((i, (i + 1) % outer)) for i in range(outer)}
    edges = set(edges)
    while True:
        g = Graph(_adj(n, edges))
        cand = _witness_edges(g, protected)
        if not cand:
            break
        cand = sorted(tuple(sorted(x)) for x in cand)
        if greedy:
            top = max(min(g.degree(u), g.degree(v)) for u, v in cand)
            cand = [(u, v) for u, v in cand if min(g.degree(u), g.degree(v)) == top]
        e = rng.choice(cand)
        edges.discard(frozenset(e))
    pg = from_drawing(pts, sorted(tuple(sorted(e)) for e in edges), outer_cycle=list(range(outer)))
    return pg if in_class_G(pg).in_class else None


def _adj(n, edges):
    adj = [set() for _ in range(n)]
    for e in edges:
        u, v = tuple(e)
        adj[u].add(v)
        adj[v].add(u)
    return adj


# ---------------------------------------------------------------------------
# planted configurations
#
# A gadget is a small straight-line drawing near the origin. Vertices listed
# in ``lock`` must end with exactly that degree; every other core vertex is
# "loose" and gets one or two connectors. A connector is a straight path of
# one to three edges from a core vertex to a vertex of C0, which is a regular
# polygon of radius 10 around the core. ``force`` lists connectors that must
# reach a given C0 vertex with a single edge.


class _Gadget:
    def __init__(self, lemma, pos, edges, lock, force=(), core_roles=None):
        self.lemma = lemma
        self.pos = dict(pos)
        self.edges = list(edges)
        self.lock = dict(lock)
        self.force = list(force)


def _ring(k, radius, start=90.0, offset=0.0):
    return [(radius * math.cos(math.radians(start - 360.0 * (i + offset) / k)),
             radius * math.sin(math.radians(start - 360.0 * (i + offset) / k))) for i in range(k)]


def _wheel(k, lock_v, lock_u, lock_c=4):
    """``k`` quadrilaterals around a center ``c``: spokes ``v0..``, rims ``u0..``."""
    pos = {"c": (0.0, 0.0)}
    for i, p in enumerate(_ring(k, 1.2)):
        pos[f"v{i}"] = p
    for i, p in enumerate(_ring(k, 1.9, offset=0.5)):
        pos[f"u{i}"] = p
    edges = [("c", f"v{i}") for i in range(k)]
    edges += [(f"v{i}", f"u{i}") for i in range(k)] + [(f"u{i}", f"v{(i + 1) % k}") for i in range(k)]
    lock = {"c": lock_c}
    lock.update({f"v{i}": d for i, d in lock_v.items()})
    lock.update({f"u{i}": d for i, d in lock_u.items()})
    return pos, edges, lock


def _partial_wheel(corners, lock):
    """A 4-vertex ``c`` with quadrilaterals only at the listed corners."""
    pos = {"c": (0.0, 0.0)}
    for i, p in enumerate(_ring(4, 1.2, start=135.0)):
        pos[f"v{i}"] = p
    edges = [("c", f"v{i}") for i in range(4)]
    for i in corners:
        pos[f"u{i}"] = _ring(4, 1.9, start=135.0, offset=0.5)[i]
        edges += [(f"v{i}", f"u{i}"), (f"u{i}", f"v{(i + 1) % 4}")]
    return pos, edges, dict(lock, c=4)


def _gadget(lemma: str, rng: random.Random) -> _Gadget:
    pick = rng.choice
    if lemma == "no-333-path":
        pos = {"v": (0, 0), "u": (1, 0), "w": (-1, 0), "a": (0, 1.1),
               "b": (1.6, 0.8), "c": (1.6, -0.8), "d": (-1.6, 0.8), "e": (-1.6, -0.8)}
        edges = [("v", "u"), ("v", "w"), ("v", "a"), ("u", "b"), ("u", "c"), ("w", "d"), ("w", "e")]
        return _Gadget(lemma, pos, edges, {"v": 3, "u": 3, "w": 3})
    if lemma.startswith("3-face-") and not lemma.startswith("3-face-4"):
        pos = {"u": (0, 0.9), "v": (-0.7, -0.3), "w": (0.7, -0.3), "pu": (0, 1.8)}
        edges = [("u", "v"), ("v", "w"), ("w", "u"), ("u", "pu")]
        lock = {"u": 3}
        if lemma == "3-face-1":
            pos["pv"] = (-1.5, 0.1)
            edges.append(("v", "pv"))
            lock.update(v=3, w=pick((3, 4)))
        elif lemma == "3-face-2":
            pos["pv"] = (-1.5, 0.1)
            edges.append(("v", "pv"))
            lock.update(v=3, w=5, pu=3)
        elif lemma == "3-face-3a":
            lock.update(v=4, w=4, pu=3)
        else:
            pos.update(p1=(1.6, 0.2), p2=(1.0, -1.3))
            edges += [("w", "p1"), ("w", "p2")]
            lock.update(v=4, w=4, p1=3, p2=3)
        return _Gadget(lemma, pos, edges, lock)
    if lemma == "3-face-4-face-1":
        pos = {"c": (0, 0), "a": (-0.7, 0.8), "b": (0.7, 0.8), "x": (0.9, -0.5),
               "y": (-0.9, -0.5), "u": (0, -1.4)}
        edges = [("c", "a"), ("c", "b"), ("a", "b"), ("c", "x"), ("c", "y"), ("x", "u"), ("u", "y")]
        lock = {"c": 4, "u": 3}
        lock.update(pick(({"a": 3, "b": 4}, {"a": 4, "b": 3})))
        return _Gadget(lemma, pos, edges, lock)
    if lemma == "3-face-4-face-2":
        ring = _ring(5, 1.0, start=126.0)
        pos = {"c": (0, 0), "a": ring[0], "b": ring[1], "x": ring[2], "y": ring[3], "z": ring[4],
               "u": _ring(5, 1.7, start=126.0, offset=2.5)[0], "w": _ring(5, 1.7, start=126.0, offset=3.5)[0]}
        edges = [("c", k) for k in "abxyz"] + [("a", "b"), ("x", "u"), ("u", "y"), ("y", "w"), ("w", "z")]
        lock = {"c": 5, "u": 3, "w": 3, "y": 3}
        lock.update(pick(({"a": 3, "b": pick((3, 4))}, {"a": pick((3, 4)), "b": 3})))
        return _Gadget(lemma, pos, edges, lock)
    if lemma == "behaved-1":
        pos, edges, lock = _partial_wheel((0, 1), {"u0": 3, "u1": 3})
        return _Gadget(lemma, pos, edges, lock)
    if lemma == "behaved-2":
        pos, edges, lock = _partial_wheel((0, 2), {"u0": 3, "u2": 3})
        return _Gadget(lemma, pos, edges, lock)
    if lemma == "behaved-3":
        pos, edges, lock = _partial_wheel((0, 2), {"u0": 3, "u2": 3, "v0": 3, "v1": 4, "v2": 3, "v3": 4})
        return _Gadget(lemma, pos, edges, lock)
    if lemma == "behaved-4":
        pos, edges, lock = _partial_wheel((0, 1), {"u0": 3, "v0": 3, "v1": 4, "u1": pick((4, 5))})
        return _Gadget(lemma, pos, edges, lock)
    if lemma == "poor-4":
        pos, edges, lock = _wheel(4, {1: pick((3, 4)), 3: pick((3, 4))}, {})
        return _Gadget(lemma, pos, edges, lock)
    if lemma.startswith("poor-5"):
        i = rng.randrange(5)
        if lemma == "poor-5-1":
            j = pick([t for t in range(5) if t != i])
            lv, lu = {i: 3}, {i: 3, j: 3}
        elif lemma == "poor-5-2":
            s = pick(((0, 1, 2), (0, 1, 3)))
            lv, lu = {}, {(i + t) % 5: 3 for t in s}
        else:
            lv = {(i - 1) % 5: pick((3, 4)), (i + 2) % 5: pick((3, 4))}
            lu = {i: 3}
        pos, edges, lock = _wheel(5, lv, lu, lock_c=5)
        return _Gadget(lemma, pos, edges, lock)
    if lemma == "4-face-1":
        pos = {"a": (-0.8, 0.6), "b": (0.8, 0.6), "w": (0, -0.2)}
        return _Gadget(lemma, pos, [("a", "w"), ("w", "b")], {}, force=[("a", 0), ("b", 0)])
    if lemma in ("4-face-2", "quad-diagonal"):
        pos = {"u": (-1, 0), "v": (0, 1), "w": (1, 0), "x": (0, -1)}
        edges = [("u", "v"), ("v", "w"), ("w", "x"), ("x", "u")]
        lock = {"u": 3, "w": 3} if lemma == "4-face-2" else {}
        return _Gadget(lemma, pos, edges, lock)
    raise ValueError(f"no construction for {lemma!r}")


PLANTABLE = (
    "no-333-path", "3-face-1", "3-face-2", "3-face-3a", "3-face-3b",
    "3-face-4-face-1", "3-face-4-face-2", "behaved-1", "behaved-2", "behaved-3", "behaved-4",
    "poor-4", "poor-5-1", "poor-5-2", "poor-5-3", "4-face-1", "4-face-2", "quad-diagonal",
)

_UNCLEAN = ("separating-cycle", "separating-4-cycle", "outer-chord")


def _realize(gad: _Gadget, outer: int, padding: int, rng: random.Random):
    names = sorted(gad.pos)
    idx = {name: i + outer for i, name in enumerate(names)}
    # turn the core by a whole number of polygon steps (plus jitter) for variety
    steps = rng.randrange(outer)
    turn = -2 * math.pi * steps / outer + rng.uniform(-0.15, 0.15)
    cos_t, sin_t = math.cos(turn), math.sin(turn)
    core = {name: (x * cos_t - y * sin_t, x * sin_t + y * cos_t) for name, (x, y) in gad.pos.items()}
    ring = _ring(outer, 10.0)
    pos = ring + [core[name] for name in names]
    edges = [(i, (i + 1) % outer) for i in range(outer)]
    edges += [(idx[a], idx[b]) for a, b in gad.edges]
    deg = {name: 0 for name in names}
    for a, b in gad.edges:
        deg[a] += 1
        deg[b] += 1
    angles = [math.atan2(y, x) for x, y in ring]

    def nearest(phi):
        return min(range(outer), key=lambda i: abs((angles[i] - phi + math.pi) % (2 * math.pi) - math.pi))

    def connect(name, phi, length, target=None):
        # radial leg to a waypoint at radius 5, then straight to C0
        if target is None:
            target = nearest(phi)
        prev = idx[name]
        if length > 1:
            way = (5.0 * math.cos(phi), 5.0 * math.sin(phi))
            x1, y1 = ring[target]
            for s in range(1, length):
                t = (s - 1) / (length - 1)
                pos.append((way[0] + t * (x1 - way[0]), way[1] + t * (y1 - way[1])))
                edges.append((prev, len(pos) - 1))
                prev = len(pos) - 1
        edges.append((prev, target))
        return target

    for name, target in gad.force:
        connect(name, None, 1, (target + steps) % outer)
        deg[name] += 1
    forced = {name for name, _ in gad.force}
    budget = padding
    for name in names:
        if name in gad.lock:
            need = gad.lock[name] - deg[name]
            if need < 0:
                raise AssertionError(f"gadget vertex {name} exceeds its locked degree")
        elif name in forced:
            need = max(0, 3 - deg[name])
        else:
            need = max(1, 3 - deg[name]) + (rng.random() < 0.3)
        x, y = core[name]
        base = math.atan2(y, x)
        direct = set()
        for k in range(need):
            phi = base + 0.12 * (k - (need - 1) / 2)
            length = rng.choice((1, 3, 3, 4))
            if length == 1 and nearest(phi) in direct:
                length = 3
            if budget and rng.random() < 0.5:
                length, budget = length + 1, budget - 1
            target = connect(name, phi, length)
            if length == 1:
                direct.add(target)
    return pos, edges, idx


def plant_configuration(lemma: str, seed: int = 0, padding: int = 0, outer: int = 7,
                        max_tries: int = 3000):
    """A graph in the class containing a match of ``lemma`` on the gadget.

    Returns ``(graph, match)``. Candidates that leave the class, contain a
    separating 3-, 4- or 7-cycle or a chord-like pair on C0, or where the
    scan does not report the lemma on the gadget are rejected and redrawn.
    """
    from .configurations import scan

    if lemma not in PLANTABLE:
        raise ValueError(f"unknown or unplantable lemma {lemma!r}")
    if outer not in (3, 7):
        raise ValueError("outer face must have length 3 or 7")
    rng = random.Random(f"{lemma}/{seed}/{padding}/{outer}")
    for _ in range(max_tries):
        gad = _gadget(lemma, rng)
        pos, edges, idx = _realize(gad, outer, padding, rng)
        try:
            g = from_drawing(pos, edges, outer_cycle=list(range(outer)))
        except EmbeddingError:
            continue
        if not in_class_G(g).in_class:
            continue
        found = scan(g)
        if any(m.lemma in _UNCLEAN for m in found):
            continue
        core = set(idx.values())
        for m in found:
            if m.lemma == lemma and set(m.vertices.values()) <= core | set(range(outer)):
                return g, m
    raise SamplerGaveUp(f"could not plant {lemma} (seed={seed})")
