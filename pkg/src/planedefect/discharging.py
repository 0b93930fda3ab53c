"""Exact-rational discharging over a plane graph with a precolored outer
triangle or 7-cycle.

Elements are ``("v", id)`` for vertices and ``("f", id)`` for faces. Initial
charge is ``2d(v) - 6`` on vertices, ``d(f) - 6`` on faces and
``d(C0) + 6`` on the outer face, so the total is zero by Euler's formula.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .graph_class import on_triangle
from .plane_graph import PlaneGraph

__all__ = [
    "Element",
    "Transfer",
    "ChargeLedger",
    "FaceInfo",
    "VertexInfo",
    "Taxonomy",
    "initial_charges",
    "classify",
    "apply_rules",
    "discharge",
    "audit_final",
    "outer_face_formula",
    "face_matches",
    "element_name",
]

Element = Tuple[str, int]
ZERO = Fraction(0)


def element_name(x: Element) -> str:
    return f"{x[0]}{x[1]}"


def fmt(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class Transfer:
    donor: Element
    recipient: Element
    amount: Fraction
    rule: str

    def to_dict(self) -> dict:
        return {"from": element_name(self.donor), "to": element_name(self.recipient),
                "amount": fmt(self.amount), "rule": self.rule}


@dataclass
class ChargeLedger:
    initial: Dict[Element, Fraction]
    transfers: List[Transfer] = field(default_factory=list)

    def add(self, donor: Element, recipient: Element, amount, rule: str) -> None:
        amount = Fraction(amount)
        if amount:
            self.transfers.append(Transfer(donor, recipient, amount, rule))

    def inflow(self, x: Element, rules: Optional[Sequence[str]] = None) -> Fraction:
        return sum((t.amount for t in self.transfers
                    if t.recipient == x and (rules is None or t.rule in rules)), ZERO)

    def outflow(self, x: Element) -> Fraction:
        return sum((t.amount for t in self.transfers if t.donor == x), ZERO)

    @property
    def final(self) -> Dict[Element, Fraction]:
        out = dict(self.initial)
        for t in self.transfers:
            out[t.donor] -= t.amount
            out[t.recipient] += t.amount
        return out

    def total_initial(self) -> Fraction:
        return sum(self.initial.values(), ZERO)

    def total_final(self) -> Fraction:
        return sum(self.final.values(), ZERO)

    def to_dict(self) -> dict:
        final = self.final
        return {
            "initial": {element_name(x): fmt(q) for x, q in self.initial.items()},
            "transfers": [t.to_dict() for t in self.transfers],
            "final": {element_name(x): fmt(q) for x, q in final.items()},
            "negatives": [element_name(x) for x, q in final.items() if q < 0],
        }


# ---------------------------------------------------------------------------
# degree patterns


def _accepts(spec: str, d: int) -> bool:
    if spec.endswith("+"):
        return d >= int(spec[:-1])
    if spec.endswith("-"):
        return d <= int(spec[:-1])
    return d == int(spec)


def face_matches(g: PlaneGraph, face_id: int, pattern: Sequence[str],
                 anchor: Optional[int] = None) -> bool:
    """Whether the cyclic degree sequence of a simple face fits ``pattern``.

    The pattern may be rotated or reflected. With ``anchor`` the vertex must
    sit on the face at a slot whose listed degree accepts its own degree.
    """
    f = g.faces[face_id]
    if not f.is_simple or f.degree != len(pattern):
        return False
    vs = f.vertices
    if anchor is not None and anchor not in f.boundary:
        return False
    k = len(vs)
    for seq in (vs, vs[::-1]):
        for r in range(k):
            rot = seq[r:] + seq[:r]
            if all(_accepts(p, g.degree(x)) for p, x in zip(pattern, rot)):
                return True
    return False


# ---------------------------------------------------------------------------
# taxonomy


@dataclass
class FaceInfo:
    id: int
    degree: int
    simple: bool
    outer_hits: int
    cls: Optional[str]
    pattern: Tuple[int, ...]
    flags: frozenset = frozenset()


@dataclass
class VertexInfo:
    id: int
    degree: int
    on_outer: bool
    on_triangle: bool
    poor: bool
    pendant_faces: Tuple[int, ...]
    behaved: Optional[Tuple[bool, bool]] = None

    @property
    def rich(self) -> bool:
        return not self.on_outer and self.degree in (4, 5) and not self.poor


@dataclass
class Taxonomy:
    outer: int
    outer_vertices: frozenset
    faces: Dict[int, FaceInfo]
    vertices: List[VertexInfo]

    def face_class(self, fid: int) -> Optional[str]:
        info = self.faces.get(fid)
        return info.cls if info else None


def _face_class(f, outer_vertices) -> Tuple[int, Optional[str]]:
    hits = len(f.boundary & outer_vertices)
    if not f.is_simple or f.degree not in (3, 4) or hits > 2:
        return hits, None
    return hits, f"F{f.degree}" + "'" * hits


def _pendant_faces(g: PlaneGraph, v: int, faces3: Sequence[int]) -> Tuple[int, ...]:
    out = []
    for fid in faces3:
        f = g.faces[fid]
        if v in f.boundary:
            continue
        if any(g.degree(x) == 3 and g.has_edge(v, x) for x in f.boundary):
            out.append(fid)
    return tuple(out)


def classify(g: PlaneGraph) -> Taxonomy:
    """Face classes, degree patterns, special/weak/rich flags, poor vertices."""
    outer = g.outer
    b0 = g.outer_face.boundary
    tri = on_triangle(g)
    faces: Dict[int, FaceInfo] = {}
    for f in g.faces:
        if f.id == outer:
            continue
        hits, cls = _face_class(f, b0)
        faces[f.id] = FaceInfo(f.id, f.degree, f.is_simple, hits, cls,
                               tuple(g.degree(x) for x in f.vertices))
    f4 = {fid for fid, info in faces.items() if info.cls == "F4"}
    three_faces = [fid for fid, info in faces.items() if info.simple and info.degree == 3]
    vertices = []
    for v in range(g.n):
        corners = g.incident_faces(v)
        on_outer = v in b0
        d = g.degree(v)
        poor = (not on_outer and d in (4, 5) and len(set(corners)) == d
                and all(c in f4 for c in corners))
        behaved = None
        if d == 4:
            r = g.rotation[v]
            behaved = (not (tri[r[0]] and tri[r[2]]), not (tri[r[1]] and tri[r[3]]))
        vertices.append(VertexInfo(v, d, on_outer, tri[v], poor,
                                   _pendant_faces(g, v, three_faces), behaved))
    tax = Taxonomy(outer, b0, faces, vertices)
    for fid in f4:
        faces[fid].flags = frozenset(_face_flags(g, tax, fid, tri))
    return tax


def _face_flags(g: PlaneGraph, tax: Taxonomy, fid: int, tri) -> List[str]:
    f = g.faces[fid]
    vs = f.vertices
    deg = g.degree
    poor = lambda x: tax.vertices[x].poor  # noqa: E731
    flags = []
    if face_matches(g, fid, ("3", "4", "4", "5")):
        on = sum(1 for x in vs if deg(x) == 4 and tri[x])
        if on == 0:
            flags.append("special-3445")
        elif on == 1:
            flags.append("weak-3445")
    for name, pat in (("special-3455", ("3", "4", "5", "5")),
                      ("special-3545", ("3", "5", "4", "5")),
                      ("special-3555", ("3", "5", "5", "5"))):
        if face_matches(g, fid, pat) and all(poor(x) for x in vs if deg(x) == 5):
            flags.append(name)
    if face_matches(g, fid, ("4", "4", "4", "5")):
        i = next(i for i, x in enumerate(vs) if deg(x) == 5)
        near = (vs[i], vs[i - 1], vs[(i + 1) % 4])
        if all(poor(x) for x in near):
            flags.append("special-4445")
    if face_matches(g, fid, ("4", "4", "5", "5")) and all(poor(x) for x in vs):
        flags.append("special-4455")
    strong = sum(1 for x in vs if deg(x) >= 6 or (deg(x) == 5 and tax.vertices[x].rich))
    if strong >= 2:
        flags.append("rich")
    return flags


# ---------------------------------------------------------------------------
# charges and rules


def initial_charges(g: PlaneGraph, strict: bool = True) -> ChargeLedger:
    """Initial charges with the outer face as ``C0``.

    With ``strict`` the outer face must be a triangle or a 7-cycle.
    """
    outer = g.outer_face
    if strict and not (outer.is_simple and outer.degree in (3, 7)):
        raise ValueError(f"outer face must be a triangle or a 7-cycle, got degree {outer.degree}")
    initial: Dict[Element, Fraction] = {}
    for v in range(g.n):
        initial[("v", v)] = Fraction(2 * g.degree(v) - 6)
    for f in g.faces:
        initial[("f", f.id)] = Fraction(f.degree + 6 if f.id == g.outer else f.degree - 6)
    ledger = ChargeLedger(initial)
    if ledger.total_initial() != 0:
        raise AssertionError("initial charges do not sum to zero")
    return ledger


def _unique(seq):
    seen = []
    for x in seq:
        if x not in seen:
            seen.append(x)
    return seen


def _split_evenly(ledger, donor, targets, remaining, rule):
    if targets and remaining > 0:
        share = remaining / len(targets)
        for fid in targets:
            ledger.add(donor, ("f", fid), share, rule)


def apply_rules(g: PlaneGraph, tax: Optional[Taxonomy] = None,
                ledger: Optional[ChargeLedger] = None) -> ChargeLedger:
    """Run every rule; poor 4-vertices go last since they read the weight
    their faces collected from everyone else."""
    tax = tax or classify(g)
    ledger = ledger or initial_charges(g)
    faces = tax.faces
    cls = tax.face_class
    is4 = lambda fid: fid in faces and faces[fid].simple and faces[fid].degree == 4  # noqa: E731
    is3 = lambda fid: fid in faces and faces[fid].simple and faces[fid].degree == 3  # noqa: E731

    for v in range(g.n):
        info = tax.vertices[v]
        me = ("v", v)
        inc = [fid for fid in _unique(g.incident_faces(v)) if fid != tax.outer]
        d = info.degree
        if info.on_outer:
            for fid in info.pendant_faces:
                if cls(fid) == "F3":
                    ledger.add(me, ("f", fid), Fraction(1, 2), "outer-vertex")
            for fid in inc:
                c = cls(fid)
                if c == "F4''":
                    ledger.add(me, ("f", fid), 1, "outer-vertex")
                elif c in ("F3''", "F4'"):
                    ledger.add(me, ("f", fid), Fraction(3, 2), "outer-vertex")
                elif c == "F3'":
                    ledger.add(me, ("f", fid), 3, "outer-vertex")
            continue
        if d == 4 and not info.poor:
            _rich_four(g, tax, ledger, v, inc, is4)
        elif d == 5 and not info.poor:
            _rich_five(g, tax, ledger, v, inc, is4)
        elif d == 5:
            _poor_five(g, tax, ledger, v, inc)
        elif d >= 6:
            given = Fraction(0)
            for fid in inc:
                if is3(fid):
                    ledger.add(me, ("f", fid), 2, "big-vertex")
                    given += 2
            for fid in info.pendant_faces:
                ledger.add(me, ("f", fid), Fraction(1, 2), "big-vertex")
                given += Fraction(1, 2)
            _split_evenly(ledger, me, [fid for fid in inc if is4(fid)], 2 * d - 6 - given, "big-vertex")

    outer = ("f", tax.outer)
    bonus = {2: Fraction(2), 3: Fraction(3, 2), 4: Fraction(1)}
    for v in g.outer_face.vertices:
        if g.degree(v) in bonus:
            ledger.add(outer, ("v", v), bonus[g.degree(v)], "outer-face")
    two = sum(1 for v in g.outer_face.vertices if g.degree(v) == 2)
    if g.outer_face.degree == 7 and two == 6:
        donor = _outer_neighbor_face(g)
        if donor is not None:
            ledger.add(("f", donor), outer, 1, "outer-face")

    phase1 = {fid: ledger.inflow(("f", fid)) for fid in faces}
    for v in range(g.n):
        info = tax.vertices[v]
        if not (info.poor and info.degree == 4):
            continue
        for fid in _unique(g.incident_faces(v)):
            q = sum(1 for x in g.faces[fid].boundary
                    if tax.vertices[x].poor and tax.vertices[x].degree == 4)
            amount = max(Fraction(0), (2 - phase1[fid]) / q)
            ledger.add(("v", v), ("f", fid), amount, "poor-4-vertex")
    return ledger


def _outer_neighbor_face(g: PlaneGraph) -> Optional[int]:
    cands = {g.face_of[(b, a)] for a, b in g.outer_face.walk} - {g.outer}
    if not cands:
        return None
    return max(cands, key=lambda fid: (g.faces[fid].degree, -fid))


def _rich_four(g, tax, ledger, v, inc, is4):
    me = ("v", v)
    cls = tax.face_class
    given = Fraction(0)
    done = set()
    for fid in inc:
        if cls(fid) == "F3":
            amt = Fraction(5, 4) if face_matches(g, fid, ("3", "4", "4"), v) else Fraction(1)
            ledger.add(me, ("f", fid), amt, "rich-4-vertex")
            given += amt
            done.add(fid)
    for fid in tax.vertices[v].pendant_faces:
        if cls(fid) == "F3":
            ledger.add(me, ("f", fid), Fraction(1, 2), "rich-4-vertex")
            given += Fraction(1, 2)
    for fid in inc:
        if cls(fid) == "F4" and face_matches(g, fid, ("3", "3", "4", "4+"), v):
            ledger.add(me, ("f", fid), 1, "rich-4-vertex")
            given += 1
            done.add(fid)
    if tax.vertices[v].on_triangle:
        for fid in inc:
            if is4(fid) and fid not in done:
                ledger.add(me, ("f", fid), Fraction(3, 4), "rich-4-vertex")
    else:
        targets = [fid for fid in inc if cls(fid) == "F4" and fid not in done]
        _split_evenly(ledger, me, targets, 2 - given, "rich-4-vertex")


def _rich_five(g, tax, ledger, v, inc, is4):
    me = ("v", v)
    cls = tax.face_class
    given = Fraction(0)
    for fid in inc:
        if cls(fid) == "F3":
            amt = Fraction(2) if face_matches(g, fid, ("3", "4-", "5"), v) else Fraction(3, 2)
            ledger.add(me, ("f", fid), amt, "rich-5-vertex")
            given += amt
    for fid in tax.vertices[v].pendant_faces:
        if cls(fid) == "F3":
            ledger.add(me, ("f", fid), Fraction(1, 2), "rich-5-vertex")
            given += Fraction(1, 2)
    if tax.vertices[v].on_triangle:
        targets = [fid for fid in inc if is4(fid)]
    else:
        targets = [fid for fid in inc if cls(fid) == "F4"]
    _split_evenly(ledger, me, targets, 4 - given, "rich-5-vertex")


def poor_five_amount(g: PlaneGraph, tax: Taxonomy, v: int, fid: int) -> Fraction:
    flags = tax.faces[fid].flags
    if (face_matches(g, fid, ("3", "3", "5", "4+"), v)
            or face_matches(g, fid, ("3", "4", "5", "4"), v)
            or "special-3445" in flags):
        return Fraction(1)
    if flags & {"special-3455", "special-3545", "special-3555", "special-4455",
                "special-4445", "weak-3445"}:
        return Fraction(3, 4)
    if "rich" in flags:
        return Fraction(0)
    return Fraction(1, 2)


def _poor_five(g, tax, ledger, v, inc):
    for fid in inc:
        ledger.add(("v", v), ("f", fid), poor_five_amount(g, tax, v, fid), "poor-5-vertex")


def discharge(g: PlaneGraph, strict: bool = True) -> Tuple[Taxonomy, ChargeLedger]:
    tax = classify(g)
    ledger = apply_rules(g, tax, initial_charges(g, strict=strict))
    if ledger.total_final() != 0:
        raise AssertionError("transfers are not zero-sum")
    return tax, ledger


# ---------------------------------------------------------------------------
# auditing


def outer_face_formula(g: PlaneGraph) -> Fraction:
    """``d(C0) + 6 - 2 t2 - 3/2 t3 - t4`` plus the 7-face bonus when it applies."""
    degs = [g.degree(v) for v in g.outer_face.vertices]
    t2, t3, t4 = (degs.count(k) for k in (2, 3, 4))
    value = g.outer_face.degree + 6 - 2 * t2 - Fraction(3, 2) * t3 - t4
    if g.outer_face.degree == 7 and t2 == 6 and _outer_neighbor_face(g) is not None:
        value += 1
    return value


@dataclass
class Finding:
    element: Element
    final: Fraction
    kind: str = "negative"
    detail: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"element": element_name(self.element), "final": fmt(self.final),
                "kind": self.kind, **self.detail}


def _neighborhood(g: PlaneGraph, x: Element) -> dict:
    kind, i = x
    if kind == "v":
        return {"degree": g.degree(i), "neighbors": list(g.rotation[i]),
                "faces": _unique(g.incident_faces(i))}
    f = g.faces[i]
    return {"degree": f.degree, "boundary": list(f.vertices),
            "degrees": [g.degree(u) for u in f.vertices]}


def audit_final(g: PlaneGraph, ledger: ChargeLedger, tax: Taxonomy) -> List[Finding]:
    """Negative final charges with their local neighborhood, plus solvency
    and zero-sum breaches."""
    findings = []
    final = ledger.final
    for x, q in final.items():
        if q < 0:
            findings.append(Finding(x, q, "negative", _neighborhood(g, x)))
    for info in tax.vertices:
        if info.rich and info.degree == 4:
            out = ledger.outflow(("v", info.id))
            if out > 2:
                findings.append(Finding(("v", info.id), final[("v", info.id)], "overdrawn",
                                        {"outflow": fmt(out), "bound": "2"}))
    if sum(final.values(), ZERO) != 0:
        findings.append(Finding(("f", tax.outer), final[("f", tax.outer)], "nonzero-total"))
    return findings
