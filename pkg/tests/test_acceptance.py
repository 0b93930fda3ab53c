"""Acceptance criteria 1-8, each at its stated tolerance and time budget.

Every test records one verdict line that is printed in the terminal summary.
"""

import itertools
import time
from fractions import Fraction

import pytest

from planedefect.coloring import (ColoringSpec, check_superextendable,
                                  enumerate_boundary_colorings, solve, verify)
from planedefect.configurations import explain_negative_charge, scan, verify_reduction
from planedefect.discharging import audit_final, discharge, initial_charges, outer_face_formula
from planedefect.generators import (PLANTABLE, enumerate_plane_graphs, plant_configuration,
                                    sample_in_class)
from planedefect.graph_class import identification_in_G, in_class_G
from planedefect.plane_graph import PlaneGraph

from conftest import ACCEPTANCE_LINES, cycle_pg

SPEC = ColoringSpec((1, 1, 0))
TRIANGLE_COLORINGS = 18  # fixed by the brute-force oracle below before the build
PLANTS_PER_LEMMA = 25


def record(k, ok, detail):
    line = f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def c0_choices(g):
    """``g`` re-rooted at each simple face of degree 3 or 7."""
    for f in g.faces:
        if f.is_simple and f.degree in (3, 7):
            yield g if f.id == g.outer else g.with_outer(f.id)


@pytest.fixture(scope="module")
def enumerated():
    return [g for n in range(1, 9) for g in enumerate_plane_graphs(n)]


@pytest.fixture(scope="module")
def big_samples():
    return [sample_in_class(7 + s % 34, s, outer=3 if s % 2 else 7) for s in range(300)]


# (n, seed) pairs that the min-degree-3 sampler accepts within 20 tries
DENSE_SEEDS = [(12, 60025), (12, 60031), (12, 60040), (12, 60043), (12, 60052), (12, 60055),
               (12, 60061), (12, 60067), (12, 60085), (12, 60097), (12, 60106), (12, 60115),
               (11, 60174), (12, 60202), (12, 60205), (12, 60217), (11, 60234), (12, 60244),
               (11, 60288), (12, 60289), (12, 60292), (12, 60298), (12, 60301), (11, 60306),
               (13, 60308), (12, 60316), (12, 60319), (11, 60327), (11, 60336), (11, 60345),
               (12, 60349), (11, 60396), (11, 60399), (12, 60430), (13, 60443), (12, 60454)]


def _dense():
    return [sample_in_class(n, seed, min_degree=3, max_tries=20) for n, seed in DENSE_SEEDS]


@pytest.fixture(scope="module")
def small_samples():
    out = []
    for s in range(600):
        outer = 7 if s % 3 == 0 else 3
        out.append(sample_in_class(outer + s % (15 - outer), s, outer=outer))
    out += _dense()
    return out


@pytest.fixture(scope="module")
def planted():
    return {lem: [plant_configuration(lem, seed=s) for s in range(PLANTS_PER_LEMMA)]
            for lem in PLANTABLE}


# 1 -------------------------------------------------------------------------

def test_criterion_1_charge_identity(enumerated, big_samples):
    corpus = enumerated + big_samples
    t = time.perf_counter()
    bad = [g for g in corpus if initial_charges(g, strict=False).total_initial() != 0]
    dt = time.perf_counter() - t
    ok = len(corpus) >= 1000 and not bad and dt <= 60
    record(1, ok, f"{len(corpus)} graphs, {len(bad)} nonzero totals, {dt:.1f}s")
    assert ok


# 2 -------------------------------------------------------------------------

def test_criterion_2_zero_sum_transfers(enumerated, big_samples):
    t = time.perf_counter()
    runs, bad = 0, 0
    for g in enumerated + big_samples:
        for h in c0_choices(g):
            _, led = discharge(h)
            runs += 1
            bad += led.total_final() != 0 or any(x.amount < 0 for x in led.transfers)
    dt = time.perf_counter() - t
    ok = runs >= 1000 and bad == 0 and dt <= 120
    record(2, ok, f"{runs} discharging runs, {bad} nonzero totals, {dt:.1f}s")
    assert ok


# 3 -------------------------------------------------------------------------

def test_criterion_3_colorable(enumerated, small_samples):
    t = time.perf_counter()
    enum_in = [g for g in enumerated if in_class_G(g).in_class]
    failures = 0
    for g in enum_in + small_samples:
        assert g.n <= 14
        res = solve(g, SPEC)
        failures += not (res.sat and verify(g, res.coloring, SPEC) == [])
    dt = time.perf_counter() - t
    ok = failures == 0 and len(small_samples) >= 500 and dt <= 600
    record(3, ok, f"{len(enum_in)} enumerated + {len(small_samples)} sampled in-class graphs, "
                  f"{failures} UNSAT or unverified, {dt:.1f}s")
    assert ok


# 4 -------------------------------------------------------------------------

def _superextension_corpus(enumerated, length):
    if length == 3:
        pool = [sample_in_class(4 + s % 9, 20_000 + s) for s in range(150)]
        pool += [g for g in _dense() if g.n <= 12]
    else:
        pool = [sample_in_class(8 + s % 5, 40_000 + s, outer=7) for s in range(40)]
    pool += [h for g in enumerated if in_class_G(g).in_class
             for h in c0_choices(g) if h.outer_face.degree == length]
    return [g for g in pool if g.n <= 12]


@pytest.mark.parametrize("length, needed", [(3, 100), (7, 20)])
def test_criterion_4_superextension(enumerated, length, needed):
    t = time.perf_counter()
    corpus = _superextension_corpus(enumerated, length)
    failed = [g for g in corpus
              if not check_superextendable(g, g.outer_face.vertices, SPEC).passed]
    dt = time.perf_counter() - t
    ok = len(corpus) >= needed and not failed and dt <= 900
    record(f"4 ({length}-cycle C0)", ok,
           f"{len(corpus)} in-class instances, {len(failed)} with a non-extending boundary, {dt:.1f}s")
    assert ok


# 5 -------------------------------------------------------------------------

def test_criterion_5_triangle_boundary_count():
    brute = 0
    for a, b, c in itertools.product((1, 2, 3), repeat=3):
        col = {0: a, 1: b, 2: c}
        if all(sum(col[u] == col[v] for u in range(3) if u != v) <= SPEC.caps[col[v] - 1]
               for v in range(3)):
            brute += 1
    got = len(enumerate_boundary_colorings([0, 1, 2], SPEC))
    ok = got == brute == TRIANGLE_COLORINGS
    record(5, ok, f"enumerated {got}, brute force {brute}, pinned {TRIANGLE_COLORINGS}")
    assert ok


# 6 -------------------------------------------------------------------------

def test_criterion_6_reductions(planted):
    t = time.perf_counter()
    problems = []
    runs = 0
    for lem, items in planted.items():
        for g, m in items:
            runs += 1
            if lem == "quad-diagonal":
                if not identification_in_G(g, [[m.vertices["u"], m.vertices["w"]]]).in_class:
                    problems.append((lem, "identification left the class"))
                continue
            v = verify_reduction(g, m, SPEC)
            if v.verdict != "PASS":
                problems.append((lem, v.verdict))
            if v.sigma_after is None or v.sigma_after >= v.sigma_before:
                problems.append((lem, "no sigma descent"))
            if v.class_claim and not v.reduced_in_class:
                problems.append((lem, "reduced graph left the class"))
    dt = time.perf_counter() - t
    counts = {lem: len(items) for lem, items in planted.items()}
    ok = not problems and min(counts.values()) >= PLANTS_PER_LEMMA and dt <= 1800
    record(6, ok, f"{len(counts)} configurations x {PLANTS_PER_LEMMA} planted = {runs} checks, "
                  f"{len(problems)} problems, {dt:.1f}s")
    assert ok, problems[:5]


# 7 -------------------------------------------------------------------------

def _coverage_corpus(enumerated, big_samples, small_samples, planted):
    for g in enumerated + big_samples + small_samples:
        if in_class_G(g).in_class:
            yield from c0_choices(g)
    for items in planted.values():
        for g, _ in items:
            yield g


def _uncovered(g):
    tax, led = discharge(g)
    findings = audit_final(g, led, tax)
    if not findings:
        return []
    matches = scan(g, tax)
    return [(g, tax, led, f) for f in findings
            if f.kind not in ("negative", "overdrawn") or not explain_negative_charge(g, f.element, matches, led)]


@pytest.fixture(scope="module")
def coverage(enumerated, big_samples, small_samples, planted):
    runs, gaps = 0, []
    for g in _coverage_corpus(enumerated, big_samples, small_samples, planted):
        runs += 1
        gaps += _uncovered(g)
    return runs, gaps


def test_criterion_7_every_negative_is_explained(coverage):
    runs, gaps = coverage
    graphs = len({id(g) for g, *_ in gaps})
    record(7, not gaps, f"{runs} in-class instances, {len(gaps)} unexplained negative elements "
                        f"in {graphs} instances (exit-code-3 rate {graphs / runs:.2%})")
    assert not gaps, "negative final charges with no matching configuration; see decisions ledger"


def _low_degree_next_to(g, tax, fid):
    vs = set(g.faces[fid].vertices)
    return any(tax.vertices[y].degree <= 2 and not tax.vertices[y].on_outer
               for x in vs for y in g.adj[x] - vs)


def test_unexplained_negatives_have_known_shapes(coverage):
    """Two uncovered shapes remain. One is a 3-vertex on a 7-cycle outer face
    lying on two 4-faces that each meet the outer face twice, ending at -1/2.
    The other is an internal 3-face whose shortfall comes from a neighbor of
    degree at most 2, which is forbidden one step away from the face."""
    _, gaps = coverage
    for g, tax, led, f in gaps:
        kind, x = f.element
        assert f.kind == "negative"
        if kind == "v":
            assert f.final == Fraction(-1, 2)
            assert g.outer_face.degree == 7 and x in tax.outer_vertices and g.degree(x) == 3
            inner = [fid for fid in set(g.incident_faces(x)) if fid != g.outer]
            assert sorted(tax.face_class(fid) for fid in inner) == ["F4''", "F4''"]
        else:
            assert tax.face_class(x) == "F3" and f.final >= -1
            assert _low_degree_next_to(g, tax, x)


# 8 -------------------------------------------------------------------------

def _heptagon_with(inside):
    """C7 (vertices 0..6) with extra vertices drawn inside; ``inside`` maps a
    new vertex to its cycle neighbors."""
    g = cycle_pg(7)
    rot = [list(r) for r in g.rotation]
    inner = next(f for f in g.faces if f.id != g.outer)
    for new, nbrs in sorted(inside.items()):
        rot.append([])
        for v in nbrs:
            d = next(d for d in inner.walk if d[0] == v)
            rot[v].insert(rot[v].index(d[1]), new)
    for new, nbrs in sorted(inside.items()):
        rot[new] = list(reversed(nbrs))
    h = PlaneGraph(rot)
    return h.with_outer(h.face_for_cycle(list(range(7))))


def test_criterion_8_pinned_arithmetic(big_samples):
    checks = {}
    # internal 3-vertices keep 2*3-6 = 0
    finals = []
    for g in big_samples:
        _, led = discharge(g)
        finals += [led.final[("v", v)] for v in range(g.n)
                   if g.degree(v) == 3 and v not in g.outer_face.boundary]
    checks["internal 3-vertex final 0"] = bool(finals) and set(finals) == {0}
    # 2-vertex on C0: 2*2-6+2 = 0
    _, led = discharge(_heptagon_with({7: [0]}))
    checks["2-vertex on C0 final 0"] = all(led.final[("v", v)] == 0 for v in range(1, 7))
    # rich 4-vertices clear of forbidden configurations give at most 2, and 2 is reached
    most = Fraction(0)
    for g in big_samples:
        tax, led = discharge(g)
        covered = set().union(*(m.elements(g) for m in scan(g, tax) if m.forbidden))
        for info in tax.vertices:
            if info.rich and info.degree == 4 and ("v", info.id) not in covered:
                most = max(most, led.outflow(("v", info.id)))
    checks["rich 4-vertex max outflow 2"] = most == 2
    # C0 formula d + 6 - 2 t2 - 3/2 t3 - t4 (+1 bonus for a 7-cycle with six 2-vertices)
    cases = {
        "(t2,t3,t4)=(7,0,0)": (cycle_pg(7).with_outer(0), Fraction(-1)),
        "(6,1,0)": (_heptagon_with({7: [0]}), Fraction(1, 2)),
        "(5,2,0)": (_heptagon_with({7: [0, 1]}), Fraction(0)),
        "(6,0,1)": (_heptagon_with({7: [0], 8: [0]}), Fraction(1)),
        "(5,1,1) ": (_heptagon_with({7: [0], 8: [0], 9: [3]}), Fraction(1, 2)),
        "triangle (3,0,0)": (cycle_pg(3), Fraction(3)),
    }
    for name, (g, want) in cases.items():
        _, led = discharge(g)
        got = led.final[("f", g.outer)]
        checks[f"C0 {name.strip()} = {want}"] = got == want == outer_face_formula(g)
    for g in big_samples:
        _, led = discharge(g)
        if led.final[("f", g.outer)] != outer_face_formula(g):
            checks["C0 formula on samples"] = False
            break
    else:
        checks["C0 formula on samples"] = True
    ok = all(checks.values())
    record(8, ok, f"{sum(checks.values())}/{len(checks)} pinned values reproduced"
                  + ("" if ok else f"; failed: {[k for k, v in checks.items() if not v]}"))
    assert ok, checks
