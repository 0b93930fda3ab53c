"""Command-line entry point.

Exit codes: 0 pass, 1 input error, 2 property violation, 3 internal
inconsistency (a negative final charge that no configuration explains).
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from . import generators
from .coloring import ColoringSpec, check_superextendable, solve, verify
from .configurations import LEMMAS, explain_negative_charge, scan, verify_reduction
from .discharging import audit_final, discharge, element_name
from .graph_class import in_class_G
from .plane_graph import (EmbeddingError, GraphFormatError, PlaneGraph, dumps, load,
                          loads_any)

OK, INPUT_ERROR, VIOLATION, INCONSISTENT = 0, 1, 2, 3


class InputError(Exception):
    pass


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _read(path: str) -> str:
    try:
        return sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise InputError(str(exc)) from exc


def _plane(path: str, c0: Optional[str] = None) -> PlaneGraph:
    try:
        g = load(_read(path))
    except (GraphFormatError, EmbeddingError) as exc:
        raise InputError(f"{path}: {exc}") from exc
    if c0:
        cycle = _ints(c0)
        fid = g.face_for_cycle(cycle)
        if fid is None:
            raise InputError(f"--c0 {c0} is not a face of the embedding")
        g = g.with_outer(fid)
    return g


def _ints(text: str) -> List[int]:
    try:
        return [int(t) for t in text.replace(",", " ").split()]
    except ValueError as exc:
        raise InputError(f"expected a comma separated vertex list, got {text!r}") from exc


def _pins(items: Sequence[str], n: int) -> Dict[int, int]:
    out = {}
    for item in items or ():
        v, sep, c = item.partition("=")
        try:
            v, c = int(v), int(c)
        except ValueError:
            sep = ""
        if not sep or not 0 <= v < n or c not in (1, 2, 3):
            raise InputError(f"bad pin {item!r}, expected v=c with c in 1..3")
        out[v] = c
    return out


def _spec(args) -> ColoringSpec:
    try:
        return ColoringSpec.parse(args.caps)
    except ValueError as exc:
        raise InputError(f"bad --caps: {exc}") from exc


# ---------------------------------------------------------------------------
# subcommands


def cmd_check(args) -> int:
    g = _plane(args.file, args.c0)
    faces = [{"id": f.id, "degree": f.degree, "vertices": list(f.vertices)} for f in g.faces]
    report = {"vertices": g.n, "edges": len(g.edges()), "faces": len(g.faces),
              "euler": g.n - len(g.edges()) + len(g.faces), "outer": g.outer,
              "outer_degree": g.outer_face.degree, "face_list": faces}
    if args.json:
        _emit(report)
    else:
        print(f"V={g.n} E={len(g.edges())} F={len(g.faces)} euler={report['euler']} "
              f"outer={g.outer} (degree {g.outer_face.degree})")
    return OK


def cmd_classcheck(args) -> int:
    try:
        g = loads_any(_read(args.file))
    except (GraphFormatError, EmbeddingError) as exc:
        raise InputError(f"{args.file}: {exc}") from exc
    rep = in_class_G(g, embedding_unverified=not isinstance(g, PlaneGraph))
    _emit(rep.to_dict())
    return OK if rep.in_class else VIOLATION


def cmd_color(args) -> int:
    g = _plane(args.file)
    pins = dict(g.precolor)
    pins.update(_pins(args.pin, g.n))
    res = solve(g, _spec(args), pins)
    if args.json:
        _emit(res.to_dict())
    elif res.sat:
        print("\n".join(f"{v}={c}" for v, c in sorted(res.coloring.items())))
    else:
        print("UNSAT")
    return OK if res.sat else VIOLATION


def cmd_superextend(args) -> int:
    g = _plane(args.file)
    cycle = _ints(args.c0) if args.c0 else list(g.outer_face.vertices)
    if len(set(cycle)) != len(cycle) or any(not 0 <= v < g.n for v in cycle):
        raise InputError(f"bad cycle {cycle}")
    k = len(cycle)
    if k < 3 or any(cycle[(i + 1) % k] not in g.adj[cycle[i]] for i in range(k)):
        raise InputError(f"{cycle} is not a cycle of the graph")
    rep = check_superextendable(g, cycle, _spec(args))
    if args.json:
        _emit(rep.to_dict())
    else:
        print(f"{len(rep.results)} boundary colorings, {len(rep.failures)} failures")
        for r in rep.failures:
            print("FAIL " + " ".join(f"{v}={c}" for v, c in sorted(r.boundary.items())))
    return OK if rep.passed else VIOLATION


def _discharge(g):
    try:
        return discharge(g)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def cmd_discharge(args) -> int:
    g = _plane(args.file, args.c0)
    tax, ledger = _discharge(g)
    report = ledger.to_dict()
    if args.json:
        _emit(report)
    else:
        for name, q in report["final"].items():
            print(f"{name}\t{q}")
        if report["negatives"]:
            print("negative: " + " ".join(report["negatives"]))
    return OK


def cmd_scan(args) -> int:
    g = _plane(args.file, args.c0)
    lemmas = args.lemma or None
    if lemmas and set(lemmas) - set(LEMMAS):
        raise InputError(f"unknown lemma id(s): {sorted(set(lemmas) - set(LEMMAS))}")
    _emit([dict(m.to_dict(), id=i) for i, m in enumerate(scan(g, lemmas=lemmas))])
    return OK


def cmd_oracle(args) -> int:
    g = _plane(args.file, args.c0)
    matches = scan(g)
    if args.match.isdigit():
        i = int(args.match)
        if i >= len(matches):
            raise InputError(f"match id {i} out of range ({len(matches)} matches)")
        m = matches[i]
    else:
        found = [m for m in matches if m.lemma == args.match and m.recipe is not None]
        if not found:
            raise InputError(f"no reducible match for {args.match!r}")
        m = found[0]
    if m.recipe is None:
        raise InputError(f"match {args.match} ({m.lemma}) carries no reduction")
    verdict = verify_reduction(g, m, _spec(args), cross_check=args.cross_check)
    _emit({"match": m.to_dict(), "verdict": verdict.to_dict()})
    return OK if verdict.passed else VIOLATION


def cmd_gen(args) -> int:
    if args.kind == "enum":
        if not 1 <= args.n <= 10:
            raise InputError("enumeration supports 1 <= n <= 10")
        graphs = list(generators.enumerate_plane_graphs(args.n))
    elif args.kind == "sample":
        try:
            graphs = [generators.sample_in_class(args.n, args.seed + i, outer=args.outer)
                      for i in range(args.count)]
        except (ValueError, generators.SamplerGaveUp) as exc:
            raise InputError(str(exc)) from exc
    else:
        if args.lemma not in generators.PLANTABLE:
            raise InputError(f"cannot plant {args.lemma!r}; choose from {list(generators.PLANTABLE)}")
        try:
            g, _ = generators.plant_configuration(args.lemma, seed=args.seed,
                                                  padding=args.padding, outer=args.outer)
        except generators.SamplerGaveUp as exc:
            raise InputError(str(exc)) from exc
        graphs = [g]
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for i, g in enumerate(graphs):
            (out / f"{args.kind}_{i:05d}.pg").write_text(dumps(g))
    else:
        sys.stdout.write("\n".join(dumps(g) for g in graphs))
    return OK


# ---------------------------------------------------------------------------
# full audit


def audit_one(path: str, caps: str = "1,1,0") -> dict:
    """Run every stage on one file; the report carries its own exit code."""
    stages: Dict[str, dict] = {}
    rep = {"file": path, "stages": stages}
    try:
        _run_stages(path, caps, stages, rep)
    finally:
        rep["stages"] = [dict(st, stage=name) for name, st in stages.items()]
    return rep


def _run_stages(path, caps, stages, rep):
    try:
        g = _plane(path)
    except InputError as exc:
        stages["parse"] = {"ok": False, "error": str(exc)}
        rep["exit"] = INPUT_ERROR
        return
    spec = ColoringSpec.parse(caps)
    stages["parse"] = {"ok": True, "vertices": g.n, "edges": len(g.edges()), "faces": len(g.faces)}
    code = OK

    cls = in_class_G(g)
    stages["class"] = dict(cls.to_dict(), ok=cls.in_class)
    if not cls.in_class:
        rep["exit"] = VIOLATION
        return

    try:
        res = solve(g, spec, dict(g.precolor))
    except ValueError as exc:
        stages["color"] = {"ok": False, "error": f"precolor: {exc}"}
        rep["exit"] = INPUT_ERROR
        return
    bad = verify(g, res.coloring, spec) if res.sat else []
    stages["color"] = {"ok": res.sat and not bad, "status": "SAT" if res.sat else "UNSAT",
                       "nodes": res.nodes}
    if not stages["color"]["ok"]:
        code = VIOLATION

    outer = g.outer_face
    if not (outer.is_simple and outer.degree in (3, 7)):
        note = f"outer face has degree {outer.degree}"
        stages["superextend"] = {"ok": True, "skipped": note}
        stages["discharge"] = {"ok": True, "skipped": note}
        rep["exit"] = code
        return

    sup = check_superextendable(g, outer.vertices, spec)
    stages["superextend"] = dict(sup.to_dict(), ok=sup.passed)
    if not sup.passed:
        code = VIOLATION

    tax, ledger = discharge(g)
    findings = audit_final(g, ledger, tax)
    matches = scan(g, tax)
    unexplained, explained = [], {}
    for f in findings:
        if f.kind not in ("negative", "overdrawn"):
            unexplained.append(f.to_dict())
            continue
        why = explain_negative_charge(g, f.element, matches, ledger)
        if why:
            explained[element_name(f.element)] = sorted({m.lemma for m in why})
        else:
            unexplained.append(f.to_dict())
    stages["discharge"] = {"ok": not unexplained, "negatives": len(findings),
                           "explained": explained, "unexplained": unexplained}
    stages["scan"] = {"ok": True, "matches": len(matches),
                      "lemmas": sorted({m.lemma for m in matches})}
    if unexplained:
        code = INCONSISTENT
    rep["exit"] = code
    return


def _audit_task(job):
    path, caps = job
    try:
        return audit_one(path, caps)
    except Exception as exc:  # a crash is reported, never raised
        return {"file": path, "stages": [{"stage": "internal", "ok": False, "error": repr(exc)}],
                "exit": INCONSISTENT}


def cmd_fullaudit(args) -> int:
    _spec(args)
    root = Path(args.path)
    if root.is_dir():
        files = sorted(str(p) for p in root.rglob("*.pg"))
        if not files:
            raise InputError(f"no .pg files under {root}")
    elif root.exists():
        files = [str(root)]
    else:
        raise InputError(f"{root} does not exist")
    jobs = [(f, args.caps) for f in files]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            reports = list(pool.map(_audit_task, jobs))
    else:
        reports = [_audit_task(j) for j in jobs]
    code = max(r["exit"] for r in reports)
    if args.json or len(reports) > 1:
        _emit({"exit": code, "files": reports})
    else:
        r = reports[0]
        for st in r["stages"]:
            name = st["stage"]
            state = "skip" if "skipped" in st else ("ok" if st.get("ok") else "FAIL")
            print(f"{name:12s}{state}")
        print(f"exit {code}")
    return code


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="machine readable output")
    common.add_argument("--caps", default=argparse.SUPPRESS, help="defect caps, e.g. 1,1,0")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)

    p = argparse.ArgumentParser(prog="planedefect", parents=[common],
                                description="Plane graph toolkit for defective 3-coloring.")
    p.add_argument("--config", help="JSON file with default values for the global flags")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        s = sub.add_parser(name, parents=[common], help=help_)
        s.set_defaults(func=fn)
        return s

    s = add("check", cmd_check, "validate a plane graph and list its faces")
    s.add_argument("file")
    s.add_argument("--c0")
    s = add("classcheck", cmd_classcheck, "membership in the graph class")
    s.add_argument("file")
    s = add("color", cmd_color, "find a defective coloring")
    s.add_argument("file")
    s.add_argument("--pin", nargs="*", default=[], metavar="v=c")
    s = add("superextend", cmd_superextend, "check every boundary coloring extends")
    s.add_argument("file")
    s.add_argument("--c0")
    s = add("discharge", cmd_discharge, "run the discharging rules")
    s.add_argument("file")
    s.add_argument("--c0")
    s = add("scan", cmd_scan, "list configuration matches")
    s.add_argument("file")
    s.add_argument("--c0")
    s.add_argument("--lemma", action="append")
    s = add("oracle", cmd_oracle, "verify one match's reduction")
    s.add_argument("file")
    s.add_argument("--c0")
    s.add_argument("--match", required=True, help="index in the scan list or a lemma id")
    s.add_argument("--cross-check", action="store_true")
    s = add("gen", cmd_gen, "generate plane graphs")
    s.add_argument("kind", choices=("enum", "sample", "plant"))
    s.add_argument("--n", type=int, default=8)
    s.add_argument("--count", type=int, default=1)
    s.add_argument("--outer", type=int, default=None)
    s.add_argument("--lemma", default="no-333-path")
    s.add_argument("--padding", type=int, default=0)
    s.add_argument("--out")
    s = add("fullaudit", cmd_fullaudit, "run every stage on a file or directory")
    s.add_argument("path")
    s.add_argument("--jobs", type=int, default=1)
    return p


_DEFAULTS = {"json": False, "caps": "1,1,0", "seed": 0}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    settings = dict(_DEFAULTS)
    try:
        if args.config:
            try:
                conf = json.loads(Path(args.config).read_text())
            except (OSError, ValueError) as exc:
                raise InputError(f"config: {exc}") from exc
            unknown = set(conf) - set(_DEFAULTS)
            if unknown:
                raise InputError(f"config: unknown keys {sorted(unknown)}")
            settings.update(conf)
        for key, value in settings.items():
            if not hasattr(args, key):
                setattr(args, key, value)
        if args.command == "gen" and args.outer is None:
            args.outer = 3 if args.kind == "sample" else 7
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
