"""Command-line front end.

Exit codes: 0 success, 1 verification or check failure, 2 input error,
3 cap exceeded.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from . import cleanness as K
from .errors import AlgebraError, CapExceeded, SpecError
from .grading import GradedRing, is_graded_division
from .groups import FiniteGroup
from .harness.catalog import Fixture, catalog, fixture
from .harness.checks import CHECK_IDS, run_checks, summarize
from .harness.search import grading_search
from .limits import limits
from .radicals import graded_jacobson_radical, is_graded_local
from .report import make_report, to_json, to_table
from .specfile import Spec, parse_spec
from .structure import classify_elements, jacobson_radical

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3

# Elements are listed in full only for components at most this large.
LIST_LIMIT = 64

KNOWN_FLAGS = ("graded-nil-clean", "graded-strongly-nil-clean", "graded-clean", "graded-2-nil-clean",
               "nil-clean", "graded-division", "re-nil-clean", "graded-local", "counterexample")

OUT_OF_SCOPE = [
    "S-graded results whose hypotheses involve the left graded radical: no instance construction, no check",
    "group-ring theorem for locally finite 2-groups: only finite 2-groups are instantiated",
]


class InputError(Exception):
    pass


# -- input helpers --------------------------------------------------------------------------

def _read_spec(path: str) -> tuple[str, Spec]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read spec file {path}: {exc.strerror}") from exc
    return text, parse_spec(text)


def _spec_fixture(path: str, text: str, spec: Spec) -> Fixture:
    for flag in spec.expect:
        if flag not in KNOWN_FLAGS:
            line = next((i for i, ln in enumerate(text.splitlines(), 1)
                         if ln.split()[:2] == ["expect", flag]), 0)
            raise SpecError(f"unknown flag {flag!r}; known flags: {', '.join(KNOWN_FLAGS)}", line, 8)
    expected = {k: (v, "spec") for k, v in spec.expect.items() if k != "counterexample"}
    return Fixture(spec.target_name or Path(path).stem, text, expected,
                   counterexample=spec.expect.get("counterexample", False))


def _select_catalog(sel: str) -> list[Fixture]:
    if sel == "all":
        return list(catalog())
    try:
        return [fixture(n) for n in sel.split(",") if n]
    except KeyError as exc:
        raise InputError(f"unknown fixture {exc.args[0]}") from exc


def _el(GR: GradedRing, x: int) -> dict:
    return {"element": int(x), "value": GR.fmt(int(x)), "degree": _degree_name(GR, int(x))}


def _degree_name(GR: GradedRing, x: int) -> str:
    d = int(GR.degrees[x])
    if d == -1:
        return "zero"
    if d == -2:
        return "non-homogeneous"
    return GR.group.names[d]


def _verdict(GR: GradedRing, v: K.Verdict) -> dict:
    out: dict[str, Any] = {"holds": v.holds}
    if v.witness is not None:
        out["witness"] = _el(GR, v.witness)
    return out


def _members(GR: GradedRing, mask: np.ndarray) -> dict:
    idx = np.flatnonzero(mask)
    out: dict[str, Any] = {"size": int(idx.size)}
    if idx.size <= LIST_LIMIT:
        out["elements"] = [GR.fmt(int(x)) for x in idx]
    return out


# -- commands -------------------------------------------------------------------------------

def _summary(GR: GradedRing) -> dict:
    return GR.describe()


def cmd_build(args) -> tuple[dict, dict, int]:
    text, spec = _read_spec(args.spec)
    GR = spec.target
    result = {"target": spec.target_name, "graded_ring": _summary(GR),
              "verified": True, "rings": {k: R.describe() for k, R in spec.rings.items()}}
    return {"spec": text}, result, EXIT_OK


def _element_report(GR: GradedRing, x: int) -> dict:
    R = GR.ring
    if not 0 <= x < R.size:
        raise InputError(f"element index {x} out of range 0..{R.size - 1}")
    cl = classify_elements(R)
    out = {**_el(GR, x), "idempotent": bool(cl.idempotent[x]), "nilpotent": bool(cl.nilpotent[x]),
           "unit": bool(cl.unit[x]), "square": GR.fmt(int(R.mul(x, x)))}
    if GR.homogeneous[x]:
        out["graded_nil_clean_decompositions"] = [
            {"idempotent": GR.fmt(d.f), "nilpotent": GR.fmt(d.b), "commuting": d.commuting}
            for d in K.graded_nil_clean_element(GR, x)]
        out["graded_clean_decompositions"] = len(K.graded_clean_element(GR, x))
    return out


def cmd_analyze(args) -> tuple[dict, dict, int]:
    text, spec = _read_spec(args.spec)
    GR = spec.target
    R = GR.ring
    cl = classify_elements(R)
    comps = {}
    for g in range(GR.group.order):
        m = GR.masks[g].copy()
        m[R.zero] = False
        comps[GR.group.names[g]] = {
            "size": int(GR.masks[g].sum()),
            "idempotents": _members(GR, m & cl.idempotent),
            "nilpotents": _members(GR, m & cl.nilpotent),
            "units": _members(GR, m & cl.unit),
        }
    verdicts = {
        "graded-nil-clean": _verdict(GR, K.is_graded_nil_clean(GR)),
        "graded-strongly-nil-clean": _verdict(GR, K.is_graded_strongly_nil_clean(GR)),
        "graded-clean": _verdict(GR, K.is_graded_clean(GR)),
        "graded-2-nil-clean": _verdict(GR, K.is_graded_2_nil_clean(GR)),
        "nil-clean": _verdict(GR, K.is_nil_clean(R)),
        "graded-division": {"holds": is_graded_division(GR)},
    }
    if GR.is_group_graded:
        Re = K.e_component_ring(GR)
        v = K.is_nil_clean(Re)
        re = {"holds": v.holds}
        if v.witness is not None:
            re["witness"] = _el(GR, int(Re.members[v.witness]))
        verdicts["re-nil-clean"] = re
    else:
        verdicts["re-nil-clean"] = {"holds": all(K.is_nil_clean(C).holds for C in K.idempotent_component_rings(GR))}
    J = jacobson_radical(R)
    radicals: dict[str, Any] = {"J": _members(GR, J.mask)}
    if GR.is_group_graded:
        rad = graded_jacobson_radical(GR)
        radicals["Jg"] = {**_members(GR, rad.ideal.mask), "maximal_homogeneous_right_ideals": rad.maximal_count,
                          "e_part_matches": rad.e_part_matches}
        radicals["J_equals_Jg"] = bool(np.array_equal(J.mask, rad.ideal.mask))
        radicals["graded_local"] = is_graded_local(GR)
    else:
        radicals["note"] = "graded radical is only computed for group gradings"
    result = {"target": spec.target_name, "graded_ring": _summary(GR), "components": comps,
              "verdicts": verdicts, "radicals": radicals}
    if args.element:
        result["elements"] = [_element_report(GR, x) for x in args.element]
    return {"spec": text, "elements": list(args.element or [])}, result, EXIT_OK


def cmd_check(args) -> tuple[dict, dict, int]:
    if bool(args.spec) == bool(args.catalog):
        raise InputError("check needs exactly one of --spec FILE or --catalog NAMES|all")
    if args.spec:
        text, spec = _read_spec(args.spec)
        fixtures = [_spec_fixture(args.spec, text, spec)]
        inputs: dict[str, Any] = {"spec": text}
    else:
        fixtures = _select_catalog(args.catalog)
        inputs = {"catalog": [f.name for f in fixtures]}
    try:
        results = run_checks(fixtures, args.checks, jobs=args.jobs)
    except KeyError as exc:
        raise InputError(exc.args[0]) from exc
    inputs["checks"] = args.checks
    summary = summarize(results)
    result = {"summary": summary, "results": [r.as_dict() for r in results], "out_of_scope": OUT_OF_SCOPE}
    return inputs, result, EXIT_FAIL if summary["FAILED"] else EXIT_OK


def cmd_search_gradings(args) -> tuple[dict, dict, int]:
    text, spec = _read_spec(args.spec)
    GR = spec.target
    if args.group:
        G = spec.groups.get(args.group)
        if G is None:
            raise InputError(f"spec declares no group {args.group!r}")
    else:
        G = GR.group
    if not isinstance(G, FiniteGroup):
        raise InputError("grading search needs a group, not a partial groupoid")
    res = grading_search(GR.ring, G)
    data = res.as_dict()
    data["census"] = {
        "gradings": len(res.gradings),
        "trivial": sum(1 for f in res.gradings if f.trivial),
        "graded_nil_clean": sum(1 for f in res.gradings if f.graded_nil_clean),
        "re_nil_clean": sum(1 for f in res.gradings if f.re_nil_clean),
        "counterexamples": len(res.counterexamples),
    }
    return {"spec": text, "group": G.label}, data, EXIT_OK


def cmd_catalog(args) -> tuple[dict, dict, int]:
    rows = []
    for fx in catalog():
        GR = fx.graded
        rows.append({"name": fx.name, "size": GR.ring.size, "group": GR.group.label,
                     "counterexample": fx.counterexample,
                     "expected": {k: {"value": v, "provenance": p} for k, (v, p) in sorted(fx.expected.items())},
                     "notes": fx.notes, "spec": fx.spec})
    return {}, {"fixtures": rows, "checks": list(CHECK_IDS)}, EXIT_OK


COMMANDS = {"build": cmd_build, "analyze": cmd_analyze, "check": cmd_check,
            "search-gradings": cmd_search_gradings, "catalog": cmd_catalog}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="format", action="store_const", const="json", help="JSON output (default)")
    fmt.add_argument("--table", dest="format", action="store_const", const="table", help="plain-text output")
    common.add_argument("--no-timestamp", action="store_true", help="omit the timestamp for byte-stable output")
    common.add_argument("--out", help="write the report to this file instead of stdout")
    common.add_argument("--max-elements", type=int, help="largest ring size to construct")
    common.add_argument("--max-homogeneous", type=int, help="cap on homogeneous elements for radicals")
    common.add_argument("--max-ideals", type=int, help="cap on enumerated homogeneous right ideals")

    p = argparse.ArgumentParser(prog="gradedringlab", description="Finite graded ring toolkit")
    sub = p.add_subparsers(dest="command", required=True)
    b = sub.add_parser("build", parents=[common], help="construct and verify a graded ring")
    b.add_argument("--spec", required=True)
    a = sub.add_parser("analyze", parents=[common], help="classify elements, verdicts and radicals")
    a.add_argument("--spec", required=True)
    a.add_argument("--element", type=int, action="append", help="also report on this element index")
    c = sub.add_parser("check", parents=[common], help="run theorem checks")
    c.add_argument("--spec")
    c.add_argument("--catalog", help="'all' or comma-separated fixture names")
    c.add_argument("--checks", default="all", help="'all' or comma-separated check ids")
    c.add_argument("--jobs", type=int, default=1, help="worker threads")
    s = sub.add_parser("search-gradings", parents=[common], help="enumerate all G-gradings of a small ring")
    s.add_argument("--spec", required=True)
    s.add_argument("--group", help="group declared in the spec (default: the target's grading group)")
    sub.add_parser("catalog", parents=[common], help="list the built-in fixtures")
    return p


def _emit(report: dict, args) -> None:
    text = to_table(report) if args.format == "table" else to_json(report)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    caps = {k: v for k, v in (("max_elements", args.max_elements), ("max_homogeneous", args.max_homogeneous),
                              ("max_ideals", args.max_ideals)) if v is not None}
    stamp = not args.no_timestamp
    try:
        with limits(**caps):
            inputs, result, code = COMMANDS[args.command](args)
        inputs["caps"] = caps
    except (SpecError, InputError) as exc:
        code, err = EXIT_INPUT, {"kind": type(exc).__name__, "message": str(exc)}
        if isinstance(exc, SpecError):
            err["witness"] = exc.witness
        inputs, result = {"command": args.command}, {"error": err}
    except CapExceeded as exc:
        code, inputs = EXIT_CAP, {"command": args.command}
        result = {"error": {"kind": "CapExceeded", "message": str(exc), "witness": exc.witness}}
    except AlgebraError as exc:
        code, inputs = EXIT_FAIL, {"command": args.command}
        result = {"error": {"kind": type(exc).__name__, "message": str(exc), "witness": exc.witness}}
    if code in (EXIT_INPUT, EXIT_CAP) or "error" in result:
        sys.stderr.write(f"gradedringlab: {result['error']['message']}\n")
        _emit(make_report("error", inputs, result, stamp), args)
        return code
    _emit(make_report(args.command, inputs, result, stamp), args)
    return code


if __name__ == "__main__":
    sys.exit(main())
