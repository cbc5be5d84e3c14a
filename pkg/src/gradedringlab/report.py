"""Versioned JSON reports and their plain-text rendering.

Schema ``gradedringlab-report v1``::

    {
      "schema": "gradedringlab-report v1",
      "tool": {"name": "gradedringlab", "version": "..."},
      "command": "build" | "analyze" | "check" | "search-gradings" | "catalog" | "error",
      "input": {...},          # echo of the spec text or catalog selection, flags and caps
      "result": {...},         # command specific, see the cli module
      "timestamp": "..."       # ISO 8601 UTC; omitted under --no-timestamp
    }

Keys keep insertion order, which the producers make deterministic, so two
runs on the same input give byte-identical output once the timestamp is dropped.
"""

from __future__ import annotations

import datetime as dt
import json
from typing import Any

from . import __version__

SCHEMA = "gradedringlab-report v1"


def make_report(command: str, inputs: dict, result: dict, timestamp: bool = True) -> dict:
    rep: dict[str, Any] = {
        "schema": SCHEMA,
        "tool": {"name": "gradedringlab", "version": __version__},
        "command": command,
        "input": inputs,
        "result": result,
    }
    if timestamp:
        rep["timestamp"] = dt.datetime.now(dt.timezone.utc).isoformat(timespec="seconds")
    return rep


def _default(obj: Any) -> Any:
    # numpy scalars and arrays can reach witnesses raised deep in the algebra code
    if hasattr(obj, "tolist"):
        return obj.tolist()
    raise TypeError(f"not JSON serializable: {type(obj).__name__}")


def to_json(report: dict) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False, default=_default) + "\n"


def _scalar(v: Any) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, (dict, list)):
        return json.dumps(v, separators=(",", ":"))
    return str(v)


def _lines(obj: Any, prefix: str = "") -> list[str]:
    if isinstance(obj, dict) and obj:
        out = []
        for k, v in obj.items():
            if isinstance(v, dict) and v:
                out.append(f"{prefix}{k}:")
                out += _lines(v, prefix + "  ")
            else:
                out.append(f"{prefix}{k}: {_scalar(v)}")
        return out
    return [f"{prefix}{_scalar(obj)}"]


def _check_table(result: dict) -> list[str]:
    rows = [(r["fixture"], r["check"], r["status"]) for r in result["results"]]
    w1 = max([len("fixture")] + [len(r[0]) for r in rows])
    w2 = max([len("check")] + [len(r[1]) for r in rows])
    out = [f"{'fixture':<{w1}}  {'check':<{w2}}  status", "-" * (w1 + w2 + 12)]
    out += [f"{a:<{w1}}  {b:<{w2}}  {c}" for a, b, c in rows]
    out.append("")
    out += _lines({"summary": result["summary"]})
    return out


def to_table(report: dict) -> str:
    head = [f"{report['schema']}  {report['command']}"]
    if "timestamp" in report:
        head.append(f"timestamp: {report['timestamp']}")
    result = report["result"]
    if report["command"] == "check":
        body = _check_table(result)
    elif report["command"] == "catalog":
        body = [f"{f['name']:<40} |R|={f['size']:<6} {f['group']:<12} "
                f"{'counterexample' if f['counterexample'] else ''}".rstrip() for f in result["fixtures"]]
    else:
        body = _lines(result)
    return "\n".join(head + [""] + body) + "\n"
