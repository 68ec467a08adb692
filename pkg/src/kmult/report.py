"""Run reports and their text / structured / plot emitters.

The structured form contains only the deterministic keys (model, op,
params, values, provenance, certified) so identical runs are
byte-identical; wall-clock timings appear in the text form only.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction

from .util import INFINITE


def jsonable(x):
    """Recursively convert values to stable JSON-compatible data."""
    if x is INFINITE:
        return "Infinite"
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else str(x.numerator)
    if isinstance(x, float):
        return round(x, 12)
    if isinstance(x, dict):
        return {_key(k): jsonable(v) for k, v in sorted(x.items(), key=lambda kv: _key(kv[0]))}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, (int, str, bool)) or x is None:
        return x
    if hasattr(x, "__dict__"):
        return {k: jsonable(v) for k, v in sorted(vars(x).items())}
    return repr(x)


def _key(k):
    if isinstance(k, tuple):
        return ",".join(str(t) for t in k)
    return str(k)


def fingerprint(model_text: str) -> str:
    return hashlib.sha256(model_text.encode("utf-8")).hexdigest()[:16]


@dataclass
class RunReport:
    command: str
    model: str              # fingerprint
    op: str
    params: dict
    values: object
    provenance: list = field(default_factory=list)
    certified: object = None
    timings: dict = field(default_factory=dict)

    def structured(self) -> dict:
        return {
            "model": self.model,
            "op": self.op,
            "params": jsonable(self.params),
            "values": jsonable(self.values),
            "provenance": jsonable(self.provenance),
            "certified": self.certified,
        }


def emit_report(report: RunReport, fmt: str = "text") -> str:
    if fmt in ("structured", "json", "json-like"):
        return json.dumps(report.structured(), sort_keys=True, indent=2) + "\n"
    if fmt == "plot":
        return _emit_plot(report)
    return _emit_text(report)


def parse_structured(data: str) -> dict:
    return json.loads(data)


def _fmt_value(v):
    j = jsonable(v)
    if isinstance(j, (dict, list)):
        return json.dumps(j)
    return str(j)


def _emit_text(report: RunReport) -> str:
    lines = [f"# {report.command}",
             f"model {report.model}  op {report.op}  certified {report.certified}"]
    if report.params:
        lines.append("params " + json.dumps(jsonable(report.params)))
    values = report.values
    if isinstance(values, dict):
        width = max(len(_key(k)) for k in values)
        for k, v in values.items():
            lines.append(f"  {_key(k):<{width}}  {_fmt_value(v)}")
    else:
        lines.append(f"  {_fmt_value(values)}")
    for entry in report.provenance:
        lines.append(f"  [{entry['provenance']}] {entry['key']}: expected {entry['expected']}"
                     f" actual {entry['actual']} match={entry['match']}")
    for k, v in report.timings.items():
        lines.append(f"  time {k}: {v:.3f}s")
    return "\n".join(line[:120] for line in lines) + "\n"


def _emit_plot(report: RunReport) -> str:
    values = report.values
    rows = values.get("plot") if isinstance(values, dict) else None
    if rows is None:
        raise ValueError("this operation has no plot form")
    out = []
    for row in rows:
        out.append("\t".join(str(jsonable(x)) for x in row))
    return "\n".join(out) + "\n"
