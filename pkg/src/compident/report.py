"""Analysis reports in JSON and plain text.

Reports are byte-stable for a fixed model, seed and trial count: every list
has a defined order, and wall-clock timing is only included on request.
"""

from __future__ import annotations

import json
from importlib import resources
from typing import Optional

from .ident import Analysis
from .model import model_to_dict

SCHEMA_NAME = "report.schema.json"


def report_schema() -> dict:
    return json.loads(resources.files("compident").joinpath(SCHEMA_NAME).read_text())


def report_dict(a: Analysis, bound: int, timing: Optional[float] = None) -> dict:
    v = a.verdict
    out = {
        "model": model_to_dict(a.model),
        "settings": {"trials": v.trials, "seed": v.seed, "bound": bound},
        "parameters": list(a.params.names),
        "io_equations": [
            {"output": eq.output,
             "lhs": eq.lhs.to_text(),
             "rhs": [{"input": j, "operator": op.to_text()} for j, op in sorted(eq.rhs.items())]}
            for eq in a.equations],
        "coefficient_map": {
            "m": len(a.cmap),
            "entries": a.cmap.to_dicts(),
            "dropped": [str(lab) for lab, _ in a.cmap.dropped],
        },
        "verdict": v.to_dict(),
    }
    if timing is not None:
        out["timing_seconds"] = round(timing, 6)
    return out


def to_json(a: Analysis, bound: int, timing: Optional[float] = None) -> str:
    return json.dumps(report_dict(a, bound, timing), indent=2) + "\n"


def to_text(a: Analysis, bound: int, timing: Optional[float] = None) -> str:
    d = report_dict(a, bound, timing)
    v = a.verdict
    lines = [
        f"model: {json.dumps(d['model'])}",
        f"settings: trials={v.trials} seed={v.seed} bound={bound}",
        f"parameters ({len(a.params)}): {', '.join(a.params.names)}",
        "input-output equations:",
    ]
    lines += [f"  {eq.to_text()}" for eq in a.equations]
    lines.append(f"coefficient map (m = {len(a.cmap)}):")
    width = max((len(str(lab)) for lab in a.cmap.labels), default=0)
    lines += [f"  {str(lab):<{width}}  {p.to_text()}" for lab, p in a.cmap.entries]
    if a.cmap.dropped:
        lines.append("  dropped (constant): " + ", ".join(d["coefficient_map"]["dropped"]))
    word = "identifiable" if v.identifiable else "unidentifiable"
    confidence = "certified" if v.certified else "Monte Carlo"
    lines.append(f"verdict: {word} ({confidence})  "
                 f"generic rank {v.generic_rank} of required {v.required_rank}")
    lines.append("witness: " + ", ".join(f"{k}={x}" for k, x in v.witness_point.items()))
    if v.structural_certificates:
        lines.append("structural certificates:")
        lines += [f"  [{c['kind']}] {c['detail']}" for c in v.structural_certificates]
    else:
        lines.append("structural certificates: none")
    if timing is not None:
        lines.append(f"timing: {timing:.6f} s")
    return "\n".join(lines) + "\n"
