"""Reports shared by every CLI verb.

The structured form is sorted-key JSON with rationals written as strings,
so runs are byte-for-byte reproducible.  The text form is rendered from
the same nested dict and therefore shows the same numbers.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass, field
from typing import Any


@dataclass
class Report:
    command: str
    inputs_digest: str
    options: dict[str, Any] = field(default_factory=dict)
    results: dict[str, Any] = field(default_factory=dict)
    caveats: list[str] = field(default_factory=list)


def digest(command: str, text: str, options: dict[str, Any]) -> str:
    h = hashlib.sha256()
    h.update(command.encode())
    h.update(b"\0")
    h.update(text.encode())
    h.update(b"\0")
    h.update(json.dumps(options, sort_keys=True).encode())
    return "sha256:" + h.hexdigest()


def emit_structured(report: Report) -> str:
    return json.dumps(asdict(report), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def parse_structured(text: str) -> Report:
    data = json.loads(text)
    return Report(**data)


def _scalar(v: Any) -> str:
    if v is None:
        return "none"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def _render(value: Any, indent: int, out: list[str]) -> None:
    pad = "  " * indent
    if isinstance(value, dict):
        for k in sorted(value):
            v = value[k]
            if isinstance(v, (dict, list)) and v:
                out.append(f"{pad}{k}:")
                _render(v, indent + 1, out)
            elif isinstance(v, (dict, list)):
                out.append(f"{pad}{k}: (none)")
            else:
                out.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(value, list):
        for item in value:
            if isinstance(item, (dict, list)) and item:
                out.append(f"{pad}-")
                _render(item, indent + 1, out)
            else:
                out.append(f"{pad}- {_scalar(item)}")
    else:
        out.append(pad + _scalar(value))


def emit_text(report: Report) -> str:
    out = [f"command: {report.command}", f"inputs_digest: {report.inputs_digest}"]
    for section in ("options", "results"):
        body = getattr(report, section)
        out.append(f"{section}:" if body else f"{section}: (none)")
        _render(body, 1, out)
    out.append("caveats:" if report.caveats else "caveats: (none)")
    _render(report.caveats, 1, out)
    return "\n".join(out) + "\n"


def emit(report: Report, fmt: str = "text") -> str:
    if fmt == "structured":
        return emit_structured(report)
    if fmt == "text":
        return emit_text(report)
    raise ValueError(f"unknown format {fmt!r}")
