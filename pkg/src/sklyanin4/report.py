"""Check records, JSON/Markdown rendering, and exact-value encoding."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any

from .geometry import ProjPoint
from .ncalg import NcTensor
from .scalars import FieldElem

__all__ = ["Record", "Report", "encode", "PASS", "FAIL", "SKIP"]

PASS, FAIL, SKIP = "pass", "fail", "skip"


def encode(value: Any) -> Any:
    """Turn exact values into JSON-native data.

    Tower elements become ``{"tower": [...], "coeffs": [...], "expr": ...}``
    with coefficients over the monomial basis of the tower.
    """
    if isinstance(value, bool) or value is None or isinstance(value, (str, float)):
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, FieldElem):
        if value.is_rational():
            return str(value.rational_value())
        return {"tower": list(value.tower.labels),
                "coeffs": [str(c) for c in value.coeffs()],
                "expr": str(value)}
    if isinstance(value, ProjPoint):
        return [encode(c) for c in value.coords]
    if isinstance(value, NcTensor):
        return {"degree": value.degree,
                "terms": [[list(w), encode(c)] for w, c in sorted(value.terms.items())]}
    if isinstance(value, dict):
        return {str(k): encode(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value, key=repr) if isinstance(value, (set, frozenset)) else value
        return [encode(v) for v in items]
    if hasattr(value, "__dataclass_fields__"):
        return encode(asdict(value))
    return repr(value)


@dataclass
class Record:
    id: str
    anchor: str
    status: str
    witness: Any = None
    elapsed: float = 0.0


@dataclass
class Report:
    command: str
    config: dict
    records: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.status != FAIL for r in self.records)

    @property
    def exit_code(self) -> int:
        return 0 if self.ok else 1

    def to_dict(self) -> dict:
        return {"command": self.command, "config": self.config,
                "records": [asdict(r) for r in self.records]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "Report":
        return cls(data["command"], data["config"], [Record(**r) for r in data["records"]])

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls.from_dict(json.loads(text))

    def to_markdown(self) -> str:
        lines = [f"# {self.command}", "",
                 "| check | status | elapsed (s) | claim |",
                 "|---|---|---|---|"]
        for r in self.records:
            lines.append(f"| `{r.id}` | {r.status.upper()} | {r.elapsed:.3f} | {r.anchor} |")
        lines.append("")
        failed = [r for r in self.records if r.status == FAIL]
        lines.append(f"{len(self.records) - len(failed)}/{len(self.records)} checks passed.")
        for r in failed:
            lines += ["", f"## {r.id}", "", "```", json.dumps(r.witness, indent=2), "```"]
        return "\n".join(lines) + "\n"
