"""Structured, deterministic reporting.

Reports hold a flat list of named pass/fail checks plus a free-form data
payload. ``jsonable`` renders everything to plain JSON types with exact
rationals as [numerator, denominator] integer pairs; decimal rendering is
a display concern and never enters a report.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

SCHEMA = "catcover.report/1"


@dataclass(frozen=True)
class Check:
    """One verified equality or property."""

    name: str
    passed: bool
    observed: Any = None
    expected: Any = None


@dataclass
class Report:
    """Envelope for one CLI invocation or verification run."""

    command: list[str]
    inputs: dict[str, str] = field(default_factory=dict)
    status: str = "pass"  # pass | refusal | error
    results: list[Check] = field(default_factory=list)
    data: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "command": list(self.command),
            "inputs": dict(sorted(self.inputs.items())),
            "status": self.status,
            "results": [jsonable(c) for c in self.results],
            "data": jsonable(self.data),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"


def jsonable(value: Any) -> Any:
    """Recursively convert values to JSON-safe types, keeping exactness."""
    from .polyrat import Poly, RationalFunction

    if isinstance(value, Fraction):
        return [value.numerator, value.denominator]
    if isinstance(value, Poly):
        return {"coefficients": [jsonable(c) for c in value.coeffs]}
    if isinstance(value, RationalFunction):
        return {"num": jsonable(value.num), "den": jsonable(value.den)}
    if isinstance(value, (bool, int, str)) or value is None:
        return value
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        return {f.name: jsonable(getattr(value, f.name)) for f in dataclasses.fields(value)}
    return str(value)
