"""Verification records and their JSON/CSV export."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Any, Iterable

import numpy as np

# relation -> predicate on (lhs, rhs, tolerance); strict relations must clear
# the tolerance, non-strict ones may violate by at most the tolerance
_RELATIONS = {
    "eq": lambda a, b, tol: abs(a - b) <= tol,
    "lt": lambda a, b, tol: a < b - tol,
    "le": lambda a, b, tol: a <= b + tol,
    "gt": lambda a, b, tol: a > b + tol,
    "ge": lambda a, b, tol: a >= b - tol,
}


@dataclass
class VerificationReport:
    """Outcome of one numerical check.

    ``margin`` is signed slack: positive means the relation holds with room
    to spare. For equalities it is ``tolerance - |lhs - rhs|``.
    """

    check: str
    params: dict
    lhs: Any
    rhs: Any
    relation: str
    tolerance: float
    margin: float
    passed: bool
    note: str = ""
    details: dict = field(default_factory=dict)

    @classmethod
    def compare(cls, check: str, params: dict, lhs, rhs, relation: str,
                tolerance: float = 0.0, note: str = "", **details) -> "VerificationReport":
        ok = bool(_RELATIONS[relation](lhs, rhs, tolerance))
        if relation == "eq":
            margin = tolerance - abs(lhs - rhs)
        elif relation in ("lt", "le"):
            margin = rhs - lhs
        else:
            margin = lhs - rhs
        return cls(check, params, lhs, rhs, relation, tolerance, float(margin), ok, note, details)

    @classmethod
    def combine(cls, check: str, params: dict, parts: list["VerificationReport"],
                note: str = "") -> "VerificationReport":
        """Fold sub-checks into one record; passes iff every part passes."""
        worst = min(parts, key=lambda r: (r.passed, r.margin))
        return cls(check, params, worst.lhs, worst.rhs, worst.relation, worst.tolerance,
                   worst.margin, all(p.passed for p in parts), note,
                   {"parts": [p.to_dict() for p in parts]})

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "params": _plain(self.params),
            "lhs": _plain(self.lhs),
            "rhs": _plain(self.rhs),
            "relation": self.relation,
            "tolerance": self.tolerance,
            "margin": self.margin,
            "passed": self.passed,
            "note": self.note,
            "details": _plain(self.details),
        }


def _plain(obj):
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _plain(obj.tolist())
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    return obj


def reports_to_json(reports: Iterable[VerificationReport]) -> str:
    return json.dumps([r.to_dict() for r in reports], indent=2)


def reports_to_csv(reports: Iterable[VerificationReport]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["check", "params", "margin", "pass"])
    for r in reports:
        params = ";".join(f"{k}={v}" for k, v in _plain(r.params).items())
        writer.writerow([r.check, params, f"{r.margin:.10g}", r.passed])
    return buf.getvalue()
