"""Outcome records shared by the verification and invariant modules.

A CongruenceReport states a divisibility claim together with what was
actually achieved; vp(0) is represented by the `infinite` flag, never by
a numeric sentinel.  Reports serialize to plain JSON-safe dicts with
sorted keys so that identical runs produce byte-identical streams.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .exactmod import vp


@dataclass
class CongruenceReport:
    claim: str
    parameters: dict
    predicted_valuation: int
    achieved_valuation: int | None  # None iff infinite
    infinite: bool
    verified: bool
    witness: dict | None = None

    def to_dict(self) -> dict:
        return {
            "claim": self.claim,
            "parameters": _jsonable(self.parameters),
            "predicted_valuation": self.predicted_valuation,
            "achieved_valuation": self.achieved_valuation,
            "infinite": self.infinite,
            "verified": self.verified,
            "witness": _jsonable(self.witness),
        }


def make_report(
    claim: str,
    parameters: dict,
    predicted: int,
    value: int,
    p: int,
    witness_on_failure: dict | None = None,
) -> CongruenceReport:
    """Report on the claim p**predicted divides value."""
    if value == 0:
        achieved, infinite = None, True
    else:
        achieved, infinite = vp(value, p), False
    verified = infinite or achieved >= predicted
    return CongruenceReport(
        claim=claim,
        parameters=parameters,
        predicted_valuation=predicted,
        achieved_valuation=achieved,
        infinite=infinite,
        verified=verified,
        witness=None if verified else witness_on_failure,
    )


@dataclass
class InvariantResult:
    group: str
    invariant: str
    value: int
    search_space: int
    witness: list = field(default_factory=list)
    X: list | None = None
    predicted: int | None = None
    verified: bool = True

    def to_dict(self) -> dict:
        out = {
            "group": self.group,
            "invariant": self.invariant,
            "value": self.value,
            "search_space": self.search_space,
            "witness": _jsonable(self.witness),
            "predicted": self.predicted,
            "verified": self.verified,
        }
        if self.X is not None:
            out["X"] = sorted(self.X)
        return out


def _jsonable(obj):
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, float):
        return obj
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return str(obj)


def to_json_line(record) -> str:
    d = record.to_dict() if hasattr(record, "to_dict") else _jsonable(record)
    return json.dumps(d, sort_keys=True, separators=(",", ":"))


def csv_columns(record) -> list:
    if isinstance(record, CongruenceReport) or (
        isinstance(record, dict) and "claim" in record
    ):
        return [
            "claim",
            "predicted_valuation",
            "achieved_valuation",
            "infinite",
            "verified",
            "parameters",
            "witness",
        ]
    if isinstance(record, InvariantResult) or (
        isinstance(record, dict) and "invariant" in record
    ):
        return ["invariant", "group", "X", "value", "predicted", "verified",
                "search_space", "witness"]
    return list(record.keys())


def to_csv_row(record, columns=None) -> str:
    d = record.to_dict() if hasattr(record, "to_dict") else dict(record)
    cells = []
    for col in columns or csv_columns(record):
        v = d.get(col)
        if isinstance(v, (dict, list)):
            v = json.dumps(v, sort_keys=True, separators=(",", ":"))
        cell = "" if v is None else str(v)
        if any(ch in cell for ch in ",\"\n"):
            cell = '"' + cell.replace('"', '""') + '"'
        cells.append(cell)
    return ",".join(cells)


def to_text_line(record) -> str:
    d = record.to_dict() if hasattr(record, "to_dict") else dict(record)
    status = "ok" if d.get("verified") else "FAIL"
    if "claim" in d:
        ach = "inf" if d.get("infinite") else d.get("achieved_valuation")
        return (
            f"[{status}] {d['claim']}: predicted v>={d['predicted_valuation']}, "
            f"achieved {ach}"
        )
    return f"[{status}] {d.get('invariant', '?')}({d.get('group', '?')}) = {d.get('value')}"
