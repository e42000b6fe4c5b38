"""Structured pass/fail reports shared by every checker."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .exact import to_jsonable
from .tensors import first_nonzero


@dataclass
class CheckResult:
    name: str
    passed: bool
    violations: int = 0
    counterexample: Any = None   # tuple of 1-based basis indices (or other witness)
    residual: Any = None         # nested lists of exact rationals as strings
    note: str = ""

    def __post_init__(self):
        if not self.passed and self.violations == 0:
            self.violations = 1

    def to_dict(self) -> dict:
        out = {"name": self.name, "passed": self.passed, "violations": self.violations}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        if self.residual is not None:
            out["residual"] = self.residual
        if self.note:
            out["note"] = self.note
        return out


def residual_check(name: str, R, vector_axes: int = 1, note: str = "", index_labels=None) -> CheckResult:
    """CheckResult from a residual tensor that must vanish.

    The last ``vector_axes`` axes hold the value (a vector or a matrix); the
    leading axes index basis tuples, reported 1-based.
    """
    R = np.asarray(R, dtype=object)
    count, idx, res = first_nonzero(R, vector_axes)
    if count == 0:
        return CheckResult(name, True, note=note)
    witness = tuple(i + 1 for i in idx)
    if index_labels is not None:
        witness = {lab: w for lab, w in zip(index_labels, witness)}
    return CheckResult(name, False, count, witness, to_jsonable(res), note)


@dataclass
class Report:
    title: str
    checks: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    data: dict = field(default_factory=dict)
    # checks listed here are diagnostics and do not affect the verdict
    advisory: set = field(default_factory=set)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks if c.name not in self.advisory)

    def __bool__(self):
        return self.passed

    def add(self, check: CheckResult, advisory: bool = False) -> CheckResult:
        self.checks.append(check)
        if advisory:
            self.advisory.add(check.name)
        return check

    def extend(self, other: "Report", prefix: str = ""):
        for c in other.checks:
            name = prefix + c.name
            self.checks.append(CheckResult(name, c.passed, c.violations, c.counterexample, c.residual, c.note))
            if c.name in other.advisory:
                self.advisory.add(name)
        self.notes.extend(other.notes)

    def check(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def failures(self):
        return [c for c in self.checks if not c.passed and c.name not in self.advisory]

    def to_dict(self) -> dict:
        checks = []
        for c in self.checks:
            d = c.to_dict()
            if c.name in self.advisory:
                d["advisory"] = True
            checks.append(d)
        out = {"title": self.title, "passed": self.passed, "checks": checks}
        if self.notes:
            out["notes"] = list(self.notes)
        if self.data:
            out["data"] = self.data
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False)

    def render_text(self) -> str:
        lines = [f"{self.title}: {'PASS' if self.passed else 'FAIL'}"]
        for c in self.checks:
            tag = "ok  " if c.passed else ("info" if c.name in self.advisory else "FAIL")
            line = f"  [{tag}] {c.name}"
            if not c.passed:
                line += f"  violations={c.violations}"
                if c.counterexample is not None:
                    line += f"  at {c.counterexample}"
                if c.residual is not None:
                    line += f"  residual={c.residual}"
            if c.note:
                line += f"  ({c.note})"
            lines.append(line)
        for key, val in self.data.items():
            if isinstance(val, list) and val and all(isinstance(r, dict) for r in val):
                lines.extend(_table(key, val))
            else:
                lines.append(f"  {key}: {val}")
        for n in self.notes:
            lines.append(f"  note: {n}")
        return "\n".join(lines)


def _table(name, rows):
    cols = list(dict.fromkeys(k for r in rows for k in r))
    cells = [[str(r.get(c, "")) for c in cols] for r in rows]
    widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(cols)]
    fmt = "    " + "  ".join(f"{{:>{w}}}" for w in widths)
    return [f"  {name}:", fmt.format(*cols)] + [fmt.format(*row) for row in cells]
