"""Pass/fail records produced by the verification routines."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np


@dataclass
class Check:
    name: str
    passed: bool
    residual: float
    witness: Any = None
    detail: str = ""


@dataclass
class Report:
    """Ordered list of checks; the verdict is pass iff every check passes."""

    title: str
    checks: List[Check] = field(default_factory=list)
    data: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __bool__(self):
        return self.passed

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def __contains__(self, name: str) -> bool:
        return any(c.name == name for c in self.checks)

    def add(self, name, residual, tol, witness=None, detail="") -> Check:
        residual = float(residual)
        ok = bool(residual <= tol)
        check = Check(name, ok, residual, None if ok else witness, detail)
        self.checks.append(check)
        return check

    def add_flag(self, name, ok, witness=None, detail="") -> Check:
        check = Check(name, bool(ok), 0.0 if ok else 1.0, None if ok else witness, detail)
        self.checks.append(check)
        return check

    def failures(self) -> List[Check]:
        return [c for c in self.checks if not c.passed]

    def summary(self) -> str:
        lines = [f"{self.title}: {'pass' if self.passed else 'FAIL'}"]
        for c in self.checks:
            mark = "ok  " if c.passed else "FAIL"
            lines.append(f"  [{mark}] {c.name:<32s} residual={c.residual:.3e} {c.detail}")
        return "\n".join(lines)


class Worst:
    """Running maximum of a residual together with its witness."""

    def __init__(self):
        self.value = 0.0
        self.witness: Optional[Any] = None

    def update(self, value, witness=None):
        value = float(value) if np.isfinite(value) else float("inf")
        if self.witness is None or value > self.value:
            self.value = value
            self.witness = witness
