"""Pass/fail reports with deterministic witnesses."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np


@dataclass
class Check:
    name: str
    passed: bool
    witness: dict | None = None

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "witness": self.witness}


@dataclass
class Report:
    subject: str
    checks: list[Check] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def add(self, name: str, witness: dict | None) -> Check:
        check = Check(name, witness is None, witness)
        self.checks.append(check)
        return check

    def first_failure(self) -> Check | None:
        return next((c for c in self.checks if not c.passed), None)

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
            "notes": list(self.notes),
        }

    def format(self) -> str:
        lines = [f"{self.subject}: {'PASS' if self.passed else 'FAIL'}"]
        for c in self.checks:
            tag = "ok  " if c.passed else "FAIL"
            extra = "" if c.passed else f"  witness={c.witness}"
            lines.append(f"  [{tag}] {c.name}{extra}")
        lines.extend(f"  note: {n}" for n in self.notes)
        return "\n".join(lines)


def first_witness(mismatch: np.ndarray, names: Sequence[str]) -> dict | None:
    """Lexicographically smallest index (in axis order) where ``mismatch`` holds."""
    mismatch = np.asarray(mismatch)
    if mismatch.ndim != len(names):
        raise ValueError(f"mask has {mismatch.ndim} axes, got {len(names)} names")
    if not mismatch.any():
        return None
    idx = np.argwhere(mismatch)[0]
    return {n: int(v) for n, v in zip(names, idx)}
