"""Verification report shared by every verify_* operation."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field


@dataclass
class VerificationReport:
    check_id: str
    verdict: bool
    residual: str = ""
    params: dict = field(default_factory=dict)
    anchor: str = ""
    ms: float = 0.0
    details: list = field(default_factory=list)

    @property
    def verdict_str(self):
        return "PASS" if self.verdict else "FAIL"

    def to_dict(self):
        return {
            "id": self.check_id,
            "verdict": self.verdict_str,
            "residual": self.residual,
            "params": {k: str(v) for k, v in self.params.items()},
            "anchor": self.anchor,
            "ms": round(self.ms, 3),
            "details": list(self.details),
        }

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True)

    def text_line(self):
        line = f"{self.verdict_str} {self.check_id} ({self.anchor}) {self.ms:.0f}ms"
        if not self.verdict and self.residual:
            line += f"\n  residual: {self.residual}"
        if not self.verdict and self.details:
            line += "".join(f"\n  {d}" for d in self.details)
        return line


class Stopwatch:
    """Context manager that stamps wall time onto a report."""

    def __init__(self):
        self.ms = 0.0

    def __enter__(self):
        self._t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.ms = (time.perf_counter() - self._t0) * 1000.0
        return False
