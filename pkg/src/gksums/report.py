from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass
class Report:
    """Pass/fail tally for a family of numeric checks.

    ``worst`` keeps, per label, the largest observed error (identity checks) or
    the largest excess over the bound (bound checks; negative means slack).
    """

    name: str
    passed: int = 0
    failed: int = 0
    worst: dict[str, float] = field(default_factory=dict)
    info: dict[str, object] = field(default_factory=dict)
    failures: list[str] = field(default_factory=list)

    def record(self, label: str, ok, error=None, cases=None, keep: int = 5) -> None:
        ok = np.asarray(ok, dtype=bool).ravel()
        n_ok = int(ok.sum())
        self.passed += n_ok
        self.failed += ok.size - n_ok
        if error is not None:
            error = np.asarray(error, dtype=float).ravel()
            if error.size:
                w = float(error.max())
                self.worst[label] = max(self.worst.get(label, w), w)
        if n_ok < ok.size and len(self.failures) < keep:
            bad = np.flatnonzero(~ok)[: keep - len(self.failures)]
            for i in bad:
                case = cases[i] if cases is not None else i
                self.failures.append(f"{label}: {case}")

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def merge(self, other: "Report") -> "Report":
        self.passed += other.passed
        self.failed += other.failed
        for k, v in other.worst.items():
            self.worst[k] = max(self.worst.get(k, v), v)
        self.info.update(other.info)
        self.failures.extend(other.failures)
        return self

    def summary(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        lines = [f"{self.name}: {status} ({self.passed} passed, {self.failed} failed)"]
        for k in sorted(self.worst):
            lines.append(f"  {k}: worst {self.worst[k]:.3e}")
        for k in self.info:
            lines.append(f"  {k}: {self.info[k]}")
        for f in self.failures:
            lines.append(f"  failure {f}")
        return "\n".join(lines)
