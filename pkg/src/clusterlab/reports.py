"""Uniform result type for the verification walks.

Every bounded check reports the same way: pass/fail/partial, how far it got,
how many nodes it looked at, and on failure a witness dict that always
carries enough to reproduce (at minimum the mutation path).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional


@dataclass(frozen=True)
class CheckReport:
    name: str
    status: str  # "pass" | "fail" | "partial"
    verified_depth: int = 0
    explored: int = 0
    failure: Optional[dict] = None
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        out = {
            "name": self.name,
            "status": self.status,
            "verified_depth": self.verified_depth,
            "explored": self.explored,
            "failure": self.failure,
        }
        if self.details:
            out["details"] = self.details
        return out
