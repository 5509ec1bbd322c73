from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

PASS = "pass"
FAIL = "fail"


@dataclass
class Report:
    """Outcome of a verification run. ``witness`` is set on failure."""

    check: str
    status: str
    degree: int | None = None
    witness: Any = None
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def __bool__(self) -> bool:
        return self.passed

    def to_json(self) -> dict:
        out: dict[str, Any] = {"check": self.check, "status": self.status}
        if self.degree is not None:
            out["degree"] = self.degree
        out["witness"] = self.witness
        out.update(self.details)
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)
