"""Result records shared by the numerical checkers and the exact verifiers."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"


@dataclass
class CheckResult:
    name: str
    passed: bool
    max_residual: float = 0.0
    status: str = ""
    witness: Any = None
    samples: int = 0
    inconclusive: int = 0
    anchor: str = ""
    detail: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.status:
            self.status = PASS if self.passed else FAIL

    def to_dict(self) -> dict:
        out = {
            "name": self.name,
            "status": self.status,
            "max_residual": float(self.max_residual),
            "witness": _jsonable(self.witness),
            "samples": self.samples,
            "inconclusive": self.inconclusive,
            "anchor": self.anchor,
        }
        if self.detail:
            out["detail"] = _jsonable(self.detail)
        return out


def _jsonable(obj):
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, float):
        return float(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if hasattr(obj, "tolist"):
        return obj.tolist()
    if hasattr(obj, "numerator"):
        return str(obj)
    return repr(obj)
