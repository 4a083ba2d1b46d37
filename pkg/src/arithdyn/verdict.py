"""PASS/FAIL/INDETERMINATE verdicts shared by the checking modules."""

from __future__ import annotations

from dataclasses import dataclass, field

PASS = "PASS"
FAIL = "FAIL"
INDETERMINATE = "INDETERMINATE"

_ORDER = {FAIL: 2, INDETERMINATE: 1, PASS: 0}


@dataclass(frozen=True)
class Verdict:
    """Outcome of one named check; witness carries the offending data."""

    name: str
    status: str
    witness: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_json(self) -> dict:
        return {"name": self.name, "status": self.status,
                "witness": self.witness}


def combine(verdicts, name="overall") -> Verdict:
    """FAIL dominates INDETERMINATE dominates PASS."""
    vs = list(verdicts)
    worst = PASS
    for v in vs:
        if _ORDER[v.status] > _ORDER[worst]:
            worst = v.status
    return Verdict(name, worst, {"checked": len(vs)})


def round15(x: float) -> float:
    """Canonical 15-significant-digit float for serialized artifacts."""
    return float(f"{x:.15g}")


def round_floats(obj):
    """Apply :func:`round15` to every float nested in JSON-style data."""
    if isinstance(obj, bool):
        return obj
    if isinstance(obj, float):
        return round15(obj)
    if isinstance(obj, dict):
        return {k: round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [round_floats(v) for v in obj]
    return obj
