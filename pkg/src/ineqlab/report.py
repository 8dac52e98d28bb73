"""InequalityReport: one evaluation of one inequality on concrete operands."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

REL_TOL = 1e-9


def default_tolerance(lhs: float, rhs: float, rel: float = REL_TOL) -> float:
    return rel * (1.0 + max(abs(lhs), abs(rhs)))


def to_jsonable(obj):
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, float) and not np.isfinite(obj):
        return None if np.isnan(obj) else ("inf" if obj > 0 else "-inf")
    return obj


@dataclass
class InequalityReport:
    """``margin >= -tolerance`` exactly when the inequality holds on ``inputs``.

    ``lhs`` and ``rhs`` are the displayed left and right sides; ``relation``
    says which way the inequality points. A report whose hypothesis audit has
    a failing entry is inconclusive and never claims ``holds``.
    """

    check_id: str
    lhs: float
    rhs: float
    margin: float
    tolerance: float
    relation: str = "<="
    inputs: dict = field(default_factory=dict)
    hypothesis_audit: list = field(default_factory=list)
    details: dict = field(default_factory=dict)
    seed: int | None = None

    @property
    def inconclusive(self) -> bool:
        return not all(ok for _, ok in self.hypothesis_audit)

    @property
    def holds(self) -> bool:
        return not self.inconclusive and self.margin >= -self.tolerance

    @property
    def violated(self) -> bool:
        return not self.inconclusive and self.margin < -self.tolerance

    def to_dict(self) -> dict:
        return to_jsonable({
            "check_id": self.check_id,
            "lhs": float(self.lhs),
            "rhs": float(self.rhs),
            "relation": self.relation,
            "margin": float(self.margin),
            "tolerance": float(self.tolerance),
            "holds": self.holds,
            "inconclusive": self.inconclusive,
            "hypothesis_audit": [[c, bool(ok)] for c, ok in self.hypothesis_audit],
            "details": self.details,
            "inputs": self.inputs,
            "seed": self.seed,
        })


def make_report(check_id, lhs, rhs, relation="<=", *, inputs=None, audit=None,
                details=None, margin=None, tol=None, rel_tol=REL_TOL) -> InequalityReport:
    lhs = float(lhs)
    rhs = float(rhs)
    if margin is None:
        margin = rhs - lhs if relation == "<=" else lhs - rhs
    if tol is None:
        tol = default_tolerance(lhs, rhs, rel_tol)
    return InequalityReport(
        check_id, lhs, rhs, float(margin), float(tol), relation,
        inputs or {}, list(audit or []), details or {},
    )
