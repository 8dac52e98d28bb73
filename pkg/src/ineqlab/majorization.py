"""Majorization predicates (Hardy-Littlewood-Polya, Tomic-Weyl) and the
truncated variants that compare strings of different lengths.

The max over k-subsets with distinct indices equals the sum of the k largest
entries, so every predicate works on descending partial sums.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import LengthMismatch, PreconditionFailed, SizeOrder, TooLarge
from .report import InequalityReport, make_report
from .scalar_functions import DEFAULT_GRID, as_function, audit_shape

REL = 1e-12
FLOOR = 1e-300


class Str:
    """A finite string of nonnegative reals with a cached descending copy."""

    __slots__ = ("values", "_desc")

    def __init__(self, values):
        v = np.asarray(values, dtype=float).reshape(-1)
        if v.size == 0:
            raise ValueError("empty string")
        if not np.all(np.isfinite(v)) or np.any(v < 0):
            raise ValueError(f"entries must be finite and nonnegative: {v.tolist()}")
        self.values = v
        self._desc = None

    @property
    def sorted_desc(self) -> np.ndarray:
        if self._desc is None:
            self._desc = np.sort(self.values)[::-1]
        return self._desc

    def __len__(self):
        return self.values.size

    def __repr__(self):
        return f"Str({self.values.tolist()})"


def as_str(x) -> Str:
    return x if isinstance(x, Str) else Str(x)


def _le(a: float, b: float) -> bool:
    return a <= b + REL * max(abs(a), abs(b), FLOOR)


def _eq(a: float, b: float) -> bool:
    return abs(a - b) <= REL * max(abs(a), abs(b), FLOOR)


@dataclass
class MajorizationVerdict:
    kind: str
    holds: bool
    ledger: list = field(default_factory=list)  # (k, top-k sum of x, top-k sum of y)
    total_x: float = 0.0
    total_y: float = 0.0

    def __bool__(self):
        return self.holds

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "holds": self.holds,
            "ledger": [[k, float(a), float(b)] for k, a, b in self.ledger],
            "total_x": float(self.total_x),
            "total_y": float(self.total_y),
        }


def top_k_sums(x) -> np.ndarray:
    """Entry k-1 is the largest sum of k entries with distinct indices."""
    return np.cumsum(as_str(x).sorted_desc)


def max_subset_sum(values, k: int) -> float:
    """Brute-force max over k-subsets with distinct indices (oracle, small n)."""
    v = list(np.asarray(values, dtype=float))
    return max(sum(c) for c in itertools.combinations(v, k))


def _ledger(x: Str, y: Str, kmax: int) -> list:
    sx, sy = np.cumsum(x.sorted_desc), np.cumsum(y.sorted_desc)
    return [(k, float(sx[k - 1]), float(sy[k - 1])) for k in range(1, kmax + 1)]


def _verdict(kind, x, y, kmax, total_ok):
    ledger = _ledger(x, y, kmax)
    tx, ty = float(np.sum(x.sorted_desc)), float(np.sum(y.sorted_desc))
    holds = all(_le(a, b) for _, a, b in ledger) and total_ok(tx, ty)
    return MajorizationVerdict(kind, holds, ledger, tx, ty)


def hlp_majorizes(x, y) -> MajorizationVerdict:
    """x is majorized by y: descending partial sums of x stay below y's, equal totals."""
    x, y = as_str(x), as_str(y)
    if len(x) != len(y):
        raise LengthMismatch(f"lengths differ: {len(x)} vs {len(y)}")
    return _verdict("hlp", x, y, len(x) - 1, _eq)


def weak_majorizes(x, y) -> MajorizationVerdict:
    x, y = as_str(x), as_str(y)
    if len(x) != len(y):
        raise LengthMismatch(f"lengths differ: {len(x)} vs {len(y)}")
    return _verdict("weak", x, y, len(x) - 1, _le)


def _sizes(x: Str, y: Str):
    n, m = len(x), len(y)
    if m < 2 or m > n:
        raise SizeOrder(f"need 2 <= m <= n, got n={n}, m={m}")
    return n, m


def truncated_convex_applicable(x, y) -> MajorizationVerdict:
    """Top-k sums of x below those of y for k < m, and sum(x) <= sum(y)."""
    x, y = as_str(x), as_str(y)
    _, m = _sizes(x, y)
    return _verdict("truncated_convex", x, y, m - 1, _le)


def truncated_concave_applicable(x, y) -> MajorizationVerdict:
    """Top-k sums of x below those of y for k < m, and sum(x) >= sum(y)."""
    x, y = as_str(x), as_str(y)
    _, m = _sizes(x, y)
    return _verdict("truncated_concave", x, y, m - 1, lambda a, b: _le(b, a))


def _shape_audit(f, *flags):
    measured = audit_shape(f, DEFAULT_GRID)
    return [(f"{f.id} {name}", getattr(measured, name)) for name in flags]


def _sum_f(f, v) -> float:
    return float(np.sum(f(v)))


def truncated_convex_inequality(f, x, y) -> InequalityReport:
    """sum f(x_i) <= sum f(y_j) + (n - m) f(0) for nondecreasing convex f."""
    f = as_function(f)
    x, y = as_str(x), as_str(y)
    verdict = truncated_convex_applicable(x, y)
    if not verdict.holds:
        raise PreconditionFailed(f"truncated convex conditions fail: {verdict.to_dict()}")
    n, m = len(x), len(y)
    lhs = _sum_f(f, x.values)
    rhs = _sum_f(f, y.values) + (n - m) * f.scalar(0.0)
    return make_report(
        "truncated_convex", lhs, rhs, "<=",
        inputs={"x": x.values, "y": y.values, "f": f.id},
        audit=_shape_audit(f, "nondecreasing", "convex"),
        details={"verdict": verdict.to_dict()},
    )


def truncated_concave_inequality(f, x, y) -> InequalityReport:
    """sum f(x_i) >= sum f(y_j) + (n - m) f(0) for nondecreasing concave f."""
    f = as_function(f)
    x, y = as_str(x), as_str(y)
    verdict = truncated_concave_applicable(x, y)
    if not verdict.holds:
        raise PreconditionFailed(f"truncated concave conditions fail: {verdict.to_dict()}")
    n, m = len(x), len(y)
    lhs = _sum_f(f, x.values)
    rhs = _sum_f(f, y.values) + (n - m) * f.scalar(0.0)
    return make_report(
        "truncated_concave", lhs, rhs, ">=",
        inputs={"x": x.values, "y": y.values, "f": f.id},
        audit=_shape_audit(f, "nondecreasing", "concave"),
        details={"verdict": verdict.to_dict()},
    )


def enflo_check(r, p: float, q: float) -> InequalityReport:
    """r1^p + ... + r4^p <= r5^p + r6^p when the q-power sums agree and p >= q."""
    r = np.asarray(r, dtype=float).reshape(-1)
    if r.size != 6 or np.any(r <= 0):
        raise PreconditionFailed("need six positive reals")
    if not p >= q > 0:
        raise PreconditionFailed(f"need p >= q > 0, got p={p}, q={q}")
    small, big = r[:4], r[4:]
    if not _le(small.max(), big.max()):
        raise PreconditionFailed("max(r1..r4) exceeds max(r5, r6)")
    sq, bq = np.sum(small**q), np.sum(big**q)
    if abs(sq - bq) > 1e-9 * max(sq, bq):
        raise PreconditionFailed(f"q-power sums differ: {sq} vs {bq}")
    return make_report("enflo", np.sum(small**p), np.sum(big**p), "<=",
                       inputs={"r": r, "p": p, "q": q})


def brute_force_oracle(f, x, y, kind: str = "convex") -> InequalityReport:
    """Independent path: subset enumeration for the conditions and direct sums
    over y padded with zeros to length n."""
    f = as_function(f)
    xv = np.asarray(x, dtype=float).reshape(-1)
    yv = np.asarray(y, dtype=float).reshape(-1)
    n, m = xv.size, yv.size
    if n > 8:
        raise TooLarge(f"oracle limited to n <= 8, got {n}")
    if m < 2 or m > n:
        raise SizeOrder(f"need 2 <= m <= n, got n={n}, m={m}")
    pad = np.concatenate([yv, np.zeros(n - m)])
    conds = [
        (f"max {k}-subset sum", max_subset_sum(xv, k) <= max_subset_sum(yv, k) * (1 + REL) + FLOOR)
        for k in range(1, m)
    ]
    sx, sy = float(sum(xv)), float(sum(yv))
    if kind == "convex":
        conds.append(("sum x <= sum y", sx <= sy * (1 + REL) + FLOOR))
        relation = "<="
    elif kind == "concave":
        conds.append(("sum x >= sum y", sy <= sx * (1 + REL) + FLOOR))
        relation = ">="
    else:
        raise ValueError(f"kind must be 'convex' or 'concave', got {kind!r}")
    lhs = sum(f.scalar(v) for v in xv)
    rhs = sum(f.scalar(v) for v in pad)
    return make_report(f"oracle_{kind}", lhs, rhs, relation,
                       inputs={"x": xv, "y": yv, "f": f.id}, audit=conds)
