"""Real functions on [0, inf): shape classes, divided differences, Bernstein
approximation and composition rules.

Shape properties are certified numerically on grids. An audit can only
falsify a property, never prove it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, fields
from functools import lru_cache
from typing import Callable

import numpy as np

from . import kernels
from .errors import (
    AuditMismatch,
    DegenerateInterval,
    DomainExceeded,
    DuplicateNodes,
    SlopeTooSmall,
    UnknownFunction,
)

DEFAULT_DOMAIN = (0.0, 100.0)
MIN_GAP = 1e-10  # relative to the node span
_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class ShapeFlags:
    nonnegative: bool = False
    nondecreasing: bool = False
    convex: bool = False
    concave: bool = False
    three_convex: bool = False
    three_concave: bool = False
    vanishes_at_zero: bool = False

    @classmethod
    def of(cls, *names: str) -> "ShapeFlags":
        return cls(**{n: True for n in names})

    def names(self) -> set[str]:
        return {f.name for f in fields(self) if getattr(self, f.name)}

    def covers(self, other: "ShapeFlags") -> bool:
        """True when every flag set in ``other`` is also set here."""
        return other.names() <= self.names()

    def to_dict(self) -> dict[str, bool]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


@dataclass(frozen=True, eq=False)
class ScalarFunction:
    """A catalogued real function with declared shape properties.

    ``eval`` must be vectorised over numpy arrays. ``id`` is the cache key for
    audits, so two functions with the same id must agree.
    """

    id: str
    eval: Callable[[np.ndarray], np.ndarray]
    declared: ShapeFlags = field(default_factory=ShapeFlags)
    params: tuple[tuple[str, float], ...] = ()
    domain: tuple[float, float] = DEFAULT_DOMAIN
    derivative: Callable[[np.ndarray], np.ndarray] | None = None
    completely_monotone: bool = False

    def __call__(self, x):
        return self.eval(x)

    def scalar(self, x: float) -> float:
        return float(self.eval(np.float64(x)))

    def __repr__(self) -> str:
        return f"ScalarFunction({self.id!r})"


# --------------------------------------------------------------------------
# catalogue


def _flags_for_power(alpha: float) -> ShapeFlags:
    # sign pattern of alpha, alpha(alpha-1), alpha(alpha-1)(alpha-2) on (0, inf)
    return ShapeFlags(
        nonnegative=True,
        nondecreasing=True,
        convex=alpha >= 1,
        concave=alpha <= 1,
        three_convex=alpha <= 1 or alpha >= 2,
        three_concave=1 <= alpha <= 2,
        vanishes_at_zero=True,
    )


def _power(alpha: float) -> ScalarFunction:
    if not alpha > 0:
        raise UnknownFunction(f"pow exponent must be positive, got {alpha}")
    if alpha == 1:
        ev = lambda x: np.asarray(x, dtype=float) * 1.0  # noqa: E731
        der = lambda x: np.ones_like(np.asarray(x, dtype=float))  # noqa: E731
    else:
        ev = lambda x: np.power(np.asarray(x, dtype=float), alpha)  # noqa: E731
        der = lambda x: alpha * np.power(np.asarray(x, dtype=float), alpha - 1)  # noqa: E731
    return ScalarFunction(
        f"pow:{_fmt(alpha)}", ev, _flags_for_power(alpha), (("alpha", alpha),),
        derivative=der,
    )


def _pow_shift(alpha: float) -> ScalarFunction:
    if not alpha > 0:
        raise UnknownFunction(f"pow_shift exponent must be positive, got {alpha}")
    return ScalarFunction(
        f"pow_shift:{_fmt(alpha)}",
        lambda x: np.expm1(alpha * np.log1p(np.asarray(x, dtype=float))),
        _flags_for_power(alpha),
        (("alpha", alpha),),
        derivative=lambda x: alpha * np.power(1.0 + np.asarray(x, dtype=float), alpha - 1),
    )


def _sqshift(alpha: float) -> ScalarFunction:
    if not alpha > 0:
        raise UnknownFunction(f"sqshift parameter must be positive, got {alpha}")
    return ScalarFunction(
        f"sqshift:{_fmt(alpha)}",
        lambda x: alpha * np.square(x) / (np.sqrt(1.0 + alpha * np.square(x)) + 1.0),
        ShapeFlags.of("nonnegative", "nondecreasing", "convex", "three_concave",
                      "vanishes_at_zero"),
        (("alpha", alpha),),
        derivative=lambda x: alpha * np.asarray(x) / np.sqrt(1.0 + alpha * np.square(x)),
    )


def _xfrac(r: float) -> ScalarFunction:
    if not r > 0:
        raise UnknownFunction(f"xfrac parameter must be positive, got {r}")
    return ScalarFunction(
        f"xfrac:{_fmt(r)}",
        lambda x: np.asarray(x, dtype=float) / (np.asarray(x, dtype=float) + r),
        ShapeFlags.of("nonnegative", "nondecreasing", "concave", "three_convex",
                      "vanishes_at_zero"),
        (("r", r),),
        derivative=lambda x: r / np.square(np.asarray(x, dtype=float) + r),
    )


def _one_minus_exp(t: float) -> ScalarFunction:
    if not t > 0:
        raise UnknownFunction(f"one_minus_exp parameter must be positive, got {t}")
    return ScalarFunction(
        f"one_minus_exp:{_fmt(t)}",
        lambda x: -np.expm1(-t * np.asarray(x, dtype=float)),
        ShapeFlags.of("nonnegative", "nondecreasing", "concave", "three_convex",
                      "vanishes_at_zero"),
        (("t", t),),
        derivative=lambda x: t * np.exp(-t * np.asarray(x, dtype=float)),
    )


def _logcosh(x):
    # cosh x - 1 = 2 sinh^2(x/2) avoids cancellation near 0
    x = np.abs(np.asarray(x, dtype=float))
    small = np.minimum(x, 20.0)
    return np.where(
        x < 20.0,
        np.log1p(2.0 * np.square(np.sinh(small / 2.0))),
        x + np.log1p(np.exp(-2.0 * x)) - math.log(2.0),
    )


def _neg_xlogx(x):
    x = np.asarray(x, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(x > 0, -x * np.log(np.where(x > 0, x, 1.0)), 0.0)


def _log1p_over_x(x):
    x = np.asarray(x, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        small = np.abs(x) < 1e-8
        safe = np.where(small, 1.0, x)
        return np.where(small, 1.0 - x / 2.0, np.log1p(safe) / safe)


_F = ShapeFlags.of
_FIXED: dict[str, ScalarFunction] = {
    f.id: f
    for f in [
        ScalarFunction("sqrt", np.sqrt,
                       _F("nonnegative", "nondecreasing", "concave", "three_convex",
                          "vanishes_at_zero"),
                       derivative=lambda x: 0.5 / np.sqrt(x)),
        ScalarFunction("log1p", np.log1p,
                       _F("nonnegative", "nondecreasing", "concave", "three_convex",
                          "vanishes_at_zero"),
                       derivative=lambda x: 1.0 / (1.0 + np.asarray(x))),
        ScalarFunction("xlog1p", lambda x: np.asarray(x) * np.log1p(x),
                       _F("nonnegative", "nondecreasing", "convex", "three_concave",
                          "vanishes_at_zero"),
                       derivative=lambda x: np.log1p(x) + np.asarray(x) / (1.0 + np.asarray(x))),
        ScalarFunction("logcosh", _logcosh,
                       _F("nonnegative", "nondecreasing", "convex", "three_concave",
                          "vanishes_at_zero"),
                       derivative=np.tanh),
        ScalarFunction("exp_neg", lambda x: np.exp(-np.asarray(x, dtype=float)),
                       _F("nonnegative", "convex", "three_concave"),
                       derivative=lambda x: -np.exp(-np.asarray(x, dtype=float)),
                       completely_monotone=True),
        ScalarFunction("inv1p", lambda x: 1.0 / (1.0 + np.asarray(x, dtype=float)),
                       _F("nonnegative", "convex", "three_concave"),
                       derivative=lambda x: -1.0 / np.square(1.0 + np.asarray(x, dtype=float)),
                       completely_monotone=True),
        ScalarFunction("log1p_over_x", _log1p_over_x,
                       _F("nonnegative", "convex", "three_concave"),
                       completely_monotone=True),
        ScalarFunction("neg_xlogx", _neg_xlogx,
                       _F("concave", "three_convex", "vanishes_at_zero")),
        ScalarFunction("neg_xlog1p", lambda x: -np.asarray(x) * np.log1p(x),
                       _F("concave", "three_convex", "vanishes_at_zero")),
        ScalarFunction("neg_logcosh", lambda x: -_logcosh(x),
                       _F("concave", "three_convex", "vanishes_at_zero")),
        # exponential growth: keep the window small enough for float64 audits
        ScalarFunction("exp", lambda x: np.exp(np.asarray(x, dtype=float)),
                       _F("nonnegative", "nondecreasing", "convex", "three_convex"),
                       domain=(0.0, 10.0), derivative=np.exp),
        ScalarFunction("expm1", np.expm1,
                       _F("nonnegative", "nondecreasing", "convex", "three_convex",
                          "vanishes_at_zero"),
                       domain=(0.0, 10.0), derivative=np.exp),
        ScalarFunction("expm1_minus_x", lambda x: np.expm1(x) - np.asarray(x),
                       _F("nonnegative", "nondecreasing", "convex", "three_convex",
                          "vanishes_at_zero"),
                       domain=(0.0, 10.0), derivative=np.expm1),
        ScalarFunction("sinh", np.sinh,
                       _F("nonnegative", "nondecreasing", "convex", "three_convex",
                          "vanishes_at_zero"),
                       domain=(0.0, 10.0), derivative=np.cosh),
        ScalarFunction("cosh", np.cosh,
                       _F("nonnegative", "nondecreasing", "convex", "three_convex"),
                       domain=(0.0, 10.0), derivative=np.sinh),
        ScalarFunction("abs_half", lambda x: np.abs(np.asarray(x, dtype=float) - 0.5),
                       _F("nonnegative", "convex"), domain=(0.0, 1.0)),
    ]
}

_PARAMETRIC: dict[str, Callable[[float], ScalarFunction]] = {
    "pow": _power,
    "pow_shift": _pow_shift,
    "sqshift": _sqshift,
    "xfrac": _xfrac,
    "one_minus_exp": _one_minus_exp,
}

_PARAM_DEFAULTS = {"pow_shift": 1.5, "sqshift": 1.0, "xfrac": 1.0, "one_minus_exp": 1.0}


def _fmt(v: float) -> str:
    v = float(v)
    return str(int(v)) if v.is_integer() else repr(v)


def catalog_ids() -> list[str]:
    """Catalogue identifiers; parametric ones are shown with their parameter slot."""
    return sorted(_FIXED) + [f"{k}:<value>" for k in sorted(_PARAMETRIC)]


@lru_cache(maxsize=None)
def get(fid: str) -> ScalarFunction:
    """Look up a catalogue function by id, e.g. ``"log1p"`` or ``"pow:1.5"``."""
    if fid in _FIXED:
        return _FIXED[fid]
    name, _, arg = fid.partition(":")
    if name in _PARAMETRIC:
        if not arg:
            if name not in _PARAM_DEFAULTS:
                raise UnknownFunction(f"{name} needs a parameter, e.g. {name}:1.5")
            arg = str(_PARAM_DEFAULTS[name])
        try:
            value = float(arg)
        except ValueError:
            raise UnknownFunction(f"bad parameter in function id {fid!r}") from None
        return _PARAMETRIC[name](value)
    raise UnknownFunction(f"unknown function id {fid!r}")


def as_function(f) -> ScalarFunction:
    if isinstance(f, ScalarFunction):
        return f
    if isinstance(f, str):
        return get(f)
    if callable(f):
        # ids key the audit cache, so anonymous callables get a unique one
        return ScalarFunction(f"{getattr(f, '__name__', 'callable')}#{id(f):x}", f)
    raise TypeError(f"cannot interpret {f!r} as a scalar function")


# --------------------------------------------------------------------------
# divided differences


@dataclass(frozen=True)
class DividedDifferenceTable:
    nodes: np.ndarray
    values: np.ndarray
    table: tuple[np.ndarray, ...]  # table[k][i] = [x_i, ..., x_{i+k}; f]

    @property
    def order(self) -> int:
        return len(self.nodes) - 1

    def top(self) -> float:
        return float(self.table[-1][0])


def _checked_nodes(nodes) -> np.ndarray:
    x = np.asarray(nodes, dtype=float).reshape(-1)
    if x.size == 0:
        raise ValueError("at least one node is required")
    if not np.all(np.isfinite(x)):
        raise ValueError("nodes must be finite")
    if x.size > 1:
        s = np.sort(x)
        span = s[-1] - s[0]
        if span == 0 or np.min(np.diff(s)) <= MIN_GAP * span:
            raise DuplicateNodes(f"nodes closer than {MIN_GAP:g} x span: {x.tolist()}")
    return x


def _values(f, x: np.ndarray) -> np.ndarray:
    if isinstance(f, str):
        f = get(f)
    return np.asarray(f(x), dtype=float).reshape(x.shape)


def divided_difference(nodes, f) -> float:
    """Top-order divided difference [x_0, ..., x_n; f] by the Newton recursion."""
    x = np.sort(_checked_nodes(nodes))
    return kernels.divided_difference(x, _values(f, x))


def divided_difference_symmetric(nodes, f) -> float:
    """Same quantity via sum_j f(x_j) / prod_{k != j} (x_j - x_k); cross-check only."""
    x = _checked_nodes(nodes)
    y = _values(f, x)
    total = 0.0
    for j in range(x.size):
        d = np.prod(np.delete(x[j] - x, j))
        total += y[j] / d
    return float(total)


def divided_difference_table(nodes, f) -> DividedDifferenceTable:
    x = np.sort(_checked_nodes(nodes))
    y = _values(f, x)
    cols = [y.copy()]
    for k in range(1, x.size):
        prev = cols[-1]
        cols.append((prev[1:] - prev[:-1]) / (x[k:] - x[:-k]))
    return DividedDifferenceTable(x, y, tuple(cols))


def _domain(f) -> tuple[float, float]:
    if isinstance(f, str):
        f = get(f)
    return getattr(f, "domain", DEFAULT_DOMAIN)


def iterated_difference(f, x: float, h: float, n: int) -> float:
    """(Delta_h)^n f(x) = sum_k (-1)^(n-k) C(n,k) f(x + k h)."""
    if h <= 0:
        raise ValueError("step h must be positive")
    if n < 0:
        raise ValueError("order must be nonnegative")
    lo, hi = _domain(f)
    if x < lo or x + n * h > hi:
        raise DomainExceeded(f"[{x}, {x + n * h}] leaves the domain [{lo}, {hi}]")
    pts = x + h * np.arange(n + 1)
    vals = _values(f, pts)
    coef = np.array([(-1) ** (n - k) * math.comb(n, k) for k in range(n + 1)], dtype=float)
    return float(np.dot(coef, vals))


# --------------------------------------------------------------------------
# grid audits


@dataclass(frozen=True)
class AuditGrid:
    """Sampling plan for shape audits."""

    points: int = 200
    quad_draws: int = 400
    tol: float = 1e-8
    start: float = 1e-6  # first positive node of the geometric half of the grid
    seed: int = 0
    roundoff: float = 64.0  # multiples of eps * |terms| tolerated on each divided difference

    def __post_init__(self):
        if self.points < 50:
            raise ValueError("audit grid needs at least 50 points")
        if self.quad_draws < 200:
            raise ValueError("audit grid needs at least 200 random node draws")


DEFAULT_GRID = AuditGrid()


def audit_nodes(interval: tuple[float, float], grid: AuditGrid) -> np.ndarray:
    lo, hi = map(float, interval)
    if not hi > lo:
        raise DegenerateInterval(f"empty interval [{lo}, {hi}]")
    half = grid.points // 2
    parts = [np.linspace(lo, hi, grid.points - half)]
    first = max(lo, grid.start) if lo <= 0 else lo
    if first < hi:
        parts.append(np.geomspace(first, hi, half) if first > 0 else np.linspace(lo, hi, half))
    xs = np.unique(np.concatenate(parts))
    # drop nodes that would trip the min-gap guard
    keep = np.concatenate([[True], np.diff(xs) > 4 * MIN_GAP * (hi - lo)])
    return xs[keep]


def _node_sets(n_nodes: int, k: int, grid: AuditGrid, rng) -> np.ndarray:
    sets = []
    for stride in (1, 2, 5, 17):
        span = stride * k
        if span < n_nodes:
            start = np.arange(n_nodes - span)
            sets.append(start[:, None] + stride * np.arange(k + 1)[None, :])
    draws = np.sort(
        np.array([rng.choice(n_nodes, size=k + 1, replace=False) for _ in range(grid.quad_draws)]),
        axis=1,
    )
    sets.append(draws)
    return np.concatenate(sets)


def _signs(xs, ys, k, grid, rng) -> tuple[bool, bool]:
    """(all order-k divided differences >= -tol, all <= +tol), with roundoff slack."""
    idx = _node_sets(xs.size, k, grid, rng)
    X, Y = xs[idx], ys[idx]
    dd = kernels.divided_differences_batch(X, Y)
    slack = grid.tol + grid.roundoff * _EPS * kernels.dd_magnitude_batch(X, Y)
    return bool(np.all(dd >= -slack)), bool(np.all(dd <= slack))


def audit_shape(f, grid: AuditGrid = DEFAULT_GRID, interval=None) -> ShapeFlags:
    """Measure the shape flags of ``f`` on a grid; declared flags are ignored."""
    f = as_function(f)
    interval = tuple(interval) if interval is not None else f.domain
    return _audit_cached(f, grid, interval)


_AUDIT_CACHE: dict = {}


def _audit_cached(f: ScalarFunction, grid: AuditGrid, interval) -> ShapeFlags:
    key = (f.id, grid, interval)
    flags = _AUDIT_CACHE.get(key)
    if flags is None:
        flags = _AUDIT_CACHE[key] = _audit(f, grid, interval)
    return flags


def _audit(f: ScalarFunction, grid: AuditGrid, interval) -> ShapeFlags:
    xs = audit_nodes(interval, grid)
    ys = _values(f, xs)
    if not np.all(np.isfinite(ys)):
        raise ValueError(f"{f.id} is not finite on {interval}")
    rng = np.random.default_rng(grid.seed)
    up1, down1 = _signs(xs, ys, 1, grid, rng)
    up2, down2 = _signs(xs, ys, 2, grid, rng)
    up3, down3 = _signs(xs, ys, 3, grid, rng)
    return ShapeFlags(
        nonnegative=bool(np.all(ys >= -grid.tol)),
        nondecreasing=up1,
        convex=up2,
        concave=down2,
        three_convex=up3,
        three_concave=down3,
        vanishes_at_zero=bool(interval[0] == 0 and abs(ys[0]) <= grid.tol),
    )


def verify_declared(f, grid: AuditGrid = DEFAULT_GRID) -> ShapeFlags:
    """Audit ``f`` and raise AuditMismatch when a declared flag is not observed."""
    f = as_function(f)
    measured = audit_shape(f, grid)
    missing = f.declared.names() - measured.names()
    if missing:
        raise AuditMismatch(f"{f.id}: declared but not observed: {sorted(missing)}")
    return measured


def is_in_S0(f, grid: AuditGrid = DEFAULT_GRID) -> bool:
    """Nondecreasing, convex, 3-concave and vanishing at the origin (per audit)."""
    m = audit_shape(f, grid)
    return m.nondecreasing and m.convex and m.three_concave and m.vanishes_at_zero


# --------------------------------------------------------------------------
# Bernstein approximation


@dataclass(frozen=True)
class BernsteinApproximant:
    degree: int
    samples: np.ndarray  # f(a + (b - a) i/n), i = 0..n
    interval: tuple[float, float]

    def __call__(self, x):
        a, b = self.interval
        x = np.asarray(x, dtype=float)
        t = (x - a) / (b - a)
        out = kernels.bernstein_eval(self.samples, t.reshape(-1))
        return out.reshape(x.shape) if x.ndim else float(out[0])

    def as_function(self, fid: str | None = None) -> ScalarFunction:
        return ScalarFunction(fid or f"bernstein{self.degree}", self.__call__,
                              domain=self.interval)


def bernstein(f, n: int, interval=(0.0, 1.0)) -> BernsteinApproximant:
    if n < 1:
        raise ValueError("Bernstein degree must be at least 1")
    a, b = map(float, interval)
    if b - a < 1e-12:
        raise DegenerateInterval(f"interval [{a}, {b}] is degenerate")
    nodes = a + (b - a) * np.arange(n + 1) / n
    samples = _values(f, nodes)
    if not np.all(np.isfinite(samples)):
        raise ValueError("f must be finite on the interval")
    return BernsteinApproximant(n, samples, (a, b))


# --------------------------------------------------------------------------
# composition rules


def _derivative_at_zero(f: ScalarFunction) -> float:
    if f.derivative is not None:
        d = float(f.derivative(np.float64(0.0)))
        if np.isfinite(d):
            return d
    h = 1e-7
    return (f.scalar(h) - f.scalar(0.0)) / h


def compose_power(f, alpha: float) -> ScalarFunction:
    """g(x) = f(x**alpha).

    Declared flags of g follow two composition rules for alpha in (0, 1/2]:
    a nondecreasing 3-concave f gives a nondecreasing concave g, and a
    convex 3-convex f with f'(0) <= 0 gives a convex g. Otherwise g carries
    no declared flags and must be audited.
    """
    f = as_function(f)
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    d = f.declared
    flags = set()
    if alpha <= 0.5:
        if d.nondecreasing and d.three_concave:
            flags |= {"nondecreasing", "concave"}
        if d.convex and d.three_convex and _derivative_at_zero(f) <= 0:
            flags.add("convex")
    lo, hi = f.domain
    dom = (lo ** (1.0 / alpha), hi ** (1.0 / alpha))
    if d.nonnegative:
        flags.add("nonnegative")
    if d.vanishes_at_zero and lo == 0:
        flags.add("vanishes_at_zero")
    base = f.eval
    return ScalarFunction(
        f"{f.id}@pow:{_fmt(alpha)}",
        lambda x: base(np.power(np.asarray(x, dtype=float), alpha)),
        ShapeFlags.of(*flags),
        (("alpha", alpha),),
        domain=dom,
    )


def raise_to_power(f, alpha: float) -> ScalarFunction:
    """h(x) = f(x)**alpha; keeps {nonnegative, nondecreasing, concave, 3-convex}
    when alpha is in (0, 1] and f has all four."""
    f = as_function(f)
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    keep = {"nonnegative", "nondecreasing", "concave", "three_convex"}
    flags = keep if (alpha <= 1 and keep <= f.declared.names()) else set()
    if f.declared.vanishes_at_zero:
        flags = flags | {"vanishes_at_zero"}
    base = f.eval
    return ScalarFunction(
        f"({f.id})^{_fmt(alpha)}",
        lambda x: np.power(np.maximum(base(x), 0.0), alpha),
        ShapeFlags.of(*flags),
        (("alpha", alpha),),
        domain=f.domain,
    )


def completely_monotone_shift(f, A: float, slope: float, grid_points: int = 2001) -> ScalarFunction:
    """f(x) + slope * x on [0, A] for a completely monotone f.

    The slope must compensate the most negative derivative of f on [0, A].
    """
    f = as_function(f)
    if not f.completely_monotone:
        raise ValueError(f"{f.id} is not catalogued as completely monotone")
    if not A > 0:
        raise DegenerateInterval("right endpoint must be positive")
    xs = np.linspace(0.0, A, grid_points)
    if f.derivative is not None:
        d = np.asarray(f.derivative(xs), dtype=float)
    else:
        d = np.gradient(_values(f, xs), xs, edge_order=2)
    bound = -float(np.min(d))
    if slope < bound - 1e-12 * max(1.0, abs(bound)):
        raise SlopeTooSmall(f"slope {slope} below required {bound}")
    base = f.eval
    der = f.derivative
    return ScalarFunction(
        f"{f.id}+{_fmt(slope)}x",
        lambda x: base(x) + slope * np.asarray(x, dtype=float),
        ShapeFlags.of("nonnegative", "nondecreasing", "convex", "three_concave"),
        (("A", float(A)), ("slope", float(slope))),
        domain=(0.0, float(A)),
        derivative=(lambda x: der(x) + slope) if der is not None else None,
    )
