"""Finite-dimensional normed spaces and their geometric constants.

``LpSpace(p, n)`` is l^p on n coordinates (counting measure), a genuine L^p
space. ``SchattenSpace(p, m)`` holds real m x m matrices with the Schatten-p
norm. Euclidean space is ``LpSpace(2, n)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import BadSpace, NotPsd, NotSymmetric, OutOfRange, SvdFailure

INT_TOL = 1e-9


def _parse_p(text: str) -> float:
    if text.lower() in ("inf", "infinity", "oo"):
        return math.inf
    try:
        return float(text)
    except ValueError:
        raise BadSpace(f"bad exponent {text!r}") from None


def _check_p(p: float) -> float:
    p = float(p)
    if not (p >= 1 or math.isinf(p)):
        raise BadSpace(f"norm exponent must be >= 1, got {p}")
    return p


# --------------------------------------------------------------------------
# norms


def lp_norm(v, p: float) -> float:
    return kernels.lp_norm(v, p)


def singular_values(T) -> np.ndarray:
    try:
        return np.linalg.svd(np.asarray(T, dtype=float), compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise SvdFailure(str(exc)) from exc


def schatten_norm(T, p: float) -> float:
    """l^p norm of the singular-value vector of T."""
    s = singular_values(T)
    if not np.all(np.isfinite(s)):
        raise SvdFailure("non-finite singular values")
    return kernels.lp_norm(s, p)


# --------------------------------------------------------------------------
# operand generators

KINDS = ("uniform", "heavy", "sparse")


def sample_coords(rng: np.random.Generator, shape, kind: str = "uniform") -> np.ndarray:
    """Random coordinates: uniform on [-1, 1], heavy-tailed ratio of uniforms
    (capped at 20 in modulus) or sparse (about 80% zeros)."""
    if kind == "uniform":
        return rng.uniform(-1.0, 1.0, shape)
    if kind == "heavy":
        num = rng.uniform(-1.0, 1.0, shape)
        den = rng.uniform(0.05, 1.0, shape)
        return num / den
    if kind == "sparse":
        out = rng.uniform(-1.0, 1.0, shape)
        out[rng.random(shape) < 0.8] = 0.0
        return out
    raise ValueError(f"unknown sample kind {kind!r}")


class _Space:
    p: float
    shape: tuple

    def norm(self, v) -> float:
        raise NotImplementedError

    @property
    def spec(self) -> str:
        raise NotImplementedError

    @property
    def finite_p(self) -> bool:
        return not math.isinf(self.p)

    @property
    def is_inner_product(self) -> bool:
        return self.p == 2

    def check(self, v) -> np.ndarray:
        from .errors import DimensionMismatch

        v = np.asarray(v, dtype=float)
        if v.shape != self.shape:
            raise DimensionMismatch(f"operand shape {v.shape} does not match {self.shape}")
        return v

    def sample(self, rng, kind="uniform") -> np.ndarray:
        return sample_coords(rng, self.shape, kind)

    def cnj(self) -> float:
        return cnj_analytic(self.p)

    def n_constant(self) -> int:
        return n_constant(self.cnj())

    def __repr__(self):
        return f"<{self.spec}>"


@dataclass(frozen=True, repr=False)
class LpSpace(_Space):
    p: float
    dim: int

    def __post_init__(self):
        object.__setattr__(self, "p", _check_p(self.p))
        if int(self.dim) != self.dim or self.dim < 1:
            raise BadSpace(f"dimension must be a positive integer, got {self.dim}")

    @property
    def shape(self):
        return (self.dim,)

    def norm(self, v) -> float:
        return kernels.lp_norm(v, self.p)

    @property
    def spec(self) -> str:
        p = "inf" if math.isinf(self.p) else _num(self.p)
        return f"lp:{p}:{self.dim}"


@dataclass(frozen=True, repr=False)
class SchattenSpace(_Space):
    p: float
    m: int

    def __post_init__(self):
        object.__setattr__(self, "p", _check_p(self.p))
        if int(self.m) != self.m or self.m < 1:
            raise BadSpace(f"matrix size must be a positive integer, got {self.m}")

    @property
    def shape(self):
        return (self.m, self.m)

    def norm(self, T) -> float:
        return schatten_norm(T, self.p)

    @property
    def spec(self) -> str:
        p = "inf" if math.isinf(self.p) else _num(self.p)
        return f"schatten:{p}:{self.m}"


@dataclass(frozen=True, repr=False)
class PsdSpace(_Space):
    """Carrier for determinantal checks: PSD matrices of size 1..m."""

    m: int
    fixed: bool = False  # True: always m x m

    p = 2.0

    @property
    def shape(self):
        return (self.m, self.m)

    def norm(self, T) -> float:
        return schatten_norm(T, 2.0)

    @property
    def spec(self) -> str:
        return f"psd:{self.m}" + ("!" if self.fixed else "")


def euclid(dim: int) -> LpSpace:
    return LpSpace(2.0, dim)


def _num(v: float) -> str:
    return str(int(v)) if float(v).is_integer() else repr(float(v))


def parse_space(text: str):
    """Parse ``lp:p:dim``, ``schatten:p:m``, ``euclid:dim`` or ``psd:m``."""
    parts = text.strip().split(":")
    kind = parts[0].lower()
    try:
        if kind == "lp" and len(parts) == 3:
            return LpSpace(_parse_p(parts[1]), int(parts[2]))
        if kind == "schatten" and len(parts) == 3:
            return SchattenSpace(_parse_p(parts[1]), int(parts[2]))
        if kind == "euclid" and len(parts) == 2:
            return euclid(int(parts[1]))
        if kind == "psd" and len(parts) == 2:
            fixed = parts[1].endswith("!")
            return PsdSpace(int(parts[1].rstrip("!")), fixed)
    except ValueError as exc:
        raise BadSpace(f"bad space spec {text!r}: {exc}") from None
    raise BadSpace(f"bad space spec {text!r}; expected lp:p:dim, schatten:p:m, euclid:dim or psd:m")


# --------------------------------------------------------------------------
# constants


@dataclass(frozen=True)
class GeometricConstants:
    cnj: float
    n_of_x: int
    source: str  # "analytic" or "sampled"


def cnj_analytic(p: float) -> float:
    """von Neumann-Jordan constant of L^p (dimension >= 2): 2^(2/t - 1),
    t = min(p, p/(p-1)); 2 for p = 1 and p = inf."""
    p = float(p)
    if p == 1 or math.isinf(p):
        return 2.0
    if not p > 1:
        raise OutOfRange(f"p must be >= 1, got {p}")
    t = min(p, p / (p - 1.0))
    return 2.0 ** (2.0 / t - 1.0)


def _is_integer(v: float) -> bool:
    return abs(v - round(v)) <= INT_TOL


def n_constant(cnj: float) -> int:
    """2 C_NJ when that is an integer (within 1e-9), otherwise 4."""
    if not (1 - INT_TOL <= cnj <= 2 + INT_TOL):
        raise OutOfRange(f"C_NJ must lie in [1, 2], got {cnj}")
    two_c = 2.0 * cnj
    return int(round(two_c)) if _is_integer(two_c) else 4


def c_constant(p: float) -> float:
    """2^(p-1) when integral, else floor(2^(p-1) + 1)."""
    if p < 1:
        raise OutOfRange(f"p must be >= 1, got {p}")
    v = 2.0 ** (p - 1.0)
    return float(round(v)) if _is_integer(v) else float(math.floor(v + 1.0))


def c_tilde(p: float) -> float:
    """(p-1)/2 when integral, else floor((p-1)/2 + 1)."""
    if p < 2:
        raise OutOfRange(f"p must be >= 2, got {p}")
    v = (p - 1.0) / 2.0
    return float(round(v)) if _is_integer(v) else float(math.floor(v + 1.0))


def floor_two_p_minus_one(p: float) -> int:
    if not 1 < p <= 2:
        raise OutOfRange(f"p must lie in (1, 2], got {p}")
    return int(math.floor(2.0 * (p - 1.0)))


def geometric_constants(space) -> GeometricConstants:
    c = space.cnj()
    return GeometricConstants(c, n_constant(c), "analytic")


def _pair_batch(space, rng, count):
    kinds = rng.choice(len(KINDS), size=count, p=[0.4, 0.3, 0.3])
    U = np.empty((count,) + space.shape)
    V = np.empty((count,) + space.shape)
    for i, k in enumerate(kinds):
        U[i] = sample_coords(rng, space.shape, KINDS[k])
        V[i] = sample_coords(rng, space.shape, KINDS[k])
    return U, V


def cnj_search(space, trials: int, seed: int, inject=()):
    """Largest sampled ratio (|u+v|^2 + |u-v|^2) / (2|u|^2 + 2|v|^2) with its
    witness pair. A lower bound on C_NJ, never a convergence claim."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = np.random.default_rng(seed)
    U, V = _pair_batch(space, rng, trials)
    if inject:
        U = np.concatenate([U, np.array([np.asarray(u, float) for u, _ in inject])])
        V = np.concatenate([V, np.array([np.asarray(v, float) for _, v in inject])])
    if isinstance(space, LpSpace):
        ratios = kernels.cnj_ratios(U, V, space.p)
    else:
        ratios = np.array([_ratio(space, u, v) for u, v in zip(U, V)])
    ratios = np.where(np.isnan(ratios), -np.inf, ratios)
    i = int(np.argmax(ratios))
    return float(ratios[i]), U[i], V[i]


def _ratio(space, u, v) -> float:
    den = 2.0 * (space.norm(u) ** 2 + space.norm(v) ** 2)
    if den == 0:
        return math.nan
    return (space.norm(u + v) ** 2 + space.norm(u - v) ** 2) / den


def cnj_sampled(space, trials: int, seed: int = 0, inject=()) -> float:
    return cnj_search(space, trials, seed, inject)[0]


# --------------------------------------------------------------------------
# PSD matrices


def _symmetric(M, tol=1e-12) -> np.ndarray:
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise NotSymmetric(f"expected a square matrix, got shape {M.shape}")
    scale = max(1.0, float(np.max(np.abs(M)))) if M.size else 1.0
    if np.max(np.abs(M - M.T), initial=0.0) > tol * scale:
        raise NotSymmetric("matrix is not symmetric")
    return M


def check_psd(M) -> np.ndarray:
    """Return M unchanged if it is symmetric with min eigenvalue >= -1e-10 x spectral radius."""
    try:
        M = _symmetric(M)
    except NotSymmetric as exc:
        raise NotPsd(str(exc)) from None
    w = np.linalg.eigvalsh(M)
    radius = float(np.max(np.abs(w))) if w.size else 0.0
    if w.size and w[0] < -1e-10 * max(radius, 1e-300):
        raise NotPsd(f"smallest eigenvalue {w[0]:.3e}")
    return M


def psd_project(M) -> np.ndarray:
    """Clip negative eigenvalues of a symmetric matrix at zero."""
    M = _symmetric(M)
    w, Q = np.linalg.eigh(M)
    out = (Q * np.clip(w, 0.0, None)) @ Q.T
    return (out + out.T) / 2.0


def random_psd(rng, m: int, kind: str = "wishart") -> np.ndarray:
    """G G^T / m with G uniform on [-1, 1]; ``lowrank`` uses a single column."""
    cols = 1 if kind == "lowrank" else m
    G = rng.uniform(-1.0, 1.0, (m, cols))
    return G @ G.T / m
