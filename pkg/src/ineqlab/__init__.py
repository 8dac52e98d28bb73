"""Numerical laboratory for higher-order convexity, majorization and
functional norm inequalities."""

from .kernels import BACKEND
from .majorization import MajorizationVerdict, Str, hlp_majorizes, weak_majorizes
from .report import InequalityReport
from .scalar_functions import ScalarFunction, ShapeFlags, audit_shape, divided_difference, get
from .search import SearchResult, falsify_strengthened_zhang, probe, probe_open_problem, refine
from .spaces import LpSpace, SchattenSpace, cnj_analytic, parse_space

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "InequalityReport",
    "LpSpace",
    "MajorizationVerdict",
    "ScalarFunction",
    "SchattenSpace",
    "SearchResult",
    "ShapeFlags",
    "Str",
    "audit_shape",
    "cnj_analytic",
    "divided_difference",
    "falsify_strengthened_zhang",
    "get",
    "hlp_majorizes",
    "parse_space",
    "probe",
    "probe_open_problem",
    "refine",
    "weak_majorizes",
]
