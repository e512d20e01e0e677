"""Closed-form harmonic fields and the Cauchy data they induce on the top edge.

Every supported field is a combination of separable terms

    coeff * cosh(2*pi*k*2*(y-b)/a) / cosh(4*pi*k*b/a) * trig(4*pi*k*x/a)

with trig in {cos, sin}.  Each term is harmonic, has zero normal derivative
on the top boundary, and its trace on the bottom boundary is exactly
coeff * trig(4*pi*k*x/a).  Cosine terms satisfy zero-Neumann side conditions,
sine terms zero-Dirichlet ones.
"""

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .grid import RectGrid

_PARITIES = ("cos", "sin")
_KINDS = ("neumann_sides", "dirichlet_sides", "fourier_combo")


@dataclass(frozen=True)
class TrigTerm:
    k: int
    coeff: float
    parity: str  # "cos" or "sin"

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"mode index must be a positive integer, got {self.k}")
        if self.parity not in _PARITIES:
            raise ValueError(f"parity must be one of {_PARITIES}, got {self.parity!r}")
        if not np.isfinite(self.coeff):
            raise ValueError("coefficient must be finite")


@dataclass(frozen=True)
class ReferenceSolution:
    kind: str
    terms: tuple
    a: float
    b: float

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"kind must be one of {_KINDS}, got {self.kind!r}")
        if len(self.terms) == 0:
            raise ValueError("a reference solution needs at least one term")


@dataclass(frozen=True)
class CauchyData:
    """Dirichlet trace f and Neumann trace g sampled along the top boundary."""

    f: np.ndarray
    g: np.ndarray

    def __post_init__(self):
        if len(self.f) != len(self.g):
            raise ValueError("f and g must have equal length")
        if not (np.isfinite(self.f).all() and np.isfinite(self.g).all()):
            raise ValueError("Cauchy data must be finite")


def neumann_example(a: float, b: float) -> ReferenceSolution:
    """Single cosine term, zero-Neumann side boundaries."""
    return ReferenceSolution("neumann_sides", (TrigTerm(1, 1.0, "cos"),), a, b)


def dirichlet_example(a: float, b: float) -> ReferenceSolution:
    """Single sine term, zero-Dirichlet side boundaries."""
    return ReferenceSolution("dirichlet_sides", (TrigTerm(1, 1.0, "sin"),), a, b)


def combo_example(terms: Sequence[TrigTerm], a: float, b: float) -> ReferenceSolution:
    return ReferenceSolution("fourier_combo", tuple(terms), a, b)


def _freq(term: TrigTerm, a: float) -> float:
    return 4.0 * np.pi * term.k / a


def evaluate(sol: ReferenceSolution, x, y):
    """Field value at (x, y); accepts scalars or broadcastable arrays."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    out = np.zeros(np.broadcast(x, y).shape)
    for t in sol.terms:
        w = _freq(t, sol.a)
        prof = np.cosh(w * (y - sol.b)) / np.cosh(w * sol.b)
        trig = np.cos(w * x) if t.parity == "cos" else np.sin(w * x)
        out = out + t.coeff * prof * trig
    return out if out.shape else float(out)


def d_dx(sol: ReferenceSolution, x, y):
    """Exact x derivative, used to seed marching states."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    out = np.zeros(np.broadcast(x, y).shape)
    for t in sol.terms:
        w = _freq(t, sol.a)
        prof = np.cosh(w * (y - sol.b)) / np.cosh(w * sol.b)
        dtrig = -w * np.sin(w * x) if t.parity == "cos" else w * np.cos(w * x)
        out = out + t.coeff * prof * dtrig
    return out if out.shape else float(out)


def d_dy(sol: ReferenceSolution, x, y):
    """Exact y derivative; identically zero on the top boundary."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    out = np.zeros(np.broadcast(x, y).shape)
    for t in sol.terms:
        w = _freq(t, sol.a)
        dprof = w * np.sinh(w * (y - sol.b)) / np.cosh(w * sol.b)
        trig = np.cos(w * x) if t.parity == "cos" else np.sin(w * x)
        out = out + t.coeff * dprof * trig
    return out if out.shape else float(out)


def make_cauchy_data(sol: ReferenceSolution, grid: RectGrid) -> CauchyData:
    """Sample (f, g) on the top boundary at the grid's x nodes.

    g is the analytic normal derivative, which vanishes identically for the
    supported families (the cosh profile is flat at y = b).
    """
    if not (np.isclose(sol.a, grid.a) and np.isclose(sol.b, grid.b)):
        raise ValueError("solution and grid must share the domain extents")
    x = grid.x
    f = evaluate(sol, x, grid.b)
    g = d_dy(sol, x, grid.b)
    return CauchyData(f=np.asarray(f, dtype=float), g=np.asarray(g, dtype=float))


def bottom_trace(sol: ReferenceSolution, grid: RectGrid) -> np.ndarray:
    """True field values along the bottom boundary, one per x node."""
    return np.asarray(evaluate(sol, grid.x, 0.0), dtype=float)


def sample_state_field(sol: ReferenceSolution, grid: RectGrid) -> np.ndarray:
    """Stacked (u, du/dx) samples for every x node, shape (nx, 2*ny).

    Useful as a consistent initial guess and in accuracy studies.
    """
    field = np.zeros((grid.nx, 2 * grid.ny))
    x = grid.x
    y = grid.y
    for n in range(grid.nx):
        field[n, :grid.ny] = evaluate(sol, x[n], y)
        field[n, grid.ny:] = d_dx(sol, x[n], y)
    return field
