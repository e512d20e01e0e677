"""Marching operator assembly, boundary closures, and the single line step.

The second-order system is marched in x as a first-order recursion for the
stacked state (u samples, du/dx samples) on one vertical grid line:

    state_next = F @ state - K * (C @ state - f) + dx * forcing

F = I + dx * A with A = [[0, I], [-D, 0]], D the second-difference matrix in
y.  The top row of D folds the Neumann condition in through a mirror ghost
node whose data term is moved to the forcing.  Two closures are available
for the bottom row, where no data exists:

``one_sided``  (default)
    Second-order one-sided stencil using interior values only.  The marching
    recursion is then exactly linear in the state, the estimation error of
    two runs with shared data obeys  e_next = (F - K C) e,  and a full sweep
    contracts at spectral_radius(F - K C) ** (nx - 1).

``ghost``
    The bottom row keeps the centered stencil and is closed per step by a
    fictitious node below the boundary (see ``fictitious_point``), whose
    value encodes the interior equation holding on the boundary.  The ghost
    value depends on a lagged copy of the bottom du/dx, which couples
    consecutive sweeps; measurements show that feedback loop amplifies
    (sweep-map spectral radius far above one on stiff grids), so this
    closure is provided for study rather than production marching.
"""

from dataclasses import dataclass

import numpy as np

from .grid import RectGrid

BOTTOM_CLOSURES = ("one_sided", "ghost")


@dataclass(frozen=True)
class StateVector:
    """State on one vertical line: u samples and du/dx samples, length ny each."""

    xi1: np.ndarray
    xi2: np.ndarray

    def __post_init__(self):
        xi1 = np.asarray(self.xi1, dtype=float)
        xi2 = np.asarray(self.xi2, dtype=float)
        if xi1.shape != xi2.shape or xi1.ndim != 1:
            raise ValueError("xi1 and xi2 must be 1-d arrays of equal length")
        object.__setattr__(self, "xi1", xi1)
        object.__setattr__(self, "xi2", xi2)

    @property
    def ny(self) -> int:
        return len(self.xi1)

    def stacked(self) -> np.ndarray:
        return np.concatenate([self.xi1, self.xi2])

    @staticmethod
    def from_stacked(v: np.ndarray) -> "StateVector":
        v = np.asarray(v, dtype=float)
        ny = v.size // 2
        return StateVector(xi1=v[:ny], xi2=v[ny:])


@dataclass(frozen=True)
class SystemMatrices:
    """Dense marching matrices for one grid; immutable and shareable."""

    A_d: np.ndarray
    F: np.ndarray
    C_row: np.ndarray
    dx: float
    dy: float
    ny: int
    bottom_closure: str


def _second_difference(ny: int, dy: float, bottom_closure: str) -> np.ndarray:
    D = np.zeros((ny, ny))
    inv = 1.0 / (dy * dy)
    for i in range(1, ny - 1):
        D[i, i - 1] = inv
        D[i, i] = -2.0 * inv
        D[i, i + 1] = inv
    # top row: mirror ghost for the Neumann condition, data term in forcing
    D[ny - 1, ny - 2] = 2.0 * inv
    D[ny - 1, ny - 1] = -2.0 * inv
    if bottom_closure == "ghost":
        # centered stencil left open below; closed per step by the ghost value
        D[0, 0] = -2.0 * inv
        D[0, 1] = inv
    elif ny >= 4:
        D[0, 0:4] = np.array([2.0, -5.0, 4.0, -1.0]) * inv
    else:
        # 3 nodes: shifted stencil, first-order but self-contained
        D[0, 0:3] = np.array([1.0, -2.0, 1.0]) * inv
    return D


def assemble(grid: RectGrid, bottom_closure: str = "one_sided") -> SystemMatrices:
    """Build A, F = I + dx*A and the top-trace selector row."""
    if bottom_closure not in BOTTOM_CLOSURES:
        raise ValueError(f"bottom_closure must be one of {BOTTOM_CLOSURES}")
    ny = grid.ny
    D = _second_difference(ny, grid.dy, bottom_closure)
    A = np.zeros((2 * ny, 2 * ny))
    A[:ny, ny:] = np.eye(ny)
    A[ny:, :ny] = -D
    F = np.eye(2 * ny) + grid.dx * A
    C = np.zeros(2 * ny)
    C[ny - 1] = 1.0
    return SystemMatrices(A_d=A, F=F, C_row=C, dx=grid.dx, dy=grid.dy,
                          ny=ny, bottom_closure=bottom_closure)


def fictitious_point(xi1_1: float, xi1_2: float, xi2_1_next: float,
                     xi2_1_cur: float, dy: float, dx: float) -> float:
    """Ghost value below the bottom boundary.

    Chosen so that inserting it into the centered second difference of the
    bottom row reproduces -(xi2_next - xi2_cur)/dx, i.e. the interior
    equation evaluated on the boundary.
    """
    if dx <= 0.0 or dy <= 0.0:
        raise ValueError("steps must be positive")
    return 2.0 * xi1_1 - xi1_2 - (dy * dy / dx) * (xi2_1_next - xi2_1_cur)


def forcing_vector(mats: SystemMatrices, g_meas: float, ghost: float) -> np.ndarray:
    """Data and closure contributions entering the step as dx * forcing."""
    ny = mats.ny
    b = np.zeros(2 * ny)
    b[2 * ny - 1] = -2.0 * g_meas / mats.dy
    if mats.bottom_closure == "ghost":
        b[ny] = -ghost / (mats.dy * mats.dy)
    return b


def step_stacked(state: np.ndarray, mats: SystemMatrices, k: np.ndarray,
                 f_meas: float, g_meas: float, ghost: float = 0.0) -> np.ndarray:
    """One marching step on a stacked state vector."""
    innovation = state[mats.ny - 1] - f_meas
    return (mats.F @ state - k * innovation
            + mats.dx * forcing_vector(mats, g_meas, ghost))


def step_line(state: StateVector, mats: SystemMatrices, gain,
              f_meas: float, g_meas: float, ghost: float = 0.0) -> StateVector:
    """Advance one vertical line by one x step with output injection.

    ``gain`` is a GainVector or a plain array of length 2*ny.  ``ghost`` is
    only consulted by ghost-closure matrices.
    """
    k = np.asarray(getattr(gain, "k", gain), dtype=float)
    v = state.stacked()
    if len(k) != len(v) or mats.F.shape[0] != len(v):
        raise ValueError("state, matrices and gain dimensions disagree")
    return StateVector.from_stacked(
        step_stacked(v, mats, k, f_meas, g_meas, ghost))
