"""Mode family, energy inner product, propagator series, and diagnostics.

The analysis interval is [0, pi/4].  The mode family

    phi_n(s) = c1 * cos(lam_n * s),   lam_n = 6 - 8n,  c1 = -sqrt(8/pi)

is L2-orthonormal on that interval, and the paired vectors

    Phi_n = rho_n * (phi_n, lam_n * phi_n),   rho_n = 1 / (sqrt(2) * lam_n)

are orthonormal in the energy pairing used throughout this module,

    <(p1, p2), (q1, q2)> = int p1' q1' + int p2 q2.

On uniform quadrature nodes the composite trapezoid rule integrates every
product of two family members exactly (all frequencies complete a whole
number of half periods), so the discrete Gram matrix is the identity to
round-off when the first-component derivatives are supplied analytically.

Modes with lam_n > 0 grow under the propagator; no clamping is applied, the
growth is inherent to the continuation problem and should stay visible in
diagnostics.
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

ANALYSIS_LENGTH = np.pi / 4.0
MODE_AMPLITUDE = -np.sqrt(8.0 / np.pi)

DEFAULT_MODE_INDICES = tuple(range(-4, 9))
DEFAULT_QUADRATURE = 2001


def mode_frequency(n: int) -> float:
    """Frequency (also the propagation rate) of mode n; never zero."""
    return 6.0 - 8.0 * n


@dataclass(frozen=True)
class EigenMode:
    n: int
    lam: float = field(init=False)
    alpha: float = field(init=False, default=1.0)
    beta: float = field(init=False)
    rho: float = field(init=False)
    c1: float = field(init=False, default=MODE_AMPLITUDE)

    def __post_init__(self):
        lam = mode_frequency(self.n)
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "beta", lam)
        object.__setattr__(self, "rho", 1.0 / (np.sqrt(2.0) * lam))


@dataclass(frozen=True)
class ModeSet:
    """Finite, duplicate-free truncation of the mode family plus a node count."""

    indices: tuple
    quadrature: int = DEFAULT_QUADRATURE

    def __post_init__(self):
        idx = tuple(int(i) for i in self.indices)
        if len(set(idx)) != len(idx):
            raise ValueError("mode indices must be duplicate-free")
        if len(idx) == 0:
            raise ValueError("mode set must be nonempty")
        if self.quadrature < 5:
            raise ValueError("quadrature needs at least 5 nodes")
        object.__setattr__(self, "indices", idx)

    def modes(self):
        return [EigenMode(i) for i in self.indices]


def default_mode_set(quadrature: int = DEFAULT_QUADRATURE) -> ModeSet:
    return ModeSet(DEFAULT_MODE_INDICES, quadrature)


@dataclass(frozen=True)
class FunctionPair:
    """Two functions sampled on the uniform quadrature nodes of [0, pi/4].

    ``dp1`` optionally carries analytic samples of the first component's
    derivative.  When present it is used by the inner product instead of
    finite differences; propagator output always carries it so that repeated
    applications do not accumulate differencing error.
    """

    p1: np.ndarray
    p2: np.ndarray
    dp1: Optional[np.ndarray] = None

    def __post_init__(self):
        p1 = np.asarray(self.p1, dtype=float)
        p2 = np.asarray(self.p2, dtype=float)
        if p1.shape != p2.shape or p1.ndim != 1:
            raise ValueError("components must be 1-d arrays on identical nodes")
        if self.dp1 is not None:
            dp1 = np.asarray(self.dp1, dtype=float)
            if dp1.shape != p1.shape:
                raise ValueError("derivative samples must match the node set")
            object.__setattr__(self, "dp1", dp1)
        object.__setattr__(self, "p1", p1)
        object.__setattr__(self, "p2", p2)

    @property
    def nodes(self) -> int:
        return len(self.p1)


def quadrature_nodes(quadrature: int) -> np.ndarray:
    return np.linspace(0.0, ANALYSIS_LENGTH, quadrature)


def eval_mode(mode: EigenMode, y: float):
    """Value of the paired mode at a point, (first, second) component."""
    v1 = mode.rho * mode.alpha * mode.c1 * np.cos(mode.lam * y)
    v2 = mode.beta * v1
    return v1, v2


def sample_mode(mode: EigenMode, quadrature: int) -> FunctionPair:
    """Sample a mode on the quadrature nodes, with analytic derivative."""
    s = quadrature_nodes(quadrature)
    p1 = mode.rho * mode.alpha * mode.c1 * np.cos(mode.lam * s)
    p2 = mode.beta * p1
    dp1 = -mode.rho * mode.alpha * mode.c1 * mode.lam * np.sin(mode.lam * s)
    return FunctionPair(p1=p1, p2=p2, dp1=dp1)


def zero_pair(quadrature: int) -> FunctionPair:
    z = np.zeros(quadrature)
    return FunctionPair(p1=z, p2=z.copy(), dp1=z.copy())


def _trapezoid(values: np.ndarray, h: float) -> float:
    return h * (values.sum() - 0.5 * (values[0] + values[-1]))


def _derivative(p: FunctionPair, h: float) -> np.ndarray:
    if p.dp1 is not None:
        return p.dp1
    d = np.empty_like(p.p1)
    d[1:-1] = (p.p1[2:] - p.p1[:-2]) / (2.0 * h)
    d[0] = (p.p1[1] - p.p1[0]) / h
    d[-1] = (p.p1[-1] - p.p1[-2]) / h
    return d


def inner_product(p: FunctionPair, q: FunctionPair) -> float:
    """Energy pairing: derivative term of the first components plus the
    plain product of the second components, both by composite trapezoid.

    Sampled derivatives are centered differences (one-sided at the interval
    ends) unless analytic samples are attached to the pair.
    """
    if p.nodes != q.nodes:
        raise ValueError(f"mismatched sampling: {p.nodes} vs {q.nodes} nodes")
    h = ANALYSIS_LENGTH / (p.nodes - 1)
    dp = _derivative(p, h)
    dq = _derivative(q, h)
    return _trapezoid(dp * dq, h) + _trapezoid(p.p2 * q.p2, h)


def gram_matrix(modes: ModeSet) -> np.ndarray:
    """Pairwise inner products of the normalized mode pairs."""
    pairs = [sample_mode(m, modes.quadrature) for m in modes.modes()]
    k = len(pairs)
    G = np.empty((k, k))
    for i in range(k):
        for j in range(i, k):
            G[i, j] = G[j, i] = inner_product(pairs[i], pairs[j])
    return G


def semigroup_apply(f: FunctionPair, x: float, modes: ModeSet) -> FunctionPair:
    """Truncated propagator: sum of exp(lam_n x) times the mode projections.

    At x = 0 this is the orthogonal projection onto the span of the mode
    set.  The output carries analytic derivative samples so compositions
    stay exact up to round-off.
    """
    if x < 0.0:
        raise ValueError("propagation distance must be nonnegative")
    if f.nodes != modes.quadrature:
        raise ValueError("pair and mode set use different quadrature nodes")
    out1 = np.zeros(f.nodes)
    out2 = np.zeros(f.nodes)
    outd = np.zeros(f.nodes)
    for m in modes.modes():
        basis = sample_mode(m, modes.quadrature)
        c = np.exp(m.lam * x) * inner_product(f, basis)
        out1 += c * basis.p1
        out2 += c * basis.p2
        outd += c * basis.dp1
    return FunctionPair(p1=out1, p2=out2, dp1=outd)


def observation(f: FunctionPair) -> float:
    """First component evaluated at the data end (s = 0) of the interval."""
    return float(f.p1[0])


def observability_lower_bound(modes: ModeSet, x: float) -> float:
    """Sum over the mode set of (exp(lam_n x) * rho_n^2 * |phi_n|^2)^2.

    |phi_n| is the energy norm of the unnormalized pair; each summand is
    strictly positive, so the bound is positive and grows monotonically as
    modes are added.
    """
    if x < 0.0:
        raise ValueError("x must be nonnegative")
    total = 0.0
    for m in modes.modes():
        scaled = sample_mode(m, modes.quadrature)
        # unnormalized pair (phi, lam*phi): energy norm^2 = <Phi,Phi> / rho^2
        norm2 = inner_product(scaled, scaled) / (m.rho * m.rho)
        total += (np.exp(m.lam * x) * m.rho * m.rho * norm2) ** 2
    return total


def eigen_residual(mode: EigenMode, quadrature: int) -> float:
    """Sup norm of the discrete eigen-relation defect over interior nodes.

    The operator applies a centered second difference to the first
    component; the first row of the relation is zero by construction, so the
    residual is the second-row defect, which shrinks at second order in the
    node spacing.
    """
    if quadrature < 5:
        raise ValueError("quadrature needs at least 5 nodes")
    pair = sample_mode(mode, quadrature)
    h = ANALYSIS_LENGTH / (quadrature - 1)
    d2 = (pair.p1[2:] - 2.0 * pair.p1[1:-1] + pair.p1[:-2]) / (h * h)
    row2 = -d2 - mode.lam * pair.p2[1:-1]
    row1 = pair.p2 - mode.lam * mode.alpha * pair.p1
    return float(max(np.abs(row2).max(), np.abs(row1).max()))
