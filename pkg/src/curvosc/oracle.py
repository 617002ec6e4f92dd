"""Independent numerical verification machinery.

The eigensolver discretizes the quasiradial problem in Liouville normal form
after factoring the known endpoint exponent out of Z:

    u = Z / sin^(m+1/2)(xi)        (sphere,      m = L + (D-2)/2)
    u = Z / sinh^(m+1/2)(rho)      (hyperboloid)

which turns the singular (m^2 - 1/4)/sin^2 barrier into the exact weighted
form -(w u')' + Q w u = eps w u with w = sin^(2m+1) and the smooth

    Q = (nu^2 - 1/4)/cos^2(xi) + (m + 1/2)^2       (sphere)
    Q = -(nu^2 - 1/4)/cosh^2(rho) - (m + 1/2)^2    (hyperboloid)

A plain central-difference Dirichlet scheme on Z converges only
logarithmically at the critical coupling m = 0 (D=2, L=0); the weighted
finite-volume form restores clean O(h^2) there, and a symmetric tridiagonal
matrix survives the similarity scaling by the lumped weight. On the sphere
with nu < 1 the cos endpoint turns critical as well and its exponent
(nu + 1/2) is factored too, leaving the constant Q = (m + nu + 1)^2.

Hyperboloid grids are stretched beyond the classical turning point (smooth
softplus map) because weakly bound states need domains of hundreds of
curvature radii while the well itself spans a few.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.linalg import eigh_tridiagonal

from . import model
from .errors import AccuracyError, DomainError, GeometryError, NumericalError
from .model import Geometry, ModelParams, QuantumState

__all__ = [
    "FdGrid",
    "OracleReport",
    "pt_effective_potential",
    "fd_eigenvalues",
    "fd_count_below",
    "fd_ground_radial",
    "richardson_extrapolate",
    "fd_epsilon_extrapolated",
    "sphere_grid",
    "hyperboloid_grid",
    "gauss_legendre",
    "gauss_legendre_checked",
    "ode_residual",
]

_GL_ORDERS = (8, 16, 32)
_MAP_SMOOTHNESS = 3.0


@dataclass(frozen=True)
class FdGrid:
    """Discretization descriptor: open interval (a, b) and interior count."""

    interval: tuple[float, float]
    points: int

    def __post_init__(self) -> None:
        a, b = self.interval
        if not (math.isfinite(a) and math.isfinite(b) and a < b):
            raise DomainError(f"interval must be finite with a < b, got {self.interval!r}")
        if self.points < 16:
            raise DomainError(f"points must be >= 16, got {self.points!r}")

    @property
    def spacing(self) -> float:
        a, b = self.interval
        return (b - a) / (self.points + 1)


@dataclass(frozen=True)
class OracleReport:
    """Verification record: FD eigenvalues, quadratures, residuals."""

    eigenvalues: tuple[float, ...]
    extrapolated: tuple[float, ...]
    quadratures: Mapping[str, float]
    residuals: Mapping[str, float]
    grid_meta: tuple[FdGrid, ...]

    def __post_init__(self) -> None:
        for seq in (self.eigenvalues, self.extrapolated):
            if any(not math.isfinite(v) for v in seq):
                raise NumericalError("non-finite entry in oracle report")
            if any(x > y for x, y in zip(seq, seq[1:])):
                raise NumericalError("eigenvalue list must be ascending")


def pt_effective_potential(params: ModelParams, L: int, x: float) -> float:
    """Effective potential of the transformed quasiradial equation.

    Sphere, xi in (0, pi/2):   (nu^2-1/4)/cos^2 + (m^2-1/4)/sin^2.
    Hyperboloid, rho in (0, inf): -(nu^2-1/4)/cosh^2 + (m^2-1/4)/sinh^2;
    the cosh well is attractive, which is what supports the negative
    bound-state eigenvalues.
    """
    v = model.nu(params, L)
    m = model.angular_index(params, L)
    if params.geometry is Geometry.SPHERE:
        if not (0.0 < x < math.pi / 2):
            raise DomainError(f"xi must lie strictly inside (0, pi/2), got {x!r}")
        return (v * v - 0.25) / math.cos(x) ** 2 + (m * m - 0.25) / math.sin(x) ** 2
    if not (x > 0.0):
        raise DomainError(f"rho must be > 0, got {x!r}")
    return -(v * v - 0.25) / math.cosh(x) ** 2 + (m * m - 0.25) / math.sinh(x) ** 2


def _log_sin(x: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore"):
        return np.log(np.sin(x))


def _log_sinh(x: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore"):
        return np.where(x < 2.0, np.log(np.sinh(np.minimum(x, 2.0))), x + np.log1p(-np.exp(-2.0 * np.minimum(x, 700.0))) - math.log(2.0))


def _sech2(x: np.ndarray) -> np.ndarray:
    e = np.exp(-2.0 * x)
    return 4.0 * e / (1.0 + e) ** 2


def _stretch(s: np.ndarray, s_w: float, beta: float) -> np.ndarray:
    a = _MAP_SMOOTHNESS
    return s + (beta - 1.0) * a * (
        np.logaddexp(0.0, (s - s_w) / a) - np.logaddexp(0.0, -s_w / a)
    )


def _stretch_smax(rho_max: float, s_w: float, beta: float) -> float:
    lo, hi = 0.0, rho_max + s_w + 10.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if float(_stretch(np.asarray(mid), s_w, beta)) < rho_max:
            lo = mid
        else:
            hi = mid
    return hi


def _hyperboloid_map(params: ModelParams, L: int, rho_max: float) -> tuple[float, float]:
    """Stretch parameters (s_w, beta): fine grid across the well, coarse tail."""
    v = model.nu(params, L)
    well = max((v * v - 0.25) / 2.5e-3, 4.0)
    s_w = math.acosh(math.sqrt(well)) + 2.0
    beta = max(1.0, (rho_max - s_w) / 45.0)
    return s_w, beta


@dataclass(frozen=True)
class _Assembly:
    centers: np.ndarray      # coordinate of each cell center (xi or rho)
    log_weight: np.ndarray   # log w at centers
    cells: np.ndarray        # cell widths in the physical coordinate
    diag: np.ndarray
    off: np.ndarray


def _assemble(params: ModelParams, L: int, interval: tuple[float, float], n: int) -> _Assembly:
    a, b = interval
    if a != 0.0:
        raise DomainError("the discretized interval must start at the singular endpoint 0")
    v = model.nu(params, L)
    m = model.angular_index(params, L)
    p = 2.0 * m + 1.0

    if params.geometry is Geometry.SPHERE:
        if b > math.pi / 2 + 1e-12:
            raise DomainError("sphere interval must lie inside (0, pi/2]")
        h = b / n
        interfaces = h * np.arange(n + 1)
        centers = h * (np.arange(1, n + 1) - 0.5)
        cells = np.full(n, h)
        if v < 1.0:
            # critical cos endpoint: factor its exponent too, Q is constant
            pc = 2.0 * v + 1.0
            logw_i = p * _log_sin(interfaces) + pc * np.log(np.maximum(np.cos(interfaces), 0.0))
            logw_i[0] = -np.inf
            logw_i[-1] = -np.inf
            logw_c = p * _log_sin(centers) + pc * np.log(np.cos(centers))
            Q = np.full(n, (m + v + 1.0) ** 2)
        else:
            logw_i = np.concatenate(([-np.inf], p * _log_sin(interfaces[1:])))
            logw_c = p * _log_sin(centers)
            Q = (v * v - 0.25) / np.cos(centers) ** 2 + (m + 0.5) ** 2
        deltas = np.empty(n)
        deltas[:-1] = centers[1:] - centers[:-1]
        deltas[-1] = 2.0 * (b - centers[-1])
    else:
        s_w, beta = _hyperboloid_map(params, L, b)
        s_max = _stretch_smax(b, s_w, beta)
        hs = s_max / n
        s_if = hs * np.arange(n + 1)
        s_c = hs * (np.arange(1, n + 1) - 0.5)
        interfaces = np.asarray(_stretch(s_if, s_w, beta))
        centers = np.asarray(_stretch(s_c, s_w, beta))
        cells = interfaces[1:] - interfaces[:-1]
        logw_i = np.concatenate(([-np.inf], p * _log_sinh(interfaces[1:])))
        logw_c = p * _log_sinh(centers)
        Q = -(v * v - 0.25) * _sech2(centers) - (m + 0.5) ** 2
        deltas = np.empty(n)
        deltas[:-1] = centers[1:] - centers[:-1]
        deltas[-1] = 2.0 * (b - centers[-1])

    # Right-interface coupling: with a Dirichlet end the mirror-ghost flux
    # doubles through deltas[-1] = 2*(b - last center); with a natural end
    # logw_i[-1] is -inf and the term vanishes on its own.
    log_mass = logw_c + np.log(cells)
    diag = np.exp(logw_i[1:] - log_mass) / deltas
    diag[1:] += np.exp(logw_i[1:-1] - log_mass[1:]) / deltas[:-1]
    diag += Q
    off = -np.exp(logw_i[1:-1] - 0.5 * (log_mass[:-1] + log_mass[1:])) / deltas[:-1]
    if not (np.all(np.isfinite(diag)) and np.all(np.isfinite(off))):
        raise NumericalError("non-finite matrix entries in FD assembly")
    return _Assembly(centers=centers, log_weight=logw_c, cells=cells, diag=diag, off=off)


def _solve_raw(params: ModelParams, L: int, interval: tuple[float, float], n: int, count: int) -> np.ndarray:
    asm = _assemble(params, L, interval, n)
    if count < 1 or count > n:
        raise DomainError(f"count must lie in [1, {n}], got {count!r}")
    try:
        return eigh_tridiagonal(
            asm.diag, asm.off, eigvals_only=True, select="i", select_range=(0, count - 1)
        )
    except np.linalg.LinAlgError as exc:  # pragma: no cover
        raise NumericalError(f"tridiagonal eigensolver failed: {exc}") from exc


def fd_eigenvalues(params: ModelParams, L: int, grid: FdGrid, count: int) -> list[float]:
    """Lowest eigenvalues of the discretized quasiradial problem.

    On the sphere all `count` are returned. On the hyperboloid only values
    below the continuum edge eps = 0 are kept, so the result can be shorter
    than `count`; that truncation is the bound-state flag.
    """
    vals = _solve_raw(params, L, grid.interval, grid.points, count)
    if params.geometry is Geometry.HYPERBOLOID:
        vals = vals[vals < 0.0]
    return [float(v) for v in vals]


def fd_count_below(params: ModelParams, L: int, grid: FdGrid, edge: float = 0.0) -> int:
    """Number of FD eigenvalues below `edge`, by the Sturm sequence.

    One LDL^T sweep of the shifted tridiagonal matrix; the count of negative
    pivots equals the count of eigenvalues below the shift.
    """
    asm = _assemble(params, L, grid.interval, grid.points)
    diag = asm.diag - edge
    off2 = asm.off**2
    count = 0
    d = diag[0]
    if d < 0.0:
        count += 1
    tiny = 1e-300
    for i in range(1, len(diag)):
        denom = d if d != 0.0 else tiny
        d = diag[i] - off2[i - 1] / denom
        if d < 0.0:
            count += 1
    return count


def fd_ground_radial(params: ModelParams, L: int, grid: FdGrid) -> tuple[np.ndarray, np.ndarray]:
    """FD ground-state eigenvector mapped back to the radial function R.

    Returns (coordinate, R) on cell centers; the coordinate is chi = 2 xi on
    the sphere and tau = 2 rho on the hyperboloid. The symmetrized
    eigenvector is sqrt(cell) * Z at the centers, so dividing by sqrt(cell)
    and the measure factor sin^((D-1)/2) or sinh^((D-1)/2) recovers R up to
    overall scale.
    """
    asm = _assemble(params, L, grid.interval, grid.points)
    try:
        _, vecs = eigh_tridiagonal(asm.diag, asm.off, select="i", select_range=(0, 0))
    except np.linalg.LinAlgError as exc:  # pragma: no cover
        raise NumericalError(f"tridiagonal eigensolver failed: {exc}") from exc
    z = vecs[:, 0] / np.sqrt(asm.cells)
    coord = 2.0 * asm.centers
    if params.geometry is Geometry.SPHERE:
        measure = np.sin(coord) ** ((params.dimension - 1) / 2)
    else:
        measure = np.sinh(coord) ** ((params.dimension - 1) / 2)
    return coord, z / measure


def richardson_extrapolate(value_h: float, value_h2: float, order: int) -> float:
    """Eliminate the leading O(h^order) error from a pair at steps h, h/2."""
    if order < 1:
        raise DomainError(f"order must be >= 1, got {order!r}")
    return (2.0**order * value_h2 - value_h) / (2.0**order - 1.0)


def fd_epsilon_extrapolated(
    params: ModelParams,
    L: int,
    grid: FdGrid,
    count: int,
    levels: int = 2,
) -> list[float]:
    """Richardson-extrapolated FD eigenvalues from `levels` grid refinements.

    levels=2 removes the O(h^2) term; levels=3 chains a second extrapolation
    at order 4. Hyperboloid results are filtered to below the eps = 0 edge
    after extrapolation.
    """
    if levels not in (2, 3):
        raise DomainError(f"levels must be 2 or 3, got {levels!r}")
    solves = [
        _solve_raw(params, L, grid.interval, grid.points * 2**k, count)
        for k in range(levels)
    ]
    first = [
        [richardson_extrapolate(a, b, 2) for a, b in zip(solves[k], solves[k + 1])]
        for k in range(levels - 1)
    ]
    if levels == 2:
        out = first[0]
    else:
        out = [richardson_extrapolate(a, b, 4) for a, b in zip(first[0], first[1])]
    if params.geometry is Geometry.HYPERBOLOID:
        out = [v for v in out if v < 0.0]
    return out


def sphere_grid(points: int = 2000) -> FdGrid:
    return FdGrid(interval=(0.0, math.pi / 2), points=points)


def hyperboloid_grid(params: ModelParams, L: int, points: int = 16000) -> FdGrid:
    """Grid whose domain keeps even the shallowest bound state's tail.

    rho_max places a 19/kappa exponential-decay budget beyond the classical
    turning point of the shallowest bound level; growing rho_max by 25% must
    shift eigenvalues by less than 1e-8, which the test suite asserts. For
    channels with no bound state a short default domain is used (the solver
    then only confirms the absence of negative eigenvalues).
    """
    if params.geometry is not Geometry.HYPERBOLOID:
        raise GeometryError("hyperboloid_grid requires hyperboloid geometry")
    top = model.bound_state_max(params, L)
    if top is None:
        return FdGrid(interval=(0.0, 30.0), points=points)
    v = model.nu(params, L)
    kappa = v - (2 * top + L) - params.dimension / 2
    turn = math.acosh(math.sqrt(max((v * v - 0.25) / (kappa * kappa), 1.0)))
    return FdGrid(interval=(0.0, turn + 19.0 / kappa), points=points)


_GL_NODES = {order: leggauss(order) for order in _GL_ORDERS}


def gauss_legendre(
    f: Callable[[float], float], a: float, b: float, panels: int, order: int
) -> float:
    """Composite Gauss-Legendre quadrature of f over [a, b]."""
    if order not in _GL_ORDERS:
        raise DomainError(f"order must be one of {_GL_ORDERS}, got {order!r}")
    if panels < 1:
        raise DomainError(f"panels must be >= 1, got {panels!r}")
    nodes, weights = _GL_NODES[order]
    width = (b - a) / panels
    contributions = []
    for i in range(panels):
        mid = a + (i + 0.5) * width
        half = 0.5 * width
        for x, w in zip(nodes, weights):
            y = f(mid + half * x)
            if not math.isfinite(y):
                raise NumericalError(f"non-finite integrand sample at {mid + half * x!r}")
            contributions.append(half * w * y)
    return math.fsum(contributions)


def gauss_legendre_checked(
    f: Callable[[float], float],
    a: float,
    b: float,
    panels: int,
    order: int,
    rtol: float = 1e-12,
) -> float:
    """Quadrature accepted only if doubling the panel count is stable to rtol."""
    coarse = gauss_legendre(f, a, b, panels, order)
    fine = gauss_legendre(f, a, b, 2 * panels, order)
    if abs(fine - coarse) > rtol * max(1.0, abs(fine)):
        raise AccuracyError(
            f"quadrature not converged: {coarse!r} vs {fine!r} over [{a}, {b}]"
        )
    return fine


def ode_residual(
    params: ModelParams,
    state: QuantumState,
    grid: FdGrid,
    energy_shift: float = 0.0,
) -> float:
    """Scaled residual of the analytic R in the quasiradial equation.

    Central differences on the vertex grid of `grid`; the result is
    max |R'' + p R' + q R| / max |R| with p, q the first-order and potential
    coefficients of the radial operator and E the exact level shifted by
    `energy_shift` (nonzero shifts are the negative control).
    """
    from . import wavefunctions  # local import to avoid a cycle

    D = params.dimension
    r0 = params.radius
    a, b = grid.interval
    h = grid.spacing
    xs = a + h * np.arange(grid.points + 2)

    if params.geometry is Geometry.SPHERE:
        if not (0.0 < a and b < math.pi):
            raise DomainError("sphere residual grid must lie strictly inside (0, pi)")
        energy = model.energy_sphere(params, state).energy + energy_shift
        R = np.array([wavefunctions.radial_sphere(params, state, x) for x in xs])
        x = xs[1:-1]
        p = (D - 1) / np.tan(x)
        q = (
            2 * r0**2 * energy
            - state.L * (state.L + D - 2) / np.sin(x) ** 2
            - 4 * params.omega**2 * r0**4 * np.tan(x / 2) ** 2
        )
    else:
        if not (0.0 < a):
            raise DomainError("hyperboloid residual grid must lie strictly inside (0, inf)")
        energy = model.energy_hyperboloid(params, state).energy + energy_shift
        R = np.array([wavefunctions.radial_hyperboloid(params, state, x) for x in xs])
        x = xs[1:-1]
        p = (D - 1) / np.tanh(x)
        q = (
            2 * r0**2 * energy
            - state.L * (state.L + D - 2) / np.sinh(x) ** 2
            - 4 * params.omega**2 * r0**4 * np.tanh(x / 2) ** 2
        )

    d2 = (R[2:] - 2 * R[1:-1] + R[:-2]) / h**2
    d1 = (R[2:] - R[:-2]) / (2 * h)
    residual = d2 + p * d1 + q * R[1:-1]
    scale = np.max(np.abs(R))
    if scale == 0.0:
        raise NumericalError("wavefunction vanishes on the residual grid")
    return float(np.max(np.abs(residual)) / scale)
