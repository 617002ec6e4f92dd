"""Model configuration, quantum numbers, potentials, and exact spectra.

Units: hbar = m = 1, so energies carry 1/length^2. The well strength is
2 w^2 r0^2 with w the frequency and r0 the curvature radius; D >= 2 is the
space dimension.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

from .errors import DomainError, GeometryError, InfinitePotentialError, NumericalError, UnboundStateError

__all__ = [
    "Geometry",
    "ModelParams",
    "QuantumState",
    "SpectralData",
    "nu",
    "angular_index",
    "potential",
    "potential_ambient",
    "energy_sphere",
    "energy_hyperboloid",
    "continuum_edge_energy",
    "bound_state_max",
    "spectrum_table",
]

# Relative tolerance for the internal cross-check between the polynomial
# energy form and the epsilon form; both are exact algebra, so any mismatch
# beyond roundoff indicates a coding error.
_CONSISTENCY_RTOL = 1e-10


class Geometry(Enum):
    SPHERE = "sphere"
    HYPERBOLOID = "hyperboloid"


@dataclass(frozen=True)
class ModelParams:
    """Physical configuration: geometry, dimension, radius, frequency."""

    geometry: Geometry
    dimension: int
    radius: float
    omega: float

    def __post_init__(self) -> None:
        if not isinstance(self.dimension, int) or self.dimension < 2:
            raise DomainError(f"dimension must be an integer >= 2, got {self.dimension!r}")
        if not (math.isfinite(self.radius) and self.radius > 0):
            raise DomainError(f"radius must be finite and > 0, got {self.radius!r}")
        if not (math.isfinite(self.omega) and self.omega >= 0):
            raise DomainError(f"omega must be finite and >= 0, got {self.omega!r}")


@dataclass(frozen=True)
class QuantumState:
    """Quasiradial number n_r and angular momentum L; N = 2 n_r + L is derived."""

    n_r: int
    L: int
    N: int = field(init=False)

    def __post_init__(self) -> None:
        if not isinstance(self.n_r, int) or self.n_r < 0:
            raise DomainError(f"n_r must be an integer >= 0, got {self.n_r!r}")
        if not isinstance(self.L, int) or self.L < 0:
            raise DomainError(f"L must be an integer >= 0, got {self.L!r}")
        object.__setattr__(self, "N", 2 * self.n_r + self.L)


@dataclass(frozen=True)
class SpectralData:
    """Derived spectral quantities for one state: nu, epsilon, and E."""

    nu: float
    epsilon: float
    energy: float


def angular_index(params: ModelParams, L: int) -> float:
    """The combination L + (D-2)/2 that controls the angular barrier."""
    return L + (params.dimension - 2) / 2


def nu(params: ModelParams, L: int) -> float:
    """Well-strength parameter: sqrt((L + (D-2)/2)^2 + 16 w^2 r0^4).

    The same expression applies on both geometries.
    """
    if L < 0:
        raise DomainError(f"L must be >= 0, got {L!r}")
    m = angular_index(params, L)
    s = 4.0 * params.omega * params.radius**2
    return math.hypot(m, s)


def potential(params: ModelParams, coordinate: float) -> float:
    """Potential in the geodesic polar coordinate.

    Sphere: 2 w^2 r0^2 tan^2(chi/2) on chi in [0, pi); hyperboloid:
    2 w^2 r0^2 tanh^2(tau/2) on tau >= 0.
    """
    strength = 2.0 * params.omega**2 * params.radius**2
    if params.geometry is Geometry.SPHERE:
        if coordinate == math.pi:
            raise InfinitePotentialError("potential diverges at chi = pi")
        if not (0.0 <= coordinate < math.pi):
            raise DomainError(f"sphere coordinate must lie in [0, pi), got {coordinate!r}")
        return strength * math.tan(coordinate / 2.0) ** 2
    if coordinate < 0.0:
        raise DomainError(f"hyperboloid coordinate must be >= 0, got {coordinate!r}")
    return strength * math.tanh(coordinate / 2.0) ** 2


def potential_ambient(params: ModelParams, x0: float) -> float:
    """Potential as a function of the ambient coordinate x0.

    Sphere: 2 w^2 r0^2 (r0 - x0)/(r0 + x0) for |x0| <= r0; hyperboloid:
    2 w^2 r0^2 (x0 - r0)/(x0 + r0) for x0 >= r0. Equals potential() under
    x0 = r0 cos(chi) or x0 = r0 cosh(tau) by the half-angle identities.
    """
    r0 = params.radius
    strength = 2.0 * params.omega**2 * r0**2
    if params.geometry is Geometry.SPHERE:
        if x0 == -r0:
            raise InfinitePotentialError("potential diverges at x0 = -r0 (chi = pi)")
        if not (-r0 <= x0 <= r0):
            raise DomainError(f"sphere requires |x0| <= r0, got x0={x0!r}, r0={r0!r}")
        return strength * (r0 - x0) / (r0 + x0)
    if x0 < r0:
        raise DomainError(f"hyperboloid requires x0 >= r0, got x0={x0!r}, r0={r0!r}")
    return strength * (x0 - r0) / (x0 + r0)


def _check_consistency(epsilon: float, rhs: float) -> None:
    scale = max(abs(epsilon), abs(rhs), 1.0)
    if abs(epsilon - rhs) > _CONSISTENCY_RTOL * scale:
        raise NumericalError(
            f"spectral identity violated: epsilon={epsilon!r} vs {rhs!r}"
        )


def energy_sphere(params: ModelParams, state: QuantumState) -> SpectralData:
    """Exact sphere level: epsilon = (2n_r + L + nu + D/2)^2 and

    E = [(N+1)(N+D) + (2 nu - 1)(N + D/2) + L(L+D-2) - (D/2)(D-1)] / (8 r0^2).
    The two are tied by epsilon = 8 r0^2 E + (D-1)^2 + 16 w^2 r0^4, asserted
    internally.
    """
    if params.geometry is not Geometry.SPHERE:
        raise GeometryError("energy_sphere requires sphere geometry")
    D = params.dimension
    r0 = params.radius
    v = nu(params, state.L)
    N = state.N
    eps = (2 * state.n_r + state.L + v + D / 2) ** 2
    energy = (
        (N + 1) * (N + D)
        + (2 * v - 1) * (N + D / 2)
        + state.L * (state.L + D - 2)
        - (D / 2) * (D - 1)
    ) / (8 * r0**2)
    _check_consistency(eps, 8 * r0**2 * energy + (D - 1) ** 2 + 16 * params.omega**2 * r0**4)
    return SpectralData(nu=v, epsilon=eps, energy=energy)


def energy_hyperboloid(params: ModelParams, state: QuantumState) -> SpectralData:
    """Exact hyperboloid bound level: epsilon = -(2n_r + L - nu + D/2)^2 and

    E = [(2 nu - 1)(N + D/2) - N(N+D-1) - L(L+D-2) + (D/2)(D-1)] / (8 r0^2),
    tied by epsilon = 8 r0^2 E - (D-1)^2 - 16 w^2 r0^4. Raises for states
    outside the bound window (see bound_state_max).
    """
    if params.geometry is not Geometry.HYPERBOLOID:
        raise GeometryError("energy_hyperboloid requires hyperboloid geometry")
    top = bound_state_max(params, state.L)
    if top is None or state.n_r > top:
        raise UnboundStateError(
            f"state (n_r={state.n_r}, L={state.L}) is not bound for "
            f"D={params.dimension}, omega*r0^2={params.omega * params.radius**2:g}"
        )
    D = params.dimension
    r0 = params.radius
    v = nu(params, state.L)
    N = state.N
    eps = -((2 * state.n_r + state.L - v + D / 2) ** 2)
    energy = (
        (2 * v - 1) * (N + D / 2)
        - N * (N + D - 1)
        - state.L * (state.L + D - 2)
        + (D / 2) * (D - 1)
    ) / (8 * r0**2)
    _check_consistency(eps, 8 * r0**2 * energy - (D - 1) ** 2 - 16 * params.omega**2 * r0**4)
    return SpectralData(nu=v, epsilon=eps, energy=energy)


def continuum_edge_energy(params: ModelParams) -> float:
    """Hyperboloid scattering threshold: the energy at which epsilon = 0.

    Equals the asymptotic well height 2 w^2 r0^2 plus the curved-space gap
    (D-1)^2 / (8 r0^2); bound states satisfy E < this value strictly.
    """
    if params.geometry is not Geometry.HYPERBOLOID:
        raise GeometryError("continuum_edge_energy requires hyperboloid geometry")
    D, r0 = params.dimension, params.radius
    return 2 * params.omega**2 * r0**2 + (D - 1) ** 2 / (8 * r0**2)


def bound_state_max(params: ModelParams, L: int) -> int | None:
    """Largest n_r with a normalizable hyperboloid state in this L channel.

    The window is n_r <= floor((nu - L - D/2)/2), refined so that the
    normalization factor (nu - 2 n_r - L - D/2) stays strictly positive:
    when nu - L - D/2 is an exact even integer, the edge state has zero norm
    and is excluded. Returns None when no n_r qualifies.
    """
    if params.geometry is not Geometry.HYPERBOLOID:
        raise GeometryError("bound_state_max requires hyperboloid geometry")
    slack = nu(params, L) - L - params.dimension / 2
    if slack <= 0.0:
        return None
    top = math.floor(slack / 2)
    if slack - 2 * top <= 0.0:
        top -= 1
    return top if top >= 0 else None


def spectrum_table(params: ModelParams, N_max: int) -> list[tuple[QuantumState, SpectralData]]:
    """All states with N = 2 n_r + L <= N_max, sorted by (E, L, n_r).

    On the hyperboloid only bound states appear.
    """
    if N_max < 0:
        raise DomainError(f"N_max must be >= 0, got {N_max!r}")
    rows: list[tuple[QuantumState, SpectralData]] = []
    for L in range(N_max + 1):
        if params.geometry is Geometry.HYPERBOLOID:
            top = bound_state_max(params, L)
            if top is None:
                continue
        else:
            top = None
        for n_r in range((N_max - L) // 2 + 1):
            if top is not None and n_r > top:
                break
            state = QuantumState(n_r=n_r, L=L)
            if params.geometry is Geometry.SPHERE:
                data = energy_sphere(params, state)
            else:
                data = energy_hyperboloid(params, state)
            rows.append((state, data))
    rows.sort(key=lambda item: (item[1].energy, item[0].L, item[0].n_r))
    return rows
