"""Normalized quasiradial eigenfunctions on the sphere, the hyperboloid,
and in the flat limit.

All prefactors are assembled in log space (see specfun.LogValue); the well
parameter nu grows like 4 w r0^2, so naive powers and Gamma ratios overflow
long before the function values themselves do.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Sequence

from . import model
from .errors import DomainError, GeometryError, NumericalError, UnboundStateError
from .model import Geometry, ModelParams, QuantumState
from .specfun import LogValue, hyp1f1_terminating, hyp2f1_terminating, log_gamma

__all__ = [
    "SampleKind",
    "RadialSample",
    "normalization_sphere",
    "radial_sphere",
    "radial_hyperboloid",
    "radial_flat",
    "sample",
    "norm_cutoff_hyperboloid",
    "norm_cutoff_flat",
]

_LN2 = math.log(2.0)


class SampleKind(Enum):
    SPHERE_CHI = "sphere_chi"
    HYPERBOLOID_TAU = "hyperboloid_tau"
    FLAT_R = "flat_r"


@dataclass(frozen=True)
class RadialSample:
    """Wavefunction values tabulated on a coordinate grid."""

    params: ModelParams
    state: QuantumState
    kind: SampleKind
    grid: tuple[float, ...]
    values: tuple[float, ...]


def _pow_log(base: float, exponent: float) -> LogValue:
    """(base)^exponent as a LogValue for base >= 0, with 0^0 = 1."""
    if base > 0.0:
        if exponent == 0.0:
            return LogValue(0.0, 1)
        return LogValue(exponent * math.log(base), 1)
    if base == 0.0:
        if exponent > 0.0:
            return LogValue(0.0, 0)
        if exponent == 0.0:
            return LogValue(0.0, 1)
        raise DomainError("0 raised to a negative power")
    raise DomainError(f"negative base {base!r} in power factor")


def _log_sinh(x: float) -> float:
    if x <= 0.0:
        raise DomainError("log_sinh requires x > 0")
    if x < 2.0:
        return math.log(math.sinh(x))
    return x + math.log1p(-math.exp(-2.0 * x)) - _LN2


def _log_cosh(x: float) -> float:
    # exact at x = 0: log1p(1) - ln 2 = 0
    return x + math.log1p(math.exp(-2.0 * x)) - _LN2


@lru_cache(maxsize=512)
def _sphere_log_norm(params: ModelParams, state: QuantumState) -> float:
    D = params.dimension
    n_r, L = state.n_r, state.L
    v = model.nu(params, L)
    log_c2 = (
        math.log(2 * n_r + L + v + D / 2)
        + log_gamma(n_r + L + v + D / 2)
        + log_gamma(n_r + L + D / 2)
        - (D - 1) * _LN2
        - D * math.log(params.radius)
        - log_gamma(n_r + 1)
        - log_gamma(n_r + v + 1)
        - 2 * log_gamma(L + D / 2)
    )
    return 0.5 * log_c2


@lru_cache(maxsize=512)
def _hyperboloid_log_norm(params: ModelParams, state: QuantumState) -> float:
    D = params.dimension
    n_r, L = state.n_r, state.L
    v = model.nu(params, L)
    kappa = v - 2 * n_r - L - D / 2  # > 0 for bound states
    log_sq = (
        math.log(kappa)
        + log_gamma(v - n_r)
        + log_gamma(n_r + L + D / 2)
        - (D - 1) * _LN2
        - D * math.log(params.radius)
        - log_gamma(n_r + 1)
        - log_gamma(v - n_r - L - D / 2 + 1)
    )
    return 0.5 * log_sq - log_gamma(L + D / 2)


def normalization_sphere(params: ModelParams, state: QuantumState) -> float:
    """Constant C making r0^D * integral |R|^2 sin^(D-1)(chi) d(chi) equal 1.

    C^2 = (2n_r+L+nu+D/2) G(n_r+L+nu+D/2) G(n_r+L+D/2)
          / (2^(D-1) r0^D n_r! G(n_r+nu+1) G(L+D/2)^2), with G the Gamma
    function, evaluated through log-space ratios.
    """
    if params.geometry is not Geometry.SPHERE:
        raise GeometryError("normalization_sphere requires sphere geometry")
    return math.exp(_sphere_log_norm(params, state))


def radial_sphere(params: ModelParams, state: QuantumState, chi: float) -> float:
    """Normalized quasiradial eigenfunction on the sphere.

    R(chi) = C sin^L(chi/2) cos^(nu-D/2+1)(chi/2)
             * 2F1(-n_r, n_r+L+nu+D/2; L+D/2; sin^2(chi/2)) on chi in [0, pi].
    """
    if params.geometry is not Geometry.SPHERE:
        raise GeometryError("radial_sphere requires sphere geometry")
    if not (0.0 <= chi <= math.pi):
        raise DomainError(f"chi must lie in [0, pi], got {chi!r}")
    D = params.dimension
    v = model.nu(params, state.L)
    half = chi / 2.0
    s = math.sin(half)
    c = 0.0 if chi == math.pi else math.cos(half)
    poly = hyp2f1_terminating(
        state.n_r, state.n_r + state.L + v + D / 2, state.L + D / 2, s * s
    )
    lv = (
        LogValue(_sphere_log_norm(params, state), 1)
        * _pow_log(s, float(state.L))
        * _pow_log(c, v - D / 2 + 1)
        * LogValue.of(poly)
    )
    return lv.value


def _require_bound(params: ModelParams, state: QuantumState) -> None:
    top = model.bound_state_max(params, state.L)
    if top is None or state.n_r > top:
        raise UnboundStateError(
            f"state (n_r={state.n_r}, L={state.L}) is not bound for "
            f"D={params.dimension}, omega*r0^2={params.omega * params.radius**2:g}"
        )


def radial_hyperboloid(params: ModelParams, state: QuantumState, tau: float) -> float:
    """Normalized bound quasiradial eigenfunction on the hyperboloid.

    R(tau) = B sinh^L(tau/2) cosh^(2n_r-nu-D/2+1)(tau/2)
             * 2F1(-n_r, nu-n_r; L+D/2; tanh^2(tau/2)), with B the log-space
    prefactor whose square carries (nu-2n_r-L-D/2) and four Gamma factors.
    Normalization is r0^D * integral |R|^2 sinh^(D-1)(tau) d(tau) = 1 and is
    confirmed independently by quadrature in the test suite.
    """
    if params.geometry is not Geometry.HYPERBOLOID:
        raise GeometryError("radial_hyperboloid requires hyperboloid geometry")
    _require_bound(params, state)
    if tau < 0.0:
        raise DomainError(f"tau must be >= 0, got {tau!r}")
    D = params.dimension
    v = model.nu(params, state.L)
    half = tau / 2.0
    t = math.tanh(half)
    poly = hyp2f1_terminating(state.n_r, v - state.n_r, state.L + D / 2, t * t)
    decay_exp = 2 * state.n_r - v - D / 2 + 1
    if tau == 0.0:
        sinh_part = _pow_log(0.0, float(state.L))
    else:
        sinh_part = LogValue(state.L * _log_sinh(half), 1)
    lv = (
        LogValue(_hyperboloid_log_norm(params, state), 1)
        * sinh_part
        * LogValue(decay_exp * _log_cosh(half), 1)
        * LogValue.of(poly)
    )
    return lv.value


def radial_flat(D: int, omega: float, state: QuantumState, r: float) -> float:
    """Normalized radial eigenfunction of the flat D-dimensional oscillator.

    R(r) = w^(L/2+D/4)/G(L+D/2) * sqrt(2 G((N+L+D)/2) / n_r!) r^L e^(-w r^2/2)
           * 1F1(-n_r; L+D/2; w r^2), normalized against r^(D-1) dr.
    """
    if not isinstance(D, int) or D < 2:
        raise DomainError(f"dimension must be an integer >= 2, got {D!r}")
    if not (omega > 0.0 and math.isfinite(omega)):
        raise DomainError(f"omega must be finite and > 0, got {omega!r}")
    if r < 0.0:
        raise DomainError(f"r must be >= 0, got {r!r}")
    L, n_r, N = state.L, state.n_r, state.N
    log_pre = (
        (L / 2 + D / 4) * math.log(omega)
        - log_gamma(L + D / 2)
        + 0.5 * (_LN2 + log_gamma((N + L + D) / 2) - log_gamma(n_r + 1))
    )
    poly = hyp1f1_terminating(n_r, L + D / 2, omega * r * r)
    lv = (
        LogValue(log_pre - omega * r * r / 2.0, 1)
        * _pow_log(r, float(L))
        * LogValue.of(poly)
    )
    return lv.value


_KIND_DOMAIN_TOP = {
    SampleKind.SPHERE_CHI: math.pi,
    SampleKind.HYPERBOLOID_TAU: math.inf,
    SampleKind.FLAT_R: math.inf,
}


def sample(
    params: ModelParams,
    state: QuantumState,
    kind: SampleKind,
    grid: Sequence[float],
) -> RadialSample:
    """Tabulate the matching radial function on a strictly increasing grid."""
    pts = tuple(float(g) for g in grid)
    if not pts:
        return RadialSample(params=params, state=state, kind=kind, grid=(), values=())
    top = _KIND_DOMAIN_TOP[kind]
    for a, b in zip(pts, pts[1:]):
        if not a < b:
            raise DomainError("grid must be strictly increasing")
    if pts[0] < 0.0 or pts[-1] > top:
        raise DomainError(f"grid exceeds the {kind.value} domain [0, {top}]")
    if kind is SampleKind.SPHERE_CHI:
        values = tuple(radial_sphere(params, state, x) for x in pts)
    elif kind is SampleKind.HYPERBOLOID_TAU:
        values = tuple(radial_hyperboloid(params, state, x) for x in pts)
    else:
        values = tuple(radial_flat(params.dimension, params.omega, state, x) for x in pts)
    if not all(math.isfinite(v) for v in values):
        raise NumericalError("non-finite wavefunction value on grid")
    return RadialSample(params=params, state=state, kind=kind, grid=pts, values=values)


def norm_cutoff_hyperboloid(params: ModelParams, state: QuantumState) -> float:
    """tau beyond which |R|^2 sinh^(D-1) contributes < 1e-16 of the integral.

    The integrand decays like exp(-2 kappa tau) with kappa = nu - N - D/2;
    the cutoff adds the classical turning point to a 2*kappa*tau >= 40 tail
    budget. Doubling this cutoff must leave quadratures unchanged to 1e-12,
    which the test suite asserts.
    """
    _require_bound(params, state)
    v = model.nu(params, state.L)
    D = params.dimension
    kappa = v - state.N - D / 2
    arg = max((v * v - 0.25) / (kappa * kappa), 1.0)
    tau_turn = 2.0 * math.acosh(math.sqrt(arg))
    return tau_turn + (40.0 + max(0.0, -math.log(2.0 * kappa))) / (2.0 * kappa)


def norm_cutoff_flat(D: int, omega: float, state: QuantumState) -> float:
    """r beyond which the flat integrand is < 1e-16 of its scale."""
    return math.sqrt((40.0 + 2.0 * state.N + D) / omega) * 1.2
