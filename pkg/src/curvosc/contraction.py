"""Flat-space limit studies: how fast the curved spectra and wavefunctions
approach the D-dimensional oscillator as the curvature radius grows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import model, oracle, wavefunctions
from .errors import AccuracyError, DomainError, UnboundStateError
from .model import Geometry, ModelParams, QuantumState

__all__ = [
    "ContractionStudy",
    "flat_limit_energy",
    "energy_contraction",
    "wavefunction_contraction",
    "combined_study",
]


@dataclass(frozen=True)
class ContractionStudy:
    """Error ladders along increasing curvature radii.

    energy_errors[i] = |E(radii[i]) - w (N + D/2)|; l2_errors[i] is the
    flat-measure L2 distance between the curved and flat radial functions.
    Either list may be empty when only the other half of the study ran.
    energy_slope is the fitted log-log decay rate, or None when an exact
    coincidence makes every energy error zero.
    """

    geometry: Geometry
    dimension: int
    omega: float
    state: QuantumState
    radii: tuple[float, ...]
    energy_errors: tuple[float, ...]
    l2_errors: tuple[float, ...]
    energy_slope: float | None = None


def _check_radii(radii: Sequence[float]) -> tuple[float, ...]:
    rs = tuple(float(r) for r in radii)
    if not rs:
        raise DomainError("radii must be non-empty")
    if any(r <= 0 for r in rs):
        raise DomainError("radii must be positive")
    if any(a >= b for a, b in zip(rs, rs[1:])):
        raise DomainError("radii must be strictly increasing")
    return rs


def flat_limit_energy(D: int, omega: float, state: QuantumState) -> float:
    """Limit of both curved spectra as r0 grows: w (N + D/2)."""
    return omega * (state.N + D / 2)


def _curved_energy(geometry: Geometry, D: int, omega: float, state: QuantumState, r0: float) -> float:
    params = ModelParams(geometry=geometry, dimension=D, radius=r0, omega=omega)
    if geometry is Geometry.SPHERE:
        return model.energy_sphere(params, state).energy
    try:
        return model.energy_hyperboloid(params, state).energy
    except UnboundStateError as exc:
        raise UnboundStateError(f"state unbound at r0={r0:g}: {exc}") from exc


def energy_contraction(
    geometry: Geometry,
    D: int,
    omega: float,
    state: QuantumState,
    radii: Sequence[float],
) -> ContractionStudy:
    """Energy half of the study: |E(r0) - w(N + D/2)| along the radii.

    The decay is O(1/r0^2); the fitted log-log slope is recorded so tests
    can pin the rate rather than assume it. Exactly zero errors (the D=2
    ground-state coincidence E = w) leave the slope as None.
    """
    if not (omega > 0):
        raise DomainError("contraction studies require omega > 0")
    rs = _check_radii(radii)
    limit = flat_limit_energy(D, omega, state)
    errors = tuple(abs(_curved_energy(geometry, D, omega, state, r0) - limit) for r0 in rs)
    slope = None
    if all(e > 0 for e in errors) and len(rs) >= 2:
        slope = float(np.polyfit(np.log(rs), np.log(errors), 1)[0])
    return ContractionStudy(
        geometry=geometry,
        dimension=D,
        omega=omega,
        state=state,
        radii=rs,
        energy_errors=errors,
        l2_errors=(),
        energy_slope=slope,
    )


def _curved_radial(params: ModelParams, state: QuantumState, coordinate: float) -> float:
    if params.geometry is Geometry.SPHERE:
        return wavefunctions.radial_sphere(params, state, coordinate)
    return wavefunctions.radial_hyperboloid(params, state, coordinate)


def wavefunction_contraction(
    geometry: Geometry,
    D: int,
    omega: float,
    state: QuantumState,
    radii: Sequence[float],
    r_max: float,
    grid_points: int = 512,
) -> ContractionStudy:
    """Wavefunction half: flat-measure L2 distance d(r0) along the radii.

    d(r0)^2 = integral_0^r_max (R_curved(r/r0) - R_flat(r))^2 r^(D-1) dr,
    with the curved function carried over through the arc-length map
    r = r0 * coordinate. r_max must already contain the flat tail (checked:
    the flat function at r_max is below 1e-12 of its peak).
    """
    if not (omega > 0):
        raise DomainError("contraction studies require omega > 0")
    rs = _check_radii(radii)
    if geometry is Geometry.SPHERE and r_max >= math.pi * rs[0]:
        raise DomainError(
            f"r_max={r_max:g} maps beyond chi = pi at the smallest radius {rs[0]:g}"
        )

    probe = np.linspace(0.0, r_max, 257)
    flat_vals = np.array(
        [wavefunctions.radial_flat(D, omega, state, r) for r in probe]
    )
    peak = float(np.max(np.abs(flat_vals)))
    if abs(flat_vals[-1]) > 1e-12 * peak:
        raise DomainError(
            f"r_max={r_max:g} does not cover the flat wavefunction support "
            f"(tail/peak = {abs(flat_vals[-1]) / peak:.2e})"
        )

    panels = max(4, grid_points // 16)
    distances = []
    for r0 in rs:
        params = ModelParams(geometry=geometry, dimension=D, radius=r0, omega=omega)
        if geometry is Geometry.HYPERBOLOID:
            top = model.bound_state_max(params, state.L)
            if top is None or state.n_r > top:
                raise UnboundStateError(f"state unbound at r0={r0:g}")

        def integrand(r: float, p: ModelParams = params) -> float:
            curved = _curved_radial(p, state, r / p.radius)
            flat = wavefunctions.radial_flat(D, omega, state, r)
            if not (math.isfinite(curved) and math.isfinite(flat)):
                raise AccuracyError(
                    f"wavefunction evaluation lost accuracy at r={r:g}, r0={p.radius:g}"
                )
            return (curved - flat) ** 2 * r ** (D - 1)

        distances.append(math.sqrt(oracle.gauss_legendre(integrand, 0.0, r_max, panels, 16)))

    return ContractionStudy(
        geometry=geometry,
        dimension=D,
        omega=omega,
        state=state,
        radii=rs,
        energy_errors=(),
        l2_errors=tuple(distances),
    )


def combined_study(
    geometry: Geometry,
    D: int,
    omega: float,
    state: QuantumState,
    radii: Sequence[float],
    r_max: float,
    grid_points: int = 512,
) -> ContractionStudy:
    """Both halves of the study merged into one record."""
    energy_part = energy_contraction(geometry, D, omega, state, radii)
    l2_part = wavefunction_contraction(geometry, D, omega, state, radii, r_max, grid_points)
    return ContractionStudy(
        geometry=geometry,
        dimension=D,
        omega=omega,
        state=state,
        radii=energy_part.radii,
        energy_errors=energy_part.energy_errors,
        l2_errors=l2_part.l2_errors,
        energy_slope=energy_part.energy_slope,
    )
