"""The three confined systems and a small model-agnostic front door."""

from __future__ import annotations

from ..errors import DomainError
from .common import (
    BoxGeometry,
    DiscGeometry,
    EigenState,
    RobinParam,
    Spectrum,
)
from .free_disc import (
    absolute_energy,
    free_residual,
    free_residual_scale,
    free_scaled_residual,
    free_spectrum,
    free_wavefunction,
    has_zero_mode,
)
from .iso_disc import (
    iso_residual,
    iso_residual_scale,
    iso_scaled_residual,
    iso_spectrum,
    iso_wavefunction,
    special_radius_nu_eq_m,
    special_radius_nu_eq_m_plus_2,
)
from .sho import (
    sho_even_residual,
    sho_odd_residual,
    sho_residual,
    sho_residual_scale,
    sho_scaled_residual,
    sho_spectrum,
    sho_wavefunction,
)

__all__ = [
    "BoxGeometry",
    "DiscGeometry",
    "EigenState",
    "RobinParam",
    "Spectrum",
    "absolute_energy",
    "free_residual",
    "free_residual_scale",
    "free_scaled_residual",
    "free_spectrum",
    "free_wavefunction",
    "has_zero_mode",
    "iso_residual",
    "iso_residual_scale",
    "iso_scaled_residual",
    "iso_spectrum",
    "iso_wavefunction",
    "residual_family",
    "scaled_residual_of",
    "sho_even_residual",
    "sho_odd_residual",
    "sho_residual",
    "sho_residual_scale",
    "sho_scaled_residual",
    "sho_spectrum",
    "sho_wavefunction",
    "special_radius_nu_eq_m",
    "special_radius_nu_eq_m_plus_2",
    "spectrum",
    "wavefunction",
]


def spectrum(model: str, size: float, bc: RobinParam, sector, count: int, config=None, energy_unit=None):
    """Dispatch to the model's spectrum; ``sector`` is a parity or an integer m."""
    if model == "sho1d":
        return sho_spectrum(size, bc, sector, count, config)
    if model == "disc_iso":
        return iso_spectrum(size, bc, int(sector), count, config)
    if model == "disc_free":
        return free_spectrum(size, bc, int(sector), count, config, energy_unit or "half_inv_MR2")
    raise DomainError(f"unknown model {model!r}")


def wavefunction(state: EigenState):
    """Unnormalised amplitude of any computed state (callable on x or r)."""
    if state.model == "sho1d":
        return sho_wavefunction(state)
    if state.model == "disc_iso":
        return iso_wavefunction(state)
    if state.model == "disc_free":
        return free_wavefunction(state)
    raise DomainError(f"unknown model {state.model!r}")


def residual_family(model: str, size: float, sector):
    """``f(gamma, x)`` for continuation in gamma at fixed size and sector.

    The free disc is parametrised by positive-energy ``kR``.
    """
    if model == "sho1d":
        return lambda g, x: sho_residual(x, size, RobinParam(g), sector)
    if model == "disc_iso":
        return lambda g, x: iso_residual(x, int(sector), size, RobinParam(g))
    if model == "disc_free":
        return lambda g, x: free_residual(x, "positive_energy", int(sector), size, RobinParam(g))
    raise DomainError(f"unknown model {model!r}")


def scaled_residual_of(state: EigenState) -> float:
    """Residual of a computed state relative to its term scale."""
    if state.model == "sho1d":
        return sho_scaled_residual(state.spectral, state.size, state.bc, state.sector)
    if state.model == "disc_iso":
        return iso_scaled_residual(state.spectral, state.m, state.size, state.bc)
    if state.zero_mode:
        return 0.0
    sign = "negative_energy" if state.negative_energy else "positive_energy"
    return free_scaled_residual(state.spectral, sign, state.m, state.size, state.bc)
