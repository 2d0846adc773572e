"""Harmonic oscillator centred in the box ``[-L/2, L/2]`` (units hbar = M = omega = 1).

Parity splits the problem.  With ``x = L^2/4`` the regular solutions are

    even:  psi(x) = exp(-x^2/2) M(-nu/2, 1/2, x^2)
    odd:   psi(x) = x exp(-x^2/2) M((1-nu)/2, 3/2, x^2)

which are the parity sums/differences of D_nu(+-sqrt(2) x) divided by a
nu-dependent constant.  The default ("reduced") residuals equal
``exp(L^2/8) * (gamma psi + psi')`` at the right wall:

    even:  (L/2 + gamma) M(-nu/2, 1/2, x) - L (nu+1) M(-nu/2, 3/2, x)
    odd:   (L/2 + gamma) (L/2) M((1-nu)/2, 3/2, x) + M(-(nu+1)/2, 1/2, x)

The ``form="literal"`` residuals are the same conditions written with D_nu at
``z = L/sqrt(2)``.  They carry the factor ``1/Gamma((1-nu)/2)`` (even) or
``1/Gamma(-nu/2)`` (odd), which vanishes at odd (even) integer nu and makes
those points spurious roots, so spectra never use them.
"""

from __future__ import annotations

import math

import numpy as np

from .. import specfun
from ..errors import DomainError
from ..rootkit import RootConfig
from .common import (
    EigenState,
    NormalizedResidual,
    RobinParam,
    check_count,
    check_size,
    finish,
    kummer_terms,
    lower_window,
    oscillator_levels,
    scaled_residual,
    spectral_window,
)

PARITIES = ("even", "odd")
_SQRT2 = math.sqrt(2.0)


def _check_parity(parity: str) -> str:
    if parity not in PARITIES:
        raise DomainError(f"parity must be 'even' or 'odd', got {parity!r}")
    return parity


def _reduced_parts(nu, L: float, bc: RobinParam, parity: str):
    nu = np.asarray(nu, dtype=float)
    x = 0.25 * L * L
    h = 0.5 * L
    if parity == "even":
        if bc.is_dirichlet:
            return kummer_terms([np.ones_like(nu)], [(-0.5 * nu, 0.5)], x)
        return kummer_terms(
            [np.full_like(nu, h + bc.gamma), -L * (nu + 1.0)],
            [(-0.5 * nu, 0.5), (-0.5 * nu, 1.5)],
            x,
        )
    if bc.is_dirichlet:
        return kummer_terms([np.ones_like(nu)], [(0.5 * (1.0 - nu), 1.5)], x)
    return kummer_terms(
        [np.full_like(nu, (h + bc.gamma) * h), np.ones_like(nu)],
        [(0.5 * (1.0 - nu), 1.5), (-0.5 * (nu + 1.0), 0.5)],
        x,
    )


def _normalized(L, bc, parity):
    return NormalizedResidual(lambda nu: _reduced_parts(nu, L, bc, parity))


def _out(value, nu):
    return float(value) if np.ndim(nu) == 0 else value


def _literal_terms(nu: float, L: float, bc: RobinParam, parity: str):
    z = L / _SQRT2
    d_m, d_p = specfun.pcf_d(nu, -z), specfun.pcf_d(nu, z)
    if parity == "even":
        wall = d_m + d_p
    else:
        wall = d_p - d_m
    if bc.is_dirichlet:
        return [wall]
    e_m, e_p = specfun.pcf_d(nu + 1.0, -z), specfun.pcf_d(nu + 1.0, z)
    if parity == "even":
        return [(0.5 * L + bc.gamma) * wall, _SQRT2 * (e_m - e_p)]
    return [(0.5 * L + bc.gamma) * wall, -_SQRT2 * (e_m + e_p)]


def sho_residual(nu, L: float, bc: RobinParam, parity: str = "even", form: str = "reduced"):
    """Spectrum condition for one parity sector; roots in nu are the levels.

    ``form="reduced"`` (default) accepts arrays of nu.  ``form="literal"``
    evaluates the parabolic-cylinder expression literally and is scalar; its
    odd-sector second term carries the sign that follows from differentiating
    the odd wavefunction.
    """
    L = check_size(L, "L")
    _check_parity(parity)
    if form == "reduced":
        value, _, top = _reduced_parts(nu, L, bc, parity)
        return _out(value * np.exp(top), nu)
    if form == "literal":
        if np.ndim(nu) != 0:
            return np.array([sho_residual(float(v), L, bc, parity, form) for v in np.ravel(nu)]).reshape(np.shape(nu))
        return float(sum(_literal_terms(float(nu), L, bc, parity)))
    raise DomainError(f"form must be 'reduced' or 'literal', got {form!r}")


def sho_residual_scale(nu, L: float, bc: RobinParam, parity: str = "even", form: str = "reduced"):
    """Magnitude of the terms that make up :func:`sho_residual`.

    A residual is small in the relevant sense when it is small compared to
    this number.
    """
    L = check_size(L, "L")
    _check_parity(parity)
    if form == "reduced":
        _, scale, top = _reduced_parts(nu, L, bc, parity)
        return _out(scale * np.exp(top), nu)
    if np.ndim(nu) != 0:
        return np.array([sho_residual_scale(float(v), L, bc, parity, form) for v in np.ravel(nu)]).reshape(np.shape(nu))
    z = L / _SQRT2
    nu = float(nu)
    if bc.is_dirichlet:
        return abs(specfun.pcf_d(nu, -z)) + abs(specfun.pcf_d(nu, z))
    d = abs(specfun.pcf_d(nu, -z)) + abs(specfun.pcf_d(nu, z))
    e = abs(specfun.pcf_d(nu + 1.0, -z)) + abs(specfun.pcf_d(nu + 1.0, z))
    return abs(0.5 * L + bc.gamma) * d + _SQRT2 * e


def sho_even_residual(nu, L: float, bc: RobinParam, form: str = "reduced"):
    return sho_residual(nu, L, bc, "even", form)


def sho_odd_residual(nu, L: float, bc: RobinParam, form: str = "reduced"):
    return sho_residual(nu, L, bc, "odd", form)


def sho_spectrum(L: float, bc: RobinParam, parity: str = "even", count: int = 4, config: RootConfig | None = None):
    """Lowest ``count`` levels of one parity sector, with ``E = nu + 1/2``.

    The scan starts at nu = -5 (lower for strongly attractive walls) and
    ends at ``2*count + 4``, widening up to nu = 1000 if the sector's levels
    lie higher (narrow boxes).  A shortfall is reported through
    ``Spectrum.partial``.
    """
    L = check_size(L, "L")
    _check_parity(parity)
    count = check_count(count)
    config = config or RootConfig()
    f = _normalized(L, bc, parity)
    lower = spectral_window(f, lower_window(L * L / 8.0 - 0.5, bc), +1, config)
    roots = oscillator_levels(f, f.scale, lower, 2.0 * count + 4.0, count, config, f.log_norm)
    states = [
        EigenState("sho1d", parity, i, float(nu), float(nu) + 0.5, bc, L)
        for i, nu in enumerate(roots[:count])
    ]
    return finish(states, count, f"sho1d {parity} L={L:g} gamma={bc}")


def sho_wavefunction(state: EigenState, bc: RobinParam | None = None, L: float | None = None):
    """Unnormalised amplitude ``psi(x)`` of an oscillator state, ``|x| <= L/2``."""
    L = float(state.size if L is None else L)
    nu = state.spectral
    parity = _check_parity(state.sector)
    edge = 0.5 * L * (1.0 + 1e-12)

    def psi(x):
        xa = np.asarray(x, dtype=float)
        if np.any(np.abs(xa) > edge):
            raise DomainError(f"x outside the box [-{L / 2:g}, {L / 2:g}]")
        y = xa * xa
        if parity == "even":
            val = np.exp(-0.5 * y) * specfun.kummer_m(-0.5 * nu, 0.5, y)
        else:
            val = xa * np.exp(-0.5 * y) * specfun.kummer_m(0.5 * (1.0 - nu), 1.5, y)
        return float(val) if np.ndim(x) == 0 else val

    return psi


def sho_scaled_residual(nu, L: float, bc: RobinParam, parity: str = "even"):
    """Residual at nu relative to its term scale (see :func:`scaled_residual`)."""
    L = check_size(L, "L")
    _check_parity(parity)
    f = _normalized(L, bc, parity)
    out = scaled_residual(f, f.scale, nu, f.log_norm)
    return float(out[0]) if np.ndim(nu) == 0 else out
