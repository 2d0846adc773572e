"""Isotropic oscillator in a disc of radius R (units hbar = M = omega = 1).

The regular radial solution of angular momentum m is

    psi(r) = exp(-r^2/2) r^|m| M((|m| - nu)/2, |m| + 1, r^2),   E = nu + 1.

With ``a = (|m| - nu)/2`` and regularized Kummer functions the wall
condition reads

    (R - |m|/R - gamma) M~(a, |m|+1, R^2) + R (nu - |m|) M~(a+1, |m|+2, R^2) = 0,

and the left side equals ``-(gamma psi + psi') e^{R^2/2} R^{-|m|} / |m|!``
at r = R.  The ``form="literal"`` variant multiplies the first term by
``1 + |m|``; that factor is not consistent with the wavefunction for
``m != 0`` and spectra do not use it.
"""

from __future__ import annotations

import math

import numpy as np

from .. import specfun
from ..errors import DomainError
from ..rootkit import RootConfig, find_roots
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

SPECIAL_RADIUS_TOL = 1e-10


def _parts(nu, m: int, R: float, bc: RobinParam, form: str = "reduced"):
    nu = np.asarray(nu, dtype=float)
    m = abs(int(m))
    x = R * R
    a = 0.5 * (m - nu)
    g1 = 1.0 / math.factorial(m)
    if bc.is_dirichlet:
        return kummer_terms([np.full_like(nu, g1)], [(a, m + 1.0)], x)
    c1 = (R - m / R - bc.gamma) * g1
    if form == "literal":
        c1 *= 1.0 + m
    elif form != "reduced":
        raise DomainError(f"form must be 'reduced' or 'literal', got {form!r}")
    g2 = g1 / (m + 1.0)
    return kummer_terms(
        [np.full_like(nu, c1), R * (nu - m) * g2],
        [(a, m + 1.0), (a + 1.0, m + 2.0)],
        x,
    )


def _out(value, nu):
    return float(value) if np.ndim(nu) == 0 else value


def iso_residual(nu, m: int, R: float, bc: RobinParam, form: str = "reduced"):
    """Spectrum condition for angular momentum m; roots in nu are the levels.

    For the Dirichlet wall this is the wall value ``M~(a, |m|+1, R^2)``.
    Accepts arrays of nu.
    """
    R = check_size(R, "R")
    value, _, top = _parts(nu, m, R, bc, form)
    return _out(value * np.exp(top), nu)


def iso_residual_scale(nu, m: int, R: float, bc: RobinParam, form: str = "reduced"):
    """Magnitude of the terms that make up :func:`iso_residual`."""
    R = check_size(R, "R")
    _, scale, top = _parts(nu, m, R, bc, form)
    return _out(scale * np.exp(top), nu)


def _normalized(m, R, bc):
    return NormalizedResidual(lambda nu: _parts(nu, m, R, bc))


def iso_scaled_residual(nu, m: int, R: float, bc: RobinParam):
    R = check_size(R, "R")
    f = _normalized(m, R, bc)
    out = scaled_residual(f, f.scale, nu, f.log_norm)
    return float(out[0]) if np.ndim(nu) == 0 else out


def iso_spectrum(R: float, bc: RobinParam, m: int = 0, count: int = 4, config: RootConfig | None = None):
    """Lowest ``count`` levels with angular momentum m, ``E = nu + 1``.

    Only ``|m|`` enters, so ``m`` and ``-m`` give identical output.  The nu
    window is ``[-5, 2*count + 4 + |m|]``, moved down for strongly
    attractive walls and widened upward when needed.
    """
    R = check_size(R, "R")
    count = check_count(count)
    config = config or RootConfig()
    mm = abs(int(m))
    f = _normalized(mm, R, bc)
    # Large negative nu: the finite-gamma residual tends to -inf, the wall value to +inf.
    sign = +1 if bc.is_dirichlet else -1
    lower = spectral_window(f, lower_window(0.5 * R * R - 1.0, bc), sign, config)
    roots = oscillator_levels(f, f.scale, lower, 2.0 * count + 4.0 + mm, count, config, f.log_norm)
    states = [
        EigenState("disc_iso", int(m), i, float(nu), float(nu) + 1.0, bc, R)
        for i, nu in enumerate(roots[:count])
    ]
    return finish(states, count, f"disc_iso m={m} R={R:g} gamma={bc}")


def iso_wavefunction(state: EigenState, R: float | None = None, bc: RobinParam | None = None):
    """Unnormalised radial amplitude ``psi(r)`` on ``0 <= r <= R``."""
    R = float(state.size if R is None else R)
    nu = state.spectral
    mm = state.m
    edge = R * (1.0 + 1e-12)

    def psi(r):
        ra = np.asarray(r, dtype=float)
        if np.any(ra < 0) or np.any(ra > edge):
            raise DomainError(f"r outside [0, {R:g}]")
        y = ra * ra
        val = np.exp(-0.5 * y) * ra**mm * specfun.kummer_m(0.5 * (mm - nu), mm + 1.0, y)
        return float(val) if np.ndim(r) == 0 else val

    return psi


def _verify_radius(R: float, nu: float, m: int, gamma: float) -> bool:
    if not (0.0 < R <= 50.0):
        return False
    bc = RobinParam(gamma)
    r = abs(iso_residual(nu, m, R, bc))
    return r <= SPECIAL_RADIUS_TOL * max(1.0, iso_residual_scale(nu, m, R, bc))


def special_radius_nu_eq_m(m: int, gamma: float) -> float:
    """Radius at which ``nu = |m|`` is an eigenvalue: ``R = (gamma + sqrt(4|m| + gamma^2)) / 2``."""
    mm = abs(int(m))
    gamma = float(gamma)
    R = 0.5 * (gamma + math.sqrt(4.0 * mm + gamma * gamma))
    if not R > 1e-14:
        raise DomainError(f"no cavity: nu=|m| radius is {R:g} for m={m}, gamma={gamma:g}")
    if not _verify_radius(R, float(mm), mm, gamma):
        raise DomainError(f"radius {R:g} fails the residual check")
    return R


def quartic_coefficients(m: int, gamma: float):
    """Coefficients (highest power first) of the nu = |m|+2 radius condition.

    ``-2R^2 + (1 + |m| - R^2)(|m| - R^2 + gamma R) = 0`` expanded in R.
    """
    mm = abs(int(m))
    g = float(gamma)
    return np.array([1.0, -g, -(2.0 * mm + 3.0), (mm + 1.0) * g, mm * (mm + 1.0)])


def _quartic_roots(m: int, gamma: float):
    coeffs = quartic_coefficients(m, gamma)
    poly = np.poly1d(coeffs)
    dpoly = poly.deriv()
    f = lambda R: poly(R)
    roots = find_roots(f, (1e-9, 50.0), RootConfig(grid_step=1e-3, tol_x=1e-12), vectorized=True)
    polished = []
    for R in roots:
        for _ in range(3):
            d = dpoly(R)
            if d == 0:
                break
            R = R - poly(R) / d
        polished.append(float(R))
    return polished


def special_radius_nu_eq_m_plus_2(m: int, gamma_spec="neumann"):
    """Radii at which ``nu = |m| + 2`` is an eigenvalue.

    ``gamma_spec`` is a real gamma, ``"neumann"`` (gamma = 0, closed form
    ``R^2 = (3 + 2|m| +- sqrt(9 + 8|m|))/2``) or ``"gamma_eq_R"`` (gamma = R,
    closed form ``R^2 = |m|(|m|+1)/(|m|+2)``).  Every radius is checked
    against the residual; non-positive roots are dropped.
    """
    mm = abs(int(m))
    nu = mm + 2.0
    out = []
    if gamma_spec == "neumann":
        disc = math.sqrt(9.0 + 8.0 * mm)
        for sq in ((3.0 + 2.0 * mm + disc) / 2.0, (3.0 + 2.0 * mm - disc) / 2.0):
            if sq > 1e-14:
                out.append((math.sqrt(sq), 0.0))
    elif gamma_spec == "gamma_eq_R":
        sq = mm * (mm + 1.0) / (mm + 2.0)
        if sq > 1e-14:
            R = math.sqrt(sq)
            out.append((R, R))
    else:
        try:
            gamma = float(gamma_spec)
        except (TypeError, ValueError):
            raise DomainError(f"unknown gamma specification {gamma_spec!r}") from None
        out = [(R, gamma) for R in _quartic_roots(mm, gamma)]
    radii = []
    for R, g in sorted(out):
        q = np.polyval(quartic_coefficients(mm, g), R)
        if abs(q) > 1e-9 * max(1.0, R**4):
            raise DomainError(f"closed-form radius {R:g} does not solve the quartic")
        if not _verify_radius(R, nu, mm, g):
            raise DomainError(f"radius {R:g} fails the residual check")
        radii.append(R)
    return radii
