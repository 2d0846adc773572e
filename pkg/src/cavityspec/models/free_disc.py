"""Free particle in a disc of radius R (hbar = M = 1).

Positive energies ``E = k^2/2`` have radial solutions ``J_|m|(k r)`` and the
wall condition

    (gamma - |m|/R) J_|m|(kR) + k J_{|m|-1}(kR) = 0.

Negative energies ``E = -kappa^2/2`` follow from k -> i kappa:

    (gamma - |m|/R) I_|m|(kappa R) + kappa I_{|m|-1}(kappa R) = 0.

Both are functions of ``x = kR`` (or ``kappa R``).  For scanning they are
divided by ``(x/2)^|m| / |m|!`` (and by ``e^x`` on the negative side), which
makes them finite and non-zero at x = 0 with value ``gamma + |m|/R``.  When
that value vanishes (to 1e-12) the disc has the zero mode ``psi = r^|m|``.
"""

from __future__ import annotations

import math

import numpy as np

from .. import specfun
from ..errors import DomainError
from ..rootkit import RootConfig
from .common import (
    EigenState,
    RobinParam,
    check_count,
    check_size,
    finish,
    scan_roots,
    scaled_residual,
)

SIGNS = ("positive_energy", "negative_energy")
ENERGY_UNITS = ("half_inv_MR2", "pi2_half_inv_MR2")
ZERO_MODE_TOL = 1e-12
X_MAX = 195.0


def _check_sign(sign: str) -> str:
    if sign not in SIGNS:
        raise DomainError(f"sign must be one of {SIGNS}, got {sign!r}")
    return sign


def _lead(m: int, x):
    """``(x/2)^m / m!`` with the x = 0 limit handled by the caller."""
    return np.exp(m * np.log(0.5 * x) - math.lgamma(m + 1.0))


def _terms(x, m: int, R: float, bc: RobinParam, sign: str, normalized: bool):
    """Return the two terms (Dirichlet: one) of the residual as arrays."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if sign == "positive_energy":
        f_m, f_m1 = specfun.bessel_j(m, x), specfun.bessel_j(m - 1, x)
    else:
        # e^{-x} I keeps the negative side finite; it drops out of the sign.
        f_m, f_m1 = specfun.bessel_i_scaled(m, x), specfun.bessel_i_scaled(m - 1, x)
        if not normalized:
            f_m, f_m1 = f_m * np.exp(x), f_m1 * np.exp(x)
    f_m = np.atleast_1d(f_m)
    f_m1 = np.atleast_1d(f_m1)
    if bc.is_dirichlet:
        if sign == "positive_energy":
            # The wall value; J_{m-1} only sets its size.
            terms = [f_m]
            extra = f_m1
        else:
            terms = [f_m]
            extra = np.zeros_like(f_m)
    else:
        terms = [(bc.gamma - m / R) * f_m, (x / R) * f_m1]
        extra = None
    if normalized:
        zero = x == 0.0
        safe = np.where(zero, 1.0, x)
        lead = _lead(m, safe)
        terms = [np.where(zero, 0.0, t / lead) for t in terms]
        if extra is not None:
            extra = np.where(zero, 0.0, extra / lead)
        if zero.any():
            # Limits at x = 0 of the normalised terms.
            if bc.is_dirichlet:
                terms[0] = np.where(zero, 1.0, terms[0])
                if extra is not None:
                    extra = np.where(zero, np.inf if (m > 0 and sign == "positive_energy") else 0.0, extra)
            else:
                first = bc.gamma - m / R
                second = 2.0 * m / R
                terms[0] = np.where(zero, first, terms[0])
                terms[1] = np.where(zero, second, terms[1])
    return terms, extra


def _value(x, m, R, bc, sign, normalized):
    terms, _ = _terms(x, m, R, bc, sign, normalized)
    return sum(terms)


def _scale(x, m, R, bc, sign, normalized):
    terms, extra = _terms(x, m, R, bc, sign, normalized)
    if extra is not None:
        return np.hypot(terms[0], extra)
    return sum(np.abs(t) for t in terms)


def _out(v, x):
    return float(v[0]) if np.ndim(x) == 0 else v


def free_residual(x, sign: str, m: int, R: float, bc: RobinParam):
    """Wall condition as a function of ``x = kR`` (or ``kappa R``).

    For the Dirichlet wall this is ``J_|m|(x)`` (``I_|m|(x)``, which has no
    positive root).  ``J_{-1} = -J_1`` and ``I_{-1} = I_1`` make the m = 0
    case work unchanged.
    """
    R = check_size(R, "R")
    _check_sign(sign)
    if np.any(np.asarray(x) < 0):
        raise DomainError("kR must be non-negative")
    return _out(_value(x, abs(int(m)), R, bc, sign, False), x)


def free_residual_scale(x, sign: str, m: int, R: float, bc: RobinParam):
    """Magnitude of the terms of :func:`free_residual`.

    For the Dirichlet wall the envelope ``sqrt(J_m^2 + J_{m-1}^2)`` is used.
    """
    R = check_size(R, "R")
    _check_sign(sign)
    return _out(_scale(x, abs(int(m)), R, bc, sign, False), x)


def free_scaled_residual(x, sign: str, m: int, R: float, bc: RobinParam):
    R = check_size(R, "R")
    mm = abs(int(m))
    f = lambda v: _value(v, mm, R, bc, sign, True)
    s = lambda v: _scale(v, mm, R, bc, sign, True)
    out = scaled_residual(f, s, x)
    return float(out[0]) if np.ndim(x) == 0 else out


def energy_in_unit(x: float, R: float, negative: bool, unit: str) -> float:
    """Energy of a state with ``kR = x`` in the requested unit.

    ``half_inv_MR2`` is ``1/(2 M R^2)`` (energy = x^2), ``pi2_half_inv_MR2``
    is ``pi^2/(2 M R^2)``; ``absolute`` returns ``x^2 / (2 R^2)``.
    """
    e = x * x
    if unit == "half_inv_MR2":
        pass
    elif unit == "pi2_half_inv_MR2":
        e = e / (math.pi * math.pi)
    elif unit == "absolute":
        e = e / (2.0 * R * R)
    else:
        raise DomainError(f"unknown energy unit {unit!r}")
    return -e if negative else e


def absolute_energy(state: EigenState) -> float:
    """Energy in hbar = M = 1 units for any state."""
    if state.model != "disc_free":
        return state.energy
    return energy_in_unit(state.spectral, state.size, state.negative_energy, "absolute")


def has_zero_mode(m: int, R: float, bc: RobinParam) -> bool:
    return (not bc.is_dirichlet) and abs(bc.gamma + abs(int(m)) / R) <= ZERO_MODE_TOL


def free_spectrum(
    R: float,
    bc: RobinParam,
    m: int = 0,
    count: int = 4,
    config: RootConfig | None = None,
    energy_unit: str = "half_inv_MR2",
):
    """Lowest ``count`` levels with angular momentum m.

    Includes the zero mode when ``|gamma + |m|/R| <= 1e-12`` and the single
    wall-bound negative level when ``gamma < -|m|/R`` (searched for on
    ``kappa R in (0, |gamma| R + 10]``).
    """
    R = check_size(R, "R")
    count = check_count(count)
    if energy_unit not in ENERGY_UNITS:
        raise DomainError(f"energy unit must be one of {ENERGY_UNITS}, got {energy_unit!r}")
    config = config or RootConfig()
    mm = abs(int(m))
    states = []

    def add(x, negative=False, zero=False):
        states.append(
            EigenState(
                "disc_free",
                int(m),
                len(states),
                float(x),
                energy_in_unit(float(x), R, negative, energy_unit),
                bc,
                R,
                energy_unit,
                negative,
                zero,
            )
        )

    zero_mode = has_zero_mode(mm, R, bc)
    if not bc.is_dirichlet and not zero_mode and bc.gamma + mm / R < 0:
        f = lambda v: _value(v, mm, R, bc, "negative_energy", True)
        s = lambda v: _scale(v, mm, R, bc, "negative_energy", True)
        top = min(abs(bc.gamma) * R + 10.0, 300.0)
        roots = scan_roots(f, 0.0, top, config, s)
        if len(roots):
            add(roots[0], negative=True)
    if zero_mode:
        add(0.0, zero=True)

    f = lambda v: _value(v, mm, R, bc, "positive_energy", True)
    s = lambda v: _scale(v, mm, R, bc, "positive_energy", True)
    # With a zero mode the normalised residual vanishes at 0 like x^2; start past it.
    start = config.grid_step if zero_mode else 0.0
    upper = math.pi * (count + 0.5 * mm + 2.0)
    while True:
        top = min(upper, X_MAX)
        roots = scan_roots(f, start, top, config, s)
        roots = roots[roots > 0.0]
        if len(states) + len(roots) >= count or top >= X_MAX:
            break
        upper *= 1.5
    for x in roots:
        add(x)
    return finish(states, count, f"disc_free m={m} R={R:g} gamma={bc}")


def free_wavefunction(state: EigenState, R: float | None = None, bc: RobinParam | None = None):
    """Unnormalised radial amplitude of a free-disc state on ``0 <= r <= R``.

    Positive energies give ``J_|m|(k r)``, the wall-bound state
    ``e^{kappa (r - R)} e^{-kappa r} I_|m|(kappa r)`` (of order one at the
    wall), the zero mode ``(r/R)^|m|``.
    """
    R = float(state.size if R is None else R)
    mm = state.m
    x = state.spectral
    edge = R * (1.0 + 1e-12)

    def psi(r):
        ra = np.asarray(r, dtype=float)
        if np.any(ra < 0) or np.any(ra > edge):
            raise DomainError(f"r outside [0, {R:g}]")
        ra_c = np.minimum(ra, R)
        if state.zero_mode:
            val = (ra_c / R) ** mm
        elif state.negative_energy:
            kr = x * ra_c / R
            val = specfun.bessel_i_scaled(mm, kr) * np.exp(kr - x)
        else:
            val = specfun.bessel_j(mm, x * ra_c / R)
        return float(val) if np.ndim(r) == 0 else np.asarray(val, dtype=float)

    return psi
