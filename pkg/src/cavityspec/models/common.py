"""Types shared by the three confined systems."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .. import specfun
from ..errors import DomainError
from ..rootkit import RootConfig, brackets_from_samples, dedupe, refine_all, scan_grid

log = logging.getLogger(__name__)

MODELS = ("sho1d", "disc_free", "disc_iso")
ENERGY_UNITS = ("omega", "half_inv_MR2", "pi2_half_inv_MR2")

# Residuals are accepted as roots when |r| <= ROOT_RTOL * (term scale).
ROOT_RTOL = 1e-8
MAX_SIZE = 50.0
# Upper end of oscillator nu scans.
NU_MAX = 1000.0


@dataclass(frozen=True)
class RobinParam:
    """Wall parameter gamma in ``gamma * psi + n . grad psi = 0``.

    ``gamma=None`` is the Dirichlet wall (gamma = infinity), which the models
    treat with a dedicated residual rather than a large number.
    """

    gamma: float | None = None

    def __post_init__(self):
        if self.gamma is not None:
            g = float(self.gamma)
            if not math.isfinite(g):
                raise DomainError("finite gamma must be a finite real; use RobinParam.dirichlet()")
            object.__setattr__(self, "gamma", g)

    @classmethod
    def finite(cls, gamma: float) -> "RobinParam":
        return cls(float(gamma))

    @classmethod
    def dirichlet(cls) -> "RobinParam":
        return cls(None)

    @classmethod
    def parse(cls, text) -> "RobinParam":
        if isinstance(text, RobinParam):
            return text
        if text is None:
            return cls.dirichlet()
        if isinstance(text, str) and text.strip().lower() in ("dirichlet", "inf", "+inf", "infinity"):
            return cls.dirichlet()
        try:
            value = float(text)
        except (TypeError, ValueError):
            raise DomainError(f"gamma must be a real number or 'dirichlet', got {text!r}") from None
        if math.isinf(value) and value > 0:
            return cls.dirichlet()
        return cls(value)

    @property
    def is_dirichlet(self) -> bool:
        return self.gamma is None

    def __str__(self):
        return "dirichlet" if self.gamma is None else repr(self.gamma)


@dataclass(frozen=True)
class BoxGeometry:
    """1-d box ``[-L/2, L/2]`` in oscillator lengths."""

    L: float

    def __post_init__(self):
        if not (0.0 < float(self.L) <= MAX_SIZE):
            raise DomainError(f"box width L must lie in (0, {MAX_SIZE:g}], got {self.L}")

    @property
    def size(self) -> float:
        return float(self.L)


@dataclass(frozen=True)
class DiscGeometry:
    """Disc of radius R."""

    R: float

    def __post_init__(self):
        if not (0.0 < float(self.R) <= MAX_SIZE):
            raise DomainError(f"disc radius R must lie in (0, {MAX_SIZE:g}], got {self.R}")

    @property
    def size(self) -> float:
        return float(self.R)


def check_size(value: float, name: str) -> float:
    value = float(value)
    if not (0.0 < value <= MAX_SIZE):
        raise DomainError(f"{name} must lie in (0, {MAX_SIZE:g}], got {value}")
    return value


@dataclass(frozen=True)
class EigenState:
    """One computed level.

    ``spectral`` is nu for the oscillators and kR (or kappa R for a
    negative-energy disc state, flagged by ``negative_energy``) for the free
    disc.  ``energy`` is in units of omega for the oscillators and of
    ``1/(M R^2)`` scaled per ``energy_unit`` for the free disc.
    """

    model: str
    sector: object
    index: int
    spectral: float
    energy: float
    bc: RobinParam
    size: float
    energy_unit: str = "omega"
    negative_energy: bool = False
    zero_mode: bool = False

    @property
    def m(self) -> int:
        return abs(int(self.sector)) if self.model != "sho1d" else 0


@dataclass
class Spectrum:
    """Ordered list of states; ``partial`` is set when fewer than requested were found."""

    states: list = field(default_factory=list)
    requested: int = 0
    partial: bool = False
    message: str = ""

    def __iter__(self):
        return iter(self.states)

    def __len__(self):
        return len(self.states)

    def __getitem__(self, i):
        return self.states[i]

    @property
    def spectral(self) -> np.ndarray:
        return np.array([s.spectral for s in self.states])

    @property
    def energies(self) -> np.ndarray:
        return np.array([s.energy for s in self.states])


def check_count(count: int) -> int:
    if int(count) != count or not (1 <= count <= 20):
        raise DomainError(f"count must be an integer in [1, 20], got {count}")
    return int(count)


class NormalizedResidual:
    """Residual divided by ``exp(log_norm)``, with its term scale.

    ``parts(x)`` returns ``(value, scale, log_norm)``; the three accessors
    share the most recent evaluation.  The normalisation may jump with x
    (a series that terminates at integer parameters is much smaller than
    its neighbours), which :func:`scaled_residual` accounts for.
    """

    def __init__(self, parts):
        self._parts = parts
        self._key = None
        self._last = None

    def _eval(self, x):
        arr = np.asarray(x, dtype=float)
        key = (arr.shape, arr.tobytes())
        if key != self._key:
            self._last = self._parts(x)
            self._key = key
        return self._last

    def __call__(self, x):
        return self._eval(x)[0]

    def scale(self, x):
        return self._eval(x)[1]

    def log_norm(self, x):
        return self._eval(x)[2]


def scan_roots(residual, a: float, b: float, config: RootConfig, scale=None, log_norm=None):
    """Sign-change roots of a vectorised residual on ``[a, b]``.

    When ``scale`` is given, candidates whose residual exceeds
    ``ROOT_RTOL * scale`` are discarded (a sign change across a pole).
    """
    xs = scan_grid(a, b, config.grid_step)
    with np.errstate(all="ignore"):
        fs = np.asarray(residual(xs), dtype=float)
    brackets = brackets_from_samples(xs, fs)
    accept = None
    if scale is not None:
        accept = lambda x, f: f <= ROOT_RTOL * np.asarray(scale(x), dtype=float)
    roots = refine_all(residual, brackets, config, accept=accept)
    if scale is not None and len(roots):
        ok = scaled_residual(residual, scale, roots, log_norm) <= ROOT_RTOL
        if not ok.all():
            log.warning("discarded %d sign changes that are not roots", int((~ok).sum()))
        roots = roots[ok]
    return dedupe(roots, config.tol_x)


def scaled_residual(residual, scale, x, log_norm=None):
    """``|r(x)|`` divided by the size of the terms that make up ``r``.

    Besides the series terms (``scale``) the spectral variable itself enters
    as a term of size ``max(1, |x|) * |dr/dx|``.  For very steep residuals,
    such as deep-box Dirichlet conditions, this is the dominant one: a single
    ulp in x then moves r by far more than the summation error, and only the
    argument term measures r on a scale it can actually reach.

    When the residual is normalised point by point, ``log_norm`` gives the
    normalisation so the neighbours used for the slope can be brought onto
    the normalisation at x.
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    h = 1e-6 * np.maximum(1.0, np.abs(x))
    with np.errstate(all="ignore"):
        f = np.asarray(residual(x), dtype=float)
        s = np.asarray(scale(x), dtype=float)
        t0 = None if log_norm is None else np.asarray(log_norm(x), dtype=float)
        ends = []
        for xe in (x + h, x - h):
            fe = np.asarray(residual(xe), dtype=float)
            if t0 is not None:
                fe = fe * np.exp(np.asarray(log_norm(xe), dtype=float) - t0)
            ends.append(fe)
        slope = (ends[0] - ends[1]) / (2.0 * h)
        arg_term = np.maximum(1.0, np.abs(x)) * np.abs(slope)
        out = np.abs(f) / (s + arg_term)
    # An overflowing slope means the residual is steeper than any rounding.
    return np.where(np.isnan(out), np.where(np.isinf(arg_term), 0.0, np.inf), out)


def finish(states, count: int, what: str) -> Spectrum:
    states = states[:count]
    if len(states) < count:
        msg = f"{what}: found {len(states)} of {count} requested levels in the search window"
        log.warning(msg)
        return Spectrum(states, count, True, msg)
    return Spectrum(states, count, False, "")


def five_point_derivative(fn, x: float, h: float, side: int) -> float:
    """One-sided 5-point derivative; ``side=-1`` samples to the left of x."""
    s = -h if side < 0 else h
    f0, f1, f2, f3, f4 = (float(fn(x + k * s)) for k in range(5))
    # Differences against f0 keep the stencil exact on constants.
    return (48.0 * (f1 - f0) - 36.0 * (f2 - f0) + 16.0 * (f3 - f0) - 3.0 * (f4 - f0)) / (12.0 * s)


# Residual values whose rounding bound exceeds this fraction of the value
# are recomputed with exactly summed Kummer series.
KUMMER_RTOL = 1e-2


def kummer_terms(coeffs, params, x: float):
    """Return ``(value, scale, log_norm)`` for ``sum c_i M(a_i, b_i, x)``.

    ``value`` and ``scale`` are both divided by ``exp(log_norm)`` so they stay
    finite for any nu; the scale is ``sum |c_i M(a_i, b_i, x)|``.  Where the
    double-precision series cannot pin ``value`` down to ``KUMMER_RTOL`` of
    itself the series are re-summed exactly, so a sign change of ``value`` is
    never rounding noise.
    """
    a_arrays = [np.asarray(a, dtype=float) for a, _ in params]
    parts = []
    for c, a, (_, b) in zip(coeffs, a_arrays, params):
        m, s, e = specfun.kummer_m_scaled(a, b, x, with_bound=True)
        parts.append([np.asarray(c, dtype=float), np.array(m, dtype=float), np.array(s, dtype=float), np.asarray(e)])
    top = parts[0][2]
    for part in parts[1:]:
        top = np.maximum(top, part[2])

    def combine():
        value, scale, bound = 0.0, 0.0, 0.0
        for c, m, s, e in parts:
            w = np.exp(s - top)
            value = value + c * m * w
            scale = scale + np.abs(c * m) * w
            bound = bound + np.abs(c) * e * w
        return value, scale, bound

    value, scale, bound = combine()
    redo = np.atleast_1d(bound > KUMMER_RTOL * np.abs(value))
    if redo.any():
        for part, a, (_, b) in zip(parts, a_arrays, params):
            c, m, s, e = part
            if m.ndim == 0:
                m_e, s_e = specfun.kummer_m_scaled(float(a), b, x, rel_tol=0.0)
                part[1] = np.array(m_e * math.exp(s_e - float(s)))
            else:
                aa = np.broadcast_to(a, m.shape)[redo]
                m_e, s_e = specfun.kummer_m_scaled(aa, b, x, rel_tol=0.0)
                m[redo] = m_e * np.exp(s_e - s[redo])
            part[3] = np.zeros_like(np.asarray(e))
        value, scale, _ = combine()
    return value, scale, top


def lower_window(size_energy: float, bc: RobinParam, base: float = -5.0) -> float:
    """Initial lower end of the nu scan.

    A strongly attractive wall (gamma << 0) binds a state near
    ``nu ~ -gamma^2/2 + V(wall)``; the window is pushed below that estimate.
    """
    if bc.is_dirichlet or bc.gamma >= 0:
        return base
    est = -0.5 * bc.gamma**2 + size_energy
    return min(base, est - 2.0 * abs(bc.gamma) - 5.0)


def spectral_window(residual, lower: float, asymptotic_sign: int, config: RootConfig) -> float:
    """Move ``lower`` down until the residual there has its large-negative-nu sign.

    Each sector has at most one level below the oscillator-like ones, so a
    matching sign guarantees no level was left below the window.
    """
    for _ in range(40):
        v = float(np.asarray(residual(np.array([lower])))[0])
        if np.isfinite(v) and (v >= 0) == (asymptotic_sign > 0):
            return lower
        lower -= max(10.0, abs(lower))
    raise DomainError("could not bracket the lowest level from below")


def oscillator_levels(residual, scale, lower: float, upper: float, count: int, config: RootConfig, log_norm=None):
    """Lowest ``count`` roots of an oscillator residual, widening upward if needed."""
    base = max(lower, -5.0)
    parts = []
    if lower < base:
        step = max(config.grid_step, (base - lower) / 2000.0)
        coarse = RootConfig(step, config.tol_x, config.max_bisections)
        parts.append(scan_roots(residual, lower, base, coarse, scale, log_norm))
    start = base
    while True:
        # Each widening scans only the new stretch; the shared end point
        # keeps sign changes across the seam.
        parts.append(scan_roots(residual, start, upper, config, scale, log_norm))
        roots = dedupe(np.unique(np.concatenate(parts)), config.tol_x)
        if len(roots) >= count or upper >= NU_MAX:
            return roots
        start, upper = upper, min(NU_MAX, upper + max(2.0 * count + 4.0, 0.5 * (upper - base)))
