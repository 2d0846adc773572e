"""Quadrature, normalisation, wall diagnostics and the finite-volume uncertainty audit.

Profiles are sampled on Gauss-Legendre nodes mapped to ``[-L/2, L/2]`` (box)
or ``[0, R]`` (disc).  Disc weights carry the full measure ``2 pi r dr``, so
the density of a state with angular dependence ``e^{i m phi}`` integrates to
one over the disc.
"""

from __future__ import annotations

import math
import os
from dataclasses import asdict, dataclass, field, replace
from functools import lru_cache

import numpy as np
from numpy.polynomial import legendre

from .errors import DataError, DomainError
from .models import RobinParam, absolute_energy, wavefunction
from .models.common import EigenState, five_point_derivative

DEFAULT_NODES = 128
NODE_RANGE = (1, 512)
NODES_ENV = "CAVITYSPEC_QUAD_NODES"
SATURATION_TOL = 1e-9


def default_node_count() -> int:
    """Node count from ``CAVITYSPEC_QUAD_NODES`` or 128."""
    raw = os.environ.get(NODES_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_NODES
    try:
        n = int(raw)
    except ValueError:
        raise DomainError(f"{NODES_ENV} must be an integer, got {raw!r}") from None
    _check_nodes(n)
    return n


def _check_nodes(n):
    if int(n) != n or not (NODE_RANGE[0] <= n <= NODE_RANGE[1]):
        raise DomainError(f"node count must be an integer in [{NODE_RANGE[0]}, {NODE_RANGE[1]}], got {n}")
    return int(n)


@lru_cache(maxsize=32)
def _nodes_cached(n: int):
    x, w = legendre.leggauss(n)
    # Orthogonality check: sum_i w_i P_k(x_i) = 2 delta_k0 for k < 2n.
    for k in range(0, min(2 * n, 24)):
        c = np.zeros(k + 1)
        c[k] = 1.0
        got = float(np.dot(w, legendre.legval(x, c)))
        want = 2.0 if k == 0 else 0.0
        if abs(got - want) > 1e-13:
            raise DataError(f"Gauss-Legendre rule with n={n} fails the P_{k} check ({got!r})")
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def gauss_legendre_nodes(n: int):
    """Abscissae and weights of the n-point Gauss-Legendre rule on [-1, 1]."""
    n = _check_nodes(n)
    x, w = _nodes_cached(n)
    return x.copy(), w.copy()


@dataclass(frozen=True)
class RadialProfile:
    """Wavefunction samples with the quadrature rule they live on.

    ``amplitudes`` are the raw (unnormalised) values; the normalised
    wavefunction is ``norm_constant * amplitude``.  ``weights`` include the
    volume element.
    """

    geometry: str
    size: float
    nodes: np.ndarray
    weights: np.ndarray
    amplitudes: np.ndarray
    amplitude_fn: object = field(repr=False, compare=False)
    node_count: int = DEFAULT_NODES
    norm_constant: float = 1.0
    state: EigenState | None = None
    is_complex: bool = False

    def psi(self, coord):
        """Normalised amplitude at arbitrary coordinates."""
        return self.norm_constant * np.asarray(self.amplitude_fn(coord))

    def density(self):
        return (self.norm_constant * np.abs(self.amplitudes)) ** 2

    def integral(self, values) -> float:
        return float(np.dot(self.weights, values))

    @property
    def norm(self) -> float:
        return self.integral(self.density())


def profile_from_function(fn, geometry: str, size: float, node_count: int | None = None, state=None, is_complex=False):
    """Sample ``fn`` on the mapped quadrature nodes of a box or disc."""
    if geometry not in ("box", "disc"):
        raise DomainError(f"geometry must be 'box' or 'disc', got {geometry!r}")
    n = default_node_count() if node_count is None else _check_nodes(node_count)
    t, w = gauss_legendre_nodes(n)
    size = float(size)
    if geometry == "box":
        nodes = 0.5 * size * t
        weights = 0.5 * size * w
    else:
        nodes = 0.5 * size * (t + 1.0)
        weights = 0.5 * size * w * 2.0 * math.pi * nodes
    amps = np.asarray(fn(nodes))
    if not is_complex:
        amps = amps.astype(float)
    return RadialProfile(geometry, size, nodes, weights, amps, fn, n, 1.0, state, is_complex)


def build_profile(state: EigenState, node_count: int | None = None) -> RadialProfile:
    """Sample a computed eigenstate (unnormalised)."""
    geometry = "box" if state.model == "sho1d" else "disc"
    return profile_from_function(wavefunction(state), geometry, state.size, node_count, state)


def normalize(profile: RadialProfile) -> RadialProfile:
    """Return the profile with ``norm_constant`` set so the density integrates to one."""
    raw = profile.integral(np.abs(profile.amplitudes) ** 2)
    if not raw > 0 or not math.isfinite(raw):
        raise DataError("cannot normalise an identically zero (or non-finite) profile")
    return replace(profile, norm_constant=1.0 / math.sqrt(raw))


def normalized_profile(state: EigenState, node_count: int | None = None) -> RadialProfile:
    return normalize(build_profile(state, node_count))


def _walls(profile: RadialProfile):
    """Wall points with the derivative side pointing inward and the outward normal sign."""
    half = profile.size if profile.geometry == "disc" else 0.5 * profile.size
    if profile.geometry == "disc":
        return [(half, -1, 1.0)]
    return [(half, -1, 1.0), (-half, +1, -1.0)]


def _wall_data(profile: RadialProfile, h: float | None = None):
    h = 1e-4 * profile.size if h is None else h
    out = []
    for x_w, side, normal in _walls(profile):
        psi = float(np.real(profile.psi(x_w)))
        dpsi = five_point_derivative(lambda v: np.real(profile.psi(v)), x_w, h, side)
        out.append((psi, normal * dpsi))
    return out


def boundary_residual(profile: RadialProfile, bc: RobinParam) -> float:
    """Relative violation of ``gamma psi + n . grad psi = 0`` at the wall.

    The normal derivative comes from a one-sided 5-point stencil with step
    ``1e-4`` times the domain size.  The result is
    ``|gamma psi + dpsi| / max(|gamma psi|, |dpsi|, |psi|/size, eps max|psi|)``
    (the ``|psi|/size`` entry keeps Neumann-like walls, where both other
    entries are tiny, on a sensible scale).  For a Dirichlet wall it is
    ``|psi(wall)| / max |psi|``.  The worst wall is reported.
    """
    amp_max = float(np.max(np.abs(profile.psi(profile.nodes))))
    worst = 0.0
    for psi, dpsi in _wall_data(profile):
        if bc.is_dirichlet:
            val = abs(psi) / amp_max if amp_max > 0 else 0.0
        else:
            num = abs(bc.gamma * psi + dpsi)
            den = max(abs(bc.gamma * psi), abs(dpsi), abs(psi) / profile.size, np.finfo(float).eps * amp_max)
            val = num / den if den > 0 else 0.0
        worst = max(worst, val)
    return worst


def normal_current(profile: RadialProfile) -> float:
    """Normal probability current ``Im(psi* d_n psi)`` at the wall (hbar = M = 1).

    The radial factor of every state here is real, so the current vanishes;
    the value is still computed as a check.
    """
    if profile.is_complex or np.iscomplexobj(profile.amplitudes):
        raise DataError("complex radial amplitudes are not supported")
    worst = 0.0
    for psi, dpsi in _wall_data(profile):
        j = float(np.imag(np.conj(complex(psi)) * complex(dpsi)))
        worst = max(worst, abs(j))
    return worst


@dataclass(frozen=True)
class Moments:
    """Bulk and wall expectation values of a normalised state.

    ``n_dot_x``, ``gamma_mean`` and ``n_mean`` are the wall integrals of
    ``n.x rho``, ``gamma rho`` and ``n rho``; in the disc the wall integral is
    the density at R times the circumference.
    """

    x_mean: tuple
    x2_mean: float
    delta_x: float
    n_dot_x: float
    gamma_mean: float
    n_mean: tuple
    dimension: int


def moments(profile: RadialProfile, bc: RobinParam, geometry: str | None = None) -> Moments:
    if geometry is not None and geometry != profile.geometry:
        raise DomainError(f"profile lives in a {profile.geometry}, not a {geometry}")
    norm = profile.norm
    if abs(norm - 1.0) > 1e-8:
        raise DataError(f"profile is not normalised (integral {norm:.12g})")
    rho = profile.density()
    coord = profile.nodes
    g = 0.0 if bc.is_dirichlet else bc.gamma
    if profile.geometry == "box":
        half = 0.5 * profile.size
        x_mean = profile.integral(coord * rho)
        if abs(x_mean) > 1e-10 * max(1.0, half):
            raise DataError(f"<x> = {x_mean:.3e} breaks the parity symmetry")
        x2 = profile.integral(coord * coord * rho)
        rho_p = float(np.abs(profile.psi(half)) ** 2)
        rho_m = float(np.abs(profile.psi(-half)) ** 2)
        return Moments(
            (0.0,),
            x2,
            math.sqrt(x2),
            half * (rho_p + rho_m),
            g * (rho_p + rho_m),
            (rho_p - rho_m,),
            1,
        )
    R = profile.size
    r2 = profile.integral(coord * coord * rho)
    ring = 2.0 * math.pi * R * float(np.abs(profile.psi(R)) ** 2)
    return Moments((0.0, 0.0), r2, math.sqrt(r2), R * ring, g * ring, (0.0, 0.0), 2)


@dataclass(frozen=True)
class UncertaintyReport:
    """Finite-volume uncertainty audit of one state.

    ``lhs`` is ``<p^2> = 2 M (E - <V>)``, which for the free disc equals
    ``2 M E``; ``two_m_energy`` is reported alongside.
    """

    lhs: float
    rhs: float
    two_m_energy: float
    moments: Moments
    satisfied: bool
    saturated: bool
    node_count: int

    def to_dict(self) -> dict:
        d = asdict(self)
        m = d["moments"]
        m["x_mean"] = list(m["x_mean"])
        m["n_mean"] = list(m["n_mean"])
        return d


def bound_rhs(mom: Moments) -> float:
    """``((d + <n>.<x> - <n.x>) / (2 dx))^2 + <gamma> + |<n>|^2/4``."""
    n_dot = float(np.dot(mom.n_mean, mom.x_mean))
    n2 = float(np.dot(mom.n_mean, mom.n_mean))
    return ((mom.dimension + n_dot - mom.n_dot_x) / (2.0 * mom.delta_x)) ** 2 + mom.gamma_mean + 0.25 * n2


def uncertainty_check(state: EigenState, node_count: int | None = None) -> UncertaintyReport:
    """Audit the generalized bound ``<p^2> >= rhs`` for a computed state."""
    prof = normalized_profile(state, node_count)
    mom = moments(prof, state.bc)
    energy = absolute_energy(state)
    potential = 0.5 * mom.x2_mean if state.model in ("sho1d", "disc_iso") else 0.0
    lhs = 2.0 * (energy - potential)
    rhs = bound_rhs(mom)
    return UncertaintyReport(
        lhs,
        rhs,
        2.0 * energy,
        mom,
        bool(lhs >= rhs - SATURATION_TOL),
        bool(abs(lhs - rhs) <= SATURATION_TOL),
        prof.node_count,
    )
