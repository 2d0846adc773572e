"""Bracketing root finder, branch continuation in gamma, and gap detection.

Residuals are plain callables ``f(x) -> float``.  Functions that accept a
numpy array and return an array of the same shape can be flagged with
``vectorized=True`` so that grid scans and bisections run in one call per
step instead of one call per point.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import AccuracyError, BranchLostError, DataError, DomainError

log = logging.getLogger(__name__)

_GOLDEN = 0.5 * (math.sqrt(5.0) - 1.0)


@dataclass(frozen=True)
class Bracket:
    """Interval ``[lo, hi]`` over which the residual changes sign.

    A residual value of exactly zero counts as positive, so a bracket may
    carry ``f_lo == 0`` or ``f_hi == 0`` when a grid point hits a root.
    """

    lo: float
    hi: float
    f_lo: float
    f_hi: float

    def __post_init__(self):
        if not (self.lo < self.hi):
            raise DomainError(f"bracket needs lo < hi, got [{self.lo}, {self.hi}]")
        if not (math.isfinite(self.f_lo) and math.isfinite(self.f_hi)):
            raise DomainError("bracket end values must be finite")
        if _sign(self.f_lo) == _sign(self.f_hi):
            raise DomainError("bracket end values must differ in sign")


@dataclass(frozen=True)
class RootConfig:
    grid_step: float = 0.02
    tol_x: float = 1e-10
    max_bisections: int = 200

    def __post_init__(self):
        if not (self.grid_step > 0):
            raise DomainError(f"grid_step must be positive, got {self.grid_step}")
        if not (0.0 < self.tol_x <= 1e-6):
            raise DomainError(f"tol_x must lie in (0, 1e-6], got {self.tol_x}")
        if self.max_bisections < 60:
            raise DomainError(f"max_bisections must be >= 60, got {self.max_bisections}")


@dataclass
class Branch:
    """One level followed across a gamma grid.

    ``roots`` holds the spectral variable (nu or kR) and ``energies`` the
    matching energies; when no energy map is given the two coincide.
    ``jumps`` lists grid indices where the root moved suspiciously far.
    """

    gamma_grid: np.ndarray
    roots: np.ndarray
    branch_index: int = 0
    energies: np.ndarray | None = None
    jumps: list = field(default_factory=list)

    def __post_init__(self):
        self.gamma_grid = np.asarray(self.gamma_grid, dtype=float)
        self.roots = np.asarray(self.roots, dtype=float)
        if self.energies is None:
            self.energies = self.roots.copy()
        else:
            self.energies = np.asarray(self.energies, dtype=float)
        if not (len(self.gamma_grid) == len(self.roots) == len(self.energies)):
            raise DataError("branch grid, roots and energies differ in length")


def _sign(v) -> int:
    return 1 if v >= 0 else -1


def _evaluate(residual, xs: np.ndarray, vectorized: bool) -> np.ndarray:
    if vectorized:
        return np.asarray(residual(xs), dtype=float).reshape(xs.shape)
    out = np.empty_like(xs)
    for i, x in enumerate(xs):
        try:
            out[i] = float(residual(float(x)))
        except (ArithmeticError, ValueError):
            out[i] = math.nan
    return out


def scan_grid(a: float, b: float, grid_step: float) -> np.ndarray:
    """Uniform grid covering ``[a, b]`` with spacing at most ``grid_step``."""
    n = max(1, int(math.ceil((b - a) / grid_step - 1e-12)))
    return np.linspace(a, b, n + 1)


def brackets_from_samples(xs, fs) -> list[Bracket]:
    """Brackets between consecutive finite samples whose signs differ."""
    xs = np.asarray(xs, dtype=float)
    fs = np.asarray(fs, dtype=float)
    ok = np.isfinite(fs)
    xs, fs = xs[ok], fs[ok]
    if len(xs) < 2:
        return []
    pos = fs >= 0
    idx = np.nonzero(pos[1:] != pos[:-1])[0]
    return [Bracket(float(xs[i]), float(xs[i + 1]), float(fs[i]), float(fs[i + 1])) for i in idx]


def find_sign_changes(residual, interval, grid_step: float, vectorized: bool = False, skipped=None):
    """Scan ``interval`` on a uniform grid and bracket every sign change.

    Non-finite samples are dropped (logged, and appended to ``skipped`` when a
    list is passed) and brackets are formed between the surviving neighbours.
    Roots of even multiplicity, and pairs of roots closer than one grid step,
    do not change the sign and are missed.
    """
    a, b = float(interval[0]), float(interval[1])
    if not a < b:
        raise DomainError(f"scan interval needs a < b, got [{a}, {b}]")
    if not grid_step > 0:
        raise DomainError("grid_step must be positive")
    xs = scan_grid(a, b, grid_step)
    with np.errstate(all="ignore"):
        fs = _evaluate(residual, xs, vectorized)
    bad = ~np.isfinite(fs)
    if bad.any():
        log.warning("skipped %d non-finite residual samples in [%g, %g]", int(bad.sum()), a, b)
        if skipped is not None:
            skipped.extend(float(x) for x in xs[bad])
    return brackets_from_samples(xs, fs)


def refine(residual, bracket: Bracket, config: RootConfig | None = None) -> float:
    """Bisect ``bracket`` down to ``config.tol_x``.

    Returns whichever end of the final bracket has the smaller residual, so
    the result is never worse than the starting ends.
    """
    config = config or RootConfig()
    lo, hi, f_lo, f_hi = bracket.lo, bracket.hi, bracket.f_lo, bracket.f_hi
    s_lo = _sign(f_lo)
    for _ in range(config.max_bisections):
        if hi - lo <= config.tol_x:
            break
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        f_mid = float(residual(mid))
        if not math.isfinite(f_mid):
            raise AccuracyError(
                f"non-finite residual at {mid!r} during bisection", Bracket(lo, hi, f_lo, f_hi)
            )
        if _sign(f_mid) == s_lo:
            lo, f_lo = mid, f_mid
        else:
            hi, f_hi = mid, f_mid
    else:
        if hi - lo > config.tol_x:
            raise AccuracyError(
                f"bisection budget of {config.max_bisections} steps exhausted",
                Bracket(lo, hi, f_lo, f_hi),
            )
    return lo if abs(f_lo) <= abs(f_hi) else hi


def refine_all(residual, brackets, config: RootConfig | None = None, vectorized: bool = True, accept=None):
    """Bisect several brackets at once with a vectorised residual.

    Equivalent to calling :func:`refine` on each bracket, but every bisection
    step evaluates the residual once on the array of midpoints.

    ``accept(x, f)`` may impose an extra stopping rule on the better end of
    each bracket (for example a scaled residual bound for very steep
    residuals); bisection then continues past ``tol_x`` until it holds or the
    bracket can no longer be split.
    """
    config = config or RootConfig()
    if not brackets:
        return np.empty(0)
    if not vectorized:
        return np.array([refine(residual, b, config) for b in brackets])
    lo = np.array([b.lo for b in brackets])
    hi = np.array([b.hi for b in brackets])
    f_lo = np.array([b.f_lo for b in brackets])
    f_hi = np.array([b.f_hi for b in brackets])
    s_lo = f_lo >= 0
    for _ in range(config.max_bisections):
        mid = 0.5 * (lo + hi)
        wide = hi - lo > config.tol_x
        if accept is not None and not wide.all():
            narrow = ~wide
            best = np.where(np.abs(f_lo) <= np.abs(f_hi), lo, hi)[narrow]
            f_best = np.minimum(np.abs(f_lo), np.abs(f_hi))[narrow]
            wide[narrow] = ~np.asarray(accept(best, f_best), dtype=bool)
        open_ = wide & (mid > lo) & (mid < hi)
        if not open_.any():
            break
        f_mid = np.asarray(residual(mid[open_]), dtype=float)
        if not np.all(np.isfinite(f_mid)):
            raise AccuracyError("non-finite residual during bisection")
        full = np.zeros_like(mid)
        full[open_] = f_mid
        left = open_ & ((full >= 0) == s_lo)
        right = open_ & ~left
        lo = np.where(left, mid, lo)
        f_lo = np.where(left, full, f_lo)
        hi = np.where(right, mid, hi)
        f_hi = np.where(right, full, f_hi)
    else:
        wide = hi - lo > config.tol_x
        if wide.any():
            i = int(np.argmax(wide))
            raise AccuracyError(
                f"bisection budget of {config.max_bisections} steps exhausted",
                Bracket(float(lo[i]), float(hi[i]), float(f_lo[i]), float(f_hi[i])),
            )
    return np.where(np.abs(f_lo) <= np.abs(f_hi), lo, hi)


def find_roots(residual, interval, config: RootConfig | None = None, vectorized: bool = False):
    """All sign-change roots of ``residual`` in ``interval``, ascending and deduplicated."""
    config = config or RootConfig()
    brackets = find_sign_changes(residual, interval, config.grid_step, vectorized)
    roots = refine_all(residual, brackets, config, vectorized)
    return dedupe(roots, config.tol_x)


def dedupe(roots, tol_x: float) -> np.ndarray:
    roots = np.sort(np.asarray(roots, dtype=float))
    if len(roots) < 2:
        return roots
    keep = np.concatenate(([True], np.diff(roots) > 2.0 * tol_x))
    return roots[keep]


def continue_branch(
    residual_family,
    gamma_grid,
    seed_root: float,
    config: RootConfig | None = None,
    search_interval=None,
    branch_index: int = 0,
    energy_map=None,
):
    """Follow one root of ``residual_family(gamma, x)`` along ``gamma_grid``.

    At each new gamma a window centred on the previous root is scanned and
    doubled until it contains a sign change; the root nearest the previous
    one is kept.  A root that moves more than ten times the previous step
    (or more than ten grid steps when there is no previous motion) is
    recorded in ``Branch.jumps`` as a possible branch switch.

    Raises :class:`BranchLostError` when the window outgrows
    ``search_interval`` without finding a sign change; the exception carries
    the partial branch.
    """
    config = config or RootConfig()
    grid = np.asarray(gamma_grid, dtype=float)
    lo_glob, hi_glob = search_interval if search_interval is not None else (-math.inf, math.inf)
    roots = [float(seed_root)]
    jumps = []
    last_move = 0.0
    for i in range(1, len(grid)):
        g = float(grid[i])
        prev = roots[-1]
        half = 2.0 * config.grid_step
        found = None
        while found is None:
            a = max(prev - half, lo_glob)
            b = min(prev + half, hi_glob)
            f = lambda x, g=g: residual_family(g, x)
            step = min(config.grid_step, (b - a) / 8.0)
            brackets = find_sign_changes(f, (a, b), step)
            if brackets:
                cands = np.array([refine(f, br, config) for br in brackets])
                found = float(cands[np.argmin(np.abs(cands - prev))])
            elif a <= lo_glob and b >= hi_glob:
                partial = Branch(grid[:i], roots, branch_index, _energies(energy_map, roots))
                raise BranchLostError(f"branch lost at gamma index {i} (gamma={g:g})", i, partial)
            else:
                half *= 2.0
        move = abs(found - prev)
        limit = 10.0 * last_move if last_move > 0 else 10.0 * config.grid_step
        if move > limit and move > config.grid_step:
            jumps.append(i)
        last_move = move
        roots.append(found)
    return Branch(grid, roots, branch_index, _energies(energy_map, roots), jumps)


def _energies(energy_map, roots):
    if energy_map is None:
        return None
    return np.array([energy_map(r) for r in roots], dtype=float)


def _golden_min(fn, a: float, b: float, tol: float = 1e-10, max_iter: int = 200):
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = fn(c), fn(d)
    for _ in range(max_iter):
        if abs(b - a) <= tol * max(1.0, abs(a) + abs(b)):
            break
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = fn(d)
    return (c, fc) if fc <= fd else (d, fd)


def min_gap(branch_a: Branch, branch_b: Branch, gap_fn=None):
    """Locate the smallest energy gap ``E_b - E_a`` between two branches.

    The grid minimum is located first; ties (gaps equal to within rounding)
    go to the smallest gamma.  When
    ``gap_fn(gamma)`` is supplied and the grid minimum is a strict interior
    minimum, it is refined by golden-section search between the neighbouring
    grid points.  Returns ``(gamma_star, gap)``.
    """
    ga = np.asarray(branch_a.gamma_grid, dtype=float)
    gb = np.asarray(branch_b.gamma_grid, dtype=float)
    if ga.shape != gb.shape or not np.array_equal(ga, gb):
        raise DataError("branches must share the same gamma grid")
    gaps = np.asarray(branch_b.energies) - np.asarray(branch_a.energies)
    if np.any(gaps <= 0):
        i = int(np.argmax(gaps <= 0))
        raise DataError(
            f"branches cross at gamma={ga[i]:g}; they cannot belong to one symmetry sector"
        )
    # Gaps equal up to rounding count as ties; the smallest gamma wins.
    ea, eb = np.asarray(branch_a.energies), np.asarray(branch_b.energies)
    slack = 8.0 * np.finfo(float).eps * np.maximum(np.abs(ea), np.abs(eb))
    tied = np.nonzero(gaps - slack <= gaps.min())[0]
    i = int(tied[np.argmin(ga[tied])])
    g_star, best = float(ga[i]), float(gaps[i])
    if gap_fn is None or i == 0 or i == len(ga) - 1:
        return g_star, best
    left, right = float(ga[i - 1]), float(ga[i + 1])
    if not (gaps[i] + slack[i] < gaps[i - 1] and gaps[i] + slack[i] < gaps[i + 1]):
        return g_star, best
    g_ref, v_ref = _golden_min(gap_fn, min(left, right), max(left, right))
    if v_ref <= 0:
        raise DataError(f"levels touch at gamma={g_ref:g}")
    if v_ref < best:
        return float(g_ref), float(v_ref)
    return g_star, best
