"""Command-line front end.

Every subcommand writes one table (CSV, or JSON where noted) to ``--output``
or stdout and, when ``--plot`` is given, one SVG file.  Any flag may also be
set in a flat ``key = value`` file passed with ``--config``; flags on the
command line win.

Exit codes: 0 success, 1 table verification failed, 2 bad configuration,
3 solver failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import sys
import time
from dataclasses import dataclass, field

import numpy as np

from . import models, observables, tables
from .errors import CavitySpecError, ConfigError, DomainError
from .models import RobinParam
from .rootkit import Branch, RootConfig, min_gap

log = logging.getLogger("cavityspec")

EXIT_OK, EXIT_VERIFY, EXIT_CONFIG, EXIT_SOLVER = 0, 1, 2, 3

CLI_MODELS = {"sho1d": "sho1d", "disc-free": "disc_free", "disc-iso": "disc_iso"}
MODEL_LABEL = {v: k for k, v in CLI_MODELS.items()}
FREE_UNITS = ("half_inv_MR2", "pi2_half_inv_MR2")
SPECTRUM_COLUMNS = ["model", "sector", "index", "spectral", "energy", "energy_unit", "gamma", "size"]
SCAN_COLUMNS = ["u", "gamma", "branch", "spectral", "energy", "status"]
RESONANCE_COLUMNS = ["model", "sector", "branch_a", "branch_b", "u_star", "gamma_star", "gap", "spectral", "energy", "energy_unit", "size"]
VERIFY_COLUMNS = ["table", "size", "gamma", "nu_table", "nu", "d_nu", "energy_table", "energy", "d_energy", "passed"]
WAVE_COLUMNS = ["coord", "amplitude", "density"]
U_DEFAULT = 1.55


def fmt(value) -> str:
    """Numbers with 12 significant digits; everything else as text."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        if math.isnan(value):
            return ""
        return format(float(value), ".12g")
    return str(value)


def rounded(value):
    """Float rounded to the serialised precision (JSON keeps numbers numeric)."""
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, (float, np.floating)):
        return float(format(float(value), ".12g"))
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, dict):
        return {k: rounded(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [rounded(v) for v in value]
    return value


def csv_text(columns, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([fmt(row[c]) for c in columns])
    return buf.getvalue()


def json_text(record) -> str:
    return json.dumps(record, indent=2, sort_keys=True) + "\n"


# ------------------------------------------------------------------ config


@dataclass
class RunConfig:
    """Validated settings of one CLI run."""

    command: str
    model: str | None = None
    size: float | None = None
    bc: RobinParam | None = None
    sector: object = None
    count: int = 4
    points: int = 201
    u_min: float = -U_DEFAULT
    u_max: float = U_DEFAULT
    energy_unit: str = "omega"
    output_format: str = "csv"
    output: str | None = None
    plot: str | None = None
    nodes: int = observables.DEFAULT_NODES
    index: int = 0
    samples: int = 201
    branches: tuple = (0, 1)
    plot_gammas: tuple = ()
    problems: list = field(default_factory=list)

    @property
    def label(self) -> str:
        return MODEL_LABEL.get(self.model, str(self.model))


def read_config_file(path: str) -> dict:
    """Parse a flat ``key = value`` file; ``#`` starts a comment."""
    values = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from None
    problems = []
    for n, line in enumerate(lines, 1):
        text = line.split("#", 1)[0].strip()
        if not text:
            continue
        if "=" not in text:
            problems.append(f"{path}:{n}: expected 'key = value'")
            continue
        key, val = (p.strip() for p in text.split("=", 1))
        values[key.replace("-", "_")] = val
    if problems:
        raise ConfigError(problems)
    return values


def _int_list(text):
    return tuple(int(v) for v in str(text).split(",") if v.strip())


def _gamma_list(text):
    return tuple(str(v).strip() for v in str(text).split(",") if v.strip())


def _add_common(p, with_format=True):
    p.add_argument("--model", choices=sorted(CLI_MODELS), help="system to solve")
    p.add_argument("--L", dest="L", type=float, help="box width (sho1d), in oscillator lengths")
    p.add_argument("--R", dest="R", type=float, help="disc radius")
    p.add_argument("--gamma", help="wall parameter: a real number or 'dirichlet'")
    p.add_argument("--parity", choices=["even", "odd"], help="sector for sho1d")
    p.add_argument("--m", type=int, help="angular momentum for the disc models")
    p.add_argument("--count", type=int, help="number of levels (1..20)")
    p.add_argument(
        "--energy-unit",
        dest="energy_unit",
        help="free disc: half_inv_MR2 (default) or pi2_half_inv_MR2; oscillators use omega",
    )
    p.add_argument("--output", "-o", help="write the table here instead of stdout")
    if with_format:
        p.add_argument("--format", dest="output_format", choices=["csv", "json"], help="table format")


def _add_grid(p):
    p.add_argument("--points", type=int, help="number of gamma grid points (default 201)")
    p.add_argument("--u-min", dest="u_min", type=float, help="lower end of u = arctan(gamma * size')")
    p.add_argument("--u-max", dest="u_max", type=float, help="upper end of u")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cavityspec",
        description="Spectra of quantum systems behind Robin walls gamma*psi + n.grad psi = 0.",
    )
    parser.add_argument("--config", help="flat 'key = value' file with default flag values")
    parser.add_argument("--log-level", default="WARNING", help="logging level (default WARNING)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="lowest levels of one sector")
    _add_common(p)

    p = sub.add_parser("scan", help="levels along a gamma grid uniform in arctan")
    _add_common(p)
    _add_grid(p)
    p.add_argument("--plot", help="also write an SVG of energy against u")

    p = sub.add_parser("resonance", help="avoided crossing: gamma of the minimal gap")
    _add_common(p)
    _add_grid(p)
    p.add_argument("--branches", type=_int_list, help="pair of branch indices, default 0,1")
    p.add_argument("--sector-b", dest="sector_b", help="sector of the second branch (must match)")

    p = sub.add_parser("verify-tables", help="recompute the reference resonance tables")
    p.add_argument("--output", "-o", help="write the report here instead of stdout")

    p = sub.add_parser("uncertainty", help="finite-volume uncertainty audit of one state (JSON)")
    _add_common(p, with_format=False)
    p.add_argument("--index", type=int, help="level index within the sector (default 0)")
    p.add_argument("--nodes", type=int, help="Gauss-Legendre nodes (default 128 or $CAVITYSPEC_QUAD_NODES)")

    p = sub.add_parser("wavefunction", help="normalised samples of one state")
    _add_common(p, with_format=False)
    p.add_argument("--index", type=int, help="level index within the sector (default 0)")
    p.add_argument("--samples", type=int, help="number of sample points (>= 64, default 201)")
    p.add_argument("--nodes", type=int, help="Gauss-Legendre nodes used for the normalisation")
    p.add_argument("--plot", help="also write an SVG of the lowest states")
    p.add_argument("--plot-gammas", dest="plot_gammas", type=_gamma_list, help="comma list of up to 4 gammas for the SVG panels")
    return parser


def _subparser(parser, command):
    for action in parser._subparsers._group_actions:
        if command in action.choices:
            return action.choices[command]
    raise ConfigError(f"unknown command {command}")


def parse_args(argv):
    """Parse flags, folding in ``--config`` defaults; returns the namespace."""
    parser = build_parser()
    ns = parser.parse_args(argv)
    if ns.config:
        values = read_config_file(ns.config)
        sub = _subparser(parser, ns.command)
        known = {a.dest for a in sub._actions}
        unknown = sorted(k for k in values if k not in known)
        if unknown:
            raise ConfigError([f"unknown config key '{k}'" for k in unknown])
        sub.set_defaults(**values)
        ns = parser.parse_args(argv)
    return ns


def _get(ns, name, default=None):
    v = getattr(ns, name, None)
    return default if v is None else v


def make_config(ns) -> RunConfig:
    """Turn parsed flags into a :class:`RunConfig`, gathering every problem."""
    cfg = RunConfig(ns.command)
    problems = cfg.problems
    if ns.command == "verify-tables":
        cfg.output = _get(ns, "output")
        return cfg

    label = _get(ns, "model")
    if label is None:
        problems.append("--model is required")
    else:
        cfg.model = CLI_MODELS[label]

    L, R = _get(ns, "L"), _get(ns, "R")
    if cfg.model == "sho1d":
        if R is not None:
            problems.append("sho1d takes --L, not --R")
        if L is None:
            problems.append("sho1d needs --L")
        cfg.size = L
        if _get(ns, "m") is not None:
            problems.append("sho1d takes --parity, not --m")
        cfg.sector = _get(ns, "parity", "even")
    elif cfg.model is not None:
        if L is not None:
            problems.append(f"{label} takes --R, not --L")
        if R is None:
            problems.append(f"{label} needs --R")
        cfg.size = R
        if _get(ns, "parity") is not None:
            problems.append(f"{label} takes --m, not --parity")
        cfg.sector = int(_get(ns, "m", 0))
    if cfg.size is not None and not (0.0 < cfg.size <= 50.0):
        problems.append(f"size must lie in (0, 50], got {cfg.size:g}")

    gamma_text = _get(ns, "gamma")
    if gamma_text is None and ns.command not in ("scan", "resonance"):
        problems.append("--gamma is required (a real number or 'dirichlet')")
    elif gamma_text is not None:
        try:
            cfg.bc = RobinParam.parse(gamma_text)
        except DomainError as exc:
            problems.append(str(exc))

    count = _get(ns, "count")
    if count is not None:
        cfg.count = int(count)
    elif ns.command == "wavefunction":
        cfg.count = max(4, int(_get(ns, "index", 0)) + 1)
    if not (1 <= cfg.count <= 20):
        problems.append(f"--count must lie in [1, 20], got {cfg.count}")

    unit = _get(ns, "energy_unit")
    if cfg.model == "disc_free":
        cfg.energy_unit = unit or "half_inv_MR2"
        if cfg.energy_unit not in FREE_UNITS:
            problems.append(f"--energy-unit for disc-free must be one of {', '.join(FREE_UNITS)}")
    elif unit not in (None, "omega"):
        problems.append("oscillator energies are in units of omega; --energy-unit must be omega")

    cfg.output_format = _get(ns, "output_format", "csv")
    cfg.output = _get(ns, "output")
    cfg.plot = _get(ns, "plot")

    if ns.command in ("scan", "resonance"):
        cfg.points = int(_get(ns, "points", 201))
        cfg.u_min = float(_get(ns, "u_min", -U_DEFAULT))
        cfg.u_max = float(_get(ns, "u_max", U_DEFAULT))
        if not (3 <= cfg.points <= 2001):
            problems.append(f"--points must lie in [3, 2001], got {cfg.points}")
        half_pi = 0.5 * math.pi
        if not (-half_pi < cfg.u_min < cfg.u_max < half_pi):
            problems.append("u range must satisfy -pi/2 < u-min < u-max < pi/2")
    if ns.command == "resonance":
        br = tuple(_get(ns, "branches", (0, 1)))
        if len(br) != 2 or br[0] < 0 or br[0] >= br[1]:
            problems.append("--branches must be two indices a < b")
        else:
            cfg.branches = br
            if ns.count is None:
                cfg.count = br[1] + 1
            elif cfg.count <= br[1]:
                problems.append("--count must exceed the upper branch index")
        other = _get(ns, "sector_b")
        if other is not None and str(other) != str(cfg.sector):
            problems.append(
                f"branches from different sectors ({cfg.sector} vs {other}) may cross; a gap needs one sector"
            )
    if ns.command in ("uncertainty", "wavefunction"):
        cfg.index = int(_get(ns, "index", 0))
        if not (0 <= cfg.index < cfg.count):
            problems.append(f"--index must lie in [0, count), got {cfg.index}")
        nodes = _get(ns, "nodes")
        try:
            cfg.nodes = observables.default_node_count() if nodes is None else observables._check_nodes(int(nodes))
        except DomainError as exc:
            problems.append(str(exc))
    if ns.command == "wavefunction":
        cfg.samples = int(_get(ns, "samples", 201))
        if cfg.samples < 64:
            problems.append(f"--samples must be >= 64, got {cfg.samples}")
        gammas = tuple(_get(ns, "plot_gammas", ()))
        if len(gammas) > 4:
            problems.append("--plot-gammas takes at most 4 values")
        try:
            cfg.plot_gammas = tuple(RobinParam.parse(g) for g in gammas)
        except DomainError as exc:
            problems.append(str(exc))
    if problems:
        raise ConfigError(problems)
    return cfg


# ------------------------------------------------------------------ helpers


def _emit(text: str, path: str | None):
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _spectrum(cfg: RunConfig, bc: RobinParam, count: int | None = None):
    return models.spectrum(cfg.model, cfg.size, bc, cfg.sector, count or cfg.count, energy_unit=cfg.energy_unit)


def _gamma_of_u(cfg: RunConfig, u):
    scale = 0.5 * cfg.size if cfg.model == "sho1d" else cfg.size
    return np.tan(u) / scale


def _u_of_gamma(cfg: RunConfig, gamma: float) -> float:
    scale = 0.5 * cfg.size if cfg.model == "sho1d" else cfg.size
    return math.atan(gamma * scale)


def state_record(cfg: RunConfig, st) -> dict:
    return {
        "model": cfg.label,
        "sector": st.sector,
        "index": st.index,
        "spectral": st.spectral,
        "energy": st.energy,
        "energy_unit": st.energy_unit,
        "gamma": str(st.bc),
        "size": st.size,
    }


def _select_state(cfg: RunConfig, bc: RobinParam | None = None):
    spec = _spectrum(cfg, bc or cfg.bc)
    if cfg.index >= len(spec):
        raise CavitySpecError(f"only {len(spec)} levels found; index {cfg.index} unavailable")
    return spec[cfg.index]


# ----------------------------------------------------------------- commands


def cmd_spectrum(cfg: RunConfig) -> int:
    spec = _spectrum(cfg, cfg.bc)
    if spec.partial:
        log.warning(spec.message)
    rows = [state_record(cfg, st) for st in spec]
    if cfg.output_format == "json":
        record = rounded({"model": cfg.label, "partial": spec.partial, "states": rows})
        _emit(json_text(record), cfg.output)
    else:
        _emit(csv_text(SPECTRUM_COLUMNS, rows), cfg.output)
    return EXIT_OK


def scan_levels(cfg: RunConfig, count: int | None = None):
    """Levels on the u grid; branch ``j`` is the j-th lowest level at each gamma.

    Levels of one sector never cross, so ranking them keeps every branch
    continuous and nondecreasing in gamma.
    """
    count = count or cfg.count
    u = np.linspace(cfg.u_min, cfg.u_max, cfg.points)
    gammas = _gamma_of_u(cfg, u)
    spectral = np.full((len(u), count), np.nan)
    energy = np.full((len(u), count), np.nan)
    for i, g in enumerate(gammas):
        spec = _spectrum(cfg, RobinParam(float(g)), count)
        for j, st in enumerate(spec):
            spectral[i, j] = st.spectral
            energy[i, j] = st.energy
    return u, gammas, spectral, energy


def cmd_scan(cfg: RunConfig) -> int:
    u, gammas, spectral, energy = scan_levels(cfg)
    rows = []
    for i in range(len(u)):
        for j in range(cfg.count):
            ok = np.isfinite(spectral[i, j])
            if not ok:
                log.warning("branch %d lost at gamma=%g", j, gammas[i])
            rows.append(
                {
                    "u": float(u[i]),
                    "gamma": float(gammas[i]),
                    "branch": j,
                    "spectral": float(spectral[i, j]),
                    "energy": float(energy[i, j]),
                    "status": "ok" if ok else "lost",
                }
            )
    if cfg.output_format == "json":
        record = rounded({"model": cfg.label, "sector": cfg.sector, "energy_unit": cfg.energy_unit, "rows": rows})
        _emit(json_text(record), cfg.output)
    else:
        _emit(csv_text(SCAN_COLUMNS, rows), cfg.output)
    if cfg.plot:
        from .plotting import plot_scan

        ref = _spectrum(cfg, RobinParam.dirichlet())
        axis = "arctan(gamma L/2)" if cfg.model == "sho1d" else "arctan(gamma R)"
        plot_scan(
            cfg.plot,
            u,
            {j: energy[:, j] for j in range(cfg.count)},
            [st.energy for st in ref],
            axis,
            f"energy [{cfg.energy_unit}]",
            f"{cfg.label} sector {cfg.sector}, size {cfg.size:g}",
        )
    return EXIT_OK


def cmd_resonance(cfg: RunConfig) -> int:
    a, b = cfg.branches
    cfg_b = cfg
    u, gammas, spectral, energy = scan_levels(cfg_b, b + 1)
    good = np.all(np.isfinite(energy[:, [a, b]]), axis=1)
    if not good.any():
        raise CavitySpecError("no gamma on the grid has both branches")
    grid = gammas[good]
    br_a = Branch(grid, spectral[good, a], a, energy[good, a])
    br_b = Branch(grid, spectral[good, b], b, energy[good, b])

    def gap(g):
        spec = _spectrum(cfg, RobinParam(float(g)), b + 1)
        if len(spec) <= b:
            return math.inf
        return spec[b].energy - spec[a].energy

    g_star, width = min_gap(br_a, br_b, gap)
    low = _spectrum(cfg, RobinParam(g_star), b + 1)[a]
    row = {
        "model": cfg.label,
        "sector": cfg.sector,
        "branch_a": a,
        "branch_b": b,
        "u_star": _u_of_gamma(cfg, g_star),
        "gamma_star": g_star,
        "gap": width,
        "spectral": low.spectral,
        "energy": low.energy,
        "energy_unit": low.energy_unit,
        "size": cfg.size,
    }
    if cfg.output_format == "json":
        _emit(json_text(rounded(row)), cfg.output)
    else:
        _emit(csv_text(RESONANCE_COLUMNS, [row]), cfg.output)
    return EXIT_OK


def verify_rows():
    """Recompute every reference row; returns the report rows."""
    out = []
    for row in tables.BOX_ROWS + tables.DISC_ROWS:
        bc = RobinParam(row.gamma)
        if row.table == "box":
            st = models.sho_spectrum(row.size, bc, "even", 1)[0]
        else:
            st = models.iso_spectrum(row.size, bc, 0, 1)[0]
        d_nu = st.spectral - row.nu
        d_e = st.energy - row.energy
        out.append(
            {
                "table": row.table,
                "size": row.size,
                "gamma": row.gamma,
                "nu_table": row.nu,
                "nu": st.spectral,
                "d_nu": d_nu,
                "energy_table": row.energy,
                "energy": st.energy,
                "d_energy": d_e,
                "passed": abs(d_nu) <= tables.TOLERANCE and abs(d_e) <= tables.TOLERANCE,
            }
        )
    return out


def cmd_verify_tables(cfg: RunConfig) -> int:
    rows = verify_rows()
    _emit(csv_text(VERIFY_COLUMNS, rows), cfg.output)
    failed = [r for r in rows if not r["passed"]]
    for r in failed:
        print(f"FAILED {r['table']} size={r['size']:g} gamma={r['gamma']:g}: d_nu={r['d_nu']:.3e}", file=sys.stderr)
    return EXIT_VERIFY if failed else EXIT_OK


def uncertainty_record(cfg: RunConfig, st, report) -> dict:
    rec = {"state": state_record(cfg, st)}
    rec.update(report.to_dict())
    return rounded(rec)


def cmd_uncertainty(cfg: RunConfig) -> int:
    st = _select_state(cfg)
    report = observables.uncertainty_check(st, cfg.nodes)
    _emit(json_text(uncertainty_record(cfg, st, report)), cfg.output)
    return EXIT_OK


def sample_state(cfg: RunConfig, st):
    prof = observables.normalize(observables.build_profile(st, cfg.nodes))
    if cfg.model == "sho1d":
        coord = np.linspace(-0.5 * cfg.size, 0.5 * cfg.size, cfg.samples)
    else:
        coord = np.linspace(0.0, cfg.size, cfg.samples)
    amp = np.asarray(prof.psi(coord), dtype=float)
    return coord, amp


def cmd_wavefunction(cfg: RunConfig) -> int:
    st = _select_state(cfg)
    coord, amp = sample_state(cfg, st)
    rows = [{"coord": float(c), "amplitude": float(a), "density": float(a * a)} for c, a in zip(coord, amp)]
    _emit(csv_text(WAVE_COLUMNS, rows), cfg.output)
    if cfg.plot:
        from .plotting import plot_wavefunctions

        panels = []
        for bc in cfg.plot_gammas or (cfg.bc,):
            spec = _spectrum(cfg, bc, min(cfg.count, 4))
            curves = []
            for s in spec:
                c, a = sample_state(cfg, s)
                curves.append((f"n={s.index}, E={s.energy:.4g}", c, a))
            panels.append((f"gamma = {bc}", curves))
        xlabel = "x" if cfg.model == "sho1d" else "r"
        plot_wavefunctions(cfg.plot, panels, xlabel, "normalised amplitude")
    return EXIT_OK


COMMANDS = {
    "spectrum": cmd_spectrum,
    "scan": cmd_scan,
    "resonance": cmd_resonance,
    "verify-tables": cmd_verify_tables,
    "uncertainty": cmd_uncertainty,
    "wavefunction": cmd_wavefunction,
}


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        ns = parse_args(argv)
        logging.basicConfig(level=getattr(logging, str(ns.log_level).upper(), logging.WARNING), format="%(levelname)s: %(message)s")
        cfg = make_config(ns)
    except ConfigError as exc:
        for problem in exc.problems:
            print(f"config error: {problem}", file=sys.stderr)
        return EXIT_CONFIG
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_CONFIG
    start = time.perf_counter()
    try:
        code = COMMANDS[cfg.command](cfg)
    except CavitySpecError as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    log.info("%s finished in %.2f s", cfg.command, time.perf_counter() - start)
    return code


if __name__ == "__main__":
    sys.exit(main())
