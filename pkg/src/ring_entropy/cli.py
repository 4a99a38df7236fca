"""Command-line front end.

Exit status: 0 success, 1 usage or configuration error, 2 computation
error, 3 I/O error.

Config files are line oriented ``key = value`` text with optional
``[ring]``, ``[run]`` and ``[tolerances]`` headers; ``#`` starts a
comment.  A JSON document written by this program is also
accepted as a config (its ``metadata.config`` block is read back).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__, measures
from .errors import BelowThresholdError, DegenerateParameterError, RingEntropyError
from .measures import UNITS
from .model import Orbital, RingSpec, alpha_threshold, derive, energy, persistent_current
from .parallel import ordered_map
from .sweep import SweepSpec, delta_nu, run_sweep
from .uncertainty import conjugate, renyi_bound, renyi_sum, tsallis_sides

EXIT_OK, EXIT_USAGE, EXIT_COMPUTE, EXIT_IO = 0, 1, 2, 3

SECTIONS = {
    "ring": ("a", "omega0", "field_ratio", "nu"),
    "run": ("orbitals", "alpha", "format", "output"),
    "tolerances": ("momentum",),
}
DEFAULTS = {
    "a": 0.0,
    "omega0": 0.5,
    "field_ratio": 0.0,
    "nu": 0.0,
    "orbitals": [(0, 0)],
    "alpha": [1.0],
    "format": "csv",
    "output": None,
}


class UsageError(Exception):
    """Bad command line or configuration (exit status 1)."""


class ConfigError(UsageError):
    def __init__(self, message, line=None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line


@dataclass
class RunConfig:
    spec: RingSpec = field(default_factory=RingSpec)
    orbitals: list = field(default_factory=lambda: [Orbital(0, 0)])
    alpha_grid: list = field(default_factory=lambda: [1.0])
    output_format: str = "csv"
    output_path: str | None = None
    tolerances: dict = field(default_factory=dict)

    def echo(self) -> dict:
        return {
            "a": self.spec.a,
            "omega0": self.spec.omega0,
            "field_ratio": self.spec.field_ratio,
            "nu": self.spec.nu,
            "orbitals": [[o.n, o.m] for o in self.orbitals],
            "alpha": list(self.alpha_grid),
            "tolerances": dict(self.tolerances),
        }


# ------------------------------------------------------------------ parsing


def _parse_float(text, key, line=None):
    try:
        v = float(text)
    except (TypeError, ValueError):
        raise ConfigError(f"{key}: expected a number, got {text!r}", line) from None
    if not math.isfinite(v):
        raise ConfigError(f"{key}: value must be finite", line)
    return v


def _parse_alpha_list(text, line=None):
    if isinstance(text, (list, tuple)):
        items = list(text)
    else:
        items = [t for t in str(text).replace(";", ",").split(",") if t.strip()]
    if not items:
        raise ConfigError("alpha: empty list", line)
    vals = [_parse_float(t, "alpha", line) for t in items]
    if any(v <= 0 for v in vals):
        raise ConfigError("alpha: values must be positive", line)
    return vals


def _parse_orbitals(text, line=None):
    if isinstance(text, (list, tuple)):
        pairs = [tuple(p) for p in text]
    else:
        pairs = []
        for chunk in str(text).split(";"):
            chunk = chunk.strip()
            if not chunk:
                continue
            parts = [p.strip() for p in chunk.split(",")]
            if len(parts) != 2:
                raise ConfigError(f"orbitals: expected 'n,m' pairs separated by ';', got {chunk!r}", line)
            pairs.append(tuple(parts))
    if not pairs:
        raise ConfigError("orbitals: empty list", line)
    out = []
    for n, m in pairs:
        try:
            ni, mi = int(str(n)), int(str(m))
        except ValueError:
            raise ConfigError(f"orbitals: quantum numbers must be integers, got ({n}, {m})", line) from None
        if ni < 0:
            raise ConfigError("orbitals: n must be >= 0", line)
        out.append((ni, mi))
    return out


def _convert(key, raw, line=None):
    if key in ("a", "omega0", "field_ratio", "nu", "momentum"):
        return _parse_float(raw, key, line)
    if key == "alpha":
        return _parse_alpha_list(raw, line)
    if key == "orbitals":
        return _parse_orbitals(raw, line)
    if key == "format":
        v = str(raw).strip().lower()
        if v not in ("csv", "json"):
            raise ConfigError(f"format: expected csv or json, got {raw!r}", line)
        return v
    if key == "output":
        return None if raw in (None, "") else str(raw)
    raise ConfigError(f"unknown key {key!r}", line)


def _valid_keys():
    return sorted({k for keys in SECTIONS.values() for k in keys})


def parse_config_text(text: str) -> dict:
    """Parse key=value text into a flat dict of converted values."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return _parse_json_config(stripped)
    values = {}
    section = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise ConfigError(f"malformed section header {raw.strip()!r}", lineno)
            section = line[1:-1].strip().lower()
            if section not in SECTIONS:
                raise ConfigError(f"unknown section [{section}]; valid sections: {', '.join(SECTIONS)}", lineno)
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got {raw.strip()!r}", lineno)
        key, val = (s.strip() for s in line.split("=", 1))
        key = key.lower().replace("-", "_")
        allowed = SECTIONS[section] if section else SECTIONS["ring"] + SECTIONS["run"]
        if key not in allowed:
            where = f"section [{section}]" if section else "top level"
            raise ConfigError(
                f"unknown key {key!r} in {where}; valid keys: {', '.join(allowed)}", lineno
            )
        name = "tol_" + key if section == "tolerances" else key
        values[name] = _convert(key, val, lineno)
    return values


def _parse_json_config(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON: {exc.msg}", exc.lineno) from None
    cfg = doc.get("metadata", {}).get("config", doc) if isinstance(doc, dict) else None
    if not isinstance(cfg, dict):
        raise ConfigError("JSON config must be an object")
    values = {}
    for key, raw in cfg.items():
        if key == "tolerances":
            for tk, tv in (raw or {}).items():
                if tk not in SECTIONS["tolerances"]:
                    raise ConfigError(f"unknown tolerance {tk!r}; valid keys: {', '.join(SECTIONS['tolerances'])}")
                values["tol_" + tk] = _parse_float(tv, tk)
            continue
        if key not in _valid_keys():
            raise ConfigError(f"unknown key {key!r}; valid keys: {', '.join(_valid_keys())}")
        values[key] = _convert(key, raw)
    return values


def build_config(values: dict) -> RunConfig:
    merged = dict(DEFAULTS)
    merged.update(values)
    try:
        spec = RingSpec(a=merged["a"], omega0=merged["omega0"], field_ratio=merged["field_ratio"], nu=merged["nu"])
    except RingEntropyError as exc:
        raise ConfigError(str(exc)) from None
    tols = {k[4:]: v for k, v in merged.items() if k.startswith("tol_")}
    if any(v <= 0 for v in tols.values()):
        raise ConfigError("tolerances must be positive")
    return RunConfig(
        spec=spec,
        orbitals=[Orbital(n, m) for n, m in merged["orbitals"]],
        alpha_grid=list(merged["alpha"]),
        output_format=merged["format"],
        output_path=merged["output"],
        tolerances=tols,
    )


def load_config(path=None, overrides: dict | None = None) -> RunConfig:
    """Read a config file (if any) and apply flag overrides on top."""
    values = {}
    if path is not None:
        text = Path(path).read_text()
        values = parse_config_text(text)
    values.update({k: v for k, v in (overrides or {}).items() if v is not None})
    return build_config(values)


# ------------------------------------------------------------------ output


def _fmt(x):
    if x is None:
        return "NA"
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    if isinstance(x, str):
        return x
    x = float(x)
    return "NA" if math.isnan(x) else repr(x + 0.0)


def _json_value(x):
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return int(x)
    if isinstance(x, str) or x is None:
        return x
    x = float(x)
    return None if math.isnan(x) else x


@dataclass
class Table:
    columns: list
    rows: list
    tags: dict = field(default_factory=dict)
    extra_meta: dict = field(default_factory=dict)


def _metadata(cfg: RunConfig, table: Table, command: str) -> dict:
    return {
        "command": command,
        "version": __version__,
        "units": UNITS,
        "omega0": cfg.spec.omega0,
        "column_tags": {c: table.tags.get(c, "") for c in table.columns},
        "config": cfg.echo(),
        **table.extra_meta,
    }


def render(table: Table, cfg: RunConfig, command: str) -> str:
    if cfg.output_format == "json":
        doc = {
            "metadata": _metadata(cfg, table, command),
            "rows": [{c: _json_value(v) for c, v in zip(table.columns, r)} for r in table.rows],
        }
        return json.dumps(doc, indent=2) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(table.columns)
    for r in table.rows:
        w.writerow([_fmt(v) for v in r])
    return buf.getvalue()


# ------------------------------------------------------------------ commands


def cmd_params(cfg, args):
    cols = ["n", "m", "lambda", "m_phi", "r_eff", "omega_eff", "omega_c", "alpha_th", "energy", "current"]
    rows = []
    for o in cfg.orbitals:
        p = derive(cfg.spec, o)
        try:
            j = persistent_current(cfg.spec, o)
        except DegenerateParameterError:
            j = math.nan
        rows.append([o.n, o.m, p.lam, p.m_phi, p.r_eff, p.omega_eff, p.omega_c,
                     alpha_threshold(cfg.spec, o), energy(cfg.spec, o), j])
    tags = {"lambda": "sqrt((m + nu)^2 + a)", "alpha_th": "momentum convergence threshold",
            "energy": "hbar omega0", "current": "e omega0 / 2 pi"}
    return Table(cols, rows, tags)


def cmd_spectrum(cfg, args):
    orbitals = cfg.orbitals
    if args.n_max is not None or args.m_max is not None:
        n_max = args.n_max or 0
        m_max = args.m_max or 0
        orbitals = [Orbital(n, m) for n in range(n_max + 1) for m in range(-m_max, m_max + 1)]
    rows = []
    for o in orbitals:
        try:
            j = persistent_current(cfg.spec, o)
        except DegenerateParameterError:
            j = math.nan
        rows.append([o.n, o.m, energy(cfg.spec, o), j])
    rows.sort(key=lambda r: (r[2], r[0], r[1]))
    return Table(["n", "m", "energy", "current"], rows, {"energy": "hbar omega0", "current": "e omega0 / 2 pi"})


def cmd_entropy(cfg, args):
    cols = ["n", "m", "alpha", "R_rho", "R_rho_err", "R_gamma", "R_gamma_err", "T_rho", "T_gamma"]
    cells = [(o, a) for o in cfg.orbitals for a in cfg.alpha_grid]

    def one(cell):
        o, a = cell
        rp = measures.renyi_position(cfg.spec, o, a)
        try:
            rg = measures.renyi_momentum(cfg.spec, o, a)
            rg_v, rg_e = rg.value, rg.abs_error_estimate
            tg = measures.tsallis_momentum(cfg.spec, o, a).value
        except BelowThresholdError:
            if not args.allow_missing:
                raise
            rg_v = rg_e = tg = math.nan
        tp = measures.tsallis_position(cfg.spec, o, a).value
        return [o.n, o.m, a, rp.value, rp.abs_error_estimate, rg_v, rg_e, tp, tg]

    tags = {"R_rho": "position Renyi entropy", "R_gamma": "momentum Renyi entropy",
            "T_rho": "position Tsallis entropy (formal)", "T_gamma": "momentum Tsallis entropy (formal)"}
    return Table(cols, ordered_map(one, cells), tags)


def cmd_uncertainty(cfg, args):
    cols = ["n", "m", "alpha", "beta", "renyi_sum", "bound", "renyi_slack", "t_rho", "t_gamma", "tsallis_slack"]
    cells = [(o, a) for o in cfg.orbitals for a in cfg.alpha_grid]

    def one(cell):
        o, a = cell
        beta = conjugate(a)
        try:
            rep = renyi_sum(cfg.spec, o, a)
            t_rho, t_gamma = tsallis_sides(cfg.spec, o, a)
            return [o.n, o.m, a, beta, rep.lhs, rep.rhs, rep.slack, t_rho, t_gamma, t_rho - t_gamma]
        except BelowThresholdError:
            if not args.allow_missing:
                raise
            nan = math.nan
            return [o.n, o.m, a, beta, nan, renyi_bound(a), nan, nan, nan, nan]

    tags = {"renyi_sum": "R_rho(alpha) + R_gamma(beta)", "bound": "f(alpha)",
            "t_rho": "dimensionless Tsallis position side", "t_gamma": "dimensionless Tsallis momentum side"}
    return Table(cols, ordered_map(one, cells), tags)


def cmd_bound(cfg, args):
    return Table(["alpha", "f"], [[a, renyi_bound(a)] for a in cfg.alpha_grid], {"f": "Renyi uncertainty bound"})


def _sweep_table(sweep: SweepSpec) -> Table:
    t = run_sweep(sweep)
    return Table(list(t.column_names), t.rows.tolist(), t.metadata["column_tags"],
                 {"flags": t.metadata["flags"], "sweep": t.metadata["sweep"]})


def cmd_sweep(cfg, args):
    start, stop, steps = args.start, args.stop, args.steps
    if args.variable == "nu":
        start = -0.5 if start is None else start
        stop = 0.5 if stop is None else stop
    elif args.variable == "alpha":
        start = 0.6 if start is None else start
        stop = 5.0 if stop is None else stop
    else:
        start = 0.0 if start is None else start
        stop = 5.0 if stop is None else stop
    sweep = SweepSpec(args.variable, start, stop, steps or 21, tuple(cfg.orbitals), cfg.alpha_grid[0], cfg.spec)
    return _sweep_table(sweep)


FIGURES = ("tsallis-sides", "renyi-sums", "delta-nu", "renyi-ab-position", "renyi-ab-momentum")


def _figure(cfg, args):
    from dataclasses import replace

    name = args.preset
    spec = cfg.spec
    if name == "tsallis-sides":
        grid = np.linspace(args.start or 0.5, args.stop or 1.0, args.steps or 26)
        orbitals = cfg.orbitals if args.orbitals else [Orbital(0, 0), Orbital(0, 2), Orbital(1, 0)]
        cols = ["alpha"] + [f"{s}[{o.n},{o.m}]" for o in orbitals for s in ("t_rho", "t_gamma")]

        def row(a):
            out = [a]
            for o in orbitals:
                out += list(tsallis_sides(spec, o, float(a)))
            return out

        tags = {c: "dimensionless Tsallis side" for c in cols[1:]}
        return Table(cols, ordered_map(row, grid), tags)
    if name == "renyi-sums":
        grid = np.linspace(args.start or 0.55, args.stop or 5.0, args.steps or 40)
        orbitals = cfg.orbitals if args.orbitals else [Orbital(0, 0), Orbital(0, 1), Orbital(0, 2), Orbital(0, 3),
                                                      Orbital(1, 0)]
        cols = ["alpha", "f"] + [f"sum[{o.n},{o.m}]" for o in orbitals]

        def row(a):
            return [a, renyi_bound(float(a))] + [renyi_sum(spec, o, float(a)).lhs for o in orbitals]

        tags = {"f": "Renyi uncertainty bound", **{c: "R_rho(alpha) + R_gamma(beta)" for c in cols[2:]}}
        return Table(cols, ordered_map(row, grid), tags)
    nu_grid = np.linspace(args.start if args.start is not None else -0.5,
                          args.stop if args.stop is not None else 0.5, args.steps or 21)
    if name == "delta-nu":
        alphas = cfg.alpha_grid if args.alpha else [0.001, 0.1, 1.0, 2.0, 5.0]
        ms = [o.m for o in cfg.orbitals] if args.orbitals else [0, -1]
        cols = ["nu"] + [f"dR[0,{m}](alpha={a:g})" for m in ms for a in alphas]

        def row(nu):
            return [nu] + [delta_nu(spec, Orbital(0, m), a, float(nu)) for m in ms for a in alphas]

        return Table(cols, ordered_map(row, nu_grid), {c: "R_rho(nu) - R_rho(0)" for c in cols[1:]})
    if name in ("renyi-ab-position", "renyi-ab-momentum"):
        momentum = name.endswith("momentum")
        default_alphas = [2.0, 5.0] if momentum else [0.001, 0.1, 2.0, 5.0]
        default_ms = [0, 1, -1] if momentum else [0, -1, 1, -2, 2]
        alphas = cfg.alpha_grid if args.alpha else default_alphas
        ms = [o.m for o in cfg.orbitals] if args.orbitals else default_ms
        key = "R_gamma" if momentum else "R_rho"
        cols = ["nu"] + [f"{key}[0,{m}](alpha={a:g})" for a in alphas for m in ms]
        func = measures.renyi_momentum if momentum else measures.renyi_position

        def row(nu):
            s = replace(spec, nu=float(nu))
            out = [nu]
            for a in alphas:
                for m in ms:
                    try:
                        out.append(func(s, Orbital(0, m), a).value)
                    except BelowThresholdError:
                        out.append(math.nan)
            return out

        tag = "momentum Renyi entropy" if momentum else "position Renyi entropy"
        return Table(cols, ordered_map(row, nu_grid), {c: tag for c in cols[1:]})
    raise UsageError(f"unknown figure preset {name!r}")


def cmd_figure(cfg, args):
    return _figure(cfg, args)


COMMANDS = {
    "params": cmd_params,
    "spectrum": cmd_spectrum,
    "entropy": cmd_entropy,
    "uncertainty": cmd_uncertainty,
    "sweep": cmd_sweep,
    "figure": cmd_figure,
    "bound": cmd_bound,
}


# ------------------------------------------------------------------ argparse


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _common(p):
    g = p.add_argument_group("configuration")
    g.add_argument("--config", help="config file (key=value with [section] headers, or emitted JSON)")
    g.add_argument("--a", type=float, help="antidot strength a >= 0")
    g.add_argument("--omega0", type=float, help="confinement frequency (default 0.5, r0 = 1)")
    g.add_argument("--field-ratio", type=float, help="omega_c / omega0")
    g.add_argument("--nu", type=float, help="Aharonov-Bohm flux in flux quanta")
    g.add_argument("--n", type=int, help="principal index of a single orbital")
    g.add_argument("--m", type=int, help="azimuthal index of a single orbital")
    g.add_argument("--orbitals", help="orbital list 'n,m;n,m;...'")
    g.add_argument("--alpha", help="comma-separated Renyi/Tsallis parameters")
    g.add_argument("--momentum-tol", type=float, help="relative tolerance of momentum integrals")
    g.add_argument("--format", choices=("csv", "json"), help="output format (default csv)")
    g.add_argument("--output", "-o", help="write to this file instead of stdout")
    g.add_argument("--allow-missing", action="store_true", help="emit NA for below-threshold cells")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ring-entropy", description="Information measures of a quantum ring in magnetic fields.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True
    for name, help_text in [
        ("params", "derived parameters, threshold, energy and current"),
        ("spectrum", "energies and persistent currents"),
        ("entropy", "Renyi and Tsallis entropies in both spaces"),
        ("uncertainty", "Renyi and Tsallis uncertainty relations"),
        ("bound", "Renyi uncertainty bound f(alpha)"),
    ]:
        p = sub.add_parser(name, help=help_text)
        _common(p)
        if name == "spectrum":
            p.add_argument("--n-max", type=int, help="enumerate n = 0..n_max")
            p.add_argument("--m-max", type=int, help="enumerate m = -m_max..m_max")
    p = sub.add_parser("sweep", help="sweep nu, alpha or field_ratio")
    _common(p)
    p.add_argument("--variable", choices=("nu", "alpha", "field_ratio"), default="nu")
    p.add_argument("--start", type=float)
    p.add_argument("--stop", type=float)
    p.add_argument("--steps", type=int)
    p = sub.add_parser("figure", help="figure data presets")
    p.add_argument("preset", choices=FIGURES)
    _common(p)
    p.add_argument("--start", type=float)
    p.add_argument("--stop", type=float)
    p.add_argument("--steps", type=int)
    return parser


def _overrides(args) -> dict:
    out = {
        "a": args.a,
        "omega0": args.omega0,
        "field_ratio": args.field_ratio,
        "nu": args.nu,
        "format": args.format,
        "output": args.output,
        "tol_momentum": args.momentum_tol,
    }
    if args.alpha is not None:
        out["alpha"] = _parse_alpha_list(args.alpha)
    if args.orbitals is not None:
        out["orbitals"] = _parse_orbitals(args.orbitals)
    if args.n is not None or args.m is not None:
        if args.orbitals is not None:
            raise UsageError("--n/--m cannot be combined with --orbitals")
        n = args.n or 0
        if n < 0:
            raise UsageError("--n must be >= 0")
        out["orbitals"] = [(n, args.m or 0)]
        args.orbitals = f"{n},{args.m or 0}"
    return out


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        cfg = load_config(args.config, _overrides(args))
    except UsageError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: cannot read config: {exc}", file=stderr)
        return EXIT_IO
    except RingEntropyError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE
    saved_tol = measures.MOMENTUM_TOL
    if "momentum" in cfg.tolerances:
        measures.MOMENTUM_TOL = cfg.tolerances["momentum"]
    try:
        table = COMMANDS[args.command](cfg, args)
        text = render(table, cfg, args.command)
    except UsageError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE
    except (RingEntropyError, ValueError, ArithmeticError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=stderr)
        return EXIT_COMPUTE
    finally:
        measures.MOMENTUM_TOL = saved_tol
    try:
        if cfg.output_path:
            Path(cfg.output_path).write_text(text)
        else:
            stdout.write(text)
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=stderr)
        return EXIT_IO
    return EXIT_OK


def main() -> None:
    sys.exit(run())
