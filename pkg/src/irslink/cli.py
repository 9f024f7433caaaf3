"""Command-line front end: single gain evaluations, sweeps, placement search.

Outputs CSV with the fixed header
    param[,overlay],gain_db,std_error_db,gamma_irs,los_amp,irs_sum_amp,wall_mean_amp,mean_wall_power_mw
(numbers rendered with 6 significant digits) plus a JSON run manifest that is
sufficient to reproduce the CSV byte-for-byte.

Exit codes: 0 success, 2 configuration/validation error, 3 geometry/numerical error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict
from datetime import datetime, timezone

from . import __version__
from .errors import DegenerateGeometryError, InvalidParameterError
from .experiments import SweepSpec, default_h_uav_grid, default_l_grid, optimal_distance, run_sweep
from .rng import GENERATOR_ID
from .scenario import MonteCarloConfig, ScenarioConfig, floor_sqrt_factors
from .svgplot import render_line_plot

_FLOAT_KEYS = (
    "f_ghz", "p_t_dbm", "theta_etilt_deg", "pl_irs_db", "pl_wall_db",
    "h_bs_m", "h_uav_m", "h_irs_m", "l_m",
)
_INT_KEYS = ("irs_rows", "irs_cols", "n_rays", "n_runs", "master_seed", "k")
CONFIG_KEYS = _FLOAT_KEYS + _INT_KEYS

_SWEEP_NAMES = {"k": "k", "h-uav": "h_uav", "l": "l", "h-irs": "h_irs", "f": "f"}
_SWEEP_LABELS = {"k": "elements", "h_uav": "UAV height [m]", "l": "BS-wall distance [m]",
                 "h_irs": "reflector height [m]", "f": "carrier frequency [GHz]"}


def _fmt(x) -> str:
    return format(float(x), ".6g")


def parse_config_text(text: str) -> dict:
    """Parse flat ``key = value`` lines; '#' starts a comment."""
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InvalidParameterError(f"config line {lineno}: expected 'key = value', got {raw!r}")
        key, _, val = (part.strip() for part in line.partition("="))
        if key not in CONFIG_KEYS:
            raise InvalidParameterError(f"config line {lineno}: unknown key {key!r}")
        try:
            values[key] = int(val) if key in _INT_KEYS else float(val)
        except ValueError:
            raise InvalidParameterError(f"config line {lineno}: bad value for {key}: {val!r}") from None
    return values


def _parse_range(text: str) -> list[float]:
    """START:STOP:STEP, inclusive of STOP when it lands on the grid."""
    parts = text.split(":")
    if len(parts) != 3:
        raise InvalidParameterError(f"expected START:STOP:STEP, got {text!r}")
    try:
        start, stop, step = (float(p) for p in parts)
    except ValueError:
        raise InvalidParameterError(f"non-numeric range {text!r}") from None
    if step <= 0:
        raise InvalidParameterError(f"range step must be positive, got {step}")
    if stop < start:
        raise InvalidParameterError(f"range stop must be >= start in {text!r}")
    n = int((stop - start) / step + 1e-9) + 1
    return [start + i * step for i in range(n)]


def _parse_overlay(text: str) -> tuple[str, list[float]]:
    name, _, vals = text.partition("=")
    if not _ or name not in _SWEEP_NAMES:
        raise InvalidParameterError(f"expected --overlay NAME=V1,V2,... with NAME in {sorted(_SWEEP_NAMES)}")
    try:
        values = [float(v) for v in vals.split(",") if v != ""]
    except ValueError:
        raise InvalidParameterError(f"non-numeric overlay values in {text!r}") from None
    if not values:
        raise InvalidParameterError("overlay needs at least one value")
    return _SWEEP_NAMES[name], values


def build_configs(args) -> tuple[ScenarioConfig, MonteCarloConfig]:
    """Merge config file, flag overrides and defaults into validated configs."""
    values: dict = {}
    if args.config:
        with open(args.config, "r", encoding="utf-8") as fh:
            values.update(parse_config_text(fh.read()))
    flag_map = {
        "f_ghz": args.f_ghz, "p_t_dbm": args.p_t_dbm, "theta_etilt_deg": args.theta_etilt_deg,
        "pl_irs_db": args.pl_irs_db, "pl_wall_db": args.pl_wall_db, "h_bs_m": args.h_bs,
        "h_uav_m": args.h_uav, "h_irs_m": args.h_irs, "irs_rows": args.irs_rows,
        "irs_cols": args.irs_cols, "l_m": args.l, "n_rays": args.n_rays,
        "n_runs": args.n_runs, "master_seed": args.seed, "k": args.k,
    }
    for key, val in flag_map.items():
        if val is not None:
            values[key] = val

    k = values.pop("k", None)
    rows, cols = values.get("irs_rows"), values.get("irs_cols")
    if k is not None:
        if rows is not None and cols is not None:
            if rows * cols != k:
                raise InvalidParameterError(f"k={k} inconsistent with irs_rows*irs_cols={rows * cols}")
        elif rows is not None:
            if rows < 1 or k % rows != 0:
                raise InvalidParameterError(f"k={k} is not a multiple of irs_rows={rows}")
            values["irs_cols"] = k // rows
        elif cols is not None:
            if cols < 1 or k % cols != 0:
                raise InvalidParameterError(f"k={k} is not a multiple of irs_cols={cols}")
            values["irs_rows"] = k // cols
        else:
            values["irs_rows"], values["irs_cols"] = floor_sqrt_factors(k)

    mc_values = {key: values.pop(key) for key in ("n_runs", "n_rays", "master_seed") if key in values}
    if args.ray_phases is not None:
        mc_values["ray_phases"] = args.ray_phases
    cfg = ScenarioConfig(**values).validate()
    mc = MonteCarloConfig(**mc_values).validate()
    if cfg.k < 1:
        raise InvalidParameterError("irs_rows*irs_cols must be >= 1 (element count k must be positive)")
    return cfg, mc


def _manifest(args, cfg: ScenarioConfig, mc: MonteCarloConfig, extra: dict | None = None) -> dict:
    man = {
        "artifact_version": __version__,
        "generator": GENERATOR_ID,
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "command": list(getattr(args, "_argv", [])),
        "master_seed": mc.master_seed,
        "ray_phases": mc.ray_phases,
        "n_runs": mc.n_runs,
        "n_rays": mc.n_rays,
        "config": asdict(cfg),
    }
    if extra:
        man.update(extra)
    return man


def _emit(args, csv_text: str, manifest: dict) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(csv_text)
        with open(args.out + ".manifest.json", "w", encoding="utf-8") as fh:
            json.dump(manifest, fh, indent=2, sort_keys=True)
            fh.write("\n")
    else:
        sys.stdout.write(csv_text)
        sys.stderr.write(json.dumps(manifest, sort_keys=True) + "\n")


_HEADER_BASE = "gain_db,std_error_db,gamma_irs,los_amp,irs_sum_amp,wall_mean_amp,mean_wall_power_mw"


def _result_cells(res) -> str:
    return ",".join(_fmt(v) for v in (
        res.gain_db, res.std_error_db, res.gamma_irs, res.los_amplitude,
        res.irs_sum_amplitude, res.mean_wall_reflection_amplitude, res.mean_wall_power_mw,
    ))


def cmd_gain(args) -> int:
    from .simulator import irs_gain

    cfg, mc = build_configs(args)
    res = irs_gain(cfg, mc)
    csv_text = f"param,{_HEADER_BASE}\n{_fmt(cfg.h_uav_m)},{_result_cells(res)}\n"
    _emit(args, csv_text, _manifest(args, cfg, mc))
    return 0


def _sweep_csv(result, with_overlay: bool) -> str:
    header = ("param,overlay," if with_overlay else "param,") + _HEADER_BASE
    lines = [header]
    for row in result.rows:
        prefix = _fmt(row.value) + ("," + _fmt(row.overlay_value) if with_overlay else "")
        lines.append(f"{prefix},{_result_cells(row.result)}")
    return "\n".join(lines) + "\n"


def _sweep_svg(result, parameter: str, overlay: str | None) -> str:
    series = {}
    for row in result.rows:
        series.setdefault(row.overlay_value, ([], []))
        series[row.overlay_value][0].append(row.value)
        series[row.overlay_value][1].append(row.result.gain_db)
    labelled = [
        (f"{overlay}={_fmt(ov)}" if ov is not None else "gain", xs, ys)
        for ov, (xs, ys) in series.items()
    ]
    return render_line_plot(labelled, _SWEEP_LABELS[parameter], "gain [dB]",
                            title=f"gain vs {_SWEEP_LABELS[parameter]}")


def cmd_sweep(args) -> int:
    cfg, mc = build_configs(args)
    parameter = _SWEEP_NAMES.get(args.sweep)
    if parameter is None:
        raise InvalidParameterError(f"unknown sweep parameter {args.sweep!r}; expected one of {sorted(_SWEEP_NAMES)}")
    if args.values:
        values = _parse_range(args.values)
    elif parameter == "h_uav":
        values = default_h_uav_grid()
    elif parameter == "l":
        values = default_l_grid()
    else:
        raise InvalidParameterError(f"--values is required when sweeping {args.sweep}")
    overlay_param, overlay_values = (None, ())
    if args.overlay:
        overlay_param, overlay_values = _parse_overlay(args.overlay)
    spec = SweepSpec(parameter, tuple(values), cfg, mc, overlay_param, tuple(overlay_values))
    result = run_sweep(spec, threads=args.threads)
    csv_text = _sweep_csv(result, overlay_param is not None)
    meta = dict(result.metadata)
    meta.pop("base_config", None)  # the manifest already carries the config
    _emit(args, csv_text, _manifest(args, cfg, mc, {"sweep": meta}))
    if args.svg:
        with open(args.svg, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(_sweep_svg(result, parameter, args.overlay.split("=")[0] if args.overlay else None))
    return 0


def cmd_optimize(args) -> int:
    cfg, mc = build_configs(args)
    grid = _parse_range(args.l_grid) if args.l_grid else default_l_grid()
    spec = SweepSpec("l", tuple(grid), cfg, mc)
    result = run_sweep(spec, threads=args.threads)
    csv_text = _sweep_csv(result, with_overlay=False)
    gains = [row.result.gain_db for row in result.rows]
    best = max(range(len(gains)), key=lambda i: (gains[i], -i))  # ties -> smaller L
    l_star, gain_star = grid[best], gains[best]
    if args.refine:
        l_star, gain_star = optimal_distance(cfg, grid, mc, refine=True)
    _emit(args, csv_text, _manifest(args, cfg, mc, {"l_grid": list(grid), "refined": bool(args.refine)}))
    summary = f"l_star = {_fmt(l_star)}, gain_db = {_fmt(gain_star)}\n"
    (sys.stderr if args.out is None else sys.stdout).write(summary)
    if args.svg:
        with open(args.svg, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(_sweep_svg(result, "l", None))
    return 0


def _add_common(p: argparse.ArgumentParser, svg: bool = False) -> None:
    p.add_argument("--config", help="flat key = value config file")
    p.add_argument("--out", help="write CSV here (manifest goes to OUT.manifest.json)")
    if svg:
        p.add_argument("--svg", help="also write an SVG line plot")
    p.add_argument("--seed", type=int, help="master seed for the Monte Carlo baseline")
    p.add_argument("--threads", type=int, default=1, help="parallel sweep-point evaluation")
    p.add_argument("--ray-phases", choices=("geometric", "uniform"),
                   help="wall-ray phase model (default: geometric)")
    for flag, key, typ in (
        ("--f-ghz", "f_ghz", float), ("--p-t-dbm", "p_t_dbm", float),
        ("--theta-etilt-deg", "theta_etilt_deg", float), ("--pl-irs-db", "pl_irs_db", float),
        ("--pl-wall-db", "pl_wall_db", float), ("--h-bs", "h_bs", float),
        ("--h-uav", "h_uav", float), ("--h-irs", "h_irs", float),
        ("--irs-rows", "irs_rows", int), ("--irs-cols", "irs_cols", int),
        ("--l", "l", float), ("--k", "k", int),
        ("--n-rays", "n_rays", int), ("--n-runs", "n_runs", int),
    ):
        p.add_argument(flag, dest=key, type=typ, help=argparse.SUPPRESS)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="irslink", allow_abbrev=False,
                                     description="reflector-assisted UAV link gain simulator")
    parser.add_argument("--version", action="version", version=f"irslink {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_gain = sub.add_parser("gain", help="evaluate the gain at one scenario point")
    _add_common(p_gain)
    p_gain.set_defaults(func=cmd_gain)

    p_sweep = sub.add_parser("sweep", help="sweep one parameter, optionally with an overlay")
    _add_common(p_sweep, svg=True)
    p_sweep.add_argument("--sweep", required=True, choices=sorted(_SWEEP_NAMES), help="parameter to sweep")
    p_sweep.add_argument("--values", help="grid as START:STOP:STEP (inclusive)")
    p_sweep.add_argument("--overlay", help="second parameter as NAME=V1,V2,...")
    p_sweep.set_defaults(func=cmd_sweep)

    p_opt = sub.add_parser("optimize", help="find the gain-maximising BS-wall distance")
    _add_common(p_opt, svg=True)
    p_opt.add_argument("--l-grid", help="distance grid as START:STOP:STEP (default 10:100:5)")
    p_opt.add_argument("--refine", action="store_true", help="golden-section refinement around the argmax")
    p_opt.set_defaults(func=cmd_optimize)
    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = _build_parser()
    args = parser.parse_args(argv)
    args._argv = argv
    try:
        return args.func(args)
    except InvalidParameterError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except (DegenerateGeometryError, FloatingPointError, ZeroDivisionError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 3


if __name__ == "__main__":
    sys.exit(main())
