"""Command-line front end.

``qvac <command> --config run.json --out results/``

Every command reads an optional JSON config whose keys must all be known,
writes CSV tables (17 significant digits, LF line endings) and JSON
reports with sorted keys, plus a gnuplot script per figure. Run metadata
goes to ``run_meta.json`` so that the data files themselves are identical
between reruns.
"""
import argparse
import csv
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import BACKEND, __version__
from . import distribution as dist
from . import modesum, reproduce, rydberg, spectral
from .errors import ConfigError, ConvergenceError, FitError, RegimeError
from .sampling import SwitchProfile, make_johnson, make_one_scale, make_two_scale

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC, EXIT_FIT, EXIT_ACCEPTANCE = 0, 2, 3, 4, 5

WINDOW_FIGURES = {
    "fig1": {"kind": "two_scale", "t0_over_tau": 50.0, "t_range": [-30.0, 30.0]},
    "fig2": {"kind": "two_scale", "t0_over_tau": 50.0, "t_range": [-26.0, -16.0]},
    "fig3": {"kind": "johnson", "johnson_a": 2.0, "johnson_betas": [1.5, 1.0, 0.5],
             "t_range": [-1.2, 1.2]},
}

SCHEMAS = {
    "window": {"figure": None, "kind": "two_scale", "tau": 1.0, "t0_over_tau": 50.0,
               "johnson_a": 2.0, "johnson_betas": [1.0], "t_range": None,
               "n_points": 1201},
    "spectrum-fit": {"kind": "one_scale", "tau": 1.0, "t0_over_tau": 50.0,
                     "johnson_a": 2.0, "johnson_beta": 1.0, "grid": "envelope",
                     "omega_tau_max": 150.0, "d_omega_tau": 0.05,
                     "fit_window": [20.0, 150.0], "fix_eta": None,
                     "power": reproduce.FIT_POWER, "envelope_centers": 24},
    "dist": {"p": 7, "eta": 0.5, "beta": 1.0, "gamma0": 1.0, "tau": 1.0, "t0": 50.0,
             "ell": 0.1, "regime": "worldline", "symmetric": False,
             "experimental_c0": False, "x_values": [1e1, 1e2, 1e4, 1e6, 1e8, 1e10]},
    "modesum": {"p": 7, "gamma": 1.0, "beta": math.sqrt(2.0), "eta": 0.5, "tau": 1.0,
                "prefactor": 1.0, "spacing": 1.0,
                "cutoffs_omega_tau": [100.0, 200.0, 400.0, 800.0, 1600.0],
                "flat_spacing": 0.5, "flat_cutoffs_omega_tau": [10.0, 20.0, 40.0],
                "linear_field_taus": [1.0, 2.0]},
    "recoil": {"n": 50, "mass_amu": 1.0, "tau_s": 1e-15, "t0_over_tau": 50.0,
               "beta": 1.0, "gamma0": 1.0, "temperature_k": 1e-6,
               "photon_energy_ev": 1.0, "n_min": 20, "n_max": 77,
               "tau_over_r0_coefficient": None},
    "reproduce": {"fig4_coefficient": reproduce.FIG4_COEFFICIENT, "fig4_n_min": 20,
                  "fig4_n_max": 77},
}


def _check_type(key, value, default):
    if default is None or value is None:
        return value
    if isinstance(default, bool):
        ok = isinstance(value, bool)
    elif isinstance(default, (int, float)):
        ok = isinstance(value, (int, float)) and not isinstance(value, bool)
        if ok and isinstance(default, int) and not isinstance(default, bool):
            ok = float(value).is_integer()
            value = int(value) if ok else value
    elif isinstance(default, (list, str)):
        ok = isinstance(value, type(default))
    else:
        ok = True
    if not ok:
        raise ConfigError(f"config key {key!r} has the wrong type: {value!r}")
    if isinstance(value, float) and not math.isfinite(value):
        raise ConfigError(f"config key {key!r} must be finite")
    return value


def load_config(command, path=None):
    """Merge a JSON config file over the command defaults; unknown keys abort."""
    schema = SCHEMAS[command]
    raw = {}
    if path is not None:
        try:
            raw = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        if not isinstance(raw, dict):
            raise ConfigError("config must be a JSON object")
    unknown = sorted(set(raw) - set(schema))
    if unknown:
        raise ConfigError(f"unknown config keys for {command}: {', '.join(unknown)}")
    cfg = dict(schema)
    if command == "window" and raw.get("figure") is not None:
        if raw["figure"] not in WINDOW_FIGURES:
            raise ConfigError(f"unknown figure {raw['figure']!r}")
        cfg.update(WINDOW_FIGURES[raw["figure"]])
    for key, value in raw.items():
        cfg[key] = _check_type(key, value, schema[key])
    return cfg


def _fmt(v):
    if v is None:
        return ""
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return str(int(v))
    return format(float(v), ".17g")


def write_csv(path, header, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([_fmt(v) for v in row])


def write_json(path, obj):
    Path(path).write_text(json.dumps(obj, sort_keys=True, indent=2, allow_nan=False) + "\n")


def write_plot(path, data, xlabel, ylabel, columns, logy=False):
    lines = ["set datafile separator ','", f"set xlabel '{xlabel}'", f"set ylabel '{ylabel}'"]
    if logy:
        lines.append("set logscale y")
    plots = [f"'{data}' using 1:{c} every ::1 with lines title '{t}'" for c, t in columns]
    lines.append("plot " + ", \\\n     ".join(plots))
    Path(path).write_text("\n".join(lines) + "\n")


def _positive(cfg, *keys):
    for k in keys:
        if cfg[k] is None or not cfg[k] > 0:
            raise ConfigError(f"{k} must be positive")


def cmd_window(cfg, out):
    _positive(cfg, "tau")
    tau = cfg["tau"]
    if cfg["n_points"] < 1:
        raise ConfigError("the t-grid is empty")
    kind = cfg["kind"]
    if kind == "johnson":
        if not cfg["johnson_betas"]:
            raise ConfigError("johnson_betas is empty")
        windows = [(f"beta={b:g}", make_johnson(SwitchProfile.johnson(tau, cfg["johnson_a"], b)))
                   for b in cfg["johnson_betas"]]
        default_range = [-1.2, 1.2]
    elif kind == "two_scale":
        windows = [("", make_two_scale(SwitchProfile.exp_inverse(tau),
                                       cfg["t0_over_tau"] * tau))]
        h = 0.6 * cfg["t0_over_tau"]
        default_range = [-h, h]
    elif kind == "one_scale":
        windows = [("", make_one_scale(SwitchProfile.exp_inverse(tau)))]
        default_range = [-1.2, 1.2]
    else:
        raise ConfigError(f"unknown window kind {kind!r}")
    lo, hi = cfg["t_range"] or default_range
    if not hi > lo:
        raise ConfigError("t_range must be increasing")
    x = np.linspace(lo, hi, cfg["n_points"])
    cols = [tau * sf(x * tau) for _, sf in windows]
    header = ["t_over_tau", "f_times_tau"]
    if len(windows) > 1:
        header = ["t_over_tau"] + [f"f_times_tau[{label}]" for label, _ in windows]
    write_csv(out / "window.csv", header, zip(x, *cols))
    write_plot(out / "window.plot.gp", "window.csv", "t / tau", "tau f(t)",
               [(i + 2, header[i + 1]) for i in range(len(windows))])
    norms = {label or kind: sf.norm_constant for label, sf in windows}
    write_json(out / "window.json", {"kind": kind, "norm_constants": norms})
    return EXIT_OK


def _spectrum_window(cfg):
    tau = cfg["tau"]
    kind = cfg["kind"]
    if kind == "one_scale":
        return make_one_scale(SwitchProfile.exp_inverse(tau))
    if kind == "two_scale":
        return make_two_scale(SwitchProfile.exp_inverse(tau), cfg["t0_over_tau"] * tau)
    if kind == "johnson":
        return make_johnson(SwitchProfile.johnson(tau, cfg["johnson_a"], cfg["johnson_beta"]))
    raise ConfigError(f"unknown window kind {kind!r}")


def cmd_spectrum_fit(cfg, out):
    _positive(cfg, "tau", "omega_tau_max", "d_omega_tau")
    tau = cfg["tau"]
    lo, hi = cfg["fit_window"] if len(cfg["fit_window"]) == 2 else (None, None)
    if lo is None or not hi > lo:
        raise ConfigError("fit_window must be [lo, hi] with hi > lo")
    if cfg["omega_tau_max"] < 40 or hi < 40:
        raise ConfigError("the grid and fit window must reach omega tau >= 40")
    if hi > cfg["omega_tau_max"]:
        raise ConfigError("fit_window extends beyond omega_tau_max")
    power = cfg["power"]
    if power is not None and power != "free" and not isinstance(power, (int, float)):
        raise ConfigError("power must be null, a number or 'free'")
    sf = _spectrum_window(cfg)
    if cfg["grid"] == "envelope":
        period = np.pi / sf.half_width
        centers = np.geomspace(max(lo - 1.0, 1.0), hi + 1.0, cfg["envelope_centers"]) / tau
        grid = spectral.envelope_grid(centers, period)
    elif cfg["grid"] == "uniform":
        n = int(round(cfg["omega_tau_max"] / cfg["d_omega_tau"]))
        grid = np.linspace(0.0, n * cfg["d_omega_tau"], n + 1) / tau
    else:
        raise ConfigError(f"unknown grid {cfg['grid']!r}")
    spec = spectral.fourier_transform(sf, grid)
    write_csv(out / "spectrum.csv", ["omega_tau", "fhat"], zip(spec.omega_tau, spec.values))
    fit = spectral.fit_tail(spec, (lo / tau, hi / tau), fix_eta=cfg["fix_eta"], power=power)
    report = fit.to_dict()
    report["residual"] = report.pop("rms_residual")
    report["norm_constant"] = sf.norm_constant
    report["kind"] = cfg["kind"]
    write_json(out / "tailfit.json", report)
    write_plot(out / "spectrum.plot.gp", "spectrum.csv", "omega tau", "|fhat|",
               [("(abs($2))", "|fhat|")], logy=True)
    return EXIT_OK


def cmd_dist(cfg, out):
    params = dist.DistributionParams(cfg["p"], cfg["eta"], cfg["beta"], cfg["gamma0"],
                                     cfg["tau"], cfg["t0"], cfg["ell"], cfg["experimental_c0"])
    rows = []
    for x in cfg["x_values"]:
        pdf = dist.pdf_tail(x, params, cfg["regime"], cfg["symmetric"])
        try:
            band = dist.band_probability(abs(x), params)
        except (RegimeError, ConfigError):
            band = None
        rows.append((x, pdf, band))
    write_csv(out / "dist.csv", ["x", "pdf_tail", "band_probability"], rows)
    summary = params.summary()
    summary["regime"] = cfg["regime"]
    summary["notes"] = {k: reproduce.NOTES[k] for k in ("b_sign", "c0_exponent")}
    write_json(out / "dist.json", summary)
    write_plot(out / "dist.plot.gp", "dist.csv", "x", "P(x)", [(2, "tail")], logy=True)
    return EXIT_OK


def cmd_modesum(cfg, out):
    _positive(cfg, "tau", "spacing", "flat_spacing")
    tail = modesum.model_spectrum(cfg["gamma"], cfg["beta"], cfg["eta"], cfg["tau"])
    rows = []
    for label, spec, spacing, cuts in (
            ("tail", tail, cfg["spacing"], cfg["cutoffs_omega_tau"]),
            ("flat", modesum.flat_spectrum, cfg["flat_spacing"], cfg["flat_cutoffs_omega_tau"])):
        cuts = [c / cfg["tau"] for c in cuts]
        var = modesum.variance_vs_cutoff(spec, cfg["p"], spacing / cfg["tau"], cuts,
                                         cfg["prefactor"])
        rows += [(label, c * cfg["tau"], v) for c, v in zip(cuts, var)]
    with open(out / "modesum.csv", "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["spectrum", "cutoff_omega_tau", "variance"])
        for label, c, v in rows:
            w.writerow([label, _fmt(c), _fmt(v)])
    sigma = {}
    for tau in cfg["linear_field_taus"]:
        sf = make_one_scale(SwitchProfile.exp_inverse(tau))
        sigma[format(tau, "g")] = modesum.linear_field_variance(
            spectral.spectrum_callable(sf), tau)
    write_json(out / "modesum.json", {"linear_field_variance": sigma, "p": cfg["p"]})
    return EXIT_OK


def _fig4_outputs(out, table):
    write_csv(out / "fig4.csv", ["n", "tau_over_r0", "probability"],
              zip(table.n, table.tau_over_r0, table.probability))
    write_plot(out / "fig4.plot.gp", "fig4.csv", "n", "P(x*)", [(3, "P(x*)")])


def cmd_recoil(cfg, out):
    atom = rydberg.AtomModel(cfg["n"], cfg["mass_amu"], cfg["tau_s"],
                             cfg["t0_over_tau"] * cfg["tau_s"], cfg["beta"], cfg["gamma0"])
    coef = cfg["tau_over_r0_coefficient"]
    s = atom.tau_over_r0 if coef is None else coef / atom.n ** 2
    v, vt = rydberg.v_bar(atom), rydberg.v_thermal(cfg["temperature_k"], cfg["mass_amu"])
    vr = rydberg.v_recoil(cfg["photon_energy_ev"], cfg["mass_amu"])
    report = {
        "n": atom.n, "tau_over_r0": s, "worldline_valid": bool(s >= 1.0),
        "v_bar": v.value, "v_bar_m_s": v.si, "v_thermal": vt.value, "v_thermal_m_s": vt.si,
        "v_recoil": vr.value, "v_recoil_m_s": vr.si,
        "prob_at_xstar": rydberg.prob_at_xstar(atom, s) if s >= 1.0 else None,
        "lifetime_note": rydberg.LIFETIME_NOTE,
    }
    table = rydberg.fig4_curve(atom.tau, atom.beta, atom.gamma0,
                               range(cfg["n_min"], cfg["n_max"] + 1), atom.mass_amu, coef)
    report["fig4_excluded_n"] = list(table.excluded)
    report["fig4_empty"] = table.empty
    write_json(out / "recoil.json", report)
    _fig4_outputs(out, table)
    if table.empty:
        print("warning: no n in range satisfies tau >= r0; fig4.csv is empty",
              file=sys.stderr)
    return EXIT_OK


def cmd_reproduce(cfg, out):
    checks = reproduce.run_all()
    table = reproduce.fig4_table(cfg["fig4_coefficient"],
                                 range(cfg["fig4_n_min"], cfg["fig4_n_max"] + 1))
    _fig4_outputs(out, table)
    rep = reproduce.report(checks)
    write_json(out / "report.json", rep)
    lines = [c.line() for c in checks]
    lines += ["", "notes:"] + [f"  {k}: {v}" for k, v in sorted(rep["notes"].items())]
    (out / "report.txt").write_text("\n".join(lines) + "\n")
    print("\n".join(lines[:len(checks)]))
    return EXIT_OK if rep["all_passed"] else EXIT_ACCEPTANCE


COMMANDS = {"window": cmd_window, "spectrum-fit": cmd_spectrum_fit, "dist": cmd_dist,
            "modesum": cmd_modesum, "recoil": cmd_recoil, "reproduce": cmd_reproduce}


def build_parser():
    ap = argparse.ArgumentParser(prog="qvac", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"qvac {__version__}")
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("--config", type=Path, default=None, help="JSON parameter file")
    ap.add_argument("--out", type=Path, default=Path("."), help="output directory")
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.command, args.config)
        args.out.mkdir(parents=True, exist_ok=True)
        code = COMMANDS[args.command](cfg, args.out)
        write_json(args.out / "run_meta.json",
                   {"backend": BACKEND, "command": args.command, "config": cfg,
                    "version": __version__})
        return code
    except FitError as exc:
        print(f"fit failed: {exc}", file=sys.stderr)
        return EXIT_FIT
    except (ConfigError, RegimeError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ConvergenceError, ArithmeticError, FloatingPointError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
