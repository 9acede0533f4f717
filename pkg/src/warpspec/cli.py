"""Command-line front end.

Subcommands: constants, lambda-c, verify, rigidity-sweep, mu-profile,
emit-model.  Options come from flags, optionally layered over a flat
``key = value`` config file (``--config``); flags win.

Exit codes: 0 success, 1 a verification check failed, 2 invalid input,
3 numerical non-convergence.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from . import closedform as cf
from . import geometry as geo
from . import harmonic3d as h3
from . import spectral as sp
from .errors import IncomparableDomains, InvalidInput, NumericalFailure
from .profile import RadialProfile

COMMANDS = ("constants", "lambda-c", "verify", "rigidity-sweep", "mu-profile", "emit-model")
SUITES = ("closed-form", "f-ode", "xi-ode", "mu", "model-relations", "eigenfunction", "drift")
KINDS = ("angular-scale", "stretch")
SWEEP_COLUMNS = ("epsilon", "dominates", "lambda_c", "gap", "err")
THREADS_ENV = "WARPSPEC_THREADS"

# config-file keys and the flag destinations they feed
CONFIG_KEYS = {
    "n": "n",
    "kappa": "kappa",
    "lambda": "lam",
    "metric": "metric",
    "mu": "mu",
    "schedule": "schedule",
    "suite": "suite",
    "kind": "kind",
    "amplitudes": "amplitudes",
    "out": "out",
    "format": "fmt",
    "max_iter": "max_iter",
    "samples": "samples",
}

DEFAULTS = {
    "n": 3,
    "kappa": 1.0,
    "lam": 6.0,
    "metric": "model",
    "mu": "none",
    "schedule": "N=256,512,1024,2048;eps=T/50,T/100,T/200",
    "suite": None,
    "kind": "angular-scale",
    "amplitudes": "0,0.01,0.05,0.1",
    "out": None,
    "fmt": "json",
    "max_iter": 6,
    "samples": None,
}


@dataclass(frozen=True)
class RunConfig:
    command: str
    n: int
    kappa: float
    lam: float
    metric: str
    mu: str
    schedule: sp.Schedule
    suite: Optional[str]
    kind: str
    amplitudes: tuple
    out: Optional[str]
    fmt: str
    max_iter: int
    samples: Optional[int]

    @property
    def params(self) -> cf.SpectralParams:
        return cf.SpectralParams(self.kappa, self.lam)

    def echo(self) -> dict:
        return {
            "command": self.command,
            "n": self.n,
            "kappa": self.kappa,
            "lambda": self.lam,
            "metric": self.metric,
            "mu": self.mu,
            "schedule": {"N": list(self.schedule.Ns), "eps_fracs": list(self.schedule.eps_fracs)},
            "suite": self.suite,
            "kind": self.kind,
            "amplitudes": list(self.amplitudes),
            "format": self.fmt,
            "max_iter": self.max_iter,
            "samples": self.samples,
        }


# -- parsing -------------------------------------------------------------------


def parse_schedule(text: str) -> sp.Schedule:
    """``N=256,512,1024;eps=T/50,T/100,T/200`` (eps also as plain fractions)."""
    parts = {}
    for chunk in text.split(";"):
        if not chunk.strip():
            continue
        key, sep, val = chunk.partition("=")
        if not sep or key.strip() not in ("N", "eps"):
            raise InvalidInput(f"bad schedule component {chunk!r}")
        parts[key.strip()] = [v.strip() for v in val.split(",") if v.strip()]
    if set(parts) != {"N", "eps"}:
        raise InvalidInput("schedule needs both N=... and eps=...")
    try:
        Ns = tuple(int(v) for v in parts["N"])
        fracs = []
        for v in parts["eps"]:
            if v.startswith("T/"):
                fracs.append(1.0 / float(v[2:]))
            else:
                fracs.append(float(v))
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidInput(f"bad schedule {text!r}: {exc}") from exc
    return sp.Schedule(Ns, tuple(fracs))


def read_config_file(path) -> dict:
    out = {}
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines()
    except (OSError, UnicodeDecodeError) as exc:
        raise InvalidInput(f"cannot read config {path}: {exc}") from exc
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, val = line.partition("=")
        key = key.strip()
        if not sep or not key:
            raise InvalidInput(f"{path}:{lineno}: expected 'key = value'")
        if key not in CONFIG_KEYS:
            raise InvalidInput(f"{path}:{lineno}: unknown key {key!r}")
        out[CONFIG_KEYS[key]] = val.strip()
    return out


def _typed(name: str, value):
    if value is None:
        return None
    try:
        if name in ("n", "max_iter", "samples"):
            f = float(value)
            if f != int(f):
                raise ValueError(f"{value!r} is not an integer")
            return int(f)
        if name in ("kappa", "lam"):
            f = float(value)
            if not math.isfinite(f):
                raise ValueError(f"{value!r} is not finite")
            return f
    except (TypeError, ValueError, OverflowError) as exc:
        raise InvalidInput(f"bad value for {name}: {exc}") from exc
    return value


def build_config(command: str, flags: dict) -> RunConfig:
    merged = dict(DEFAULTS)
    if flags.get("config"):
        merged.update(read_config_file(flags["config"]))
    for key, val in flags.items():
        if key in DEFAULTS and val is not None:
            merged[key] = val
    vals = {k: _typed(k, v) for k, v in merged.items()}
    if vals["n"] < 3:
        raise InvalidInput("n must be >= 3")
    # validates kappa and lambda
    cf.SpectralParams(vals["kappa"], vals["lam"])
    if vals["fmt"] not in ("json", "csv"):
        raise InvalidInput("format must be json or csv")
    if vals["kind"] not in KINDS:
        raise InvalidInput(f"kind must be one of {', '.join(KINDS)}")
    if vals["mu"] not in ("none", "profile"):
        raise InvalidInput("mu must be 'none' or 'profile'")
    if vals["suite"] is not None and vals["suite"] not in SUITES:
        raise InvalidInput(f"suite must be one of {', '.join(SUITES)}")
    if command == "verify" and vals["suite"] is None:
        raise InvalidInput("verify needs --suite")
    if vals["max_iter"] < 0:
        raise InvalidInput("max_iter must be >= 0")
    if vals["samples"] is not None and vals["samples"] < 8:
        raise InvalidInput("samples must be >= 8")
    try:
        amps = tuple(float(a) for a in str(vals["amplitudes"]).split(",") if a.strip())
    except ValueError as exc:
        raise InvalidInput(f"bad amplitude list: {exc}") from exc
    if not amps or any(not (a >= 0 and math.isfinite(a)) for a in amps):
        raise InvalidInput("amplitudes must be a non-empty list of finite values >= 0")
    metric = str(vals["metric"])
    if metric not in ("model", "round") and not metric.startswith("file:"):
        raise InvalidInput("metric must be model, round or file:PATH")
    return RunConfig(
        command=command,
        n=vals["n"],
        kappa=vals["kappa"],
        lam=vals["lam"],
        metric=metric,
        mu=vals["mu"],
        schedule=parse_schedule(str(vals["schedule"])),
        suite=vals["suite"],
        kind=vals["kind"],
        amplitudes=amps,
        out=vals["out"],
        fmt=vals["fmt"],
        max_iter=vals["max_iter"],
        samples=vals["samples"],
    )


# -- report plumbing -----------------------------------------------------------


def verdict(measured: float, threshold: float, relation: str = "<") -> dict:
    if relation == "<":
        passed = bool(measured < threshold)
    elif relation == ">":
        passed = bool(measured > threshold)
    else:
        raise ValueError(relation)
    return {"passed": passed, "measured": measured, "threshold": threshold, "relation": relation}


def _clean(obj):
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_clean(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return x if math.isfinite(x) else repr(x)
    return obj


def make_bundle(cfg: RunConfig, results: dict, diagnostics: dict, verdicts: dict) -> dict:
    return _clean({"config": cfg.echo(), "results": results, "diagnostics": diagnostics, "verdicts": verdicts})


def render(bundle: dict, fmt: str, rows: Optional[list] = None, columns=None) -> str:
    if fmt == "json":
        return json.dumps(bundle, indent=2, allow_nan=False) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if rows is not None:
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_csv_cell(row[c]) for c in columns])
    else:
        writer.writerow(("check", "passed", "measured", "threshold"))
        for name, v in bundle["verdicts"].items():
            writer.writerow([name, _csv_cell(v["passed"]), _csv_cell(v["measured"]), _csv_cell(v["threshold"])])
    return buf.getvalue()


def _csv_cell(x):
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return repr(x)
    return str(x)


# -- shared helpers ------------------------------------------------------------


def resolve_metric(cfg: RunConfig) -> geo.WarpedMetric:
    if cfg.metric == "model":
        if cfg.kappa == 0 and cfg.lam == cfg.n * (cfg.n - 1):
            return geo.WarpedMetric.round(cfg.n)
        return geo.make_model_metric(cfg.n, cf.constants_nd(cfg.n, cfg.params))
    if cfg.metric == "round":
        return geo.WarpedMetric.round(cfg.n)
    return geo.read_warp_csv(cfg.metric[len("file:"):], cfg.n)


def _needs_positive_kappa(cfg: RunConfig, what: str):
    if cfg.kappa == 0:
        raise InvalidInput(f"{what} needs kappa > 0")


def _solution_summary(sol: sp.EigenSolution) -> dict:
    return {
        "lambda_c": sol.eigenvalue,
        "error_bar": sol.error_bar,
        "residual": sol.residual,
    }


def _order_verdicts(diag: dict) -> dict:
    out = {}
    for frac, p in zip(diag["eps_fracs"], diag["observed_orders"]):
        measured = abs(p - 2.0) if math.isfinite(p) else math.inf
        out[f"observed_order_eps_T/{1 / frac:.6g}"] = verdict(measured, 0.3)
    return out


# -- commands ------------------------------------------------------------------


def cmd_constants(cfg: RunConfig):
    n, params = cfg.n, cfg.params
    m = cf.constants_nd(n, params)
    results = {
        "a": m.a,
        "b": m.b,
        "a1": m.a1,
        "beta2": m.beta2,
        "lambda_exp": m.lambda_exp,
        "alpha": m.alpha,
        "T": m.T,
        "c": params.c,
    }
    precise = cf.relation_residuals(n, params, precise=True)
    plain = cf.relation_residuals(n, params, precise=False)
    diagnostics = {"residuals_extended": precise, "residuals_float": plain}
    verdicts = {f"{k}_extended": verdict(v, 1e-12) for k, v in precise.items()}
    verdicts.update({f"{k}_float": verdict(v, 1e-12) for k, v in plain.items()})
    if n == 3:
        gaps = cf.specialization_gap(params)
        diagnostics["specialization_3d"] = gaps
        verdicts.update({f"specialization_{k}": verdict(v, 1e-14) for k, v in gaps.items()})
    return make_bundle(cfg, results, diagnostics, verdicts)


def cmd_lambda_c(cfg: RunConfig):
    metric = resolve_metric(cfg)
    params = cfg.params
    results = {"T": metric.T, "target": cfg.lam}
    if params.kappa == 0:
        value = sp.scalar_inf(metric)
        results.update({"mode": "pointwise", "scalar_inf": value, "gap": cfg.lam - value})
        verdicts = {}
        if not cfg.metric.startswith("file:"):
            verdicts["scalar_inf_meets_target"] = verdict(abs(value - cfg.lam) / cfg.lam, 1e-10)
        return make_bundle(cfg, results, {}, verdicts)
    mu = "profile" if cfg.mu == "profile" else None
    sol = sp.lambda_c(metric, params, mu=mu, schedule=cfg.schedule, max_iter=cfg.max_iter)
    target = 0.0 if mu else cfg.lam
    results.update(_solution_summary(sol))
    results.update({"mode": "mu-shifted" if mu else "spectral", "target": target, "gap": target - sol.eigenvalue})
    sector = sol.diagnostics["sector"]
    results["sector"] = sector
    verdicts = _order_verdicts(sol.diagnostics)
    verdicts["sector_ordering"] = verdict(sector["gap"], 0.0, ">")
    if cfg.metric in ("model", "round") or mu:
        scale = cfg.lam if not mu else 1.0
        verdicts["reproduces_target"] = verdict(abs(sol.eigenvalue - target) / scale, 1e-3)
    return make_bundle(cfg, results, sol.diagnostics, verdicts)


def _model_only(cfg: RunConfig, metric: geo.WarpedMetric) -> bool:
    return cfg.metric in ("model", "round") and metric.analytic


def cmd_verify(cfg: RunConfig):
    suite = cfg.suite
    n, params = cfg.n, cfg.params
    results, diagnostics, verdicts = {}, {}, {}
    if suite == "closed-form":
        bundle = cmd_constants(cfg)
        return make_bundle(cfg, bundle["results"], bundle["diagnostics"], bundle["verdicts"])
    if suite == "f-ode":
        consts = cf.constants_nd(n, params)
        grid = np.linspace(1e-3, 1 - 1e-3, 2001) * consts.T
        res = cf.check_f_ode(consts, params, n, grid)
        mid_terms = [float(t[0]) for t in cf.f_ode_terms(np.array([consts.T / 2]), consts, params, n)]
        results = {"max_residual": res, "midpoint_terms": mid_terms}
        verdicts["f_ode"] = verdict(res, 1e-10)
        metric = geo.make_model_metric(n, consts)
        fw = cf.f_warp(metric, params.kappa, grid)
        gap = float(np.max(np.abs(fw.values - cf.f_cot(grid, consts, n)) / np.maximum(1.0, np.abs(fw.values))))
        results["f_warp_vs_f_cot"] = gap
        verdicts["f_warp_matches_f_cot"] = verdict(gap, 1e-12)
    elif suite == "xi-ode":
        if n != 3:
            raise InvalidInput("xi-ode suite is three-dimensional")
        _needs_positive_kappa(cfg, "xi-ode")
        metric = resolve_metric(cfg)
        grid = metric.interior_grid(2001, 1e-3)
        res = cf.check_xi_ode(metric, params, grid)
        xi = cf.xi_profile(metric, params.kappa, grid)
        results = {"max_residual": res, "min_xi_prime": float(np.min(xi.d1))}
        verdicts["xi_ode"] = verdict(res, 1e-9)
        verdicts["xi_nondecreasing"] = verdict(float(np.min(xi.d1)), 0.0, ">")
    elif suite == "mu":
        _needs_positive_kappa(cfg, "mu")
        metric = resolve_metric(cfg)
        grid = metric.interior_grid(2001, 1e-3)
        mu = cf.mu_profile(metric, params.kappa, grid)
        res = sp.verify_eigen_mu(metric, params.kappa, grid)
        results = {"mu_min": float(np.min(mu.values)), "mu_max": float(np.max(mu.values)), "eigen_residual": res}
        verdicts["eigen_mu"] = verdict(res, 1e-8)
        if _model_only(cfg, metric):
            dev = float(np.max(np.abs(mu.values - cfg.lam)) / cfg.lam)
            results["mu_minus_lambda"] = dev
            verdicts["mu_constant"] = verdict(dev, 1e-8)
    elif suite == "model-relations":
        if n != 3:
            raise InvalidInput("model-relations suite is three-dimensional")
        _needs_positive_kappa(cfg, "model-relations")
        metric = resolve_metric(cfg)
        target = cfg.lam if _model_only(cfg, metric) else None
        report = h3.check_model_relations(metric, params.kappa, target)
        for name, chk in report.checks.items():
            results[name] = {"residual": chk.residual, "passed": chk.passed, "expect_failure": chk.expect_failure}
            relation = ">" if chk.expect_failure else "<"
            verdicts[name + ("_rejected" if chk.expect_failure else "")] = verdict(chk.residual, chk.threshold, relation)
    elif suite == "eigenfunction":
        _needs_positive_kappa(cfg, "eigenfunction")
        metric = resolve_metric(cfg)
        res = sp.verify_eigen_mu(metric, params.kappa)
        results["eigen_residual"] = res
        verdicts["eigen_mu"] = verdict(res, 1e-8)
        if _model_only(cfg, metric):
            lam_exp = 2.0 / (4.0 - params.kappa)
            t = np.linspace(1e-6, 1 - 1e-6, 200001) * metric.T
            s = np.sin(metric.b * t)
            u = RadialProfile(t, s**lam_exp, lam_exp * metric.b * np.cos(metric.b * t) * s ** (lam_exp - 1))
            rq = sp.rayleigh_quotient(metric, params, u)
            results["rayleigh_quotient"] = rq
            verdicts["rayleigh_equals_lambda"] = verdict(abs(rq - cfg.lam) / cfg.lam, 1e-6)
    elif suite == "drift":
        metric = resolve_metric(cfg)
        rep = geo.drift_asymptotics(metric, params.kappa)
        expected = -geo.drift_coefficient(n, params.kappa)
        results = {"c1": rep.c1, "c2": rep.c2, "expected": expected}
        diagnostics = {"residual_left": rep.residual_left, "residual_right": rep.residual_right, "window": list(rep.window)}
        verdicts["c1"] = verdict(abs(rep.c1 / expected - 1.0), 0.01)
        verdicts["c2"] = verdict(abs(rep.c2 / expected - 1.0), 0.01)
    return make_bundle(cfg, results, diagnostics, verdicts)


def _sweep_row(cfg: RunConfig, g0: geo.WarpedMetric, eps: float) -> dict:
    params = cfg.params
    if cfg.kind == "angular-scale":
        g = g0.with_angular_scale(1.0 + eps)
        dom = geo.metric_dominates(g, g0)
    else:
        samples = cfg.samples or 4097
        t = np.linspace(0.0, g0.T, samples)
        phi, d1, d2 = g0.derivs(t)
        phi[0] = phi[-1] = 0.0
        w = RadialProfile.constant(t, 1.0 + eps)
        g = geo.normalize_arclength(w, RadialProfile(t, phi, d1, d2), g0.n)
        dom = geo.gauge_dominates(w, RadialProfile(t, phi), g0)
    sol = sp.lambda_c(g, params, schedule=cfg.schedule, sector_check=False, max_iter=cfg.max_iter)
    return {
        "epsilon": eps,
        "dominates": dom.verdict.label,
        "lambda_c": sol.eigenvalue,
        "gap": cfg.lam - sol.eigenvalue,
        "err": sol.error_bar,
        "witness": dom.witness,
        "observed_orders": sol.diagnostics["observed_orders"],
    }


def cmd_rigidity_sweep(cfg: RunConfig):
    _needs_positive_kappa(cfg, "rigidity-sweep")
    if cfg.metric.startswith("file:"):
        raise InvalidInput("rigidity sweeps perturb the model metric; use --metric model or round")
    g0 = resolve_metric(cfg)
    threads = int(os.environ.get(THREADS_ENV, "1") or 1)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(lambda e: _sweep_row(cfg, g0, e), cfg.amplitudes))
    else:
        rows = [_sweep_row(cfg, g0, e) for e in cfg.amplitudes]
    verdicts = {}
    for row in rows:
        eps = row["epsilon"]
        if eps == 0:
            verdicts[f"zero_gap_eps_{eps!r}"] = verdict(abs(row["gap"]), 1e-3)
        else:
            margin = row["gap"] / (3.0 * row["err"]) if row["err"] > 0 else math.inf
            verdicts[f"strict_gap_eps_{eps!r}"] = verdict(margin, 1.0, ">")
            verdicts[f"strict_domination_eps_{eps!r}"] = verdict(float(row["dominates"] == "true_strict"), 0.5, ">")
    ordered = sorted(rows, key=lambda r: r["epsilon"])
    steps = [b["lambda_c"] - a["lambda_c"] for a, b in zip(ordered, ordered[1:]) if b["epsilon"] > a["epsilon"]]
    if steps:
        verdicts["lambda_c_decreasing"] = verdict(max(steps), 0.0, "<")
    results = {"rows": [{k: r[k] for k in SWEEP_COLUMNS} for r in rows], "kind": cfg.kind}
    diagnostics = {"witness": [r["witness"] for r in rows], "observed_orders": [r["observed_orders"] for r in rows]}
    return make_bundle(cfg, results, diagnostics, verdicts)


def cmd_mu_profile(cfg: RunConfig):
    _needs_positive_kappa(cfg, "mu-profile")
    metric = resolve_metric(cfg)
    grid = metric.interior_grid(cfg.samples or 201, 1e-2)
    mu = cf.mu_profile(metric, cfg.kappa, grid)
    rows = [{"t": float(t), "mu": float(m)} for t, m in zip(grid, mu.values)]
    verdicts = {"mu_finite": verdict(float(np.all(np.isfinite(mu.values))), 0.5, ">")}
    return make_bundle(cfg, {"rows": rows}, {}, verdicts)


def cmd_emit_model(cfg: RunConfig):
    metric = resolve_metric(cfg)
    if not metric.analytic:
        raise InvalidInput("emit-model writes the model or round warp only")
    return metric


HANDLERS = {
    "constants": cmd_constants,
    "lambda-c": cmd_lambda_c,
    "verify": cmd_verify,
    "rigidity-sweep": cmd_rigidity_sweep,
    "mu-profile": cmd_mu_profile,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", default=None, help="dimension (default 3)")
    common.add_argument("--kappa", default=None, help="kappa = 1/c in [0, 4) (default 1)")
    common.add_argument("--lambda", dest="lam", default=None, help="spectral target Lambda (default 6)")
    common.add_argument("--metric", default=None, help="model | round | file:PATH (default model)")
    common.add_argument("--mu", default=None, help="none | profile: shift the operator by the relation-defined mu")
    common.add_argument("--schedule", default=None, help="e.g. 'N=256,512,1024;eps=T/50,T/100,T/200'")
    common.add_argument("--max-iter", dest="max_iter", default=None, help="inverse iteration cap (default 6)")
    common.add_argument("--samples", default=None, help="sample count for tables and profiles")
    common.add_argument("--out", default=None, help="output path (default stdout)")
    common.add_argument("--format", dest="fmt", default=None, choices=("json", "csv"))
    common.add_argument("--config", default=None, help="flat 'key = value' file; flags override it")

    parser = argparse.ArgumentParser(prog="warpspec", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name == "verify":
            p.add_argument("--suite", default=None, choices=SUITES)
        if name == "rigidity-sweep":
            p.add_argument("--kind", default=None, choices=KINDS)
            p.add_argument("--amplitudes", default=None, help="comma-separated epsilons")
    return parser


def _emit(text: str, out: Optional[str]):
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    flags = vars(args)
    cfg = build_config(args.command, flags)
    if cfg.command == "emit-model":
        _emit(geo.format_warp_csv(cmd_emit_model(cfg), cfg.samples or 4097), cfg.out)
        return 0
    bundle = HANDLERS[cfg.command](cfg)
    rows = columns = None
    if cfg.fmt == "csv" and cfg.command == "rigidity-sweep":
        rows, columns = bundle["results"]["rows"], SWEEP_COLUMNS
    elif cfg.fmt == "csv" and cfg.command == "mu-profile":
        rows, columns = bundle["results"]["rows"], ("t", "mu")
    _emit(render(bundle, cfg.fmt, rows, columns), cfg.out)
    return 0 if all(v["passed"] for v in bundle["verdicts"].values()) else 1


def main(argv=None) -> int:
    try:
        return run(argv)
    except (InvalidInput, IncomparableDomains) as exc:
        print(f"warpspec: error: {exc}", file=sys.stderr)
        return 2
    except NumericalFailure as exc:
        print(f"warpspec: numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
