"""Experiment runner: Monte Carlo validation of the spectral certificate.

Subcommands (each writes one CSV with a header and a status column):

violin
    For each dataset size N and each trial, fit the quadratic, record
    the extreme eigenvalues of the learned matrix, the certificate
    epsilon, and the certified interval.
    Columns: ``N,trial,status,lambda_min,lambda_max,epsilon,lb,ub``.
timing
    For each problem dimension n, time the relaxed solve against the
    spectrally constrained splitting on the same data (medians over
    ``--trials`` repetitions, default 3).
    Columns: ``n,p,N,status,t_ls_ms,t_sdls_ms,admm_iters``.
coverage
    For each N, the fraction of independent datasets whose learned
    spectrum lands inside the certified interval (per-trial epsilon; the
    epsilon column reports the median across trials).
    Columns: ``N,delta,epsilon,trials,inside_count,coverage,status``.
descent
    For each N and trial, fit the quadratic and run the gradient-style
    iteration against the true fixed point; report the final error, the
    certificate epsilon, and the error-ball bound.
    Columns: ``N,trial,status,gamma,final_error,epsilon,error_ball_bound,iters``.

Reproducibility: identical configuration and seed produce byte-identical
CSVs except for wall-time columns.  The model is drawn from the master
seed; the dataset of trial t at size N uses a stream derived from
``(master_seed, N, t)``, so results do not depend on trial scheduling,
thread count, or the composition of the N list.  Trials run on a small
thread pool and rows are sorted by (N, trial) before writing.

A JSON config file may supply any long-option value (keys named like the
flags, e.g. ``{"n": 10, "N": [100, 1000]}``); explicit flags win.  Exit
codes: 0 on full success, 1 if any row failed, 2 on configuration
errors.
"""

import argparse
import csv
import json
import os
import sys as _sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .admm import AdmmConfig, SdlsProblem, time_solvers
from .certificate import CertificateInputs, epsilon_value, estimate_bound
from .descent import DescentConfig, error_ball_bound, run_descent, step_size_bound
from .errors import DivergenceError
from .quadfit import (
    assemble_design,
    gen_model,
    quadfit_lmi,
    sample,
    true_minimizer,
    unpack,
)
from .ridge import solve_ridge
from .spectral import SpectralBox, lambda_extremes, spectrum_in_box


class ConfigError(Exception):
    pass


def trial_seed(master_seed, N, trial):
    """Deterministic per-(N, trial) dataset seed from the master seed."""
    ss = np.random.SeedSequence((master_seed, int(N), int(trial)))
    return int(ss.generate_state(1, np.uint64)[0])


def _fmt(value):
    # repr(float(...)) is the shortest round-trip form; numpy scalars would
    # otherwise print their type wrapper
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def _write_csv(path, header, rows):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])


def _pool_map(func, items):
    workers = min(8, os.cpu_count() or 1)
    if workers <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))


def _status_err(exc):
    return f"error: {type(exc).__name__}: {exc}"


def _experiment_context(cfg):
    """Model, box, map, and Gram constant shared by the trial commands."""
    model = gen_model(cfg.n, cfg.seed)
    upper = cfg.L if cfg.L is not None else lambda_extremes(model.Q)[1]
    box = SpectralBox(cfg.m, upper)
    fmap = quadfit_lmi(cfg.n, cfg.param)
    return model, box, fmap, fmap.gram_lambda_max()


def _fit_trial(cfg, model, box, gram, N, trial):
    """One dataset: solve the relaxed problem and build its certificate."""
    seed = trial_seed(cfg.seed, N, trial)
    data = sample(model, N, cfg.domain, cfg.noise_sd, seed)
    system = assemble_design(data, cfg.rho, cfg.param)
    solution = solve_ridge(system)
    Qhat, chat, rhat, _ = unpack(solution.x, cfg.n, cfg.param)
    bound = estimate_bound(system, solution.x)
    cert = epsilon_value(
        CertificateInputs(
            B=bound.value,
            rho=cfg.rho,
            N=N,
            ell=cfg.n,
            lambda_max_H=gram,
            delta=cfg.delta,
            box=box,
            B_is_heuristic=bound.is_heuristic,
        )
    )
    return Qhat, chat, rhat, cert


def cmd_violin(cfg):
    model, box, fmap, gram = _experiment_context(cfg)

    def one(task):
        N, trial = task
        try:
            Qhat, _, _, cert = _fit_trial(cfg, model, box, gram, N, trial)
            lo, hi = lambda_extremes(Qhat)
            return (N, trial, "ok", lo, hi, cert.epsilon,
                    cert.interval.lower, cert.interval.upper)
        except Exception as exc:
            return (N, trial, _status_err(exc), "", "", "", "", "")

    tasks = [(N, t) for N in cfg.N for t in range(cfg.trials)]
    rows = sorted(_pool_map(one, tasks), key=lambda r: (r[0], r[1]))
    header = ["N", "trial", "status", "lambda_min", "lambda_max", "epsilon", "lb", "ub"]
    failed = any(r[2] != "ok" for r in rows)
    return header, rows, failed


def cmd_coverage(cfg):
    model, box, fmap, gram = _experiment_context(cfg)

    def one(task):
        N, trial = task
        try:
            Qhat, _, _, cert = _fit_trial(cfg, model, box, gram, N, trial)
            inside = spectrum_in_box(Qhat, box, cert.epsilon)
            return (N, trial, "ok", inside, cert.epsilon)
        except Exception as exc:
            return (N, trial, _status_err(exc), False, np.nan)

    tasks = [(N, t) for N in cfg.N for t in range(cfg.trials)]
    results = _pool_map(one, tasks)
    rows = []
    failed = False
    for N in cfg.N:
        per_n = sorted((r for r in results if r[0] == N), key=lambda r: r[1])
        errors = [r for r in per_n if r[2] != "ok"]
        ok = [r for r in per_n if r[2] == "ok"]
        inside_count = sum(1 for r in ok if r[3])
        coverage = inside_count / len(per_n)
        eps_median = float(np.median([r[4] for r in ok])) if ok else ""
        status = "ok" if not errors else f"error: {len(errors)} trials failed"
        failed = failed or bool(errors)
        rows.append((N, cfg.delta, eps_median, len(per_n), inside_count,
                     coverage, status))
    header = ["N", "delta", "epsilon", "trials", "inside_count", "coverage", "status"]
    return header, rows, failed


def cmd_timing(cfg):
    # timing must stay sequential: concurrent solves would contaminate
    # each other's wall times
    rows = []
    failed = False
    N = cfg.N[0]
    for n in cfg.n_list:
        try:
            model = gen_model(n, cfg.seed)
            upper = cfg.L if cfg.L is not None else lambda_extremes(model.Q)[1]
            box = SpectralBox(cfg.m, upper)
            data = sample(model, N, cfg.domain, cfg.noise_sd,
                          trial_seed(cfg.seed, N, 0))
            system = assemble_design(data, cfg.rho, cfg.param)
            fmap = quadfit_lmi(n, cfg.param)
            prob = SdlsProblem(sys=system, map=fmap, box=box)
            rec = time_solvers(prob, AdmmConfig(), repetitions=cfg.trials)
            rows.append((n, system.dim, N, "ok",
                         rec.median_relaxed * 1e3,
                         rec.median_constrained * 1e3,
                         rec.median_admm_iterations))
        except Exception as exc:
            rows.append((n, "", N, _status_err(exc), "", "", ""))
            failed = True
    header = ["n", "p", "N", "status", "t_ls_ms", "t_sdls_ms", "admm_iters"]
    return header, rows, failed


def cmd_descent(cfg):
    model, box, fmap, gram = _experiment_context(cfg)
    xstar = true_minimizer(model)

    def one(task):
        N, trial = task
        try:
            Qhat, chat, _, cert = _fit_trial(cfg, model, box, gram, N, trial)
            gamma = cfg.gamma
            if gamma is None:
                gamma = 0.9 * step_size_bound(box.upper, cert.epsilon)
            ball = error_ball_bound(model.Q, Qhat, model.c, chat, xstar, gamma)
            trace = run_descent(
                Qhat, chat, xstar,
                DescentConfig(gamma=gamma, x0=np.zeros(cfg.n), max_iter=cfg.iters),
            )
            return (N, trial, "ok", gamma, trace.final_error, cert.epsilon,
                    ball, trace.iterations)
        except DivergenceError as exc:
            return (N, trial, _status_err(exc), "", "", "", "",
                    exc.trace.iterations if exc.trace is not None else "")
        except Exception as exc:
            return (N, trial, _status_err(exc), "", "", "", "", "")

    tasks = [(N, t) for N in cfg.N for t in range(cfg.trials)]
    rows = sorted(_pool_map(one, tasks), key=lambda r: (r[0], r[1]))
    header = ["N", "trial", "status", "gamma", "final_error", "epsilon",
              "error_ball_bound", "iters"]
    failed = any(r[2] != "ok" for r in rows)
    return header, rows, failed


_COMMANDS = {
    "violin": cmd_violin,
    "timing": cmd_timing,
    "coverage": cmd_coverage,
    "descent": cmd_descent,
}

_DEFAULTS = {
    "rho": 1.0,
    "delta": 0.05,
    "noise_sd": 1.0,
    "domain": 10.0,
    "seed": 0,
    "m": 0.0,
    "L": None,
    "gamma": None,
    "iters": 10_000,
    "param": "vec",
    "out": None,
    "n": None,
    "N": None,
    "trials": None,
}


class _Config:
    def __init__(self, **kwargs):
        self.__dict__.update(kwargs)


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="sdlscert",
        description="Monte Carlo experiments for relaxed spectrally "
        "constrained least squares.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, helptext in [
        ("violin", "eigenvalue spread vs dataset size, with certificate bounds"),
        ("timing", "relaxed vs constrained solve times across dimensions"),
        ("coverage", "fraction of trials inside the certified interval"),
        ("descent", "iteration error vs dataset size, with error-ball bounds"),
    ]:
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--n", type=int, nargs="+", default=None,
                       help="problem dimension(s); timing accepts a list")
        p.add_argument("--N", type=int, nargs="+", default=None,
                       help="dataset size(s)")
        p.add_argument("--rho", type=float, default=None,
                       help="regularization weight (default 1)")
        p.add_argument("--delta", type=float, default=None,
                       help="certificate failure probability (default 0.05)")
        p.add_argument("--trials", type=int, default=None,
                       help="trials per N (default 20; timing repetitions default 3)")
        p.add_argument("--seed", type=int, default=None,
                       help="master seed (default 0)")
        p.add_argument("--m", type=float, default=None,
                       help="lower spectral bound (default 0)")
        p.add_argument("--L", type=float, default=None,
                       help="upper spectral bound (default: top eigenvalue "
                            "of the generated model)")
        p.add_argument("--gamma", type=float, default=None,
                       help="descent step size (default: 0.9 * 2/(L+epsilon))")
        p.add_argument("--iters", type=int, default=None,
                       help="descent iteration cap (default 10000)")
        p.add_argument("--noise-sd", dest="noise_sd", type=float, default=None,
                       help="observation noise standard deviation (default 1)")
        p.add_argument("--domain", type=float, default=None,
                       help="sampling halfwidth (default 10)")
        p.add_argument("--param", choices=["vec", "vech"], default=None,
                       help="symmetric-block packing (default vec)")
        p.add_argument("--out", type=str, default=None, help="output CSV path")
        p.add_argument("--config", type=str, default=None,
                       help="JSON file with defaults for any flag")
    return parser


def _merge_config(args):
    file_values = {}
    if args.config is not None:
        try:
            with open(args.config) as fh:
                file_values = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config file: {exc}") from exc
        unknown = set(file_values) - set(_DEFAULTS)
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")

    merged = {}
    for key, default in _DEFAULTS.items():
        flag = getattr(args, key, None)
        if flag is not None:
            merged[key] = flag
        elif key in file_values and file_values[key] is not None:
            merged[key] = file_values[key]
        else:
            merged[key] = default
    return merged


def _validate(command, merged):
    if merged["n"] is None:
        raise ConfigError("--n is required")
    n_list = [int(v) for v in np.atleast_1d(merged["n"])]
    if any(v < 1 for v in n_list):
        raise ConfigError("--n values must be positive")
    if command != "timing" and len(n_list) != 1:
        raise ConfigError(f"{command} takes a single --n value")

    if merged["N"] is None:
        raise ConfigError("--N is required")
    N_list = [int(v) for v in np.atleast_1d(merged["N"])]
    if any(v < 1 for v in N_list):
        raise ConfigError("--N values must be positive")
    if command == "timing" and len(N_list) != 1:
        raise ConfigError("timing takes a single --N value")

    trials = merged["trials"]
    if trials is None:
        trials = 3 if command == "timing" else 20
    if trials < 1:
        raise ConfigError("--trials must be positive")

    if not (merged["rho"] > 0):
        raise ConfigError("--rho must be positive")
    if not (0.0 < merged["delta"] < 1.0):
        raise ConfigError("--delta must lie in (0, 1)")
    if merged["L"] is not None and merged["L"] < merged["m"]:
        raise ConfigError("--L must not be below --m")
    if merged["gamma"] is not None and not (merged["gamma"] > 0):
        raise ConfigError("--gamma must be positive")
    if merged["iters"] < 1:
        raise ConfigError("--iters must be positive")
    if merged["noise_sd"] < 0:
        raise ConfigError("--noise-sd must be nonnegative")
    if not (merged["domain"] > 0):
        raise ConfigError("--domain must be positive")

    out = merged["out"]
    if out is None:
        out = f"{command}.csv"

    return _Config(
        command=command,
        n=n_list[0],
        n_list=n_list,
        N=N_list,
        rho=float(merged["rho"]),
        delta=float(merged["delta"]),
        trials=int(trials),
        seed=int(merged["seed"]),
        m=float(merged["m"]),
        L=None if merged["L"] is None else float(merged["L"]),
        gamma=None if merged["gamma"] is None else float(merged["gamma"]),
        iters=int(merged["iters"]),
        noise_sd=float(merged["noise_sd"]),
        domain=float(merged["domain"]),
        param=merged["param"],
        out=out,
    )


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _validate(args.command, _merge_config(args))
    except ConfigError as exc:
        print(f"config error: {exc}", file=_sys.stderr)
        return 2
    header, rows, failed = _COMMANDS[args.command](cfg)
    _write_csv(cfg.out, header, rows)
    print(f"wrote {len(rows)} rows to {cfg.out}")
    return 1 if failed else 0


if __name__ == "__main__":
    raise SystemExit(main())
