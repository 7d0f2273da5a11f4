"""Command-line interface: ``htrmt <subcommand> [options]``.

Exit status: 0 success, 2 usage error, 3 singular parameters, 4 a verification
check failed.  ``HTRMT_THREADS`` sets the default for ``--threads``.
"""
from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from . import __version__
from .errors import HtrmtError, UsageError, VerificationFailure
from .exactnum import scalar_to_text
from .io import RunConfig, emit, format_csv, format_json
from .recurrences import EnsembleParams, Family, compute_all, covariance_diagonal, covariances, moments0


def _param_args(p, kappa=False):
    p.add_argument("--alpha", help="alpha; rational 'p/q' or decimal")
    p.add_argument("--alpha1", help="first exponent (Laguerre/Jacobi)")
    p.add_argument("--alpha2", help="second exponent (Jacobi)")
    if kappa:
        p.add_argument("--kappa", default=None, help="Dyson chain disorder scale (default 1)")


def _common(p):
    p.add_argument("--output", "-o", default=None, help="output file (default stdout)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="htrmt", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"htrmt {__version__}")
    sub = ap.add_subparsers(dest="subcommand", required=True)

    fams = [f.value for f in Family]
    p = sub.add_parser("moments", help="limiting moments m[p,0] (and m[p,1] with --correction)")
    p.add_argument("--family", required=True, choices=fams)
    _param_args(p)
    p.add_argument("--order", type=int, default=8)
    p.add_argument("--correction", action="store_true", help="also emit the 1/N corrections m[p,1]")
    p.add_argument("--mode", choices=("exact", "float"), default="exact")
    _common(p)

    p = sub.add_parser("covariance", help="limiting covariances mu[(p,q)] and anti-diagonal sums")
    p.add_argument("--family", required=True, choices=[f for f in fams if f != "jacobi-symmetric"])
    _param_args(p)
    p.add_argument("--pmax", type=int, default=4)
    p.add_argument("--qmax", type=int, default=None)
    p.add_argument("--mode", choices=("exact", "float"), default="exact")
    _common(p)

    p = sub.add_parser("density", help="limiting density on a grid")
    p.add_argument("--kind", required=True, choices=("gaussian", "laguerre", "jacobi", "antisym", "antisym-sq"))
    _param_args(p)
    p.add_argument("--grid", nargs=3, metavar=("LO", "HI", "N"), default=None)
    p.add_argument("--check-reflection", action="store_true", help="Jacobi: compare reflected and direct paths")
    _common(p)

    p = sub.add_parser("sample", help="Monte Carlo eigenvalue histogram of a random tridiagonal model")
    p.add_argument("--model", required=True, choices=("antisym-beta", "antisym-alpha", "dyson"))
    p.add_argument("--alpha", required=True)
    p.add_argument("--kappa", default=None)
    p.add_argument("--size", type=int, required=True, help="matrix size (number of masses for dyson)")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--bins", type=int, default=60)
    p.add_argument("--range", nargs=2, type=float, metavar=("LO", "HI"), default=None)
    p.add_argument("--fold", action="store_true", help="histogram |x| over the positive half")
    p.add_argument("--threads", type=int, default=None)
    _common(p)

    p = sub.add_parser("dyson", help="Dyson chain density of states in squared frequency")
    p.add_argument("--alpha", required=True)
    p.add_argument("--grid", nargs=3, metavar=("LO", "HI", "N"), default=None, help="log-spaced y grid")
    _common(p)

    p = sub.add_parser("limits", help="asymptotic limit-law checks")
    p.add_argument("--which", choices=("semicircle", "confluence", "weak-disorder", "all"), default="all")
    p.add_argument("--alpha", default=None)
    p.add_argument("--alpha1", default=None)
    p.add_argument("--alpha2", default=None)
    p.add_argument("--kappa", default=None)
    _common(p)

    p = sub.add_parser("verify", help="run the cross-validation suite")
    p.add_argument("--quick", action="store_true", help="fast subset (< 60 s)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--only", default=None, help="comma-separated criterion keys, e.g. C1,C5")
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--output", "-o", default=None)
    p.add_argument("--format", choices=("json",), default="json")
    return ap


# -- helpers -----------------------------------------------------------------

def _config(args) -> RunConfig:
    keys = ("family", "model", "kind", "alpha", "alpha1", "alpha2", "kappa", "order", "pmax", "qmax", "bins",
            "size", "trials", "seed", "output", "format")
    cfg = RunConfig(args.subcommand, **{k: getattr(args, k) for k in keys if hasattr(args, k)})
    cfg.mode = getattr(args, "mode", "float")
    cfg.correction = bool(getattr(args, "correction", False))
    cfg.fold = bool(getattr(args, "fold", False))
    cfg.quick = bool(getattr(args, "quick", False))
    if getattr(args, "grid", None):
        cfg.grid = [float(args.grid[0]), float(args.grid[1]), int(args.grid[2])]
    if getattr(args, "range", None):
        cfg.edges = [float(args.range[0]), float(args.range[1])]
    if getattr(args, "check_reflection", False):
        cfg.extra["check_reflection"] = True
    if getattr(args, "only", None):
        cfg.extra["only"] = args.only
    if getattr(args, "which", None):
        cfg.extra["which"] = args.which
    return cfg


def _float(value, name, default=None):
    if value is None:
        if default is None:
            raise UsageError(f"--{name} is required")
        return default
    try:
        from fractions import Fraction
        return float(Fraction(value))
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"--{name}: not a number: {value!r}") from None


def _ensemble(cfg: RunConfig) -> EnsembleParams:
    vals = (cfg.alpha, cfg.alpha1, cfg.alpha2)
    if cfg.mode == "float":
        fl = [None if v is None else _float(v, n) for v, n in zip(vals, ("alpha", "alpha1", "alpha2"))]
        return EnsembleParams.make(cfg.family, *fl, ring="float")
    ring = "rational" if cfg.alpha is not None and (
        cfg.family in ("gaussian", "antisym-squared") or cfg.alpha1 is not None) else "poly"
    if cfg.family in ("jacobi", "jacobi-symmetric"):
        ring = "rational"
    return EnsembleParams.make(cfg.family, *vals, ring=ring)


def _cell(x, mode):
    return scalar_to_text(x) if mode == "exact" else float(x)


def _write(cfg, columns, rows, meta, payload_key="rows"):
    if cfg.format == "json":
        text = format_json(cfg, {"columns": list(columns), payload_key: [list(r) for r in rows]}, meta)
    else:
        text = format_csv(cfg, columns, rows, meta)
    emit(text, cfg.output)


# -- subcommands ---------------------------------------------------------------

def cmd_moments(cfg: RunConfig):
    if cfg.order < 0:
        raise UsageError("--order must be >= 0")
    params = _ensemble(cfg)
    ms = compute_all(params, cfg.order, correction=cfg.correction)
    if cfg.correction and ms.m1 is None:
        raise UsageError(f"no 1/N correction recurrence for {params.family.value}")
    cols = ["p", "m0"] + (["m1"] if cfg.correction else [])
    rows = []
    for p in range(cfg.order + 1):
        row = [p, _cell(ms.m0[p], cfg.mode)]
        if cfg.correction:
            row.append(_cell(ms.m1[p], cfg.mode))
        rows.append(row)
    _write(cfg, cols, rows, {"params": params.to_dict(), "ring": params.ring})


def cmd_covariance(cfg: RunConfig):
    if cfg.pmax is None or cfg.pmax < 0:
        raise UsageError("--pmax must be >= 0")
    qmax = cfg.pmax if cfg.qmax is None else cfg.qmax
    cfg.qmax = qmax
    params = _ensemble(cfg)
    m = moments0(params, cfg.pmax + qmax + 2)
    cov = covariances(params, cfg.pmax, qmax, m)
    diag = covariance_diagonal(params, cfg.pmax, m)
    rows = [["mu", p, q, _cell(cov.mu[p][q], cfg.mode)] for p in range(cfg.pmax + 1) for q in range(qmax + 1)]
    rows += [["mu_tilde", p, "", _cell(diag[p], cfg.mode)] for p in range(cfg.pmax + 1)]
    _write(cfg, ["table", "p", "q", "value"], rows, {"params": params.to_dict(), "ring": params.ring})


def _grid(cfg, default):
    lo, hi, n = cfg.grid if cfg.grid else default
    n = int(n)
    if n < 1 or not hi > lo:
        raise UsageError("--grid needs LO < HI and N >= 1")
    return np.linspace(lo, hi, n)


DEFAULT_GRIDS = {"gaussian": None, "laguerre": (0.01, 10.0, 200), "jacobi": (0.005, 0.995, 199),
                 "antisym": (0.01, 6.0, 200), "antisym-sq": (0.001, 20.0, 200)}


def cmd_density(cfg: RunConfig):
    from .specfun import density_curve
    from .specfun.densities import density_jacobi

    al = _float(cfg.alpha, "alpha")
    params = {"alpha": al}
    if cfg.kind in ("laguerre", "jacobi"):
        params["alpha1"] = _float(cfg.alpha1, "alpha1")
    if cfg.kind == "jacobi":
        params["alpha2"] = _float(cfg.alpha2, "alpha2")
    default = DEFAULT_GRIDS[cfg.kind] or (-6 * math.sqrt(max(al, 1)), 6 * math.sqrt(max(al, 1)), 601)
    grid = _grid(cfg, default)
    curve = density_curve(cfg.kind, params, grid)
    meta = {"params": params, "quadrature_mass": curve.quadrature_mass, "mass_tolerance": curve.tolerance,
            "mass_ok": abs(curve.quadrature_mass - 1) <= curve.tolerance}
    if cfg.extra.get("check_reflection"):
        if cfg.kind != "jacobi":
            raise UsageError("--check-reflection applies to the jacobi kind")
        direct = np.array([density_jacobi(params["alpha1"], params["alpha2"], al, x, reflect=False) for x in grid])
        err = float(np.max(np.abs(direct - curve.values) / np.abs(curve.values)))
        meta["reflection_max_rel_diff"] = err
        meta["reflection_ok"] = err <= 1e-10
    _write(cfg, ["x", "density"], zip(grid.tolist(), curve.values.tolist()), meta)
    if cfg.extra.get("check_reflection") and not meta["reflection_ok"]:
        raise VerificationFailure(f"Jacobi reflection mismatch {meta['reflection_max_rel_diff']:.3g}")


def cmd_sample(cfg: RunConfig, threads=None):
    from .sampler import TridiagModel, default_edges, run_trials

    model = TridiagModel(cfg.model, cfg.size, _float(cfg.alpha, "alpha"), _float(cfg.kappa, "kappa", 1.0))
    if cfg.bins < 1:
        raise UsageError("--bins must be >= 1")
    if cfg.edges:
        lo, hi = cfg.edges
        if cfg.fold and lo != 0:
            raise UsageError("--fold needs a range starting at 0")
        edges = np.linspace(lo, hi, cfg.bins + 1)
    else:
        edges = default_edges(model, cfg.bins, fold=cfg.fold)
    hist = run_trials(model, cfg.trials, edges, cfg.seed, threads=threads, fold=cfg.fold)
    rows = [[float(edges[k]), float(edges[k + 1]), int(hist.counts[k]), float(hist.density[k])]
            for k in range(len(edges) - 1)]
    meta = {"model": model.to_dict(), "seed": cfg.seed, "trials": cfg.trials, "below": hist.below,
            "above": hist.above, "out_of_range_mass": hist.out_of_range,
            "eigenvalues_per_trial": hist.eigenvalues_per_trial}
    _write(cfg, ["bin_left", "bin_right", "count", "density_estimate"], rows, meta)


def cmd_dyson(cfg: RunConfig):
    from .specfun import dyson_constant, dyson_dos

    al = _float(cfg.alpha, "alpha")
    if cfg.grid:
        lo, hi, n = cfg.grid
        if not 0 < lo < hi or int(n) < 1:
            raise UsageError("--grid needs 0 < LO < HI and N >= 1")
        ys = np.geomspace(lo, hi, int(n))
    else:
        ys = np.geomspace(1e-8, 4 * al, 60)
    c = dyson_constant(al)
    rows = []
    for y in ys:
        mu = dyson_dos(al, float(y))
        rows.append([float(y), mu, float(y * abs(math.log(y)) ** 3 * mu / c) if y < 1 else ""])
    _write(cfg, ["y", "dos", "singularity_ratio"], rows, {"alpha": al, "constant_2_trigamma": c})


def cmd_limits(cfg: RunConfig):
    from .specfun import limit_confluence, limit_semicircle, limit_weak_disorder

    which = cfg.extra.get("which", "all")
    reports = []
    if which in ("semicircle", "all"):
        reports.append(limit_semicircle(_float(cfg.alpha, "alpha", 400.0)))
    if which in ("confluence", "all"):
        reports.append(limit_confluence(_float(cfg.alpha1, "alpha1", 0.5), _float(cfg.alpha, "alpha", 1.5),
                                        _float(cfg.alpha2, "alpha2", 1e4)))
    if which in ("weak-disorder", "all"):
        al = _float(cfg.alpha, "alpha", 200.0)
        reports.append(limit_weak_disorder(al, _float(cfg.kappa, "kappa", al)))
    if cfg.format == "json":
        emit(format_json(cfg, {"reports": [r.to_dict() for r in reports]}), cfg.output)
        return
    rows = [[r.name, float(x), float(s), float(l)] for r in reports for x, s, l in zip(r.grid, r.scaled, r.limit)]
    _write(cfg, ["name", "x", "scaled", "limit"], rows, {"reports": [r.to_dict() for r in reports]})


def cmd_verify(cfg: RunConfig, threads=None):
    from .verify import run_all

    only = cfg.extra.get("only")
    only = [s.strip().upper() for s in only.split(",")] if only else None

    def progress(r):
        print(r.line(), file=sys.stderr, flush=True)

    results = run_all(seed=cfg.seed or 0, quick=cfg.quick, threads=threads, only=only, progress=progress)
    if only and not results:
        raise UsageError(f"no criteria match {only}")
    ok = all(r.passed for r in results)
    emit(format_json(cfg, {"passed": ok, "criteria": [r.to_dict() for r in results]}), cfg.output)
    if not ok:
        raise VerificationFailure("one or more verification checks failed")


COMMANDS = {"moments": cmd_moments, "covariance": cmd_covariance, "density": cmd_density, "sample": cmd_sample,
            "dyson": cmd_dyson, "limits": cmd_limits, "verify": cmd_verify}


VALUE_FLAGS = ("--alpha", "--alpha1", "--alpha2", "--kappa")


def _glue_negative_values(argv):
    """Turn ``--alpha1 -1/2`` into ``--alpha1=-1/2``; argparse reads '-1/2' as an option."""
    out, i = [], 0
    while i < len(argv):
        a = argv[i]
        if a in VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{a}={argv[i + 1]}")
            i += 2
            continue
        out.append(a)
        i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = _glue_negative_values(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = _config(args)
        fn = COMMANDS[args.subcommand]
        if args.subcommand in ("sample", "verify"):
            from .sampler.trials import resolve_threads
            fn(cfg, threads=resolve_threads(args.threads))
        else:
            fn(cfg)
    except HtrmtError as exc:
        print(f"htrmt: error: {exc}", file=sys.stderr)
        return exc.exit_code
    except (ValueError, ZeroDivisionError) as exc:
        print(f"htrmt: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
