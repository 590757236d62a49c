"""Command-line front end: eval, verify, sample, tabulate.

Exit codes: 0 success / all checks pass, 1 a verification failed,
2 usage error or unknown id, 3 domain error. Files go under the directory
named by VDWALD_OUTPUT_DIR (default ./vdwald-output) unless --out is given.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__, couples, densities, hadamard, identities, lseries_process, samplers
from . import specfun as sf
from .errors import DomainError

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2, 3
OUTPUT_ENV = "VDWALD_OUTPUT_DIR"
REPORT_SCHEMA = 1


class UsageError(Exception):
    pass


def output_dir() -> Path:
    return Path(os.environ.get(OUTPUT_ENV, "vdwald-output"))


def parse_grid(text: str) -> np.ndarray:
    """'start:stop:count' or 'start:stop:count:log'."""
    parts = text.split(":")
    if len(parts) not in (3, 4):
        raise UsageError(f"bad grid {text!r}; expected start:stop:count[:log]")
    try:
        lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise UsageError(f"bad grid {text!r}") from exc
    if n < 1:
        raise UsageError("grid count must be >= 1")
    if len(parts) == 4:
        if parts[3] != "log":
            raise UsageError("grid scale must be 'log'")
        if lo <= 0 or hi <= 0:
            raise UsageError("log grid needs positive endpoints")
        return np.geomspace(lo, hi, n)
    return np.linspace(lo, hi, n)


def _points(args) -> np.ndarray:
    if args.s is not None:
        return np.asarray(args.s, dtype=float)
    if args.grid is not None:
        return parse_grid(args.grid)
    raise UsageError("give --grid or --s")


def _character(label: str):
    if label in ("principal", "zeta"):
        return sf.principal_character(1)
    if label == "mod4":
        return sf.character_mod4()
    try:
        _, k, i = label.split("_")
        return sf.characters(int(k))[int(i)]
    except (ValueError, IndexError) as exc:
        raise UsageError(f"unknown character {label!r}; use principal, mod4 or chi_<k>_<i>") from exc


# ---- eval ----

def _product_eval(zs, rot):
    cfg = hadamard.ProductConfig(N=10_000, tail_correction="log1p_order4")

    def fn(s, args):
        v = hadamard.eval_even_product(zs(args), s, cfg, "forward", rot)
        return complex(v).real, hadamard.even_product_tail_bound(zs(args), s, cfg) * abs(v)
    return fn


def _w_density(x, args):
    v, e = densities.w_a_density_with_error(x, args.a)
    return float(v[0]), float(e[0])


def _ostrovskii(x, args):
    p = densities.OSTROVSKII_ACCEPTANCE_SETS[args.set]
    return float(densities.ostrovskii_density(np.asarray([x]), p)[0]), None


EVAL_FUNCTIONS = {
    "xi": lambda s, a: (float(np.real(sf.xi(s))), None),
    "zeta": lambda s, a: (float(np.real(sf.zeta(s))), None),
    "gamma": lambda s, a: (float(sf.gamma_fn(s)), None),
    "eta": lambda x, a: (sf.eta_auto(x), None),
    "eta3": lambda x, a: (sf.eta3_auto(x), None),
    "L": lambda s, a: (float(np.real(sf.dirichlet_L(_character(a.char), s))), None),
    "K": lambda x, a: (float(np.real(sf.macdonald_K(a.nu, x))), None),
    "xi-tau": lambda s, a: (sf.Xi_tau(s), None),
    "cosh-product": _product_eval(lambda a: hadamard.cosh_zeros(), "real"),
    "sinh-product": _product_eval(lambda a: hadamard.sinh_zeros(a.a), "real"),
    "bessel-product": _product_eval(lambda a: hadamard.bessel_zero_set(a.nu, 10_001), "imaginary"),
    "polya-density": lambda x, a: (densities.polya_density(x), None),
    "w-a-density": _w_density,
    "ostrovskii-density": _ostrovskii,
}


def _write_table(rows, header, args, stream):
    if args.format == "json":
        text = json.dumps({"schema": REPORT_SCHEMA, "columns": header, "rows": rows}, indent=1)
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow(["" if v is None else (repr(v) if isinstance(v, float) else v) for v in r])
        text = buf.getvalue()
    if args.out:
        Path(args.out).parent.mkdir(parents=True, exist_ok=True)
        Path(args.out).write_text(text)
    else:
        stream.write(text)


def cmd_eval(args, stream) -> int:
    if args.function not in EVAL_FUNCTIONS:
        raise UsageError(f"unknown function {args.function!r}; choose from {sorted(EVAL_FUNCTIONS)}")
    fn = EVAL_FUNCTIONS[args.function]
    rows = []
    for x in _points(args):
        v, err = fn(float(x), args)
        rows.append([float(x), float(v), None if err is None else float(err)])
    _write_table(rows, ["input", "value", "error_estimate"], args, stream)
    return EXIT_OK


# ---- verify ----

def cmd_verify(args, stream) -> int:
    try:
        checks = identities.checks_for(args.target)
    except KeyError:
        raise UsageError(f"unknown check {args.target!r}; choose from all, {', '.join(identities.CHECKS)}, "
                         "couple:<name>") from None
    quick = not args.full
    out = Path(args.out) if args.out else output_dir() / "reports"
    out.mkdir(parents=True, exist_ok=True)
    summary, all_ok = [], True
    t0 = time.perf_counter()
    for chk in checks:
        reports = identities.run_check(chk, quick, args.seed)
        ok = all(r.passed for r in reports)
        all_ok &= ok
        worst = max((r.max_residual for r in reports), default=math.nan)
        fname = chk.id.replace(":", "_").replace("/", "_") + ".json"
        (out / fname).write_text(json.dumps(
            {"schema": REPORT_SCHEMA, "id": chk.id, "seed": args.seed, "tier": "quick" if quick else "full",
             "pass": ok, "reports": [r.to_dict() for r in reports]},
            indent=1, default=couples._json_default))
        summary.append({"id": chk.id, "pass": ok, "max_residual": worst, "reports": len(reports)})
        stream.write(f"{'PASS' if ok else 'FAIL'}  {chk.id:18s} max residual {worst:.3e}  ({len(reports)} reports)\n")
    (out / "summary.json").write_text(json.dumps(
        {"schema": REPORT_SCHEMA, "target": args.target, "seed": args.seed, "pass": all_ok, "checks": summary},
        indent=1))
    stream.write(f"{'ALL PASS' if all_ok else 'FAILURES'}  {len(checks)} checks in "
                 f"{time.perf_counter() - t0:.1f}s; reports in {out}\n")
    return EXIT_OK if all_ok else EXIT_FAIL


# ---- sample ----

def _subordinator_draws(g, n, a):
    spec = lseries_process.subordinator_from_character(_character(a.char), a.sigma, a.n_max)
    return lseries_process.sample_values(spec, a.t, g, n)


SAMPLERS = {
    "C1": lambda g, n, a: samplers.sample_series(samplers.c1_sampler(a.truncation), g, n),
    "C2": lambda g, n, a: samplers.sample_series(samplers.c2_sampler(a.truncation), g, n),
    "S": lambda g, n, a: samplers.sample_series(samplers.s_sampler(a.a, a.truncation), g, n),
    "W": lambda g, n, a: samplers.sample_series(samplers.w_sampler(a.a, a.truncation), g, n),
    "H-gamma": lambda g, n, a: samplers.sample_series(samplers.gamma_couple_sampler(a.a, a.truncation), g, n),
    "H-a": lambda g, n, a: samplers.sample_invgamma32(a.a, g, n),
    "H-bessel": lambda g, n, a: samplers.sample_series(samplers.bessel_h_sampler(a.nu, a.truncation), g, n),
    "symbeta": lambda g, n, a: samplers.sample_basic("symbeta", g, n, nu=a.nu),
    "gumbel": lambda g, n, a: samplers.sample_basic("gumbel", g, n),
    "hinds": lambda g, n, a: samplers.sample_basic("hinds", g, n),
    "laplace": lambda g, n, a: samplers.sample_basic("laplace", g, n, scale=a.a),
    "inverse-gaussian": lambda g, n, a: samplers.sample_basic("inverse_gaussian", g, n, a=a.a),
    "polya-xi": lambda g, n, a: samplers.sample_polya_xi(g, n),
    "subordinator": _subordinator_draws,
}


def cmd_sample(args, stream) -> int:
    if args.sampler not in SAMPLERS:
        raise UsageError(f"unknown sampler {args.sampler!r}; choose from {sorted(SAMPLERS)}")
    if args.draws < 2:
        raise UsageError("--draws must be at least 2")
    rng = samplers.RngStream(args.seed, 0)
    x = np.asarray(SAMPLERS[args.sampler](rng.generator, args.draws, args), dtype=float)
    path = Path(args.out) if args.out else output_dir() / f"sample_{args.sampler}.csv"
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        fh.write("draw\n")
        fh.writelines(f"{v!r}\n" for v in x.tolist())
    n = x.size
    summary = {
        "schema": REPORT_SCHEMA, "sampler": args.sampler, "seed": args.seed, "draws": n,
        "mean": float(x.mean()), "mean_se": float(x.std(ddof=1) / math.sqrt(n)),
        "variance": float(x.var(ddof=1)),
    }
    if args.cf_at:
        # real s gives E e^{-sX} (Laplace side), imaginary parts enter via --cf-imag
        s = [complex(-v, 0) if not args.cf_imag else complex(0, v) for v in args.cf_at]
        est, se = samplers.empirical_cf(x, s, warn=False)
        summary["cf"] = [{"s": [z.real, z.imag], "estimate": [e.real, e.imag], "se": float(q)}
                         for z, e, q in zip(s, est, se)]
    path.with_suffix(".json").write_text(json.dumps(summary, indent=1))
    stream.write(json.dumps(summary, indent=1) + "\n")
    return EXIT_OK


# ---- tabulate ----

def cmd_tabulate(args, stream) -> int:
    what = args.table
    if what == "tau":
        stream_text = sf.ramanujan_tau(args.n).to_csv()
        if args.out:
            Path(args.out).write_text(stream_text)
        else:
            stream.write(stream_text)
        return EXIT_OK
    if what == "registry":
        rows = [[r.name, r.kind, r.kappa, r.X_sampler is not None, r.H_sampler is not None, "; ".join(r.notes)]
                for r in couples.builtin_registry()]
        _write_table(rows, ["name", "kind", "kappa", "X_sampler", "H_sampler", "notes"], args, stream)
        return EXIT_OK
    density = {
        "polya": lambda x: (densities.polya_density(x), None),
        "w-a": lambda x: _w_density(x, args),
        "ostrovskii": lambda x: _ostrovskii(x, args),
    }
    if what not in density:
        raise UsageError(f"unknown table {what!r}")
    rows = []
    for x in _points(args):
        v, e = density[what](float(x))
        rows.append([float(x), float(v), None if e is None else float(e)])
    _write_table(rows, ["x", "value", "truncation_error"], args, stream)
    return EXIT_OK


# ---- parser ----

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="vdwald", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(q):
        q.add_argument("--seed", type=int, default=samplers.DEFAULT_SEED)
        q.add_argument("--out", default=None, help="output file (or directory for verify)")
        q.add_argument("--format", choices=("csv", "json"), default="csv")

    def points(q):
        q.add_argument("--grid", default=None, help="start:stop:count[:log]")
        q.add_argument("--s", type=float, nargs="+", default=None, help="explicit points")

    def params(q):
        q.add_argument("--a", type=float, default=1.0)
        q.add_argument("--nu", type=float, default=0.5)
        q.add_argument("--char", default="principal")
        q.add_argument("--set", type=int, default=0, choices=range(len(densities.OSTROVSKII_ACCEPTANCE_SETS)))

    e = sub.add_parser("eval", help="evaluate a function on a grid")
    e.add_argument("function")
    common(e), points(e), params(e)

    v = sub.add_parser("verify", help="run identity checks")
    v.add_argument("target", help="'all', a check id, or couple:<name>")
    tier = v.add_mutually_exclusive_group()
    tier.add_argument("--quick", action="store_true", default=True)
    tier.add_argument("--full", action="store_true")
    common(v)

    s = sub.add_parser("sample", help="draw samples")
    s.add_argument("sampler")
    s.add_argument("--draws", type=int, default=10_000)
    s.add_argument("--truncation", type=int, default=200)
    s.add_argument("--sigma", type=float, default=2.0)
    s.add_argument("--t", type=float, default=1.0)
    s.add_argument("--n-max", dest="n_max", type=int, default=10_000)
    s.add_argument("--cf-at", dest="cf_at", type=float, nargs="+", default=None,
                   help="report E e^{-sX} at these s")
    s.add_argument("--cf-imag", dest="cf_imag", action="store_true", help="report E e^{isX} instead")
    common(s), params(s)

    t = sub.add_parser("tabulate", help="density and coefficient tables")
    t.add_argument("table", help="polya | w-a | ostrovskii | tau | registry")
    t.add_argument("--n", type=int, default=30)
    common(t), points(t), params(t)
    return p


COMMANDS = {"eval": cmd_eval, "verify": cmd_verify, "sample": cmd_sample, "tabulate": cmd_tabulate}


def main(argv=None, stream=None) -> int:
    stream = stream or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return COMMANDS[args.command](args, stream)
    except UsageError as exc:
        sys.stderr.write(f"vdwald: {exc}\n")
        return EXIT_USAGE
    except (DomainError, OverflowError) as exc:
        sys.stderr.write(f"vdwald: domain error: {exc}\n")
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
