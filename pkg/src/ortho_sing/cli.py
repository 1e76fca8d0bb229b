"""Command-line front end.

Exit codes: 0 success, 1 operational failure, 2 usage or config error,
3 verification violation. Output is CSV with ``#`` metadata lines and
floats at 17 significant digits; identical inputs give identical bytes.
"""

import argparse
import csv
import io
import math
import os
import sys

import numpy as np

from . import __version__
from .asymptotics import (
    AsymptoticDomainError,
    PhaseContext,
    asym_pn_away,
    asym_pn_endpoint,
    asym_pn_near,
)
from .bessel_zeros import ComboSpec, ZeroSearchError, combo_zero
from .config import ConfigError, build_measure, load_config
from .jacobi_spectra import all_zeros, monic_eval_scaled, zeros_near
from .measure import NonConvergenceError, stieltjes_recurrence
from .verify import (
    HypothesisError,
    comparison_suite,
    convexity_suite,
    gap_limit_suite,
    sample_case_grid,
    simplicity_check,
    spacing_experiment,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_VIOLATION = 0, 1, 2, 3


class UsageError(Exception):
    pass


def fmt(v):
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".17g")
    return str(v)


class Table:
    """CSV body plus ``#`` metadata lines, rendered in insertion order."""

    def __init__(self, header, meta=None):
        self.header = list(header)
        self.meta = list(meta or [])
        self.rows = []
        self.footer = []

    def add(self, *row):
        self.rows.append(row)

    def render(self):
        buf = io.StringIO()
        for line in self.meta:
            buf.write(f"# {line}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.header)
        for r in self.rows:
            w.writerow([fmt(v) for v in r])
        for line in self.footer:
            buf.write(f"# {line}\n")
        return buf.getvalue()


def _threads(args):
    if args.threads is not None:
        n = args.threads
    else:
        env = os.environ.get("ORTHO_SING_THREADS", "1")
        try:
            n = int(env)
        except ValueError as exc:
            raise UsageError(f"ORTHO_SING_THREADS must be an integer, got {env!r}") from exc
    if n < 1:
        raise UsageError("thread count must be >= 1")
    return n


def _config(args, *blocks):
    if not args.config:
        raise UsageError(f"{args.command} needs --config")
    cfg = load_config(args.config)
    for b in blocks:
        if b not in cfg:
            raise UsageError(f"{args.config}: missing '{b}' block required by {args.command}")
    return cfg


def _base_meta(args, extra=()):
    return [f"ortho_sing {__version__}", f"command={args.command}", f"seed={args.seed}"] + list(extra)


# ------------------------------------------------------------ commands


def cmd_bessel_zeros(args):
    try:
        spec = ComboSpec(args.a, args.c, args.d)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    ks = list(range(1, args.kmax + 1))
    if args.negative:
        ks = list(range(-args.kmax, 0)) + ks
    t = Table(["k", "j_k", "gap_to_previous"],
              _base_meta(args, [f"a={fmt(spec.a)} c={fmt(spec.c)} d={fmt(spec.d)} (normalised c^2+d^2=1)"]))
    prev = None
    for k in ks:
        v = combo_zero(spec, k)
        t.add(k, v, None if prev is None else v - prev)
        prev = v
    return t, EXIT_OK


def cmd_recurrence(args):
    cfg = _config(args, "measure", "recurrence")
    blk = cfg["recurrence"]
    rec = stieltjes_recurrence(build_measure(cfg["measure"]), blk["N"], tol=blk["tol"])
    t = Table(["k", "a_k", "b_k"], _base_meta(args, [
        f"N={rec.N} quad_degree={rec.quad_degree} change={fmt(rec.change)} tol={fmt(blk['tol'])}",
        "b_0 is the total mass",
    ]))
    b = np.concatenate([[rec.mass], rec.offdiag_sq])
    for k in range(rec.N):
        t.add(k, rec.diag[k], b[k])
    return t, EXIT_OK


def cmd_zeros(args):
    cfg = _config(args, "measure", "zeros")
    blk = cfg["zeros"]
    n = blk["n"]
    rec = stieltjes_recurrence(build_measure(cfg["measure"]), n)
    if "x0" in blk:
        zs = zeros_near(rec, n, blk["x0"], blk["count"])
        t = Table(["k", "x_k"], _base_meta(args, [f"n={n} x0={fmt(blk['x0'])}"]))
        for k in sorted(zs.zeros):
            t.add(k, zs.zeros[k])
    else:
        t = Table(["k", "x_k"], _base_meta(args, [f"n={n}"]))
        for i, v in enumerate(all_zeros(rec, n), start=1):
            t.add(i, v)
    return t, EXIT_OK


def _spacing_reports(args, cfg):
    blk = cfg["spacing"]
    measure = build_measure(cfg["measure"])
    rec = stieltjes_recurrence(measure, max(blk["n_list"]))
    out = []
    for k in blk["k_list"]:
        out.extend(spacing_experiment(measure, blk["nu"], k, blk["n_list"], rec=rec, tol=blk["tol"],
                                      measure_id=args.config, threads=_threads(args)))
    return blk, out


def cmd_spacing(args):
    cfg = _config(args, "measure", "spacing")
    blk, reports = _spacing_reports(args, cfg)
    t = Table(["n", "k", "zero_k", "zero_k1", "scaled_k", "scaled_k1", "measured_gap", "predicted_gap", "abs_err"],
              _base_meta(args, [f"nu={blk['nu']} tol={fmt(blk['tol'])}"]))
    rows = sorted((r.n, rep.k, r) for rep in reports for r in rep.rows)
    for n, k, r in rows:
        t.add(n, k, r.zero_k, r.zero_k1, r.scaled_k, r.scaled_k1, r.measured, r.predicted, r.abs_error)
    for rep in reports:
        last = rep.rows[-1]
        t.footer.append(
            f"summary k={rep.k} class={rep.residue} mod {rep.modulus} n={last.n} "
            f"rel_err={fmt(rep.rel_errors()[-1])} verdict={rep.verdict}")
    return t, EXIT_OK


def cmd_theorem1(args):
    cfg = _config(args, "measure", "spacing")
    blk, reports = _spacing_reports(args, cfg)
    t = Table(["k", "residue", "modulus", "n_last", "predicted_gap", "measured_gap", "rel_err", "decay_exponent",
               "verdict"], _base_meta(args, [f"nu={blk['nu']} tol={fmt(blk['tol'])}"]))
    for rep in reports:
        last = rep.rows[-1]
        t.add(rep.k, rep.residue, rep.modulus, last.n, last.predicted, last.measured, rep.rel_errors()[-1],
              rep.decay_exponent, rep.verdict)
    ok = all(rep.verdict == "converging" for rep in reports)
    return t, EXIT_OK if ok else EXIT_VIOLATION


def cmd_verify_sturm(args):
    cfg = _config(args, "verify")
    blk = cfg["verify"]
    threads = _threads(args)
    conv = [(p["case"], p["a"], p["c"], p["d"]) for p in blk["convexity"]]
    comp = [(p["case"], p["a"], p["c"], p["d"]) for p in blk["comparison"]]
    if blk["sample_per_case"]:
        rng = np.random.default_rng(args.seed)
        for case in ("i", "ii", "iii", "iv"):
            conv += sample_case_grid("convexity", case, blk["sample_per_case"], rng)
        for case in ("i", "ii", "iii"):
            comp += sample_case_grid("comparison", case, blk["sample_per_case"], rng)
    t = Table(["suite", "case", "a", "c", "d", "k_max", "worst_margin", "violations", "passed"],
              _base_meta(args, [f"k_max={blk['k_max']} slack=1e-10"]))
    ok = True
    for rep in convexity_suite(conv, blk["k_max"], threads) + comparison_suite(comp, blk["k_max"], threads):
        worst = max(r[1] - r[2] for r in rep.rows)
        t.add(rep.family, rep.case, *rep.params, rep.k_max, worst, len(rep.violations), rep.passed)
        ok &= rep.passed
    gl = [(p["a"], p["c"], p["d"]) for p in blk["gap_limit"]]
    for row in gap_limit_suite(gl, blk["probes"], blk["bound"], threads):
        t.add("gap_limit", "", *row.params, row.probes[-1], row.deviations[-1], 0 if row.passed else 1, row.passed)
        ok &= row.passed
    sp = [(p["a"], p["c"], p["d"]) for p in blk["simplicity"]]
    for rep in simplicity_check(sp, min(blk["k_max"], 50), threads):
        t.add("simplicity", "", *rep.params, rep.k_max, None, len(rep.failures), rep.passed)
        ok &= rep.passed
    t.footer.append(f"overall={'pass' if ok else 'fail'}")
    return t, EXIT_OK if ok else EXIT_VIOLATION


def _asym_grid(blk, ctx, region):
    pts = ctx.positions()
    delta = blk["delta"]
    if region == "away":
        nu = blk["nu"]
        lo = blk.get("x_min", pts[nu] + delta)
        hi = blk.get("x_max", pts[nu + 1] - delta)
        eps = 1e-9 * (hi - lo)
        return np.linspace(lo + eps, hi - eps, blk["points"])
    if region == "endpoint":
        lo = blk.get("x_min", 1.0 - delta)
        hi = blk.get("x_max", 1.0 - 1e-3 * delta)
        return np.linspace(lo, hi, blk["points"] + 1)[1:]
    x0 = ctx.singularity(blk["nu"]).position
    half = blk["points"] // 2
    off = np.linspace(0.0, 0.99 * delta, half + 1)[1:]
    return np.concatenate([x0 - off[::-1], x0 + off])


def cmd_asym_compare(args):
    cfg = _config(args, "measure", "asym_compare")
    blk = cfg["asym_compare"]
    measure = build_measure(cfg["measure"])
    ctx = PhaseContext.from_measure(measure)
    region = blk["region"]
    n_list = sorted(blk["n_list"])
    rec = stieltjes_recurrence(measure, n_list[-1])
    x = _asym_grid(blk, ctx, region)
    t = Table(["n", "x", "pn_recurrence", "pn_asymptotic_leading", "ratio"], _base_meta(args, [
        f"region={region} nu={blk['nu']} delta={fmt(blk['delta'])}",
        "polynomial values are 2^n pi_n(x)",
    ]))
    sups = []
    for n in n_list:
        exact = monic_eval_scaled(rec, n, x)
        if region == "away":
            approx = asym_pn_away(ctx, blk["nu"], n, x, delta=blk["delta"], scaled=True)
        elif region == "endpoint":
            approx = asym_pn_endpoint(ctx, n, x, delta=blk["delta"], scaled=True)
        else:
            approx = asym_pn_near(ctx, blk["nu"], n, x, delta=blk["delta"], scaled=True)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = approx / exact
        for xi, e, a, r in zip(x, exact, approx, ratio):
            t.add(n, xi, e, a, r if math.isfinite(r) else None)
        dev = np.abs(approx - exact) / np.max(np.abs(exact))
        sups.append((n, float(np.nanmax(np.abs(ratio - 1.0))), float(np.max(dev))))
    for n, s_ratio, s_dev in sups:
        t.footer.append(f"summary n={n} sup_abs_ratio_minus_1={fmt(s_ratio)} sup_dev_over_max={fmt(s_dev)}")
    if len(sups) >= 2 and sups[-1][2] > 0:
        t.footer.append(f"decay sup_dev n={sups[0][0]}->{sups[-1][0]} factor={fmt(sups[0][2] / sups[-1][2])}")
    return t, EXIT_OK


COMMANDS = {
    "bessel-zeros": cmd_bessel_zeros,
    "recurrence": cmd_recurrence,
    "zeros": cmd_zeros,
    "spacing": cmd_spacing,
    "verify-sturm": cmd_verify_sturm,
    "theorem1": cmd_theorem1,
    "asym-compare": cmd_asym_compare,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON experiment configuration")
    common.add_argument("--out", help="write CSV here instead of stdout")
    common.add_argument("--threads", type=int, default=None,
                        help="worker threads (default: $ORTHO_SING_THREADS or 1)")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled grids")

    p = argparse.ArgumentParser(prog="ortho-sing", description="Local zero spacing of orthogonal polynomials")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    bz = sub.add_parser("bessel-zeros", parents=[common], help="zeros of c J_a + d J_{a+1}")
    bz.add_argument("--a", type=float, required=True)
    bz.add_argument("--c", type=float, required=True)
    bz.add_argument("--d", type=float, required=True)
    bz.add_argument("--kmax", type=int, required=True)
    bz.add_argument("--negative", action="store_true", help="also list j_{-kmax}..j_{-1}")
    helps = {
        "recurrence": "three-term recurrence coefficients of a measure",
        "zeros": "zeros of p_n, all or around x0",
        "spacing": "scaled zero gaps at a singular point, one row per (n, k)",
        "verify-sturm": "inequality, gap-limit and simplicity suites for Bessel-combination zeros",
        "theorem1": "per-class convergence verdicts of the scaled gaps",
        "asym-compare": "leading-order asymptotics against recurrence values",
    }
    for name, text in helps.items():
        sub.add_parser(name, parents=[common], help=text)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "bessel-zeros" and args.kmax < 1:
        parser.error("--kmax must be >= 1")
    try:
        table, code = COMMANDS[args.command](args)
        text = table.render()
        out = args.out
        if out is None and args.config and args.command != "bessel-zeros":
            out = load_config(args.config).get("output")
        if out:
            with open(out, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        return code
    except (UsageError, ConfigError, HypothesisError, AsymptoticDomainError) as exc:
        print(f"ortho-sing: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NonConvergenceError, ZeroSearchError, OSError, ValueError, IndexError) as exc:
        print(f"ortho-sing: failed: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
