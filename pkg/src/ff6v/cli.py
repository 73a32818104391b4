"""Command-line front door: identity suites, exact evaluation, kernel tables,
sampling, and bulk-limit reports.  Outputs are deterministic for a fixed
configuration and seed; timestamps are confined to one header line.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from . import asymptotics, fock, process, symfun, tiling, vertex
from .params import ColumnParams, RowSpec, Signature, load_bank, rat

DEFAULT_BANK = {
    "y": [],
    "s": [],
    "y_tail": "1/1",
    "s_tail": "1/2",
    "x": ["1/3", "1/4"],
    "r": ["1/2", "2/5"],
    "w": ["1/2", "2/5"],
    "theta": ["1/2", "1/2"],
}


def _threads() -> int:
    raw = os.environ.get("FF6V_THREADS", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return max(1, os.cpu_count() or 1)


def _fmt(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _fmt_pair(q: Fraction) -> str:
    return f"{_fmt(q)} ({float(q):.15g})"


def _load(args) -> dict:
    if args.bank:
        return load_bank(args.bank)
    return load_bank(DEFAULT_BANK)


def _emit(text: str, out_path) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- verify -----------------------------------------------------------------------


def _suite_items(bank: dict):
    col, xr, wt = bank["col"], bank["xr"], bank["wtheta"]

    def ybe():
        ok, _ = vertex.check_ybe(
            rat("1/3"), rat("1/4"), rat("2/5"), rat("4/9"), rat("6/5"), rat("1/9")
        )
        return ok

    def commutation():
        for rel in ("BD", "DB", "DC", "CD", "BB", "CC", "DD", "AA", "BhBh", "BhAh"):
            ok, _ = vertex.check_commutation(rel, rat("1/3"), rat("1/4"), rat("2/5"), rat("4/9"), col)
            if not ok:
                return False
        return True

    def biorthogonality():
        return symfun.check_biorthogonality(2, 2, col)

    def formulas():
        rows = RowSpec(xr.values[:2], xr.spins[:2])
        for lam in [Signature((2, 0)), Signature((3, 1))]:
            if symfun.f_determinant(lam, rows, col) != symfun.f_skew_partition(
                lam, Signature(()), rows, col
            ):
                return False
            got_sp = symfun.g_sergeev_pragacz(lam, wt, col)
            got_jt = symfun.jacobi_trudy_g(lam, Signature((0, 0)), wt, col)
            got_tr = symfun.g_skew_partition(lam, Signature((0, 0)), wt, col)
            if not (got_sp == got_jt == got_tr):
                return False
        return True

    def cauchy():
        ok, _ = __import__("ff6v.params", fromlist=["is_compatible"]).is_compatible(xr, wt, col)
        if not ok:
            raise ValueError("bank specializations are incompatible; refusing the suite")
        partial, rhs = symfun.check_cauchy(xr.prefix(1), wt.prefix(1), col, 18)
        gaps = [abs(rhs - p) for p in partial]
        return all(gaps[i + 1] <= gaps[i] for i in range(len(gaps) - 1)) and gaps[-1] < abs(rhs)

    def process_suite():
        proc = process.AscendingFG(col, xr.prefix(2), wt.prefix(2))
        pts = [(1, 1), (2, 2)]
        brute, tail = process.brute_force_correlation(pts, proc, 6)
        det = process.correlation_det(pts, proc)
        return brute <= det <= brute + tail

    def tiling_suite():
        lambdas = [Signature((1, 0)), Signature((2, 1))]
        mus = [Signature((1,)), Signature((2, 1))]
        t = tiling.signatures_to_tiling(lambdas, mus)
        back_l, back_m = tiling.tiling_to_signatures(t)
        return list(back_l) == lambdas and list(back_m) == mus

    def fock_suite():
        col_neg = ColumnParams((), (), rat("9/10"), rat("19/20"))
        win = fock.FockWindow(-6, 6, col, col_neg)
        val, bound = fock.wick_vacuum([rat("4/5")], [rat("17/20")], win)
        u, v = rat("4/5"), rat("17/20")
        return abs(val - v / (u - v)) <= bound

    return {
        "ybe": ybe,
        "commutation": commutation,
        "biorthogonality": biorthogonality,
        "formulas": formulas,
        "cauchy": cauchy,
        "process": process_suite,
        "tiling": tiling_suite,
        "fock": fock_suite,
    }


def cmd_verify(args) -> int:
    bank = _load(args)
    items = _suite_items(bank)
    names = sorted(items) if args.suite == "all" else [args.suite]
    for name in names:
        if name not in items:
            raise SystemExit(f"unknown suite {name!r}; choose from {sorted(items)} or 'all'")
    results = {}
    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        futures = {name: pool.submit(items[name]) for name in names}
        for name in names:
            try:
                results[name] = bool(futures[name].result())
            except Exception as exc:  # structured refusal, not a crash
                results[name] = f"refused: {exc}"
    ok = all(v is True for v in results.values())
    report = {
        "command": "verify",
        "suites": {k: results[k] for k in sorted(results)},
        "pass": ok,
        "threads": _threads(),
    }
    _emit(json.dumps(report, indent=2, sort_keys=True) + "\n", args.out)
    return 0 if ok else 1


# -- eval -------------------------------------------------------------------------


def cmd_eval(args) -> int:
    bank = _load(args)
    col, xr, wt = bank["col"], bank["xr"], bank["wtheta"]
    lam = Signature(tuple(int(p) for p in args.signature.split(",") if p != ""))
    if args.function == "F":
        val = symfun.f_determinant(lam, xr.prefix(len(lam)), col)
    elif args.function == "G":
        val = symfun.g_skew_partition(lam, Signature((0,) * len(lam)), wt, col)
    elif args.function == "Fstar":
        val = symfun.f_star(lam, xr.prefix(len(lam)), col)
    elif args.function == "phi":
        val = symfun.phi_k(lam[0], xr.values[0], col)
    elif args.function == "psi":
        val = symfun.psi_k(lam[0], xr.values[0], col)
    else:
        raise SystemExit(f"unknown function {args.function!r}")
    _emit(f"{args.function}({','.join(map(str, lam.parts))}) = {_fmt_pair(val)}\n", args.out)
    return 0


# -- kernel -----------------------------------------------------------------------


def cmd_kernel(args) -> int:
    bank = _load(args)
    proc = process.AscendingFG(bank["col"], bank["xr"], bank["wtheta"])
    tmax, amax = args.grid
    lines = ["t,a,tprime,aprime,value,decimal"]
    for t in range(1, tmax + 1):
        for a in range(1, amax + 1):
            for tp in range(1, tmax + 1):
                for ap in range(1, amax + 1):
                    val = process.kernel_kap(t, a, tp, ap, proc)
                    lines.append(f"{t},{a},{tp},{ap},{_fmt(val)},{float(val):.15g}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


# -- sample -----------------------------------------------------------------------


def cmd_sample(args) -> int:
    bank = _load(args)
    proc = process.AscendingFG(bank["col"], bank["xr"], bank["wtheta"])
    trajectories = []
    for k in range(args.count):
        seq = process.sample_ascending(proc, args.seed + k, args.cutoff)
        trajectories.append([list(s.parts) for s in seq])
    payload = {
        "command": "sample",
        "seed": args.seed,
        "cutoff": args.cutoff,
        "count": args.count,
        "trajectories": trajectories,
    }
    if args.format == "svg":
        seq = [Signature(tuple(p)) for p in trajectories[0]]
        chain = process.sample_f_branch(seq[-1], proc.xr, proc.col, args.seed)
        mus = list(reversed(chain[:-1]))  # mu^(0)..mu^(N-1) -> ascending order
        til = tiling.signatures_to_tiling(seq, mus[1:] + [seq[-1]])
        _emit(tiling.render_svg(til), args.out)
        return 0
    _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n", args.out)
    return 0


# -- bulk -------------------------------------------------------------------------


def cmd_bulk(args) -> int:
    gp_rat = {
        "x": rat("1/2"),
        "w": rat("2/3"),
        "y": rat("9/10"),
        "theta": rat("4/5"),
        "s": rat("1/2"),
    }
    alpha, tau = rat(args.alpha), rat(args.tau)
    sizes = tuple(int(v) for v in args.sizes.split(","))
    report = asymptotics.convergence_harness(
        gp_rat, alpha, tau, [(0, 0, 0, 0)], sizes=sizes, tol=args.tol
    )
    lines = [f"# z = {report['z']:.12g}", "n,max_gap"]
    for row in report["rows"]:
        lines.append(f"{row['n']},{row['max_gap']:.6g}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ff6v", description=__doc__)
    p.add_argument("--bank", help="JSON parameter bank path")
    p.add_argument("--out", help="output path (default stdout)")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run identity suites")
    v.add_argument("suite", nargs="?", default="all")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("eval", help="evaluate F/G/Fstar/phi/psi exactly")
    e.add_argument("function", choices=["F", "G", "Fstar", "phi", "psi"])
    e.add_argument("signature", help="comma-separated parts, e.g. 2,1,0")
    e.set_defaults(func=cmd_eval)

    k = sub.add_parser("kernel", help="CSV table of exact kernel values")
    k.add_argument("--grid", nargs=2, type=int, default=(2, 4), metavar=("T", "A"))
    k.set_defaults(func=cmd_kernel)

    s = sub.add_parser("sample", help="sample trajectories")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--count", type=int, default=1)
    s.add_argument("--cutoff", type=int, default=12)
    s.add_argument("--format", choices=["json", "svg"], default="json")
    s.set_defaults(func=cmd_sample)

    b = sub.add_parser("bulk", help="limit-kernel convergence report")
    b.add_argument("--alpha", default="3/2")
    b.add_argument("--tau", default="3/2")
    b.add_argument("--sizes", default="8,16")
    b.add_argument("--tol", type=float, default=1e-10)
    b.set_defaults(func=cmd_bulk)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    t0 = time.time()
    code = args.func(args)
    sys.stderr.write(f"# ff6v {args.command} finished in {time.time() - t0:.2f}s\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
