"""Command-line interface.

Subcommands: spectrum, curves, partition, zeta, limits, rb, heatkernel, jzeta.
Every run writes its outputs plus a resolved ``config.ini`` into ``--out``.
Exit codes: 0 success, 2 failed check or invalid input, 3 numerical
non-convergence.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

import numpy as np

from . import io as rio
from .errors import ConvergenceError, DomainError
from .fock import ModelParams, crossing_count, curve_table, partition_diag, spectrum
from .partition import SeriesConfig, partition_full, partition_parity
from .partition.heat import heat_trace_lambda0
from .specfun import hurwitz_zeta
from .zeta import (
    default_N,
    jc_limit_report,
    jc_zeta,
    parity_limit_report,
    parity_zeta,
    rb_polynomial,
    rb_polynomial_exact,
    spectral_zeta,
    special_value,
    zeta_limit_delta0,
    zeta_limit_g0,
    zeta_limit_g_inf,
)

EXIT_OK, EXIT_CHECK, EXIT_CONVERGENCE = 0, 2, 3

DEFAULTS = {
    "g": 0.0, "delta": 0.0, "eps": 0.0,
    "lambda_max": 8, "points_per_lambda": 2**14, "seed": 0, "replicates": 8,
    "s": 2 + 0j, "tau": "auto", "route": "eigen", "n": None, "j_cut": 200,
    "grid": None, "g_min": 0.0, "g_max": 3.0, "steps": 31, "beta": "0.5,1,2,5",
    "jmax": 10, "tol": 1e-9, "out": "rabizeta_out",
}


class CheckFailed(Exception):
    pass


def _floats(text):
    return [float(v) for v in str(text).split(",") if v.strip()]


def _complex(text):
    return complex(str(text).replace(" ", ""))


def _resolve(args) -> dict:
    vals = dict(DEFAULTS)
    if args.config:
        vals.update(rio.load_config(args.config))
    for k in DEFAULTS:
        v = getattr(args, k, None)
        if v is not None:
            vals[k] = v
    vals["s"] = _complex(vals["s"])
    return vals


def _params(v):
    return ModelParams(float(v["g"]), float(v["delta"]), float(v["eps"]))


def _series_cfg(v):
    return SeriesConfig(lambda_max=int(v["lambda_max"]), points_per_lambda=int(v["points_per_lambda"]),
                        seed=int(v["seed"]), replicates=int(v["replicates"]))


def _tau(v, params):
    if v["tau"] in (None, "auto"):
        N = default_N(params) if v["n"] is None else int(v["n"])
        return params.g ** 2 + N
    return float(v["tau"])


def _s_out(s):
    return s.real if s.imag == 0 else s


def _emit(v, name, payload, csv=None):
    out = Path(v["out"])
    rio.atomic_write(out / f"{name}.json", rio.json_text(payload))
    if csv is not None:
        rio.atomic_write(out / f"{name}.csv", rio.csv_text(*csv))
    rio.atomic_write(out / "config.ini", rio.config_text(v))
    print(rio.json_text(payload), end="")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_spectrum(v, args):
    p = _params(v)
    jmax = int(v["jmax"])
    M0 = None
    if args.trunc:
        factor = int(args.trunc.rstrip("x"))
        M0 = factor * max(64, 4 * jmax + math.ceil(16 * p.g * p.g))
    sp = spectrum(p, jmax, float(v["tol"]), M0=M0)
    ev = [float(x) for x in sp.eigenvalues]
    payload = {"params": p.__dict__, "eigenvalues": ev, "truncation_dim": sp.truncation_dim,
               "converged_count": sp.converged_count, "tol": sp.tol}
    _emit(v, "spectrum", payload, (["j", "E"], list(enumerate(ev))))


def cmd_curves(v, args):
    p = _params(v)
    steps = int(v["steps"])
    grid = _floats(v["grid"]) if v["grid"] else np.linspace(float(v["g_min"]), float(v["g_max"]), steps)
    tab = curve_table(p, grid, int(v["jmax"]), float(v["tol"]))
    N = default_N(p)
    baselines = sorted({n + sgn * p.eps for n in range(0, N + int(v["jmax"]) // 2 + 1) for sgn in (1, -1)})
    crossings = {f"E{j}": [crossing_count(tab, j, b) for b in baselines] for j in range(tab.n_levels)}
    payload = dict(tab.to_dict(), baselines=baselines, crossings=crossings)
    header = ["g"] + [f"E{j}+g^2" for j in range(tab.n_levels)]
    rows = [[g] + list(r) for g, r in zip(tab.g_grid, tab.shifted_levels)]
    _emit(v, "curves", payload, (header, rows))
    if args.svg:
        lo, hi = tab.shifted_levels.min(), tab.shifted_levels.max()
        shown = [b for b in baselines if lo - 0.5 <= b <= hi + 0.5]
        svg = rio.svg_plot(tab.g_grid, tab.shifted_levels, shown,
                           title=f"E + g^2, Delta={p.delta:g}, eps={p.eps:g}", xlabel="g",
                           ylabel="E + g^2", labels=[f"E{j}" for j in range(tab.n_levels)])
        rio.atomic_write(Path(v["out"]) / "curves.svg", svg)


def cmd_partition(v, args):
    p = _params(v)
    cfg = _series_cfg(v)
    sign = {"full": None, "plus": 1, "minus": -1}[args.block]
    rows, items = [], []
    for beta in _floats(v["beta"]):
        res = partition_full(p, beta, cfg) if sign is None else partition_parity(p, sign, beta, cfg)
        diag = partition_diag(p, beta, sign)
        rel = abs(res.value - diag) / abs(diag)
        items.append({"beta": beta, "series": res.to_dict(), "diagonalization": diag, "rel_diff": rel})
        rows.append([beta, res.value, res.stat_err, res.trunc_err, diag, rel])
    worst = max(it["rel_diff"] for it in items)
    payload = {"params": p.__dict__, "block": args.block, "results": items,
               "max_rel_diff": worst, "pass": worst <= args.rtol}
    _emit(v, "partition", payload,
          (["beta", "Z_series", "stat_err", "trunc_err", "Z_diag", "rel_diff"], rows))
    if worst > args.rtol:
        raise CheckFailed(f"series and diagonalization differ by {worst:.3g} > {args.rtol:g}")


def cmd_zeta(v, args):
    p = _params(v)
    s = v["s"]
    tau = _tau(v, p)
    routes = ["eigen", "mellin"] if v["route"] == "both" else [v["route"]]
    results = {}
    for r in routes:
        kw = {"j_cut": int(v["j_cut"])} if r == "eigen" else {}
        if args.sign is None:
            results[r] = spectral_zeta(p, s, tau, r, **kw)
        else:
            results[r] = parity_zeta(p, args.sign, s, tau, r, **kw)
    payload = {"params": p.__dict__, "s": _s_out(s), "tau": tau, "sign": args.sign,
               "results": {k: r.to_dict() for k, r in results.items()}}
    ok = True
    if len(results) == 2:
        a, b = results["eigen"], results["mellin"]
        ok = a.overlaps(b)
        payload["difference"] = abs(a.value - b.value)
        payload["agreement"] = ok
    _emit(v, "zeta", payload)
    if not ok:
        raise CheckFailed("eigen and Mellin routes disagree beyond their brackets")


def cmd_limits(v, args):
    p = _params(v)
    s = v["s"]
    N = None if v["n"] is None else int(v["n"])
    route = v["route"]
    sc = args.scenario
    default_grids = {"g0": "0.1,0.01", "ginf": "1,2,4,8", "delta0": "0.1,0.01",
                     "parity_g0": "0.1,0.01", "parity_ginf": "1,2,4,8", "jc": "0.01,0.0001"}
    grid = _floats(v["grid"] or default_grids[sc])
    if sc == "g0":
        rep = zeta_limit_g0(p.delta, p.eps, s, grid, N, route)
    elif sc == "ginf":
        rep = zeta_limit_g_inf(p.delta, p.eps, s, grid, N, route)
    elif sc == "delta0":
        rep = zeta_limit_delta0(p.g, p.eps, s, grid, N, route)
    elif sc in ("parity_g0", "parity_ginf"):
        reps = [parity_limit_report(p.delta, s, sign, sc.split("_")[1], grid, N, route)
                for sign in (1, -1)]
        payload = {"scenario": sc, "s": _s_out(s), "reports": [r.to_dict() for r in reps],
                   "pass": all(r.passed for r in reps)}
        _emit(v, "limits", payload)
        if not payload["pass"]:
            raise CheckFailed("a parity limit report did not approach its target")
        return
    else:
        tau = 1.0 if v["tau"] in (None, "auto") else float(v["tau"])
        which = args.jc_scenario
        rep = jc_limit_report(s, tau, which, p.delta if which == "g0" else p.g, grid)
    payload = dict(rep.to_dict(), scenario=sc, s=_s_out(s),
                   strictly_decreasing=rep.strictly_decreasing)
    _emit(v, "limits", payload)
    if not rep.passed:
        raise CheckFailed(f"{sc}: distance at the last grid point is not the smallest")


def cmd_rb(v, args):
    p = _params(v)
    kmax = int(args.kmax)
    values = [rb_polynomial(k, p) for k in range(1, kmax + 1)]
    specials = [special_value(k, p) for k in range(1, kmax + 1)]
    payload = {"params": p.__dict__, "k": list(range(1, kmax + 1)), "rb": values,
               "special_values": specials}
    if args.exact:
        payload["rb_exact"] = [str(rb_polynomial_exact(k)) for k in range(1, kmax + 1)]
    rows = [[k, a, b] for k, a, b in zip(payload["k"], values, specials)]
    _emit(v, "rb", payload, (["k", "RB_k", "zeta(1-k)"], rows))


def cmd_heatkernel(v, args):
    p = _params(v)
    N = 0 if v["n"] is None else int(v["n"])
    t = float(args.t)
    num = heat_trace_lambda0(t, p, N)
    exact = math.exp(-N * t) * 2.0 * math.cosh(p.eps * t) / -math.expm1(-t)
    rel = abs(num - exact) / exact
    payload = {"params": p.__dict__, "t": t, "N": N, "trace": num, "exact": exact,
               "rel_diff": rel, "pass": rel <= 1e-8}
    _emit(v, "heatkernel", payload)
    if rel > 1e-8:
        raise CheckFailed(f"heat-kernel trace off by {rel:.3g}")


def cmd_jzeta(v, args):
    p = _params(v)
    tau = 1.0 if v["tau"] in (None, "auto") else float(v["tau"])
    res = jc_zeta(p.g, p.delta, v["s"], tau, int(args.ncut))
    r = math.hypot(p.delta, 0.0)
    g0 = complex(hurwitz_zeta(v["s"], 0.5 + r + tau)) + complex(hurwitz_zeta(v["s"], 0.5 - r + tau))
    payload = {"g": p.g, "delta": p.delta, "s": _s_out(v["s"]), "tau": tau, "result": res.to_dict(),
               "g0_limit": g0}
    _emit(v, "jzeta", payload)


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _common(sp, model=True):
    sp.add_argument("--config", help="key = value file with [section] headers")
    sp.add_argument("--out", help="output directory (default rabizeta_out)")
    if model:
        sp.add_argument("--g", type=float)
        sp.add_argument("--delta", type=float)
        sp.add_argument("--eps", type=float)


def _series_flags(sp):
    sp.add_argument("--lambda-max", dest="lambda_max", type=int)
    sp.add_argument("--points", dest="points_per_lambda", type=int)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--replicates", type=int)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rabizeta", description=__doc__.split("\n")[0],
                                 allow_abbrev=False)
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", help="lowest eigenvalues", allow_abbrev=False)
    _common(sp)
    sp.add_argument("--jmax", type=int)
    sp.add_argument("--tol", type=float)
    sp.add_argument("--trunc", choices=["1x", "2x", "4x"], help="multiply the starting Fock cutoff")
    sp.set_defaults(func=cmd_spectrum)

    sp = sub.add_parser("curves", help="spectral curves E + g^2 over a g grid", allow_abbrev=False)
    _common(sp)
    sp.add_argument("--g-min", dest="g_min", type=float)
    sp.add_argument("--g-max", dest="g_max", type=float)
    sp.add_argument("--steps", type=int)
    sp.add_argument("--grid", help="explicit comma-separated g grid")
    sp.add_argument("--jmax", type=int)
    sp.add_argument("--tol", type=float)
    sp.add_argument("--svg", action="store_true")
    sp.set_defaults(func=cmd_curves)

    sp = sub.add_parser("partition", help="partition series against diagonalization",
                        allow_abbrev=False)
    _common(sp)
    _series_flags(sp)
    sp.add_argument("--beta", help="comma-separated beta values")
    sp.add_argument("--block", choices=["full", "plus", "minus"], default="full")
    sp.add_argument("--rtol", type=float, default=1e-3)
    sp.set_defaults(func=cmd_partition)

    sp = sub.add_parser("zeta", help="spectral zeta by eigenvalue sum and/or Mellin route",
                        allow_abbrev=False)
    _common(sp)
    sp.add_argument("--s", type=_complex)
    sp.add_argument("--tau", help="'auto' (g^2 + N) or a number")
    sp.add_argument("--n", type=int, help="override N in tau = g^2 + N")
    sp.add_argument("--route", choices=["eigen", "mellin", "both"])
    sp.add_argument("--sign", type=int, choices=[1, -1], help="parity block instead of the full model")
    sp.add_argument("--j-cut", dest="j_cut", type=int)
    sp.set_defaults(func=cmd_zeta)

    sp = sub.add_parser("limits", help="limit reports", allow_abbrev=False)
    sp.add_argument("scenario", choices=["g0", "ginf", "delta0", "parity_g0", "parity_ginf", "jc"])
    _common(sp)
    sp.add_argument("--s", type=_complex)
    sp.add_argument("--grid", help="comma-separated grid")
    sp.add_argument("--n", type=int)
    sp.add_argument("--tau", help="Jaynes-Cummings shift (default 1)")
    sp.add_argument("--route", choices=["eigen", "mellin"])
    sp.add_argument("--jc-scenario", dest="jc_scenario", choices=["g0", "delta0"], default="g0")
    sp.set_defaults(func=cmd_limits)

    sp = sub.add_parser("rb", help="Rabi-Bernoulli polynomials and special values",
                        allow_abbrev=False)
    _common(sp)
    sp.add_argument("--kmax", type=int, default=3)
    sp.add_argument("--exact", action="store_true", help="also print the symbolic polynomials")
    sp.set_defaults(func=cmd_rb)

    sp = sub.add_parser("heatkernel", help="trace of the lambda = 0 heat kernel", allow_abbrev=False)
    _common(sp)
    sp.add_argument("--t", type=float, default=1.2)
    sp.add_argument("--n", type=int)
    sp.set_defaults(func=cmd_heatkernel)

    sp = sub.add_parser("jzeta", help="Jaynes-Cummings spectral zeta", allow_abbrev=False)
    _common(sp)
    sp.add_argument("--s", type=_complex)
    sp.add_argument("--tau")
    sp.add_argument("--ncut", type=int, default=20000)
    sp.set_defaults(func=cmd_jzeta)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        v = _resolve(args)
        if args.command == "limits" and getattr(args, "route", None) is None and v["route"] == "eigen":
            v["route"] = "mellin" if args.scenario == "g0" else "eigen"
        args.func(v, args)
    except CheckFailed as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return EXIT_CHECK
    except ConvergenceError as exc:
        print(f"no convergence: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except (DomainError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CHECK
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
