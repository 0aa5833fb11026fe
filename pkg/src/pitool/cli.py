"""Command-line front end: ``pitool <subcommand> ...``.

Data goes to stdout (or ``--output``) as CSV with a header row or as a
single JSON document; diagnostics go to stderr.  Exit status is 0 on
success, 2 on a usage error and 1 when the numbers are rejected.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import json
import logging
import math
import sys

import numpy as np

from pitool.limits import (
    Delta,
    DeltaPlusDeltaPrime,
    DeltaPrimeDiagonal,
    Separated,
    Transparent,
    diagnose,
    k_theta,
)
from pitool.resonance import (
    ResidualFamily,
    delta_prime_kappa,
    kurasov_pair,
    kurasov_triple,
    residual,
    slice_surface,
    trace_curve,
)
from pitool.squeeze import SebaParams, SqueezeParams, classify, eps_schedule, realize, realize_seba
from pitool.transfer import comb_matrix, profile_matrix, transmission_probability
from pitool.verify import SweepConfig, sweep

log = logging.getLogger("pitool")


def _num(x):
    """Shortest round-trip text for a float; non-finite values become null."""
    if x is None:
        return None
    x = float(x)
    return x if math.isfinite(x) else None


def _fmt(x) -> str:
    return "" if x is None else repr(float(x))


def _json(doc, out):
    out.write(json.dumps(doc, allow_nan=False) + "\n")


@contextlib.contextmanager
def _sink(path):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


def _writer(out):
    return csv.writer(out, lineterminator="\n")


def _intensities(args):
    a = [args.a1, args.a2]
    if args.a3 is not None:
        a.append(args.a3)
    return tuple(a)


def _interaction_doc(lim) -> dict:
    doc = {"variant": type(lim).__name__}
    if isinstance(lim, Transparent):
        doc["sign"] = lim.sign
    elif isinstance(lim, Delta):
        doc["alpha"] = _num(lim.alpha)
    elif isinstance(lim, DeltaPrimeDiagonal):
        doc["theta"] = _num(lim.theta)
    elif isinstance(lim, DeltaPlusDeltaPrime):
        doc["theta"] = _num(lim.theta)
        doc["alpha"] = _num(lim.alpha)
    return doc


# ---------------------------------------------------------------- handlers


def cmd_classify(args, out):
    region = classify(args.mu, args.tau)
    _json({"region": region.value, "admissible": region.admissible}, out)


def cmd_limit(args, out):
    p = SqueezeParams(_intensities(args), args.c, args.mu, args.tau)
    d = diagnose(p)
    doc = _interaction_doc(d.interaction)
    if args.eta is not None and isinstance(d.interaction, DeltaPrimeDiagonal):
        from pitool.limits import EtaConvention, gamma_from_theta

        doc["gamma"] = _num(gamma_from_theta(d.interaction.theta, EtaConvention(args.eta)))
    doc["residual"] = _num(d.residual)
    doc["family"] = d.family
    doc["region"] = d.region.value
    _json(doc, out)


def _params(args):
    a = _intensities(args)
    if args.seba_sigma is not None:
        return SebaParams(a, args.c, args.seba_sigma), "seba-comb"
    if args.mu is None or args.tau is None:
        raise ValueError("--mu and --tau are required unless --seba-sigma is given")
    return SqueezeParams(a, args.c, args.mu, args.tau), "profile"


def cmd_sweep(args, out):
    params, mode = _params(args)
    sched = eps_schedule(args.eps_start, args.decades, args.per_decade)
    rep = sweep(SweepConfig(params, args.k, tuple(sched), mode))
    for w in rep.warnings:
        log.warning(w)
    w = _writer(out)
    w.writerow(["eps", "m11", "m12", "m21", "m22", "d11", "d12", "d21", "d22"])
    for i, e in enumerate(rep.schedule):
        devs = rep.deviations[i] if rep.deviations is not None else (None,) * 4
        w.writerow([_fmt(e), *(_fmt(m) for m in rep.matrices[i]), *(_fmt(d) for d in devs)])
    trailer = {"verdict": rep.verdict, "slopes": {k: _num(v) for k, v in rep.slopes.items()}}
    out.write("# " + json.dumps(trailer, allow_nan=False) + "\n")


def cmd_trace(args, out):
    fam = ResidualFamily(args.family, args.c)
    curves = trace_curve(fam, (args.xmin, args.xmax, args.ymin, args.ymax), args.grid)
    w = _writer(out)
    w.writerow(["family", "c", "branch", "X", "Y", "a1", "a2", "residual"])
    for cur in curves:
        res = np.atleast_1d(residual(fam, (cur.a1, cur.a2)))
        for row in zip(cur.X, cur.Y, cur.a1, cur.a2, res):
            w.writerow([fam.name, _fmt(fam.c), cur.branch, *(_fmt(v) for v in row)])


def cmd_slice3(args, out):
    fam = ResidualFamily(args.family, args.c)
    sl = slice_surface(fam, args.a3, (args.xmin, args.xmax, args.ymin, args.ymax), args.grid)
    w = _writer(out)
    w.writerow(["family", "c", "a3", "contour", "a1", "a2", "residual"])
    for i, pts in enumerate(sl.contours):
        res = np.atleast_1d(residual(fam, (pts[:, 0], pts[:, 1], sl.a3)))
        for (x, y), r in zip(pts, res):
            w.writerow([fam.name, _fmt(fam.c), _fmt(sl.a3), i, _fmt(x), _fmt(y), _fmt(r)])


def cmd_kurasov(args, out):
    if args.a2 is None:
        a = kurasov_pair(args.gamma, args.c)
        doc = {"a1": _num(a[0]), "a2": _num(a[1])}
    else:
        a = kurasov_triple(args.gamma, args.a2, args.c)
        doc = {"a1": _num(a[0]), "a2": _num(a[1]), "a3": _num(a[2])}
    doc["theta"] = _num(k_theta(a, args.c)[0])
    _json(doc, out)


def cmd_deltaprime(args, out):
    sols = delta_prime_kappa(args.a1, args.c)
    _json(
        [
            {"a1": _num(s.a1), "a2": _num(s.a2), "a3": _num(s.a3), "kappa": _num(s.kappa), "sheet": s.sheet}
            for s in sols
        ],
        out,
    )


def cmd_transmission(args, out):
    params, mode = _params(args)
    if mode == "seba-comb":
        m = comb_matrix(realize_seba(params, args.eps), args.k)
    else:
        m = profile_matrix(realize(params, args.eps), args.k)
    t, r = transmission_probability(m, args.k)
    _json({"T": _num(t), "R": _num(r)}, out)


# ---------------------------------------------------------------- parser


def _add_intensities(p, required=True):
    p.add_argument("--c", type=float, required=True, help="separation coefficient")
    p.add_argument("--a1", type=float, required=required)
    p.add_argument("--a2", type=float, required=required)
    p.add_argument("--a3", type=float, default=None)


def _add_window(p):
    for name in ("xmin", "xmax", "ymin", "ymax"):
        p.add_argument(f"--{name}", type=float, required=True)
    p.add_argument("--grid", type=int, default=512)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pitool", description=__doc__.splitlines()[0])
    parser.add_argument("-o", "--output", default=None, help="write data here instead of stdout")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="region of the (mu, tau) plane")
    p.add_argument("--mu", type=float, required=True)
    p.add_argument("--tau", type=float, required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("limit", help="predicted limit interaction")
    p.add_argument("--mu", type=float, required=True)
    p.add_argument("--tau", type=float, required=True)
    _add_intensities(p)
    p.add_argument("--eta", type=float, default=None, help="also report gamma for this eta")
    p.set_defaults(func=cmd_limit)

    p = sub.add_parser("sweep", help="exact matrices along an eps schedule")
    p.add_argument("--mu", type=float)
    p.add_argument("--tau", type=float)
    _add_intensities(p)
    p.add_argument("--k", type=float, required=True)
    p.add_argument("--eps-start", type=float, required=True)
    p.add_argument("--decades", type=int, required=True)
    p.add_argument("--per-decade", type=int, required=True)
    p.add_argument("--seba-sigma", type=float, default=None)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("resonance", help="resonance set tracing")
    rsub = p.add_subparsers(dest="resonance_command", required=True)
    t = rsub.add_parser("trace", help="branches of a two-intensity resonance set")
    t.add_argument("--family", choices=["K2", "L2", "F2", "J2"], required=True)
    t.add_argument("--c", type=float, default=0.0)
    _add_window(t)
    t.set_defaults(func=cmd_trace)
    s = rsub.add_parser("slice3", help="fixed-a3 slice of a three-intensity resonance set")
    s.add_argument("--family", choices=["K3", "L3", "F3", "J3"], required=True)
    s.add_argument("--c", type=float, default=0.0)
    s.add_argument("--a3", type=float, required=True)
    _add_window(s)
    s.set_defaults(func=cmd_slice3)

    p = sub.add_parser("kurasov", help="intensities for a given gamma on the K-line")
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--a2", type=float, default=None, help="middle charge; gives a three-layer triple")
    p.set_defaults(func=cmd_kurasov)

    p = sub.add_parser("deltaprime-kappa", help="K3 points on the plane a1 + a2 + a3 = 0")
    p.add_argument("--a1", type=float, required=True)
    p.add_argument("--c", type=float, required=True)
    p.set_defaults(func=cmd_deltaprime)

    p = sub.add_parser("transmission", help="T and R of the exact profile at one eps")
    p.add_argument("--k", type=float, required=True)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--mu", type=float)
    p.add_argument("--tau", type=float)
    _add_intensities(p)
    p.add_argument("--seba-sigma", type=float, default=None)
    p.set_defaults(func=cmd_transmission)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="pitool: %(message)s")
    try:
        with _sink(args.output) as out:
            args.func(args, out)
    except (ValueError, ArithmeticError) as exc:
        print(f"pitool: error: {exc}", file=sys.stderr)
        return 1
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
