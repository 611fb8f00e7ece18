"""Command-line front end: one JSON object per line on stdout.

Exit status 0 on success, 1 when an engine fails (an ``{"error": ...}``
record is printed), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import random
import statistics
import sys
import time
from dataclasses import dataclass
from typing import Optional, Sequence

from .counting import (NAIVE_GUARD, CountError, count_bsgs, count_cm, count_naive,
                       cornacchia)
from .ecurve import Curve, curve_make, format_curve, parse_curve
from .ffield import FieldCtx, field_make, format_element, parse_element, sqrt_mod
from .padic import agm_count, agm_shape
from .schoof import make_prime_plan, schoof_count
from .zetalab import (BRUTE_GUARD, brute_force_variety_count, counts_to_zeta, parse_variety,
                      variety_counts, zeta_elliptic, zeta_to_counts)

ALGORITHMS = ("naive", "bsgs", "schoof", "agm", "cm", "auto")
AUTO_NAIVE_LIMIT = 2 ** 16


class UsageError(Exception):
    pass


@dataclass
class Request:
    command: str
    args: argparse.Namespace


def _field(args) -> FieldCtx:
    modulus = None
    if args.modulus:
        modulus = [int(s) for s in args.modulus.split(",")]
    return field_make(args.p, args.d, modulus, rng=random.Random(0))


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ffcount", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def field_flags(sp, required=True):
        sp.add_argument("--p", type=int, required=required, help="characteristic")
        sp.add_argument("--d", type=int, default=1, help="extension degree")
        sp.add_argument("--modulus", help="monic modulus, coefficients lowest first, comma separated")

    def curve_flags(sp):
        sp.add_argument("--curve", help="short:a,b or general:a1,a2,a3,a4,a6")
        sp.add_argument("--alg", default="auto", help="|".join(ALGORITHMS))
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--guard", type=int, default=NAIVE_GUARD, help="naive enumeration limit")
        sp.add_argument("--trace", action="store_true", help="engine trace lines on stderr")
        sp.add_argument("--ell-max", type=int, help="largest prime Schoof may use")
        sp.add_argument("--D", type=int, help="CM discriminant (|D|) for --alg cm")

    sp = sub.add_parser("count", help="number of points of an elliptic curve")
    field_flags(sp)
    curve_flags(sp)
    sp.add_argument("--timing", action="store_true", help="include elapsed milliseconds")

    sp = sub.add_parser("zeta", help="zeta function of a curve or of a variety")
    field_flags(sp, required=False)
    curve_flags(sp)
    sp.add_argument("--variety", help="'p,d[,modulus] ; nvars ; poly | poly'")
    sp.add_argument("--degree-bound", type=int, default=4)
    sp.add_argument("--counts", type=int, default=4, help="how many N_k to list")

    sp = sub.add_parser("sqrtmod", help="canonical square root in F_q")
    field_flags(sp)
    sp.add_argument("--a", required=True)
    sp.add_argument("--seed", type=int, default=0)

    sp = sub.add_parser("cornacchia", help="solutions of x^2 + D y^2 = 4q")
    sp.add_argument("--D", type=int, required=True)
    sp.add_argument("--q", type=int, required=True)

    sp = sub.add_parser("bruteforce", help="points of an affine variety over F_{q^k}")
    sp.add_argument("--variety", required=True)
    sp.add_argument("--k", type=int, default=1)
    sp.add_argument("--guard", type=int, default=BRUTE_GUARD)

    sp = sub.add_parser("bench", help="time several engines on one curve")
    field_flags(sp)
    curve_flags(sp)
    sp.add_argument("--trials", type=int, default=3)
    return parser


def parse_args(argv: Optional[Sequence[str]] = None) -> Request:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        _validate(args)
    except UsageError as exc:
        parser.error(str(exc))
    return Request(args.command, args)


def _validate(args) -> None:
    cmd = args.command
    if cmd in ("count", "zeta", "bench"):
        algs = args.alg.split(",")
        for alg in algs:
            if alg not in ALGORITHMS:
                raise UsageError("unknown algorithm %r" % alg)
        if cmd != "bench" and len(algs) > 1:
            raise UsageError("only bench accepts several algorithms")
        if cmd == "zeta" and args.variety:
            return
        if args.p is None:
            raise UsageError("--p is required")
        if cmd != "bench" and not args.curve:
            raise UsageError("--curve is required")
        for alg in algs:
            if alg == "schoof" and args.p <= 3:
                raise UsageError("schoof needs p > 3")
            if alg == "agm" and args.p != 2:
                raise UsageError("agm needs p = 2")
            if alg == "cm" and args.D is None:
                raise UsageError("cm needs --D")
    if getattr(args, "d", 1) < 1:
        raise UsageError("--d must be positive")


def auto_select(F: FieldCtx, E: Curve) -> str:
    if F.q <= AUTO_NAIVE_LIMIT:
        return "naive"
    if F.p == 2:
        c = agm_shape(E)
        if c is not None and not F.is_zero(c):
            return "agm"
    if F.p > 3 and E.short:
        return "schoof"
    return "bsgs"


def _count(E: Curve, alg: str, args, log=None):
    F = E.ctx
    rng = random.Random(args.seed)
    if alg == "auto":
        alg = auto_select(F, E)
    if alg == "naive":
        return count_naive(E, args.guard)
    if alg == "bsgs":
        return count_bsgs(E, rng, guard=args.guard)
    if alg == "schoof":
        if not E.short:
            raise ValueError("schoof needs a short Weierstrass curve")
        if args.ell_max is not None:
            plan = make_prime_plan(F.q, F.p)
            if plan.primes[-1] > args.ell_max:
                raise ValueError("schoof needs primes up to %d > --ell-max %d"
                                 % (plan.primes[-1], args.ell_max))
        return schoof_count(E, log=log)
    if alg == "agm":
        return agm_count(E, log=log)
    if alg == "cm":
        return count_cm(E, args.D, rng)
    raise ValueError("unknown algorithm %r" % alg)


def _emit(record: dict) -> None:
    sys.stdout.write(json.dumps(record) + "\n")
    sys.stdout.flush()


def _zeta_record(Z, K: int) -> dict:
    return {
        "zeta": str(Z),
        "numerator": [str(c) for c in Z.num],
        "denominator": [str(c) for c in Z.den],
        "counts": [str(n) for n in zeta_to_counts(Z, K)],
    }


def run(req: Request) -> int:
    args = req.args
    log = (lambda s: print(s, file=sys.stderr)) if getattr(args, "trace", False) else None
    cmd = req.command
    if cmd == "count":
        F = _field(args)
        E = parse_curve(F, args.curve)
        res = _count(E, args.alg, args, log)
        rec = res.to_record()
        if not args.timing:
            rec.pop("ms")
        _emit(rec)
    elif cmd == "zeta":
        if args.variety:
            V = parse_variety(args.variety)
            K = 2 * args.degree_bound + 1
            counts = variety_counts(V, K)
            Z = counts_to_zeta(counts, args.degree_bound)
            rec = {"q": str(V.ctx.q)}
        else:
            F = _field(args)
            E = parse_curve(F, args.curve)
            res = _count(E, args.alg, args, log)
            Z = zeta_elliptic(F.q, res.trace)
            rec = {"q": str(F.q), "curve": args.curve, "method": res.method, "trace": str(res.trace)}
        rec.update(_zeta_record(Z, args.counts))
        _emit(rec)
    elif cmd == "sqrtmod":
        F = _field(args)
        a = parse_element(F, args.a)
        r = sqrt_mod(a, random.Random(args.seed))
        _emit({"q": str(F.q), "a": format_element(a), "root": format_element(r)})
    elif cmd == "cornacchia":
        sols = cornacchia(args.D, args.q)
        _emit({"D": str(args.D), "q": str(args.q),
               "solutions": [[str(x), str(y)] for x, y in sols]})
    elif cmd == "bruteforce":
        V = parse_variety(args.variety)
        n = brute_force_variety_count(V, args.k, args.guard)
        _emit({"q": str(V.ctx.q), "k": str(args.k), "nvars": str(V.nvars), "count": str(n)})
    elif cmd == "bench":
        _bench(args)
    return 0


def _bench(args) -> None:
    F = _field(args)
    rng = random.Random(args.seed)
    if args.curve:
        E = parse_curve(F, args.curve)
    else:
        E = None
        while E is None:
            try:
                if F.p > 3:
                    E = curve_make(F, "short", [F.random_element(rng), F.random_element(rng)])
                else:
                    E = curve_make(F, "general", [F.random_element(rng) for _ in range(5)])
            except ValueError:
                E = None
    for alg in args.alg.split(","):
        times, n = [], None
        for _ in range(max(1, args.trials)):
            t0 = time.perf_counter()
            n = _count(E, alg, args).n_points
            times.append(time.perf_counter() - t0)
        _emit({"alg": alg, "q": str(F.q), "curve": format_curve(E), "n_points": str(n),
               "trials": str(len(times)),
               "min_ms": "%.3f" % (1000 * min(times)),
               "median_ms": "%.3f" % (1000 * statistics.median(times))})


def main(argv: Optional[Sequence[str]] = None) -> int:
    req = parse_args(argv)
    try:
        return run(req)
    except (ValueError, ArithmeticError, CountError, RuntimeError) as exc:
        _emit({"error": str(exc)})
        return 1


if __name__ == "__main__":
    sys.exit(main())
