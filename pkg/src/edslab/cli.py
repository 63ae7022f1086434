"""Command-line frontend.

All output is JSON on stdout (or a file via --output).  Big integers are
serialized as decimal strings so nothing is squeezed through a 53-bit
float; arbitrary-precision reals are decimal strings with an attached
precision annotation.  Errors are machine-readable JSON on stderr.
Exit codes: 0 success, 2 precondition/usage error, 3 partial results
after budget exhaustion.  See SCHEMA.md for the formats.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

import gmpy2

from . import bounds as bounds_mod
from . import eds as eds_mod
from . import heights as heights_mod
from . import ja1728 as ja_mod
from . import sieve_thue as st_mod
from .bigfloat import default_precision, precision, to_decimal_string
from .curve_core import Curve, Point, point
from .division_polynomials import Isogeny, mult_isogeny, velu
from .errors import EdslabError, FirstAlternative
from .intfactor import Budget
from .polynomial import XPolynomial


# ---------------------------------------------------------------------------
# serialization helpers
# ---------------------------------------------------------------------------


def _big(x) -> str:
    return str(int(x))


def _real(x, bits: int) -> dict:
    with precision(bits):
        return {"value": to_decimal_string(gmpy2.mpfr(x)), "precision_bits": bits}


def _point_out(P: Point) -> dict:
    if P.is_infinity:
        return {"infinity": True}
    A, B, C = P.triple
    return {
        "infinity": False,
        "x": f"{P.x.numerator}/{P.x.denominator}" if P.x.denominator != 1 else str(P.x.numerator),
        "y": f"{P.y.numerator}/{P.y.denominator}" if P.y.denominator != 1 else str(P.y.numerator),
        "A": _big(A),
        "B": _big(B),
        "C": _big(C),
    }


def _parse_curve(text: str) -> Curve:
    return Curve.from_text(text)


def _parse_point(text: str) -> Point:
    text = text.strip()
    if text == "inf":
        from .curve_core import INFINITY

        return INFINITY
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError(f"point must be 'inf' or 'x,y', got {text!r}")
    return point(Fraction(parts[0]), Fraction(parts[1]))


def _parse_isogeny(E: Curve, spec: str) -> Isogeny:
    if spec.startswith("mult:"):
        return mult_isogeny(E, int(spec[len("mult:"):]))
    if spec.startswith("kernel:"):
        return velu(E, XPolynomial.from_text(spec[len("kernel:"):]))
    raise ValueError(f"isogeny spec must be 'mult:m' or 'kernel:<poly>', got {spec!r}")


def _emit(obj, args) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True)
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _cmd_curve_info(args) -> int:
    E = _parse_curve(args.curve)
    from .curve_core import (
        bad_primes,
        conductor_and_szpiro,
        is_minimal,
        minimal_model,
        tate_reduction,
    )
    from .errors import DegenerateSzpiro

    Emin, _ = minimal_model(E)
    info = {
        "ainvs": [str(a) for a in E.ainvs()],
        "discriminant": _big(E.disc),
        "c4": _big(E.c4),
        "c6": _big(E.c6),
        "j_invariant": f"{E.j.numerator}/{E.j.denominator}",
        "is_minimal": is_minimal(E),
        "minimal_ainvs": [str(a) for a in Emin.ainvs()],
        "bad_primes": [
            {
                "p": p,
                "kodaira_type": (ri := tate_reduction(Emin, p)).type_label,
                "ord_disc": ri.ord_p_disc,
                "conductor_exponent": ri.conductor_exponent,
            }
            for p in bad_primes(Emin)
        ],
    }
    try:
        cond, szpiro = conductor_and_szpiro(Emin, args.precision)
        info["conductor"] = _big(cond)
        info["szpiro_ratio"] = _real(szpiro, args.precision)
    except DegenerateSzpiro:
        info["conductor"] = "1"
        info["szpiro_ratio"] = None
    _emit(info, args)
    return 0


def _cmd_eds(args) -> int:
    E = _parse_curve(args.curve)
    P = _parse_point(args.point)
    if args.which == "term":
        t = eds_mod.term(E, P, args.n)
        _emit(_term_out(t), args)
    else:
        seq = eds_mod.sequence(E, P, args.max_n)
        _emit([_term_out(t) for t in seq], args)
    return 0


def _term_out(t) -> dict:
    if t.is_infinity:
        return {"n": t.n, "infinity": True}
    return {
        "n": t.n,
        "infinity": False,
        "A_n": _big(t.A_n),
        "B_n": _big(t.B_n),
        "C_n": _big(t.C_n),
    }


def _cmd_heights(args) -> int:
    E = _parse_curve(args.curve)
    P = _parse_point(args.point)
    rep = heights_mod.canonical_height(E, P, args.precision)
    out = {
        "naive_h": _real(rep.naive_h, args.precision),
        "canonical_h": _real(rep.canonical_h, args.precision),
        "arch_canonical": _real(rep.arch_canonical, args.precision)
        if rep.arch_canonical is not None
        else None,
        "local_canonical": {
            str(p): _real(v, args.precision) for p, v in rep.local_canonical.items()
        },
        "curve_h": _real(rep.curve_h, args.precision),
    }
    _emit(out, args)
    return 0


def _cmd_isogeny(args) -> int:
    E = _parse_curve(args.curve)
    if args.which == "mult":
        sigma = mult_isogeny(E, args.m)
    else:
        sigma = velu(E, XPolynomial.from_text(args.kernel))
    out = {
        "domain": [str(a) for a in sigma.domain.ainvs()],
        "codomain": [str(a) for a in sigma.codomain.ainvs()],
        "degree": sigma.degree,
        "d_sigma": sigma.d_sigma,
        "kernel_x_poly": sigma.kernel_x_poly.to_text(),
        "psi_sq": sigma.psi_sq.to_text(),
        "phi": sigma.phi.to_text(),
    }
    if args.point:
        from .division_polynomials import isogeny_apply

        out["image_point"] = _point_out(isogeny_apply(sigma, _parse_point(args.point)))
    _emit(out, args)
    return 0


def _cmd_bounds(args) -> int:
    bits = args.precision
    inp = bounds_mod.BoundInputs(
        h_P=args.h_P,
        h_sigmaP=args.h_sigmaP,
        hE=args.hE,
        hEprime=args.hEprime,
        d=args.d,
        eps=args.eps,
        M=args.M,
        Mprime=args.Mprime,
    )
    name = args.name
    meaning = bounds_mod.BoundMeaning.UpperBoundOnIndex
    if name == "siegel":
        b1, b2 = bounds_mod.siegel_bounds(inp, bits)
        values = {"bound1": b1, "bound2": b2}
        meaning = bounds_mod.BoundMeaning.IndexExceedingImpliesNewPrime
    elif name == "nonuniform":
        n1, n2 = bounds_mod.nonuniform_bounds(inp, bits)
        values = {"N_first": n1, "N_second": n2}
        meaning = bounds_mod.BoundMeaning.IndexExceedingImpliesNewPrime
    elif name == "thm12":
        c = bounds_mod.szpiro_constant(args.S, bits) if args.C is None else gmpy2.mpfr(args.C)
        comp, n1, n3 = bounds_mod.theorem12_bounds(c, args.h_sigmaP, bits)
        values = {"C": c, "composite_bound": comp, "N1_bound": n1, "N3_bound": n3}
    elif name == "david":
        values = {"bound": bounds_mod.david_arch_bound(args.hE, args.h_P, args.n, bits)}
    elif name == "gap":
        a, b, ok = bounds_mod.gap_principle(args.n1, args.n2, args.n3, inp, bits)
        values = {"bound_caseA": a, "bound_caseB": b}
        _emit(
            {
                "name": name,
                "hypotheses_ok": ok,
                "values": {k: _real(v, bits) for k, v in values.items()},
            },
            args,
        )
        return 0
    elif name == "bounded-component":
        values = {"bound": bounds_mod.bounded_component_bounds(args.h_P, args.hEprime, bits)}
        meaning = bounds_mod.BoundMeaning.IndexExceedingImpliesTwoNewPrimes
    else:
        raise ValueError(f"unknown bound name {name!r}")
    _emit(
        {
            "name": name,
            "meaning": meaning.value,
            "values": {k: _real(v, bits) for k, v in values.items()},
        },
        args,
    )
    return 0


def _cmd_sieve(args) -> int:
    E = _parse_curve(args.curve)
    P = _parse_point(args.point)
    sigma = _parse_isogeny(E, args.isogeny)
    recs = st_mod.sieve_magnified(
        sigma, P, args.max_n, budget_ops=args.budget, threads=args.threads
    )
    out = [
        {
            "n": r.n,
            "B_image": _big(r.classification.B),
            "B_base": _big(r.base_classification.B),
            "image_known_factors": [[_big(p), e] for p, e in r.classification.known_factors],
            "image_cofactor": _big(r.classification.cofactor),
            "image_cofactor_status": r.classification.cofactor_status,
            "all_base_primes_in_S": r.all_base_primes_in_S,
            "new_prime_count": r.new_prime_count,
            "in_I": r.in_I,
        }
        for r in recs
    ]
    _emit(out, args)
    if any(r.new_prime_count == "Unknown" for r in recs):
        return 3
    return 0


def _cmd_thue(args) -> int:
    E = _parse_curve(args.curve)
    P = _parse_point(args.point)
    sigma = _parse_isogeny(E, args.isogeny)
    if args.which == "emit":
        try:
            insts = st_mod.emit_thue(sigma, args.n, P, r_max=args.r_max, bits=args.precision)
        except FirstAlternative as exc:
            _emit({"first_alternative": True, "detail": str(exc)}, args)
            return 0
        _emit(
            [
                {
                    "psi_sq": i.poly.to_text(),
                    "degree": i.degree,
                    "rhs": _big(i.rhs),
                    "rhs_bound": _real(i.rhs_bound, args.precision),
                    "matches_actual": i.matches_actual,
                }
                for i in insts
            ],
            args,
        )
        return 0
    # brute: rebuild one instance from flags
    inst = st_mod.ThueInstance(
        poly=sigma.psi_sq,
        degree=sigma.degree,
        rhs=args.rhs,
        rhs_bound=gmpy2.mpfr(abs(args.rhs)),
        matches_actual=False,
    )
    sols = st_mod.brute_force_thue(inst, args.box)
    _emit([[_big(a), _big(b)] for a, b in sols], args)
    return 0


def _cmd_ea(args) -> int:
    A = args.A
    P = _parse_point(args.point)
    params = ja_mod.EAParams.from_A(A)
    out = {
        "A": A,
        "class2": params.class2,
        "discriminant": _big(params.disc),
        "reduction_table": [[p, t] for p, t in ja_mod.ea_reduction_table(A)],
        "reduction_crosscheck": ja_mod.ea_reduction_crosscheck(A),
        "height_difference_ok": ja_mod.ea_height_difference_check(A, P, args.precision),
    }
    verdicts = []
    for n in range(ja_mod.EVEN_INDEX_THRESHOLD, args.max_n + 1):
        v = ja_mod.ea_even_index_composite(A, P, n)
        verdicts.append(
            {"n": n, "verdict": v.verdict, "criteria": list(v.criteria_fired)}
        )
    out["even_index_verdicts"] = verdicts
    _emit(out, args)
    return 0


def _cmd_selftest(args) -> int:
    """Small end-to-end pass over the bundled fixtures."""
    from math import gcd

    E = Curve(0, 0, 1, -1, 0)
    P = point(0, 0)
    seq = eds_mod.sequence(E, P, 24)
    bs = {t.n: t.B_n for t in seq}
    ok = all(
        gcd(bs[n], bs[m]) == bs[gcd(n, m)] for n in range(1, 25) for m in range(1, 25)
    )
    rep = heights_mod.canonical_height(E, P, args.precision)
    with precision(args.precision):
        ok = ok and abs(rep.canonical_h - gmpy2.mpfr("0.0255557041")) < 1e-8
    E25 = Curve(0, 0, 0, -25, 0)
    sig = velu(E25, XPolynomial([0, 1]))
    res = heights_mod.isogeny_height_identity_check(sig, point(-4, 6), args.precision)
    ok = ok and res < 1e-8
    ok = ok and ja_mod.ea_reduction_crosscheck(25)
    _emit({"ok": bool(ok)}, args)
    return 0 if ok else 2


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _add_common(p) -> None:
    p.add_argument("--precision", type=int, default=None, help="working precision in bits")
    p.add_argument("--output", default=None, help="write JSON here instead of stdout")
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1)


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="edslab")
    sub = top.add_subparsers(dest="command", required=True)

    pc = sub.add_parser("curve")
    pcs = pc.add_subparsers(dest="which", required=True)
    p = pcs.add_parser("info")
    p.add_argument("--curve", required=True)
    _add_common(p)
    p.set_defaults(func=_cmd_curve_info)

    pe = sub.add_parser("eds")
    pes = pe.add_subparsers(dest="which", required=True)
    p = pes.add_parser("term")
    p.add_argument("--curve", required=True)
    p.add_argument("--point", required=True)
    p.add_argument("--n", type=int, required=True)
    _add_common(p)
    p.set_defaults(func=_cmd_eds)
    p = pes.add_parser("seq")
    p.add_argument("--curve", required=True)
    p.add_argument("--point", required=True)
    p.add_argument("--max-n", dest="max_n", type=int, required=True)
    _add_common(p)
    p.set_defaults(func=_cmd_eds)

    p = sub.add_parser("heights")
    p.add_argument("--curve", required=True)
    p.add_argument("--point", required=True)
    _add_common(p)
    p.set_defaults(func=_cmd_heights)

    pi = sub.add_parser("isogeny")
    pis = pi.add_subparsers(dest="which", required=True)
    p = pis.add_parser("mult")
    p.add_argument("--curve", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--point", default=None)
    _add_common(p)
    p.set_defaults(func=_cmd_isogeny)
    p = pis.add_parser("velu")
    p.add_argument("--curve", required=True)
    p.add_argument("--kernel", required=True)
    p.add_argument("--point", default=None)
    _add_common(p)
    p.set_defaults(func=_cmd_isogeny)

    p = sub.add_parser("bounds")
    p.add_argument("name", choices=["siegel", "nonuniform", "thm12", "david", "gap", "bounded-component"])
    for flag, typ, default in [
        ("--h-P", float, 1.0), ("--h-sigmaP", float, 1.0), ("--hE", float, 1.0),
        ("--hEprime", float, 1.0), ("--eps", float, 0.0), ("--M", float, 0.0),
        ("--Mprime", float, 0.0), ("--S", float, 1.0),
    ]:
        p.add_argument(flag, dest=flag[2:].replace("-", "_"), type=typ, default=default)
    p.add_argument("--C", type=float, default=None)
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--n1", type=int, default=9)
    p.add_argument("--n2", type=int, default=11)
    p.add_argument("--n3", type=int, default=13)
    _add_common(p)
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("sieve")
    p.add_argument("--curve", required=True)
    p.add_argument("--point", required=True)
    p.add_argument("--isogeny", required=True, help="'mult:m' or 'kernel:<poly>'")
    p.add_argument("--max-n", dest="max_n", type=int, required=True)
    p.add_argument("--budget", type=int, default=2_000_000)
    _add_common(p)
    p.set_defaults(func=_cmd_sieve)

    pt = sub.add_parser("thue")
    pts = pt.add_subparsers(dest="which", required=True)
    p = pts.add_parser("emit")
    p.add_argument("--curve", required=True)
    p.add_argument("--point", required=True)
    p.add_argument("--isogeny", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r-max", dest="r_max", type=int, default=3)
    _add_common(p)
    p.set_defaults(func=_cmd_thue)
    p = pts.add_parser("brute")
    p.add_argument("--curve", required=True)
    p.add_argument("--point", default="inf")
    p.add_argument("--isogeny", required=True)
    p.add_argument("--rhs", type=int, required=True)
    p.add_argument("--box", type=int, required=True)
    _add_common(p)
    p.set_defaults(func=_cmd_thue)

    p = sub.add_parser("ea")
    peas = p.add_subparsers(dest="which", required=True)
    p = peas.add_parser("check")
    p.add_argument("--A", type=int, required=True)
    p.add_argument("--point", required=True)
    p.add_argument("--max-n", dest="max_n", type=int, default=12)
    _add_common(p)
    p.set_defaults(func=_cmd_ea)

    p = sub.add_parser("selftest")
    _add_common(p)
    p.set_defaults(func=_cmd_selftest)
    return top


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    if args.precision is None:
        args.precision = default_precision()
    try:
        return args.func(args)
    except EdslabError as exc:
        json.dump({"error": type(exc).__name__, "detail": str(exc)}, sys.stderr)
        sys.stderr.write("\n")
        return 2
    except (ValueError, ArithmeticError) as exc:
        json.dump({"error": type(exc).__name__, "detail": str(exc)}, sys.stderr)
        sys.stderr.write("\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
