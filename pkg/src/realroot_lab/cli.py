"""Command-line front end. Every command prints one JSON report.

Exit codes: 0 verified / success, 1 completed but the checked claim does
not hold, 2 input error, 3 inconclusive enclosure, 4 certification failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from itertools import combinations
from math import comb, factorial

from . import __version__
from .exactpoly import Poly, as_rational, classify_zeros, format_rational, read_poly, to_decimal
from .msequences import (
    _ordered_map,
    binomial_family,
    exp_truncation_family,
    parse_sequence,
    polya_schur_check,
    rapid_check,
    seq_sr_image,
    seq_two_pow_minus_k2,
    sweep_sr_on_family,
)
from .series import (
    TailNotCertified,
    gen_fd_exp,
    gen_sr_exp,
    gen_srtilde_exp,
    j_exp_closed,
    laguerre_L1_result,
    laguerre_Ln_poly,
    refute_with_escalation,
    s4_closed_form,
    s6_numerator,
)
from .stanley import hypergeom_poly, hypergeom_poly_pochhammer, mace_rows, stanley_rows
from .transforms import (
    OPERATORS,
    AlphaSeq,
    apply_gamma,
    f_d,
    j_op,
    malo_schur_compose,
    s_r,
    s_tilde_r,
    u_alpha,
    v_alpha,
)

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_INCONCLUSIVE, EXIT_UNCERTIFIED = 0, 1, 2, 3, 4

COUNTEREXAMPLES = {
    "s6": (gen_sr_exp, -43, (30,)),
    "s6tilde": (gen_srtilde_exp, -56, (30, 60, 120)),
}

# caps keep identity sweeps at desk scale
IDENTITY_CAPS = {"n_max": 40, "d_max": 10, "k_max": 200}


class InputError(ValueError):
    pass


def make_report(command: str, inputs: dict, results, certificates=None) -> dict:
    return {
        "command": command,
        "version": __version__,
        "inputs": inputs,
        "results": results,
        "certificates": certificates if certificates is not None else [],
    }


def _poly_payload(p: Poly) -> dict:
    return {**p.to_json(), "degree": p.degree}


# --- transform -------------------------------------------------------------

def run_transform(op: str, p: Poly, *, r=None, d=None, alpha=None, gamma=None,
                  other: Poly | None = None, with_factorial=False, classify=False):
    def need(value, flag):
        if value is None:
            raise InputError(f"operator {op} requires {flag}")
        return value

    if op == "s_r":
        out = s_r(need(r, "--r"), p)
    elif op == "s_tilde_r":
        out = s_tilde_r(need(r, "--r"), p)
    elif op == "f_d":
        out = f_d(need(d, "--d"), p)
    elif op == "j":
        out = j_op(p)
    elif op == "u_alpha":
        out = u_alpha(need(alpha, "--alpha"), p)
    elif op == "v_alpha":
        out = v_alpha(need(alpha, "--alpha"), p)
    elif op == "compose":
        out = malo_schur_compose(p, need(other, "--other"), with_factorial)
    elif op == "gamma":
        out = apply_gamma(need(gamma, "--gamma"), p)
    else:
        raise InputError(f"unknown operator {op!r}")
    results = {"output": _poly_payload(out)}
    certs = []
    if classify:
        v = classify_zeros(out)
        results["classification"] = v.kind.value
        certs.append(v.to_json())
    return results, certs, EXIT_OK


# --- counterexample --------------------------------------------------------

def run_counterexample(name: str, n: int | None = None, x0=None, r: int = 6):
    make_gen, default_x0, ladder = COUNTEREXAMPLES[name]
    gen = make_gen(r)
    x0 = as_rational(default_x0 if x0 is None else x0)
    ladder = (n,) if n is not None else ladder
    try:
        res = refute_with_escalation(gen, x0, ladder) if len(ladder) > 1 else laguerre_L1_result(gen, ladder[0], x0)
    except TailNotCertified as exc:
        return {"series": gen.description, "verdict": "UNCERTIFIED", "diagnostic": str(exc)}, [], EXIT_UNCERTIFIED
    enc = res.enclosure
    if enc.hi < 0:
        verdict, code = "REFUTED", EXIT_OK
    elif enc.lo > 0 or (enc.lo == enc.hi == 0):
        verdict, code = "NOT-REFUTED-HERE", EXIT_FAILED
    else:
        verdict, code = "INCONCLUSIVE", EXIT_INCONCLUSIVE
    payload = res.to_json()
    certs = payload.pop("tailCertificates")
    results = {"series": gen.description, "ladder": list(ladder), **payload, "verdict": verdict}
    return results, certs, code


# --- identity --------------------------------------------------------------

def _eq_row(lhs: Fraction, rhs: Fraction, **idx) -> dict:
    return {**idx, "lhs": format_rational(lhs), "rhs": format_rational(rhs), "equal": lhs == rhs}


def exp_truncation(m: int) -> Poly:
    return Poly(Fraction(1, factorial(k)) for k in range(m + 1))


def j_binomial_closed(n: int, k: int) -> Fraction:
    def inv(m):
        return Fraction(1, factorial(m)) if m >= 0 else Fraction(0)

    pref = 4 * factorial(n) * factorial(n + 1) * factorial(n + 2)
    return pref * comb(n, k) * inv(k + 1) * inv(k + 2) ** 2 * inv(n - k - 1) * inv(n - k + 1) ** 2


def identity_rows(name: str, n_max: int, d_max: int, k_max: int) -> list[dict]:
    if name == "stanley":
        return stanley_rows(n_max, d_max)
    if name == "mace":
        return mace_rows(d_max, k_max)
    if name == "j-binomial":
        rows = []
        for n in range(n_max + 1):
            img = j_op(Poly.binomial(n))
            rows += [_eq_row(img.coeff(k), j_binomial_closed(n, k), n=n, k=k) for k in range(n + 1)]
        return rows
    if name == "s4-closed-form":
        # a coefficient k of S_4 on a truncation of e^x is final once k + 4 <= degree
        img = s_r(4, exp_truncation(k_max + 4))
        return [_eq_row(img.coeff(k), s4_closed_form(k), k=k) for k in range(k_max + 1)]
    if name == "s6-numerator":
        img = s_r(6, exp_truncation(k_max + 6))
        return [
            _eq_row(img.coeff(k) * factorial(k) * factorial(k + 6), Fraction(s6_numerator(k)), k=k)
            for k in range(k_max + 1)
        ]
    if name == "fd-exp":
        rows = []
        for d in range(1, d_max + 1):
            img = f_d(d, exp_truncation(k_max + d - 1))
            gen = gen_fd_exp(d)
            rows += [_eq_row(img.coeff(k), gen.coeff(k), d=d, k=k) for k in range(k_max + 1)]
        return rows
    if name == "j-exp":
        img = j_op(exp_truncation(k_max + 2))
        return [_eq_row(img.coeff(k), j_exp_closed(k), k=k) for k in range(k_max + 1)]
    if name == "pochhammer":
        rows = []
        pool = range(1, d_max + 1)
        for size in range(0, min(3, d_max) + 1):
            for al in combinations(pool, size):
                for n in range(n_max + 1):
                    lhs, rhs = hypergeom_poly(al, n), hypergeom_poly_pochhammer(al, n)
                    rows += [
                        _eq_row(lhs.coeff(k), rhs.coeff(k), alphas=list(al), n=n, k=k) for k in range(n + 1)
                    ]
        return rows
    raise InputError(f"unknown identity {name!r}")


IDENTITIES = ("stanley", "mace", "j-binomial", "s4-closed-form", "s6-numerator", "fd-exp", "j-exp", "pochhammer")


def run_identity(name: str, n_max: int, d_max: int, k_max: int):
    for key, val in (("n_max", n_max), ("d_max", d_max), ("k_max", k_max)):
        if val < 0 or val > IDENTITY_CAPS[key]:
            raise InputError(f"--{key.replace('_', '-')} must be in 0..{IDENTITY_CAPS[key]}")
    rows = identity_rows(name, n_max, d_max, k_max)
    ok = all(r["equal"] for r in rows)
    return {"identity": name, "cells": len(rows), "allEqual": ok, "rows": rows}, [], EXIT_OK if ok else EXIT_FAILED


# --- check -----------------------------------------------------------------

def run_check_real_rooted(p: Poly):
    v = classify_zeros(p)
    results = {"polynomial": _poly_payload(p), "verdict": v.kind.value}
    return results, [v.to_json()], EXIT_OK


def run_check_ms(gamma_spec: str, horizon: int):
    verdict = polya_schur_check(parse_sequence(gamma_spec), horizon)
    payload = verdict.to_json()
    return {"gamma": gamma_spec, "verdict": payload["verdict"]}, [payload], (
        EXIT_OK if verdict.consistent else EXIT_FAILED
    )


def run_check_rapid(seq_spec: str, alpha, K: int):
    res = rapid_check(parse_sequence(seq_spec), alpha, K)
    results = {"sequence": seq_spec, "alpha": format_rational(as_rational(alpha)), "K": K, **res.to_json()}
    return results, [], EXIT_OK if res.holds else EXIT_FAILED


def run_check_laguerre(p: Poly, order: int, points: list[Fraction]):
    ln = laguerre_Ln_poly(p, order)
    values = [{"x": format_rational(x), "value": format_rational(ln(x)), "decimal": to_decimal(ln(x))} for x in points]
    nonneg = all(ln(x) >= 0 for x in points)
    results = {"order": order, "Ln": _poly_payload(ln), "samples": values, "nonnegativeAtSamples": nonneg}
    return results, [], EXIT_OK if nonneg else EXIT_FAILED


# --- sweep -----------------------------------------------------------------

def _closure_cell(args) -> dict:
    op, param, n = args
    p = Poly.binomial(n)
    img = {"s_r": lambda: s_r(param, p), "s_tilde_r": lambda: s_tilde_r(param, p),
           "f_d": lambda: f_d(param, p), "j": lambda: j_op(p)}[op]()
    v = classify_zeros(img)
    return {"op": op, "param": param, "n": n, "verdict": v.kind.value,
            "negativeRootCount": v.negative_root_count, "degree": v.degree}


def closure_rows(n_max: int = 20, r_values=(1, 2, 3, 4), d_max: int = 6) -> list[dict]:
    cells = [(op, r, n) for op in ("s_r", "s_tilde_r") for r in r_values for n in range(n_max + 1)]
    cells += [("f_d", d, n) for d in range(1, d_max + 1) for n in range(n_max + 1)]
    cells += [("j", None, n) for n in range(n_max + 1)]
    return _ordered_map(_closure_cell, cells)


def run_sweep(kind: str, *, n_max=20, r_values=(1, 2, 3, 4), d_max=6, op="s_r",
              family="binomial", K=50):
    if kind == "closure":
        rows = closure_rows(n_max, r_values, d_max)
        closed = all(r["verdict"] in ("AllRealNegative", "ZeroPoly") for r in rows)
        return {"kind": kind, "exploratory": False, "allClosed": closed, "rows": rows}, [], (
            EXIT_OK if closed else EXIT_FAILED
        )
    if kind == "sr":
        fam = binomial_family(n_max) if family == "binomial" else exp_truncation_family(n_max)
        rows = sweep_sr_on_family(r_values, fam, op)
        closed = all(r["verdict"] in ("AllRealNegative", "ZeroPoly") for r in rows)
        return {"kind": kind, "op": op, "family": family, "exploratory": True,
                "allClosed": closed, "rows": rows}, [], EXIT_OK
    if kind == "rapid-image":
        rows = []
        for r in r_values:
            res = rapid_check(seq_sr_image(seq_two_pow_minus_k2(), r), 2, K)
            rows.append({"r": r, **res.to_json()})
        ok = all(row["holds"] for row in rows)
        return {"kind": kind, "K": K, "alpha": "2", "exploratory": True, "allHold": ok, "rows": rows}, [], (
            EXIT_OK if ok else EXIT_FAILED
        )
    raise InputError(f"unknown sweep {kind!r}")


# --- argument parsing ------------------------------------------------------

def _int_list(text: str) -> list[int]:
    out = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            a, b = part.split("..")
            out.extend(range(int(a), int(b) + 1))
        elif part:
            out.append(int(part))
    return out


def _load_poly(path: str) -> Poly:
    try:
        if path == "-":
            return Poly.from_json(json.load(sys.stdin))
        return read_poly(path)
    except (OSError, json.JSONDecodeError, ValueError, TypeError) as exc:
        raise InputError(f"cannot read polynomial from {path}: {exc}") from None


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="realroot-lab", description=__doc__.splitlines()[0])
    ap.add_argument("--out", help="write the report here instead of stdout")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    t = sub.add_parser("transform", help="apply a coefficient operator to a polynomial file")
    t.add_argument("op", choices=OPERATORS)
    t.add_argument("poly", help="polynomial JSON file ('-' for stdin)")
    t.add_argument("--r", type=int)
    t.add_argument("--d", type=int)
    t.add_argument("--alpha", help="support as 'j:value,...', e.g. '0:1,6:-1'")
    t.add_argument("--gamma", help="sequence spec, e.g. 'shifted-factorial:1'")
    t.add_argument("--other", help="second polynomial file for compose")
    t.add_argument("--with-factorial", action="store_true")
    t.add_argument("--classify", action="store_true")

    c = sub.add_parser("counterexample", help="certify a negative Laguerre expression")
    c.add_argument("name", choices=sorted(COUNTEREXAMPLES))
    c.add_argument("--n", type=int, help="truncation order (disables escalation)")
    c.add_argument("--x0", help="evaluation point, integer or num/den (use --x0=-1/2 for negative fractions)")
    c.add_argument("--r", type=int, default=6)

    i = sub.add_parser("identity", help="exact identity sweep")
    i.add_argument("name", choices=IDENTITIES)
    i.add_argument("--n-max", type=int, default=12)
    i.add_argument("--d-max", type=int, default=6)
    i.add_argument("--k-max", type=int, default=40)

    ck = sub.add_parser("check", help="real-rootedness, multiplier-sequence, rapid-decrease and Laguerre checks")
    ck.add_argument("kind", choices=("real-rooted", "ms", "rapid", "laguerre-poly"))
    ck.add_argument("poly", nargs="?", help="polynomial JSON file (real-rooted, laguerre-poly)")
    ck.add_argument("--gamma", help="sequence spec for ms")
    ck.add_argument("--horizon", type=int, default=20)
    ck.add_argument("--seq", help="sequence spec for rapid")
    ck.add_argument("--alpha", default="2")
    ck.add_argument("--K", type=int, default=50)
    ck.add_argument("--order", type=int, default=1)
    ck.add_argument("--points", default="-10,-5,-2,-1,-1/2,0,1/2,1,2,5,10",
                    help="comma list; write --points=-3,0 when the first entry is negative")

    sw = sub.add_parser("sweep", help="batch classification sweeps (exploratory unless 'closure')")
    sw.add_argument("kind", choices=("closure", "sr", "rapid-image"))
    sw.add_argument("--n-max", type=int, default=20)
    sw.add_argument("--r", default="1..4", help="list like '1..4' or '5' or '1,3,6'")
    sw.add_argument("--d-max", type=int, default=6)
    sw.add_argument("--op", choices=("s_r", "s_tilde_r"), default="s_r")
    sw.add_argument("--family", choices=("binomial", "exp-trunc"), default="binomial")
    sw.add_argument("--K", type=int, default=50)
    return ap


def dispatch(args) -> tuple[dict, int]:
    cmd = args.command
    if cmd == "transform":
        p = _load_poly(args.poly)
        other = _load_poly(args.other) if args.other else None
        try:
            alpha = AlphaSeq.parse(args.alpha) if args.alpha else None
        except ValueError as exc:
            raise InputError(f"bad --alpha: {exc}") from None
        gamma = parse_sequence(args.gamma) if args.gamma else None
        inputs = {"op": args.op, "poly": p.to_json(), "r": args.r, "d": args.d, "alpha": args.alpha,
                  "gamma": args.gamma, "withFactorial": args.with_factorial, "classify": args.classify}
        if other is not None:
            inputs["other"] = other.to_json()
        out = run_transform(args.op, p, r=args.r, d=args.d, alpha=alpha, gamma=gamma, other=other,
                            with_factorial=args.with_factorial, classify=args.classify)
    elif cmd == "counterexample":
        x0 = as_rational(args.x0) if args.x0 is not None else None
        inputs = {"name": args.name, "n": args.n, "x0": None if x0 is None else format_rational(x0), "r": args.r}
        out = run_counterexample(args.name, args.n, x0, args.r)
    elif cmd == "identity":
        inputs = {"name": args.name, "nMax": args.n_max, "dMax": args.d_max, "kMax": args.k_max}
        out = run_identity(args.name, args.n_max, args.d_max, args.k_max)
    elif cmd == "check":
        inputs = {"kind": args.kind}
        if args.kind in ("real-rooted", "laguerre-poly"):
            if not args.poly:
                raise InputError(f"check {args.kind} needs a polynomial file")
            p = _load_poly(args.poly)
            inputs["poly"] = p.to_json()
            if args.kind == "real-rooted":
                out = run_check_real_rooted(p)
            else:
                pts = [as_rational(s) for s in args.points.split(",")]
                inputs.update(order=args.order, points=[format_rational(x) for x in pts])
                out = run_check_laguerre(p, args.order, pts)
        elif args.kind == "ms":
            if not args.gamma:
                raise InputError("check ms needs --gamma")
            inputs.update(gamma=args.gamma, horizon=args.horizon)
            out = run_check_ms(args.gamma, args.horizon)
        else:
            if not args.seq:
                raise InputError("check rapid needs --seq")
            inputs.update(seq=args.seq, alpha=args.alpha, K=args.K)
            out = run_check_rapid(args.seq, args.alpha, args.K)
    else:
        rs = _int_list(args.r)
        inputs = {"kind": args.kind, "nMax": args.n_max, "r": rs, "dMax": args.d_max, "op": args.op,
                  "family": args.family, "K": args.K}
        out = run_sweep(args.kind, n_max=args.n_max, r_values=rs, d_max=args.d_max, op=args.op,
                        family=args.family, K=args.K)
    results, certs, code = out
    return make_report(cmd, inputs, results, certs), code


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        report, code = dispatch(args)
    except (InputError, ValueError, TypeError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    text = json.dumps(report, indent=2)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
