"""Command-line front end: deterministic JSON out, verification exit codes.

Exit codes: 0 all checks pass (or nothing to check), 1 a verification
failed, 2 configuration errors.  Every p-adic number is emitted as
{"valuation": v, "digits": [d_0...], "precision": r} meaning
p^v * sum d_i p^i with r known digits; zeros carry empty digits with
"precision" 0, valuation = the proven lower bound (null when the zero is
exact).
"""

from __future__ import annotations

import argparse
import json
import sys

from .acceptance import run_all
from .cmform import ap_point_count, cm_spec_from_curve, unit_root
from .kl import branch_series
from .linvariant import (full_report, verify_ferrero_greenberg,
                         verify_trivial_zero_formula)
from .padic import PadicNumber, make_context
from .quadfield import (pi_bar, quad_field_data, quad_field_from_discriminant,
                        split_behavior)
from .sympower import critical_integers, decompose, trivial_zero_locations

__all__ = ["main"]


def encode_padic(x: PadicNumber) -> dict:
    if x.is_zero():
        return {"valuation": None if x.is_exact_zero() else x.abs_prec,
                "digits": [], "precision": 0}
    return {"valuation": x.valuation(), "digits": x.digits(),
            "precision": x.rel_prec}


def _emit(payload: dict, out_path: str | None) -> None:
    text = json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"
    if out_path:
        with open(out_path, "w", encoding="ascii") as fh:
            fh.write(text)
    sys.stdout.write(text)


def _curve_arg(s: str) -> tuple[int, ...]:
    parts = tuple(int(t) for t in s.split(","))
    if len(parts) not in (2, 3):
        raise argparse.ArgumentTypeError("curve must be a4,a6 or a2,a4,a6")
    return parts


def _field_from_args(args):
    if getattr(args, "D", None) is not None:
        return quad_field_from_discriminant(args.D)
    if getattr(args, "d", None) is not None:
        return quad_field_data(args.d)
    raise ValueError("one of --D or --d is required")


def cmd_quadfield(args) -> int:
    F = _field_from_args(args)
    payload = {"d": F.d, "D": F.D, "h": F.h, "w": F.w}
    if args.p is not None:
        behavior = split_behavior(F, args.p)
        payload["p"] = args.p
        payload["splitting"] = behavior
        if behavior == "split":
            ctx = make_context(args.p, args.prec)
            sp = pi_bar(F, args.p, ctx, conjugate_lift=args.conjugate_lift)
            payload["pibar_coords"] = list(sp.pibar_coords)
            payload["pi_coords"] = list(sp.pi_coords)
            payload["log_pibar"] = encode_padic(sp.log_pibar)
    _emit(payload, args.out)
    return 0


def cmd_cmform(args) -> int:
    ctx = make_context(args.p, args.prec)
    spec = cm_spec_from_curve(args.curve, args.d, args.level, ctx)
    roots = unit_root(spec)
    payload = {
        "p": args.p,
        "a_p": ap_point_count(args.curve, args.p),
        "alpha": encode_padic(roots.alpha),
        "beta": encode_padic(roots.beta),
    }
    _emit(payload, args.out)
    return 0


def cmd_decompose(args) -> int:
    ctx = make_context(args.p, args.prec)
    spec = cm_spec_from_curve(args.curve, args.d, args.level, ctx)
    dec = decompose(spec, args.n)
    factors = []
    for f in dec.factors:
        if f.kind == "dirichlet":
            factors.append({"kind": "dirichlet",
                            "modulus": f.character.modulus,
                            "conductor": f.character.conductor(),
                            "odd": f.character.is_odd()})
        else:
            factors.append({
                "kind": "modular",
                "weight": f.weight,
                "shift": f.shift,
                "twist_conductor": f.twist.conductor(),
                "alpha": encode_padic(f.alpha),
                "beta": encode_padic(f.beta),
                "archimedean_L": f"L(s + {f.shift}, f_{f.eta_power})  [symbolic]",
            })
    _emit({"n": dec.n, "m": dec.m, "factors": factors}, args.out)
    return 0


def cmd_critical(args) -> int:
    _emit({"C": critical_integers(args.n, args.k)}, args.out)
    return 0


def cmd_trivial_zeros(args) -> int:
    ctx = make_context(args.p, args.prec)
    spec = cm_spec_from_curve(args.curve, args.d, args.level, ctx)
    rep = trivial_zero_locations(spec, args.n,
                                 with_certificates=args.certificates,
                                 n_cert=min(args.prec, 8))
    payload = {"n": args.n, "zeros": [list(loc) for loc in rep.locations]}
    if args.certificates:
        payload["certificates"] = [
            {"branch": c.branch, "s": c.s, "order": c.order,
             "c0": encode_padic(c.c0), "c1": encode_padic(c.c1),
             "N_cert": c.n_cert}
            for c in rep.certificates]
    _emit(payload, args.out)
    return 0


def cmd_klp(args) -> int:
    ctx = make_context(args.p, max(args.prec + 4, 12))
    theta = _field_from_args(args).character()
    bs = branch_series(args.branch, theta, args.at, args.order, ctx,
                       n_cert=args.prec, node_budget=args.nodes)
    payload = {
        "branch": bs.branch,
        "s0": bs.s0,
        "coefficients": [encode_padic(c) for c in bs.coefficients],
        "N_cert": bs.n_cert,
        "J": bs.nodes_used,
    }
    _emit(payload, args.out)
    return 0


def cmd_verify_fg(args) -> int:
    ctx = make_context(args.p, max(args.prec + 4, 12))
    F = _field_from_args(args)
    chk = verify_ferrero_greenberg(F, args.p, ctx, target=args.prec,
                                   conjugate_lift=args.conjugate_lift)
    payload = {
        "D": F.D, "p": args.p, "target": chk.target,
        "lhs_branch_derivative": encode_padic(chk.lhs),
        "rhs_scaled_log_pibar": encode_padic(chk.rhs),
        "residual_valuation": chk.residual_valuation,
        "result": "PASS" if chk.passed else "FAIL",
    }
    _emit(payload, args.out)
    return 0 if chk.passed else 1


def cmd_linvariant(args) -> int:
    ctx = make_context(args.p, max(args.prec + 4, 16))
    if args.D is not None:
        field = quad_field_from_discriminant(args.D)
        if field.d != args.d and args.d != 1:
            raise ValueError(f"--D {args.D} and --d {args.d} name different fields")
        args = argparse.Namespace(**{**vars(args), "d": field.d})
    spec = cm_spec_from_curve(args.curve, args.d, args.level, ctx)
    if args.k != spec.weight:
        raise ValueError("curve-derived specs have weight 2; use --k 2")
    rep = full_report(spec, target=args.prec, conjugate_lift=args.conjugate_lift)
    checks = {
        "fg_identity": rep.fg_check.passed,
        "unit_root_agreement": rep.agreement_valuation >= args.prec,
    }
    payload = {
        "D": spec.field.D, "p": args.p, "n": args.n,
        "l_at_1": encode_padic(rep.l_at_1),
        "l_at_0": encode_padic(rep.l_at_0),
        "l_via_alpha": encode_padic(rep.l_via_alpha),
        "agreement_valuation": rep.agreement_valuation,
        "fg_residual_valuation": rep.fg_check.residual_valuation,
    }
    if args.n % 2 == 0 and (args.n // 2) % 2 == 1:
        formulas = {}
        for i in (0, 1):
            r = verify_trivial_zero_formula(spec, args.n, i, target=args.prec,
                                            conjugate_lift=args.conjugate_lift)
            formulas[str(i)] = {
                "residual_valuation": r.residual_valuation,
                "e_plus": encode_padic(r.e_plus_value),
                "archimedean_value": str(r.archimedean_value),
                "modular_symbols": list(r.modular_symbols),
                "functional_equation_note": r.functional_equation_note,
                "result": "PASS" if r.passed else "FAIL",
            }
            checks[f"derivative_formula_branch_{i}"] = r.passed
        payload["trivial_zero_formulas"] = formulas
    payload["checks"] = {k: ("PASS" if v else "FAIL") for k, v in sorted(checks.items())}
    ok = all(checks.values())
    payload["result"] = "PASS" if ok else "FAIL"
    _emit(payload, args.out)
    return 0 if ok else 1


def cmd_acceptance(args) -> int:
    results = run_all()
    ok = True
    rows = []
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        ok = ok and r.passed
        sys.stderr.write(f"[{status}] {r.name}  ({r.seconds}s)\n")
        rows.append({"name": r.name, "result": status, "seconds": r.seconds,
                     "detail": r.detail})
    _emit({"criteria": rows, "result": "PASS" if ok else "FAIL"}, args.out)
    return 0 if ok else 1


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="cmlinv",
        description="exact p-adic verification of CM symmetric-power "
                    "trivial-zero and L-invariant identities")
    sub = top.add_subparsers(dest="command", required=True)

    def common(sp, p_required=True, curve=False, field=False, level=False,
               lift=False):
        sp.add_argument("--p", type=int, required=p_required,
                        help="odd prime of the p-adic context")
        sp.add_argument("--prec", type=int, default=8,
                        help="certified digits / residual target (default 8)")
        sp.add_argument("--out", type=str, default=None,
                        help="also write the JSON payload to this file")
        if lift:
            sp.add_argument("--conjugate-lift", action="store_true",
                            dest="conjugate_lift",
                            help="use the opposite Hensel lift of sqrt(D)")
        if curve:
            sp.add_argument("--curve", type=_curve_arg, required=True,
                            help="a4,a6 or a2,a4,a6 of y^2 = x^3 + a2 x^2 + a4 x + a6")
            sp.add_argument("--d", type=int, default=1,
                            help="squarefree d with CM field Q(sqrt(-d)) (default 1)")
        if field:
            sp.add_argument("--D", type=int, default=None,
                            help="fundamental discriminant (< 0)")
            if not curve:
                sp.add_argument("--d", type=int, default=None,
                                help="squarefree d for Q(sqrt(-d))")
        if level:
            sp.add_argument("--level", type=int, default=32,
                            help="prime-to-p level tag (default 32, the desk curve)")

    sp = sub.add_parser("quadfield", help="field invariants and the split-prime package")
    common(sp, p_required=False, field=True, lift=True)
    sp.set_defaults(fn=cmd_quadfield)

    sp = sub.add_parser("cmform", help="a_p by point counting plus Hecke roots")
    common(sp, curve=True, level=True)
    sp.set_defaults(fn=cmd_cmform)

    sp = sub.add_parser("decompose", help="symmetric-power factor list")
    common(sp, curve=True, level=True)
    sp.add_argument("--n", type=int, required=True, help="symmetric power")
    sp.set_defaults(fn=cmd_decompose)

    sp = sub.add_parser("critical", help="critical integers C_{n,k}")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--out", type=str, default=None)
    sp.set_defaults(fn=cmd_critical)

    sp = sub.add_parser("trivial-zeros", help="trivial-zero locations and certificates")
    common(sp, curve=True, level=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--certificates", action="store_true",
                    help="attach order-1 certificates (c0, c1)")
    sp.set_defaults(fn=cmd_trivial_zeros)

    sp = sub.add_parser("klp", help="certified branch series of the p-adic L-function")
    common(sp, field=True)
    sp.add_argument("--branch", type=int, required=True, choices=(0, 1))
    sp.add_argument("--at", type=int, required=True, choices=(0, 1),
                    help="expansion point s0")
    sp.add_argument("--order", type=int, default=4)
    sp.add_argument("--nodes", type=int, default=40, help="node budget J")
    sp.set_defaults(fn=cmd_klp)

    sp = sub.add_parser("verify-fg", help="derivative identity at the trivial zero")
    common(sp, field=True, lift=True)
    sp.set_defaults(fn=cmd_verify_fg)

    sp = sub.add_parser("linvariant", help="full L-invariant report with PASS/FAIL")
    common(sp, curve=True, level=True, lift=True)
    sp.add_argument("--D", type=int, default=None,
                    help="fundamental discriminant of the CM field (alternative to --d)")
    sp.add_argument("--n", type=int, default=2, help="symmetric power (default 2)")
    sp.add_argument("--k", type=int, default=2, help="weight (curve specs: 2)")
    sp.set_defaults(fn=cmd_linvariant)

    sp = sub.add_parser("acceptance", help="run the whole acceptance battery")
    sp.add_argument("--out", type=str, default=None)
    sp.set_defaults(fn=cmd_acceptance)

    return top


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, ZeroDivisionError, ArithmeticError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
