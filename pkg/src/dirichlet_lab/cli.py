"""Command-line front door.

Subcommands: fd, witness, phase, dirichlet, lattice, cf, duality, transport.
Exact inputs go in as 'p/q' literals, machine-readable CSV/JSON comes out;
decimals in any output are display-only, the exact rational (or root-of-
rational) forms ride alongside.  Exit codes: 0 success, 2 domain error,
3 horizon error, 4 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from multiprocessing import Pool

from . import bestapprox, contfrac, dspace, duality, lattice, sampling, witness
from .errors import DomainError, HorizonError, InvariantViolation
from .ratcore import ExponentPair, RatVec, parse_rational

DEFAULT_WITNESS_CAPS = {1: 10**6, 2: 10**4, 3: 10**3}
CSV_HEADER_COMMENT = "# dirichlet-lab v1"


def _emit(text: str, args) -> None:
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _value_fields(value) -> dict:
    return {"exact": value.exact_text(), "decimal": value.to_decimal(12)}


def _record_fields(rec) -> dict:
    return {
        "q": rec.q,
        "p": list(rec.p),
        "dist": str(rec.dist),
        "dist_decimal": f"{float(rec.dist):.12f}",
    }


# --- fd ----------------------------------------------------------------------


def cmd_fd(args) -> None:
    bv = witness.boundary_value(args.d, parse_rational(args.a))
    decimal = f"{float(bv.value):.12f}"
    _emit(f"{bv.value}\n{decimal}\n", args)


# --- witness -----------------------------------------------------------------


def cmd_witness(args) -> None:
    a = parse_rational(args.a)
    cap = args.max_q or DEFAULT_WITNESS_CAPS.get(args.d, 10**3)
    if args.Q > cap:
        raise DomainError(
            f"Q={args.Q} above the default cap {cap} for d={args.d}; "
            "raise it explicitly with --max-q"
        )
    w = witness.build_witness(args.d, a, args.Q)
    payload = {
        "d": w.d,
        "a": str(w.a),
        "Q": w.Q,
        "A": str(w.exponents.A),
        "alphas": [str(al) for al in w.alphas],
        "n": list(w.n),
        "Qseq": list(w.Qseq),
        "x": w.x.as_text(),
    }
    if args.verify:
        ver = witness.verify_witness_bound(w)
        payload["epsilon"] = _value_fields(ver.epsilon)
        payload["minimizer_q"] = ver.minimizer_q
        payload["bands"] = [
            {
                "index": b.index,
                "q_lo": b.q_lo,
                "q_hi": b.q_hi,
                "floor": _value_fields(b.floor),
                "measured": _value_fields(b.measured) if b.measured else None,
                "ok": b.ok,
            }
            for b in ver.bands
        ]
    _emit(_json(payload), args)


# --- phase -------------------------------------------------------------------


def _rational_range(lo: Fraction, hi: Fraction, step: Fraction) -> list[Fraction]:
    if step <= 0:
        raise DomainError("step must be positive")
    vals = []
    v = lo
    while v <= hi:
        vals.append(v)
        v += step
    return vals


def _phase_cell(payload):
    (a, A, Q, d, count, seed, den_cap) = payload
    e = ExponentPair(a, A)
    row = {"a": str(a), "A": str(A), "Q": Q}
    if 0 <= a <= 1 and Q >= 2:
        w = witness.build_witness(d, a, Q)
        val = bestapprox.dirichlet_quotient(w.x, Q, e).value
        row["supD_witness"] = val.to_decimal(12)
        row["supD_witness_exact"] = val.exact_text()
    else:
        row["supD_witness"] = ""
        row["supD_witness_exact"] = ""
    points = sampling.sample_points(seed, count, d, den_cap)
    val, _, _ = bestapprox.sup_over_sample(points, e, Q)
    row["supD_sample"] = val.to_decimal(12)
    row["supD_sample_exact"] = val.exact_text()
    return row


def cmd_phase(args) -> None:
    a_vals = _rational_range(
        parse_rational(args.a_min), parse_rational(args.a_max), parse_rational(args.a_step)
    )
    A_vals = _rational_range(
        parse_rational(args.A_min), parse_rational(args.A_max), parse_rational(args.A_step)
    )
    if args.q_list:
        Qs = sorted({int(s) for s in args.q_list.split(",")})
    else:
        Qs, Q = [], 4
        while Q <= args.q_max:
            Qs.append(Q)
            Q *= 2
    cells = [
        (a, A, Q, args.d, args.samples, args.seed, args.den_cap)
        for a in a_vals
        for A in A_vals
        for Q in Qs
    ]
    if args.jobs > 1:
        with Pool(args.jobs) as pool:
            rows = pool.map(_phase_cell, cells)
    else:
        rows = [_phase_cell(c) for c in cells]
    rows.sort(key=lambda r: (Fraction(r["a"]), Fraction(r["A"]), r["Q"]))
    if args.format == "json":
        _emit(_json(rows), args)
        return
    cols = [
        "a",
        "A",
        "Q",
        "supD_witness",
        "supD_witness_exact",
        "supD_sample",
        "supD_sample_exact",
    ]
    lines = [CSV_HEADER_COMMENT, ",".join(cols)]
    for r in rows:
        lines.append(",".join(str(r[c]) for c in cols))
    _emit("\n".join(lines) + "\n", args)


# --- dirichlet ---------------------------------------------------------------


def cmd_dirichlet(args) -> None:
    x = RatVec.from_text(args.x)
    if args.op == "check":
        rec = bestapprox.check_dirichlet(x, args.Q)
        _emit(_json({"op": "check", "Q": args.Q, "witness": _record_fields(rec)}), args)
        return
    e = ExponentPair(parse_rational(args.a), parse_rational(args.A))
    if args.op == "quotient":
        rep = bestapprox.dirichlet_quotient(x, args.Q, e)
        payload = {
            "op": "quotient",
            "Q": rep.Q,
            "a": str(e.a),
            "A": str(e.A),
            "minimizer": _record_fields(rep.minimizer),
            "value": _value_fields(rep.value),
        }
        _emit(_json(payload), args)
        return
    if args.op == "approx":
        verdict = bestapprox.is_approximable(
            x, e, parse_rational(args.kappa), args.Q0, args.q_max
        )
        payload = {
            "op": "approx",
            "kappa": str(verdict.kappa),
            "Q0": verdict.Q0,
            "Qmax": verdict.Qmax,
            "holds_up_to_horizon": verdict.holds,
            "fails_at": verdict.fails_at,
            "worst_Q": verdict.worst_Q,
            "worst_value": _value_fields(verdict.worst_value),
        }
        _emit(_json(payload), args)
        return
    raise DomainError(f"unknown dirichlet op {args.op!r}")


# --- lattice -----------------------------------------------------------------


def cmd_lattice(args) -> None:
    x = RatVec.from_text(args.x)
    chain = lattice.greedy_construct(x, args.Q)
    report = lattice.verify_claim(chain)
    payload = {
        "x": x.as_text(),
        "Q": args.Q,
        "k": chain.k,
        "steps": [
            {
                "q": s.q,
                "residue": s.residue.as_text(),
                "norm": str(s.norm),
                "perp_dist_sq": str(s.perp_dist_sq),
            }
            for s in chain.steps
        ],
        "product": str(report.product),
        "ratio": str(report.ratio),
        "independent": report.independent,
        "decay_ok": report.decay_ok,
        "degenerate": report.degenerate,
    }
    _emit(_json(payload), args)


# --- cf ----------------------------------------------------------------------


def _cf_from_args(args) -> contfrac.ContinuedFraction:
    if args.quotients:
        return contfrac.parse_cf(args.quotients)
    if args.rule:
        return contfrac.generate_cf(args.rule, args.n, digit_cap=args.digit_cap)
    raise DomainError("cf needs --quotients or --rule")


def cmd_cf(args) -> None:
    cf = _cf_from_args(args)
    table = contfrac.convergents(cf)
    if args.op == "convergents":
        payload = {
            "cf": cf.as_text(),
            "rows": [
                {"n": n, "w": w, "p": p, "q": q}
                for (n, w, p, q) in (table.row(i) for i in range(table.rows))
            ],
        }
    elif args.op == "intermediates":
        fracs = contfrac.intermediate_fractions(table, args.index)
        payload = {
            "cf": cf.as_text(),
            "index": args.index,
            "fractions": [{"r": r, "p": p, "q": q} for (r, p, q) in fracs],
        }
    elif args.op == "lemma":
        wit = contfrac.check_best_approx_lemma(cf, args.p, args.q)
        payload = {
            "cf": cf.as_text(),
            "p": args.p,
            "q": args.q,
            "witness_index": wit.n,
            "threshold": str(wit.threshold),
            "qn": wit.qn,
            "qn1": wit.qn1,
        }
    elif args.op == "growth":
        rep = contfrac.psi_growth_test(
            table, parse_rational(args.c), parse_rational(args.K)
        )
        payload = {
            "cf": cf.as_text(),
            "c": str(rep.c),
            "K": str(rep.K),
            "satisfying": list(rep.satisfying),
            "cutoff": rep.cutoff,
            "verdict": rep.verdict,
        }
    else:
        raise DomainError(f"unknown cf op {args.op!r}")
    _emit(_json(payload), args)


# --- duality -----------------------------------------------------------------


def cmd_duality(args) -> None:
    params = duality.duality_params(parse_rational(args.a), parse_rational(args.A))
    payload = {
        "a": str(params.a),
        "A": str(params.A),
        "b": str(params.b),
        "c": str(params.c),
        "regime": params.regime,
    }
    if args.rule:
        cf = contfrac.generate_cf_capped(args.rule, args.n, args.digit_cap)
        table = contfrac.convergents(cf)
        alpha = parse_rational(args.alpha)
        C = parse_rational(args.C)
        brackets = duality.grid_brackets(table, params.exponents)
        rep_i = duality.check_implication_i(table, params, alpha, C, brackets)
        rep_ii = duality.check_implication_ii(table, params, alpha, C, brackets)
        payload["point"] = cf.as_text() if cf.length <= 16 else f"{args.rule} prefix"
        payload["alpha"] = str(alpha)
        payload["C"] = str(C)
        for tag, rep in (("implication_i", rep_i), ("implication_ii", rep_ii)):
            payload[tag] = {
                "verdict": rep.verdict,
                "lhs_status": rep.lhs_status,
                "vacuous": rep.vacuous,
                "rhs_rich": rep.rhs_rich,
            }
    _emit(_json(payload), args)


# --- transport ---------------------------------------------------------------


def cmd_transport(args) -> None:
    x = RatVec.from_text(args.x)
    phi = dspace.make_affine(parse_rational(args.s), RatVec.from_text(args.shift))
    e = ExponentPair(parse_rational(args.a), parse_rational(args.A))
    report = dspace.transport_check(
        x, phi, e, parse_rational(args.kappa), args.Q0, args.horizon
    )
    payload = {
        "x": x.as_text(),
        "scale": str(phi.scale),
        "shift": phi.shift.as_text(),
        "C1": str(phi.bi_lipschitz_constant),
        "C2": phi.height_distortion,
        "kappa": str(report.kappa),
        "rows": len(report.rows),
        "source_failures_checked": report.checked,
        "verdict": report.verdict,
    }
    _emit(_json(payload), args)


# --- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dirichlet-lab",
        description="Exact experiments on two-parameter Dirichlet approximation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fd", help="evaluate the critical boundary exactly")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--a", required=True)
    p.add_argument("--output")
    p.set_defaults(func=cmd_fd)

    p = sub.add_parser("witness", help="build (and verify) a boundary witness point")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--a", required=True)
    p.add_argument("--Q", type=int, required=True)
    p.add_argument("--verify", action="store_true")
    p.add_argument("--max-q", type=int, default=None, help="override the Q cap")
    p.add_argument("--output")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("phase", help="sup-D grid over (a, A, Q) to CSV/JSON")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--a-min", required=True)
    p.add_argument("--a-max", required=True)
    p.add_argument("--a-step", required=True)
    p.add_argument("--A-min", required=True)
    p.add_argument("--A-max", required=True)
    p.add_argument("--A-step", required=True)
    p.add_argument("--q-list", default=None, help="comma-separated Q values")
    p.add_argument("--q-max", type=int, default=1024, help="geometric grid cap")
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--den-cap", type=int, default=1000)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--output")
    p.set_defaults(func=cmd_phase)

    p = sub.add_parser("dirichlet", help="oracle checks for one rational point")
    p.add_argument("--x", required=True)
    p.add_argument("--Q", type=int, default=10)
    p.add_argument("--op", choices=("check", "quotient", "approx"), default="check")
    p.add_argument("--a", default="1")
    p.add_argument("--A", default="1")
    p.add_argument("--kappa", default="1")
    p.add_argument("--Q0", type=int, default=1)
    p.add_argument("--q-max", type=int, default=100)
    p.add_argument("--output")
    p.set_defaults(func=cmd_dirichlet)

    p = sub.add_parser("lattice", help="greedy residue chain and product bound")
    p.add_argument("--x", required=True)
    p.add_argument("--Q", type=int, required=True)
    p.add_argument("--output")
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("cf", help="continued-fraction tables and checks")
    p.add_argument("--quotients", default=None, help='literal like "[0;3,2]"')
    p.add_argument("--rule", default=None, help="golden | constant:k | power:m")
    p.add_argument("--n", type=int, default=10, help="prefix length for --rule")
    p.add_argument("--digit-cap", type=int, default=None)
    p.add_argument(
        "--op",
        choices=("convergents", "intermediates", "lemma", "growth"),
        default="convergents",
    )
    p.add_argument("--index", type=int, default=0, help="row for intermediates")
    p.add_argument("--p", type=int, default=0)
    p.add_argument("--q", type=int, default=1)
    p.add_argument("--c", default="3")
    p.add_argument("--K", default="1")
    p.add_argument("--output")
    p.set_defaults(func=cmd_cf)

    p = sub.add_parser("duality", help="derived exponents and implication checks")
    p.add_argument("--a", required=True)
    p.add_argument("--A", required=True)
    p.add_argument("--rule", default=None)
    p.add_argument("--n", type=int, default=60)
    p.add_argument("--digit-cap", type=int, default=120)
    p.add_argument("--alpha", default="1")
    p.add_argument("--C", default="4")
    p.add_argument("--output")
    p.set_defaults(func=cmd_duality)

    p = sub.add_parser("transport", help="automorphism transport inequality chase")
    p.add_argument("--x", required=True)
    p.add_argument("--s", required=True)
    p.add_argument("--shift", required=True)
    p.add_argument("--a", default="0")
    p.add_argument("--A", default="1")
    p.add_argument("--kappa", default="1/8")
    p.add_argument("--Q0", type=int, default=1)
    p.add_argument("--horizon", type=int, default=100)
    p.add_argument("--output")
    p.set_defaults(func=cmd_transport)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except DomainError as err:
        print(f"domain error: {err}", file=sys.stderr)
        return 2
    except HorizonError as err:
        print(f"horizon error: {err}", file=sys.stderr)
        return 3
    except InvariantViolation as err:
        print(f"invariant violation: {err}", file=sys.stderr)
        return 4
    return 0


if __name__ == "__main__":
    sys.exit(main())
