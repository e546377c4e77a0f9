"""Command-line front end.

Every library operation is reachable through a subcommand; results can be
emitted as human-readable text, canonical single-line JSON (--json), or
flat CSV rows (--csv).  Authoritative numeric fields are exact: integers
appear plainly and non-integer rationals as "num/den" strings, with decimal
renderings provided separately, so no floating point enters any payload and
parsing then re-serializing a JSON result is byte-identical.

Exit codes: 0 on success or verified, 1 on verification failure, 2 on
usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from decimal import Decimal
from fractions import Fraction

from . import __version__
from .asymptotic import g_value, lambda_poly, tower_check
from .blowup import alt_sum_one, alt_sum_zero, expand_self_intersection, identity_check
from .cremona import (
    LinearSystem,
    cremona_transform,
    hyperplane_product_witness,
    reduce_system,
    verify_gamma_points_case,
)
from .hilbert import (
    alpha2_points_expected,
    alpha_lines_general,
    alpha_points_general,
    conditions_count,
    conditions_count_oracle,
    hilbert_poly_mixed,
    hilbert_poly_uniform,
    identity_sum_binom,
    identity_sum_i_binom,
)
from .polynomials import binom, decimal_str, expand_scaled, fraction_to_json
from .verifier import (
    analytic_branch_check,
    nosymetry_enumerate,
    replay_appendix,
    replay_ids,
)
from .waldschmidt import (
    CertificationError,
    bounds_report,
    e_certify,
    e_empirical,
    gamma_points_closed,
)

DEFAULT_THREADS_ENV = "FATFLATS_THREADS"


def _parse_fraction(text: str) -> Fraction:
    """Accept "1e-6", "0.001", or "1/1000000"."""
    try:
        return Fraction(text)
    except ValueError:
        return Fraction(Decimal(text))


def _parse_mults(text: str) -> tuple[int, ...]:
    return tuple(int(p) for p in text.split(",") if p.strip())


def _emit(report: dict, args, text_lines: list[str]) -> None:
    if args.json:
        print(json.dumps(report, separators=(",", ":")))
    elif args.csv:
        print("key,value")
        for key, value in _flatten(report):
            print(f"{key},{value}")
    else:
        for line in text_lines:
            print(line)


def _flatten(obj, prefix: str = ""):
    if isinstance(obj, dict):
        for key, value in obj.items():
            yield from _flatten(value, f"{prefix}{key}." if prefix else f"{key}.")
    elif isinstance(obj, list):
        yield prefix.rstrip("."), json.dumps(obj, separators=(",", ":")).replace(",", ";")
    else:
        yield prefix.rstrip("."), obj


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--json", action="store_true", help="canonical single-line JSON output")
    parser.add_argument("--csv", action="store_true", help="flat CSV output")
    parser.add_argument(
        "--threads",
        type=int,
        default=int(os.environ.get(DEFAULT_THREADS_ENV, "1")),
        help="worker count for sweep operations (results are identical for any value)",
    )
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized spot checks")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fatflats",
        description="Exact invariants of unions of disjoint fat linear subspaces of projective space.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("conditions", help="independent conditions imposed by one fat flat")
    p.add_argument("n", type=int)
    p.add_argument("r", type=int)
    p.add_argument("m", type=int)
    p.add_argument("t", type=int)
    p.add_argument("--oracle", action="store_true", help="cross-check by monomial enumeration")
    _add_common(p)

    p = sub.add_parser("hilbert", help="Hilbert polynomial of a union of fat flats")
    p.add_argument("n", type=int)
    p.add_argument("r", type=int)
    p.add_argument("s", type=int, nargs="?")
    p.add_argument("m", type=int, nargs="?")
    p.add_argument("--mults", type=str, help="comma-separated multiplicities, one per flat")
    p.add_argument("--at", type=int, help="evaluate at this degree")
    p.add_argument("--poly", action="store_true", help="print the coefficient array")
    _add_common(p)

    p = sub.add_parser("lambda", help="scaling-limit polynomial and its largest root")
    p.add_argument("n", type=int)
    p.add_argument("r", type=int)
    p.add_argument("s", type=int)
    p.add_argument("--poly", action="store_true")
    p.add_argument("--g", action="store_true", help="isolate the largest root")
    p.add_argument("--prec", type=str, default="1e-12", help="isolation interval width")
    _add_common(p)

    p = sub.add_parser("e", help="expected Waldschmidt constant by certified search")
    p.add_argument("n", type=int)
    p.add_argument("r", type=int)
    p.add_argument("s", type=int)
    p.add_argument("--mmax", type=int, default=60)
    p.add_argument("--certify", action="store_true")
    _add_common(p)

    p = sub.add_parser("bounds", help="the chain gamma <= e <= g for one configuration")
    p.add_argument("n", type=int)
    p.add_argument("r", type=int)
    p.add_argument("s", type=int)
    p.add_argument("--mmax", type=int, default=60)
    _add_common(p)

    p = sub.add_parser("gamma-points", help="closed-form Waldschmidt constant of general points")
    p.add_argument("n", type=int)
    p.add_argument("s", type=int)
    _add_common(p)

    p = sub.add_parser("alpha", help="initial-degree formulas for general points and lines")
    p.add_argument("kind", choices=["points", "points2", "lines"])
    p.add_argument("n", type=int)
    p.add_argument("s", type=int)
    _add_common(p)

    p = sub.add_parser("cremona", help="linear systems and Cremona reduction")
    p.add_argument("--dim", type=int, required=True, help="ambient dimension n")
    p.add_argument("--system", type=str, required=True, help='system as "d;m1,m2,..."')
    p.add_argument("--transform", type=str, help="comma-separated indices of n+1 points")
    p.add_argument("--reduce", action="store_true")
    p.add_argument("--witness", action="store_true")
    p.add_argument("--max-steps", type=int, default=64)
    _add_common(p)

    p = sub.add_parser("intersections", help="self-intersection expansion on the blow-up")
    p.add_argument("n", type=int)
    p.add_argument("r", type=int)
    p.add_argument("s", type=int)
    p.add_argument("--check", action="store_true", help="verify the identity with the scaling limit")
    _add_common(p)

    p = sub.add_parser("verify", help="finite verification drivers")
    vsub = p.add_subparsers(dest="verify_command", required=True)

    v = vsub.add_parser("nosymetry", help="enumerate the finite region for s lines in P^3")
    v.add_argument("s", type=int)
    _add_common(v)

    v = vsub.add_parser("appendix", help="replay a registered worked example")
    v.add_argument("id", type=str)
    _add_common(v)

    v = vsub.add_parser("gamma-case", help="alpha bookkeeping for s general points")
    v.add_argument("n", type=int)
    v.add_argument("s", type=int)
    v.add_argument("--hmax", type=int, default=3)
    _add_common(v)

    v = vsub.add_parser("identities", help="identity sweeps and seeded spot checks")
    _add_common(v)

    return parser


def _cmd_conditions(args) -> int:
    count = conditions_count(args.n, args.r, args.m, args.t)
    report = {"n": args.n, "r": args.r, "m": args.m, "t": args.t, "count": count}
    lines = [f"conditions({args.n},{args.r},{args.m},{args.t}) = {count}"]
    if args.oracle:
        oracle = conditions_count_oracle(args.n, args.r, args.m, args.t)
        report["oracle"] = oracle
        report["match"] = oracle == count
        lines.append(f"oracle = {oracle} ({'match' if oracle == count else 'MISMATCH'})")
    _emit(report, args, lines)
    return 0 if not args.oracle or report["match"] else 1


def _cmd_hilbert(args) -> int:
    if args.mults is not None:
        if args.s is not None or args.m is not None:
            raise SystemExit2("give either s m or --mults, not both")
        mults = _parse_mults(args.mults)
        poly = hilbert_poly_mixed(args.n, args.r, mults)
        spec = {"n": args.n, "r": args.r, "mults": list(mults)}
    else:
        if args.s is None or args.m is None:
            raise SystemExit2("give s and m, or --mults")
        poly = hilbert_poly_uniform(args.n, args.r, args.s, args.m)
        spec = {"n": args.n, "r": args.r, "s": args.s, "m": args.m}
    if args.at is not None:
        value = poly(args.at)
        report = {**spec, "t": args.at, "value": fraction_to_json(value)}
        _emit(report, args, [f"value at t={args.at}: {fraction_to_json(value)}"])
    else:
        report = {**spec, "poly": poly.to_json()}
        _emit(report, args, [f"coefficients (low degree first): {poly.to_json()}"])
    return 0


def _cmd_lambda(args) -> int:
    lam = lambda_poly(args.n, args.r, args.s)
    if args.g:
        root = g_value(args.n, args.r, args.s, _parse_fraction(args.prec))
        report = root.to_json()
        lines = [f"g({args.n},{args.r},{args.s}) = {root.decimal}"]
        if root.is_exact:
            lines.append("exact rational root")
        _emit(report, args, lines)
    else:
        report = {"n": args.n, "r": args.r, "s": args.s, "poly": lam.to_json()}
        _emit(report, args, [f"coefficients (low degree first): {lam.to_json()}"])
    return 0


def _cmd_e(args) -> int:
    witness = e_empirical(args.n, args.r, args.s, args.mmax)
    report = {
        "e": fraction_to_json(witness.ratio),
        "witness": {"t": witness.t, "m": witness.m, "value": witness.value},
    }
    lines = [f"e({args.n},{args.r},{args.s}) = {fraction_to_json(witness.ratio)} at (t={witness.t}, m={witness.m})"]
    code = 0
    if args.certify:
        try:
            cert = e_certify(args.n, args.r, args.s, witness.ratio)
            report["certified"] = True
            report["certificate"] = cert.to_json()
            lines.append(f"certified: m_threshold={cert.m_threshold}, pairs checked={cert.pairs_checked}")
        except CertificationError as err:
            report["certified"] = False
            report["failure"] = {"step": err.step, "detail": err.detail}
            lines.append(f"certification failed at step {err.step}: {err.detail}")
            code = 1
    _emit(report, args, lines)
    return code


def _cmd_bounds(args) -> int:
    report = bounds_report(args.n, args.r, args.s, args.mmax)
    payload = report.to_json()
    gamma_text = "unknown"
    if report.gamma is not None:
        tag = "" if report.gamma.exact else " (upper bound only)"
        gamma_text = f"{fraction_to_json(report.gamma.value)}{tag}"
    lines = [
        f"gamma = {gamma_text}",
        f"e = {fraction_to_json(report.e)} ({'certified' if report.e_certified else 'empirical'})",
        f"g = {report.g.decimal}",
    ]
    _emit(payload, args, lines)
    return 0


def _cmd_gamma_points(args) -> int:
    value = gamma_points_closed(args.n, args.s)
    report = {
        "n": args.n,
        "s": args.s,
        "gamma": fraction_to_json(value),
        "decimal": decimal_str(value),
    }
    _emit(report, args, [f"gamma({args.n}, {args.s} points) = {fraction_to_json(value)}"])
    return 0


def _cmd_alpha(args) -> int:
    if args.kind == "points":
        value = alpha_points_general(args.n, args.s)
        note = None
    elif args.kind == "points2":
        value = alpha2_points_expected(args.n, args.s)
        note = "expected value; exceptions exist"
    else:
        value = alpha_lines_general(args.n, args.s)
        note = None
    report = {"kind": args.kind, "n": args.n, "s": args.s, "alpha": value}
    lines = [f"alpha = {value}"]
    if note:
        report["note"] = note
        lines.append(note)
    _emit(report, args, lines)
    return 0


def _cmd_cremona(args) -> int:
    sys_ = LinearSystem.parse(args.dim, args.system)
    if args.transform:
        idx = _parse_mults(args.transform)
        out, c = cremona_transform(sys_, idx)
        report = {"c": c, "system": out.format()}
        _emit(report, args, [f"c = {c}", f"system: {out.format()}"])
        return 0
    if args.witness:
        witness = hyperplane_product_witness(sys_)
        report = {"witness": witness.to_json() if witness else None}
        lines = ["no hyperplane-product witness"] if witness is None else [
            "witness factors (points, weight):"
        ] + [f"  {list(subset)} x{w}" for subset, w in witness.factors]
        _emit(report, args, lines)
        return 0
    if args.reduce:
        trace = reduce_system(sys_, max_steps=args.max_steps)
        report = trace.to_json()
        lines = [f"start: {trace.start.format()}"] + [
            f"  step {i + 1}: idx={list(st.chosen)} c={st.c} -> {st.result.format()}"
            for i, st in enumerate(trace.steps)
        ] + [f"verdict: {trace.verdict} ({trace.certificate})"]
        _emit(report, args, lines)
        return 0 if trace.verdict != "undecided" else 1
    raise SystemExit2("choose one of --transform, --reduce, --witness")


def _cmd_intersections(args) -> int:
    poly = expand_self_intersection(args.n, args.r, args.s)
    report = {"n": args.n, "r": args.r, "s": args.s, "expansion": poly.to_json()}
    lines = [f"(tau*H - E)^{args.n} coefficients: {poly.to_json()}"]
    code = 0
    if args.check:
        ok = identity_check(args.n, args.r, args.s)
        report["identity"] = ok
        lines.append(f"identity with n! * scaling limit: {'holds' if ok else 'FAILS'}")
        code = 0 if ok else 1
    _emit(report, args, lines)
    return code


def _cmd_verify_nosymetry(args) -> int:
    report = nosymetry_enumerate(args.s, threads=max(1, args.threads))
    payload = report.to_json()
    lines = [
        f"s={args.s} g={report.g.decimal} d_cap={report.d_cap} sum_cap={report.sum_cap}",
        f"cases={report.cases_checked} violations={len(report.violations)}",
    ]
    _emit(payload, args, lines)
    return 0 if report.ok else 1


def _cmd_verify_appendix(args) -> int:
    try:
        report = replay_appendix(args.id)
    except KeyError as err:
        print(str(err.args[0]), file=sys.stderr)
        return 2
    payload = report.to_json()
    lines = [f"{args.id}: {'pass' if report.passed else 'FAIL'}"] + [
        f"  {'ok  ' if a.passed else 'FAIL'} {a.name}: expected {a.expected}, got {a.got}"
        for a in report.assertions
    ]
    _emit(payload, args, lines)
    return 0 if report.passed else 1


def _cmd_verify_gamma_case(args) -> int:
    report = verify_gamma_points_case(args.n, args.s, range(1, args.hmax + 1))
    payload = {
        "n": args.n,
        "s": args.s,
        "gamma": fraction_to_json(report.gamma),
        "rows": [
            {
                "h": row.h,
                "upper": row.upper_system.format(),
                "upper_nonempty": row.upper_nonempty,
                "lower": row.lower_system.format() if row.lower_system else None,
                "lower_empty": row.lower_empty,
                "alpha": row.alpha,
                "multiplicity": row.multiplicity,
                "ratio": fraction_to_json(row.ratio),
                "consistent": row.consistent,
            }
            for row in report.rows
        ],
        "endpoint": report.endpoint_note,
        "ok": report.ok,
    }
    lines = [
        f"h={row.h}: alpha={row.alpha} ratio={fraction_to_json(row.ratio)} "
        f"nonempty={row.upper_nonempty} lower_empty={row.lower_empty} consistent={row.consistent}"
        for row in report.rows
    ] + [f"overall: {'pass' if report.ok else 'FAIL'}"]
    if report.endpoint_note:
        lines.append(report.endpoint_note)
    _emit(payload, args, lines)
    return 0 if report.ok else 1


def _cmd_verify_identities(args) -> int:
    import random

    rng = random.Random(args.seed)
    failures: list[str] = []

    for t in range(13):
        for j in range(1, 13):
            if alt_sum_zero(t, j) != 0:
                failures.append(f"alt_sum_zero({t},{j})")
        for j in range(13):
            if t >= 1 and alt_sum_one(t, j) != 1:
                failures.append(f"alt_sum_one({t},{j})")
    for n in range(2, 13):
        for r in range(n):
            total = sum(
                (-1) ** (r - j) * binom(n, j) * binom(n - j - 1, r - j) for j in range(r + 1)
            )
            if total != 1:
                failures.append(f"unit-sum(n={n},r={r})")
    for n in range(1, 7):
        for r in range((n - 1) // 2 + 1):
            for s in (1, 2, 5):
                from .asymptotic import lambda_poly_via_leading

                if lambda_poly(n, r, s) != lambda_poly_via_leading(n, r, s):
                    failures.append(f"leading(n={n},r={r},s={s})")
                if r >= 1 and not tower_check(n, r, s):
                    failures.append(f"tower(n={n},r={r},s={s})")
                if not identity_check(n, r, s):
                    failures.append(f"intersection(n={n},r={r},s={s})")
    for a in range(7):
        for m in range(1, 9):
            if identity_sum_binom(a, m)[0] != identity_sum_binom(a, m)[1]:
                failures.append(f"sum-binom(a={a},m={m})")
            if identity_sum_i_binom(a, m)[0] != identity_sum_i_binom(a, m)[1]:
                failures.append(f"sum-i-binom(a={a},m={m})")
    # seeded spot checks
    from .hilbert import hilbert_poly_symbolic

    for _ in range(20):
        n = rng.randint(1, 5)
        r = rng.randint(0, (n - 1) // 2)
        s = rng.randint(1, 20)
        expansion = expand_scaled(hilbert_poly_symbolic(n, r, s))
        m = rng.randint(1, 9)
        t = rng.randint(m, 4 * m)
        from .hilbert import conditions_poly

        direct = binom(t + n, n) - s * conditions_poly(n, r, m)(t)
        if expansion(t, m) != direct:
            failures.append(f"expansion(n={n},r={r},s={s},m={m},t={t})")
    for _ in range(20):
        n = rng.randint(2, 5)
        size = rng.randint(n + 1, n + 4)
        sys_ = LinearSystem(n, rng.randint(0, 12), tuple(rng.randint(-3, 9) for _ in range(size)))
        idx = tuple(rng.sample(range(size), n + 1))
        once, c1 = cremona_transform(sys_, idx)
        twice, c2 = cremona_transform(once, idx)
        if twice != sys_ or c2 != -c1:
            failures.append(f"involution({sys_.format()})")
    for s in range(13, 41):
        if not analytic_branch_check(s):
            failures.append(f"analytic-branch(s={s})")

    report = {"seed": args.seed, "checks": "identities", "failures": failures, "ok": not failures}
    lines = [f"failures: {len(failures)}"] + [f"  {f}" for f in failures]
    _emit(report, args, lines)
    return 0 if not failures else 1


class SystemExit2(Exception):
    """Usage error surfaced with exit code 2 and a synopsis on stderr."""


_COMMANDS = {
    "conditions": _cmd_conditions,
    "hilbert": _cmd_hilbert,
    "lambda": _cmd_lambda,
    "e": _cmd_e,
    "bounds": _cmd_bounds,
    "gamma-points": _cmd_gamma_points,
    "alpha": _cmd_alpha,
    "cremona": _cmd_cremona,
    "intersections": _cmd_intersections,
}

_VERIFY_COMMANDS = {
    "nosymetry": _cmd_verify_nosymetry,
    "appendix": _cmd_verify_appendix,
    "gamma-case": _cmd_verify_gamma_case,
    "identities": _cmd_verify_identities,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            handler = _VERIFY_COMMANDS[args.verify_command]
        else:
            handler = _COMMANDS[args.command]
        return handler(args)
    except SystemExit2 as err:
        print(f"usage error: {err}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 2
    except (ValueError, KeyError, IndexError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except ArithmeticError as err:
        print(f"verification failure: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
