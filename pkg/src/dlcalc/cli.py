"""Command-line interface.

Exit codes: 0 verified/success, 1 refuted, 2 usage error, 3 inconclusive
(a truncated or non-basis expansion).  Global flags are accepted on either
side of the subcommand: ``dl -p 3 degree "bP_1/2 bP_1 x"``.
"""

from __future__ import annotations

import argparse
import json
import sys

from .algebra import Generator, Polynomial, poly_to_json
from .cartan import apply_seq
from .cofiber import (
    build_cofiber,
    check_nilpotent_in_cofiber,
    check_p_power_rule,
    check_qnilpotent_identity,
    e1_filtration_stage,
    mixed_term_coefficient,
)
from .ops import classify, is_allowable, is_basis_shape
from .parser import ParseError, parse_expr, parse_seq, render
from .series import enumerate_generators, poincare_series, verify_decomposition

EXIT_OK = 0
EXIT_REFUTED = 1
EXIT_USAGE = 2
EXIT_INCONCLUSIVE = 3

_STATUS_EXIT = {
    "verified": EXIT_OK,
    "success": EXIT_OK,
    "nilpotent": EXIT_OK,
    "not-nilpotent": EXIT_OK,
    "refuted": EXIT_REFUTED,
    "inconclusive-truncated": EXIT_INCONCLUSIVE,
}


def _level(text: str) -> int | None:
    if text in ("inf", "infinity", "oo"):
        return None
    return int(text)


def _add_global_opts(ap: argparse.ArgumentParser, suppress: bool) -> None:
    # The same options are attached to the top parser and to every
    # subparser (with suppressed defaults, so a post-subcommand flag wins
    # and an absent one does not clobber a pre-subcommand value).
    d = argparse.SUPPRESS if suppress else None
    ap.add_argument("-p", "--prime", type=int, default=d, metavar="P",
                    help="the prime of the coefficient field")
    ap.add_argument("--weight-bound", type=int, default=d, metavar="W")
    ap.add_argument("--degree-bound", type=int, default=d, metavar="D")
    if suppress:
        ap.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="emit JSON reports")
    else:
        ap.add_argument("--json", action="store_true", help="emit JSON reports")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="dl",
        description="Dyer-Lashof operation calculus over F_p",
    )
    _add_global_opts(ap, suppress=False)
    sub = ap.add_subparsers(dest="command", required=True)

    def command(name, help):
        s = sub.add_parser(name, help=help)
        _add_global_opts(s, suppress=True)
        return s

    s = command("degree", "degree of a homogeneous expression")
    s.add_argument("expr")

    s = command("allowable", "allowability of a composite on its class")
    s.add_argument("expr")
    s.add_argument("--k", type=_level, default=None,
                   help="operation level bound (default: unbounded)")

    s = command("classify", "Bockstein classification of a composite")
    s.add_argument("expr")

    s = command("expand", "apply an operation sequence to an expression")
    s.add_argument("seq")
    s.add_argument("expr")

    s = command("basis", "free-algebra basis generators")
    s.add_argument("--k", type=_level, required=True)
    s.add_argument("--t", type=int, required=True)

    s = command("series", "bigraded Poincare series of a free algebra")
    s.add_argument("--k", type=_level, required=True)
    s.add_argument("--t", type=int, required=True)

    s = command("verify-decomp", "check a tensor decomposition by series")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--n", type=_level, default=None)
    s.add_argument("--t", type=int, required=True)
    s.add_argument("--index-range", choices=("proof", "statement"), default="proof")

    command("cofiber", "presentation of the cofiber by x^p")

    s = command("nilpotent", "nilpotence of a class in the cofiber model")
    s.add_argument("--class", dest="cls", required=True, metavar="EXPR")
    s.add_argument("--max-power", type=int, default=100)

    s = command("filtration", "killed classes at a filtration stage (p=2)")
    s.add_argument("-s", "--stage", type=int, required=True)
    s.add_argument("--t", type=int, default=0)

    s = command("check-lemma", "machine checks of the symbol identities")
    lemma = s.add_subparsers(dest="lemma", required=True)

    def lemma_command(name, help):
        q = lemma.add_parser(name, help=help)
        _add_global_opts(q, suppress=True)
        return q

    q = lemma_command("qnilpotent", "scaled composites on 2^n-th powers (p=2)")
    q.add_argument("--seq", required=True)
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--t", type=int, default=0)

    q = lemma_command("p-power", "one symbol on a p-th power (odd p)")
    q.add_argument("--i", required=True, help="index, e.g. 3 or 3/2")
    q.add_argument("--eps", type=int, choices=(0, 1), default=0)

    q = lemma_command("mixed-term", "split-Bockstein term search (odd p)")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--seq", default=None)

    return ap


def _single_generator(expr: Polynomial) -> Generator:
    if len(expr.terms) != 1:
        raise ValueError("expected a single generator expression")
    (mono, coeff), = expr.terms.items()
    if coeff != 1 or len(mono.factors) != 1 or mono.factors[0][1] != 1:
        raise ValueError("expected a single generator expression")
    return mono.factors[0][0]


def _emit(args, payload: dict, plain: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(plain)


def _require_weight_bound(args) -> int:
    if args.weight_bound is None:
        raise ValueError("this command needs --weight-bound")
    return args.weight_bound


def _cmd_degree(args) -> int:
    expr = parse_expr(args.expr, args.prime)
    d = expr.homogeneous_degree()
    if d is None:
        raise ValueError("expression is not homogeneous")
    _emit(args, {"degree": d}, str(d))
    return EXIT_OK


def _cmd_allowable(args) -> int:
    g = _single_generator(parse_expr(args.expr, args.prime))
    if args.prime == 2:
        ok = is_basis_shape(g.seq, args.k)
    else:
        ok = is_allowable(args.prime, g.seq, g.base_degree, args.k)
    _emit(args, {"allowable": ok}, "allowable" if ok else "not allowable")
    return EXIT_OK if ok else EXIT_REFUTED


def _cmd_classify(args) -> int:
    g = _single_generator(parse_expr(args.expr, args.prime))
    kind = classify(g.seq)
    _emit(args, {"classification": kind}, kind)
    return EXIT_OK


def _cmd_expand(args) -> int:
    seq = parse_seq(args.prime, args.seq)
    expr = parse_expr(args.expr, args.prime)
    exp = apply_seq(args.prime, seq, expr, args.weight_bound)
    status = "inconclusive-truncated" if exp.truncated else "verified"
    payload = {
        "status": status,
        "result": render(exp.value),
        "polynomial": poly_to_json(exp.value),
        "adem_free": exp.adem_free,
        "truncated": exp.truncated,
    }
    plain = (f"{render(exp.value)}\n"
             f"adem_free={exp.adem_free} truncated={exp.truncated}")
    _emit(args, payload, plain)
    return _STATUS_EXIT[status]


def _cmd_basis(args) -> int:
    W = _require_weight_bound(args)
    gens = enumerate_generators(args.prime, args.k, args.t, W, args.degree_bound)
    payload = {
        "generators": [
            {"label": g.label(), "degree": g.degree, "weight": g.weight}
            for g in gens
        ]
    }
    plain = "\n".join(
        f"{g.label()}  degree={g.degree} weight={g.weight}" for g in gens
    )
    _emit(args, payload, plain if plain else "(none)")
    return EXIT_OK


def _cmd_series(args) -> int:
    W = _require_weight_bound(args)
    s = poincare_series(args.prime, args.k, args.t, W, args.degree_bound)
    obj = s.to_json_obj()
    plain = "\n".join(f"{w} {d} {c}" for w, d, c in obj["coeffs"])
    _emit(args, obj, plain)
    return EXIT_OK


def _cmd_verify_decomp(args) -> int:
    W = _require_weight_bound(args)
    report = verify_decomposition(
        args.prime, args.k, args.n, args.t, W, args.degree_bound,
        index_range=args.index_range,
    )
    status = "verified" if report.match else "refuted"
    payload = {
        "status": status,
        "match": report.match,
        "first_mismatch": list(report.first_mismatch) if report.first_mismatch else None,
    }
    plain = "match" if report.match else f"mismatch at (w, d) = {report.first_mismatch}"
    _emit(args, payload, plain)
    return _STATUS_EXIT[status]


def _cmd_cofiber(args) -> int:
    W = _require_weight_bound(args)
    pres = build_cofiber(args.prime, W)
    payload = {
        "weight_bound": W,
        "killed_powers": [
            f"{g.label()}^{e}" for mono in pres.killed_powers
            for g, e in mono.factors
        ],
        "exterior_sigmas": [[g.label(), d] for g, d in pres.exterior_sigmas],
        "free_e1_sigmas": [[g.label(), d] for g, d in pres.free_e1_sigmas],
    }
    plain = "\n".join(
        ["killed powers:"]
        + [f"  {s}" for s in payload["killed_powers"]]
        + ["exterior suspension classes:"]
        + [f"  {label} (degree {d})" for label, d in payload["exterior_sigmas"]]
        + ["free associative suspension classes:"]
        + [f"  {label} (degree {d})" for label, d in payload["free_e1_sigmas"]]
    )
    _emit(args, payload, plain)
    return EXIT_OK


def _cmd_nilpotent(args) -> int:
    W = args.weight_bound if args.weight_bound is not None else args.prime ** 3
    pres = build_cofiber(args.prime, W)
    g = _single_generator(parse_expr(args.cls, args.prime))
    report = check_nilpotent_in_cofiber(g, pres, args.max_power)
    status = "nilpotent" if report.nilpotent else "not-nilpotent"
    payload = {
        "status": status,
        "exponent": report.exponent,
        "witness": report.witness,
        "structural": report.structural,
        "search_bound": report.search_bound,
    }
    plain = f"{status}" + (f" (exponent {report.exponent})" if report.exponent else "") \
        + f"\n  search: {report.witness}\n  structural: {report.structural}"
    _emit(args, payload, plain)
    return _STATUS_EXIT[status]


def _cmd_filtration(args) -> int:
    if args.prime != 2:
        raise ValueError("filtration stages are a p = 2 artifact")
    killed = e1_filtration_stage(args.stage, args.t)
    payload = {
        "stage": args.stage,
        "killed": [{"label": g.label(), "degree": g.degree} for g in killed],
    }
    plain = "\n".join(f"{g.label()}  degree={g.degree}" for g in killed) or "(none)"
    _emit(args, payload, plain)
    return EXIT_OK


def _parse_halfint(text: str) -> int:
    """An index like '3' or '3/2' as its doubled value."""
    if "/" in text:
        top, _, denom = text.partition("/")
        if denom.strip() != "2":
            raise ValueError("only halves are supported in indices")
        return int(top)
    return 2 * int(text)


def _cmd_check_lemma(args) -> int:
    if args.lemma == "qnilpotent":
        if args.prime != 2:
            raise ValueError("the square-scaling identity is stated at p = 2")
        seq = parse_seq(2, args.seq)
        ok = check_qnilpotent_identity(seq, args.n, args.t)
        status = "verified" if ok else "refuted"
        _emit(args, {"status": status}, status)
        return _STATUS_EXIT[status]
    if args.lemma == "p-power":
        num = _parse_halfint(args.i)
        ok = check_p_power_rule(args.prime, num, args.eps)
        status = "verified" if ok else "refuted"
        _emit(args, {"status": status}, status)
        return _STATUS_EXIT[status]
    # mixed-term
    seq = parse_seq(args.prime, args.seq) if args.seq else None
    report = mixed_term_coefficient(args.prime, args.n, seq)
    if report.coefficient != 0:
        status = "verified" if report.adem_free else "inconclusive-truncated"
    else:
        status = "refuted" if report.adem_free else "inconclusive-truncated"
    payload = {
        "status": status,
        "coefficient": report.coefficient,
        "target": render(Polynomial.from_monomial(args.prime, report.target))
        if report.target is not None else None,
        "adem_free": report.adem_free,
        "candidates": report.candidates,
    }
    plain = (f"coefficient={report.coefficient} adem_free={report.adem_free} "
             f"candidates={report.candidates}\n"
             f"target: {payload['target']}\nstatus: {status}")
    _emit(args, payload, plain)
    return _STATUS_EXIT[status]


_HANDLERS = {
    "degree": _cmd_degree,
    "allowable": _cmd_allowable,
    "classify": _cmd_classify,
    "expand": _cmd_expand,
    "basis": _cmd_basis,
    "series": _cmd_series,
    "verify-decomp": _cmd_verify_decomp,
    "cofiber": _cmd_cofiber,
    "nilpotent": _cmd_nilpotent,
    "filtration": _cmd_filtration,
    "check-lemma": _cmd_check_lemma,
}


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


def run_command(argv: list[str]) -> int:
    """Dispatch a full argument vector; returns the exit status."""
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        if args.prime is None:
            raise ValueError("a prime is required: -p P")
        if not _is_prime(args.prime):
            raise ValueError(f"p = {args.prime} is not prime")
        return _HANDLERS[args.command](args)
    except (ParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
