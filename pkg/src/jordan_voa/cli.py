"""Command-line front end.

Subcommands mirror the library: bracket computations, module actions, mode
operators, weight-space bases, singular-vector checks and sweeps, the
degree-2 algebra table, Virasoro probes, and the one-shot verification
battery.  Reports are deterministic for a fixed configuration and seed;
timings go to stderr so stdout stays byte-stable.

Every flag can also be set through an environment variable with the
JORDAN_VOA_ prefix (JORDAN_VOA_D, JORDAN_VOA_R, JORDAN_VOA_MAX_DEGREE,
JORDAN_VOA_OUTPUT, JORDAN_VOA_SEED, JORDAN_VOA_WORKERS,
JORDAN_VOA_WINDOW_OVERRIDE).

Exit codes: 0 success, 1 failed verification, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from fractions import Fraction

from .fock import State, Weight, act_word, monomial, weight_space_basis
from .griess import GriessVerificationError, build_griess_table, jordan_verify
from .liealg import bracket_r, canonicalize, parse_generator_literal
from .singular import (
    GENERIC,
    DetSpec,
    is_singular,
    singular_sweep,
    verify_det_lemmas,
)
from .suite import SuiteConfig, run_paper_suite
from .virops import act_L, vertex_mode, virasoro_bracket_probe, virasoro_central_term

ENV_PREFIX = "JORDAN_VOA_"
DEGREE_GUARD = 10


def _env_default(name: str, fallback):
    return os.environ.get(ENV_PREFIX + name, fallback)


def _parse_r(text: str):
    if text == GENERIC:
        return GENERIC
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"cannot parse parameter value {text!r}") from exc


def _parse_window(text: str):
    if not text:
        return None
    try:
        lo, hi = (int(part) for part in text.split(":"))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(
            f"window {text!r} must look like lo:hi"
        ) from exc
    return lo, hi


def _parse_weight(text: str) -> Weight:
    counts: dict = {}
    squeezed = text.replace(" ", "")
    if squeezed in ("", "0"):
        return Weight()
    for token in squeezed.split("+"):
        head, _, body = token.partition("Lam[")
        if not body or not body.endswith("]"):
            raise ValueError(f"cannot parse weight term {token!r}")
        mult = int(head.rstrip("*")) if head else 1
        k, l = (int(part) for part in body[:-1].split(","))
        counts[(k, l)] = counts.get((k, l), 0) + mult
    return Weight(counts)


def _parse_state(text: str, d: int | None) -> State:
    squeezed = text.strip()
    if squeezed.startswith("["):
        return State.from_json_obj(json.loads(squeezed), d=d)
    if squeezed == "1":
        return State.vacuum()
    factors = [parse_generator_literal(part) for part in squeezed.split("*")]
    elems = [canonicalize(*quad, d=d) for quad in factors]
    for elem in elems:
        if elem.const or len(elem.terms) != 1:
            raise ValueError(f"state literal {text!r} must be a product of lowering generators")
    gens = [next(iter(e.terms)) for e in elems]
    return State.from_monomial(monomial(gens, d=d))


def _emit_state(state: State, output: str):
    if output == "json":
        print(json.dumps(state.to_json_obj()))
    else:
        print(str(state))


def _common_flags(parser: argparse.ArgumentParser, r_default=GENERIC):
    parser.add_argument("--d", type=int, default=int(_env_default("D", 2)),
                        help="number of oscillators (default 2)")
    if r_default is None:
        parser.add_argument("--r", type=_parse_r, default=None,
                            help="parameter value (default: the certification value 1-2*nu+p)")
    else:
        parser.add_argument("--r", type=_parse_r,
                            default=_parse_r(str(_env_default("R", r_default))),
                            help='parameter value: a rational like 1/2, or "generic"')
    parser.add_argument("--max-degree", type=int,
                        default=int(_env_default("MAX_DEGREE", 4)),
                        help="degree bound for sweeps and suites (default 4)")
    parser.add_argument("--output", choices=("text", "json", "csv"),
                        default=_env_default("OUTPUT", "text"))
    parser.add_argument("--seed", type=int, default=int(_env_default("SEED", 0)))
    parser.add_argument("--workers", type=int, default=int(_env_default("WORKERS", 1)))
    parser.add_argument("--window-override", type=_parse_window,
                        default=_parse_window(_env_default("WINDOW_OVERRIDE", "")),
                        help="explicit truncation window lo:hi (must contain the sufficient range)")
    parser.add_argument("--no-degree-guard", action="store_true",
                        help=f"allow --max-degree beyond {DEGREE_GUARD}")


def _check_guard(args) -> None:
    if args.max_degree > DEGREE_GUARD and not args.no_degree_guard:
        raise SystemExit(2)


def _cmd_bracket(args) -> int:
    left = canonicalize(*parse_generator_literal(args.left), d=args.d)
    right = canonicalize(*parse_generator_literal(args.right), d=args.d)
    result = bracket_r(left, right)
    if args.r != GENERIC:
        result = result.specialize(args.r)
    if args.output == "json":
        print(json.dumps({
            "terms": [{"generator": list(g), "coeff": str(c)}
                      for g, c in sorted(result.terms.items())],
            "const": str(result.const),
        }))
    else:
        print(str(result))
    return 0


def _cmd_act(args) -> int:
    state = _parse_state(args.state, args.d)
    word = [canonicalize(*parse_generator_literal(text), d=args.d) for text in args.element]
    result = act_word(word, state)
    if args.r != GENERIC:
        result = result.specialize(args.r)
    _emit_state(result, args.output)
    return 0


def _cmd_act_l(args) -> int:
    state = _parse_state(args.state, args.d)
    result = act_L(args.i, args.j, args.m, state, window=args.window_override, d=args.d)
    if args.r != GENERIC:
        result = result.specialize(args.r)
    _emit_state(result, args.output)
    return 0


def _cmd_vertex_mode(args) -> int:
    state = _parse_state(args.state, args.d)
    result = vertex_mode(args.i, args.j, args.m, args.n, args.l, state,
                         window=args.window_override, d=args.d)
    if args.r != GENERIC:
        result = result.specialize(args.r)
    _emit_state(result, args.output)
    return 0


def _cmd_weight_basis(args) -> int:
    lam = _parse_weight(args.weight)
    basis = weight_space_basis(lam, d=args.d, restricted=args.restricted)
    if args.output == "json":
        print(json.dumps([[list(g) for g in mono] for mono in basis]))
    else:
        for mono in basis:
            print("*".join(str(g) for g in mono) if mono else "1")
        print(f"dimension: {len(basis)}")
    return 0


def _cmd_singular_check(args) -> int:
    spec = DetSpec(args.p, args.nu, args.r)
    r0 = spec.certification_r() if args.r is None else args.r
    state = spec.state()
    ok, witness = is_singular(state, r0=r0, d=args.d, full_algebra=args.full_algebra,
                              strict=args.strict_mixed)
    if args.output == "json":
        payload = {"p": args.p, "nu": args.nu, "r": str(r0), "singular": ok}
        if witness:
            payload["witness"] = {"generator": list(witness[0]),
                                  "image": witness[1].to_json_obj()}
        print(json.dumps(payload))
    else:
        print(f"SINGULAR: {'true' if ok else 'false'}")
        if witness:
            print(f"witness: {witness[0]} -> {witness[1]}")
    return 0 if ok else 1


def _cmd_singular_sweep(args) -> int:
    _check_guard(args)
    r_values = [Fraction(r) for r in range(args.rmin, args.rmax + 1)]
    reports = singular_sweep(r_values, args.max_degree, workers=args.workers)
    if args.output == "json":
        print(json.dumps([
            {
                "r": str(rep.r0),
                "weight": str(rep.weight).replace(" ", ""),
                "basis_dim": rep.basis_dim,
                "kernel_dim": rep.kernel_dim,
                "vectors": [v.to_json_obj() for v in rep.kernel_vectors],
            }
            for rep in reports
        ]))
    else:
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["r0", "weight", "basis_dim", "kernel_dim"])
        for rep in reports:
            weight_text = str(rep.weight).replace(" ", "")
            writer.writerow([rep.r0, weight_text, rep.basis_dim, rep.kernel_dim])
    return 0


def _cmd_verify_det(args) -> int:
    report = verify_det_lemmas(args.p, args.index_bound)
    if args.output == "json":
        print(json.dumps(report))
    else:
        print(f"determinant identities (p={args.p}): "
              f"{'PASS' if report['passed'] else 'FAIL'}")
        for failure in report["failures"]:
            print(f"  - {failure}")
    return 0 if report["passed"] else 1


def _cmd_griess_table(args) -> int:
    table = build_griess_table(args.d)
    try:
        verdict = jordan_verify(args.d)
        ok = True
    except GriessVerificationError as exc:
        verdict = {"error": str(exc)}
        ok = False
    if args.output == "json":
        payload = table.to_json_obj()
        payload["verdict"] = {k: str(v) for k, v in verdict.items()}
        print(json.dumps(payload))
    else:
        for (left, right), vec in sorted(table.products.items()):
            body = " + ".join(
                f"{c}*w{list(table.basis[pos])}" for pos, c in enumerate(vec) if c
            ) or "0"
            print(f"w{list(left)} . w{list(right)} = {body}")
        print(f"verdict: {verdict}")
    return 0 if ok else 1


def _cmd_virasoro_check(args) -> int:
    failures = []
    vac = State.vacuum()
    for m in range(-args.max_degree, args.max_degree + 1):
        for n in range(-args.max_degree, args.max_degree + 1):
            probe = virasoro_bracket_probe(m, n, vac, args.d)
            if probe != virasoro_central_term(m, n, vac, args.d):
                failures.append((m, n))
    if args.output == "json":
        print(json.dumps({"d": args.d, "passed": not failures,
                          "failures": [list(f) for f in failures]}))
    else:
        print(f"virasoro check (d={args.d}, |m|,|n| <= {args.max_degree}): "
              f"{'PASS' if not failures else 'FAIL'}")
    return 0 if not failures else 1


def _cmd_paper_suite(args) -> int:
    _check_guard(args)
    config = SuiteConfig(d=args.d if args.d > 1 else 2, max_degree=args.max_degree,
                         seed=args.seed, samples=args.samples, workers=args.workers)
    results = run_paper_suite(config)
    if args.output == "json":
        print(json.dumps([
            {"name": res.name, "passed": res.passed, "details": res.details,
             "failures": res.failures}
            for res in results
        ]))
    else:
        for res in results:
            print(res.summary_line())
        passed = sum(1 for r in results if r.passed)
        print(f"{passed}/{len(results)} checks passed")
    for res in results:
        print(f"[{res.seconds:7.2f}s] {res.name}", file=sys.stderr)
    return 0 if all(r.passed for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jordan-voa",
        description="Exact computations in the oscillator module behind the "
                    "symmetric-matrix Jordan vertex algebra.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bracket", help="deformed bracket of two generators")
    p.add_argument("left")
    p.add_argument("right")
    _common_flags(p)
    p.set_defaults(func=_cmd_bracket)

    p = sub.add_parser("act", help="act by a word of generators on a state")
    p.add_argument("element", nargs="+", help='generator literals "v[i,j](m,n)"')
    p.add_argument("--state", default="1", help='state literal or JSON (default vacuum "1")')
    _common_flags(p)
    p.set_defaults(func=_cmd_act)

    p = sub.add_parser("act-L", help="apply a mode-sum operator L[i,j](m)")
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--state", default="1")
    _common_flags(p)
    p.set_defaults(func=_cmd_act_l)

    p = sub.add_parser("vertex-mode", help="apply a closed-form vertex mode")
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--state", default="1")
    _common_flags(p)
    p.set_defaults(func=_cmd_vertex_mode)

    p = sub.add_parser("weight-basis", help="enumerate a weight-space basis")
    p.add_argument("--weight", required=True, help='e.g. "2*Lam[1,-1] + 2*Lam[1,-2]"')
    p.add_argument("--restricted", action="store_true",
                   help="restrict factors to the first oscillator")
    _common_flags(p)
    p.set_defaults(func=_cmd_weight_basis)

    p = sub.add_parser("singular-check", help="certify a determinant power")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--nu", type=int, required=True)
    p.add_argument("--full-algebra", action="store_true",
                   help="also require annihilation by certifiable mixed-index generators")
    p.add_argument("--strict-mixed", action="store_true",
                   help="include reversed-order mixed generators (fails for p >= 2)")
    _common_flags(p, r_default=None)
    p.set_defaults(func=_cmd_singular_check)

    p = sub.add_parser("singular-sweep", help="kernel search over all weights")
    p.add_argument("--rmin", type=int, required=True)
    p.add_argument("--rmax", type=int, required=True)
    _common_flags(p)
    p.set_defaults(func=_cmd_singular_sweep)

    p = sub.add_parser("verify-det", help="determinant commutation identities")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--index-bound", type=int, default=None)
    _common_flags(p)
    p.set_defaults(func=_cmd_verify_det)

    p = sub.add_parser("griess-table", help="degree-2 structure constants")
    _common_flags(p)
    p.set_defaults(func=_cmd_griess_table)

    p = sub.add_parser("virasoro-check", help="Virasoro relation on the vacuum")
    _common_flags(p)
    p.set_defaults(func=_cmd_virasoro_check)

    p = sub.add_parser("paper-suite", help="run the full verification battery")
    p.add_argument("--samples", type=int, default=10000,
                   help="sampled bracket triples (default 10000)")
    _common_flags(p)
    p.set_defaults(func=_cmd_paper_suite)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "index_bound", "skip") is None:
        args.index_bound = args.p + 2
    try:
        return args.func(args)
    except (ValueError, GriessVerificationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
