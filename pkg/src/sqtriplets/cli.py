"""Command line front end: ``sqtriplets <command> ...``.

Exit status is 0 on success, 1 when the input is mathematically rejected
(unbalanced triplet, invalid complex, failed verification) and 2 on usage
errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from concurrent.futures import ThreadPoolExecutor

from . import checks
from .degrees import members
from .exactcore import format_rational, transition_matrix
from .freecomplex import dualize, invariants, minimalize, singly_graded_profile, translate, validate
from .functors import ad, ad_power
from .io import FormatError, complex_from_text, complex_to_text, parse_int_list, triplet_from_text, triplet_to_text
from .tensorranks import construction_betti, pinching_weights, term_rank
from .triplets import (
    DegreeTriplet,
    TripletError,
    derive_params,
    enumerate_balanced,
    is_balanced,
    reduce,
    render_triangle,
    solve_betti,
)


class DomainError(Exception):
    """Input rejected on mathematical grounds; carries the report to print."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(2)


def _out(args, human: str, machine) -> None:
    if args.format == "machine":
        print(json.dumps(machine, indent=2, ensure_ascii=False))
    else:
        print(human)


def _table_json(table: dict) -> list:
    return [
        {"position": p, "degree": members(R), "dim": v}
        for (p, R), v in sorted(table.items(), key=lambda kv: (-kv[0][0], kv[0][1]))
    ]


def _table_text(name: str, table: dict) -> str:
    if not table:
        return f"{name}: (zero)"
    lines = [f"{name}:"]
    for (p, R), v in sorted(table.items(), key=lambda kv: (-kv[0][0], bin(kv[0][1]).count('1'), kv[0][1])):
        lines.append(f"  position {p:>3}  degree {{{','.join(map(str, members(R)))}}}  dim {v}")
    return "\n".join(lines)


# matrix ---------------------------------------------------------------------

def cmd_matrix(args):
    M = transition_matrix(args.n)
    rows = [[format_rational(x) for x in row] for row in M.data]
    width = max(len(x) for row in rows for x in row)
    human = "\n".join(" ".join(x.rjust(width) for x in row) for row in rows)
    machine = {"n": args.n, "matrix": rows}
    if args.check_cube:
        failures = checks.check_cube(args.n)
        lines = [f"n={k}: A^3 = (-1)^n I: {'FAIL' if any(f.startswith(f'n={k}:') for f in failures) else 'OK'}"
                 for k in range(args.n + 1)]
        human += "\n" + "\n".join(lines)
        machine["cube_ok"] = not failures
        _out(args, human, machine)
        if failures:
            raise DomainError("\n".join(failures))
        return
    _out(args, human, machine)


# triplet --------------------------------------------------------------------

def _triplet_from_args(args) -> DegreeTriplet:
    if args.text:
        return triplet_from_text(args.text)
    if args.n is None or args.A is None or args.B is None or args.C is None:
        raise FormatError("give --text or all of --n, --A, --B, --C")
    try:
        return DegreeTriplet(args.n, parse_int_list(args.A), parse_int_list(args.B), parse_int_list(args.C))
    except TripletError as err:
        raise DomainError(str(err)) from None


def _solution_text(T, sol) -> str:
    j = lambda v: ",".join(map(str, v))  # noqa: E731
    rows = [
        ("triplet", triplet_to_text(T)),
        ("nullity", str(sol.nullity)),
        ("alpha", j(sol.alpha)),
        ("beta", j(sol.beta)),
        ("gamma", j(sol.gamma)),
        ("positive", str(sol.positive).lower()),
        ("balanced", str(sol.balanced).lower()),
    ]
    rows += [("note", note) for note in sol.notes]
    return "\n".join(f"{k:<9} {v}" for k, v in rows)


def cmd_triplet_solve(args):
    T = _triplet_from_args(args)
    rep = is_balanced(T)
    if not rep:
        raise DomainError(f"unbalanced triplet: {rep.message}")
    sol = solve_betti(T)
    _out(args, _solution_text(T, sol), dict(triplet=triplet_to_text(T), **sol.as_dict(), notes=sol.notes))


def cmd_triplet_check(args):
    T = _triplet_from_args(args)
    rep = is_balanced(T)
    machine = {"triplet": triplet_to_text(T), "balanced": rep.balanced, "condition": rep.condition,
               "corner": rep.corner, "v": rep.v, "message": rep.message}
    if rep:
        p = derive_params(T)
        machine.update(a=p.a, b=p.b, c=p.c, e_A=p.e_A, e_B=p.e_B, e_C=p.e_C)
        human = (f"{triplet_to_text(T)}\nbalanced: yes\n"
                 f"corners a={p.a} b={p.b} c={p.c}; nondegrees e_A={p.e_A} e_B={p.e_B} e_C={p.e_C}\n"
                 + render_triangle(T))
        _out(args, human, machine)
        return
    _out(args, f"{triplet_to_text(T)}\nbalanced: no\n{rep.message}", machine)
    raise DomainError(rep.message)


def cmd_triplet_enumerate(args):
    Ts = enumerate_balanced(args.n)
    machine = {"n": args.n, "triplets": [triplet_to_text(T) for T in Ts]}
    lines = [triplet_to_text(T) for T in Ts]
    if args.stats:
        with ThreadPoolExecutor(max_workers=max(1, args.threads)) as pool:
            recs = list(pool.map(checks.triplet_record, Ts))
        hist = Counter(r["nullity"] for r in recs)
        nonpos = [triplet_to_text(r["triplet"]) for r in recs if r["nullity"] == 1 and not r["positive"]]
        lines.append(f"count {len(Ts)}")
        lines.append("nullity " + ", ".join(f"{k}:{v}" for k, v in sorted(hist.items())))
        lines.append(f"nonpositive {len(nonpos)}")
        lines += [f"  {t}" for t in nonpos]
        machine["stats"] = {"count": len(Ts), "nullity": {str(k): v for k, v in sorted(hist.items())},
                            "nonpositive": nonpos}
    _out(args, "\n".join(lines), machine)


def cmd_triplet_reduce(args):
    T = _triplet_from_args(args)
    rep = is_balanced(T)
    if not rep:
        raise DomainError(f"unbalanced triplet: {rep.message}")
    try:
        R = reduce(T)
    except TripletError as err:
        raise DomainError(str(err)) from None
    p = derive_params(R)
    human = (f"{triplet_to_text(R)}\ncorners a={p.a} b={p.b} c={p.c}; e={p.e}; "
             f"balanced: {'yes' if is_balanced(R) else 'no'}")
    _out(args, human, {"triplet": triplet_to_text(R), "a": p.a, "b": p.b, "c": p.c, "e": p.e,
                       "balanced": is_balanced(R).balanced})


# complex --------------------------------------------------------------------

def _read_complex(path):
    with open(path, encoding="utf-8") as fh:
        return complex_from_text(fh.read())


def _emit_complex(args, G):
    text = complex_to_text(G)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        if args.format == "machine":
            print(json.dumps({"written": args.out}))
        else:
            print(f"wrote {args.out}")
    else:
        sys.stdout.write(text)


def cmd_complex(args):
    F = _read_complex(args.input)
    problems = validate(F)
    if args.action == "validate":
        _out(args, "valid" if not problems else "\n".join(problems),
             {"valid": not problems, "problems": problems})
        if problems:
            raise DomainError(f"{len(problems)} problem(s)")
        return
    if problems:
        raise DomainError("invalid complex:\n" + "\n".join(problems))
    if args.action == "minimalize":
        _emit_complex(args, minimalize(F))
    elif args.action == "dualize":
        _emit_complex(args, dualize(F))
    elif args.action == "ad":
        _emit_complex(args, ad(F))
    elif args.action == "ad3":
        _emit_complex(args, ad_power(F, 3))
    elif args.action == "invariants":
        B, H, C = invariants(F)
        human = "\n".join([_table_text("B", B), _table_text("H", H), _table_text("C", C)])
        _out(args, human, {"B": _table_json(B), "H": _table_json(H), "C": _table_json(C)})


# tensor ---------------------------------------------------------------------

def cmd_tensor(args):
    A = sorted(set(parse_int_list(args.A)))
    try:
        P = pinching_weights(A, args.n)
        ranks, ok = construction_betti(A, args.n)
    except ValueError as err:
        raise DomainError(str(err)) from None
    lines = [f"u = {','.join(map(str, P.u))}", f"w = {','.join(map(str, P.w))}"]
    lines += [f"degree {d:>3}: rank {term_rank(P, d, args.n)}" for d in A]
    lines.append(f"proportional to Herzog-Kuhl and solver: {'yes' if ok else 'no'}")
    _out(args, "\n".join(lines), {"u": list(P.u), "w": list(P.w), "degrees": A, "ranks": ranks, "consistent": ok})
    if not ok:
        raise DomainError("construction ranks are not concordant")


# demo -----------------------------------------------------------------------

def cmd_demo(args):
    F = checks.pairs_ideal_complex()
    orb = checks.Orbit(F)
    names = ["F", "AD(F)", "AD^2(F)"]
    profiles = [singly_graded_profile(orb.ad(k)) for k in range(3)]
    T = checks.realized_triplet(orb)
    sol = solve_betti(T)
    lines = []
    for name, prof in zip(names, profiles):
        kind = "linear" if prof.is_linear else "pure, not linear" if prof.is_pure else "not pure"
        lines.append(f"{name:<8} {prof.describe():<28} ({kind})")
    G3 = orb.ad(3)
    same = invariants(G3) == invariants(translate(F, 3))
    lines.append(f"AD^3(F) has the invariants of F[3]: {'yes' if same else 'no'}")
    lines.append("")
    lines.append(f"degree triplet: {triplet_to_text(T)}")
    lines.append(render_triangle(T))
    lines.append("")
    lines.append(_solution_text(T, sol))
    machine = {
        "complexes": [{"name": nm, "terms": p.describe(), "pure": p.is_pure, "linear": p.is_linear,
                       "degrees": p.degree_sequence, "betti": p.betti} for nm, p in zip(names, profiles)],
        "ad3_is_translate": same,
        "triplet": triplet_to_text(T),
        "solution": sol.as_dict(),
    }
    _out(args, "\n".join(lines), machine)


# verify ---------------------------------------------------------------------

def cmd_verify(args):
    results = []  # (name, failures)
    suite = args.suite
    if suite in ("all", "rotation", "yanagawa"):
        for name, check, fails in checks.run_complex_checks(suite, args.max_n, args.threads):
            results.append((f"{check} [{name}]", fails))
    if suite == "all":
        for n in range(1, args.max_n + 1):
            for A, B, C in checks.partitions(n):
                results.append((f"hexagon n={n} {members(A)}/{members(B)}/{members(C)}",
                                checks.check_hexagon(n, A, B, C)))
        results.append(("cube identity n<=12", checks.check_cube(12)))
    if suite in ("all", "solver"):
        recs = checks.sweep(args.max_n, args.threads)
        results.append((f"solver sweep n<={args.max_n}", checks.sweep_problems(recs)))
        for n in range(1, args.max_n + 1):
            fails = [f for A in checks.one_sided_sets(n) for f in checks.check_concordance(A, n)]
            results.append((f"Herzog-Kuhl/tensor concordance n={n}", fails))
            fails = [f for T in enumerate_balanced(n) for f in checks.check_reduce_chain(T)]
            results.append((f"reduction chains n={n}", fails))
        sweep_text = checks.sweep_table(recs)
    else:
        sweep_text = None
    failed = [(name, f) for name, f in results if f]
    if args.format == "machine":
        print(json.dumps({"checks": len(results), "failed": [{"check": nm, "failures": f} for nm, f in failed]},
                         indent=2))
    else:
        if sweep_text:
            print(sweep_text)
        for name, fails in results:
            if fails or args.verbose:
                print(f"{'FAIL' if fails else 'ok  '} {name}")
                for f in fails:
                    print(f"     {f}")
        print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    if failed:
        raise DomainError(f"first violation: {failed[0][0]}: {failed[0][1][0]}")


# parser ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["human", "machine"], default=argparse.SUPPRESS,
                        help="report style (default: human)")
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS, help="worker threads (default 1)")

    parser = _Parser(prog="sqtriplets", description="Squarefree complexes, Alexander duality and degree triplets.",
                     parents=[common])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("matrix", parents=[common], help="binomial transition matrix")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--check-cube", action="store_true")
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("triplet", parents=[common], help="degree triplet tools")
    tsub = p.add_subparsers(dest="action", required=True, parser_class=_Parser)
    for action, func in (("solve", cmd_triplet_solve), ("check", cmd_triplet_check), ("reduce", cmd_triplet_reduce)):
        q = tsub.add_parser(action, parents=[common])
        q.add_argument("--n", type=int)
        q.add_argument("--A")
        q.add_argument("--B")
        q.add_argument("--C")
        q.add_argument("--text", help="triplet as 'n=3; A=0,2; B=0,2,3; C=1,2,3'")
        q.set_defaults(func=func)
    q = tsub.add_parser("enumerate", parents=[common])
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--stats", action="store_true")
    q.set_defaults(func=cmd_triplet_enumerate)

    p = sub.add_parser("complex", parents=[common], help="free complex tools")
    p.add_argument("action", choices=["validate", "minimalize", "dualize", "ad", "ad3", "invariants"])
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_complex)

    p = sub.add_parser("tensor", parents=[common], help="pinched tensor complex ranks")
    p.add_argument("action", choices=["ranks"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--A", required=True)
    p.set_defaults(func=cmd_tensor)

    p = sub.add_parser("demo", parents=[common], help="worked examples")
    p.add_argument("name", choices=["example23"])
    p.set_defaults(func=cmd_demo)

    p = sub.add_parser("verify", parents=[common], help="run invariant checks")
    p.add_argument("--suite", choices=["all", "rotation", "yanagawa", "solver"], default="all")
    p.add_argument("--max-n", type=int, default=3)
    p.add_argument("--verbose", action="store_true", help="list passing checks too")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.format = getattr(args, "format", "human")
    args.threads = getattr(args, "threads", 1)
    if args.threads < 1:
        parser.error("--threads must be at least 1")
    try:
        args.func(args)
    except FormatError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except DomainError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    except (OSError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
