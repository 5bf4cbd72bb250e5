"""Command-line front end.

Exit codes: 0 everything verified, 1 a verification or construction
precondition failed, 2 the input could not be read.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import io
from .errors import AlgebraError, InputError
from .report import Report

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class Output:
    def __init__(self, as_json: bool, stream=None):
        self.as_json = as_json
        self.stream = stream or sys.stdout

    def report(self, rep: Report) -> int:
        if self.as_json:
            print(json.dumps(io._plain(rep.to_dict())), file=self.stream)
        else:
            print(rep.format(), file=self.stream)
        return EXIT_OK if rep.passed else EXIT_FAIL

    def reports(self, reps: list[Report]) -> int:
        codes = [self.report(r) for r in reps]
        return max(codes, default=EXIT_OK)

    def line(self, doc: dict) -> None:
        print(io.dump(doc), file=self.stream)

    def text(self, msg: str) -> None:
        if not self.as_json:
            print(msg, file=self.stream)


# ---------------------------------------------------------------- verify

def _verify(args, out: Output) -> int:
    from . import operators, pbraces, reflections, shelves, solutions, twists

    kind = args.kind
    if kind == "p-shelf":
        op, Y = io.raw_p_shelf(io.load(args.path))
        return out.report(shelves.p_shelf_report(op, Y))
    if kind == "ybe":
        sigma, tau, Y = io.raw_solution(io.load(args.path))
        return out.reports([solutions.solution_verify_direct(sigma, tau, Y),
                            solutions.solution_verify_conditions(sigma, tau, Y)])
    if kind == "reflection":
        S = io.solution_from_json(io.load(_need(args.solution, "--solution")))
        K = io.kappa_from_json(io.load(_need(args.k, "--k")), S.params)
        return out.reports([reflections.reflection_verify_direct(K, S),
                            reflections.reflection_conditions_general(K, S)])
    if kind == "twist":
        P = io.p_shelf_from_json(io.load(_need(args.prack, "--prack")))
        sig = io.sigma_from_json(io.load(_need(args.sigma, "--sigma")))
        return out.report(twists.admissible_twist_verify(sig, P))
    if kind == "p-brace":
        return out.report(pbraces.p_brace_verify(io.p_brace_from_json(io.load(args.path))))
    if kind == "skew-p-brace":
        return out.report(pbraces.skew_p_brace_verify(io.p_brace_from_json(io.load(args.path))))
    if kind == "eta":
        return out.report(pbraces.eta_verify(io.eta_from_json(io.load(args.path)), args.mode))
    if kind == "magma":
        B = io.magma_from_json(io.load(args.path))
        reps = [operators.magma_verify(B)]
        if B.g is not None and B.ghat is not None and B.K is not None:
            reps.append(operators.coideal_check(B))
        return out.reports(reps)
    raise InputError(f"unknown verify kind {kind!r}")


def _need(value, flag: str):
    if value is None:
        raise InputError(f"{flag} is required here")
    return value


# ---------------------------------------------------------------- construct

def _construct(args, out: Output) -> int:
    from . import pbraces, reflections, shelves, solutions, twists

    kind = args.kind

    def brace_and_params():
        B = io.brace_from_json(io.load(_need(args.brace, "--brace")))
        Y = io.params_from_json(io.load(_need(args.params, "--params")), B)
        return B, Y

    if kind in ("conjugate-p-rack", "affine-p-rack", "core-p-rack"):
        B, Y = brace_and_params()
        if kind == "conjugate-p-rack":
            P = shelves.conjugate_p_rack(B, Y)
        elif kind == "affine-p-rack":
            P = shelves.affine_p_rack(B, Y, _need(args.xi, "--xi"))
        else:
            P = shelves.core_p_rack(B, Y)
        doc = io.p_shelf_to_json(P)
        doc["mul"] = B.mul.op
    elif kind == "p-shelf-solution":
        P = io.p_shelf_from_json(io.load(_need(args.prack, "--prack")))
        doc = io.solution_to_json(solutions.p_shelf_solution(P))
    elif kind == "twisted-solution":
        P = io.p_shelf_from_json(io.load(_need(args.prack, "--prack")))
        sig = io.sigma_from_json(io.load(_need(args.sigma, "--sigma")))
        doc = io.solution_to_json(twists.twisted_solution(P, sig))
    elif kind == "brace-sigma":
        B, Y = brace_and_params()
        if args.xi is not None:
            sig = twists.affine_sigma(B, Y, args.xi)
        else:
            sig = twists.brace_sigma(B, Y, args.mode if args.mode in ("p1", "p2") else "p1")
        doc = io.sigma_to_json(sig)
        doc["mul"] = B.mul.op
    elif kind == "brace-reflection":
        B, Y = brace_and_params()
        K = reflections.brace_reflection(B, Y, _need(args.zeta, "--zeta"), args.m_mult, args.xi)
        doc = io.kappa_to_json(K)
    elif kind == "dressed-k":
        S = io.solution_from_json(io.load(_need(args.solution, "--solution")))
        K = io.kappa_from_json(io.load(_need(args.k, "--k")), S.params)
        D = solutions.sklyanin_dress(S, K.kappa, args.sites)
        if not D.report.passed:
            return out.report(D.report)
        doc = {"sites": D.sites, "outputs": list(D.outputs), "report": D.report.to_dict()}
    elif kind == "p-brace-from-eta":
        E = io.eta_from_json(io.load(_need(args.eta, "--eta")))
        mode = args.mode if args.mode in ("reversible", "general") else "reversible"
        T = pbraces.p_brace_from_eta(E) if mode == "reversible" else pbraces.skew_p_brace_from_eta(E)
        doc = io.p_brace_to_json(T)
    elif kind == "solution-from-eta":
        E = io.eta_from_json(io.load(_need(args.eta, "--eta")))
        mode = args.mode if args.mode in ("reversible", "general") else "reversible"
        doc = io.solution_to_json(pbraces.solution_from_eta(E, mode), E.pg.group)
    else:
        raise InputError(f"unknown construct kind {kind!r}")
    text = io.dump(doc, args.out)
    if args.out is None:
        print(text)
    else:
        out.text(f"wrote {args.out}")
    return EXIT_OK


# ---------------------------------------------------------------- enumerate, rational, compare, dress

def _enumerate(args, out: Output) -> int:
    from . import search

    stats = search.SearchStats()
    budget = args.budget or search.DEFAULT_BUDGET
    if args.kind in ("p-shelves", "p-racks"):
        rack = args.rack_only or args.kind == "p-racks"
        stream = search.enumerate_p_shelves(_need(args.n, "--n"), _need(args.m, "--m"), rack_only=rack,
                                            up_to_relabeling=args.dedup, budget=budget,
                                            threads=args.threads, stats=stats)
        for P in stream:
            out.line({"op": P.op, "rack": P.is_rack})
    elif args.kind == "reflections":
        S = io.solution_from_json(io.load(_need(args.solution, "--solution")))
        for K in search.enumerate_reflections(S, not args.all_maps, budget, stats):
            out.line({"kappa": K.kappa})
    elif args.kind == "sigmas":
        P = io.p_shelf_from_json(io.load(_need(args.prack, "--prack")))
        for sig in search.enumerate_admissible_sigmas(P, budget, stats):
            out.line({"sigma": sig.table})
    else:
        raise InputError(f"unknown enumerate kind {args.kind!r}")
    print(f"# {stats.emitted} emitted of {stats.candidates} candidates, {stats.discrepancies} discrepancies",
          file=sys.stderr)
    return EXIT_OK if stats.discrepancies == 0 else EXIT_FAIL


def _rational(args, out: Output) -> int:
    from . import rational

    reps = rational.full_report(args.family, args.z1, args.z2, args.z3, args.samples, args.seed)
    return out.reports(reps)


def _compare(args, out: Output) -> int:
    from . import search

    P = io.p_shelf_from_json(io.load(args.prack))
    sig = io.sigma_from_json(io.load(args.sigma))
    res = search.compare_reflection_sets(P, sig, budget=args.budget or search.DEFAULT_BUDGET)
    if args.json:
        out.line(res.to_dict())
        return EXIT_OK
    return out.report(res.report)


def _dress(args, out: Output) -> int:
    from . import solutions

    S = io.solution_from_json(io.load(args.solution))
    K = io.kappa_from_json(io.load(args.k), S.params)
    return out.report(solutions.sklyanin_dress(S, K.kappa, args.sites).report)


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable reports")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--budget", type=int, default=None, help="candidate limit for enumeration")

    p = argparse.ArgumentParser(prog="paramybe", description="Parametric set-theoretic Yang-Baxter and reflection maps",
                                parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common], help="run a verifier on JSON input")
    v.add_argument("kind", choices=["p-shelf", "ybe", "reflection", "twist", "p-brace", "skew-p-brace", "eta", "magma"])
    v.add_argument("path", nargs="?")
    v.add_argument("--solution")
    v.add_argument("--k")
    v.add_argument("--prack")
    v.add_argument("--sigma")
    v.add_argument("--mode", default="reversible", choices=["reversible", "general"])
    v.set_defaults(func=_verify)

    c = sub.add_parser("construct", parents=[common], help="build an object and write its JSON")
    c.add_argument("kind", choices=["conjugate-p-rack", "affine-p-rack", "core-p-rack", "p-shelf-solution",
                                    "twisted-solution", "brace-sigma", "brace-reflection", "dressed-k",
                                    "p-brace-from-eta", "solution-from-eta"])
    for flag in ("--brace", "--params", "--prack", "--sigma", "--solution", "--k", "--eta", "--out"):
        c.add_argument(flag)
    c.add_argument("--xi", type=int)
    c.add_argument("--zeta", type=int)
    c.add_argument("--m", dest="m_mult", type=int, default=1, help="multiple of ζ in the brace reflection")
    c.add_argument("--mode", default=None, help="p1/p2 for brace-sigma, reversible/general for η")
    c.add_argument("--sites", type=int, default=3)
    c.set_defaults(func=_construct)

    e = sub.add_parser("enumerate", parents=[common], help="stream objects as JSON lines")
    e.add_argument("kind", choices=["p-shelves", "p-racks", "reflections", "sigmas"])
    e.add_argument("--n", type=int)
    e.add_argument("--m", type=int)
    e.add_argument("--dedup", action="store_true", help="one table per carrier relabeling class")
    e.add_argument("--rack-only", action="store_true")
    e.add_argument("--all-maps", action="store_true", help="reflections: include non-bijective κ")
    e.add_argument("--solution")
    e.add_argument("--prack")
    e.set_defaults(func=_enumerate)

    r = sub.add_parser("rational", parents=[common], help="sampled checks of the birational families")
    r.add_argument("--family", type=int, choices=[1, 2, 3, 4], required=True)
    r.add_argument("--z1", default="2")
    r.add_argument("--z2", default="3")
    r.add_argument("--z3", default="5")
    r.add_argument("--samples", type=int, default=200)
    r.add_argument("--seed", type=int, default=0)
    r.set_defaults(func=_rational)

    cr = sub.add_parser("compare-reflections", parents=[common], help="reflections of a p-rack solution vs its twist")
    cr.add_argument("--prack", required=True)
    cr.add_argument("--sigma", required=True)
    cr.set_defaults(func=_compare)

    d = sub.add_parser("dress", parents=[common], help="verify the dressed reflection on more sites")
    d.add_argument("--solution", required=True)
    d.add_argument("--k", required=True)
    d.add_argument("--sites", type=int, default=3)
    d.set_defaults(func=_dress)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    out = Output(args.json)
    try:
        return args.func(args, out)
    except InputError as exc:
        print(f"input error [{exc.condition}]: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except AlgebraError as exc:
        print(f"failed [{exc.condition}]: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
