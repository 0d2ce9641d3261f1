"""Command line interface: ``swisscheese {generate,classicalise,verify,annihilate,render}``.

Data goes to stdout as JSON (or SVG), diagnostics to stderr.  Exit codes:
0 success, 1 verification failed, 2 invalid input, 3 delta <= 0,
4 internal error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import analysis, generate
from .allocation import check_axioms, compose_all
from .cheese import (
    Verdict,
    classify,
    cheese_from_json,
    cheese_to_json,
    dumps,
    normalize,
    whyburn_report,
)
from .classicalise import classicalise, replay_trace, trace_to_dict
from .errors import CheeseError, HypothesisError, InvalidInputError, QuadratureError
from .geometry import DEFAULT_TOL, check_tol
from .render import RenderOptions, render_comparison, render_svg

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INVALID = 2
EXIT_HYPOTHESIS = 3
EXIT_INTERNAL = 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def _tolerance(args) -> float:
    if getattr(args, "tol", None) is not None:
        return check_tol(args.tol)
    env = os.environ.get("CHEESE_TOL")
    if env is not None:
        try:
            return check_tol(float(env))
        except ValueError:
            raise InvalidInputError(f"CHEESE_TOL={env!r} is not a valid tolerance") from None
    return DEFAULT_TOL


def _read_text(path):
    if path in (None, "-"):
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InvalidInputError(f"cannot read {path}: {exc}") from None


def _read_cheese(path):
    return normalize(cheese_from_json(_read_text(path)))


def _write(text, path=None):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _violation_dict(v):
    name = type(v).__name__
    return {"type": name, **{k: getattr(v, k) for k in ("i", "j") if hasattr(v, k)}}


def _classify_dict(rep):
    return {
        "verdict": rep.verdict.value,
        "violations": [_violation_dict(v) for v in rep.violations],
        "radius_sum": rep.radius_sum,
        "delta": rep.delta,
    }


def _axioms_dict(rep):
    return {
        "a1": ["complement" if r < 0 else r for r in rep.a1],
        "a2": rep.a2,
        "a3": list(rep.a3),
        "surjective": rep.surjective,
        "pass": rep.passed,
    }


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------

def cmd_generate(args) -> int:
    kind = args.kind
    if kind == "carpet":
        c = generate.carpet_cheese(args.levels)
    elif kind == "random":
        c = generate.random_cheese(args.count, args.seed, args.budget, args.overlap_bias)
    else:
        n = 3 if args.count is None else args.count
        c = generate.adversarial_cheese(kind, n)
    _write(cheese_to_json(c) + "\n")
    return EXIT_OK


def cmd_classicalise(args) -> int:
    tol = _tolerance(args)
    c = _read_cheese(args.input)
    out, trace = classicalise(c, tol)
    if args.trace:
        _write(dumps(trace_to_dict(trace)) + "\n", args.trace)
    _write(cheese_to_json(out) + "\n")
    print(f"classicalise: {len(trace)} steps, {len(c)} -> {len(out)} discs", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    tol = _tolerance(args)
    c = _read_cheese(args.input)
    report = {}
    ok = True
    want_classical = args.classical or not (args.semiclassical or args.whyburn or args.map)
    if want_classical or args.semiclassical:
        rep = classify(c, tol)
        report["classify"] = _classify_dict(rep)
        if want_classical:
            ok &= rep.verdict is Verdict.CLASSICAL
        if args.semiclassical:
            ok &= rep.verdict is not Verdict.NEITHER
    if args.whyburn:
        w = whyburn_report(c, tol)
        report["whyburn"] = {
            "pairwise_disjoint_closures": w.pairwise_disjoint_closures,
            "closures_inside_interior": w.closures_inside_interior,
            "max_disc_radius": w.max_disc_radius,
            "area_deficit": w.area_deficit,
        }
        ok &= w.pairwise_disjoint_closures and w.closures_inside_interior
    if args.map:
        try:
            obj = json.loads(_read_text(args.map))
        except json.JSONDecodeError as exc:
            raise InvalidInputError(f"malformed trace JSON: {exc}") from None
        steps, overall = replay_trace(c, obj)
        step_reps = [check_axioms(s.map, tol) for s in steps]
        overall_rep = check_axioms(overall, tol)
        recomposed = compose_all(c, [s.map for s in steps])
        coherent = recomposed == overall
        report["map"] = {
            "steps": [_axioms_dict(r) for r in step_reps],
            "overall": _axioms_dict(overall_rep),
            "recomposition_matches": coherent,
        }
        ok &= overall_rep.passed and coherent and all(r.passed for r in step_reps)
    report["pass"] = bool(ok)
    _write(dumps(report) + "\n")
    return EXIT_OK if ok else EXIT_FAILED


def cmd_annihilate(args) -> int:
    tol = _tolerance(args)
    c = _read_cheese(args.input)
    f = analysis.rational_from_json(_read_text(args.fn))
    rep = analysis.annihilation_test(c, f, args.nodes, tol)
    report = {
        "value": [rep.value.real, rep.value.imag],
        "abs": abs(rep.value),
        "admissible": rep.admissible,
        "pass": rep.passed,
        "threshold": rep.threshold,
        "max_modulus": rep.max_modulus,
        "total_variation": rep.total_variation,
        "nodes": args.nodes,
    }
    _write(dumps(report) + "\n")
    if not rep.passed:
        return EXIT_FAILED
    if args.strict and not rep.admissible:
        return EXIT_FAILED
    return EXIT_OK


def cmd_render(args) -> int:
    opts = RenderOptions(width_px=args.width, show_boundary_chain=args.show_chain)
    c = _read_cheese(args.input)
    if args.compare:
        svg = render_comparison(c, _read_cheese(args.compare), opts)
    else:
        svg = render_svg(c, opts)
    _write(svg, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="swisscheese", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("generate", help="emit a generated cheese as JSON")
    g.add_argument("--kind", required=True, choices=["carpet", "random", "nested", "tangent", "fan"])
    g.add_argument("--levels", type=int, default=1, help="carpet levels K (0..6)")
    g.add_argument("--count", type=int, default=None, help="number of discs (random) or n (nested/tangent/fan)")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--budget", type=float, default=0.5, help="radius sum of a random cheese")
    g.add_argument("--overlap-bias", type=float, default=0.0)
    g.set_defaults(func=cmd_generate)

    c = sub.add_parser("classicalise", help="classicalise a cheese")
    c.add_argument("--in", dest="input", default="-")
    c.add_argument("--tol", type=float, default=None)
    c.add_argument("--trace", default=None, help="write the step trace JSON here")
    c.set_defaults(func=cmd_classicalise)

    v = sub.add_parser("verify", help="check classicality, Whyburn conditions or a trace")
    v.add_argument("--in", dest="input", default="-",
                   help="cheese to check; with --map, the cheese the trace starts from")
    v.add_argument("--classical", action="store_true")
    v.add_argument("--semiclassical", action="store_true")
    v.add_argument("--whyburn", action="store_true")
    v.add_argument("--map", default=None, metavar="TRACEFILE")
    v.add_argument("--tol", type=float, default=None)
    v.set_defaults(func=cmd_verify)

    a = sub.add_parser("annihilate", help="integrate a rational function over the boundary chain")
    a.add_argument("--in", dest="input", default="-")
    a.add_argument("--fn", required=True)
    a.add_argument("--nodes", type=int, default=512)
    a.add_argument("--tol", type=float, default=None)
    a.add_argument("--strict", action="store_true",
                   help="fail on inadmissible functions (poles inside the cheese set)")
    a.set_defaults(func=cmd_annihilate)

    r = sub.add_parser("render", help="render a cheese (or a before/after pair) as SVG")
    r.add_argument("--in", dest="input", default="-")
    r.add_argument("--compare", default=None, metavar="FILE2")
    r.add_argument("--out", default=None)
    r.add_argument("--width", type=int, default=800)
    r.add_argument("--show-chain", action="store_true")
    r.set_defaults(func=cmd_render)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.func is cmd_generate and args.kind == "random" and args.count is None:
        args.count = 10
    try:
        return args.func(args)
    except HypothesisError as exc:
        print(f"hypothesis violated: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except (QuadratureError, CheeseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
