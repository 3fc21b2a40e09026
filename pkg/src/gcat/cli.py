"""Command-line front end.

Exit codes: 0 success, 1 invalid input (or a search budget ran out),
2 a checked lemma failed or a verify suite had failing cases, 64 usage error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import io
from .colimits import (
    dwyer_violations,
    dwyer_witness,
    is_cosieve,
    is_sieve,
    pushout_along_dwyer,
    pushout_oracle,
    sequential_colimit,
)
from .errors import BudgetExceeded, LemmaFailure, ValidationError
from .fincat import pullback
from .gaction import fixed_category, lambda_, phi, tensor
from .group import coset_gset, orbit_category
from .homology import compare_homology, homology
from .sset import categorify, ex, generating_cell, nerve, sd, truncate
from .suites import SUITES, run_suite

EXIT_OK, EXIT_INVALID, EXIT_LEMMA, EXIT_USAGE = 0, 1, 2, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _u64(text: str) -> int:
    v = int(text)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return v


def _positive(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def _global_flags() -> argparse.ArgumentParser:
    # SUPPRESS so that the flags work before or after the subcommand
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--seed", type=_u64, default=argparse.SUPPRESS, help="random seed (default 0)")
    p.add_argument("--out", default=argparse.SUPPRESS, help="write the result here instead of stdout")
    p.add_argument("--max-dim", type=_positive, default=argparse.SUPPRESS, help="truncation dimension")
    p.add_argument("--budget", type=_positive, default=argparse.SUPPRESS, help="search/closure step budget")
    p.add_argument("--jobs", type=_positive, default=argparse.SUPPRESS, help="worker processes for verify")
    return p


def _opt(args, name, default=None):
    return getattr(args, name, default)


def _emit(args, obj) -> None:
    text = io.dumps(obj)
    out = _opt(args, "out")
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _budget(args) -> dict:
    b = _opt(args, "budget")
    return {} if b is None else {"budget": b}


# ---------------------------------------------------------------- commands

def cmd_validate(args):
    obj = io.load(args.file, args.kind)
    kind = io.to_manifest(obj)["kind"]
    print(f"ok: valid {kind}")


def cmd_fixed_points(args):
    X = io.load(args.action, "gaction")
    _emit(args, fixed_category(X, args.subgroup))


def cmd_orbit_cat(args):
    _emit(args, orbit_category(io.load(args.group, "group")).category)


def cmd_phi(args):
    _emit(args, phi(io.load(args.action, "gaction")))


def cmd_lambda(args):
    _emit(args, lambda_(io.load(args.diagram, "ogdiagram")))


def cmd_tensor(args):
    G = io.load(args.group, "group")
    A = io.load(args.category, "category")
    _emit(args, tensor(coset_gset(G, args.subgroup), A))


def cmd_nerve(args):
    _emit(args, nerve(io.load(args.category, "category"), _opt(args, "max_dim")))


def cmd_sd(args):
    _emit(args, sd(io.load(args.sset, "sset")))


def cmd_categorify(args):
    _emit(args, categorify(io.load(args.sset, "sset"), **_budget(args)))


def cmd_gen_cell(args):
    _emit(args, generating_cell(args.m, args.k, args.target, **_budget(args)))


def cmd_ex(args):
    _emit(args, ex(io.load(args.sset, "sset"), _opt(args, "max_dim", 3), **_budget(args)))


def cmd_sieve_check(args):
    i = io.load(args.functor, "functor")
    _emit(args, {"sieve": is_sieve(i, i.target), "cosieve": is_cosieve(i, i.target)})


def cmd_dwyer_check(args):
    i = io.load(args.functor, "functor")
    wit = dwyer_witness(i)
    report = {"dwyer": wit is not None}
    if wit is not None:
        report.update({"cosieve": list(wit.cosieve), "retraction": dict(wit.r.ob), "counit": dict(wit.eps),
                       "violations": [list(v) for v in dwyer_violations(i, wit)]})
    _emit(args, report)
    return EXIT_OK if wit is not None else EXIT_INVALID


def cmd_pushout(args):
    i = io.load(args.along, "functor")
    F = io.load(args.functor, "functor")
    _emit(args, pushout_along_dwyer(i, F).category)


def cmd_pushout_oracle(args):
    i = io.load(args.along, "functor")
    F = io.load(args.functor, "functor")
    _emit(args, pushout_oracle(i, F, **_budget(args)).category)


def cmd_seq_colim(args):
    maps = [io.load(p, "functor") for p in args.functors]
    _emit(args, sequential_colimit(maps).category)


def cmd_pullback(args):
    P, _, _ = pullback(io.load(args.left, "functor"), io.load(args.right, "functor"))
    _emit(args, P)


def _load_sset_or_nerve(args, d):
    if args.sset:
        X = io.load(args.sset, "sset")
        return X if d is None else truncate(X, d)
    return nerve(io.load(args.category, "category"), d)


def cmd_homology(args):
    d = _opt(args, "max_dim")
    if args.category and d is None:
        raise UsageError("homology of a nerve needs --max-dim")
    X = _load_sset_or_nerve(args, d)
    degrees = homology(X, include_top=args.include_top)
    if args.json or _opt(args, "out"):
        _emit(args, {"dim": X.dim, "degrees": [g.as_dict() for g in degrees]})
    else:
        for g in degrees:
            print(g)


def cmd_compare_homology(args):
    F = io.load(args.functor, "functor")
    _emit(args, compare_homology(F, _opt(args, "max_dim", 3)).as_dict())


def cmd_verify(args):
    report = run_suite(args.suite, _opt(args, "seed", 0), args.cases, _opt(args, "jobs", 1) or 1)
    _emit(args, report)
    print(f"{report['suite']}: {report['passed']}/{report['cases']} passed", file=sys.stderr)
    return EXIT_OK if report["ok"] else EXIT_LEMMA


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    flags = _global_flags()
    parser = _Parser(prog="gcat", description="Finite G-categories, nerves and pushouts.", parents=[flags])
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    def add(name, fn, help_):
        p = sub.add_parser(name, help=help_, parents=[flags])
        p.set_defaults(fn=fn)
        return p

    p = add("validate", cmd_validate, "check a manifest file")
    p.add_argument("file")
    p.add_argument("--kind", choices=io.KINDS)

    p = add("fixed-points", cmd_fixed_points, "H-fixed subcategory of a G-category")
    p.add_argument("--action", required=True)
    p.add_argument("--subgroup", required=True, help="subgroup name such as H1")

    p = add("orbit-cat", cmd_orbit_cat, "orbit category of a group")
    p.add_argument("--group", required=True)

    p = add("phi", cmd_phi, "diagram of fixed-point categories")
    p.add_argument("--action", required=True)

    p = add("lambda", cmd_lambda, "G-category from a diagram")
    p.add_argument("--diagram", required=True)

    p = add("tensor", cmd_tensor, "G/K tensor A")
    p.add_argument("--group", required=True)
    p.add_argument("--subgroup", required=True)
    p.add_argument("--category", required=True)

    p = add("nerve", cmd_nerve, "truncated nerve of a category")
    p.add_argument("--category", required=True)

    p = add("sd", cmd_sd, "barycentric subdivision")
    p.add_argument("--sset", required=True)

    p = add("categorify", cmd_categorify, "category presented by a simplicial set")
    p.add_argument("--sset", required=True)

    p = add("gen-cell", cmd_gen_cell, "generating cell cSd² of a boundary or horn inclusion")
    p.add_argument("--m", type=_positive, required=True)
    p.add_argument("--k", type=_positive)
    p.add_argument("--target", choices=("delta", "boundary"), default="delta")

    p = add("ex", cmd_ex, "Ex of a simplicial set")
    p.add_argument("--sset", required=True)

    for name, fn, help_ in (("sieve-check", cmd_sieve_check, "is the image a sieve / cosieve"),
                            ("dwyer-check", cmd_dwyer_check, "find a Dwyer witness")):
        p = add(name, fn, help_)
        p.add_argument("--functor", required=True)

    for name, fn, help_ in (("pushout", cmd_pushout, "explicit pushout along a Dwyer sieve"),
                            ("pushout-oracle", cmd_pushout_oracle, "pushout by presentation")):
        p = add(name, fn, help_)
        p.add_argument("--along", required=True, help="the Dwyer inclusion A → B")
        p.add_argument("--functor", required=True, help="the functor A → C")

    p = add("seq-colim", cmd_seq_colim, "colimit of a chain of injective functors")
    p.add_argument("functors", nargs="+")

    p = add("pullback", cmd_pullback, "pullback of a cospan")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)

    p = add("homology", cmd_homology, "integer homology")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--sset")
    src.add_argument("--category", help="use the nerve, truncated at --max-dim")
    p.add_argument("--include-top", action="store_true", help="also report the top degree (a bound only)")
    p.add_argument("--json", action="store_true")

    p = add("compare-homology", cmd_compare_homology, "compare homology of the nerves of a functor's ends")
    p.add_argument("--functor", required=True)

    p = add("verify", cmd_verify, "run a seeded verification suite")
    p.add_argument("suite", help=", ".join(SUITES))
    p.add_argument("--cases", type=_positive, default=20)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    try:
        code = args.fn(args)
    except UsageError as e:
        print(f"gcat: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except LemmaFailure as e:
        print(f"gcat: lemma check failed: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_LEMMA
    except ValidationError as e:
        print(f"gcat: invalid input: {e}", file=sys.stderr)
        return EXIT_INVALID
    except BudgetExceeded as e:
        print(f"gcat: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INVALID
    except (OSError, ValueError) as e:
        print(f"gcat: error: {e}", file=sys.stderr)
        return EXIT_INVALID
    return EXIT_OK if code is None else code


if __name__ == "__main__":
    sys.exit(main())
