"""Command line entry point: ``prcat <command> ...``.

Exit codes: 0 ok/true, 1 false or counterexample, 2 indeterminate (fuel ran
out), 3 usage, parse or type error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import core as C
from . import frontend as F
from . import laws
from . import muwhile as M
from . import partial as P
from .errors import (
    DomainError, NotAPredicate, NotIncluded, RightUniquenessViolation,
    SamplingError, TermTypeError, UnsupportedObject,
)
from .evaluate import SampleSpec, eq_on_samples, eval_term, format_value
from .sexpr import ParseError, parse_value

OK, FALSE, INDETERMINATE, ERROR = 0, 1, 2, 3

USER_ERRORS = (ParseError, F.ResolveError, TermTypeError, DomainError, NotAPredicate,
               NotIncluded, RightUniquenessViolation, SamplingError, UnsupportedObject)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {text}")
    return v


def _natural(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"must not be negative: {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--fuel", type=_positive, default=None,
                        help="search steps per fueled probe (default 100000)")
    common.add_argument("--samples", type=_positive, default=500)
    common.add_argument("--magnitude", type=_positive, default=1000)
    common.add_argument("--seed", type=_natural, default=0)

    p = _Parser(prog="prcat", description="Evaluate and check primitive recursive map terms.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("check", parents=[common], help="type-check a file and print types")
    c.add_argument("file")

    e = sub.add_parser("eval", parents=[common], help="evaluate a total map at a value")
    e.add_argument("file")
    e.add_argument("name")
    e.add_argument("value")

    a = sub.add_parser("apply", parents=[common], help="fueled application of a partial map")
    a.add_argument("file")
    a.add_argument("name")
    a.add_argument("value")

    q = sub.add_parser("equal", parents=[common], help="sampled equality of two definitions")
    q.add_argument("file")
    q.add_argument("name1")
    q.add_argument("name2")

    n = sub.add_parser("normalize", parents=[common], help="print the single-search normal form")
    n.add_argument("file")
    n.add_argument("name")

    s = sub.add_parser("selftest", parents=[common], help="run the law suites")
    s.add_argument("--json", action="store_true", help="one JSON object per suite")
    s.add_argument("--suite", action="append", choices=laws.SUITE_NAMES,
                   help="run only this suite (repeatable)")
    return p


# --------------------------------------------------------------------------- #

def _load(args) -> dict:
    try:
        with open(args.file, encoding="utf-8") as fh:
            text = fh.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise UsageError(f"cannot read {args.file}: {exc}") from None
    return F.load(text, _budget(args))


def _budget(args) -> P.Budget:
    fuel = P.DEFAULT_BUDGET.fuel if args.fuel is None else args.fuel
    return P.Budget(fuel, SampleSpec(args.samples, args.seed, args.magnitude))


def _get(defs: dict, name: str):
    if name in defs:
        return defs[name]
    if name in F.LIBRARY:
        return F.LIBRARY[name]
    raise UsageError(f"no definition named {name}")


def _as_partial(v) -> P.PartialMap:
    if isinstance(v, C.MapTerm):
        v = M.Total(v)
    if not isinstance(v, M.LoopProgram):
        raise UsageError(f"expected a map or program, got an {F.kind(v)}")
    return M.lower(v)


def cmd_check(args, out) -> int:
    for name, v in _load(args).items():
        print(f"{name} : {F.describe(v)}", file=out)
    return OK


def cmd_eval(args, out) -> int:
    t = _get(_load(args), args.name)
    if not isinstance(t, C.MapTerm):
        raise UsageError(f"{args.name} is not a total map (it is a {F.kind(t)}); use apply")
    print(format_value(eval_term(t, parse_value(args.value))), file=out)
    return OK


def cmd_apply(args, out) -> int:
    defs = _load(args)
    f = _as_partial(_get(defs, args.name))
    r = P.apply_partial(f, parse_value(args.value), _budget(args))
    print(r, file=out)
    return OK if isinstance(r, P.Defined) else INDETERMINATE


def cmd_equal(args, out) -> int:
    defs = _load(args)
    f, g = _get(defs, args.name1), _get(defs, args.name2)
    b = _budget(args)
    if isinstance(f, C.MapTerm) and isinstance(g, C.MapTerm):
        if C.type_of(f) != C.type_of(g):
            raise TermTypeError(f"{args.name1} and {args.name2} have different types")
        chk = eq_on_samples(f, g, b.samples)
        if chk.ok:
            print(f"equal on {chk.checked} samples", file=out)
            return OK
        x, fx, gx = chk.counterexample
        print(f"counterexample {format_value(x)}: {args.name1} = {format_value(fx)}, "
              f"{args.name2} = {format_value(gx)}", file=out)
        return FALSE
    v = P.partial_equal(_as_partial(f), _as_partial(g), b)
    if v.holds:
        print(f"equal on {v.checked} probes", file=out)
        return OK
    if v.fails:
        print(f"counterexample {format_value(v.witness)}", file=out)
        return FALSE
    print(f"indeterminate: {v.indeterminate} of {v.checked} probes ran out of fuel", file=out)
    return INDETERMINATE


def cmd_normalize(args, out) -> int:
    v = _get(_load(args), args.name)
    if isinstance(v, C.MapTerm):
        v = M.Total(v)
    if not isinstance(v, M.LoopProgram):
        raise UsageError(f"expected a map or program, got an {F.kind(v)}")
    print(F.print_partial(M.normalize_single_mu(v)), file=out)
    return OK


def cmd_selftest(args, out) -> int:
    results = laws.run_all(args.seed, args.samples, args.fuel, args.suite)
    for r in results:
        if args.json:
            print(json.dumps(r.as_json(), sort_keys=False), file=out)
        else:
            print(r.line(), file=out)
    if any(r.failed for r in results):
        return FALSE
    if any(r.indeterminate for r in results):
        return INDETERMINATE
    return OK


COMMANDS = {"check": cmd_check, "eval": cmd_eval, "apply": cmd_apply, "equal": cmd_equal,
            "normalize": cmd_normalize, "selftest": cmd_selftest}


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 20_000))
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"prcat: {exc}", file=err)
        return ERROR
    except USER_ERRORS as exc:
        print(f"prcat: {type(exc).__name__}: {exc}", file=err)
        return ERROR
    except RecursionError:
        print("prcat: term nested too deeply", file=err)
        return ERROR
    finally:
        sys.setrecursionlimit(limit)


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
