"""Source files: a sequence of ``(def name expr)`` forms.

An expression denotes an object, a total map term, or a loop program
(partial map).  Names may refer to other definitions in any order as long
as the references are acyclic; library maps (add, sub, leq, ...) are
always in scope.
"""

from __future__ import annotations

import dataclasses
from typing import Any, Callable, Union

from . import core as C
from . import stdlib as S
from .errors import TermTypeError
from .sexpr import Atom, ParseError, SList, print_obj, print_term, read_all, read_one
from . import muwhile as M
from . import partial as P


class ResolveError(ValueError):
    def __init__(self, message, line=1, column=1):
        super().__init__(f"{line}:{column}: {message}")
        self.line, self.column = line, column


@dataclasses.dataclass
class SourceUnit:
    definitions: list  # of (name, datum)

    def names(self) -> list[str]:
        return [n for n, _ in self.definitions]


def parse(text: str) -> SourceUnit:
    """Read the definitions of a source file (syntax only, no resolution)."""
    try:
        data = read_all(text)
    except RecursionError:
        raise ParseError("expression nested too deeply") from None
    defs = []
    seen = set()
    for d in data:
        if not isinstance(d, SList) or d.head != "def":
            raise ParseError("expected (def <name> <expr>)", d.line, d.column)
        if len(d) != 3 or not isinstance(d[1], Atom):
            raise ParseError("def takes a name and one expression", d.line, d.column)
        name = d[1].text
        if name in seen:
            raise ParseError(f"duplicate definition of {name}", d[1].line, d[1].column)
        if name.isdigit():
            raise ParseError(f"a definition name cannot be a number: {name}", d[1].line, d[1].column)
        seen.add(name)
        defs.append((name, d[2]))
    return SourceUnit(defs)


# --------------------------------------------------------------------------- #
# builtins
# --------------------------------------------------------------------------- #

LIBRARY = {
    "zero": C.ZERO,
    "succ": C.SUCC,
    "add": S.add,
    "pre": S.pre,
    "sub": S.sub,
    "mult": S.mult,
    "exp": S.exp,
    "sign": S.sign,
    "neg": S.neg,
    "and": S.and_,
    "or": S.or_,
    "implies": S.implies,
    "leq": S.leq,
    "lt": S.lt,
    "eq": S.eq_nat,
    "max": S.max_,
    "tri": S.tri,
    "cantor-pair": S.cantor_pair,
    "cantor-unpair": S.cantor_unpair,
    "div": S.div,
    "mod": S.mod,
}

OBJECTS = {"one": C.ONE, "nat": C.NAT}

Value = Union[C.Obj, C.MapTerm, M.LoopProgram]


def kind(v) -> str:
    if isinstance(v, C.Obj):
        return "object"
    if isinstance(v, C.MapTerm):
        return "map"
    return "program"


class Resolver:
    """Turns data into objects, terms and programs, resolving names lazily."""

    def __init__(self, unit: SourceUnit, budget: P.Budget = P.DEFAULT_BUDGET):
        self.source = dict(unit.definitions)
        self.order = unit.names()
        self.values: dict[str, Any] = {}
        self.active: list[str] = []
        self.budget = budget

    def resolve_all(self) -> dict:
        for name in self.order:
            self.lookup(name, None)
        return {n: self.values[n] for n in self.order}

    def lookup(self, name, at):
        if name in self.values:
            return self.values[name]
        if name in self.active:
            cycle = " -> ".join(self.active[self.active.index(name):] + [name])
            line, col = (at.line, at.column) if at is not None else (1, 1)
            raise ResolveError(f"cyclic definitions: {cycle}", line, col)
        if name not in self.source:
            if name in LIBRARY:
                return LIBRARY[name]
            if name in OBJECTS:
                return OBJECTS[name]
            line, col = (at.line, at.column) if at is not None else (1, 1)
            raise ResolveError(f"unknown name: {name}", line, col)
        self.active.append(name)
        try:
            v = self.expr(self.source[name])
        finally:
            self.active.pop()
        self.values[name] = v
        return v

    # -- dispatch -----------------------------------------------------------

    def expr(self, d) -> Value:
        if isinstance(d, Atom):
            if d.is_nat:
                raise ParseError(f"a bare number is not an expression (use (num {d.text}))",
                                 d.line, d.column)
            return self.lookup(d.text, d)
        if len(d) == 0 or d.head is None:
            raise ParseError("expected a form (head ...)", d.line, d.column)
        form = _FORMS.get(d.head)
        if form is None:
            raise ResolveError(f"unknown form: {d.head}", d.line, d.column)
        arity, fn = form
        if len(d) - 1 != arity and not (arity < 0 and len(d) - 1 >= -arity):
            want = f"at least {-arity}" if arity < 0 else str(arity)
            raise ParseError(f"{d.head} takes {want} argument(s), got {len(d) - 1}",
                             d.line, d.column)
        try:
            return fn(self, *d.items[1:])
        except TermTypeError as exc:
            if getattr(exc, "located", False):
                raise
            err = TermTypeError(f"{d.line}:{d.column}: {exc.reason}", exc.path)
            err.located = True
            raise err from None

    def obj(self, d) -> C.Obj:
        v = self.expr(d)
        if not isinstance(v, C.Obj):
            raise ParseError(f"expected an object, got a {kind(v)}", d.line, d.column)
        return v

    def term(self, d) -> C.MapTerm:
        v = self.expr(d)
        if not isinstance(v, C.MapTerm):
            raise ParseError(f"expected a total map, got a {kind(v)}", d.line, d.column)
        return v

    def program(self, d) -> M.LoopProgram:
        v = self.expr(d)
        if isinstance(v, C.MapTerm):
            return M.Total(v)
        if isinstance(v, M.LoopProgram):
            return v
        raise ParseError(f"expected a map or program, got a {kind(v)}", d.line, d.column)

    def nat(self, d) -> int:
        if not isinstance(d, Atom) or not d.is_nat:
            raise ParseError("expected a natural number", d.line, d.column)
        return int(d.text)


def _obj_form(ctor):
    return lambda r, *args: ctor(*(r.obj(a) for a in args))


def _term_form(ctor):
    return lambda r, *args: ctor(*(r.term(a) for a in args))


def _sub(r, base, chi):
    return C.Sub(r.obj(base), r.term(chi))


def _comp(r, *args):
    return C.compose(*(r.term(a) for a in args))


MAX_NUMERAL = 100_000


def _numeral(r, d) -> int:
    k = r.nat(d)
    if k > MAX_NUMERAL:
        raise ParseError(f"numeral {k} exceeds {MAX_NUMERAL}", d.line, d.column)
    return k


def _num(r, k):
    return C.num(_numeral(r, k))


def _const(r, k, a):
    return C.const(_numeral(r, k), r.obj(a))


def _partial(r, dom, d, rule):
    D = r.obj(dom)
    d, rule = r.term(d), r.term(rule)
    return M.Given(P.mk_partial(C.cod(d), C.cod(rule), D, d, rule, r.budget))


def _pcomp(r, *args):
    progs = [r.program(a) for a in args]
    out = progs[-1]
    for p in reversed(progs[:-1]):
        out = M.PComp(p, out)
    M.program_type(out)
    return out


def _checked(ctor):
    def build(r, *args):
        p = ctor(*(r.program(a) for a in args))
        M.program_type(p)
        return p
    return build


def _mu(r, phi):
    return M.Mu(r.term(phi))


def _while(r, chi, body):
    p = M.While(r.term(chi), r.program(body))
    M.program_type(p)
    return p


def _lowered(fn: Callable):
    return lambda r, p: M.Given(fn(M.lower(r.program(p))))


def _normalize(r, p):
    return M.Given(M.normalize_single_mu(r.program(p)))


def _opposite(r, d, rule):
    return M.Given(P.opposite_min(r.term(d), r.term(rule)))


_FORMS: dict[str, tuple[int, Callable]] = {
    # objects
    "x": (2, _obj_form(C.Prod)),
    "sub": (2, _sub),
    # terms
    "id": (1, _obj_form(C.Id)),
    "bang": (1, _obj_form(C.Bang)),
    "diag": (1, _obj_form(C.Diag)),
    "proj-l": (2, _obj_form(C.ProjL)),
    "proj-r": (2, _obj_form(C.ProjR)),
    "incl": (2, _obj_form(C.Incl)),
    "comp": (-2, _comp),
    "prod": (2, _term_form(C.ProdMap)),
    "pair": (2, _term_form(C.pair)),
    "iter": (1, _term_form(C.Iter)),
    "pr": (2, _term_form(C.Pr)),
    "num": (1, _num),
    "const": (2, _const),
    "true": (1, _obj_form(C.true_)),
    "false": (1, _obj_form(C.false_)),
    "theta": (2, _obj_form(C.theta)),
    "ass": (3, _obj_form(C.ass)),
    "eq-obj": (1, _obj_form(S.eq_obj)),
    "cnt": (1, _obj_form(S.cnt)),
    "index": (1, _obj_form(S.index)),
    "bmin": (1, _term_form(S.bounded_min)),
    # partial maps and loop programs
    "partial": (3, _partial),
    "embed": (1, lambda r, f: M.Total(r.term(f))),
    "pcomp": (-2, _pcomp),
    "pprod": (2, _checked(M.PProd)),
    "pite": (1, _checked(M.PIter)),
    "mu": (1, _mu),
    "while": (2, _while),
    "murep": (1, _lowered(M.mu_represent)),
    "flatten": (1, _lowered(P.flatten)),
    "opposite": (2, _opposite),
    "normalize": (1, _normalize),
}


def load(text: str, budget: P.Budget = P.DEFAULT_BUDGET) -> dict:
    """Parse and resolve every definition of a source text."""
    unit = parse(text)
    try:
        return Resolver(unit, budget).resolve_all()
    except RecursionError:
        raise ParseError("expression nested too deeply") from None


def parse_expr(text: str, env: dict | None = None):
    """Resolve a single expression (library names plus ``env``)."""
    try:
        datum = read_one(text)
        r = Resolver(SourceUnit([]))
        if env:
            r.values.update(env)
        return r.expr(datum)
    except RecursionError:
        raise ParseError("expression nested too deeply") from None


def parse_term(text: str) -> C.MapTerm:
    v = parse_expr(text)
    if not isinstance(v, C.MapTerm):
        raise ParseError(f"expected a total map, got a {kind(v)}")
    return v


def parse_obj(text: str) -> C.Obj:
    v = parse_expr(text)
    if not isinstance(v, C.Obj):
        raise ParseError(f"expected an object, got a {kind(v)}")
    return v


def print_partial(f: P.PartialMap) -> str:
    """A partial map as a (partial D d rule) form."""
    return (f"(partial {print_obj(f.dom_def.obj)} {print_term(_enumeration_from(f))} "
            f"{print_term(_rule_from(f))})")


def _enumeration_from(f: P.PartialMap) -> C.MapTerm:
    return _from_dom(f, f.enumeration)


def _rule_from(f: P.PartialMap) -> C.MapTerm:
    return _from_dom(f, f.rule)


def _from_dom(f: P.PartialMap, t: C.MapTerm) -> C.MapTerm:
    # the stored terms live on the erased base; restate them on D itself
    if f.dom_def.obj == f.dom_def.base:
        return t
    return C.Comp(t, C.Incl(f.dom_def.obj, f.dom_def.base))


def describe(v) -> str:
    """One-line type description used by ``check``."""
    if isinstance(v, C.Obj):
        return f"object {print_obj(v)}"
    if isinstance(v, C.MapTerm):
        d, c = C.type_of(v)
        return f"{print_obj(d)} -> {print_obj(c)}"
    a, b = M.program_type(v)
    return f"{print_obj(a)} ~> {print_obj(b)}"
