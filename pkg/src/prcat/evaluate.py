"""Big-step evaluation of total map terms, plus sampled extensional checks.

Values are plain Python data: ``()`` for the point of 1, ``int`` for
naturals (arbitrary precision) and 2-tuples for pairs.

Terms are compiled once into Python functions (straight-line fragments
become inline expressions, see ``_Codegen``).  Three rewrites keep evaluation
cheap without changing results:

* iterating a successor chain ``s^k`` is the closed form ``a + k*n``;
* an iteration stops early once it reaches a fixed point of the step;
* a recursion whose step map never reads the recursive value only
  evaluates its last step.

Named library terms may additionally carry a native "jet"; every jet is
cross-checked against the jet-free evaluator by the test suite, and
``jets=False`` switches them off.
"""

from __future__ import annotations

import dataclasses
import math
import random
import re
from typing import Any, Callable

from .core import (
    NAT, ONE, Bang, Comp, Diag, Id, Incl, Iter, MapTerm, Nat, Obj, Pr,
    Prod, ProdMap, ProjL, ProjR, Sub, Succ, Unit, Zero, type_of, pair, ZERO,
)
from .errors import DomainError, SamplingError, TermTypeError

Value = Any

_JETS: dict[MapTerm, Callable[[Value], Value]] = {}
_COMPILED: dict[tuple[MapTerm, bool], Callable[[Value], Value]] = {}


def register_jet(term: MapTerm, fn: Callable[[Value], Value],
                 invalidate: bool = True) -> None:
    """Use ``fn`` in place of ``term`` when jets are on.

    Already compiled code is dropped so it picks the jet up; pass
    ``invalidate=False`` for a freshly built term nothing can have inlined yet.
    """
    type_of(term)
    _JETS[term] = fn
    if invalidate:
        for key in [k for k in _COMPILED if k[1]]:
            del _COMPILED[key]


def jets() -> dict:
    return dict(_JETS)


# --------------------------------------------------------------------------- #
# usage analysis: which parts of its input does a term read?
#   None = nothing, True = everything, (l, r) = per component
# --------------------------------------------------------------------------- #

def _join(u, v):
    if u is None:
        return v
    if v is None:
        return u
    if u is True or v is True:
        return True
    return _norm((_join(u[0], v[0]), _join(u[1], v[1])))


def _norm(u):
    if isinstance(u, tuple):
        if u[0] is None and u[1] is None:
            return None
    return u


def _split(u):
    if u is None:
        return None, None
    if u is True:
        return True, True
    return u


def pull(t: MapTerm, out=True):
    """Input usage of ``t`` given that ``out`` of its output is consumed."""
    if out is None:
        return None
    if isinstance(t, (Id, Incl)):
        return out
    if isinstance(t, (Zero, Bang)):
        return None
    if isinstance(t, Succ):
        return True
    if isinstance(t, Diag):
        l, r = _split(out)
        return _join(l, r)
    if isinstance(t, ProjL):
        return _norm((out, None))
    if isinstance(t, ProjR):
        return _norm((None, out))
    if isinstance(t, Comp):
        return pull(t.f, pull(t.g, out))
    if isinstance(t, ProdMap):
        l, r = _split(out)
        return _norm((pull(t.f, l), pull(t.g, r)))
    return True


def reads_recursion_value(h: MapTerm) -> bool:
    used = pull(h, True)
    return not (isinstance(used, tuple) and used[1] is None)


def _succ_chain(t: MapTerm):
    """k if t is s^k (with identities interspersed) on N, else None."""
    if isinstance(t, Succ):
        return 1
    if isinstance(t, Id) and t.obj == NAT:
        return 0
    if isinstance(t, Comp):
        a = _succ_chain(t.g)
        if a is not None:
            b = _succ_chain(t.f)
            if b is not None:
                return a + b
    return None


# --------------------------------------------------------------------------- #
# compilation
# --------------------------------------------------------------------------- #

def compile_term(t: MapTerm, jets: bool = True) -> Callable[[Value], Value]:
    key = (t, jets)
    fn = _COMPILED.get(key)
    if fn is None:
        fn = _compile(t, jets)
        _COMPILED[key] = fn
    return fn


def _ident(v):
    return v


_ATOM = re.compile(r"[A-Za-z_][A-Za-z_0-9]*(\[[01]\])*|\d+|\(\)")


class _Codegen:
    """Emit a Python function for a term.

    Straight-line fragments (identities, projections, pairing, successor,
    constants) become inline expressions.  Values are tracked as
    representations: a string holding a Python expression, or a 2-tuple of
    representations for a pair that has not been built yet, so projecting a
    pair never evaluates the discarded half.  Iteration, recursion, checked
    inclusions and jets are called out to separately compiled functions.
    """

    def __init__(self, jets):
        self.jets = jets
        self.lines = []
        self.env = {}
        self.count = 0

    def fresh(self, prefix):
        self.count += 1
        return f"{prefix}{self.count}"

    def materialise(self, rep):
        if isinstance(rep, tuple):
            rep = f"({self.materialise(rep[0])}, {self.materialise(rep[1])})"
        if rep.count("(") > 40:
            # keep generated expressions shallow enough for the parser
            name = self.fresh("t")
            self.lines.append(f"{name} = {rep}")
            return name
        return rep

    def share(self, rep):
        if isinstance(rep, tuple):
            return (self.share(rep[0]), self.share(rep[1]))
        if _ATOM.fullmatch(rep):
            return rep
        name = self.fresh("t")
        self.lines.append(f"{name} = {rep}")
        return name

    def call(self, fn, rep):
        name = self.fresh("f")
        self.env[name] = fn
        return f"{name}({self.materialise(rep)})"

    def emit(self, t, rep):
        if self.jets and t in _JETS:
            return self.call(_JETS[t], rep)
        if isinstance(t, Id):
            return rep
        if isinstance(t, Zero):
            return "0"
        if isinstance(t, Bang):
            return "()"
        if isinstance(t, Succ):
            return f"({self.materialise(rep)} + 1)"
        if isinstance(t, Diag):
            r = self.share(rep)
            return (r, r)
        if isinstance(t, (ProjL, ProjR)):
            i = 0 if isinstance(t, ProjL) else 1
            if isinstance(rep, tuple):
                return rep[i]
            return f"{self.share(rep)}[{i}]"
        if isinstance(t, Comp):
            k = _succ_chain(t)
            if k:
                return f"({self.materialise(rep)} + {k})"
            return self.emit(t.g, self.emit(t.f, rep))
        if isinstance(t, ProdMap):
            if not isinstance(rep, tuple):
                r = self.share(rep)
                rep = (f"{r}[0]", f"{r}[1]")
            return (self.emit(t.f, rep[0]), self.emit(t.g, rep[1]))
        if isinstance(t, Iter):
            k = _succ_chain(t.f)
            if k is not None:
                if not isinstance(rep, tuple):
                    r = self.share(rep)
                    rep = (f"{r}[0]", f"{r}[1]")
                a, n = (self.materialise(x) for x in rep)
                return f"({a} + {k} * {n})" if k != 1 else f"({a} + {n})"
            return self.call(_iterate(compile_term(t.f, self.jets)), rep)
        if isinstance(t, Pr):
            return self.call(_recursion(t, self.jets), rep)
        if isinstance(t, Incl):
            if _has_sub(t.dst):
                return self.call(_checked_inclusion(t.dst, self.jets), rep)
            return rep
        raise TermTypeError(f"not a map term: {t!r}")


def _iterate(f):
    def iterate(v):
        x, n = v
        for _ in range(n):
            y = f(x)
            if y == x:
                break
            x = y
        return x
    return iterate


def _recursion(t: Pr, jets):
    g = compile_term(t.g, jets)
    h = compile_term(t.h, jets)
    if not reads_recursion_value(t.h):
        def last_step(v):
            a, n = v
            if n == 0:
                return g(a)
            return h(((a, n - 1), None))
        return last_step

    def recurse(v):
        a, n = v
        acc = g(a)
        for i in range(n):
            acc = h(((a, i), acc))
        return acc
    return recurse


def _checked_inclusion(dst, jets):
    def include(v):
        if not inhabits(v, dst, jets):
            raise DomainError(f"{format_value(v)} is not in {dst!r}")
        return v
    return include


def _compile(t: MapTerm, jets: bool):
    if isinstance(t, Id) or (isinstance(t, Incl) and not _has_sub(t.dst)):
        return _ident
    gen = _Codegen(jets)
    out = gen.materialise(gen.emit(t, "v"))
    body = "".join(f"    {line}\n" for line in gen.lines)
    src = f"def compiled(v):\n{body}    return {out}\n"
    exec(src, gen.env)
    fn = gen.env["compiled"]
    fn.source = src
    return fn


def _has_sub(obj: Obj) -> bool:
    if isinstance(obj, Sub):
        return True
    if isinstance(obj, Prod):
        return _has_sub(obj.left) or _has_sub(obj.right)
    return False


# --------------------------------------------------------------------------- #
# values
# --------------------------------------------------------------------------- #

def inhabits(v: Value, obj: Obj, jets: bool = True) -> bool:
    if isinstance(obj, Unit):
        return v == ()
    if isinstance(obj, Nat):
        return isinstance(v, int) and not isinstance(v, bool) and v >= 0
    if isinstance(obj, Prod):
        return (isinstance(v, tuple) and len(v) == 2
                and inhabits(v[0], obj.left, jets) and inhabits(v[1], obj.right, jets))
    if isinstance(obj, Sub):
        return inhabits(v, obj.base, jets) and compile_term(obj.chi, jets)(v) == 1
    return False


def eval_term(t: MapTerm, v: Value, jets: bool = True) -> Value:
    """Evaluate ``t`` at ``v``; raises DomainError if ``v`` is outside dom(t)."""
    d, _ = type_of(t)
    if not inhabits(v, d, jets):
        raise DomainError(f"{format_value(v)} does not inhabit {d!r}")
    return compile_term(t, jets)(v)


def format_value(v: Value) -> str:
    if v == ():
        return "()"
    if isinstance(v, tuple):
        return f"({format_value(v[0])} . {format_value(v[1])})"
    return str(v)


# --------------------------------------------------------------------------- #
# sampling
# --------------------------------------------------------------------------- #

@dataclasses.dataclass(frozen=True)
class SampleSpec:
    count: int = 500
    seed: int = 0
    magnitude: int = 1000

    def __post_init__(self):
        if self.count < 1 or self.magnitude < 1:
            raise ValueError("count and magnitude must be positive")


DEFAULT_SAMPLES = SampleSpec()


def sample_nat(rng: random.Random, magnitude: int) -> int:
    """Geometric-ish natural in [0, magnitude]: a quarter of draws are
    small boundary values, the rest log-uniform over the whole range."""
    if rng.random() < 0.25:
        return rng.randint(0, min(16, magnitude))
    x = math.exp(rng.random() * math.log(magnitude + 1)) - 1
    return min(magnitude, int(x))


def _draw(obj: Obj, rng, magnitude, forced, jets, budget):
    if isinstance(obj, Unit):
        return ()
    if isinstance(obj, Nat):
        return min(forced, magnitude) if forced is not None else sample_nat(rng, magnitude)
    if isinstance(obj, Prod):
        return (_draw(obj.left, rng, magnitude, forced, jets, budget),
                _draw(obj.right, rng, magnitude, forced, jets, budget))
    if isinstance(obj, Sub):
        chi = compile_term(obj.chi, jets)
        while budget[0] > 0:
            budget[0] -= 1
            v = _draw(obj.base, rng, magnitude, forced, jets, budget)
            forced = None
            if chi(v) == 1:
                return v
        raise SamplingError(f"no inhabitant of {obj!r} found")
    raise TypeError(obj)


def samples(obj: Obj, spec: SampleSpec = DEFAULT_SAMPLES, jets: bool = True) -> list:
    """Deterministic sample of ``spec.count`` inhabitants of ``obj``.

    The first three draws set every natural leaf to 0, 1 and 2.  Subobjects
    are rejection sampled with at most count*64 attempts in total; if none is
    found SamplingError is raised, otherwise whatever was found is returned.
    """
    rng = random.Random(spec.seed)
    budget = [spec.count * 64]
    out = []
    for i in range(spec.count):
        try:
            out.append(_draw(obj, rng, spec.magnitude, i if i < 3 else None, jets, budget))
        except SamplingError:
            if not out:
                raise
            break
    return out


# --------------------------------------------------------------------------- #
# extensional checks
# --------------------------------------------------------------------------- #

@dataclasses.dataclass
class Check:
    """Outcome of a sampled check; truthy iff it held."""
    ok: bool
    counterexample: Any = None
    checked: int = 0
    note: str = ""

    def __bool__(self):
        return self.ok


def eq_on_samples(f: MapTerm, g: MapTerm, spec: SampleSpec = DEFAULT_SAMPLES,
                  jets: bool = True, points=None) -> Check:
    """Compare f and g pointwise on generated inhabitants of their domain.

    The counterexample is ``(x, f(x), g(x))``.
    """
    tf, tg = type_of(f), type_of(g)
    if tf != tg:
        raise TermTypeError(f"cannot compare {tf!r} with {tg!r}")
    ff, gg = compile_term(f, jets), compile_term(g, jets)
    pts = samples(tf[0], spec, jets) if points is None else points
    for x in pts:
        a, b = ff(x), gg(x)
        if a != b:
            return Check(False, (x, a, b), len(pts))
    return Check(True, None, len(pts))


HOLDS = "holds"
FAILS = "fails"
VACUOUS = "vacuous"


@dataclasses.dataclass
class FreydOutcome:
    verdict: str
    counterexample: Any = None

    def __bool__(self):
        return self.verdict != FAILS

    @property
    def vacuous(self):
        return self.verdict == VACUOUS


def freyd_check(f: MapTerm, g: MapTerm, h: MapTerm,
                spec: SampleSpec = DEFAULT_SAMPLES, jets: bool = True) -> FreydOutcome:
    """Freyd uniqueness of the initialised iterated, on samples.

    If h satisfies h . (id, 0!) = f and h . (A x s) = g . h then h must equal
    g^iter . (f x N).  Returns ``vacuous`` when a premise fails on a sample.
    """
    a, b = type_of(f)
    if type_of(g) != (b, b):
        raise TermTypeError(f"step must be an endo on {b!r}")
    if type_of(h) != (Prod(a, NAT), b):
        raise TermTypeError(f"h must be {Prod(a, NAT)!r} -> {b!r}")
    init = Comp(h, pair(Id(a), Comp(ZERO, Bang(a))))
    chk = eq_on_samples(init, f, spec, jets)
    if not chk:
        return FreydOutcome(VACUOUS, ("init", chk.counterexample))
    step_l = Comp(h, ProdMap(Id(a), Succ()))
    step_r = Comp(g, h)
    chk = eq_on_samples(step_l, step_r, spec, jets)
    if not chk:
        return FreydOutcome(VACUOUS, ("step", chk.counterexample))
    conclusion = Comp(Iter(g), ProdMap(f, Id(NAT)))
    chk = eq_on_samples(h, conclusion, spec, jets)
    if not chk:
        return FreydOutcome(FAILS, chk.counterexample)
    return FreydOutcome(HOLDS)
