"""Minimisation, while loops and the single-search normal form.

``mu(phi)`` is the partial map a |-> least n with phi(a, n), represented
without any unbounded quantifier: its definition domain is {A x N | phi},
and the rule is the bounded minimum below the enumerated witness.

Loop programs (total maps, minimisations, while loops and their
composites) lower to partial-map triples; ``normalize_single_mu`` turns
any of them into one search over a total predicate followed by total
post-processing.  ``interpret`` runs a program directly with native loops
and serves as the semantic reference.
"""

from __future__ import annotations

import dataclasses
import itertools
from typing import Optional, Union

from .abstraction import PredObject, _conj, as_pred, full, mk_pred_object
from .core import (
    NAT, Comp, Diag, Id, Iter, MapTerm, Obj, Prod, ProdMap, ProjL, ProjR,
    compose, erase, erase_term, pair, theta, type_of,
)
from .errors import TermTypeError
from .evaluate import DEFAULT_SAMPLES, SampleSpec, compile_term, samples
from .partial import (
    Budget, Defined, NoWitnessWithinFuel, PartialMap, _budget, _chain,
    _chain_code, _chase, _witnesses, apply_partial, compose_partial, embed,
    iterate_partial, product_partial, search,
)
from . import stdlib as S


def _predicate_on_an(phi: MapTerm) -> Obj:
    d, c = type_of(phi)
    if not isinstance(d, Prod) or d.right != NAT or c != NAT:
        raise TermTypeError(f"expected a predicate on A x nat, got {d!r} -> {c!r}")
    return d.left


def mu(phi: MapTerm, spec: Optional[SampleSpec] = DEFAULT_SAMPLES, plan=None) -> PartialMap:
    """The least-witness operator on phi: A x N -> 2.

    ``spec=None`` skips the sampled predicate check (for predicates built
    here from known predicates).
    """
    phi = erase_term(phi)
    a = _predicate_on_an(phi)
    an = Prod(a, NAT)
    if spec is not None:
        dom = mk_pred_object(an, phi, spec)
    else:
        dom = PredObject(an, phi)
    return PartialMap(full(a), full(NAT), dom, ProjL(a, NAT), S.bounded_min(phi), plan)


def _representing_predicate(f: PartialMap) -> MapTerm:
    """phi(a, n): cnt(n) lies in D_f and is enumerated onto a."""
    A, D = f.src.base, f.dom_def.base
    x = Comp(S.cnt(D), ProjR(A, NAT))
    return _conj(Comp(f.dom_def.chi, x),
                 Comp(S.eq_obj(A), pair(ProjL(A, NAT), Comp(f.enumeration, x))))


def mu_represent(f: PartialMap, least: bool = True) -> PartialMap:
    """f as a single search: (rule . cnt) after mu of the representing predicate.

    With ``least=False`` the search result is used as found instead of being
    minimised again; by right uniqueness every witness gives the same value,
    so both forms agree wherever the search succeeds.
    """
    A, D = f.src.base, f.dom_def.base
    phi = _representing_predicate(f)
    idx = compile_term(S.index(D))
    post = Comp(f.rule, S.cnt(D))

    def plan(a):
        for x in _witnesses(f, a):
            yield None if x is None else (a, idx(x))

    if least:
        m = mu(phi, None, plan)
        return compose_partial(embed(post, dst=f.dst), m)
    an = Prod(A, NAT)
    return PartialMap(f.src, f.dst, PredObject(an, phi), ProjL(A, NAT),
                      Comp(post, ProjR(A, NAT)), plan)


# --------------------------------------------------------------------------- #
# while loops
# --------------------------------------------------------------------------- #

def _loop_types(chi: MapTerm, f: MapTerm) -> Obj:
    a, b = type_of(f)
    if erase(a) != erase(b):
        raise TermTypeError(f"loop body must be an endo, got {a!r} -> {b!r}")
    a = erase(a)
    d, c = type_of(chi)
    if erase(d) != a or c != NAT:
        raise TermTypeError(f"loop condition must be {a!r} -> nat, got {d!r} -> {c!r}")
    return a


def stop_predicate(chi: MapTerm, f: MapTerm) -> MapTerm:
    """phi(a, n) = not chi(f^n a)."""
    return compose(S.neg, erase_term(chi), Iter(erase_term(f)))


def while_loop(chi: MapTerm, f: MapTerm) -> PartialMap:
    """wh[chi | f] = f^iter . (id, mu phi) with phi(a, n) = not chi(f^n a)."""
    A = _loop_types(chi, f)
    chi, f = erase_term(chi), erase_term(f)
    c, step = compile_term(chi), compile_term(f)

    def plan(a):
        x = a
        for n in itertools.count():
            if c(x) != 1:
                yield (a, n)
                return
            yield None
            x = step(x)

    m = mu(stop_predicate(chi, f), None, plan)
    pairing = compose_partial(product_partial(embed(Id(A)), m), embed(Diag(A)))
    return compose_partial(embed(Iter(f)), pairing)


def while_partial(chi: MapTerm, f: PartialMap) -> PartialMap:
    """wh[chi | f] for a partial body f.

    Its definition domain holds coded f-chains from a whose every state
    but the last satisfies chi and whose last state does not.
    """
    A = f.src.base
    if f.dst.base != A:
        raise TermTypeError(f"loop body must be an endo, got {f.src.obj!r} -> {f.dst.obj!r}")
    d, c = type_of(chi)
    if erase(d) != A or c != NAT:
        raise TermTypeError(f"loop condition must be {A!r} -> nat, got {d!r} -> {c!r}")
    chi = erase_term(chi)
    X, chained, final = _chain(f, guard=chi)
    stops = Comp(S.neg, Comp(chi, final))
    AN = Prod(A, NAT)
    encode = _chain_code(f)
    guard = compile_term(chi)

    def plan(a):
        for item in _chase(f, a, None, guard):
            if isinstance(item, list):
                yield ((a, len(item)), encode(item))
            else:
                yield None

    return PartialMap(f.src, f.dst, PredObject(X, _conj(chained, stops)),
                      Comp(ProjL(A, NAT), ProjL(AN, NAT)), final, plan)


@dataclasses.dataclass(frozen=True)
class DominatedDef:
    """Total tests for a loop: ``stops`` on N x A, ``result`` on (N x A) x A."""
    stops: MapTerm
    result: MapTerm


def dominated_def(chi: MapTerm, f: MapTerm) -> DominatedDef:
    """stops(m, a) = not chi(f^m a): the loop halts within m steps.

    result((m, a), b) additionally checks that the loop's value is b, found
    via the bounded minimum of the stop predicate below m.
    """
    A = _loop_types(chi, f)
    chi, f = erase_term(chi), erase_term(f)
    phi = stop_predicate(chi, f)
    stops = Comp(phi, theta(NAT, A))
    NA = Prod(NAT, A)
    m_a = ProjL(NA, A)
    an = Comp(theta(NAT, A), m_a)
    first = Comp(S.bounded_min(phi), an)
    value = Comp(Iter(f), pair(Comp(ProjL(A, NAT), an), first))
    same = Comp(S.eq_obj(A), pair(value, ProjR(NA, A)))
    return DominatedDef(stops, Comp(S.and_, pair(Comp(stops, m_a), same)))


@dataclasses.dataclass
class Characterisation:
    """Outcome of checking the two defining implications of a while loop."""
    holds: bool
    stopped: int = 0       # probes where not chi(a): wh(a) = a checked
    continued: int = 0     # probes where chi(a): wh(a) = wh(f a) checked
    skipped: int = 0       # probes that ran out of fuel
    counterexample: object = None

    def __bool__(self):
        return self.holds


def while_characterisation(chi: MapTerm, f: MapTerm, b=None) -> Characterisation:
    """not chi(a) => wh(a) = a, and chi(a) => wh(a) = wh(f a), on sampled a."""
    b = _budget(b)
    A = _loop_types(chi, f)
    wh = while_loop(chi, f)
    c, step = compile_term(erase_term(chi)), compile_term(erase_term(f))
    out = Characterisation(True)
    for a in samples(A, b.samples):
        r = apply_partial(wh, a, b)
        if c(a) != 1:
            if not isinstance(r, Defined):
                out.skipped += 1
            elif r.value != a:
                return Characterisation(False, out.stopped, out.continued, out.skipped, a)
            else:
                out.stopped += 1
            continue
        s = apply_partial(wh, step(a), b)
        if isinstance(r, Defined) and isinstance(s, Defined):
            if r.value != s.value:
                return Characterisation(False, out.stopped, out.continued, out.skipped, a)
            out.continued += 1
        else:
            out.skipped += 1
    return out


# --------------------------------------------------------------------------- #
# loop programs
# --------------------------------------------------------------------------- #

class LoopProgram:
    __slots__ = ()

    @property
    def type(self) -> tuple[Obj, Obj]:
        return program_type(self)


@dataclasses.dataclass(frozen=True)
class Total(LoopProgram):
    term: MapTerm


@dataclasses.dataclass(frozen=True)
class Mu(LoopProgram):
    phi: MapTerm


@dataclasses.dataclass(frozen=True)
class While(LoopProgram):
    chi: MapTerm
    body: Union[LoopProgram, MapTerm]

    def __post_init__(self):
        if isinstance(self.body, MapTerm):
            object.__setattr__(self, "body", Total(self.body))


@dataclasses.dataclass(frozen=True)
class PComp(LoopProgram):
    g: LoopProgram
    f: LoopProgram


@dataclasses.dataclass(frozen=True)
class PProd(LoopProgram):
    f: LoopProgram
    g: LoopProgram


@dataclasses.dataclass(frozen=True)
class PIter(LoopProgram):
    f: LoopProgram


@dataclasses.dataclass(frozen=True)
class Given(LoopProgram):
    """An explicitly constructed partial map used as a program leaf."""
    map: PartialMap


def program_type(p: LoopProgram) -> tuple[Obj, Obj]:
    """(source, target) as erased objects; raises TermTypeError when ill typed."""
    if isinstance(p, Total):
        d, c = type_of(p.term)
        return erase(d), erase(c)
    if isinstance(p, Mu):
        return _predicate_on_an(erase_term(p.phi)), NAT
    if isinstance(p, While):
        a, b = program_type(p.body)
        if a != b:
            raise TermTypeError(f"loop body must be an endo, got {a!r} -> {b!r}")
        d, c = type_of(p.chi)
        if erase(d) != a or c != NAT:
            raise TermTypeError(f"loop condition must be {a!r} -> nat, got {d!r} -> {c!r}")
        return a, a
    if isinstance(p, PComp):
        a, b = program_type(p.f)
        b2, c = program_type(p.g)
        if b != b2:
            raise TermTypeError(f"cannot compose: {b!r} is not {b2!r}")
        return a, c
    if isinstance(p, PProd):
        a, b = program_type(p.f)
        c, d = program_type(p.g)
        return Prod(a, c), Prod(b, d)
    if isinstance(p, PIter):
        a, b = program_type(p.f)
        if a != b:
            raise TermTypeError(f"iterated program must be an endo, got {a!r} -> {b!r}")
        return Prod(a, NAT), a
    if isinstance(p, Given):
        return p.map.src.base, p.map.dst.base
    raise TermTypeError(f"not a loop program: {p!r}")


def lower(p: LoopProgram) -> PartialMap:
    """The partial-map triple of a program, built from the combinators above."""
    program_type(p)
    if isinstance(p, Total):
        return embed(p.term)
    if isinstance(p, Mu):
        return mu(p.phi)
    if isinstance(p, While):
        if isinstance(p.body, Total):
            return while_loop(p.chi, p.body.term)
        return while_partial(p.chi, lower(p.body))
    if isinstance(p, PComp):
        return compose_partial(lower(p.g), lower(p.f))
    if isinstance(p, PProd):
        return product_partial(lower(p.f), lower(p.g))
    if isinstance(p, PIter):
        return iterate_partial(lower(p.f))
    return p.map


def normalize_single_mu(p: LoopProgram) -> PartialMap:
    """One search over a total predicate, then total post-processing.

    The result has definition domain {A x N | phi} for a total predicate
    phi, enumeration the left projection, and a total rule.
    """
    return mu_represent(lower(p), least=False)


class _Fuel:
    def __init__(self, n):
        self.left = n

    def tick(self):
        self.left -= 1
        return self.left >= 0


def interpret(p: LoopProgram, a, b=None):
    """Run a program with native loops; the reference semantics."""
    b = _budget(b)
    fuel = _Fuel(b.fuel)
    r = _run(p, a, fuel)
    if isinstance(r, NoWitnessWithinFuel):
        return NoWitnessWithinFuel(b.fuel, r.exhausted)
    return r


def _run(p, a, fuel: _Fuel):
    out_of_fuel = NoWitnessWithinFuel(0)
    if isinstance(p, Total):
        return Defined(compile_term(erase_term(p.term))(a))
    if isinstance(p, Mu):
        phi = compile_term(erase_term(p.phi))
        for n in itertools.count():
            if not fuel.tick():
                return out_of_fuel
            if phi((a, n)) == 1:
                return Defined(n)
    if isinstance(p, While):
        chi = compile_term(erase_term(p.chi))
        x = a
        while chi(x) == 1:
            if not fuel.tick():
                return out_of_fuel
            r = _run(p.body, x, fuel)
            if not isinstance(r, Defined):
                return r
            x = r.value
        return Defined(x)
    if isinstance(p, PComp):
        r = _run(p.f, a, fuel)
        return _run(p.g, r.value, fuel) if isinstance(r, Defined) else r
    if isinstance(p, PProd):
        r = _run(p.f, a[0], fuel)
        if not isinstance(r, Defined):
            return r
        s = _run(p.g, a[1], fuel)
        if not isinstance(s, Defined):
            return s
        return Defined((r.value, s.value))
    if isinstance(p, PIter):
        x, n = a
        for _ in range(n):
            if not fuel.tick():
                return out_of_fuel
            r = _run(p.f, x, fuel)
            if not isinstance(r, Defined):
                return r
            x = r.value
        return Defined(x)
    if isinstance(p, Given):
        if fuel.left <= 0:
            return out_of_fuel
        x, used, exhausted = search(p.map, a, fuel.left)
        fuel.left -= used
        if x is None:
            return NoWitnessWithinFuel(0, exhausted)
        return Defined(p.map.at(x))
    raise TermTypeError(f"not a loop program: {p!r}")
