"""Predicate subobjects {A | chi} and maps between them.

A map {A | chi} -> {B | psi} is an ordinary term A -> B that carries chi
into psi; two such maps are equal when they agree wherever chi holds.
Both facts are undecidable in general, so they are checked on samples and
the SampleSpec used is kept with the result as evidence.
"""

from __future__ import annotations

import dataclasses
from typing import Optional

from .core import (
    NAT, Comp, Incl, MapTerm, Obj, Prod, ProjL, ProjR, Sub, erase, erase_term,
    is_fundamental, pair, true_, type_of,
)
from .errors import NotAPredicate, NotIncluded, TermTypeError
from .evaluate import (
    DEFAULT_SAMPLES, Check, SampleSpec, compile_term, eq_on_samples, samples,
)
from . import stdlib


@dataclasses.dataclass(frozen=True)
class PredObject:
    base: Obj
    chi: MapTerm
    evidence: Optional[SampleSpec] = dataclasses.field(default=None, compare=False)

    @property
    def obj(self) -> Obj:
        if self.chi == true_(self.base):
            return self.base
        return Sub(self.base, self.chi)

    @property
    def is_full(self) -> bool:
        return self.chi == true_(self.base)

    def contains(self, v) -> bool:
        return compile_term(self.chi)(v) == 1

    def __mul__(self, other: "PredObject") -> "PredObject":
        return PredObject(Prod(self.base, other.base),
                          _conj(Comp(self.chi, ProjL(self.base, other.base)),
                                Comp(other.chi, ProjR(self.base, other.base))))

    def __repr__(self):
        return f"PredObject({self.obj!r})"


def _conj(p: MapTerm, q: MapTerm) -> MapTerm:
    d = type_of(p)[0]
    if p == true_(d):
        return q
    if q == true_(d):
        return p
    return Comp(stdlib.and_, pair(p, q))


def predicate_of(obj: Obj) -> MapTerm:
    """The predicate on erase(obj) that carves out obj."""
    base = erase(obj)
    if isinstance(obj, Sub):
        return _conj(predicate_of(obj.base), erase_term(obj.chi))
    if isinstance(obj, Prod):
        l, r = obj.left, obj.right
        el, er = erase(l), erase(r)
        return _conj(Comp(predicate_of(l), ProjL(el, er)),
                     Comp(predicate_of(r), ProjR(el, er)))
    return true_(base)


def full(a: Obj) -> PredObject:
    return PredObject(a, true_(a))


def as_pred(obj) -> PredObject:
    """Coerce an Obj (or PredObject) to a PredObject over a fundamental base."""
    if isinstance(obj, PredObject):
        return obj
    chi = predicate_of(obj)
    return PredObject(erase(obj), chi)


def mk_pred_object(base: Obj, chi: MapTerm,
                   spec: SampleSpec = DEFAULT_SAMPLES) -> PredObject:
    """Form {base | chi} after checking sign . chi = chi on samples."""
    d, c = type_of(chi)
    if d != base or c != NAT:
        raise TermTypeError(f"predicate on {base!r} must be {base!r} -> nat, got {d!r} -> {c!r}")
    if not is_fundamental(base):
        inner = as_pred(base)
        chi = _conj(inner.chi, erase_term(chi))
        base = inner.base
    chk = eq_on_samples(Comp(stdlib.sign, chi), chi, spec)
    if not chk:
        x, signed, raw = chk.counterexample
        raise NotAPredicate(f"value {raw} at {x!r} is not a truth value", x)
    return PredObject(base, chi, spec)


def _check_map(f: MapTerm, src: PredObject, dst: PredObject):
    d, c = type_of(f)
    if erase(d) != src.base or erase(c) != dst.base:
        raise TermTypeError(f"map {erase(d)!r} -> {erase(c)!r} does not fit "
                            f"{src.base!r} -> {dst.base!r}")


def hom_check(f: MapTerm, src: PredObject, dst: PredObject,
              spec: SampleSpec = DEFAULT_SAMPLES) -> Check:
    """Does f carry src's predicate into dst's on sampled points of src?"""
    _check_map(f, src, dst)
    fn = compile_term(erase_term(f))
    psi = compile_term(dst.chi)
    pts = samples(src.obj, spec)
    for a in pts:
        if psi(fn(a)) != 1:
            return Check(False, a, len(pts))
    return Check(True, None, len(pts))


def pra_equal(f: MapTerm, g: MapTerm, src: PredObject,
              spec: SampleSpec = DEFAULT_SAMPLES) -> Check:
    """Equality of PRa maps: agreement on sampled inhabitants of src."""
    f, g = erase_term(f), erase_term(g)
    if type_of(f)[0] != src.base:
        raise TermTypeError(f"map does not start at {src.base!r}")
    return eq_on_samples(f, g, spec, points=samples(src.obj, spec))


def inclusion(src: PredObject, dst: PredObject,
              spec: SampleSpec = DEFAULT_SAMPLES) -> MapTerm:
    """The restricted identity src -> dst, after a sampled implication check."""
    if src.base != dst.base:
        raise TermTypeError(f"inclusion needs a common base, got {src.base!r} and {dst.base!r}")
    psi = compile_term(dst.chi)
    for a in samples(src.obj, spec):
        if psi(a) != 1:
            raise NotIncluded(f"{a!r} lies in the source but not the target", a)
    return Incl(src.obj, dst.obj)


@dataclasses.dataclass(frozen=True)
class PRaMap:
    """A map {A|chi} -> {B|psi}: the term together with both objects."""
    src: PredObject
    term: MapTerm
    dst: PredObject


def pra_map(src, term: MapTerm, dst, spec: SampleSpec = DEFAULT_SAMPLES) -> PRaMap:
    src, dst = as_pred(src), as_pred(dst)
    chk = hom_check(term, src, dst, spec)
    if not chk:
        raise NotIncluded(f"map leaves the target object at {chk.counterexample!r}",
                          chk.counterexample)
    return PRaMap(src, erase_term(term), dst)
