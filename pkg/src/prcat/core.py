"""Objects and map terms of the variable-free calculus.

Objects are ``1``, ``N``, binary products and predicate subobjects
``{A | chi}``.  Map terms are built from the basic constants (zero,
successor, terminal maps, diagonals, projections) with composition,
map product, iteration and the primitive recursion schema.

All nodes are immutable and hashable; hashes are cached because terms
get deep and are used as cache keys by the evaluator.
"""

from __future__ import annotations

import dataclasses
import functools

from .errors import TermTypeError


def node(cls):
    """Frozen dataclass with a cached structural hash."""
    cls = dataclasses.dataclass(frozen=True, repr=False)(cls)
    generated = cls.__hash__

    def __hash__(self):
        try:
            return self.__dict__["_hash"]
        except KeyError:
            h = generated(self)
            object.__setattr__(self, "_hash", h)
            return h

    cls.__hash__ = __hash__
    return cls


# --------------------------------------------------------------------------- #
# objects
# --------------------------------------------------------------------------- #

class Obj:
    __slots__ = ()

    def __repr__(self):
        from .sexpr import print_obj
        return print_obj(self)


@node
class Unit(Obj):
    pass


@node
class Nat(Obj):
    pass


@node
class Prod(Obj):
    left: Obj
    right: Obj


@node
class Sub(Obj):
    base: Obj
    chi: "MapTerm"

    def __post_init__(self):
        dom, cod = type_of(self.chi)
        if dom != self.base or cod != NAT:
            raise TermTypeError(
                f"predicate of {{A|chi}} must be {self.base!r} -> nat, "
                f"got {dom!r} -> {cod!r}")


ONE = Unit()
NAT = Nat()


def erase(obj: Obj) -> Obj:
    """The fundamental object underlying ``obj`` (all restrictions dropped)."""
    if isinstance(obj, Sub):
        return erase(obj.base)
    if isinstance(obj, Prod):
        return Prod(erase(obj.left), erase(obj.right))
    return obj


def is_fundamental(obj: Obj) -> bool:
    if isinstance(obj, Prod):
        return is_fundamental(obj.left) and is_fundamental(obj.right)
    return isinstance(obj, (Unit, Nat))


# --------------------------------------------------------------------------- #
# map terms
# --------------------------------------------------------------------------- #

class MapTerm:
    __slots__ = ()

    def __repr__(self):
        from .sexpr import print_term
        return print_term(self)

    def __matmul__(self, other):
        """``g @ f`` is the composite g . f."""
        return Comp(self, other)


@node
class Id(MapTerm):
    obj: Obj


@node
class Zero(MapTerm):
    pass


@node
class Succ(MapTerm):
    pass


@node
class Bang(MapTerm):
    obj: Obj


@node
class Diag(MapTerm):
    obj: Obj


@node
class ProjL(MapTerm):
    left: Obj
    right: Obj


@node
class ProjR(MapTerm):
    left: Obj
    right: Obj


@node
class Comp(MapTerm):
    g: MapTerm
    f: MapTerm


@node
class ProdMap(MapTerm):
    f: MapTerm
    g: MapTerm


@node
class Iter(MapTerm):
    f: MapTerm


@node
class Pr(MapTerm):
    g: MapTerm
    h: MapTerm


@node
class Incl(MapTerm):
    src: Obj
    dst: Obj


ZERO = Zero()
SUCC = Succ()


def _composable(cod_f: Obj, dom_g: Obj) -> bool:
    # forgetting a restriction is the always-valid inclusion {A|chi} -> A
    return cod_f == dom_g or (not isinstance(dom_g, Sub) and erase(cod_f) == dom_g)


def _child(index, term):
    try:
        return type_of(term)
    except TermTypeError as exc:
        raise exc.within(index) from None


@functools.lru_cache(maxsize=None)
def type_of(t: MapTerm) -> tuple[Obj, Obj]:
    """Return ``(dom, cod)`` of a well-formed term or raise TermTypeError."""
    if isinstance(t, Id):
        return t.obj, t.obj
    if isinstance(t, Zero):
        return ONE, NAT
    if isinstance(t, Succ):
        return NAT, NAT
    if isinstance(t, Bang):
        return t.obj, ONE
    if isinstance(t, Diag):
        return t.obj, Prod(t.obj, t.obj)
    if isinstance(t, ProjL):
        return Prod(t.left, t.right), t.left
    if isinstance(t, ProjR):
        return Prod(t.left, t.right), t.right
    if isinstance(t, Comp):
        dg, cg = _child(0, t.g)
        df, cf = _child(1, t.f)
        if not _composable(cf, dg):
            raise TermTypeError(f"cannot compose: codomain {cf!r} is not domain {dg!r}")
        return df, cg
    if isinstance(t, ProdMap):
        df, cf = _child(0, t.f)
        dg, cg = _child(1, t.g)
        return Prod(df, dg), Prod(cf, cg)
    if isinstance(t, Iter):
        df, cf = _child(0, t.f)
        if df != cf:
            raise TermTypeError(f"iterated map must be an endo, got {df!r} -> {cf!r}")
        return Prod(df, NAT), df
    if isinstance(t, Pr):
        dg, cg = _child(0, t.g)
        dh, ch = _child(1, t.h)
        want = Prod(Prod(dg, NAT), cg)
        if dh != want:
            raise TermTypeError(f"step map must have domain {want!r}, got {dh!r}").within(1)
        if ch != cg:
            raise TermTypeError(f"step map must land in {cg!r}, got {ch!r}").within(1)
        return Prod(dg, NAT), cg
    if isinstance(t, Incl):
        if erase(t.src) != erase(t.dst):
            raise TermTypeError(f"inclusion needs a common base, got {t.src!r} and {t.dst!r}")
        return t.src, t.dst
    raise TermTypeError(f"not a map term: {t!r}")


def dom(t: MapTerm) -> Obj:
    return type_of(t)[0]


def cod(t: MapTerm) -> Obj:
    return type_of(t)[1]


# --------------------------------------------------------------------------- #
# derived constructions
# --------------------------------------------------------------------------- #

def pair(f: MapTerm, g: MapTerm) -> MapTerm:
    """Induced map (f, g) := (f x g) . diagonal."""
    df, dg = dom(f), dom(g)
    if df != dg:
        raise TermTypeError(f"pair needs a common domain, got {df!r} and {dg!r}")
    return Comp(ProdMap(f, g), Diag(df))


def compose(*terms: MapTerm) -> MapTerm:
    """compose(h, g, f) == h . g . f"""
    out = terms[-1]
    for t in reversed(terms[:-1]):
        out = Comp(t, out)
    type_of(out)
    return out


def fst(a: Obj, b: Obj) -> MapTerm:
    return ProjL(a, b)


def snd(a: Obj, b: Obj) -> MapTerm:
    return ProjR(a, b)


def ass(a: Obj, b: Obj, c: Obj) -> MapTerm:
    """(A x B) x C -> A x (B x C)"""
    ab = Prod(a, b)
    l = ProjL(ab, c)
    return pair(Comp(ProjL(a, b), l), pair(Comp(ProjR(a, b), l), ProjR(ab, c)))


def ass_inv(a: Obj, b: Obj, c: Obj) -> MapTerm:
    """A x (B x C) -> (A x B) x C"""
    bc = Prod(b, c)
    r = ProjR(a, bc)
    return pair(pair(ProjL(a, bc), Comp(ProjL(b, c), r)), Comp(ProjR(b, c), r))


def theta(a: Obj, b: Obj) -> MapTerm:
    """Transposition A x B -> B x A."""
    return pair(ProjR(a, b), ProjL(a, b))


def num(k: int) -> MapTerm:
    """The numeral s^k . 0 : 1 -> N (successors grouped as a balanced tree)."""
    if k < 0:
        raise ValueError("numerals are natural")
    if k == 0:
        return ZERO
    return Comp(succ_power(k), ZERO)


@functools.lru_cache(maxsize=None)
def succ_power(k: int) -> MapTerm:
    """s^k : N -> N for k >= 1, nested only logarithmically deep."""
    if k < 1:
        raise ValueError("succ_power needs k >= 1")
    if k == 1:
        return SUCC
    half = k // 2
    return Comp(succ_power(k - half), succ_power(half))


def const(k: int, a: Obj) -> MapTerm:
    """Constant map A -> 1 -> N with value k."""
    return Comp(num(k), Bang(a))


def true_(a: Obj) -> MapTerm:
    return Comp(SUCC, Comp(ZERO, Bang(a)))


def false_(a: Obj) -> MapTerm:
    return Comp(ZERO, Bang(a))


def structural_helpers(a: Obj = NAT, b: Obj = NAT, c: Obj = NAT) -> dict:
    return {
        "ass": ass(a, b, c),
        "theta": theta(a, b),
        "true": true_(a),
        "false": false_(a),
        "num": num,
    }


def pr_via_iter(g: MapTerm, h: MapTerm) -> MapTerm:
    """Encode pr[g, h] with plain iteration over the state (A x N) x B.

    step ((a, i), b) = ((a, s i), h((a, i), b)), started at ((a, 0), g a),
    read off with the right projection.
    """
    a, b = type_of(g)
    an = Prod(a, NAT)
    state = Prod(an, b)
    l = ProjL(an, b)
    bump = ProdMap(Id(a), SUCC)
    step = pair(Comp(bump, l), h)
    init = pair(pair(Id(a), Comp(ZERO, Bang(a))), g)
    return compose(ProjR(an, b), Iter(step), ProdMap(init, Id(NAT)))


def erase_term(t: MapTerm) -> MapTerm:
    """The underlying PR map: every object erased, inclusions become identities."""
    if isinstance(t, Id):
        return Id(erase(t.obj))
    if isinstance(t, (Zero, Succ)):
        return t
    if isinstance(t, Bang):
        return Bang(erase(t.obj))
    if isinstance(t, Diag):
        return Diag(erase(t.obj))
    if isinstance(t, ProjL):
        return ProjL(erase(t.left), erase(t.right))
    if isinstance(t, ProjR):
        return ProjR(erase(t.left), erase(t.right))
    if isinstance(t, Comp):
        return Comp(erase_term(t.g), erase_term(t.f))
    if isinstance(t, ProdMap):
        return ProdMap(erase_term(t.f), erase_term(t.g))
    if isinstance(t, Iter):
        return Iter(erase_term(t.f))
    if isinstance(t, Pr):
        return Pr(erase_term(t.g), erase_term(t.h))
    if isinstance(t, Incl):
        return Id(erase(t.src))
    raise TypeError(t)


def size(t: MapTerm) -> int:
    if isinstance(t, (Comp, ProdMap, Pr)):
        a, b = (t.g, t.f) if isinstance(t, Comp) else (t.f, t.g) if isinstance(t, ProdMap) else (t.g, t.h)
        return 1 + size(a) + size(b)
    if isinstance(t, Iter):
        return 1 + size(t.f)
    return 1
