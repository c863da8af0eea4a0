"""Generated and hand-built material for the law suites.

* ``random_term`` draws well-typed total terms whose evaluation stays cheap
  (iteration and recursion only over steps that grow values slowly).
* ``partial_maps`` is a catalogue of partial maps with small definition
  domains, ``partial_endos`` the endomaps among them.
* ``loop_programs`` collects loop programs, including while loops nested
  inside while loops.
"""

from __future__ import annotations

import dataclasses
import random

from .abstraction import PredObject
from .core import (
    NAT, ONE, SUCC, ZERO, Bang, Comp, Diag, Id, Incl, Iter, MapTerm, Obj, Pr,
    Prod, ProdMap, ProjL, ProjR, compose, const, num, pair, succ_power, theta,
    true_, type_of,
)
from . import muwhile as M
from . import partial as P
from . import stdlib as S

N = NAT
N2 = Prod(N, N)
OBJECTS = (N, N2, ONE, Prod(N2, N), Prod(N, ONE))


# --------------------------------------------------------------------------- #
# random total terms
# --------------------------------------------------------------------------- #

def _point(rng: random.Random, b: Obj) -> MapTerm:
    """A constant 1 -> b."""
    if b == ONE:
        return Id(ONE)
    if b == N:
        return num(rng.randrange(4))
    return pair(_point(rng, b.left), _point(rng, b.right))


_NAT_UNARY = (SUCC, S.pre, S.sign, S.neg, S.tri)
_NAT_BINARY = (S.add, S.sub, S.mult, S.max_, S.leq, S.lt, S.eq_nat, S.and_, S.or_)


def _leaf(rng: random.Random, a: Obj, b: Obj) -> MapTerm:
    options = []
    if a == b:
        options.append(Id(a))
    if b == ONE:
        options.append(Bang(a))
    if isinstance(a, Prod):
        if a.left == b:
            options.append(ProjL(a.left, a.right))
        if a.right == b:
            options.append(ProjR(a.left, a.right))
        if b == Prod(a.right, a.left):
            options.append(theta(a.left, a.right))
    if b == Prod(a, a):
        options.append(Diag(a))
    if b == N:
        if a == N:
            options.extend(_NAT_UNARY)
        if a == N2:
            options.extend(_NAT_BINARY)
    if options:
        return rng.choice(options)
    if isinstance(b, Prod):
        return pair(_leaf(rng, a, b.left), _leaf(rng, a, b.right))
    return Comp(_point(rng, b), Bang(a))


def _cheap_endo(rng: random.Random, x: Obj) -> MapTerm:
    if x == N:
        return rng.choice((SUCC, S.pre, Id(N), succ_power(rng.randrange(2, 5))))
    if isinstance(x, Prod):
        return ProdMap(_cheap_endo(rng, x.left), _cheap_endo(rng, x.right))
    return Id(x)


def random_term(rng: random.Random, a: Obj, b: Obj, depth: int = 6) -> MapTerm:
    """A random well-typed term a -> b of nesting depth at most ``depth``."""
    if depth <= 1 or rng.random() < 0.25:
        return _leaf(rng, a, b)
    choices = ["comp", "comp"]
    if isinstance(b, Prod):
        choices += ["pair", "pair"]
        if isinstance(a, Prod):
            choices.append("prod")
    if isinstance(a, Prod) and a.right == N:
        if a.left == b:
            choices.append("iter")
        if b == N:
            choices.append("pr")
    kind = rng.choice(choices)
    d = depth - 1
    if kind == "pair":
        return pair(random_term(rng, a, b.left, d), random_term(rng, a, b.right, d))
    if kind == "prod":
        return ProdMap(random_term(rng, a.left, b.left, d), random_term(rng, a.right, b.right, d))
    if kind == "iter":
        return Iter(_cheap_endo(rng, b))
    if kind == "pr":
        x = a.left
        rec = ProjR(a, N)
        counter = compose(ProjR(x, N), ProjL(a, N))
        step = rng.choice((Comp(SUCC, rec), rec, Comp(S.pre, rec),
                           Comp(S.max_, pair(rec, counter)), Comp(S.add, pair(rec, counter))))
        return Pr(random_term(rng, x, N, d), step)
    mid = rng.choice(OBJECTS)
    return Comp(random_term(rng, mid, b, d), random_term(rng, a, mid, d))


def random_endo_step(rng: random.Random, b: Obj) -> MapTerm:
    return _cheap_endo(rng, b)


# --------------------------------------------------------------------------- #
# partial maps
# --------------------------------------------------------------------------- #

def _ratio(k: int) -> PredObject:
    """{(a, n) | a = k * n}"""
    return PredObject(N2, Comp(S.eq_nat, pair(ProjL(N, N),
                                               Comp(S.mult, pair(const(k, N2), ProjR(N, N))))))


def _up_to_argument(a):
    # complete whenever every witness (a, n) has n <= a
    return ((a, n) for n in range(a + 1))


def _witness_map(dom: PredObject) -> P.PartialMap:
    """a |-> the n with (a, n) in dom; dom must be right-unique with n <= a."""
    return P.PartialMap(P.full(N), P.full(N), dom, ProjL(N, N), ProjR(N, N), _up_to_argument)


def halving() -> P.PartialMap:
    return _witness_map(_ratio(2))


def third() -> P.PartialMap:
    return _witness_map(_ratio(3))


def exact_sqrt() -> P.PartialMap:
    square = Comp(S.mult, pair(ProjR(N, N), ProjR(N, N)))
    return _witness_map(PredObject(N2, Comp(S.eq_nat, pair(ProjL(N, N), square))))


def exact_cbrt() -> P.PartialMap:
    n = ProjR(N, N)
    cube = Comp(S.mult, pair(n, Comp(S.mult, pair(n, n))))
    return _witness_map(PredObject(N2, Comp(S.eq_nat, pair(ProjL(N, N), cube))))


def partial_sub() -> P.PartialMap:
    """a - b, defined only where b <= a."""
    dom = PredObject(N2, Comp(S.leq, theta(N, N)))
    return P.mk_partial(N2, N, dom, Incl(dom.obj, N2), S.sub)


def minus(k: int) -> P.PartialMap:
    """a - k, defined where a >= k."""
    dom = PredObject(N, Comp(S.leq, pair(const(k, N), Id(N))))
    return P.PartialMap(P.full(N), P.full(N), dom, Id(N), Comp(S.sub, pair(Id(N), const(k, N))))


def evens() -> P.PartialMap:
    even = Comp(S.neg, Comp(S.mod, pair(Id(N), const(2, N))))
    return P.partial_identity(PredObject(N, even))


def predecessor() -> P.PartialMap:
    """The minimised opposite of the successor: undefined at 0."""
    return dataclasses.replace(P.opposite_min(SUCC, Id(N)), plan=lambda a: iter(range(a)))


def gt(k: int) -> MapTerm:
    return Comp(S.lt, pair(const(k, N), Id(N)))


def ceil_sqrt_predicate() -> MapTerm:
    """phi(a, n) = [a <= n * n]"""
    return Comp(S.leq, pair(ProjL(N, N), Comp(S.mult, pair(ProjR(N, N), ProjR(N, N)))))


def ceil_sqrt() -> P.PartialMap:
    return M.mu(ceil_sqrt_predicate())


def down_to(k: int) -> P.PartialMap:
    return M.while_loop(gt(k), S.pre)


def partial_endos() -> dict[str, P.PartialMap]:
    """Partial maps N -> N."""
    return {
        "halving": halving(),
        "third": third(),
        "exact-sqrt": exact_sqrt(),
        "exact-cbrt": exact_cbrt(),
        "minus-3": minus(3),
        "evens": evens(),
        "predecessor": predecessor(),
        "ceil-sqrt": ceil_sqrt(),
        "down-to-5": down_to(5),
        "succ": P.embed(SUCC),
        "pre": P.embed(S.pre),
    }


def flat_partial_maps() -> dict[str, P.PartialMap]:
    """Partial maps whose definition domain is N or N x N."""
    out = {k: v for k, v in partial_endos().items() if k != "down-to-5"}
    out["partial-sub"] = partial_sub()
    out["add"] = P.embed(S.add)
    return out


# --------------------------------------------------------------------------- #
# maps with partial graphs
# --------------------------------------------------------------------------- #

def restriction_predicates(base: Obj) -> list[MapTerm]:
    """A few predicates on a fundamental object, for cutting down graphs."""
    out = [true_(base)]
    leaves = _nat_leaves(base)
    for leaf in leaves[:2]:
        out.append(Comp(S.neg, compose(S.mod, pair(leaf, const(3, base)))))
        out.append(Comp(S.leq, pair(leaf, const(40, base))))
        out.append(Comp(S.sign, Comp(S.mod, pair(leaf, const(2, base)))))
    return out


def _nat_leaves(obj: Obj, path=None) -> list[MapTerm]:
    path = Id(obj) if path is None else path
    here = type_of(path)[1]
    if here == N:
        return [path]
    if isinstance(here, Prod):
        return (_nat_leaves(obj, Comp(ProjL(here.left, here.right), path))
                + _nat_leaves(obj, Comp(ProjR(here.left, here.right), path)))
    return []


def meta_maps(limit: int = 20) -> list[tuple[str, P.MetaMap]]:
    """Endo graph-partial maps on N from restrictions of the partial endos."""
    out = []
    for name, f in partial_endos().items():
        base = f.dom_def.base
        for i, p in enumerate(restriction_predicates(base)):
            out.append((f"{name}/{i}", P.meta_restrict(f, PredObject(base, p))))
    # interleave so that small limits still cover several maps
    out.sort(key=lambda item: (int(item[0].rsplit("/", 1)[1]), item[0]))
    return out[:limit]


# --------------------------------------------------------------------------- #
# loop programs
# --------------------------------------------------------------------------- #

def _pairwise(f: MapTerm, g: MapTerm) -> MapTerm:
    return pair(Comp(f, ProjL(N, N)), Comp(g, ProjR(N, N)))


def gcd_step() -> MapTerm:
    """(a, b) |-> (a - b, b) if b < a, else (a, b - a)."""
    a, b = ProjL(N, N), ProjR(N, N)
    first = S.cond(Comp(S.lt, theta(N, N)), S.sub, a)
    second = S.cond(Comp(S.lt, theta(N, N)), b, Comp(S.sub, theta(N, N)))
    return pair(first, second)


def gcd_guard() -> MapTerm:
    """Both positive and different."""
    a, b = ProjL(N, N), ProjR(N, N)
    both = Comp(S.and_, pair(Comp(S.sign, a), Comp(S.sign, b)))
    return Comp(S.and_, pair(both, Comp(S.neg, S.eq_nat)))


def loop_programs() -> dict[str, M.LoopProgram]:
    second_lt_first = Comp(S.lt, theta(N, N))
    inner = M.While(gt(5), S.pre)
    even_pos = Comp(S.and_, pair(Id(N), Comp(S.neg, Comp(S.mod, pair(Id(N), const(2, N))))))
    progs = {
        "total-add": M.Total(S.add),
        "total-succ-pre": M.Total(Comp(SUCC, S.pre)),
        "mu-ceil-sqrt": M.Mu(ceil_sqrt_predicate()),
        "down-to-5": inner,
        "up-by-7": M.While(Comp(S.lt, pair(Id(N), const(50, N))), succ_power(7)),
        "gcd": M.While(gcd_guard(), gcd_step()),
        "nested-pair": M.While(second_lt_first, M.PProd(inner, M.Total(SUCC))),
        "nested-count": M.While(Comp(S.lt, pair(ProjR(N, N), const(4, N2))),
                                M.PProd(M.While(gt(2), S.pre), M.Total(SUCC))),
        "nested-gcd": M.While(Comp(S.lt, pair(ProjR(N, N), ProjL(N, N))),
                              M.PComp(M.PProd(M.Total(Id(N)), M.Total(SUCC)),
                                      M.While(gcd_guard(), gcd_step()))),
        "mu-after-while": M.PComp(M.Mu(ceil_sqrt_predicate()), inner),
        "iterate-halving": M.PIter(M.Given(halving())),
        "iterate-succ": M.PIter(M.Total(SUCC)),
        "iterate-while": M.PIter(M.While(gt(10), S.pre)),
        "product": M.PProd(M.Mu(ceil_sqrt_predicate()), inner),
        "partial-sub": M.Given(partial_sub()),
        "halve-after-double": M.PComp(M.Given(halving()), M.Total(Comp(S.mult, pair(Id(N), const(2, N))))),
        "odd-part": M.While(even_pos, M.Given(halving())),
        "drain-predecessor": M.While(gt(1), M.Given(predecessor())),
    }
    return progs
