"""Derived arithmetic, order, Boolean logic and Cantor coding as map terms.

Every entry pairs a term with a native big-integer oracle.  The terms follow
the textbook recurrences literally (addition iterates the successor,
truncated subtraction iterates the predecessor, and so on); the oracles are
what the tests compare them against.

Exponentiation uses a^0 = 1.
"""

from __future__ import annotations

import dataclasses
import math
from typing import Callable

from .core import (
    NAT, ONE, SUCC, ZERO, Bang, Comp, Id, Iter, MapTerm, Nat, Obj, Pr, Prod,
    ProdMap, ProjL, ProjR, Sub, Unit, compose, const, erase, num, pair, theta,
    type_of,
)
from .errors import TermTypeError, UnsupportedObject
from .evaluate import jets, register_jet

N = NAT
N2 = Prod(NAT, NAT)
_P = Prod(ONE, NAT)          # parameter object of a unary recursion


@dataclasses.dataclass(frozen=True)
class StdMap:
    name: str
    term: MapTerm
    oracle: Callable

    @property
    def type(self):
        return type_of(self.term)


def _unary(rec: MapTerm) -> MapTerm:
    """Turn a recursion over 1 x N into a map N -> N."""
    return Comp(rec, pair(Bang(N), Id(N)))


def _counter_step(value: MapTerm) -> MapTerm:
    """Step map ((*, n), rec) |-> value(n) for a recursion over 1 x N."""
    return compose(value, ProjR(ONE, N), ProjL(_P, N))


# ----------------------------------------------------------------- arithmetic

add = Iter(SUCC)

pre = _unary(Pr(ZERO, _counter_step(Id(N))))

sub = Iter(pre)

# ((a, n), rec) projections for a recursion over N x N
_rec = ProjR(N2, N)
_param = Comp(ProjL(N, N), ProjL(N2, N))
_counter = Comp(ProjR(N, N), ProjL(N2, N))

mult = Pr(const(0, N), Comp(add, pair(_rec, _param)))

exp = Pr(const(1, N), Comp(mult, pair(_rec, _param)))

# ----------------------------------------------------------------- logic / order

_const_step = lambda k: Comp(num(k), Bang(Prod(_P, N)))

sign = _unary(Pr(ZERO, _const_step(1)))

neg = _unary(Pr(num(1), _const_step(0)))

and_ = Comp(sign, mult)

or_ = compose(neg, and_, ProdMap(neg, neg))

implies = compose(neg, and_, ProdMap(Id(N), neg))

leq = Comp(neg, sub)

lt = compose(sign, sub, theta(N, N))

eq_nat = Comp(and_, pair(leq, Comp(leq, theta(N, N))))

max_ = Comp(add, pair(ProjL(N, N), Comp(sub, theta(N, N))))


def eq_obj(a: Obj) -> MapTerm:
    """Predicative equality A x A -> 2, componentwise on products."""
    a = erase(a)
    if isinstance(a, Nat):
        return eq_nat
    if isinstance(a, Unit):
        return Comp(num(1), Bang(Prod(a, a)))
    if isinstance(a, Prod):
        x, y = a.left, a.right
        l, r = ProjL(a, a), ProjR(a, a)
        lefts = pair(Comp(ProjL(x, y), l), Comp(ProjL(x, y), r))
        rights = pair(Comp(ProjR(x, y), l), Comp(ProjR(x, y), r))
        return Comp(and_, pair(Comp(eq_obj(x), lefts), Comp(eq_obj(y), rights)))
    raise TypeError(a)


def cond(c: MapTerm, p: MapTerm, q: MapTerm) -> MapTerm:
    """Case distinction on N: p where c > 0, q where c = 0 (both N-valued)."""
    return Comp(add, pair(Comp(mult, pair(p, Comp(sign, c))),
                          Comp(mult, pair(q, Comp(neg, c)))))


# ----------------------------------------------------------------- Cantor coding

tri = _unary(Pr(ZERO, Comp(add, pair(ProjR(_P, N),
                                      compose(SUCC, ProjR(ONE, N), ProjL(_P, N))))))

cantor_pair = Comp(add, pair(Comp(tri, add), ProjR(N, N)))


def _next_pair() -> MapTerm:
    # (x, y) |-> (x - 1, y + 1) if x > 0 else (y + 1, 0)
    x, y = ProjL(N, N), ProjR(N, N)
    sx, nx = Comp(sign, x), Comp(neg, x)
    sy = Comp(SUCC, y)
    first = Comp(add, pair(Comp(mult, pair(Comp(pre, x), sx)), Comp(mult, pair(sy, nx))))
    second = Comp(mult, pair(sy, sx))
    return pair(first, second)


cantor_unpair = Comp(Iter(_next_pair()), pair(Comp(pair(ZERO, ZERO), Bang(N)), Id(N)))


def cnt(d: Obj) -> MapTerm:
    """Canonical count N -> D (a bijection, a retraction for D = 1)."""
    if isinstance(d, Nat):
        return Id(N)
    if isinstance(d, Unit):
        return Bang(N)
    if isinstance(d, Prod):
        return Comp(ProdMap(cnt(d.left), cnt(d.right)), cantor_unpair)
    raise UnsupportedObject(f"no canonical count for {d!r}")


def index(d: Obj) -> MapTerm:
    """Right inverse D -> N of cnt(D)."""
    if isinstance(d, Nat):
        return Id(N)
    if isinstance(d, Unit):
        return const(0, d)
    if isinstance(d, Prod):
        return Comp(cantor_pair, ProdMap(index(d.left), index(d.right)))
    raise UnsupportedObject(f"no canonical count for {d!r}")


# ----------------------------------------------------------------- bounded minimum

def bounded_min(phi: MapTerm) -> MapTerm:
    """m(a, n) = least k <= n with phi(a, k) = 1, else n + 1.

    Recursion on M(a, n) = least k < n with phi(a, k), else n:
    M(a, n + 1) = M(a, n) + [M(a, n) = n] * not phi(a, n).
    """
    d, c = type_of(phi)
    if not isinstance(d, Prod) or d.right != N or c != N:
        raise TermTypeError(f"bounded minimum needs a predicate on A x N, got {d!r} -> {c!r}")
    a = d.left
    an = Prod(a, N)
    m = ProjR(an, N)
    here = ProjL(an, N)
    n = Comp(ProjR(a, N), here)
    miss = Comp(mult, pair(Comp(neg, Comp(phi, here)), Comp(eq_nat, pair(m, n))))
    below = Pr(const(0, a), Comp(add, pair(m, miss)))
    out = Comp(below, ProdMap(Id(a), SUCC))
    if out not in jets():
        register_jet(out, _scan(phi), invalidate=False)
    return out


def _scan(phi: MapTerm):
    # native counterpart of bounded_min: stop at the first witness
    from .evaluate import compile_term
    test = []
    loop = _loop_shape(phi)
    if loop is not None:
        chi, f = loop
        fns = []

        def first_stop(v):
            # phi(a, k) = not chi(f^k a): walk the orbit once
            if not fns:
                fns.extend((compile_term(chi), compile_term(f)))
            c, step = fns
            x, n = v
            for k in range(n + 1):
                if c(x) == 0:
                    return k
                x = step(x)
            return n + 1
        return first_stop

    def least(v):
        if not test:
            test.append(compile_term(phi))
        a, n = v
        p = test[0]
        for k in range(n + 1):
            if p((a, k)) != 0:
                return k
        return n + 1
    return least


def _loop_shape(phi: MapTerm):
    """(chi, f) if phi is neg . chi . iter(f), else None."""
    if isinstance(phi, Comp) and phi.g == neg and isinstance(phi.f, Comp):
        chi, it = phi.f.g, phi.f.f
        if isinstance(it, Iter):
            return chi, it.f
    return None


_div_phi = Comp(lt, pair(Comp(ProjL(N, N), ProjL(N2, N)),
                         Comp(mult, pair(Comp(ProjR(N, N), ProjL(N2, N)),
                                         Comp(SUCC, ProjR(N2, N))))))

# div(x, y) = least q <= x with x < y (q + 1); x + 1 when y = 0
div = Comp(bounded_min(_div_phi), pair(Id(N2), ProjL(N, N)))

mod = Comp(sub, pair(ProjL(N, N), Comp(mult, pair(ProjR(N, N), div))))


# ----------------------------------------------------------------- oracles

def _b(x):
    return 1 if x else 0


def _unpair_native(z):
    w = (math.isqrt(8 * z + 1) - 1) // 2
    y = z - w * (w + 1) // 2
    return (w - y, y)


ORACLES = {
    "add": (add, lambda v: v[0] + v[1]),
    "pre": (pre, lambda v: max(v - 1, 0)),
    "sub": (sub, lambda v: max(v[0] - v[1], 0)),
    "mult": (mult, lambda v: v[0] * v[1]),
    "exp": (exp, lambda v: v[0] ** v[1]),
    "sign": (sign, lambda v: _b(v > 0)),
    "neg": (neg, lambda v: _b(v == 0)),
    "and": (and_, lambda v: _b(v[0] > 0 and v[1] > 0)),
    "or": (or_, lambda v: _b(v[0] > 0 or v[1] > 0)),
    "implies": (implies, lambda v: _b(v[0] == 0 or v[1] > 0)),
    "leq": (leq, lambda v: _b(v[0] <= v[1])),
    "lt": (lt, lambda v: _b(v[0] < v[1])),
    "eq": (eq_nat, lambda v: _b(v[0] == v[1])),
    "max": (max_, lambda v: max(v)),
    "tri": (tri, lambda v: v * (v + 1) // 2),
    "pair_c": (cantor_pair, lambda v: (v[0] + v[1]) * (v[0] + v[1] + 1) // 2 + v[1]),
    "unpair_c": (cantor_unpair, _unpair_native),
    "div": (div, lambda v: v[0] // v[1] if v[1] else v[0] + 1),
    "mod": (mod, lambda v: v[0] % v[1] if v[1] else v[0]),
}

CATALOG = {name: StdMap(name, t, o) for name, (t, o) in ORACLES.items()}

ARITH = ("add", "pre", "sub", "mult", "exp")
LOGIC_ORDER = ("sign", "neg", "and", "or", "implies", "leq", "lt", "eq", "max")


def mk_arith() -> dict[str, StdMap]:
    return {k: CATALOG[k] for k in ARITH}


def mk_logic_order() -> dict[str, StdMap]:
    return {k: CATALOG[k] for k in LOGIC_ORDER}


def predicates() -> dict[str, StdMap]:
    return {k: CATALOG[k] for k in ("sign", "neg", "and", "or", "implies", "leq", "lt", "eq")}


def _install_jets():
    # the oracle doubles as the native implementation of each library term
    for name, (t, oracle) in ORACLES.items():
        if name != "add":
            register_jet(t, oracle)


_install_jets()
