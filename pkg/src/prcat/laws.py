"""Law suites: each runs a family of sampled checks and tallies the outcomes.

A check passes, fails, or is indeterminate (a fueled probe ran out before
deciding).  Indeterminate outcomes are reported separately and never
counted as passes.  Every suite is deterministic for a given seed.
"""

from __future__ import annotations

import dataclasses
import itertools
import math
import random
from typing import Callable, Optional

from .abstraction import PredObject
from .core import (
    NAT, ONE, SUCC, ZERO, Bang, Comp, Diag, Id, Iter, MapTerm, Obj, Pr, Prod,
    ProdMap, ProjL, ProjR, ass, compose, const, false_, num, pair, pr_via_iter,
    succ_power, theta, true_,
)
from .errors import RightUniquenessViolation
from .evaluate import (
    SampleSpec, compile_term, eq_on_samples, freyd_check, samples,
)
from . import corpus as K
from . import muwhile as M
from . import partial as P
from . import stdlib as S

N = NAT
N2 = Prod(N, N)
N3 = Prod(N2, N)


@dataclasses.dataclass
class SuiteResult:
    suite: str
    seed: int
    passed: int = 0
    failed: int = 0
    indeterminate: int = 0
    failures: list = dataclasses.field(default_factory=list)
    notes: dict = dataclasses.field(default_factory=dict)

    def record(self, name: str, outcome: Optional[bool], detail=None) -> None:
        """outcome True = pass, False = fail, None = indeterminate."""
        if outcome is None:
            self.indeterminate += 1
        elif outcome:
            self.passed += 1
        else:
            self.failed += 1
            self.failures.append((name, detail))

    def verdict(self, name: str, v: P.Verdict) -> None:
        if v.holds:
            self.record(name, True)
        elif v.fails:
            self.record(name, False, v.witness)
        else:
            self.record(name, None, v.witness)

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def as_json(self) -> dict:
        return {"suite": self.suite, "passed": self.passed, "failed": self.failed,
                "indeterminate": self.indeterminate, "seed": self.seed}

    def line(self) -> str:
        status = "ok" if self.failed == 0 and self.indeterminate == 0 else (
            "FAIL" if self.failed else "indeterminate")
        return (f"{self.suite}: {status} passed={self.passed} failed={self.failed} "
                f"indeterminate={self.indeterminate} seed={self.seed}")


_X = compose(ProjL(N, N), ProjL(N2, N))
_Y = compose(ProjR(N, N), ProjL(N2, N))
_Z = ProjR(N2, N)


# --------------------------------------------------------------------------- #
# arithmetic against native oracles
# --------------------------------------------------------------------------- #

WIDE = ("add", "pre", "sub")


def arith_oracles(seed: int = 0, count: int = 1000, jets: bool = False) -> SuiteResult:
    """Every arithmetic, logic and order map against its big-integer oracle.

    Runs with jets off so the terms themselves are evaluated.
    """
    out = SuiteResult("arith-oracles", seed)
    for name in S.ARITH + S.LOGIC_ORDER:
        entry = S.CATALOG[name]
        magnitude = 10**6 if name in WIDE else 10**3
        fn = compile_term(entry.term, jets)
        bad = None
        for x in samples(entry.type[0], SampleSpec(count, seed, magnitude), jets):
            if fn(x) != entry.oracle(x):
                bad = (x, fn(x), entry.oracle(x))
                break
        out.record(name, bad is None, bad)
    sub = compile_term(S.sub, jets)
    out.record("5-2", sub((5, 2)) == 3, sub((5, 2)))
    out.record("2-5", sub((2, 5)) == 0, sub((2, 5)))
    return out


# --------------------------------------------------------------------------- #
# semiring, truncated subtraction, order
# --------------------------------------------------------------------------- #

def _one(obj):
    return const(1, obj)


def semiring_laws(seed: int = 0, count: int = 500, jets: bool = False) -> dict:
    """Name -> (lhs, rhs) equations, all on N x N x N."""
    x, y, z = _X, _Y, _Z
    add = lambda p, q: Comp(S.add, pair(p, q))
    mul = lambda p, q: Comp(S.mult, pair(p, q))
    sub = lambda p, q: Comp(S.sub, pair(p, q))
    leq = lambda p, q: Comp(S.leq, pair(p, q))
    lt = lambda p, q: Comp(S.lt, pair(p, q))
    eq = lambda p, q: Comp(S.eq_nat, pair(p, q))
    imp = lambda p, q: Comp(S.implies, pair(p, q))
    both = lambda p, q: Comp(S.and_, pair(p, q))
    zero, one = const(0, N3), _one(N3)
    return {
        "add-assoc": (add(add(x, y), z), add(x, add(y, z))),
        "add-comm": (add(x, y), add(y, x)),
        "add-unit": (add(x, zero), x),
        "mult-assoc": (mul(mul(x, y), z), mul(x, mul(y, z))),
        "mult-comm": (mul(x, y), mul(y, x)),
        "mult-unit": (mul(x, one), x),
        "mult-zero": (mul(x, zero), zero),
        "distrib-add": (mul(x, add(y, z)), add(mul(x, y), mul(x, z))),
        "distrib-sub": (mul(x, sub(y, z)), sub(mul(x, y), mul(x, z))),
        "sub-add": (sub(add(x, y), y), x),
        "sub-sub": (sub(sub(x, y), z), sub(x, add(y, z))),
        "trichotomy": (add(lt(x, y), add(eq(x, y), lt(y, x))), one),
        "max-comm": (Comp(S.max_, pair(x, y)), Comp(S.max_, pair(y, x))),
        "add-monotone": (imp(leq(x, y), leq(add(x, z), add(y, z))), one),
        "add-strict": (imp(lt(x, y), lt(add(z, x), add(z, y))), one),
        "sub-monotone-first": (imp(leq(x, y), leq(sub(x, z), sub(y, z))), one),
        "sub-antitone-second": (imp(leq(x, y), leq(sub(z, y), sub(z, x))), one),
        "mult-strict-positive": (imp(both(lt(x, y), Comp(S.sign, z)),
                                     lt(mul(x, z), mul(y, z))), one),
        "leq-total": (Comp(S.or_, pair(leq(x, y), leq(y, x))), one),
    }


def arithmetic_laws(seed: int = 0, count: int = 500, jets: bool = False) -> SuiteResult:
    """Semiring laws, distributivity over truncated subtraction, order laws."""
    out = SuiteResult("arithmetic-laws", seed)
    spec = SampleSpec(count, seed, 1000)
    pts = samples(N3, spec)
    for name, (lhs, rhs) in semiring_laws().items():
        chk = eq_on_samples(lhs, rhs, spec, jets, points=pts)
        out.record(name, chk.ok, chk.counterexample)
    return out


# --------------------------------------------------------------------------- #
# product equations on generated terms
# --------------------------------------------------------------------------- #

def godement_fourman(seed: int = 0, instances: int = 50, count: int = 200,
                     depth: int = 6) -> SuiteResult:
    """Both projection triangles and the pairing uniqueness equation."""
    out = SuiteResult("godement-fourman", seed)
    rng = random.Random(seed)
    for i in range(instances):
        c, a, b = (rng.choice(K.OBJECTS) for _ in range(3))
        f = K.random_term(rng, c, a, depth)
        g = K.random_term(rng, c, b, depth)
        h = K.random_term(rng, c, Prod(a, b), depth)
        spec = SampleSpec(count, seed + i, 1000)
        pts = samples(c, spec)
        fg = pair(f, g)
        for name, lhs, rhs in (("left", Comp(ProjL(a, b), fg), f),
                               ("right", Comp(ProjR(a, b), fg), g),
                               ("fourman", pair(Comp(ProjL(a, b), h), Comp(ProjR(a, b), h)), h)):
            chk = eq_on_samples(lhs, rhs, spec, points=pts)
            out.record(f"{name}#{i}", chk.ok, chk.counterexample)
    return out


# --------------------------------------------------------------------------- #
# uniqueness rules with a passive parameter
# --------------------------------------------------------------------------- #

def _at_zero(f: MapTerm, a: Obj) -> MapTerm:
    """f . (l, 0!) : A x N -> B, i.e. (a, n) |-> f(a, 0)."""
    an = Prod(a, N)
    return Comp(f, pair(ProjL(a, N), Comp(ZERO, Bang(an))))


def _shift(f: MapTerm, a: Obj) -> MapTerm:
    """f . (A x s)"""
    return Comp(f, ProdMap(Id(a), SUCC))


def goodstein_instance(rng: random.Random, rule: int):
    """(premises, conclusion) as lists of (lhs, rhs) for one generated instance."""
    a = rng.choice((N, N2, ONE))
    an = Prod(a, N)
    r = ProjR(a, N)
    if rule == 1:
        b = rng.choice((N, N2, ONE))
        if rng.random() < 0.5:
            f = Pr(K.random_term(rng, a, b, 4), ProjR(an, b))
        else:
            f = Comp(K.random_term(rng, a, b, 4), ProjL(a, N))
        return [(_shift(f, a), f)], (f, _at_zero(f, a)), f
    if rule in (2, 3):
        g = K.random_term(rng, a, N, 4)
        step = SUCC if rule == 2 else S.pre
        if rule == 2 and rng.random() < 0.5:
            f = Comp(S.add, pair(Comp(g, ProjL(a, N)), r))
        else:
            f = Pr(g, Comp(step, ProjR(an, N)))
        op = S.add if rule == 2 else S.sub
        return [(_shift(f, a), Comp(step, f))], (f, Comp(op, pair(_at_zero(f, a), r))), f
    f = K.random_term(rng, an, N, 5)
    n = r
    at0 = _at_zero(f, a)
    again = Comp(f, pair(ProjL(a, N), compose(SUCC, S.pre, n)))
    g = Comp(S.add, pair(Comp(S.mult, pair(at0, Comp(S.neg, n))),
                         Comp(S.mult, pair(again, Comp(S.sign, n)))))
    zero_in = pair(Id(a), Comp(ZERO, Bang(a)))
    return ([(Comp(f, zero_in), Comp(g, zero_in)), (_shift(f, a), _shift(g, a))],
            (f, g), f)


def goodstein(seed: int = 0, instances: int = 100, count: int = 200) -> SuiteResult:
    """U1-U4 with premises holding by construction, plus pr versus its iterate encoding."""
    out = SuiteResult("goodstein", seed)
    rng = random.Random(seed)
    for i in range(instances):
        rule = i % 4 + 1
        premises, (lhs, rhs), _ = goodstein_instance(rng, rule)
        spec = SampleSpec(count, seed + i, 1000)
        for p_l, p_r in premises:
            chk = eq_on_samples(p_l, p_r, spec)
            if not chk:
                out.record(f"U{rule}#{i}-premise", False, chk.counterexample)
        chk = eq_on_samples(lhs, rhs, spec)
        out.record(f"U{rule}#{i}", chk.ok, chk.counterexample)
    for i in range(max(1, instances // 4)):
        a = rng.choice((N, N2, ONE))
        b = N
        g = K.random_term(rng, a, b, 4)
        an = Prod(a, N)
        rec = ProjR(an, b)
        counter = compose(ProjR(a, N), ProjL(an, b))
        h = rng.choice((Comp(SUCC, rec), Comp(S.add, pair(rec, counter)),
                        Comp(S.max_, pair(rec, counter)), Comp(S.pre, rec)))
        chk = eq_on_samples(Pr(g, h), pr_via_iter(g, h), SampleSpec(count, seed + i, 1000))
        out.record(f"pr-iter#{i}", chk.ok, chk.counterexample)
    return out


# --------------------------------------------------------------------------- #
# uniqueness of the initialised iterated
# --------------------------------------------------------------------------- #

def freyd_instances(rng: random.Random, n: int):
    """(f, g, h) triples where h satisfies both premises by construction."""
    out = []
    for i in range(n):
        a = rng.choice((N, N2, ONE))
        b = rng.choice((N, N2))
        f = K.random_term(rng, a, b, 4)
        g = K.random_endo_step(rng, b)
        an = Prod(a, N)
        if i % 2 == 0:
            h = Pr(f, Comp(g, ProjR(an, b)))
        else:
            h = pr_via_iter(f, Comp(g, ProjR(an, b)))
        out.append((f, g, h))
    return out


def freyd(seed: int = 0, instances: int = 20, count: int = 200) -> SuiteResult:
    out = SuiteResult("freyd", seed)
    rng = random.Random(seed)
    for i, (f, g, h) in enumerate(freyd_instances(rng, instances)):
        res = freyd_check(f, g, h, SampleSpec(count, seed + i, 1000))
        out.record(f"instance#{i}", res.verdict == "holds", res.counterexample)
    # premise violated on purpose: the step adds one too many
    f = Id(N)
    g = SUCC
    h = Pr(f, Comp(succ_twice(), ProjR(N2, N)))
    res = freyd_check(f, g, h, SampleSpec(count, seed, 1000))
    out.record("violated-step", res.vacuous, res.verdict)
    h = Pr(Comp(SUCC, f), Comp(g, ProjR(N2, N)))
    res = freyd_check(f, g, h, SampleSpec(count, seed, 1000))
    out.record("violated-init", res.vacuous, res.verdict)
    return out


def succ_twice() -> MapTerm:
    return Comp(SUCC, SUCC)


# --------------------------------------------------------------------------- #
# partial maps
# --------------------------------------------------------------------------- #

PARTIAL_MAGNITUDE = 40


def _budget(fuel: int, count: int, seed: int, magnitude: int = PARTIAL_MAGNITUDE) -> P.Budget:
    return P.Budget(fuel, SampleSpec(count, seed, magnitude))


def _probes(obj: Obj, count: int, seed: int, magnitude: int = PARTIAL_MAGNITUDE):
    return samples(obj, SampleSpec(count, seed, magnitude))


def _doubling() -> MapTerm:
    return Comp(S.mult, pair(const(2, N), Id(N)))


def first_factor_pairs() -> list:
    """(f, g) with g after f total on samples."""
    return [
        (P.embed(_doubling()), K.halving()),
        (P.embed(SUCC), K.predecessor()),
        (P.embed(Comp(S.mult, pair(const(3, N), Id(N)))), K.third()),
        (P.embed(Comp(S.mult, pair(Id(N), Id(N)))), K.exact_sqrt()),
        (P.embed(Comp(S.add, pair(Id(N), const(3, N)))), K.minus(3)),
        (K.down_to(5), P.embed(SUCC)),
    ]


def partiality(seed: int = 0, triples: int = 20, count: int = 100,
               fuel: int = 100_000) -> SuiteResult:
    out = SuiteResult("partiality", seed)
    b = _budget(fuel, count, seed)
    rng = random.Random(seed)
    endos = K.partial_endos()
    names = sorted(endos)

    try:
        P.mk_partial(N, N, N, const(0, N), Id(N), b)
        out.record("right-uniqueness", False, "accepted")
    except RightUniquenessViolation as exc:
        out.record("right-uniqueness", exc.witness == (0, 1), exc.witness)

    pts = _probes(N, count, seed)
    for i in range(triples):
        f, g, h = (endos[rng.choice(names)] for _ in range(3))
        lhs = P.compose_partial(h, P.compose_partial(g, f))
        rhs = P.compose_partial(P.compose_partial(h, g), f)
        out.verdict(f"assoc#{i}", P.agree_on(lhs, rhs, pts, b))

    pair_pts = _probes(N2, count, seed)
    triple_pts = _probes(N3, count, seed)
    for i in range(max(1, triples // 4)):
        f, g, h = (endos[rng.choice(names)] for _ in range(3))
        sw = P.embed(theta(N, N))
        out.verdict(f"theta#{i}", P.agree_on(P.compose_partial(sw, P.product_partial(f, g)),
                                            P.compose_partial(P.product_partial(g, f), sw),
                                            pair_pts, b))
        a = P.embed(ass(N, N, N))
        out.verdict(f"ass#{i}", P.agree_on(
            P.compose_partial(a, P.product_partial(P.product_partial(f, g), h)),
            P.compose_partial(P.product_partial(f, P.product_partial(g, h)), a),
            triple_pts, b))
        d = P.embed(Diag(N))
        out.verdict(f"diag#{i}", P.agree_on(P.compose_partial(d, f),
                                           P.compose_partial(P.product_partial(f, f), d),
                                           pts, b))
        left = P.embed(ProjL(N, N))
        fg = P.product_partial(f, g)
        out.verdict(f"half-projection#{i}", P.graph_included(
            P.compose_partial(left, fg), P.compose_partial(f, left), b))
        fw = P.pair_partial(P.compose_partial(left, P.pair_partial(f, g)),
                            P.compose_partial(P.embed(ProjR(N, N)), P.pair_partial(f, g)))
        out.verdict(f"fourman#{i}", P.agree_on(fw, P.pair_partial(f, g), pts, b))

    # full projectivity fails once the second factor has a smaller domain
    f, g = P.embed(SUCC), K.halving()
    left = P.embed(ProjL(N, N))
    v = P.graph_included(P.compose_partial(f, left),
                         P.compose_partial(left, P.product_partial(f, g)), b)
    out.record("projection-not-natural", v.fails, v.witness)
    v = P.agree_on(P.compose_partial(left, P.pair_partial(f, g)), f, pts, b)
    out.record("cartesian-projection-fails", v.fails, v.witness)

    for i, (f, g) in enumerate(first_factor_pairs()):
        gf = P.compose_partial(g, f)
        total = all(isinstance(P.apply_partial(gf, a, b), P.Defined) for a in pts)
        if not total:
            out.record(f"first-factor#{i}", None, "composite not total on samples")
            continue
        ok = all(isinstance(P.apply_partial(f, a, b), P.Defined) for a in pts)
        out.record(f"first-factor#{i}", ok)

    small = _budget(fuel, max(10, count // 4), seed, 12)
    for i, (fname, gname) in enumerate((("minus-3", "halving"), ("succ", "predecessor"),
                                        ("evens", "succ"))):
        f, g = endos[fname], endos[gname]
        # h = pr with base f and step g on the recursion value
        step = P.compose_partial(g, P.embed(ProjR(N2, N)))
        h = P.pr_partial(f, step)
        v = P.freyd_partial(f, g, h, small)
        out.verdict(f"freyd-partial#{i}", v)
        # both defining equations of the recursion
        at0 = P.compose_partial(h, P.embed(pair(Id(N), const(0, N))))
        out.verdict(f"pr-base#{i}", P.agree_on(at0, f, _probes(N, count, seed, 12), small))
        nxt = P.compose_partial(h, P.embed(ProdMap(Id(N), SUCC)))
        rec = P.compose_partial(step, P.pair_partial(P.embed(Id(N2)), h))
        out.verdict(f"pr-step#{i}", P.agree_on(nxt, rec, _probes(N2, count, seed, 12), small))
    return out


# --------------------------------------------------------------------------- #
# iteration
# --------------------------------------------------------------------------- #

def n_fold(f: P.PartialMap, a, n: int, b: P.Budget):
    """Apply f n times with fuel per application; the semantic reference."""
    x = a
    for _ in range(n):
        r = P.apply_partial(f, x, b)
        if not isinstance(r, P.Defined):
            return r
        x = r.value
    return P.Defined(x)


def _same(r, s) -> Optional[bool]:
    if isinstance(r, P.Defined) and isinstance(s, P.Defined):
        return r.value == s.value
    if isinstance(r, P.Defined) or isinstance(s, P.Defined):
        other = s if isinstance(r, P.Defined) else r
        return False if other.exhausted else None
    return True if r.exhausted and s.exhausted else None


def iteration(seed: int = 0, endos: int = 10, probes: int = 100, max_n: int = 20,
              fuel: int = 1_000_000) -> SuiteResult:
    """Symbolic iteration against n-fold fueled application."""
    out = SuiteResult("iteration", seed)
    b = P.Budget(fuel)
    rng = random.Random(seed)
    corpus = list(K.partial_endos().items())[:endos]
    for name, f in corpus:
        it = P.iterate_partial(f)
        for j, a in enumerate(_probes(N, probes, seed, 1000)):
            n = rng.randrange(max_n + 1)
            if j % 2 and name in ("halving", "third", "exact-sqrt", "exact-cbrt"):
                a = a % 64
            r = n_fold(f, a, n, b)
            s = P.apply_partial(it, (a, n), b)
            out.record(f"{name}@{a},{n}", _same(r, s), (r, s))
    return out


# --------------------------------------------------------------------------- #
# maps with partial graphs
# --------------------------------------------------------------------------- #

def closure(seed: int = 0, metas: int = 20, probes: int = 100,
            fuel: int = 10_000) -> SuiteResult:
    out = SuiteResult("closure", seed)
    b = P.Budget(fuel)
    pts = _probes(N, probes, seed)
    ms = K.meta_maps(metas)
    total = unknown = 0

    def tally(name, v):
        nonlocal total, unknown
        total += v.checked
        unknown += v.indeterminate
        out.verdict(name, v)

    for i, (name, m) in enumerate(ms):
        flat = P.flatten_meta(m)
        again = P.flatten_meta(P.meta_lift(flat))
        tally(f"idempotent:{name}", P.agree_on(flat, again, pts, b))
        other_name, other = ms[(i + 1) % len(ms)]
        composite = P.flatten_meta(P.meta_compose(other, m))
        stepwise = P.compose_partial(P.flatten_meta(other), flat)
        tally(f"compose:{other_name}.{name}", P.agree_on(composite, stepwise, pts, b))
    for name, f in K.partial_endos().items():
        tally(f"lift:{name}", P.agree_on(P.flatten_meta(P.meta_lift(f)), f, pts, b))
    out.notes.update(probes=total, indeterminate_probes=unknown)
    return out


# --------------------------------------------------------------------------- #
# minimisation
# --------------------------------------------------------------------------- #

def ceil_sqrt_oracle(a: int) -> int:
    n = 0
    while n * n < a:
        n += 1
    return n


def _ceil_half_term() -> MapTerm:
    return Comp(S.div, pair(Comp(SUCC, Id(N)), const(2, N)))


def mu_suite(seed: int = 0, probes: int = 200, fuel: int = 100_000) -> SuiteResult:
    out = SuiteResult("mu", seed)
    b = _budget(fuel, probes, seed, 1000)
    phis = {
        "ceil-sqrt": K.ceil_sqrt_predicate(),
        "ceil-half": Comp(S.leq, pair(ProjL(N, N), Comp(S.mult, pair(const(2, N2), ProjR(N, N))))),
        "divisor>1": Comp(S.and_, pair(Comp(S.lt, pair(const(1, N2), ProjR(N, N))),
                                       Comp(S.neg, Comp(S.mod, pair(ProjL(N, N), ProjR(N, N)))))),
    }
    for name, phi in phis.items():
        m = M.mu(phi, SampleSpec(probes, seed, 1000))
        test = compile_term(phi)
        for x in P.domain_points(m, _budget(fuel, probes // 4, seed, 60)):
            a, v = m.enum(x), m.at(x)
            ok = test((a, v)) == 1 and all(test((a, k)) == 0 for k in range(v))
            out.record(f"minimal:{name}", ok, x)

    # handcrafted maps meeting both antecedents are contained in mu
    q = ProjR(N, N)
    exact_ceil_sqrt = PredObject(N2, Comp(S.and_, pair(
        phis["ceil-sqrt"],
        Comp(S.lt, pair(Comp(S.mult, pair(Comp(S.pre, q), Comp(S.pre, q))),
                        Comp(S.add, pair(ProjL(N, N), Comp(S.neg, q))))))))
    hand = P.PartialMap(P.full(N), P.full(N), exact_ceil_sqrt, ProjL(N, N), q,
                        lambda a: ((a, n) for n in range(a + 1)))
    out.verdict("mu!:ceil-sqrt", P.graph_included(hand, M.mu(phis["ceil-sqrt"]), b))
    out.verdict("mu!:ceil-half", P.graph_included(P.embed(_ceil_half_term()),
                                                  M.mu(phis["ceil-half"]), b))

    m = M.mu(phis["ceil-sqrt"])
    for a in _probes(N, probes, seed, 1000):
        r = P.apply_partial(m, a, b)
        out.record(f"ceil-sqrt@{a}", isinstance(r, P.Defined) and r.value == ceil_sqrt_oracle(a), r)

    always = M.mu(true_(N2))
    out.verdict("true-is-zero", P.agree_on(always, P.embed(const(0, N)), _probes(N, 50, seed), b))
    never = M.mu(false_(N2))
    small = P.Budget(500)
    out.record("false-undefined",
               all(isinstance(P.apply_partial(never, a, small), P.NoWitnessWithinFuel)
                   for a in _probes(N, 20, seed)))
    return out


def church(seed: int = 0, probes: int = 100, fuel: int = 1_000_000) -> SuiteResult:
    """Single-search representation against the original, for each corpus map."""
    out = SuiteResult("church", seed)
    b = _budget(fuel, probes, seed)
    total = unknown = 0
    for name, f in K.flat_partial_maps().items():
        v = P.partial_equal(M.mu_represent(f), f, b)
        total += v.checked
        unknown += v.indeterminate
        out.verdict(name, v)
    out.notes.update(probes=total, indeterminate_probes=unknown)
    return out


# --------------------------------------------------------------------------- #
# normal form
# --------------------------------------------------------------------------- #

def terminating_probes(p: M.LoopProgram, want: int, seed: int, fuel: int,
                       magnitude: int = PARTIAL_MAGNITUDE, attempts: int = 20):
    """Up to ``want`` (input, result) pairs on which the direct run terminates."""
    src, _ = M.program_type(p)
    found = []
    b = P.Budget(fuel)
    for k in range(attempts):
        for a in samples(src, SampleSpec(want, seed + k, magnitude)):
            r = M.interpret(p, a, b)
            if isinstance(r, P.Defined):
                found.append((a, r))
                if len(found) >= want:
                    return found
    return found


def is_single_mu(f: P.PartialMap) -> bool:
    a = f.src.base
    return f.dom_def.base == Prod(a, NAT) and f.enumeration == ProjL(a, NAT)


def normalization(seed: int = 0, probes: int = 200, fuel: int = 1_000_000) -> SuiteResult:
    out = SuiteResult("normalization", seed)
    b = P.Budget(fuel)
    for name, p in K.loop_programs().items():
        nf = M.normalize_single_mu(p)
        out.record(f"shape:{name}", is_single_mu(nf))
        cases = terminating_probes(p, probes, seed, fuel)
        if len(cases) < probes:
            out.record(f"coverage:{name}", None, len(cases))
        bad = None
        for a, r in cases:
            s = P.apply_partial(nf, a, b)
            if s != r:
                bad = (a, r, s)
                break
        out.record(name, bad is None, bad)
    return out


# --------------------------------------------------------------------------- #
# while loops
# --------------------------------------------------------------------------- #

def while_suite(seed: int = 0, probes: int = 200, fuel: int = 100_000) -> SuiteResult:
    out = SuiteResult("while", seed)
    b = _budget(fuel, probes, seed, 1000)
    gt5 = K.gt(5)
    c = M.while_characterisation(gt5, S.pre, b)
    out.record("characterisation:pre", c.holds and c.stopped > 0 and c.continued > 0, c)
    c = M.while_characterisation(false_(N), SUCC, b)
    out.record("characterisation:false", c.holds and c.continued == 0, c)
    small = _budget(2000, 30, seed, 1000)
    c = M.while_characterisation(Comp(S.sign, Id(N)), SUCC, small)
    out.record("characterisation:diverging", c.holds and c.skipped > 0, c)

    dd = M.dominated_def(gt5, S.pre)
    stops, result = compile_term(dd.stops), compile_term(dd.result)
    for arg, want in (((4, 9), 1), ((3, 9), 0), ((0, 3), 1), ((5, 9), 1)):
        out.record(f"dominated@{arg}", stops(arg) == want, stops(arg))
    for arg, want in ((((4, 9), 5), 1), (((9, 9), 5), 1), (((9, 9), 6), 0), (((3, 9), 5), 0)):
        out.record(f"result@{arg}", result(arg) == want, result(arg))

    wh = M.while_loop(gt5, S.pre)
    for a, want in ((9, 5), (3, 3)):
        r = P.apply_partial(wh, a, b)
        out.record(f"down@{a}", r == P.Defined(want), r)
    stuck = M.while_loop(true_(N), Id(N))
    short = P.Budget(1000)
    for a in _probes(N, 20, seed):
        r = P.apply_partial(stuck, a, short)
        out.record(f"diverges@{a}", isinstance(r, P.NoWitnessWithinFuel), r)

    loops = {"down-to-5": (gt5, S.pre), "up-by-7": (Comp(S.lt, pair(Id(N), const(50, N))),
                                                     succ_power(7)),
             "gcd": (K.gcd_guard(), K.gcd_step())}
    for name, (chi, f) in loops.items():
        wh = M.while_loop(chi, f)
        body = M.While(chi, f)
        part = M.while_partial(chi, P.embed(f))
        src, _ = M.program_type(body)
        for a in _probes(src, max(1, probes // 4), seed, 200):
            r = M.interpret(body, a, b)
            s = P.apply_partial(wh, a, b)
            t = P.apply_partial(part, a, b)
            out.record(f"{name}@{a}", _same(r, s) is not False and _same(r, t) is not False,
                       (r, s, t))
    return out


# --------------------------------------------------------------------------- #
# registry
# --------------------------------------------------------------------------- #

def _f(fuel, default):
    return default if fuel is None else fuel


SUITES: list[tuple[str, Callable[..., SuiteResult]]] = [
    ("arith-oracles", lambda seed, n, fuel: arith_oracles(seed, min(n, 1000))),
    ("arithmetic-laws", lambda seed, n, fuel: arithmetic_laws(seed, min(n, 500))),
    ("godement-fourman", lambda seed, n, fuel: godement_fourman(seed, 50, min(n, 200))),
    ("goodstein", lambda seed, n, fuel: goodstein(seed, 100, min(n, 200))),
    ("freyd", lambda seed, n, fuel: freyd(seed, 20, min(n, 200))),
    ("partiality", lambda seed, n, fuel: partiality(seed, 20, min(n, 100), _f(fuel, 100_000))),
    ("iteration", lambda seed, n, fuel: iteration(seed, 10, min(n, 100), 20, _f(fuel, 1_000_000))),
    ("closure", lambda seed, n, fuel: closure(seed, 20, min(n, 100), _f(fuel, 10_000))),
    ("mu", lambda seed, n, fuel: mu_suite(seed, min(n, 200), _f(fuel, 100_000))),
    ("church", lambda seed, n, fuel: church(seed, min(n, 100), _f(fuel, 1_000_000))),
    ("normalization", lambda seed, n, fuel: normalization(seed, min(n, 200), _f(fuel, 1_000_000))),
    ("while", lambda seed, n, fuel: while_suite(seed, min(n, 200), _f(fuel, 100_000))),
]

SUITE_NAMES = [name for name, _ in SUITES]


def run_all(seed: int = 0, samples_: int = 1000, fuel: Optional[int] = None,
            only: Optional[list[str]] = None) -> list[SuiteResult]:
    """Every suite (or those named in ``only``) at its default sizes, capped by ``samples_``.

    ``fuel=None`` keeps each suite's own fuel.
    """
    return [fn(seed, samples_, fuel) for name, fn in SUITES if only is None or name in only]
