import random

import pytest
from hypothesis import given, settings, strategies as st

from prcat.core import NAT, ONE, Comp, Id, ProjL, ProjR, Prod, const, pair, true_
from prcat.corpus import random_term
from prcat.evaluate import SampleSpec, compile_term, eq_on_samples, eval_term, samples
from prcat import stdlib as S

N = NAT
N2 = Prod(N, N)
nat = st.integers(0, 300)


def test_truncated_subtraction_anchors():
    assert eval_term(S.sub, (5, 2)) == 3
    assert eval_term(S.sub, (2, 5)) == 0
    assert compile_term(S.sub, jets=False)((5, 2)) == 3
    assert compile_term(S.sub, jets=False)((2, 5)) == 0


def test_mult_base_case():
    for a in samples(N, SampleSpec(50, 4)):
        assert eval_term(S.mult, (a, 0)) == 0


def test_exp_zero_power_is_one():
    assert compile_term(S.exp, jets=False)((0, 0)) == 1
    assert compile_term(S.exp, jets=False)((3, 4)) == 81


def test_order_examples():
    assert eval_term(S.leq, (3, 3)) == 1
    assert eval_term(S.max_, (2, 7)) == eval_term(S.max_, (7, 2)) == 7
    assert eval_term(S.eq_obj(N2), ((1, 2), (1, 3))) == 0
    assert eval_term(S.eq_obj(N2), ((1, 2), (1, 2))) == 1
    assert eval_term(S.eq_obj(ONE), ((), ())) == 1


def test_cantor_anchor_and_round_trip():
    assert eval_term(S.cantor_pair, (0, 0)) == 0
    enc, dec = compile_term(S.cantor_pair), compile_term(S.cantor_unpair)
    for x, y in samples(N2, SampleSpec(1000, 5, 10**6)):
        assert dec(enc((x, y))) == (x, y)
    enc = compile_term(S.cantor_pair, jets=False)
    dec = compile_term(S.cantor_unpair, jets=False)
    for x, y in samples(N2, SampleSpec(100, 5, 30)):
        assert dec(enc((x, y))) == (x, y)


def test_cantor_pair_is_a_bijection_on_a_prefix():
    dec = compile_term(S.cantor_unpair, jets=False)
    seen = {dec(z) for z in range(210)}
    assert len(seen) == 210
    assert {(x, y) for x in range(20) for y in range(20) if x + y < 20} == seen


def test_count_is_surjective_on_sampled_pairs():
    count = compile_term(S.cnt(N2))
    table = {}
    for z in range(5000):
        table.setdefault(count(z), z)
    for p in samples(N2, SampleSpec(200, 6, 40)):
        assert p in table
        assert count(eval_term(S.index(N2), p)) == p


def test_count_on_nested_objects():
    obj = Prod(Prod(N, ONE), N)
    c, i = compile_term(S.cnt(obj)), compile_term(S.index(obj))
    for x in samples(obj, SampleSpec(100, 7)):
        assert c(i(x)) == x


def test_bounded_min_conventions():
    sqrt_phi = Comp(S.leq, pair(ProjL(N, N), Comp(S.mult, pair(ProjR(N, N), ProjR(N, N)))))
    assert eval_term(S.bounded_min(sqrt_phi), (10, 4)) == 4
    never = S.bounded_min(const(0, N2))
    always = S.bounded_min(true_(N2))
    for a, n in samples(N2, SampleSpec(100, 8)):
        assert eval_term(never, (a, n)) == n + 1
        assert eval_term(always, (a, n)) == 0


@pytest.mark.parametrize("name", sorted(S.CATALOG))
def test_catalog_against_oracle_without_jets(name):
    entry = S.CATALOG[name]
    fn = compile_term(entry.term, jets=False)
    big = 10**6 if name in ("add", "pre", "sub") else 60
    for x in samples(entry.type[0], SampleSpec(150, 9, big)):
        assert fn(x) == entry.oracle(x)


def test_div_mod_by_zero_conventions():
    assert eval_term(S.div, (7, 0)) == 8
    assert eval_term(S.mod, (7, 0)) == 7
    assert eval_term(S.div, (7, 2)) == 3
    assert eval_term(S.mod, (7, 2)) == 1


@pytest.mark.parametrize("name", sorted(S.predicates()))
def test_predicates_are_idempotent_under_sign(name):
    chi = S.CATALOG[name].term
    assert eq_on_samples(Comp(S.sign, chi), chi, SampleSpec(300, 1))


@settings(max_examples=200, deadline=None)
@given(nat, nat, nat)
def test_equality_is_an_equivalence(a, b, c):
    eq = compile_term(S.eq_nat)
    assert eq((a, a)) == 1
    assert eq((a, b)) == eq((b, a))
    if eq((a, b)) and eq((b, c)):
        assert eq((a, c)) == 1


@settings(max_examples=200, deadline=None)
@given(nat, nat, nat)
def test_trichotomy(a, b, c):
    lt, eq = compile_term(S.lt, jets=False), compile_term(S.eq_nat, jets=False)
    assert lt((a, b)) + eq((a, b)) + lt((b, a)) == 1


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000))
def test_equality_is_substitutive(seed):
    rng = random.Random(seed)
    f = compile_term(random_term(rng, N, N, 4))
    eq = compile_term(S.eq_nat)
    for a, b in samples(N2, SampleSpec(30, seed, 50)):
        if eq((a, b)):
            assert eq((f(a), f(b))) == 1


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000))
def test_equality_definability_shadow(seed):
    rng = random.Random(seed)
    f = random_term(rng, N, N, 3)
    g = f if rng.random() < 0.5 else random_term(rng, N, N, 3)
    spec = SampleSpec(80, seed, 60)
    same = bool(eq_on_samples(f, g, spec))
    via_predicate = bool(eq_on_samples(Comp(S.eq_nat, pair(f, g)), true_(N), spec))
    assert same == via_predicate


@settings(max_examples=100, deadline=None)
@given(nat, nat, nat)
def test_semiring_and_subtraction_laws_without_jets(a, b, c):
    add = compile_term(S.add, jets=False)
    mult = compile_term(S.mult, jets=False)
    sub = compile_term(S.sub, jets=False)
    assert add((a, b)) == add((b, a))
    assert mult((a, add((b, c)))) == add((mult((a, b)), mult((a, c))))
    assert mult((a, sub((b, c)))) == sub((mult((a, b)), mult((a, c))))


def test_cond_selects_branch():
    pick = S.cond(ProjL(N, N), ProjR(N, N), const(9, N2))
    assert eval_term(pick, (0, 4)) == 9
    assert eval_term(pick, (3, 4)) == 4


def test_catalog_views():
    assert set(S.mk_arith()) == set(S.ARITH)
    assert set(S.mk_logic_order()) == set(S.LOGIC_ORDER)
    assert all(e.type[1] == N for e in S.predicates().values())
