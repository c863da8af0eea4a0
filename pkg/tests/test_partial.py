import dataclasses

import pytest
from hypothesis import given, settings, strategies as st

from prcat import corpus as K
from prcat import partial as P
from prcat.abstraction import full
from prcat.core import (
    NAT, SUCC, Comp, Id, Prod, ProdMap, ProjL, ProjR, const, pair, theta,
)
from prcat.errors import DomainError, Indeterminate, RightUniquenessViolation, TermTypeError
from prcat.evaluate import SampleSpec, compile_term
from prcat.muwhile import mu
from prcat import stdlib as S

N = NAT
N2 = Prod(N, N)
SMALL = P.Budget(100_000, SampleSpec(60, 0, 40))


def defined(f, a, b=SMALL):
    r = P.apply_partial(f, a, b)
    assert isinstance(r, P.Defined), (a, r)
    return r.value


def undefined(f, a, b=SMALL):
    return isinstance(P.apply_partial(f, a, b), P.NoWitnessWithinFuel)


def test_partial_subtraction():
    psub = K.partial_sub()
    assert P.apply_partial(psub, (5, 2)) == P.Defined(3)
    r = P.apply_partial(psub, (2, 5), P.Budget(5000))
    assert isinstance(r, P.NoWitnessWithinFuel) and r.exhausted
    assert str(r) == "no-witness fuel=5000"
    assert str(P.Defined((1, 2))) == "defined (1 . 2)"


def test_embedded_total_map():
    f = P.embed(Comp(S.mult, pair(Id(N), Id(N))))
    for a in range(20):
        assert defined(f, a) == a * a


def test_constant_enumeration_is_not_right_unique():
    with pytest.raises(RightUniquenessViolation) as info:
        P.mk_partial(N, N, N, const(0, N), Id(N))
    assert info.value.witness == (0, 1)


def test_mk_partial_checks_types():
    with pytest.raises(TermTypeError):
        P.mk_partial(N, N, N2, Id(N), Id(N))


def test_apply_rejects_values_outside_source():
    with pytest.raises(DomainError):
        P.apply_partial(K.halving(), (1, 2))


def test_composite_after_halving():
    f = P.compose_partial(P.embed(SUCC), K.halving())
    assert defined(f, 4) == 3
    r = P.apply_partial(f, 3)
    assert isinstance(r, P.NoWitnessWithinFuel) and r.exhausted


def test_embedding_is_functorial():
    g, f = Comp(S.mult, pair(Id(N), const(3, N))), Comp(S.add, pair(Id(N), const(4, N)))
    v = P.agree_on(P.compose_partial(P.embed(g), P.embed(f)), P.embed(Comp(g, f)), range(50))
    assert v.holds


def test_product_of_embedded_totals():
    f, g = P.embed(SUCC), P.embed(S.pre)
    v = P.agree_on(P.product_partial(f, g), P.embed(ProdMap(SUCC, S.pre)),
                   [(a, b) for a in range(8) for b in range(8)])
    assert v.holds


def test_minimised_opposite_of_successor():
    pre = P.opposite_min(SUCC, Id(N))
    assert P.apply_partial(pre, 6) == P.Defined(5)
    assert undefined(pre, 0, P.Budget(2000))


def test_opposite_undoes_its_enumeration():
    d = Comp(S.mult, pair(Id(N), const(2, N)))
    half = P.opposite_min(d, Id(N))
    back = P.compose_partial(P.embed(d), half)
    assert P.graph_included(back, P.partial_identity(full(N)), SMALL).holds
    assert defined(half, 10) == 5


def test_graph_inclusion():
    psub = K.partial_sub()
    assert P.graph_included(psub, psub, SMALL).holds
    assert P.graph_included(psub, P.embed(S.sub), SMALL).holds
    v = P.graph_included(P.embed(S.sub), psub, P.Budget(2000, SampleSpec(60, 0, 40)))
    assert v.fails and not v
    a, b = v.witness
    assert a < b


def test_equality_with_explicit_witnesses():
    f = K.partial_sub()
    ident = Id(f.dom_def.base)
    assert P.partial_equal(f, f, SMALL, (ident, ident)).holds


def test_comparison_map_must_land_in_target():
    f, g = K.halving(), K.third()
    ident = Id(N2)
    assert P.graph_included(f, g, SMALL, ident).fails


def test_iterate_successor():
    it = P.iterate_partial(P.embed(SUCC))
    assert defined(it, (3, 4)) == 7


@pytest.mark.parametrize("name", sorted(K.partial_endos()))
def test_zero_iterations(name):
    it = P.iterate_partial(K.partial_endos()[name])
    for a in (0, 1, 7, 40):
        assert defined(it, (a, 0)) == a


def n_fold(f, a, n):
    for _ in range(n):
        r = P.apply_partial(f, a, SMALL)
        if not isinstance(r, P.Defined):
            return None
        a = r.value
    return a


@pytest.mark.parametrize("name", ["halving", "predecessor", "minus-3", "down-to-5", "exact-sqrt"])
def test_iteration_matches_repeated_application(name):
    f = K.partial_endos()[name]
    it = P.iterate_partial(f)
    for a in (0, 1, 2, 8, 16, 81, 100):
        for n in range(5):
            want = n_fold(f, a, n)
            r = P.apply_partial(it, (a, n), SMALL)
            if want is None:
                assert isinstance(r, P.NoWitnessWithinFuel)
            else:
                assert r == P.Defined(want)


def test_flatten_total_graph_gives_back_the_map():
    f = K.halving()
    assert P.agree_on(P.flatten_meta(P.meta_lift(f)), f, range(40), SMALL).holds


def test_flatten_reads_graph():
    gamma = P.embed(pair(Id(N), SUCC))
    f = P.flatten(gamma)
    assert defined(f, 4) == 5


def test_meta_composition_coherence():
    ms = dict(K.meta_maps(20))
    m1, m2 = ms["halving/1"], ms["predecessor/1"]
    whole = P.flatten_meta(P.meta_compose(m2, m1))
    steps = P.compose_partial(P.flatten_meta(m2), P.flatten_meta(m1))
    assert P.agree_on(whole, steps, range(60), SMALL).holds


def test_restriction_cuts_the_graph():
    ms = dict(K.meta_maps(40))
    f = P.flatten_meta(ms["succ/1"])  # successor where 3 divides the argument
    assert defined(f, 3) == 4
    assert undefined(f, 4)


def test_associativity_on_a_triple():
    e = K.partial_endos()
    f, g, h = e["halving"], e["predecessor"], e["third"]
    lhs = P.compose_partial(h, P.compose_partial(g, f))
    rhs = P.compose_partial(P.compose_partial(h, g), f)
    assert P.agree_on(lhs, rhs, range(80), SMALL).holds


def test_transposition_is_natural():
    f, g = K.halving(), K.predecessor()
    sw = P.embed(theta(N, N))
    v = P.agree_on(P.compose_partial(sw, P.product_partial(f, g)),
                   P.compose_partial(P.product_partial(g, f), sw),
                   [(a, b) for a in range(10) for b in range(10)], SMALL)
    assert v.holds


def test_projection_is_only_half_natural():
    f, g = P.embed(SUCC), K.halving()
    left = P.embed(ProjL(N, N))
    assert P.graph_included(P.compose_partial(left, P.product_partial(f, g)),
                            P.compose_partial(f, left), SMALL).holds
    v = P.graph_included(P.compose_partial(f, left),
                         P.compose_partial(left, P.product_partial(f, g)), SMALL)
    assert v.fails and v.witness[1] % 2 == 1


def test_pair_of_partial_maps():
    f = P.pair_partial(K.halving(), P.embed(SUCC))
    assert defined(f, 6) == (3, 7)
    assert undefined(f, 5)


def test_pr_partial_equations():
    f, g = K.minus(3), K.halving()
    step = P.compose_partial(g, P.embed(ProjR(N2, N)))
    h = P.pr_partial(f, step)
    assert defined(h, (11, 0)) == 8
    assert defined(h, (11, 3)) == 1
    assert undefined(h, (14, 1))


def test_freyd_for_partial_maps():
    f, g = K.minus(3), K.halving()
    h = P.pr_partial(f, P.compose_partial(g, P.embed(ProjR(N2, N))))
    assert P.freyd_partial(f, g, h, P.Budget(100_000, SampleSpec(20, 0, 12))).holds
    wrong = P.pr_partial(f, P.compose_partial(P.embed(SUCC), P.embed(ProjR(N2, N))))
    v = P.freyd_partial(f, g, wrong, P.Budget(100_000, SampleSpec(20, 0, 12)))
    assert v.fails and v.witness[0] == "premise"


def test_plans_never_change_results():
    # a plan proposing junk must still only return verified witnesses
    f = dataclasses.replace(K.halving(), plan=lambda a: iter([(a, 0), (a, 1), (a, a // 2)]))
    assert defined(f, 10) == 5
    assert undefined(f, 11)


def test_indeterminate_verdict_refuses_truth_value():
    v = P.agree_on(mu(const(0, N2)), P.embed(Id(N)), range(3), P.Budget(50))
    assert v.status == P.INDETERMINATE
    with pytest.raises(Indeterminate):
        bool(v)


def test_budget_validation():
    with pytest.raises(ValueError):
        P.Budget(0)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2000))
def test_halving_matches_division(a):
    r = P.apply_partial(K.halving(), a, SMALL)
    if a % 2 == 0:
        assert r == P.Defined(a // 2)
    else:
        assert isinstance(r, P.NoWitnessWithinFuel) and r.exhausted


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 60), st.integers(0, 60))
def test_partial_sub_agrees_with_native(a, b):
    r = P.apply_partial(K.partial_sub(), (a, b), P.Budget(20_000))
    if b <= a:
        assert r == P.Defined(a - b)
    else:
        assert isinstance(r, P.NoWitnessWithinFuel)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 500))
def test_first_factor_of_total_composite_is_total(a):
    double = P.embed(Comp(S.mult, pair(Id(N), const(2, N))))
    gf = P.compose_partial(K.halving(), double)
    assert defined(gf, a) == a
    assert defined(double, a) == 2 * a


def test_domain_points_lie_in_the_domain():
    for name, f in K.partial_endos().items():
        chi = compile_term(f.dom_def.chi)
        pts = P.domain_points(f, SMALL)
        assert pts, name
        assert all(chi(x) == 1 for x in pts)
