from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from virw.catalog import (SpecError, affine_virasoro, expand_filtration_element, frak_l, ghat,
                          gspec_from_config, heisenberg, in_filtration, make_algebra,
                          map_algebra, one_dim, project_to_ghat, q_super, sl2, spec_from_config,
                          valuation_at_one, vir0beta, witt, wh)
from virw.graded import X, Element, Sym, bracket, parse_element, verify_axioms
from virw.rings import grassmann, trunc_poly
from virw.suites import rel_subalg_w, rel_subalg_x

small = st.integers(0, 4)
idx = st.integers(-4, 4)
betas = st.sampled_from([0, -1, 2, Fraction(1, 2)])


def br(alg, a, b):
    return bracket(alg, parse_element(a, alg), parse_element(b, alg))


def el(alg, text):
    return parse_element(text, alg)


@pytest.mark.parametrize("spec", [
    witt(), frak_l(heisenberg(Fraction(1, 3), 2)), frak_l(sl2(Fraction(-1, 2))), vir0beta(0),
    vir0beta(-1), vir0beta(1), affine_virasoro(), q_super(), wh(Fraction(2, 5)),
    map_algebra(witt(), grassmann(2)), map_algebra(frak_l(one_dim(3)), trunc_poly(2)),
], ids=lambda s: s.family)
def test_catalog_axioms(spec):
    assert verify_axioms(make_algebra(spec), 3).passed


def test_current_bracket():
    alg = make_algebra(frak_l(one_dim(Fraction(1, 2))))
    # [d_i, x(k)] = (k + i b) x(i+k)
    assert br(alg, "d(2)", "E(3)") == el(alg, "4*E(5)")


def test_vir0beta_central_terms():
    assert br(make_algebra(vir0beta(0)), "d(2)", "E(-2)") == el(make_algebra(vir0beta(0)), "6*C2 - 2*E(0)")
    a = make_algebra(vir0beta(-1))
    assert br(a, "d(2)", "E(-2)") == el(a, "1/2*C2 - 4*E(0)")
    a = make_algebra(vir0beta(1))
    assert br(a, "d(2)", "E(-2)") == el(a, "2*C2 + C3")
    a = make_algebra(vir0beta(0))
    assert br(a, "E(2)", "E(-2)") == el(a, "2*C4")
    assert br(a, "d(2)", "d(-2)") == el(a, "1/2*C1 - 4*d(0)")


def test_q_superalgebra():
    a = make_algebra(q_super())
    assert br(a, "H(1)", "G(2)") == el(a, "G(3)")
    # two odd elements: the bracket is symmetric
    assert br(a, "G(1)", "G(2)") == br(a, "G(2)", "G(1)")


def test_map_algebra_koszul_sign():
    a = make_algebra(map_algebra(witt(), grassmann(2)))
    x = el(a, "d(1)@xi1")
    y = el(a, "d(2)@xi2")
    assert bracket(a, x, y) == el(a, "d(3)@xi1.xi2")
    assert bracket(a, y, x) == bracket(a, x, y)


def test_heisenberg_requires_derivation():
    with pytest.raises(SpecError):
        gspec_from_config({"preset": "heisenberg", "beta": [1, 1, 3]})


def test_affine_virasoro_rejects_nonzero_beta():
    with pytest.raises(SpecError):
        make_algebra(affine_virasoro(sl2(1)))


def test_spec_from_config_round_trip():
    spec = spec_from_config({"family": "MapAlgebra", "base": {"family": "Witt"},
                             "ring": {"family": "Grassmann", "n": 2}})
    assert spec == map_algebra(witt(), grassmann(2))


@settings(max_examples=60, deadline=None)
@given(small, small, idx, idx)
def test_binomial_bracket_w(k, l, i, j):
    alg = make_algebra(witt())
    lhs = bracket(alg, expand_filtration_element("W", k, i), expand_filtration_element("W", l, j))
    assert lhs == rel_subalg_w(k, l, i, j)


@settings(max_examples=60, deadline=None)
@given(betas, small, small, idx, idx)
def test_binomial_bracket_x(beta, k, l, i, j):
    alg = make_algebra(frak_l(one_dim(beta)))
    lhs = bracket(alg, expand_filtration_element("W", k, i), expand_filtration_element("I", l, j))
    assert lhs == rel_subalg_x(alg.beta(0), k, l, i, j)


def test_valuation():
    a = expand_filtration_element("W", 3, 2) + expand_filtration_element("I", 1, 0)
    assert valuation_at_one(a) == (3, 1)
    assert in_filtration(a, 1) and not in_filtration(a, 2)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 3), idx, idx)
def test_filtration_step(k, i, j):
    alg = make_algebra(frak_l(heisenberg(Fraction(1, 2), 3)))
    a = expand_filtration_element("W", 2, i)
    b = expand_filtration_element("I", k, j, 0)
    assert in_filtration(bracket(alg, a, b), k + 1)


def test_projection_to_ghat():
    g = heisenberg(Fraction(1, 2), 3)
    alg, hat = make_algebra(frak_l(g)), make_algebra(ghat(g))
    a = expand_filtration_element("W", 1, 2)     # (t-1) d_2 = d_3 - d_2 -> dbar
    b = expand_filtration_element("I", 0, -1, 0)
    c = expand_filtration_element("I", 0, 3, 1)
    assert project_to_ghat(a + a) == project_to_ghat(a) * 2
    for u, v in ((a, b), (b, c)):
        assert project_to_ghat(bracket(alg, u, v)) == bracket(hat, project_to_ghat(u), project_to_ghat(v))
    assert not project_to_ghat(expand_filtration_element("I", 1, 2, 0))
    assert project_to_ghat(Element({Sym(X, 0, 4, ()): 1})) == project_to_ghat(b)
