import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from virw.catalog import affine_virasoro, frak_l, heisenberg, make_algebra, one_dim, sl2, witt
from virw.graded import D, T, X, Sym
from virw.modules import (Beta1Exceptional, EvaluationModule, IntermediateSeries, ModuleError,
                          ModuleVector, TensorModule, annihilates, check_a_associativity,
                          check_module_axioms, check_weight_additivity, cyclic_span_rank,
                          exceptional_mismatch_witness, format_vector, make_vbar,
                          min_annihilating_order, module_from_config, parse_vector,
                          probe_simplicity, sample_vbar, shift_relation_holds, trivial_vbar)
from virw.enveloping import omega_words
from virw.rings import PsiSpec, RingError, grassmann, trunc_poly
from virw.suites import omega2_oracle

rat = st.fractions(min_value=-16, max_value=16, max_denominator=16)


def test_intermediate_series_action():
    v = IntermediateSeries(0, 2)
    assert v.act_sym(Sym(D, 0, 1, ()), ModuleVector.basis(0)) == ModuleVector.basis(1) * 2


@settings(max_examples=30, deadline=None)
@given(rat, rat, st.integers(-5, 5), st.integers(-5, 5), st.integers(-5, 5))
def test_omega2_scalar(alpha, beta, k, s, j):
    mod = IntermediateSeries(alpha, beta)
    img = mod.act_words(omega_words(2, k, s), ModuleVector.basis(j))
    expected = 2 * beta * (1 - beta)
    assert img == ModuleVector.basis(j + k + s) * expected
    assert omega2_oracle(alpha, beta, k, s, j) == expected


@pytest.mark.parametrize("beta,order", [(2, 3), (0, 2), (1, 2), (Fraction(1, 3), 3)])
def test_min_order(beta, order):
    assert min_annihilating_order(IntermediateSeries(Fraction(1, 5), beta)).order == order


def test_tensor_modules_are_jet_modules():
    rng = random.Random(3)
    for g in (heisenberg(Fraction(1, 2), 2), sl2(Fraction(1, 3)), one_dim(Fraction(-2, 7))):
        alg = make_algebra(frak_l(g))
        for _ in range(2):
            mod = TensorModule(alg, Fraction(rng.randint(-9, 9), 7), sample_vbar(g, rng))
            assert check_module_axioms(mod, 3).passed
            assert check_a_associativity(mod, 3).passed
            assert check_weight_additivity(mod, 3).passed
            assert shift_relation_holds(mod)
            assert annihilates(mod, "OmegaBar", 2)[0]


def test_bad_vbar_rejected():
    g = one_dim(1)
    with pytest.raises(ModuleError):
        # [D, X] must equal beta X
        TensorModule(make_algebra(frak_l(g)), 0, make_vbar(g, [[0, 0], [0, 0]], [[[0, 1], [0, 0]]]))


def test_exceptional_module():
    mod = Beta1Exceptional(Fraction(1, 2), 3, 5)
    assert check_module_axioms(mod, 3).passed
    w = exceptional_mismatch_witness(mod, 0)
    assert w["mismatch"] and w["e1_v"] == "0" and w["t_e0_v"] == "5*e(1,0)"
    assert not shift_relation_holds(mod)


@pytest.mark.parametrize("lam,b,drop", [(0, 0, True), (2, 1, True), (-1, 0, True),
                                        (0, Fraction(1, 2), False), (Fraction(1, 3), 0, False)])
def test_simplicity_boundary(lam, b, drop):
    alg = make_algebra(affine_virasoro())
    mod = TensorModule(alg, lam, trivial_vbar(alg.g, b))
    assert probe_simplicity(mod, 3).drop is drop


def test_cyclic_span_of_trivial_submodule():
    mod = IntermediateSeries(0, 0)
    sr = cyclic_span_rank(mod, ModuleVector.basis(0), 3)
    assert sr.ranks[0] == 1 and sr.missing() == [-3, -2, -1, 1, 2, 3]


def test_evaluation_module():
    mod = EvaluationModule(IntermediateSeries(Fraction(1, 2), 3), grassmann(2))
    assert check_module_axioms(mod, 2, with_t=False).passed
    s = mod.alg.parse_sym("d", [1], ["xi1"])
    assert not mod.act_sym(s, ModuleVector.basis(0))
    s = Sym(D, 0, 1, ())
    assert mod.act_sym(s, ModuleVector.basis(0)) == ModuleVector.basis(1) * Fraction(7, 2)


def test_psi_must_vanish_on_nilpotents():
    with pytest.raises(RingError):
        EvaluationModule(IntermediateSeries(0, 1), trunc_poly(2), PsiSpec.from_mapping({"eps": 1}))


def test_vector_round_trip():
    v = ModuleVector({(1, 0): Fraction(1, 2), (-2, 1): 3})
    assert parse_vector(format_vector(v)) == v


def test_module_from_config():
    mod = module_from_config(None, {"variant": "intermediate", "alpha": "1/2", "beta": 2})
    assert mod.label == "V(1/2,2)"
    alg = make_algebra(frak_l(one_dim(0)))
    mod = module_from_config(alg, {"variant": "tensor", "lambda": 1, "vbar": {"D": [[2]], "X": [[[3]]]}})
    assert mod.act_sym(Sym(X, 0, 2, ()), ModuleVector.basis(0)) == ModuleVector.basis(2) * 3
    with pytest.raises(ModuleError):
        module_from_config(alg, {"variant": "nope"})
    with pytest.raises(ModuleError):
        module_from_config(make_algebra(witt()), {"variant": "beta1"})


def test_t_action_on_non_a_module_rejected():
    with pytest.raises(ModuleError):
        EvaluationModule(IntermediateSeries(0, 1), grassmann(1)).act_sym(Sym(T, 0, 1, ()), ModuleVector.basis(0))
