import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from virw.catalog import frak_l, heisenberg, make_algebra, one_dim, vir0beta, witt
from virw.enveloping import (DegreeBoundExceeded, DifferentiatorSpec, UEnv, check_collapse_identity,
                             check_t_closure, collapse_rhs, differentiator, extract_component,
                             iota_apply, iota_decompose, omega_bar_words, omega_words,
                             random_ubar_element, vir_double_sum)
from virw.graded import D, T, X, Sym, parse_words

W = make_algebra(witt())
HEIS = make_algebra(frak_l(heisenberg(Fraction(1, 2), Fraction(-1, 3))))


def nf(env, text):
    return env.from_words(parse_words(text, env.alg))


def test_pbw_reordering():
    env = UEnv(W, "U")
    assert env.format(nf(env, "D(2)*D(1)")) == "-D(3) + D(1)*D(2)"
    assert nf(env, "D(1)*D(2)") == nf(env, "D(1)*D(2)")


def test_normal_form_is_idempotent():
    env = UEnv(HEIS, "U")
    u = nf(env, "X(y,2)*D(-1)*X(x,1) - D(3)*D(-3)")
    assert env.normal_form(u) == u


words = st.lists(st.tuples(st.sampled_from("DX"), st.integers(-3, 3)), min_size=1, max_size=3)


def _word(spec):
    return tuple(Sym(D, 0, i, ()) if k == "D" else Sym(X, 0, i, ()) for k, i in spec)


@settings(max_examples=40, deadline=None)
@given(words, words, words)
def test_product_is_associative(a, b, c):
    env = UEnv(HEIS, "U")
    u, v, w = (env.word(_word(s)) for s in (a, b, c))
    assert env.mul(env.mul(u, v), w) == env.mul(u, env.mul(v, w))


@settings(max_examples=40, deadline=None)
@given(words, words)
def test_product_matches_concatenation(a, b):
    env = UEnv(HEIS, "U")
    assert env.mul(env.word(_word(a)), env.word(_word(b))) == env.word(_word(a) + _word(b))


def test_ubar_laurent_units():
    env = UEnv(W, "Ubar")
    assert env.word((Sym(T, 0, 2, ()), Sym(T, 0, -2, ()))) == env.one()
    # [d_1, t^2] = 2 t^3
    u = env.supercommutator(env.sym(Sym(D, 0, 1, ())), env.sym(Sym(T, 0, 2, ())))
    assert u == env.sym(Sym(T, 0, 3, ())) * 2


def test_degree_bound():
    env = UEnv(W, "U", degree_bound=2)
    with pytest.raises(DegreeBoundExceeded):
        env.word((Sym(D, 0, 1, ()),) * 3)


def test_differentiator_words():
    assert omega_words(1, 0, 0) == [(1, (Sym(D, 0, 0, ()), Sym(D, 0, 0, ()))),
                                    (-1, (Sym(D, 0, -1, ()), Sym(D, 0, 1, ())))]
    assert [c for c, _ in omega_words(3, 0, 0)] == [1, -3, 3, -1]
    assert omega_bar_words(1, 2, 5, 0)[1] == (-1, (Sym(X, 0, 1, ()), Sym(D, 0, 6, ())))
    env = UEnv(HEIS, "U")
    assert differentiator(DifferentiatorSpec(2, variant="OmegaBar", j=1, p=0), env)


@pytest.mark.parametrize("beta", [0, -1, 2, Fraction(1, 2), Fraction(1, 3)])
@pytest.mark.parametrize("m", [1, 2, 3])
def test_collapse_identity_holds_with_corrected_sign(m, beta):
    env = UEnv(make_algebra(frak_l(one_dim(beta))), "U")
    rng = random.Random(f"{m}:{beta}")
    for _ in range(4):
        j, k, p = (rng.randint(-5, 5) for _ in range(3))
        r = check_collapse_identity(env, m, j, k, p)
        assert not r.sign_flipped_residual
        assert r.residual == collapse_rhs(env, m, j, k, p, 0) * -2


def test_collapse_identity_at_beta_one_is_trivial():
    env = UEnv(make_algebra(frak_l(one_dim(1))), "U")
    r = check_collapse_identity(env, 2, 1, -2, 3)
    assert not r.lhs and r.holds


def test_collapse_requires_centerless_algebra():
    with pytest.raises(ValueError):
        check_collapse_identity(UEnv(make_algebra(vir0beta(0)), "U"), 1, 0, 0, 0)


@pytest.mark.parametrize("kind", ["tau-tau", "tau-sigma", "sigma-sigma", "tau-d0", "sigma-d0", "tau-t", "sigma-t"])
def test_t_closure(kind):
    env = UEnv(HEIS, "Ubar")
    for i in (-3, 0, 2):
        for j in (-2, 1, 4):
            assert check_t_closure(env, kind, i, j, 0, 1).holds


def test_iota_images():
    env = UEnv(HEIS, "Ubar")
    assert iota_decompose(env.sym(Sym(D, 0, 5, ()))).format() == "1*t^5*d0 + 1*t^5*tau(5)"
    assert iota_decompose(env.sym(Sym(X, 1, -2, ()))).format() == "1*t^-2*sigma(y,-2)"
    assert iota_decompose(env.sym(Sym(D, 0, 0, ()))).format() == "1*d0"


def test_iota_round_trip():
    env = UEnv(HEIS, "Ubar")
    rng = random.Random(7)
    for _ in range(15):
        u = random_ubar_element(env, rng)
        assert iota_apply(iota_decompose(u)) == u


def test_double_sum_components():
    env = UEnv(make_algebra(vir0beta(0)), "U")
    u = vir_double_sum(env, 3, 50)
    assert len(u) == 18
    assert not extract_component(u, "central-linear", "C2")
    assert len(extract_component(u, "quadratic")) == 18
