import random
from fractions import Fraction

import pytest

from virw.catalog import frak_l, heisenberg, make_algebra, one_dim
from virw.cover import (CoverElement, CoverError, agree_on_points, cover_act_sym, cover_generators,
                        cover_weight_rank, direct_cover_eval, frak_i, mu_evaluate, pi,
                        reduce_cover_generator)
from virw.graded import D, T, X, Sym
from virw.modules import ModuleVector, TensorModule, make_vbar, trivial_vbar
from virw.suites import cover_order

G = heisenberg(Fraction(1, 2), Fraction(-1, 4))
HEIS = make_algebra(frak_l(G))


def heis3(lam):
    bx, by = G.beta[0], G.beta[1]
    D_ = [[1, 0, 0], [0, 1 - bx, 0], [0, 0, 1 - bx - by]]
    e = lambda a, b: [[1 if (i, j) == (a, b) else 0 for j in range(3)] for i in range(3)]
    return TensorModule(HEIS, lam, make_vbar(G, D_, [e(0, 1), e(1, 2), e(0, 2)]))


def trivial(lam, b=Fraction(2, 3)):
    alg = make_algebra(frak_l(one_dim(Fraction(1, 3))))
    return TensorModule(alg, lam, trivial_vbar(alg.g, b))


def test_mu_evaluation():
    mod = trivial(Fraction(1, 2))
    c = CoverElement.mu(Sym(D, 0, 1, ()), ModuleVector.basis(0))
    # mu(d_1, e_0)(t^2) = d_3 e_0
    assert mu_evaluate(mod, c, 2) == mod.act_sym(Sym(D, 0, 3, ()), ModuleVector.basis(0))
    assert pi(mod, c) == mod.act_sym(Sym(D, 0, 1, ()), ModuleVector.basis(0))


def test_kind_detection():
    assert frak_i(trivial(0)) == "W"
    assert frak_i(heis3(Fraction(1, 2))) == "I"


@pytest.mark.parametrize("mod", [heis3(Fraction(1, 2)), trivial(Fraction(-1, 3)), trivial(2)],
                         ids=["heis3", "trivial", "trivial-integral"])
def test_action_matches_direct_evaluation(mod):
    kind = frak_i(mod)
    m = cover_order(mod)
    syms = [s for s in mod.alg.basis(2) if s.kind in (D, X)] + [Sym(T, 0, k, ()) for k in (-1, 2)]
    for c in cover_generators(mod, 1, m, kind):
        for l in syms:
            img = cover_act_sym(mod, l, c, kind)
            for r in range(-5, 6):
                assert mu_evaluate(mod, img, r) == direct_cover_eval(mod, l, c, r)
            if l.kind != T:
                assert pi(mod, img) == mod.act_sym(l, pi(mod, c))


def test_pi_is_not_a_linear():
    mod = trivial(Fraction(1, 2))
    c = CoverElement.mu(Sym(D, 0, 0, ()), ModuleVector.basis(0))
    t = Sym(T, 0, 1, ())
    assert pi(mod, cover_act_sym(mod, t, c)) != mod.act_sym(t, pi(mod, c))


def test_rank_bound():
    mod = heis3(Fraction(1, 2))
    m = cover_order(mod)
    for p in (-2, 0, 3):
        cr = cover_weight_rank(mod, p, m, 2 * m)
        assert cr.rank <= cr.bound == (m + 1) * 3 * 3
        assert cr.stabilized


def test_rank_is_nondecreasing_in_window():
    # more evaluation points can only separate more generators
    rng = random.Random(11)
    for _ in range(10):
        lam = Fraction(rng.randint(-12, 12), rng.randint(1, 5))
        mod = heis3(lam) if rng.random() < 0.5 else trivial(lam, Fraction(rng.randint(-6, 6), 5))
        m = cover_order(mod)
        p = rng.randint(-4, 4)
        ranks = [cover_weight_rank(mod, p, m, n).rank for n in (1, 2, 2 + m, 2 + 2 * m)]
        assert ranks == sorted(ranks)


@pytest.mark.parametrize("mod", [heis3(Fraction(1, 2)), trivial(Fraction(-1, 3)), trivial(1)],
                         ids=["heis3", "trivial", "trivial-integral"])
def test_reduction_soundness(mod):
    kind = frak_i(mod)
    m = cover_order(mod)
    x = Sym(D, 0, 4, ()) if kind == "W" else Sym(X, 1, 4, ())
    shift = int(mod.lam) if Fraction(mod.lam).denominator == 1 else 0
    for q in (-m - 2, -m - 1, m + 1, m + 2):
        for comp in range(mod.dim):
            c = CoverElement.mu(x, ModuleVector.basis(q - shift, comp))
            red = reduce_cover_generator(mod, c, m)
            assert all(abs(j + shift) <= Fraction(m, 2) for (_, (j, _)) in red.terms)
            assert agree_on_points(mod, c, red, range(-2 * m, 2 * m + 1))


def test_reduction_needs_nonzero_pivot():
    mod = trivial(Fraction(1, 2))
    # weight lam + j vanishes at j = -1/2 only, so force it with an integral lam and no shift
    mod_int = trivial(0)
    c = CoverElement.mu(Sym(D, 0, 0, ()), ModuleVector.basis(3))
    assert reduce_cover_generator(mod, c, 2)
    with pytest.raises(CoverError):
        from virw.cover import _reduce_step
        _reduce_step(mod_int, Sym(D, 0, 0, ()), 0, 0, 2, True)
