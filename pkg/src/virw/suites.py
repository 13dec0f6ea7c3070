"""The twelve verification suites behind ``virw suite``.

Each suite draws its randomness from ``random.Random(f"{seed}:{name}")`` so
suites are independent of one another and of the order in which they run.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Callable, Dict, List

from .catalog import (AlgebraSpec, affine_virasoro, expand_filtration_element, frak_l, ghat,
                      heisenberg, in_filtration, make_algebra, map_algebra, one_dim,
                      project_to_ghat, q_super, sl2, valuation_at_one, vir0beta, witt, wh)
from .config import RunConfig
from .cover import (agree_on_points, alpha_shift, cover_act_sym, cover_generators, cover_weight_rank,
                    direct_cover_eval, frak_i, mu_evaluate, pi, reduce_cover_generator,
                    CoverElement)
from .enveloping import (IotaForm, UEnv, check_collapse_identity, check_t_closure, extract_component,
                         iota_apply, iota_decompose, omega_words, random_ubar_element,
                         vir_double_sum)
from .graded import D, T, X, Element, Sym, bracket, verify_axioms
from .modules import (Beta1Exceptional, EvaluationModule, IntermediateSeries, ModuleVector,
                      TensorModule, annihilates, check_a_associativity, check_module_axioms,
                      check_weight_additivity, exceptional_mismatch_witness, format_vector,
                      make_vbar, min_annihilating_order, probe_simplicity, q_super_vbar, rand_rational,
                      sample_vbar, shift_relation_holds, trivial_vbar)
from .report import INFO, Report
from .rings import PsiSpec, grassmann, trunc_poly
from .scalars import format_scalar as fs

BETAS = (0, -1, 2, Fraction(1, 2))


def _rng(cfg: RunConfig, name: str) -> random.Random:
    return random.Random(f"{cfg.seed}:{name}")


def _nondegenerate(rng: random.Random) -> Fraction:
    """Random rational beta with beta != 1."""
    while True:
        b = rand_rational(rng)
        if b != 1:
            return b


def catalog_specs(rng: random.Random) -> List[AlgebraSpec]:
    """One instance of every catalog algebra, random parameters drawn from rng."""
    hx, hy = _nondegenerate(rng), _nondegenerate(rng)
    return [
        witt(),
        frak_l(heisenberg(hx, hy)),
        frak_l(sl2(_nondegenerate(rng))),
        frak_l(one_dim(_nondegenerate(rng))),
        vir0beta(0),
        vir0beta(-1),
        vir0beta(1),
        affine_virasoro(),
        q_super(),
        wh(_nondegenerate(rng)),
        map_algebra(witt(), grassmann(2)),
        map_algebra(frak_l(one_dim(_nondegenerate(rng))), trunc_poly(2)),
    ]


def ring_free_specs(rng: random.Random) -> List[AlgebraSpec]:
    return [s for s in catalog_specs(rng) if s.family != "MapAlgebra"]


def _sym_text(alg, s: Sym) -> str:
    return f"T({s.idx})" if s.kind == T else alg.format_sym(s)


# ---------------------------------------------------------------------------
# 1. axioms


class _CorruptedWitt:
    """Witt oracle with [d_1, d_2] scaled by 2: a deliberately broken bracket."""

    def __init__(self):
        self._base = make_algebra(witt())
        self.name = "Witt[corrupted d1,d2]"

    def __getattr__(self, item):
        return getattr(self._base, item)

    def bracket_sym(self, a, b):
        r = self._base.bracket_sym(a, b)
        if a.kind == D and b.kind == D and {a.idx, b.idx} == {1, 2}:
            r = {k: 2 * v for k, v in r.items()}
        return r


def suite_axioms(cfg: RunConfig) -> Report:
    rep = Report("axioms")
    rng = _rng(cfg, "axioms")
    ref = "[a,b] = -(-1)^{|a||b|}[b,a];  [a,[b,c]] = [[a,b],c] + (-1)^{|a||b|}[b,[a,c]]"
    for n in range(cfg.samples):
        for spec in catalog_specs(rng):
            alg = make_algebra(spec)
            r = verify_axioms(alg, cfg.window)
            rep.add(f"super-Lie axioms {alg.name}", r.passed,
                    {"sample": n, "algebra": spec.describe(), "window": cfg.window},
                    "no antisymmetry or Jacobi residual",
                    {"pairs": r.pairs_checked, "triples": r.triples_checked,
                     "failure": r.failure, "witness": None if r.witness is None else
                     [_sym_text(alg, s) for s in r.witness]},
                    ref)
    bad = _CorruptedWitt()
    r = verify_axioms(bad, 2)
    rep.add("negative control: corrupted [d1,d2] is rejected", not r.passed and r.failure == "jacobi",
            {"algebra": bad.name, "window": 2}, "a Jacobi witness",
            {"failure": r.failure,
             "witness": None if r.witness is None else [_sym_text(bad, s) for s in r.witness]},
            ref)
    return rep


# ---------------------------------------------------------------------------
# 2. binomial-brackets


def rel_subalg_w(k: int, l: int, i: int, j: int) -> Element:
    """(l-k+j-i)(t-1)^{k+l} d_{i+j} + (l-k)(t-1)^{k+l-1} d_{i+j}."""
    out = expand_filtration_element("W", k + l, i + j) * (l - k + j - i)
    if k + l:
        out = out + expand_filtration_element("W", k + l - 1, i + j) * (l - k)
    return out


def rel_subalg_x(beta, k: int, l: int, i: int, j: int) -> Element:
    """(j+i b)(t-1)^{k+l} x(i+j) + (l+k b)(t-1)^{k+l-1} x(i+j+1)."""
    out = expand_filtration_element("I", k + l, i + j) * (j + i * beta)
    if k + l:
        out = out + expand_filtration_element("I", k + l - 1, i + j + 1) * (l + k * beta)
    return out


def suite_rel_subalg(cfg: RunConfig) -> Report:
    rep = Report("binomial-brackets")
    rng4 = range(-4, 5)
    for beta in BETAS:
        alg = make_algebra(frak_l(one_dim(beta)))
        for kind in ("W", "I"):
            n = 0
            witness = None
            for k, l, i, j in itertools.product(range(5), range(5), rng4, rng4):
                n += 1
                a = expand_filtration_element("W", k, i)
                b = expand_filtration_element(kind, l, j)
                got = bracket(alg, a, b)
                exp = rel_subalg_w(k, l, i, j) if kind == "W" else rel_subalg_x(alg.beta(0), k, l, i, j)
                if got != exp and witness is None:
                    witness = {"k": k, "l": l, "i": i, "j": j, "got": str(got), "expected": str(exp)}
            if kind == "W":
                ref = "[(t-1)^k d_i,(t-1)^l d_j] = (l-k+j-i)(t-1)^{k+l} d_{i+j} + (l-k)(t-1)^{k+l-1} d_{i+j}"
            else:
                ref = ("[(t-1)^k d_i,(t-1)^l x(j)] = (j+i b)(t-1)^{k+l} x(i+j)"
                       " + (l+k b)(t-1)^{k+l-1} x(i+j+1)")
            rep.add(f"binomial bracket identity {kind} beta={fs(beta)}", witness is None,
                    {"beta": fs(beta), "k,l": "0..4", "i,j": "-4..4"}, "exact equality",
                    {"cases": n, "witness": witness}, ref)
    return rep


# ---------------------------------------------------------------------------
# 3. filtration


def filtration_generators(k: int, gdim: int, idx: int) -> List[Element]:
    """(t-1)^{k+1} d_i and (t-1)^k x_s(i) for |i| <= idx."""
    out = []
    for i in range(-idx, idx + 1):
        out.append(expand_filtration_element("W", k + 1, i))
        for s in range(gdim):
            out.append(expand_filtration_element("I", k, i, s))
    return out


def suite_filtration(cfg: RunConfig) -> Report:
    rep = Report("filtration")
    rng = _rng(cfg, "filtration")
    g = heisenberg(_nondegenerate(rng), _nondegenerate(rng))
    alg = make_algebra(frak_l(g))
    hat = make_algebra(ghat(g))
    a1 = filtration_generators(1, g.dim, 3)
    for k in range(4):
        ak = filtration_generators(k, g.dim, 3)
        witness = None
        for a in a1:
            for b in ak:
                c = bracket(alg, a, b)
                if c and not in_filtration(c, k + 1) and witness is None:
                    witness = {"a": str(a), "b": str(b), "valuation": [str(v) for v in valuation_at_one(c)]}
        rep.add(f"[a_1, a_{k}] inside a_{k + 1}", witness is None,
                {"g": "heisenberg", "beta": [fs(b) for b in g.beta], "k": k, "index": 3},
                "valuation certifies membership", {"pairs": len(a1) * len(ak), "witness": witness},
                "a_k = (t-1)^{k+1} W + g ⊗ (t-1)^k A")
    for k in range(4):
        ak = filtration_generators(k, g.dim, 3)
        witness = None
        for a in filtration_generators(0, g.dim, 3):
            for b in ak:
                c = bracket(alg, a, b)
                if c and not in_filtration(c, k) and witness is None:
                    witness = {"a": str(a), "b": str(b)}
        rep.add(f"a_{k} is an ideal of a_0", witness is None, {"k": k, "index": 3},
                "valuation certifies membership", {"witness": witness}, "[a_0, a_k] ⊆ a_k")
    a0 = filtration_generators(0, g.dim, 4)
    witness = None
    for a, b in itertools.product(a0, repeat=2):
        lhs = project_to_ghat(bracket(alg, a, b)) if bracket(alg, a, b) else Element()
        rhs = bracket(hat, project_to_ghat(a), project_to_ghat(b))
        if lhs != rhs and witness is None:
            witness = {"a": str(a), "b": str(b), "lhs": str(lhs), "rhs": str(rhs)}
    rep.add("projection a_0 -> ghat is a homomorphism", witness is None, {"index": 4},
            "pi[a,b] = [pi a, pi b]", {"pairs": len(a0) ** 2, "witness": witness},
            "a_0/a_1 = ghat:  d_i - d_0 -> i dbar,  x(i) -> x")
    nonzero = [str(a) for a in a1 if project_to_ghat(a)]
    rep.add("a_1 generators lie in the kernel of the projection", not nonzero, {"index": 3},
            "every image zero", {"generators": len(a1), "nonzero": nonzero}, "a_1 = ker(a_0 -> ghat)")
    return rep


# ---------------------------------------------------------------------------
# 4. t-subalgebra


_CLOSURE_REFS = {
    "tau-tau": "[tau_i, tau_j] = -j tau_j + (j-i) tau_{i+j} + i tau_i",
    "tau-sigma": "[tau_i, sigma_{s,j}] = -j sigma_{s,j} + (j + i b_s) sigma_{s,i+j}",
    "sigma-sigma": "[sigma_{s,i}, sigma_{p,j}] = sum_q c_{sp}^q sigma_{q,i+j}",
    "tau-d0": "[tau_i, d_0] = 0",
    "sigma-d0": "[sigma_{s,i}, d_0] = 0",
    "tau-t": "[tau_i, t^k] = 0",
    "sigma-t": "[sigma_{s,i}, t^k] = 0",
}


def suite_t_subalgebra(cfg: RunConfig) -> Report:
    rep = Report("t-subalgebra")
    rng = _rng(cfg, "t-subalgebra")
    specs = [frak_l(heisenberg(_nondegenerate(rng), _nondegenerate(rng))),
             frak_l(sl2(_nondegenerate(rng))), witt()]
    for spec in specs:
        env = UEnv(make_algebra(spec), "Ubar", cfg.degree_bound)
        gd = env.alg.g.dim
        for kind, ref in _CLOSURE_REFS.items():
            if "sigma" in kind and not gd:
                continue
            n = 0
            witness = None
            ss = range(gd) if "sigma" in kind else (0,)
            ps = range(gd) if kind == "sigma-sigma" else (0,)
            for i, j, s, p in itertools.product(range(-4, 5), range(-4, 5), ss, ps):
                if kind.endswith("d0") and j:
                    continue
                r = check_t_closure(env, kind, i, j, s, p)
                n += 1
                if not r.holds and witness is None:
                    witness = {"args": [i, j, s, p], "got": env.format(r.got), "expected": env.format(r.expected)}
            rep.add(f"{kind} closure over {env.alg.name}", witness is None,
                    {"algebra": spec.describe(), "range": "-4..4"}, "exact Ubar normal form",
                    {"cases": n, "witness": witness}, ref)
    return rep


# ---------------------------------------------------------------------------
# 5. iota


def suite_iota(cfg: RunConfig) -> Report:
    rep = Report("iota")
    rng = _rng(cfg, "iota")
    g = heisenberg(_nondegenerate(rng), _nondegenerate(rng))
    env = UEnv(make_algebra(frak_l(g)), "Ubar", cfg.degree_bound)
    gb = [fs(b) for b in g.beta]
    for i in range(-5, 6):
        form = iota_decompose(env.sym(Sym(D, 0, i, ())))
        exp = {(0, 1, ()): 1} if i == 0 else {(i, 1, ()): 1, (i, 0, (Sym(D, 0, i, ()),)): 1}
        rep.add(f"iota(d_{i})", form.terms == exp, {"i": i, "g_beta": gb},
                IotaForm(env, exp).format(), form.format(), "d_i = t^i d_0 + t^i tau_i")
        for s in range(g.dim):
            form = iota_decompose(env.sym(Sym(X, s, i, ())))
            exp = {(i, 0, (Sym(X, s, i, ()),)): 1}
            rep.add(f"iota(x_{g.names[s]}({i}))", form.terms == exp, {"i": i, "s": s, "g_beta": gb},
                    IotaForm(env, exp).format(), form.format(), "x_s(i) = t^i sigma_{s,i}")
    witness = None
    n = cfg.samples * 3
    digest = []
    for _ in range(n):
        u = random_ubar_element(env, rng, max_degree=3)
        digest.append(len(u))
        back = iota_apply(iota_decompose(u))
        if back != u and witness is None:
            witness = {"u": env.format(u), "back": env.format(back)}
    rep.add("iota round trip on random degree <= 3 elements", witness is None,
            {"samples": n, "max_degree": 3, "g_beta": gb, "terms_per_sample": digest},
            "iota_apply(iota_decompose(u)) = u", {"witness": witness}, "Ubar = A[d_0] ⊗ U(T)")
    return rep


# ---------------------------------------------------------------------------
# 6. annihilators


def omega2_oracle(alpha, beta, k: int, s: int, j: int):
    """Direct finite difference: sum_i (-1)^i C(2,i) (a+j+s+i+(k-i)b)(a+j+(s+i)b)."""
    total = 0
    for i, c in enumerate((1, -2, 1)):
        total += c * (alpha + j + s + i + (k - i) * beta) * (alpha + j + (s + i) * beta)
    return total


def suite_annihilators(cfg: RunConfig) -> Report:
    rep = Report("annihilators")
    rng = _rng(cfg, "annihilators")
    witness = None
    cases = []
    for _ in range(20):
        alpha, beta = rand_rational(rng), rand_rational(rng)
        k, s, j = (rng.randint(-6, 6) for _ in range(3))
        mod = IntermediateSeries(alpha, beta)
        img = mod.act_words(omega_words(2, k, s), ModuleVector.basis(j))
        got = img.terms.get((j + k + s, 0), 0)
        closed = 2 * beta * (1 - beta)
        oracle = omega2_oracle(alpha, beta, k, s, j)
        stray = [key for key in img.terms if key != (j + k + s, 0)]
        cases.append([fs(alpha), fs(beta), k, s, j])
        if (got != closed or got != oracle or stray) and witness is None:
            witness = {"alpha": fs(alpha), "beta": fs(beta), "k": k, "s": s, "j": j,
                       "got": fs(got), "closed": fs(closed), "oracle": fs(oracle)}
    rep.add("Omega^(2) acts on V(a,b) as 2b(1-b)", witness is None, {"cases": cases},
            "action = 2b(1-b) = direct summation", {"witness": witness},
            "Omega^(m)_{k,s} = sum_i (-1)^i C(m,i) d_{k-i} d_{s+i}")
    for _ in range(3):
        alpha, beta = rand_rational(rng), rand_rational(rng)
        ok, wit = annihilates(IntermediateSeries(alpha, beta), "Omega", 3)
        rep.add("Omega^(3) annihilates V(a,b)", ok, {"alpha": fs(alpha), "beta": fs(beta)},
                "zero on every tested vector", wit, "Omega^(3) V(a,b) = 0")
    for n in range(cfg.samples):
        spec = rng.choice([frak_l(heisenberg(_nondegenerate(rng), _nondegenerate(rng))),
                           frak_l(sl2(_nondegenerate(rng))), frak_l(one_dim(_nondegenerate(rng))),
                           wh(_nondegenerate(rng))])
        alg = make_algebra(spec)
        vbar = sample_vbar(alg.g, rng)
        lam = rand_rational(rng)
        mod = TensorModule(alg, lam, vbar)
        ok, wit = annihilates(mod, "OmegaBar", 2)
        rep.add(f"OmegaBar^(2) annihilates {mod.label} over {alg.name}", ok,
                {"sample": n, "algebra": spec.describe(), "lambda": fs(lam), "vbar": vbar.label,
                 "dim": vbar.dim}, "zero on every tested vector", wit,
                "OmegaBar^(m)_{j,p,s} = sum_i (-1)^i C(m,i) x_s(j-i) d_{p+i}")
    for beta, exp in ((2, 3), (0, 2), (1, 2)):
        alpha = rand_rational(rng)
        r = min_annihilating_order(IntermediateSeries(alpha, beta), "Omega")
        rep.add(f"minimal Omega order on V(a,{beta})", r.order == exp,
                {"alpha": fs(alpha), "beta": beta}, exp, r.order, "least m with Omega^(m) V = 0")
    return rep


# ---------------------------------------------------------------------------
# 7. omega-collapse


def suite_omega_collapse(cfg: RunConfig) -> Report:
    """The six-term commutator combination against (1 - b) sum_i (-1)^i C(m+2,i) x(j+k+1-i) d_{p-1+i}.

    The literal identity is recorded as stated; a second record checks the
    same combination against (b - 1) times the sum, which is what the bracket
    conventions of this package produce.
    """
    rep = Report("omega-collapse")
    rng = _rng(cfg, "omega-collapse")
    stated = "six-term combination = (1-b) sum_{i=0}^{m+2} (-1)^i C(m+2,i) x(j+k+1-i) d_{p-1+i}"
    corrected = "six-term combination = (b-1) sum_{i=0}^{m+2} (-1)^i C(m+2,i) x(j+k+1-i) d_{p-1+i}"
    for m in (1, 2, 3):
        for beta in BETAS + (1,):
            env = UEnv(make_algebra(frak_l(one_dim(beta))), "U", cfg.degree_bound)
            samples = [tuple(rng.randint(-5, 5) for _ in range(3)) for _ in range(cfg.samples)]
            lit_bad, cor_bad = [], []
            for j, k, p in samples:
                r = check_collapse_identity(env, m, j, k, p)
                if not r.holds:
                    lit_bad.append({"j": j, "k": k, "p": p, "residual": env.format(r.residual)})
                if r.sign_flipped_residual:
                    cor_bad.append({"j": j, "k": k, "p": p, "residual": env.format(r.sign_flipped_residual)})
            inputs = {"m": m, "beta": fs(beta), "samples": [list(s) for s in samples]}
            if beta == 1:
                rep.add(f"collapse identity at beta=1, m={m}", INFO, inputs, "recorded only",
                        {"stated_nonzero": len(lit_bad), "corrected_nonzero": len(cor_bad)}, stated)
                continue
            rep.add(f"collapse identity as stated, m={m}, beta={fs(beta)}", not lit_bad, inputs,
                    "residual 0", {"nonzero": len(lit_bad), "first": lit_bad[0] if lit_bad else None},
                    stated)
            rep.add(f"collapse identity with corrected sign, m={m}, beta={fs(beta)}", not cor_bad, inputs,
                    "residual 0", {"nonzero": len(cor_bad), "first": cor_bad[0] if cor_bad else None},
                    corrected)
    return rep


# ---------------------------------------------------------------------------
# 8. jet-modules


def _small_vbar(g, rng, max_dim=3, simple=False):
    while True:
        v = sample_vbar(g, rng, simple)
        if v.dim <= max_dim:
            return v


def suite_jet_modules(cfg: RunConfig) -> Report:
    rep = Report("jet-modules")
    rng = _rng(cfg, "jet-modules")
    samples = max(1, cfg.samples // 2)
    for n in range(samples):
        for spec in ring_free_specs(rng):
            alg = make_algebra(spec)
            vbar = _small_vbar(alg.g, rng)
            lam = rand_rational(rng)
            mod = TensorModule(alg, lam, vbar)
            inputs = {"sample": n, "algebra": spec.describe(), "lambda": fs(lam), "vbar": vbar.label,
                      "dim": vbar.dim, "window": cfg.window}
            for chk, ref in ((check_module_axioms(mod, cfg.window), "[a,b] v = a(bv) - (-1)^{|a||b|} b(av)"),
                             (check_a_associativity(mod, cfg.window), "t^i (t^k v) = t^{i+k} v,  t^0 v = v"),
                             (check_weight_additivity(mod, cfg.window), "L_i M_j ⊆ M_{i+j}")):
                rep.add(f"{chk.name} {mod.label} over {alg.name}", chk.passed, inputs, "pass",
                        {"checked": chk.checked, "witness": chk.witness}, ref)
    alg = make_algebra(affine_virasoro())
    g = alg.g
    cases = [(trivial_vbar(g, b), lam, True) for lam in (0, -1, 2) for b in (0, 1)]
    cases += [(trivial_vbar(g, Fraction(1, 2)), 0, False), (trivial_vbar(g, 0), Fraction(1, 3), False),
              (trivial_vbar(g, 1), Fraction(-2, 5), False)]
    cases += [(_small_vbar(g, rng, simple=True), rand_rational(rng), None) for _ in range(2)]
    for vbar, lam, drop in cases:
        if drop is None:
            drop = vbar.trivial_g and Fraction(lam).denominator == 1 and vbar.scalar_d in (0, 1)
        mod = TensorModule(alg, lam, vbar)
        probe = probe_simplicity(mod, 3)
        rep.add(f"simplicity probe {mod.label}", probe.drop == drop,
                {"lambda": fs(lam), "vbar": vbar.label, "D": fs(vbar.scalar_d) if vbar.scalar_d is not None else None,
                 "window": 3}, {"rank_drop": drop}, {"rank_drop": probe.drop, "witness": probe.witness},
                "drop iff Vbar trivial, lambda in Z, b in {0,1}")
    return rep


# ---------------------------------------------------------------------------
# 9. beta1-exceptional


def suite_beta1(cfg: RunConfig) -> Report:
    rep = Report("beta1-exceptional")
    rng = _rng(cfg, "beta1-exceptional")
    alg = make_algebra(frak_l(one_dim(1)))
    for n in range(max(1, cfg.samples // 2)):
        lam, b = rand_rational(rng), rand_rational(rng)
        F = rand_rational(rng) or 1
        mod = Beta1Exceptional(lam, b, F, alg)
        inputs = {"sample": n, "lambda": fs(lam), "b": fs(b), "F": fs(F)}
        chk = check_module_axioms(mod, cfg.window)
        rep.add(f"module axioms {mod.label}", chk.passed, inputs, "pass",
                {"checked": chk.checked, "witness": chk.witness}, "e_i t^j = delta_{i,0} F t^j")
        chk = check_a_associativity(mod, cfg.window)
        rep.add(f"A-associativity {mod.label}", chk.passed, inputs, "pass",
                {"checked": chk.checked, "witness": chk.witness}, "t^i (t^k v) = t^{i+k} v")
        j = rng.randint(-3, 3)
        wit = exceptional_mismatch_witness(mod, j)
        rep.add(f"e_1 v differs from t (e_0 v) on {mod.label}", wit["mismatch"], dict(inputs, j=j),
                "e_1 v != t e_0 v", wit, "tensor modules satisfy x(i+1) v = t (x(i) v)")
        rep.add(f"shift relation fails on {mod.label}", not shift_relation_holds(mod), inputs,
                "x(i+1) v != t x(i) v for some i", "fails", "tensor modules satisfy x(i+1) v = t (x(i) v)")
        vbar = _small_vbar(alg.g, rng)
        tm = TensorModule(alg, rand_rational(rng), vbar)
        rep.add(f"shift relation holds on {tm.label}", shift_relation_holds(tm),
                {"sample": n, "lambda": fs(tm.lam), "vbar": vbar.label}, "holds", "holds",
                "x(i+1)(t^j ⊗ u) = t^{i+j+1} ⊗ X u")
    return rep


# ---------------------------------------------------------------------------
# 10. cover


def cover_order(mod) -> int:
    variant = "Omega" if frak_i(mod) == "W" else "OmegaBar"
    r = min_annihilating_order(mod, variant)
    if r.order is None:
        raise RuntimeError(f"no annihilating differentiator found for {mod.label}")
    return max(r.order, 1)


def suite_cover(cfg: RunConfig) -> Report:
    rep = Report("cover")
    rng = _rng(cfg, "cover")
    specs = [frak_l(heisenberg(_nondegenerate(rng), _nondegenerate(rng))),
             frak_l(one_dim(_nondegenerate(rng))), frak_l(sl2(_nondegenerate(rng))), witt()]
    mods = []
    for n in range(max(2, cfg.samples // 2)):
        alg = make_algebra(specs[n % len(specs)])
        lam = rand_rational(rng)
        if n % 3 == 2:
            lam = Fraction(rng.randint(-3, 3))
        mods.append(TensorModule(alg, lam, _small_vbar(alg.g, rng, 2)))
    for mod in mods:
        kind = frak_i(mod)
        m = cover_order(mod)
        N = 2 * m
        base = {"module": mod.label, "algebra": mod.alg.spec.describe(), "lambda": fs(mod.lam),
                "kind": kind, "m": m}
        gens = [g for p in (-1, 0, 2) for g in cover_generators(mod, p, m, kind)]
        syms = [s for s in mod.alg.basis(2) if s.kind in (D, X)]
        witness = None
        for c in gens:
            for l in syms:
                lhs = pi(mod, cover_act_sym(mod, l, c, kind))
                rhs = mod.act_sym(l, pi(mod, c))
                if lhs != rhs and witness is None:
                    witness = {"l": _sym_text(mod.alg, l), "c": c.format(mod)}
        rep.add(f"pi equivariance on {mod.label}", witness is None, base, "pi(l phi) = l pi(phi)",
                {"generators": len(gens), "witness": witness}, "pi(phi) = phi(1)")
        witness = None
        tsyms = syms + [Sym(T, 0, k, ()) for k in range(-2, 3)]
        for c in gens:
            for l in tsyms:
                img = cover_act_sym(mod, l, c, kind)
                for r in range(-6, 7):
                    if mu_evaluate(mod, img, r) != direct_cover_eval(mod, l, c, r) and witness is None:
                        witness = {"l": _sym_text(mod.alg, l), "c": c.format(mod), "r": r}
        rep.add(f"action compatible with evaluation on {mod.label}", witness is None, base,
                "(l mu)(t^r) = l mu(t^r) - mu([l,t^r])", {"witness": witness},
                "l mu(x,u) = mu([l,x],u) + (-1)^{|l||x|} mu(x,lu);  t^k mu(x,u) = mu(t^k x,u)")
        for p in (-3, 0, 1, 5):
            cr = cover_weight_rank(mod, p, m, N, kind)
            rep.add(f"cover rank bound at p={p} on {mod.label}", cr.rank <= cr.bound and cr.stabilized,
                    dict(base, p=p, window=N), {"rank_at_most": cr.bound, "stabilized": True},
                    {"rank": cr.rank, "stabilized": cr.stabilized}, "rank <= (m+1) dim |S|")
        witness = None
        n = 0
        half = Fraction(m, 2)
        points = range(-2 * m, 2 * m + 1)
        for p in (-2, 0, 3):
            for q in range(-m - 2, m + 3):
                if abs(q) <= half:
                    continue
                j = q - alpha_shift(mod)
                if not mod.in_support(j):
                    continue
                xs = [Sym(D, 0, p - q, ())] if kind == "W" else [Sym(X, s, p - q, ()) for s in range(mod.alg.g.dim)]
                for x in xs:
                    for comp in range(mod.dim):
                        c = CoverElement.mu(x, ModuleVector.basis(j, comp))
                        red = reduce_cover_generator(mod, c, m)
                        n += 1
                        if not agree_on_points(mod, c, red, points) and witness is None:
                            witness = {"c": c.format(mod), "reduced": red.format(mod)}
        rep.add(f"reduction to |k| <= m/2 on {mod.label}", witness is None,
                dict(base, points=len(points)), "agreement at every evaluation point",
                {"reduced": n, "witness": witness},
                "mu(x(n),u) = -sum_{i=1}^m (-1)^i C(m,i) mu(x(n-i), d_i v)")
    return rep


# ---------------------------------------------------------------------------
# 11. map-evaluation


def _check_evaluation(rep: Report, mod: EvaluationModule, window: int, inputs: dict) -> None:
    chk = check_module_axioms(mod, window, with_t=False)
    rep.add(f"module axioms {mod.label} over {mod.alg.name}", chk.passed, inputs, "pass",
            {"checked": chk.checked, "witness": chk.witness}, "[y r, y' r'] v = (y r)(y' r' v) - ...")
    witness = None
    nil = 0
    for s in mod.generators(window, with_t=False):
        for j, c in mod.base.basis((-1, 0, 1)):
            v = ModuleVector.basis(j, c)
            got = mod.act_sym(s, v)
            scale = mod.psi.apply_monomial(mod.ring, s.ring)
            exp = mod.base.act_sym(s._replace(ring=()), v) * scale
            if s.ring:
                nil += 1
                if got and witness is None:
                    witness = {"sym": mod.alg.format_sym(s), "v": format_vector(v), "got": format_vector(got)}
            if got != exp and witness is None:
                witness = {"sym": mod.alg.format_sym(s), "v": format_vector(v), "got": format_vector(got),
                           "expected": format_vector(exp)}
    rep.add(f"(y r) v = psi(r) y v on {mod.label}", witness is None, inputs,
            "psi(r) y v; nilpotent factors act as 0", {"nilpotent_checks": nil, "witness": witness},
            "(y ⊗ r) v = psi(r) (y v)")


def suite_map_evaluation(cfg: RunConfig) -> Report:
    rep = Report("map-evaluation")
    rng = _rng(cfg, "map-evaluation")
    window = min(cfg.window, 3)
    for n in range(max(1, cfg.samples // 5)):
        a, b = rand_rational(rng), rand_rational(rng)
        base = IntermediateSeries(a, b)
        mod = EvaluationModule(base, grassmann(2))
        _check_evaluation(rep, mod, window, {"sample": n, "base": base.label, "ring": "Grassmann(2)"})
        beta = _nondegenerate(rng)
        alg = make_algebra(frak_l(one_dim(beta)))
        tm = TensorModule(alg, rand_rational(rng), _small_vbar(alg.g, rng, 2))
        mod = EvaluationModule(tm, trunc_poly(2))
        _check_evaluation(rep, mod, window, {"sample": n, "base": tm.label, "beta": fs(beta),
                                             "ring": "C[eps]/(eps^2)"})
    forced = PsiSpec.forced(grassmann(2)).as_dict()
    rep.add("the only character of Grassmann(2) is zero on generators", all(v == 0 for v in forced.values()),
            {"ring": "Grassmann(2)"}, {k: "0" for k in forced}, {k: fs(v) for k, v in forced.items()},
            "psi(xi) = 0 for nilpotent xi")
    return rep


# ---------------------------------------------------------------------------
# 12. worked-examples


_BRACKET_EXAMPLES = (
    # (algebra spec, a, b, expected)
    (vir0beta(0), "d(2)", "E(-2)", {"E(0)": -2, "C2": 6}),
    (vir0beta(-1), "d(2)", "E(-2)", {"E(0)": -4, "C2": Fraction(1, 2)}),
    (vir0beta(1), "d(3)", "E(-3)", {"C2": 3, "C3": 1}),
    (vir0beta(0), "E(3)", "E(-3)", {"C4": 3}),
    (vir0beta(0), "d(2)", "d(-2)", {"d(0)": -4, "C1": Fraction(1, 2)}),
)


def suite_worked_examples(cfg: RunConfig) -> Report:
    from .graded import parse_element
    rep = Report("worked-examples")
    rng = _rng(cfg, "worked-examples")
    for spec, a, b, exp in _BRACKET_EXAMPLES:
        alg = make_algebra(spec)
        got = bracket(alg, parse_element(a, alg), parse_element(b, alg))
        want = Element({parse_element(k, alg).symbols()[0]: v for k, v in exp.items()})
        rep.add(f"[{a}, {b}] in {alg.name}", got == want, {"algebra": spec.describe()},
                {k: fs(v) for k, v in sorted(exp.items())},
                {alg.format_sym(s): fs(c) for s, c in sorted(got.terms.items())},
                "[d_i,e_j] = (j+ib) e_{i+j} + delta_{i+j,0}(...) C_2, [d_i,d_j] = (j-i)d_{i+j} + ...")
    for beta in (0, -1, 2):
        alg = make_algebra(frak_l(one_dim(beta)))
        env = UEnv(alg, "U", cfg.degree_bound)
        u = vir_double_sum(env, 3, 50)
        witness = None
        tested = 0
        labels = []
        for _ in range(3):
            mod = TensorModule(alg, rand_rational(rng), _small_vbar(alg.g, rng))
            labels.append(mod.label)
            for j, c in mod.basis((-2, 0, 3)):
                tested += 1
                img = mod.act_U(u, ModuleVector.basis(j, c))
                if img and witness is None:
                    witness = {"module": mod.label, "v": f"e({j},{c})", "image": format_vector(img)}
        rep.add(f"double sum annihilates tensor modules, beta={beta}", witness is None,
                {"beta": beta, "m": 3, "p": 50, "modules": labels}, "zero image",
                {"vectors": tested, "witness": witness},
                "sum_{i,j=0}^2 (-1)^{i+j} C(2,i) C(2,j) [e_{m+2-i}, Omega^(m)_{-1+i,p-1+j}]")
    for beta in (0, -1, 1):
        env = UEnv(make_algebra(vir0beta(beta)), "U", cfg.degree_bound)
        u = vir_double_sum(env, 3, 50)
        rep.add(f"double sum decomposition in Vir(0,{beta})", INFO, {"beta": beta, "m": 3, "p": 50},
                "compare the C_2 d_{p+m} coefficient (-1)^m 2(2m+1) at beta=0",
                {"C2": env.format(extract_component(u, "central-linear", "C2")),
                 "C3": env.format(extract_component(u, "central-linear", "C3")),
                 "generator-linear": env.format(extract_component(u, "generator-linear")),
                 "quadratic_terms": len(extract_component(u, "quadratic"))},
                "sum_{i,j=0}^2 (-1)^{i+j} C(2,i) C(2,j) [e_{m+2-i}, Omega^(m)_{-1+i,p-1+j}]")
    alg = make_algebra(q_super())
    witness = None
    tested = 0
    labels = []
    for _ in range(max(2, cfg.samples // 2)):
        # one-dimensional: H acts by a scalar, G by zero
        h, b = rand_rational(rng), rand_rational(rng)
        vbar = make_vbar(alg.g, [[b]], [[[h]], [[0]]], label="q-1dim")
        mod = TensorModule(alg, rand_rational(rng), vbar)
        labels.append(f"{mod.label} H={fs(h)} D={fs(b)}")
        for i in range(-3, 4):
            for j, c in mod.basis((-1, 0, 1)):
                tested += 1
                img = mod.act_sym(Sym(X, 1, i, ()), ModuleVector.basis(j, c))
                if img and witness is None:
                    witness = {"module": mod.label, "i": i, "v": f"e({j},{c})"}
    rep.add("odd generators G(i) annihilate Jet modules of q with simple Vbar", witness is None,
            {"algebra": "QSuper", "modules": labels}, "zero image", {"vectors": tested, "witness": witness}, "G(i) M = 0")
    mod = TensorModule(alg, 0, q_super_vbar(alg.g, 0, 0))
    img = mod.act_sym(Sym(X, 1, 0, ()), ModuleVector.basis(0, 1))
    rep.add("G(0) on the non-simple (1|1) Vbar", INFO, {"vbar": "q-1|1"}, "recorded only",
            format_vector(img), "G(i) M = 0 needs Vbar simple")
    return rep


SUITE_FUNCS: Dict[str, Callable[[RunConfig], Report]] = {
    "axioms": suite_axioms,
    "binomial-brackets": suite_rel_subalg,
    "filtration": suite_filtration,
    "t-subalgebra": suite_t_subalgebra,
    "iota": suite_iota,
    "omega-collapse": suite_omega_collapse,
    "annihilators": suite_annihilators,
    "jet-modules": suite_jet_modules,
    "beta1-exceptional": suite_beta1,
    "cover": suite_cover,
    "map-evaluation": suite_map_evaluation,
    "worked-examples": suite_worked_examples,
}


def run_suite(name: str, cfg: RunConfig) -> Report:
    try:
        fn = SUITE_FUNCS[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}") from None
    return fn(cfg)


def run_suites(cfg: RunConfig, jobs: int = 1) -> List[Report]:
    """Run the configured suites; with jobs > 1 they run in worker processes.

    Reports come back in configuration order either way, so output is identical.
    """
    if jobs <= 1 or len(cfg.suites) <= 1:
        return [run_suite(name, cfg) for name in cfg.suites]
    from concurrent.futures import ProcessPoolExecutor
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(run_suite, cfg.suites, [cfg] * len(cfg.suites)))
