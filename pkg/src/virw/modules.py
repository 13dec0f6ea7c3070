"""Weight modules: intermediate series, tensor (Jet) modules, evaluation modules.

Vectors are sparse maps ``(j, c) -> coefficient`` where ``j`` is the integer
weight offset (weight ``lam + j``) and ``c`` a component of the weight space.
Modules hold the algebra ``L`` whose symbols act; modules that are also
A-modules additionally accept ``T(k)`` symbols.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .catalog import (CurrentAlgebra, GSpec, make_algebra, map_algebra, witt)
from .enveloping import UElement, omega_bar_words, omega_words
from .graded import CENTRAL, D, T, X, Element, Sym, add_into
from .linalg import (EchelonBasis, Matrix, identity, is_zero_matrix, mat_add, mat_mul, mat_scale,
                     zeros)
from .rings import PsiSpec, RingSpec
from .scalars import Scalar, as_scalar, format_scalar, parse_scalar

VKey = Tuple[int, int]


class ModuleError(ValueError):
    pass


# ---------------------------------------------------------------------------
# vectors


class ModuleVector:
    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[VKey, Scalar]] = None):
        self.terms: Dict[VKey, Scalar] = {}
        for k, c in (terms or {}).items():
            add_into(self.terms, (int(k[0]), int(k[1])), as_scalar(c) if not isinstance(c, int) else c)

    @classmethod
    def _raw(cls, terms: Dict[VKey, Scalar]) -> "ModuleVector":
        v = cls.__new__(cls)
        v.terms = terms
        return v

    @classmethod
    def basis(cls, j: int, c: int = 0) -> "ModuleVector":
        return cls._raw({(j, c): 1})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, ModuleVector):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "ModuleVector") -> "ModuleVector":
        acc = dict(self.terms)
        for k, c in other.terms.items():
            add_into(acc, k, c)
        return ModuleVector._raw(acc)

    def __sub__(self, other: "ModuleVector") -> "ModuleVector":
        return self + (-1) * other

    def __neg__(self) -> "ModuleVector":
        return (-1) * self

    def __mul__(self, c) -> "ModuleVector":
        if not c:
            return ModuleVector._raw({})
        return ModuleVector._raw({k: v * c for k, v in self.terms.items()})

    __rmul__ = __mul__

    def degrees(self) -> List[int]:
        return sorted({j for j, _ in self.terms})

    def degree_decompose(self) -> Dict[int, "ModuleVector"]:
        out: Dict[int, Dict[VKey, Scalar]] = {}
        for k, c in self.terms.items():
            out.setdefault(k[0], {})[k] = c
        return {j: ModuleVector._raw(t) for j, t in sorted(out.items())}

    def __repr__(self) -> str:
        return f"ModuleVector({format_vector(self)!r})"


def format_vector(v: ModuleVector) -> str:
    if not v.terms:
        return "0"
    parts = []
    for (j, c), x in sorted(v.terms.items()):
        parts.append(f"{format_scalar(x)}*e({j},{c})")
    return " + ".join(parts)


_VTERM = re.compile(r"^\s*(?:(?P<coef>\(?[^*()]*?\)?|\([^()]*\))\s*\*\s*)?e\(\s*(?P<j>-?\d+)\s*(?:,\s*(?P<c>\d+)\s*)?\)\s*$")


def parse_vector(text: str) -> ModuleVector:
    """Parse ``"e(3)"``, ``"2*e(0,1) + -1/2*e(1,0)"`` and the like."""
    text = text.strip()
    if text == "0":
        return ModuleVector()
    acc: Dict[VKey, Scalar] = {}
    for part in re.split(r"\s+\+\s+", text):
        m = _VTERM.match(part)
        if not m:
            raise ValueError(f"cannot parse vector term {part!r}")
        coef = parse_scalar(m.group("coef")) if m.group("coef") else 1
        add_into(acc, (int(m.group("j")), int(m.group("c") or 0)), coef)
    return ModuleVector._raw(acc)


# ---------------------------------------------------------------------------
# finite-dimensional ghat-modules


@dataclass(frozen=True)
class FinDimModuleSpec:
    """A module for ghat = C dbar + g: matrices for dbar and each x_s."""

    dim: int
    parity: Tuple[int, ...]
    D: Matrix
    X: Tuple[Matrix, ...]
    label: str = "custom"

    @property
    def trivial_g(self) -> bool:
        return all(is_zero_matrix(m) for m in self.X)

    @property
    def scalar_d(self) -> Optional[Scalar]:
        b = self.D[0][0] if self.dim else 0
        return b if self.D == mat_scale(identity(self.dim), b) else None


def _mat(rows, n: int, what: str) -> Matrix:
    m = tuple(tuple(as_scalar(x) if not isinstance(x, int) else x for x in r) for r in rows)
    if len(m) != n or any(len(r) != n for r in m):
        raise ModuleError(f"{what} must be {n}x{n}")
    return m


def make_vbar(g: GSpec, D, X, parity=None, label="custom") -> FinDimModuleSpec:
    """Validate the ghat-module conditions and build the module data."""
    n = len(D)
    parity = tuple(int(p) for p in (parity if parity is not None else (0,) * n))
    if len(parity) != n:
        raise ModuleError("parity vector length differs from dim")
    Dm = _mat(D, n, "D")
    if len(X) != g.dim:
        raise ModuleError(f"need one X matrix per generator of g ({g.dim}), got {len(X)}")
    Xm = tuple(_mat(x, n, f"X[{s}]") for s, x in enumerate(X))
    spec = FinDimModuleSpec(n, parity, Dm, Xm, label)
    check_vbar(g, spec)
    return spec


def check_vbar(g: GSpec, v: FinDimModuleSpec) -> None:
    n = v.dim
    for a in range(n):
        for b in range(n):
            if v.D[a][b] and v.parity[a] != v.parity[b]:
                raise ModuleError(f"D must be even: entry ({a},{b}) crosses parity")
    for s, m in enumerate(v.X):
        for a in range(n):
            for b in range(n):
                if m[a][b] and v.parity[a] != v.parity[b] ^ g.parity[s]:
                    raise ModuleError(f"X[{s}] has entry ({a},{b}) of the wrong parity")
        comm = mat_add(mat_mul(v.D, m), mat_mul(m, v.D), -1)
        if comm != mat_scale(m, g.beta[s]):
            raise ModuleError(f"[D, X[{s}]] != beta_{s} X[{s}]")
    tab = g.table
    for s in range(g.dim):
        for p in range(g.dim):
            sign = -1 if (g.parity[s] & g.parity[p]) == 0 else 1
            lhs = mat_add(mat_mul(v.X[s], v.X[p]), mat_mul(v.X[p], v.X[s]), sign)
            rhs = zeros(n)
            for q, c in tab.get((s, p), {}).items():
                rhs = mat_add(rhs, v.X[q], c)
            if lhs != rhs:
                raise ModuleError(f"X[{s}], X[{p}] violate the bracket of g")


def vbar_from_config(g: GSpec, cfg) -> FinDimModuleSpec:
    try:
        D = cfg["D"]
        n = int(cfg.get("dim", len(D)))
        X = cfg.get("X")
        if X is None:
            X = [zeros(n)] * g.dim
        return make_vbar(g, D, X, cfg.get("parity"), cfg.get("label", "custom"))
    except KeyError as e:
        raise ModuleError(f"vbar config is missing key {e.args[0]!r}") from None


def _E(n: int, a: int, b: int, c: Scalar = 1) -> Matrix:
    return tuple(tuple(c if (i, j) == (a, b) else 0 for j in range(n)) for i in range(n))


def _diag(vals) -> Matrix:
    n = len(vals)
    return tuple(tuple(vals[i] if i == j else 0 for j in range(n)) for i in range(n))


def rand_rational(rng: random.Random, bound: int = 16) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def trivial_vbar(g: GSpec, b: Scalar = 0) -> FinDimModuleSpec:
    """One-dimensional, g acting as zero, dbar acting as b."""
    return make_vbar(g, [[b]], [[[0]]] * g.dim, label="trivial")


def adjoint_vbar(g: GSpec, shift: Scalar = 0) -> FinDimModuleSpec:
    n = g.dim
    X = []
    for s in range(n):
        m = [[0] * n for _ in range(n)]
        for p in range(n):
            for q, c in g.table.get((s, p), {}).items():
                m[q][p] = c
        X.append(m)
    D = _diag([b + shift for b in g.beta])
    return make_vbar(g, D, X, g.parity, label="adjoint")


def sample_vbar(g: GSpec, rng: random.Random, simple: bool = False) -> FinDimModuleSpec:
    """Random finite-dimensional ghat-module with dim <= 3."""
    s = rand_rational(rng)
    options = ["trivial"]
    if not simple:
        options.append("triangular")
        if g.dim <= 3 and g.dim:
            options.append("adjoint")
    if g.label == "heisenberg" and not simple:
        options.append("heis3")
    if g.label == "sl2":
        options.append("sl2fund")
    if g.label == "one_dim":
        options.append("scalar" if g.beta[0] == 0 else ("shift" if not simple else "scalar0"))
    if g.label == "q" and not simple:
        options.append("q11")
    kind = rng.choice(options)
    n = g.dim
    if kind == "trivial" or kind == "scalar0":
        return trivial_vbar(g, s)
    if kind == "triangular":
        k = rng.randint(1, 3)
        D = [[(s if i == j else (rand_rational(rng) if j > i else 0)) for j in range(k)] for i in range(k)]
        return make_vbar(g, D, [zeros(k)] * n, label="triangular")
    if kind == "adjoint":
        return adjoint_vbar(g, s)
    if kind == "heis3":
        bx, by = g.beta[0], g.beta[1]
        D = _diag([s, s - bx, s - bx - by])
        return make_vbar(g, D, [_E(3, 0, 1), _E(3, 1, 2), _E(3, 0, 2)], label="heis3")
    if kind == "sl2fund":
        c = g.beta[0] / 2
        h = _diag([1, -1])
        D = mat_add(mat_scale(h, c), mat_scale(identity(2), s))
        return make_vbar(g, D, [_E(2, 0, 1), h, _E(2, 1, 0)], label="sl2-fundamental")
    if kind == "scalar":
        return make_vbar(g, [[s]], [[[rand_rational(rng)]]], label="scalar")
    if kind == "shift":
        return make_vbar(g, _diag([s, s - g.beta[0]]), [_E(2, 0, 1)], label="shift")
    if kind == "q11":
        a = rand_rational(rng)
        return q_super_vbar(g, a, s)
    raise AssertionError(kind)


def q_super_vbar(g: GSpec, a: Scalar, b: Scalar) -> FinDimModuleSpec:
    """(1|1)-dimensional module of the q-type g on which the odd generator acts nontrivially."""
    X = [_diag([a + 1, a]), _E(2, 0, 1)]
    D = _diag([b, b + Fraction(1, 2)])
    return make_vbar(g, D, X, (0, 1), label="q-1|1")


# ---------------------------------------------------------------------------
# modules


def _t_bracket(alg, a: Sym, b: Sym) -> Dict[Sym, Scalar]:
    """Bracket extended by [d_i, t^k] = k t^{i+k} and [anything else, t^k] = 0."""
    if a.kind == T or b.kind == T:
        if a.kind == T and b.kind == T:
            return {}
        if a.kind == T:
            r = _t_bracket(alg, b, a)
            return {s: -c for s, c in r.items()}
        if a.kind == D and not a.ring and b.idx:
            return {Sym(T, 0, a.idx + b.idx, ()): b.idx}
        return {}
    return alg.bracket_sym(a, b)


class WeightModule:
    """Base class: subclasses implement ``_act(sym, j, c) -> {(j', c'): coeff}``."""

    a_module = False
    label = "module"

    def __init__(self, alg, lam: Scalar, dim: int, parity: Sequence[int] = None):
        self.alg = alg
        self.lam = as_scalar(lam)
        self.dim = dim
        self.parity = tuple(parity) if parity is not None else (0,) * dim
        self._memo: Dict[Tuple[Sym, int, int], Dict[VKey, Scalar]] = {}

    # structure --------------------------------------------------------------
    def in_support(self, j: int) -> bool:
        return True

    def basis(self, weights: Iterable[int]) -> List[VKey]:
        return [(j, c) for j in weights if self.in_support(j) for c in range(self.dim)]

    def weight(self, j: int) -> Scalar:
        return self.lam + j

    def accepts(self, sym: Sym) -> bool:
        if sym.kind == T:
            return self.a_module and not sym.ring
        return self.alg.owns(sym)

    def sym_parity(self, sym: Sym) -> int:
        return 0 if sym.kind == T else self.alg.parity(sym)

    def bracket_sym(self, a: Sym, b: Sym) -> Dict[Sym, Scalar]:
        return _t_bracket(self.alg, a, b)

    def generators(self, window: int, with_t: bool = True) -> List[Sym]:
        out = [s for s in self.alg.basis(window) if s.kind != CENTRAL]
        if with_t and self.a_module:
            out += [Sym(T, 0, i, ()) for i in range(-window, window + 1)]
        return out

    # action -----------------------------------------------------------------
    def _act(self, sym: Sym, j: int, c: int) -> Dict[VKey, Scalar]:
        raise NotImplementedError

    def act_basis(self, sym: Sym, j: int, c: int) -> Dict[VKey, Scalar]:
        key = (sym, j, c)
        r = self._memo.get(key)
        if r is None:
            if not self.accepts(sym):
                raise ModuleError(f"symbol {sym} does not act on {self.label}")
            r = {} if sym.kind == CENTRAL or not self.in_support(j) else self._act(sym, j, c)
            self._memo[key] = r
        return r

    def act_sym(self, sym: Sym, v: ModuleVector) -> ModuleVector:
        acc: Dict[VKey, Scalar] = {}
        for (j, c), x in v.terms.items():
            for k, y in self.act_basis(sym, j, c).items():
                add_into(acc, k, x * y)
        return ModuleVector._raw(acc)

    def act(self, a: Element, v: ModuleVector) -> ModuleVector:
        acc: Dict[VKey, Scalar] = {}
        for sym, x in a.terms.items():
            for k, y in self.act_sym(sym, v).terms.items():
                add_into(acc, k, x * y)
        return ModuleVector._raw(acc)

    def act_word(self, word: Sequence[Sym], v: ModuleVector) -> ModuleVector:
        for s in reversed(tuple(word)):
            if not v:
                return v
            v = self.act_sym(s, v)
        return v

    def act_words(self, words, v: ModuleVector) -> ModuleVector:
        acc: Dict[VKey, Scalar] = {}
        for c, w in words:
            for k, y in self.act_word(w, v).terms.items():
                add_into(acc, k, c * y)
        return ModuleVector._raw(acc)

    def act_U(self, u: UElement, v: ModuleVector) -> ModuleVector:
        if u.env.mode == "Ubar" and not self.a_module:
            raise ModuleError("Ubar elements need an A-module")
        return self.act_words(u.words(), v)

    def describe(self) -> dict:
        return {"label": self.label, "lambda": format_scalar(self.lam), "dim": self.dim,
                "algebra": self.alg.name}


class IntermediateSeries(WeightModule):
    """V(alpha, beta): d_i e_j = (alpha + j + i beta) e_{i+j},  t^i e_j = e_{i+j}, I acting as 0."""

    a_module = True

    def __init__(self, alpha, beta, alg=None):
        super().__init__(alg if alg is not None else make_algebra(witt()), alpha, 1)
        self.alpha = self.lam
        self.beta = as_scalar(beta)
        self.label = f"V({format_scalar(self.alpha)},{format_scalar(self.beta)})"

    def _act(self, sym, j, c):
        if sym.kind == T:
            return {(j + sym.idx, 0): 1}
        if sym.kind == D and not sym.ring:
            co = self.alpha + j + sym.idx * self.beta
            return {(j + sym.idx, 0): co} if co else {}
        return {}


class TensorModule(WeightModule):
    """A ⊗ Vbar with d_i(t^j⊗u) = (lam+j) t^{i+j}⊗u + t^{i+j}⊗(i D u) and x_s(i)(t^j⊗u) = t^{i+j}⊗X_s u."""

    a_module = True

    def __init__(self, alg, lam, vbar: FinDimModuleSpec):
        if not isinstance(alg, CurrentAlgebra) or not alg.ring.trivial or alg.extended:
            raise ModuleError("tensor modules are built over a ring-free current algebra")
        if len(vbar.X) != alg.g.dim:
            raise ModuleError("Vbar does not match g")
        check_vbar(alg.g, vbar)
        super().__init__(alg, lam, vbar.dim, vbar.parity)
        self.vbar = vbar
        self.label = f"F_{format_scalar(self.lam)}({vbar.label})"

    def _act(self, sym, j, c):
        k = sym.kind
        n = self.dim
        if k == T:
            return {(j + sym.idx, c): 1}
        i = sym.idx
        out: Dict[VKey, Scalar] = {}
        if k == D:
            add_into(out, (j + i, c), self.lam + j)
            if i:
                for a in range(n):
                    add_into(out, (j + i, a), i * self.vbar.D[a][c])
        elif k == X:
            m = self.vbar.X[sym.gen]
            for a in range(n):
                if m[a][c]:
                    out[(j + i, a)] = m[a][c]
        return out

    def describe(self) -> dict:
        d = super().describe()
        d["vbar"] = {"dim": self.vbar.dim, "label": self.vbar.label,
                     "D": [[format_scalar(x) for x in r] for r in self.vbar.D]}
        return d


class TrivialModule(WeightModule):
    """One-dimensional module at weight 0 on which everything acts as zero."""

    def __init__(self, alg):
        super().__init__(alg, 0, 1)
        self.label = "trivial"

    def in_support(self, j):
        return j == 0

    def _act(self, sym, j, c):
        return {}


class Beta1Exceptional(WeightModule):
    """g one-dimensional with beta = 1: d_i t^j = (lam+j+ib) t^{i+j},  e_i t^j = delta_{i,0} F t^j."""

    a_module = True

    def __init__(self, lam, b, F, alg=None):
        if alg is None:
            from .catalog import frak_l, one_dim
            alg = make_algebra(frak_l(one_dim(1)))
        if alg.g.dim != 1 or alg.g.beta[0] != 1:
            raise ModuleError("the exceptional module needs a one-dimensional g with beta = 1")
        super().__init__(alg, lam, 1)
        self.b = as_scalar(b)
        self.F = as_scalar(F)
        self.label = f"Exc({format_scalar(self.lam)},{format_scalar(self.b)},{format_scalar(self.F)})"

    def _act(self, sym, j, c):
        if sym.kind == T:
            return {(j + sym.idx, 0): 1}
        if sym.kind == D:
            co = self.lam + j + sym.idx * self.b
            return {(j + sym.idx, 0): co} if co else {}
        if sym.kind == X:
            return {(j, 0): self.F} if sym.idx == 0 and self.F else {}
        return {}


class EvaluationModule(WeightModule):
    """Module over L ⊗ R via (y ⊗ r) v = psi(r) (y v)."""

    def __init__(self, base: WeightModule, ring: RingSpec, psi: Optional[PsiSpec] = None):
        psi = psi if psi is not None else PsiSpec.forced(ring)
        psi.validate(ring)
        alg = make_algebra(map_algebra(base.alg.spec, ring))
        super().__init__(alg, base.lam, base.dim, base.parity)
        self.base = base
        self.ring = ring
        self.psi = psi
        self.label = f"{base.label}^psi"

    def in_support(self, j):
        return self.base.in_support(j)

    def _act(self, sym, j, c):
        scale = self.psi.apply_monomial(self.ring, sym.ring)
        if not scale:
            return {}
        r = self.base.act_basis(sym._replace(ring=()), j, c)
        return {k: scale * y for k, y in r.items()}


# ---------------------------------------------------------------------------
# checks


@dataclass
class ModuleCheck:
    name: str
    passed: bool
    checked: int
    witness: Optional[dict] = None

    def summary(self) -> str:
        if self.passed:
            return f"{self.name}: pass ({self.checked} checks)"
        return f"{self.name}: FAIL witness={self.witness}"


def check_module_axioms(mod: WeightModule, window: int = 4, weights=(-1, 0, 1),
                        with_t: bool = True) -> ModuleCheck:
    """act([a,b]) = a(bv) - (-1)^{|a||b|} b(av) for generator pairs in the window."""
    gens = mod.generators(window, with_t)
    vecs = [ModuleVector.basis(j, c) for j, c in mod.basis(weights)]
    n = 0
    for a in gens:
        pa = mod.sym_parity(a)
        for b in gens:
            sign = -1 if (pa & mod.sym_parity(b)) else 1
            br = mod.bracket_sym(a, b)
            for v in vecs:
                n += 1
                lhs: Dict[VKey, Scalar] = {}
                for s, c in br.items():
                    for k, y in mod.act_sym(s, v).terms.items():
                        add_into(lhs, k, c * y)
                rhs = mod.act_sym(a, mod.act_sym(b, v)).terms.copy()
                for k, y in mod.act_sym(b, mod.act_sym(a, v)).terms.items():
                    add_into(rhs, k, -sign * y)
                if lhs != rhs:
                    return ModuleCheck("module-axiom", False, n, {
                        "a": mod.alg.format_sym(a) if a.kind != T else f"T({a.idx})",
                        "b": mod.alg.format_sym(b) if b.kind != T else f"T({b.idx})",
                        "v": format_vector(v)})
    return ModuleCheck("module-axiom", True, n)


def check_a_associativity(mod: WeightModule, window: int = 4, weights=(-1, 0, 1)) -> ModuleCheck:
    if not mod.a_module:
        return ModuleCheck("A-associativity", False, 0, {"reason": "not an A-module"})
    vecs = [ModuleVector.basis(j, c) for j, c in mod.basis(weights)]
    n = 0
    for v in vecs:
        n += 1
        if mod.act_sym(Sym(T, 0, 0, ()), v) != v:
            return ModuleCheck("A-associativity", False, n, {"t^0": format_vector(v)})
        for i in range(-window, window + 1):
            for k in range(-window, window + 1):
                n += 1
                lhs = mod.act_sym(Sym(T, 0, i, ()), mod.act_sym(Sym(T, 0, k, ()), v))
                if lhs != mod.act_sym(Sym(T, 0, i + k, ()), v):
                    return ModuleCheck("A-associativity", False, n, {"i": i, "k": k, "v": format_vector(v)})
    return ModuleCheck("A-associativity", True, n)


def check_weight_additivity(mod: WeightModule, window: int = 4, weights=(-1, 0, 1)) -> ModuleCheck:
    from .graded import degree
    n = 0
    for s in mod.generators(window):
        for j, c in mod.basis(weights):
            n += 1
            out = mod.act_basis(s, j, c)
            if any(k[0] != j + degree(s) for k in out):
                return ModuleCheck("weight-additivity", False, n, {"sym": str(s), "j": j})
    return ModuleCheck("weight-additivity", True, n)


def exceptional_mismatch_witness(mod: Beta1Exceptional, j: int = 0) -> dict:
    """In every tensor module x(i+1) acts as t * x(i); here e_1 v = 0 while t e_0 v = F t v."""
    v = ModuleVector.basis(j, 0)
    e0 = mod.act_sym(Sym(X, 0, 0, ()), v)
    e1 = mod.act_sym(Sym(X, 0, 1, ()), v)
    te0 = mod.act_sym(Sym(T, 0, 1, ()), e0)
    return {"e0_v": format_vector(e0), "e1_v": format_vector(e1), "t_e0_v": format_vector(te0),
            "mismatch": e1 != te0}


def shift_relation_holds(mod: WeightModule, window: int = 3, weights=(-1, 0, 1)) -> bool:
    """x_s(i+1) v = t (x_s(i) v) for all generators in the window."""
    for s in range(mod.alg.g.dim):
        for i in range(-window, window):
            for j, c in mod.basis(weights):
                v = ModuleVector.basis(j, c)
                a = mod.act_sym(Sym(X, s, i + 1, ()), v)
                b = mod.act_sym(Sym(T, 0, 1, ()), mod.act_sym(Sym(X, s, i, ()), v))
                if a != b:
                    return False
    return True


# ---------------------------------------------------------------------------
# differentiator annihilation


def _differentiator_instances(mod: WeightModule, variant: str, m: int, window: int):
    rng = range(-window, window + 1)
    if variant == "Omega":
        for k in rng:
            for s in rng:
                yield (k, s), omega_words(m, k, s)
    elif variant == "OmegaBar":
        for gen in range(mod.alg.g.dim):
            for j in rng:
                for p in rng:
                    yield (j, p, gen), omega_bar_words(m, j, p, gen)
    else:
        raise ValueError(f"unknown variant {variant!r}")


def annihilates(mod: WeightModule, variant: str, m: int, window: int = 3,
                weights=(-1, 0, 1)) -> Tuple[bool, Optional[dict]]:
    vecs = [ModuleVector.basis(j, c) for j, c in mod.basis(weights)]
    for args, words in _differentiator_instances(mod, variant, m, window):
        for v in vecs:
            r = mod.act_words(words, v)
            if r:
                return False, {"args": list(args), "v": format_vector(v), "image": format_vector(r)}
    return True, None


@dataclass
class MinOrder:
    order: Optional[int]
    variant: str
    witnesses: Dict[int, dict] = field(default_factory=dict)


def min_annihilating_order(mod: WeightModule, variant: str = "Omega", max_m: int = 6,
                           window: int = 3, weights=(-1, 0, 1)) -> MinOrder:
    if max_m > 12:
        raise ValueError("max_m above the degree guard of 12")
    res = MinOrder(None, variant)
    for m in range(max_m + 1):
        ok, wit = annihilates(mod, variant, m, window, weights)
        if ok:
            res.order = m
            return res
        res.witnesses[m] = wit
    return res


# ---------------------------------------------------------------------------
# cyclic spans


@dataclass
class SpanRank:
    ranks: Dict[int, int]
    dims: Dict[int, int]

    @property
    def full(self) -> bool:
        return all(self.ranks.get(j, 0) == d for j, d in self.dims.items())

    def missing(self) -> List[int]:
        return [j for j, d in self.dims.items() if self.ranks.get(j, 0) < d]


def cyclic_span_rank(mod: WeightModule, v: ModuleVector, window: int = 4) -> SpanRank:
    """Per-weight ranks of U(L) v, closing under generators with index <= window
    and keeping only weights j with |j| <= window."""
    if not v:
        raise ValueError("cyclic span of the zero vector")
    gens = mod.generators(window, with_t=False)
    weights = range(-window, window + 1)
    bases: Dict[int, EchelonBasis] = {j: EchelonBasis() for j in weights}
    frontier: List[ModuleVector] = []
    for j, part in v.degree_decompose().items():
        if j in bases and bases[j].add(part.terms):
            frontier.append(part)
    while frontier:
        nxt: List[ModuleVector] = []
        for w in frontier:
            for s in gens:
                img = mod.act_sym(s, w)
                for j, part in img.degree_decompose().items():
                    if j in bases and bases[j].add(part.terms):
                        nxt.append(part)
        frontier = nxt
    dims = {j: (mod.dim if mod.in_support(j) else 0) for j in weights}
    return SpanRank({j: len(b) for j, b in bases.items()}, dims)


@dataclass
class SimplicityProbe:
    drop: bool
    witness: Optional[dict]
    checked: int


def probe_simplicity(mod: WeightModule, window: int = 3) -> SimplicityProbe:
    """Rank drop iff some basis vector in the window generates a span missing a window weight."""
    n = 0
    for j, c in mod.basis(range(-window, window + 1)):
        n += 1
        sr = cyclic_span_rank(mod, ModuleVector.basis(j, c), window)
        if not sr.full:
            return SimplicityProbe(True, {"v": f"e({j},{c})", "missing_weights": sr.missing()}, n)
    return SimplicityProbe(False, None, n)


def module_from_config(alg, cfg) -> WeightModule:
    """Build a module from a config block (variant + parameters)."""
    variant = cfg.get("variant")
    try:
        if variant == "intermediate":
            return IntermediateSeries(cfg["alpha"], cfg["beta"], alg if alg is not None else None)
        if variant == "tensor":
            return TensorModule(alg, cfg.get("lambda", 0), vbar_from_config(alg.g, cfg["vbar"]))
        if variant == "trivial":
            return TrivialModule(alg)
        if variant == "beta1":
            return Beta1Exceptional(cfg.get("lambda", 0), cfg.get("b", 0), cfg["F"], alg)
    except KeyError as e:
        raise ModuleError(f"module config is missing key {e.args[0]!r}") from None
    raise ModuleError(f"unknown module variant {variant!r}")
