"""PBW normal forms in U(L) and in the quotient Ubar = U(L~)/(t^i t^j - t^{i+j}, t^0 - 1).

A normal monomial is keyed ``(a, b, factors)`` and stands for
``t^a * d0^b * f_1 * ... * f_n`` with ``f_1 <= ... <= f_n`` in symbol order
(odd symbols never repeat).  In ``U`` mode ``a = b = 0`` and ``d0`` / ``t^k``
are ordinary factors; in ``Ubar`` mode they live only in the prefix.

Products are computed by left-multiplying normal monomials by one symbol at
a time, memoised per (symbol, monomial).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .graded import CENTRAL, D, T, X, Sym, add_into, degree
from .scalars import Scalar, format_scalar

Key = Tuple[int, int, Tuple[Sym, ...]]
Word = Tuple[Sym, ...]
UNIT: Key = (0, 0, ())
D0 = Sym(D, 0, 0, ())

MODES = ("U", "Ubar")


class DegreeBoundExceeded(ValueError):
    pass


class UElement:
    """Element of U(L) or Ubar in normal form, tied to the UEnv that produced it."""

    __slots__ = ("env", "terms")

    def __init__(self, env: "UEnv", terms: Dict[Key, Scalar]):
        self.env = env
        self.terms = terms

    def __eq__(self, other) -> bool:
        if isinstance(other, UElement):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def _combine(self, other: "UElement", sign: int) -> "UElement":
        acc = dict(self.terms)
        for k, v in other.terms.items():
            add_into(acc, k, sign * v)
        return UElement(self.env, acc)

    def __add__(self, other: "UElement") -> "UElement":
        return self._combine(other, 1)

    def __sub__(self, other: "UElement") -> "UElement":
        return self._combine(other, -1)

    def __neg__(self) -> "UElement":
        return UElement(self.env, {k: -v for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, UElement):
            return self.env.mul(self, other)
        if not other:
            return UElement(self.env, {})
        return UElement(self.env, {k: v * other for k, v in self.terms.items()})

    def __rmul__(self, c):
        return self.__mul__(c)

    def words(self) -> List[Tuple[Scalar, Word]]:
        return [(c, self.env.key_word(k)) for k, c in sorted(self.terms.items(), key=_key_order)]

    def __str__(self) -> str:
        return self.env.format(self)

    def __repr__(self) -> str:
        return f"UElement({self.env.format(self)!r})"


def _key_order(item):
    (a, b, m), _ = item
    return (len(m), m, b, a)


class UEnv:
    """Normal-form engine for one algebra in one mode."""

    def __init__(self, alg, mode: str = "U", degree_bound: int = 8):
        if mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        if mode == "Ubar" and not getattr(alg, "extended", False):
            alg = alg.extended_version()
        self.alg = alg
        self.mode = mode
        self.degree_bound = degree_bound
        self._memo: Dict[Tuple[Sym, Key], Dict[Key, Scalar]] = {}
        self._bs = alg.bracket_sym
        self._par = alg.parity
        self.ubar = mode == "Ubar"

    # construction ---------------------------------------------------------
    def zero(self) -> UElement:
        return UElement(self, {})

    def one(self) -> UElement:
        return UElement(self, {UNIT: 1})

    def key_word(self, key: Key) -> Word:
        a, b, m = key
        pre: Tuple[Sym, ...] = ()
        if a:
            pre = (Sym(T, 0, a, ()),)
        return pre + (D0,) * b + m

    def sym(self, s: Sym) -> UElement:
        return self.word((s,))

    def word(self, w: Sequence[Sym], coeff: Scalar = 1) -> UElement:
        return self.from_words([(coeff, tuple(w))])

    def from_words(self, words: Iterable[Tuple[Scalar, Sequence[Sym]]]) -> UElement:
        acc: Dict[Key, Scalar] = {}
        for c, w in words:
            if not c:
                continue
            self._check_word(w)
            cur: Dict[Key, Scalar] = {UNIT: 1}
            for s in reversed(tuple(w)):
                cur = self._left_mul_elem(s, cur)
            for k, v in cur.items():
                add_into(acc, k, c * v)
        return UElement(self, acc)

    def normal_form(self, u) -> UElement:
        """Normal form of a UElement (idempotent) or of raw (coefficient, word) pairs."""
        if isinstance(u, UElement):
            return self.from_words(u.words())
        return self.from_words(u)

    def _check_word(self, w: Sequence[Sym]) -> None:
        n = sum(1 for s in w if not (self.ubar and s.kind == T))
        if n > self.degree_bound:
            raise DegreeBoundExceeded(
                f"monomial degree {n} exceeds the configured bound {self.degree_bound}")
        for s in w:
            if not self.alg.owns(s):
                raise ValueError(f"symbol {s} is foreign to {self.alg.name}")

    # products -------------------------------------------------------------
    def mul(self, u: UElement, v: UElement) -> UElement:
        acc: Dict[Key, Scalar] = {}
        for ku, cu in u.terms.items():
            w = self.key_word(ku)
            cur = dict(v.terms)
            for s in reversed(w):
                cur = self._left_mul_elem(s, cur)
            for k, c in cur.items():
                add_into(acc, k, cu * c)
        return UElement(self, acc)

    def supercommutator(self, u: UElement, v: UElement, sign: int = -1) -> UElement:
        """uv + sign*vu; use sign=+1 for two odd elements."""
        return self.mul(u, v)._combine(self.mul(v, u), sign)

    def _left_mul_elem(self, s: Sym, elem: Dict[Key, Scalar]) -> Dict[Key, Scalar]:
        acc: Dict[Key, Scalar] = {}
        for k, c in elem.items():
            for k2, c2 in self._left_mul_mono(s, k).items():
                add_into(acc, k2, c * c2)
        return acc

    def _left_mul_mono(self, s: Sym, key: Key) -> Dict[Key, Scalar]:
        mk = (s, key)
        r = self._memo.get(mk)
        if r is None:
            r = self._ubar_mul(s, key) if self.ubar else self._insert(s, key[2])
            self._memo[mk] = r
        return r

    def _insert(self, s: Sym, m: Tuple[Sym, ...]) -> Dict[Key, Scalar]:
        """s * m for a prefix-free normal monomial m (PBW straightening)."""
        if not m:
            return {(0, 0, (s,)): 1}
        y = m[0]
        if s < y or (s == y and not self._par(s)):
            return {(0, 0, (s,) + m): 1}
        rest: Key = (0, 0, m[1:])
        acc: Dict[Key, Scalar] = {}
        if s == y:
            # odd square: s*s = 1/2 [s, s]
            for z, c in self._bs(s, s).items():
                for k2, c2 in self._left_mul_mono(z, rest).items():
                    add_into(acc, k2, Fraction(1, 2) * c * c2)
            return acc
        sign = -1 if (self._par(s) & self._par(y)) else 1
        inner = self._left_mul_mono(s, rest)
        for k2, c2 in self._left_mul_elem(y, inner).items():
            add_into(acc, k2, sign * c2)
        for z, c in self._bs(s, y).items():
            for k2, c2 in self._left_mul_mono(z, rest).items():
                add_into(acc, k2, c * c2)
        return acc

    def _ubar_mul(self, s: Sym, key: Key) -> Dict[Key, Scalar]:
        a, b, m = key
        if s.kind == T:
            return {(a + s.idx, b, m): 1}
        if s == D0:
            out = {(a, b + 1, m): 1}
            if a:
                out[(a, b, m)] = a
            return out
        acc: Dict[Key, Scalar] = {}
        if a == 0 and b == 0:
            return self._ubar_insert(s, m)
        # s t^a = t^a s + [s, t^a];  s d0^b = (d0 - e)^b s
        e = degree(s)
        ym = self._ubar_insert(s, m)
        for r in range(b + 1):
            c = math.comb(b, r) * (-e) ** (b - r)
            if not c:
                continue
            cur = ym
            for _ in range(r):
                cur = self._left_mul_elem(D0, cur)
            for (a2, b2, m2), c2 in cur.items():
                add_into(acc, (a2 + a, b2, m2), c * c2)
        if s.kind == D and a:
            add_into(acc, (a + s.idx, b, m), a)
        return acc

    def _ubar_insert(self, s: Sym, m: Tuple[Sym, ...]) -> Dict[Key, Scalar]:
        if not m:
            return {(0, 0, (s,)): 1}
        y = m[0]
        if s < y or (s == y and not self._par(s)):
            return {(0, 0, (s,) + m): 1}
        rest: Key = (0, 0, m[1:])
        acc: Dict[Key, Scalar] = {}
        if s == y:
            for z, c in self._bs(s, s).items():
                for k2, c2 in self._left_mul_mono(z, rest).items():
                    add_into(acc, k2, Fraction(1, 2) * c * c2)
            return acc
        sign = -1 if (self._par(s) & self._par(y)) else 1
        inner = self._left_mul_mono(s, rest)
        for k2, c2 in self._left_mul_elem(y, inner).items():
            add_into(acc, k2, sign * c2)
        for z, c in self._bs(s, y).items():
            for k2, c2 in self._left_mul_mono(z, rest).items():
                add_into(acc, k2, c * c2)
        return acc

    # printing ---------------------------------------------------------------
    def format_key(self, key: Key) -> str:
        a, b, m = key
        parts = []
        if a:
            parts.append(f"t^{a}")
        if b:
            parts.append("d0" if b == 1 else f"d0^{b}")
        parts.extend(self.alg.format_sym(s) for s in m)
        return "*".join(parts) if parts else "1"

    def format(self, u: UElement) -> str:
        if not u.terms:
            return "0"
        out = []
        for i, (k, c) in enumerate(sorted(u.terms.items(), key=_key_order)):
            body = self.format_key(k)
            txt = format_scalar(c)
            if "i" in txt:
                coef = f"({txt})"
                sep = "" if i == 0 else " + "
                out.append(f"{sep}{coef}*{body}")
                continue
            neg = txt.startswith("-")
            mag = txt[1:] if neg else txt
            if body == "1":
                term = mag
            else:
                term = body if mag == "1" else f"{mag}*{body}"
            if i == 0:
                out.append(("-" if neg else "") + term)
            else:
                out.append((" - " if neg else " + ") + term)
        return "".join(out)

    def order_dump(self, window: int = 2) -> List[str]:
        syms = [s for s in self.alg.basis(window)
                if not (self.ubar and (s.kind == T or s == D0))]
        return [self.alg.format_sym(s) for s in sorted(syms)]


# ---------------------------------------------------------------------------
# differentiators


@dataclass(frozen=True)
class DifferentiatorSpec:
    order: int
    k: int = 0
    s: int = 0
    variant: str = "Omega"   # or "OmegaBar"
    j: int = 0
    p: int = 0
    gen: int = 0


def omega_words(m: int, k: int, s: int) -> List[Tuple[Scalar, Word]]:
    """sum_{i=0}^m (-1)^i C(m,i) d_{k-i} d_{s+i}, term by term."""
    if m < 0:
        raise ValueError("order must be >= 0")
    return [((-1) ** i * math.comb(m, i), (Sym(D, 0, k - i, ()), Sym(D, 0, s + i, ())))
            for i in range(m + 1)]


def omega_bar_words(m: int, j: int, p: int, gen: int) -> List[Tuple[Scalar, Word]]:
    """sum_{i=0}^m (-1)^i C(m,i) x_gen(j-i) d_{p+i}, term by term."""
    if m < 0:
        raise ValueError("order must be >= 0")
    return [((-1) ** i * math.comb(m, i), (Sym(X, gen, j - i, ()), Sym(D, 0, p + i, ())))
            for i in range(m + 1)]


def differentiator_words(spec: DifferentiatorSpec) -> List[Tuple[Scalar, Word]]:
    if spec.variant == "Omega":
        return omega_words(spec.order, spec.k, spec.s)
    if spec.variant == "OmegaBar":
        return omega_bar_words(spec.order, spec.j, spec.p, spec.gen)
    raise ValueError(f"unknown differentiator variant {spec.variant!r}")


def differentiator(spec: DifferentiatorSpec, env: UEnv) -> UElement:
    return env.from_words(differentiator_words(spec))


# ---------------------------------------------------------------------------
# the collapse identity for [x_s(.), Omega^(m)] combinations


@dataclass
class CollapseReport:
    m: int
    j: int
    k: int
    p: int
    gen: int
    beta: Scalar
    lhs: UElement
    rhs: UElement
    residual: UElement

    @property
    def holds(self) -> bool:
        return not self.residual

    @property
    def sign_flipped_residual(self) -> UElement:
        """lhs + rhs: zero when the combination equals (beta_s - 1) * sum instead."""
        return self.lhs + self.rhs

    @property
    def holds_up_to_sign(self) -> bool:
        return not self.residual or not self.sign_flipped_residual


_SIX_TERMS = ((1, 1, 0, -1), (-2, 0, 0, 0), (1, -1, 0, 1),
              (-1, 0, 1, -1), (2, -1, 1, 0), (-1, -2, 1, 1))


def collapse_lhs(env: UEnv, m: int, j: int, k: int, p: int, gen: int) -> UElement:
    """[x(j+1),Om_{k,p-1}] - 2[x(j),Om_{k,p}] + [x(j-1),Om_{k,p+1}]
    - [x(j),Om_{k+1,p-1}] + 2[x(j-1),Om_{k+1,p}] - [x(j-2),Om_{k+1,p+1}]."""
    total = env.zero()
    for coef, dj, dk, dp in _SIX_TERMS:
        xs = env.sym(Sym(X, gen, j + dj, ()))
        om = env.from_words(omega_words(m, k + dk, p + dp))
        total = total + coef * env.supercommutator(xs, om)
    return total


def collapse_rhs(env: UEnv, m: int, j: int, k: int, p: int, gen: int) -> UElement:
    """(1 - beta_s) sum_{i=0}^{m+2} (-1)^i C(m+2,i) x_s(j+k+1-i) d_{p-1+i}."""
    beta = env.alg.beta(gen)
    words = [((-1) ** i * math.comb(m + 2, i) * (1 - beta),
              (Sym(X, gen, j + k + 1 - i, ()), Sym(D, 0, p - 1 + i, ())))
             for i in range(m + 3)]
    return env.from_words(words)


def check_collapse_identity(env: UEnv, m: int, j: int, k: int, p: int, gen: int = 0) -> CollapseReport:
    if env.mode != "U":
        raise ValueError("the collapse identity lives in U(L)")
    if env.alg.has_centrals:
        raise ValueError("the collapse identity is stated for a centerless algebra")
    lhs = collapse_lhs(env, m, j, k, p, gen)
    rhs = collapse_rhs(env, m, j, k, p, gen)
    return CollapseReport(m, j, k, p, gen, env.alg.beta(gen), lhs, rhs, lhs - rhs)


# ---------------------------------------------------------------------------
# the subalgebra T of Ubar and the decomposition Ubar = A[d0] ⊗ U(T)


def tau(env: UEnv, i: int) -> UElement:
    """t^{-i} d_i - d_0."""
    return env.word((Sym(T, 0, -i, ()), Sym(D, 0, i, ()))) - env.sym(D0)


def sigma(env: UEnv, gen: int, i: int) -> UElement:
    """t^{-i} x_gen(i)."""
    return env.word((Sym(T, 0, -i, ()), Sym(X, gen, i, ())))


def _t_generator(env: UEnv, y: Sym) -> UElement:
    if y.kind == D:
        return tau(env, y.idx)
    if y.kind == X:
        return sigma(env, y.gen, y.idx)
    raise ValueError(f"{y} has no T-generator")


def _prefix(env: UEnv, a: int, b: int, elem: UElement) -> UElement:
    w = env.key_word((a, b, ()))
    return env.mul(env.word(w), elem)


@dataclass
class IotaForm:
    """sum of coeff * t^a d0^b ⊗ (product of T-generators named by D/X symbols)."""

    env: UEnv
    terms: Dict[Key, Scalar]

    def format(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for (a, b, gens), c in sorted(self.terms.items(), key=_key_order):
            parts = []
            if a:
                parts.append(f"t^{a}")
            if b:
                parts.append("d0" if b == 1 else f"d0^{b}")
            for y in gens:
                if y.kind == D:
                    parts.append(f"tau({y.idx})")
                else:
                    parts.append(f"sigma({self.env.alg.x_tag(y.gen)},{y.idx})")
            body = "*".join(parts) if parts else "1"
            out.append(f"{format_scalar(c)}*{body}")
        return " + ".join(out)


def iota_term(env: UEnv, a: int, b: int, gens: Tuple[Sym, ...]) -> UElement:
    prod = env.one()
    for y in gens:
        prod = env.mul(prod, _t_generator(env, y))
    return _prefix(env, a, b, prod)


def iota_decompose(u: UElement) -> IotaForm:
    """Rewrite a Ubar element over A[d0] in ordered monomials of T-generators.

    Triangular elimination on (number of factors, d0-power): the image of
    ``t^{a+deg} d0^b ⊗ tau(y_1)...tau(y_n)`` has leading term ``t^a d0^b y_1...y_n``.
    """
    env = u.env
    if env.mode != "Ubar":
        raise ValueError("iota_decompose works in Ubar")
    rem = dict(u.terms)
    out: Dict[Key, Scalar] = {}
    guard = 0
    while rem:
        guard += 1
        if guard > 100000:
            raise RuntimeError("iota decomposition did not terminate")
        key = max(rem, key=lambda k: (len(k[2]), k[1], k[2], k[0]))
        c = rem[key]
        a, b, m = key
        a2 = a + sum(degree(y) for y in m)
        add_into(out, (a2, b, m), c)
        for k2, c2 in iota_term(env, a2, b, m).terms.items():
            add_into(rem, k2, -c * c2)
    return IotaForm(env, out)


def iota_apply(form: IotaForm) -> UElement:
    env = form.env
    total = env.zero()
    for (a, b, gens), c in form.terms.items():
        total = total + c * iota_term(env, a, b, gens)
    return total


@dataclass
class ClosureReport:
    kind: str
    args: Tuple
    got: UElement
    expected: UElement

    @property
    def holds(self) -> bool:
        return self.got == self.expected


def check_t_closure(env: UEnv, kind: str, i: int, j: int, s: int = 0, p: int = 0) -> ClosureReport:
    """Commutators of T-generators against their closed forms.

    kinds: 'tau-tau' (i, j); 'tau-sigma' (tau_i, sigma_{s,j});
    'sigma-sigma' (sigma_{s,i}, sigma_{p,j}); 'tau-d0', 'sigma-d0' (i);
    'tau-t', 'sigma-t' (generator index i, t^j).
    """
    alg = env.alg
    if kind == "tau-tau":
        got = env.supercommutator(tau(env, i), tau(env, j))
        exp = (-j) * tau(env, j) + (j - i) * tau(env, i + j) + i * tau(env, i)
    elif kind == "tau-sigma":
        got = env.supercommutator(tau(env, i), sigma(env, s, j))
        exp = (-j) * sigma(env, s, j) + (j + i * alg.beta(s)) * sigma(env, s, j + i)
    elif kind == "sigma-sigma":
        sign = 1 if (alg.g.parity[s] & alg.g.parity[p]) else -1
        got = env.supercommutator(sigma(env, s, i), sigma(env, p, j), sign)
        exp = env.zero()
        for q, c in alg.g.table.get((s, p), {}).items():
            exp = exp + c * sigma(env, q, i + j)
    elif kind in ("tau-d0", "sigma-d0", "tau-t", "sigma-t"):
        gen = tau(env, i) if kind.startswith("tau") else sigma(env, s, i)
        other = env.sym(D0) if kind.endswith("d0") else env.sym(Sym(T, 0, j, ()))
        got = env.supercommutator(gen, other)
        exp = env.zero()
    else:
        raise ValueError(f"unknown closure kind {kind!r}")
    return ClosureReport(kind, (i, j, s, p), got, exp)


# ---------------------------------------------------------------------------
# component extraction


def extract_component(u: UElement, pattern: str, name: Optional[str] = None) -> UElement:
    """Sub-sum of terms matching a pattern.

    'central-linear' (needs name): terms containing that central exactly once;
    'generator-linear': exactly one non-central factor and no centrals;
    'quadratic': exactly two non-central factors and no centrals.
    """
    out: Dict[Key, Scalar] = {}
    for key, c in u.terms.items():
        a, b, m = key
        cent = [s for s in m if s.kind == CENTRAL]
        rest = len(m) - len(cent) + b
        if pattern == "central-linear":
            if name is None:
                raise ValueError("central-linear needs a central name")
            ok = sum(1 for s in cent if s.gen == name) == 1
        elif pattern == "generator-linear":
            ok = not cent and rest == 1
        elif pattern == "quadratic":
            ok = not cent and rest == 2
        else:
            raise ValueError(f"unknown pattern {pattern!r}")
        if ok:
            out[key] = c
    return UElement(u.env, out)


def vir_double_sum(env: UEnv, m: int, p: int) -> UElement:
    """sum_{i,j=0}^2 (-1)^{i+j} C(2,i) C(2,j) [e_{m+2-i}, Omega^{(m)}_{-1+i, p-1+j}]."""
    total = env.zero()
    for i in range(3):
        for jj in range(3):
            c = (-1) ** (i + jj) * math.comb(2, i) * math.comb(2, jj)
            e = env.sym(Sym(X, 0, m + 2 - i, ()))
            om = env.from_words(omega_words(m, -1 + i, p - 1 + jj))
            total = total + c * env.supercommutator(e, om)
    return total


def random_ubar_element(env: UEnv, rng: random.Random, max_degree: int = 3, terms: int = 4,
                        window: int = 3) -> UElement:
    """Random Ubar element built from words in t, d0, d_i, x_s(i)."""
    alg = env.alg
    gens = [Sym(D, 0, i, ()) for i in range(-window, window + 1)]
    gens += [Sym(X, s, i, ()) for s in range(alg.g.dim) for i in range(-window, window + 1)]
    words = []
    for _ in range(terms):
        n = rng.randint(0, max_degree)
        w = [rng.choice(gens) for _ in range(n)]
        w.insert(0, Sym(T, 0, rng.randint(-window, window), ()))
        if rng.random() < 0.5:
            w.insert(1, D0)
        c = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
        words.append((c, tuple(w)))
    return env.from_words(words)
