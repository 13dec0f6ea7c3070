"""The A-cover of a weight module: functions A -> M spanned by mu(x, u): t^r -> (t^r x) u.

Cover elements are sparse maps ``(x, (j, c)) -> coefficient``; ``x`` is a D or
X symbol and ``(j, c)`` a module basis vector.  Equality in Hom(A, M) is only
observable through evaluation, so every rank carries a stabilization flag.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .graded import D, T, X, Element, Sym, add_into, shift
from .linalg import EchelonBasis
from .modules import ModuleVector, VKey, WeightModule
from .scalars import Scalar, format_scalar

CKey = Tuple[Sym, VKey]


class CoverError(ValueError):
    pass


class CoverElement:
    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[CKey, Scalar]] = None):
        self.terms: Dict[CKey, Scalar] = {}
        for k, c in (terms or {}).items():
            add_into(self.terms, k, c)

    @classmethod
    def mu(cls, x: Sym, u: ModuleVector) -> "CoverElement":
        return cls({(x, k): c for k, c in u.terms.items()})

    def __eq__(self, other) -> bool:
        if isinstance(other, CoverElement):
            return self.terms == other.terms
        return NotImplemented

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: "CoverElement") -> "CoverElement":
        acc = dict(self.terms)
        for k, c in other.terms.items():
            add_into(acc, k, c)
        return CoverElement(acc)

    def __mul__(self, c) -> "CoverElement":
        return CoverElement({k: v * c for k, v in self.terms.items()})

    __rmul__ = __mul__

    def format(self, mod: WeightModule) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (x, (j, c)), v in sorted(self.terms.items()):
            parts.append(f"{format_scalar(v)}*mu({mod.alg.format_sym(x)},e({j},{c}))")
        return " + ".join(parts)


def frak_i(mod: WeightModule, window: int = 3) -> str:
    """'W' when every X symbol in the window kills every window basis vector, else 'I'."""
    vecs = mod.basis(range(-window, window + 1))
    for s in mod.alg.basis(window):
        if s.kind != X:
            continue
        for j, c in vecs:
            if mod.act_basis(s, j, c):
                return "I"
    return "W"


def mu_evaluate(mod: WeightModule, c: CoverElement, r: int) -> ModuleVector:
    acc: Dict[VKey, Scalar] = {}
    for (x, (j, comp)), coeff in c.terms.items():
        for k, y in mod.act_basis(shift(x, r), j, comp).items():
            add_into(acc, k, coeff * y)
    return ModuleVector._raw(acc)


def pi(mod: WeightModule, c: CoverElement) -> ModuleVector:
    return mu_evaluate(mod, c, 0)


def cover_act_sym(mod: WeightModule, l: Sym, c: CoverElement, kind: Optional[str] = None) -> CoverElement:
    """l mu(x,u) = mu([l,x],u) + (-1)^{|l||x|} mu(x, l u);  t^k mu(x,u) = mu(t^k x, u)."""
    kind = kind or frak_i(mod)
    acc: Dict[CKey, Scalar] = {}
    if l.kind == T:
        for (x, u), v in c.terms.items():
            add_into(acc, (shift(x, l.idx), u), v)
        return CoverElement(acc)
    keep = D if kind == "W" else X
    pl = mod.alg.parity(l)
    for (x, (j, comp)), v in c.terms.items():
        for y, b in mod.alg.bracket_sym(l, x).items():
            # centrals act as zero on every module built here; X terms vanish when I M = 0
            if y.kind == keep:
                add_into(acc, (y, (j, comp)), v * b)
        sign = -1 if (pl & mod.alg.parity(x)) else 1
        for k, w in mod.act_basis(l, j, comp).items():
            add_into(acc, (x, k), sign * v * w)
    return CoverElement(acc)


def cover_act(mod: WeightModule, l: Element, c: CoverElement, kind: Optional[str] = None) -> CoverElement:
    kind = kind or frak_i(mod)
    total = CoverElement()
    for s, a in l.terms.items():
        total = total + a * cover_act_sym(mod, s, c, kind)
    return total


def direct_cover_eval(mod: WeightModule, l: Sym, c: CoverElement, r: int) -> ModuleVector:
    """(l phi)(t^r) computed in Hom(A, M):  l phi(t^r) - phi([l, t^r])."""
    if l.kind == T:
        return mu_evaluate(mod, c, r + l.idx)
    out = mod.act_sym(l, mu_evaluate(mod, c, r))
    if l.kind == D and r:
        out = out - r * mu_evaluate(mod, c, r + l.idx)
    return out


# ---------------------------------------------------------------------------
# weight-space generators and ranks


def alpha_shift(mod: WeightModule) -> int:
    """Offset making weight 0 sit at k = 0 when the support lies in Z."""
    lam = mod.lam
    if isinstance(lam, (int, Fraction)) and Fraction(lam).denominator == 1:
        return int(lam)
    return 0


def cover_generators(mod: WeightModule, p: int, m: int, kind: Optional[str] = None) -> List[CoverElement]:
    """mu(x_s(p-k), u) for |k| <= m/2 and u a basis vector of weight alpha + k."""
    kind = kind or frak_i(mod)
    sh = alpha_shift(mod)
    gens = [0] if kind == "W" else list(range(mod.alg.g.dim))
    out = []
    half = m // 2
    for k in range(-half, half + 1):
        j = k - sh
        if not mod.in_support(j):
            continue
        for s in gens:
            x = Sym(D, 0, p - k, ()) if kind == "W" else Sym(X, s, p - k, ())
            for comp in range(mod.dim):
                out.append(CoverElement.mu(x, ModuleVector.basis(j, comp)))
    return out


def evaluation_rank(mod: WeightModule, elems: List[CoverElement], window: int) -> int:
    basis = EchelonBasis()
    for e in elems:
        row: Dict = {}
        for r in range(-window, window + 1):
            for k, v in mu_evaluate(mod, e, r).terms.items():
                row[(r,) + k] = v
        basis.add(row)
    return len(basis)


@dataclass
class CoverRank:
    rank: int
    stabilized: bool
    bound: int
    generators: List[str] = field(default_factory=list)
    kind: str = "I"


def cover_weight_rank(mod: WeightModule, p: int, m: int, window: int,
                      kind: Optional[str] = None) -> CoverRank:
    kind = kind or frak_i(mod)
    gens = cover_generators(mod, p, m, kind)
    r1 = evaluation_rank(mod, gens, window)
    r2 = evaluation_rank(mod, gens, window + max(m, 1))
    n_s = 1 if kind == "W" else mod.alg.g.dim
    bound = (m + 1) * mod.dim * n_s
    return CoverRank(r1, r1 == r2, bound, [g.format(mod) for g in gens], kind)


# ---------------------------------------------------------------------------
# reduction of generators into the range |k| <= m/2


def _k_of(mod: WeightModule, j: int) -> int:
    return j + alpha_shift(mod)


def _reduce_step(mod: WeightModule, x: Sym, j: int, comp: int, m: int, up: bool) -> Dict[CKey, Scalar]:
    w = mod.weight(j)
    if w == 0:
        raise CoverError("normalize alpha: reduction pivot unavailable")
    v = ModuleVector.basis(j, comp) * (1 / w)
    out: Dict[CKey, Scalar] = {}
    if up:
        # mu(x(n), u) = -sum_{i=1}^m (-1)^i C(m,i) mu(x(n-i), d_i v)
        for i in range(1, m + 1):
            c = -((-1) ** i) * math.comb(m, i)
            dv = mod.act_sym(Sym(D, 0, i, ()), v)
            for k, y in dv.terms.items():
                add_into(out, (shift(x, -i), k), c * y)
    else:
        # mu(x(n), u) = -(-1)^m sum_{i=0}^{m-1} (-1)^i C(m,i) mu(x(n+m-i), d_{i-m} v)
        for i in range(m):
            c = -((-1) ** m) * ((-1) ** i) * math.comb(m, i)
            dv = mod.act_sym(Sym(D, 0, i - m, ()), v)
            for k, y in dv.terms.items():
                add_into(out, (shift(x, m - i), k), c * y)
    return out


def reduce_cover_generator(mod: WeightModule, c: CoverElement, m: int, max_steps: int = 10000) -> CoverElement:
    """Rewrite until every term mu(x, u) has u of relative weight k with |k| <= m/2.

    Sound whenever the matching differentiator of order m annihilates the module.
    """
    if m < 1:
        raise ValueError("order must be >= 1")
    half = Fraction(m, 2)
    terms = dict(c.terms)
    for _ in range(max_steps):
        bad = [key for key in terms if abs(_k_of(mod, key[1][0])) > half]
        if not bad:
            return CoverElement(terms)
        key = min(bad, key=lambda kk: (abs(_k_of(mod, kk[1][0])), kk))
        coeff = terms.pop(key)
        x, (j, comp) = key
        up = _k_of(mod, j) < 0
        for k2, y in _reduce_step(mod, x, j, comp, m, up).items():
            add_into(terms, k2, coeff * y)
    raise CoverError("reduction did not terminate")


def agree_on_points(mod: WeightModule, a: CoverElement, b: CoverElement, points) -> bool:
    return all(mu_evaluate(mod, a, r) == mu_evaluate(mod, b, r) for r in points)
