"""Catalog of Witt-type Lie (super)algebras and their bracket oracles.

Every infinite-dimensional family is presented as a current algebra
``W ⋉ (g ⊗ C[t, t^-1])``, optionally extended by ``A = C[t, t^-1]`` (the
``T`` symbols), by explicit central symbols with a 2-cocycle, and by a
finite-dimensional coefficient superring ``R`` (the map algebra ``L ⊗ R``).
The finite-dimensional ``ghat = C dbar + g`` has its own small oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .graded import (
    CENTRAL, D, DBAR, GD, GX, T, X, Element, Sym, add_into, verify_axioms, xbar,
    _default_format,
)
from .rings import TRIVIAL_RING, RingSpec, ring_from_config
from .scalars import Scalar, as_scalar, format_scalar

INF = math.inf


class SpecError(ValueError):
    pass


# ---------------------------------------------------------------------------
# g: finite-dimensional Lie superalgebra with a diagonal even derivation


@dataclass(frozen=True)
class GSpec:
    names: Tuple[str, ...]
    parity: Tuple[int, ...]
    beta: Tuple[Scalar, ...]
    # ((s, p, q), c) meaning [x_s, x_p] has coefficient c on x_q; full table
    structure: Tuple[Tuple[Tuple[int, int, int], Scalar], ...] = ()
    form: Optional[Tuple[Tuple[Scalar, ...], ...]] = None
    tags: Optional[Tuple[str, ...]] = None
    label: str = "custom"

    @property
    def dim(self) -> int:
        return len(self.names)

    @property
    def table(self) -> Dict[Tuple[int, int], Dict[int, Scalar]]:
        tab = self.__dict__.get("_table")
        if tab is None:
            tab = {}
            for (s, p, q), c in self.structure:
                tab.setdefault((s, p), {})[q] = c
            object.__setattr__(self, "_table", tab)
        return tab

    def index(self, name) -> int:
        if isinstance(name, int):
            if 0 <= name < self.dim:
                return name
            raise SpecError(f"generator id {name} out of range")
        if name in self.names:
            return self.names.index(name)
        if self.tags and name in self.tags:
            return self.tags.index(name)
        raise SpecError(f"unknown generator {name!r}")

    def with_beta(self, beta: Sequence) -> "GSpec":
        return GSpec(self.names, self.parity, tuple(as_scalar(b) for b in beta), self.structure,
                     self.form, self.tags, self.label)


def make_gspec(names, parity, beta, brackets: Mapping[Tuple[int, int], Mapping[int, object]],
               form=None, tags=None, label="custom") -> GSpec:
    """Build a GSpec from the brackets [x_s, x_p] for s <= p, completing by super-antisymmetry.

    Raises SpecError (naming the offending triple) if the derivation property
    ``beta_s + beta_p = beta_q`` or parity compatibility fails.
    """
    n = len(names)
    parity = tuple(int(p) for p in parity)
    beta = tuple(as_scalar(b) for b in beta)
    if len(parity) != n or len(beta) != n:
        raise SpecError("names, parity and beta must have equal length")
    full: Dict[Tuple[int, int, int], Scalar] = {}
    given = {(s, p) for (s, p) in brackets}
    for (s, p), row in brackets.items():
        for q, c in row.items():
            c = as_scalar(c)
            if not c:
                continue
            if s == p and not parity[s]:
                raise SpecError(f"[x_{s}, x_{s}] must vanish for even x_{s}")
            full[(s, p, q)] = c
            if s != p and (p, s) not in given:
                full[(p, s, q)] = c if (parity[s] & parity[p]) else -c
    for (s, p, q), c in full.items():
        other = full.get((p, s, q), 0)
        sign = -1 if not (parity[s] & parity[p]) else 1
        if other != sign * c:
            raise SpecError(f"structure constants not super-antisymmetric at (s,p,q)=({s},{p},{q})")
        if parity[q] != parity[s] ^ parity[p]:
            raise SpecError(f"parity mismatch at (s,p,q)=({s},{p},{q})")
        if beta[s] + beta[p] != beta[q]:
            raise SpecError(
                f"d is not a derivation: beta_{s} + beta_{p} != beta_{q} at (s,p,q)=({s},{p},{q})")
    f = None
    if form is not None:
        f = tuple(tuple(as_scalar(v) for v in row) for row in form)
        if len(f) != n or any(len(r) != n for r in f):
            raise SpecError("form must be an n x n matrix")
    g = GSpec(tuple(names), parity, beta, tuple(sorted(full.items())), f,
              tuple(tags) if tags else None, label)
    if f is not None:
        _check_form(g)
    return g


def _check_form(g: GSpec) -> None:
    f = g.form
    n = g.dim
    for a in range(n):
        for b in range(n):
            if f[a][b] != f[b][a]:
                raise SpecError(f"form not symmetric at ({a},{b})")
    tab = g.table
    for a in range(n):
        for b in range(n):
            for c in range(n):
                lhs = sum((v * f[q][c] for q, v in tab.get((a, b), {}).items()), 0)
                rhs = sum((f[a][q] * v for q, v in tab.get((b, c), {}).items()), 0)
                if lhs != rhs:
                    raise SpecError(f"form not invariant at ({a},{b},{c})")


def heisenberg(beta_x=1, beta_y=-1) -> GSpec:
    """H3 = span{x, y, z}, [x, y] = z, derivation weights (a, b, a+b)."""
    bx, by = as_scalar(beta_x), as_scalar(beta_y)
    return make_gspec(("x", "y", "z"), (0, 0, 0), (bx, by, bx + by), {(0, 1): {2: 1}},
                      label="heisenberg")


def sl2(c=1) -> GSpec:
    """sl2 with basis (e, h, f), derivation c*ad(h), trace form."""
    c = as_scalar(c)
    return make_gspec(("e", "h", "f"), (0, 0, 0), (2 * c, 0, -2 * c),
                      {(1, 0): {0: 2}, (1, 2): {2: -2}, (0, 2): {1: 1}},
                      form=((0, 0, 1), (0, 2, 0), (1, 0, 0)), label="sl2")


def one_dim(beta=0, name="e", tag="E") -> GSpec:
    return make_gspec((name,), (0,), (beta,), {}, tags=(tag,), label="one_dim")


def q_g() -> GSpec:
    """g = C x + C y, x even, y odd, [x, y] = y, d-weights (0, -1/2); tags H, G."""
    return make_gspec(("x", "y"), (0, 1), (0, Fraction(-1, 2)), {(0, 1): {1: 1}},
                      tags=("H", "G"), label="q")


def abelian(n: int, beta: Sequence = None) -> GSpec:
    beta = beta if beta is not None else (0,) * n
    return make_gspec(tuple(f"a{j}" for j in range(n)), (0,) * n, beta, {}, label="abelian")


def gspec_from_config(cfg) -> GSpec:
    if "preset" in cfg:
        preset = cfg["preset"]
        beta = cfg.get("beta")
        if preset == "heisenberg":
            if beta is None:
                return heisenberg()
            if len(beta) != 3:
                raise SpecError("heisenberg beta must have 3 entries")
            g = heisenberg(beta[0], beta[1])
            if as_scalar(beta[2]) != g.beta[2]:
                raise SpecError("d is not a derivation: beta_0 + beta_1 != beta_2 at (s,p,q)=(0,1,2)")
            return g
        if preset == "sl2":
            return sl2(cfg.get("c", 1))
        if preset == "one_dim":
            b = beta[0] if isinstance(beta, (list, tuple)) else (beta if beta is not None else 0)
            return one_dim(b)
        if preset == "q":
            return q_g()
        raise SpecError(f"unknown g preset {preset!r}")
    names = cfg["names"]
    brackets = {}
    for key, row in (cfg.get("brackets") or {}).items():
        s, p = (int(v) for v in str(key).split(","))
        brackets[(s, p)] = {int(q): c for q, c in row.items()}
    return make_gspec(names, cfg.get("parity", [0] * len(names)), cfg["beta"], brackets,
                      form=cfg.get("form"), tags=cfg.get("tags"))


# ---------------------------------------------------------------------------
# algebra specs


@dataclass(frozen=True)
class AlgebraSpec:
    family: str
    g: Optional[GSpec] = None
    beta: Optional[Scalar] = None
    ring: RingSpec = TRIVIAL_RING
    base: Optional["AlgebraSpec"] = None

    def describe(self) -> dict:
        d: dict = {"family": self.family}
        if self.beta is not None:
            d["beta"] = format_scalar(self.beta)
        if self.g is not None:
            d["g"] = {
                "label": self.g.label,
                "names": list(self.g.names),
                "parity": list(self.g.parity),
                "beta": [format_scalar(b) for b in self.g.beta],
                "brackets": {f"{s},{p},{q}": format_scalar(c) for (s, p, q), c in self.g.structure},
            }
            if self.g.form is not None:
                d["g"]["form"] = [[format_scalar(v) for v in row] for row in self.g.form]
        if self.base is not None:
            d["base"] = self.base.describe()
        if not self.ring.trivial:
            d["ring"] = self.ring.describe()
        return d


FAMILIES = ("Witt", "ExtendedWitt", "FrakL", "ExtendedFrakL", "Vir0Beta", "AffineVirasoro",
            "QSuper", "WH", "Ghat", "MapAlgebra")


def witt() -> AlgebraSpec:
    return AlgebraSpec("Witt")


def frak_l(g: GSpec) -> AlgebraSpec:
    return AlgebraSpec("FrakL", g=g)


def vir0beta(beta) -> AlgebraSpec:
    return AlgebraSpec("Vir0Beta", beta=as_scalar(beta))


def affine_virasoro(g: Optional[GSpec] = None) -> AlgebraSpec:
    return AlgebraSpec("AffineVirasoro", g=g if g is not None else sl2(0))


def q_super() -> AlgebraSpec:
    return AlgebraSpec("QSuper")


def wh(beta) -> AlgebraSpec:
    return AlgebraSpec("WH", beta=as_scalar(beta))


def ghat(g: GSpec) -> AlgebraSpec:
    return AlgebraSpec("Ghat", g=g)


def map_algebra(base: AlgebraSpec, ring: RingSpec) -> AlgebraSpec:
    return AlgebraSpec("MapAlgebra", base=base, ring=ring)


def spec_from_config(cfg) -> AlgebraSpec:
    fam = cfg.get("family")
    if fam not in FAMILIES:
        raise SpecError(f"unknown algebra family {fam!r}")
    if fam in ("Witt", "ExtendedWitt", "QSuper"):
        return AlgebraSpec(fam)
    if fam in ("Vir0Beta", "WH"):
        return AlgebraSpec(fam, beta=as_scalar(cfg.get("beta", 0)))
    if fam == "AffineVirasoro":
        g = gspec_from_config(cfg["g"]) if "g" in cfg else sl2(0)
        return affine_virasoro(g)
    if fam in ("FrakL", "ExtendedFrakL", "Ghat"):
        return AlgebraSpec(fam, g=gspec_from_config(cfg["g"]))
    base = spec_from_config(cfg["base"])
    return map_algebra(base, ring_from_config(cfg.get("ring")))


# ---------------------------------------------------------------------------
# bracket oracles


class CurrentAlgebra:
    """Oracle for W ⋉ (g ⊗ A) with optional A-extension, central cocycle and ring."""

    def __init__(self, spec: AlgebraSpec, g: GSpec, extended: bool = False, centrals=(),
                 cocycle=None, ring: RingSpec = TRIVIAL_RING, d_name: str = "D", name: str = ""):
        self.spec = spec
        self.g = g
        self.extended = extended
        self.centrals = tuple(centrals)
        self._cocycle = cocycle
        self.ring = ring
        self.d_name = d_name
        self.name = name or spec.family
        self._cache: Dict[Tuple[Sym, Sym], Dict[Sym, Scalar]] = {}
        self._table = g.table
        self._beta = g.beta
        self._gpar = g.parity

    # structure queries --------------------------------------------------
    def owns(self, sym: Sym) -> bool:
        k = sym.kind
        if k == D:
            ok = True
        elif k == X:
            ok = isinstance(sym.gen, int) and 0 <= sym.gen < self.g.dim
        elif k == T:
            ok = self.extended
        elif k == CENTRAL:
            ok = sym.gen in self.centrals
        else:
            ok = False
        if not ok:
            return False
        if sym.ring:
            if self.ring.trivial:
                return False
            return all(0 <= r < len(self.ring.names) for r in sym.ring)
        return True

    def parity(self, sym: Sym) -> int:
        p = self._gpar[sym.gen] if sym.kind == X else 0
        if sym.ring:
            p ^= self.ring.parity(sym.ring)
        return p

    def beta(self, s: int) -> Scalar:
        return self._beta[s]

    def basis(self, window: int) -> List[Sym]:
        out: List[Sym] = []
        rng = range(-window, window + 1)
        base = [Sym(CENTRAL, c, 0, ()) for c in self.centrals]
        if self.extended:
            base += [Sym(T, 0, i, ()) for i in rng]
        for s in range(self.g.dim):
            base += [Sym(X, s, i, ()) for i in rng]
        base += [Sym(D, 0, i, ()) for i in rng]
        if self.ring.trivial:
            return base
        for mono in self.ring.basis():
            out += [b._replace(ring=mono) for b in base if b.kind != T or not mono]
        return sorted(out)

    @property
    def has_centrals(self) -> bool:
        return bool(self.centrals)

    # bracket ------------------------------------------------------------
    def bracket_sym(self, a: Sym, b: Sym) -> Dict[Sym, Scalar]:
        """Bracket of two basis symbols.  The returned mapping must not be mutated."""
        key = (a, b)
        r = self._cache.get(key)
        if r is None:
            if a.ring or b.ring:
                r = self._ring_bracket(a, b)
            else:
                r = self._base_bracket(a, b)
            self._cache[key] = r
        return r

    def _ring_bracket(self, a: Sym, b: Sym) -> Dict[Sym, Scalar]:
        prod = self.ring.mul(a.ring, b.ring)
        if prod is None:
            return {}
        sign, mono = prod
        base_b = b._replace(ring=())
        if self._base_parity(base_b) and self.ring.parity(a.ring):
            sign = -sign
        out: Dict[Sym, Scalar] = {}
        for s, c in self._base_bracket(a._replace(ring=()), base_b).items():
            if s.kind == T and mono:
                raise SpecError("A-extension is not tensored with R")
            out[s._replace(ring=mono)] = sign * c
        return out

    def _base_parity(self, sym: Sym) -> int:
        return self._gpar[sym.gen] if sym.kind == X else 0

    def _base_bracket(self, a: Sym, b: Sym) -> Dict[Sym, Scalar]:
        ka, kb = a.kind, b.kind
        if ka == CENTRAL or kb == CENTRAL:
            return {}
        if ka < kb:
            # [b, a] = -(-1)^{|a||b|}[a, b]
            r = self._ordered(b, a)
            sign = 1 if (self._base_parity(a) & self._base_parity(b)) else -1
            return {s: sign * c for s, c in r.items()}
        return self._ordered(a, b)

    def _ordered(self, a: Sym, b: Sym) -> Dict[Sym, Scalar]:
        """Bracket with kind(a) >= kind(b), i.e. D before X before T."""
        ka, kb = a.kind, b.kind
        out: Dict[Sym, Scalar] = {}
        if ka == D:
            i = a.idx
            if kb == D:
                j = b.idx
                if j != i:
                    out[Sym(D, 0, i + j, ())] = j - i
            elif kb == X:
                s, k = b.gen, b.idx
                c = k + i * self._beta[s]
                if c:
                    out[Sym(X, s, i + k, ())] = c
            elif kb == T:
                if b.idx:
                    out[Sym(T, 0, i + b.idx, ())] = b.idx
        elif ka == X:
            if kb == X:
                s, k, p, j = a.gen, a.idx, b.gen, b.idx
                for q, c in self._table.get((s, p), {}).items():
                    out[Sym(X, q, k + j, ())] = c
            # [x, t] = 0
        if self._cocycle is not None and ka in (D, X) and kb in (D, X):
            for name, c in self._cocycle(a, b).items():
                if c:
                    add_into(out, Sym(CENTRAL, name, 0, ()), c)
        return out

    # naming ---------------------------------------------------------------
    def format_sym(self, sym: Sym) -> str:
        k = sym.kind
        if k == D:
            base = f"{self.d_name}({sym.idx})"
        elif k == X:
            if self.g.tags:
                base = f"{self.g.tags[sym.gen]}({sym.idx})"
            else:
                base = f"X({self.g.names[sym.gen]},{sym.idx})"
        elif k == T:
            base = f"T({sym.idx})"
        elif k == CENTRAL:
            base = str(sym.gen)
        else:
            base = _default_format(sym)
        if sym.ring:
            base += "@" + self.ring.format_monomial(sym.ring)
        return base

    def parse_sym(self, name: str, args: list, ring_factors=None) -> Sym:
        sym = self._parse_base(name, args)
        if ring_factors is not None:
            if self.ring.trivial:
                raise SpecError(f"algebra {self.name} has no coefficient ring")
            sign, mono = self.ring.monomial_from_names(ring_factors)
            if sign != 1:
                raise SpecError("ring monomials must be written in canonical (sorted) order")
            sym = sym._replace(ring=mono)
        if not self.owns(sym):
            raise SpecError(f"symbol {name}{tuple(args)} is foreign to {self.name}")
        return sym

    def _parse_base(self, name: str, args: list) -> Sym:
        if name in (self.d_name, "D", "d") and len(args) == 1:
            return Sym(D, 0, int(args[0]), ())
        if name == "d0" and not args:
            return Sym(D, 0, 0, ())
        if name in ("T", "t") and len(args) == 1:
            return Sym(T, 0, int(args[0]), ())
        if name == "X" and len(args) == 2:
            return Sym(X, self.g.index(args[0]), int(args[1]), ())
        if self.g.tags and name in self.g.tags and len(args) == 1:
            return Sym(X, self.g.tags.index(name), int(args[0]), ())
        if name in self.g.names and len(args) == 1 and not (self.g.tags):
            return Sym(X, self.g.names.index(name), int(args[0]), ())
        if name in self.centrals and not args:
            return Sym(CENTRAL, name, 0, ())
        raise SpecError(f"cannot parse symbol {name}{tuple(args)} for {self.name}")

    def x_tag(self, s: int) -> str:
        return self.g.tags[s] if self.g.tags else self.g.names[s]

    def extended_version(self) -> "CurrentAlgebra":
        """The A-extension W ⋉ (I ⊕ A) of this algebra (same parameters)."""
        if self.extended:
            return self
        fam = {"Witt": "ExtendedWitt", "FrakL": "ExtendedFrakL"}.get(self.spec.family)
        if fam is None:
            raise SpecError(f"{self.name} has no A-extension in the catalog")
        return make_algebra(AlgebraSpec(fam, g=self.spec.g))

    def __repr__(self) -> str:
        return f"<{self.name}>"


class GhatAlgebra:
    """ghat = C dbar ⊕ g with [dbar, x_s] = beta_s x_s."""

    extended = False
    centrals = ()
    ring = TRIVIAL_RING

    def __init__(self, spec: AlgebraSpec):
        self.spec = spec
        self.g = spec.g
        self.name = f"Ghat({spec.g.label})"

    def owns(self, sym: Sym) -> bool:
        return (sym.kind == GD and not sym.ring) or (
            sym.kind == GX and isinstance(sym.gen, int) and 0 <= sym.gen < self.g.dim and not sym.ring)

    def parity(self, sym: Sym) -> int:
        return self.g.parity[sym.gen] if sym.kind == GX else 0

    def basis(self, window: int = 0) -> List[Sym]:
        return [xbar(s) for s in range(self.g.dim)] + [DBAR]

    def bracket_sym(self, a: Sym, b: Sym) -> Dict[Sym, Scalar]:
        if a.kind == GD and b.kind == GD:
            return {}
        if a.kind == GD:
            c = self.g.beta[b.gen]
            return {b: c} if c else {}
        if b.kind == GD:
            c = self.g.beta[a.gen]
            return {a: -c} if c else {}
        return {xbar(q): c for q, c in self.g.table.get((a.gen, b.gen), {}).items()}

    def format_sym(self, sym: Sym) -> str:
        if sym.kind == GD:
            return "Dbar"
        return f"Xbar({self.g.names[sym.gen]})"

    def parse_sym(self, name, args, ring_factors=None) -> Sym:
        if name == "Dbar" and not args:
            return DBAR
        if name == "Xbar" and len(args) == 1:
            return xbar(self.g.index(args[0]))
        raise SpecError(f"cannot parse symbol {name}{tuple(args)} for {self.name}")


# cocycles ------------------------------------------------------------------


def _vir_dd(name):
    def cocycle(a: Sym, b: Sym):
        if a.kind == D and b.kind == D and a.idx + b.idx == 0:
            i = a.idx
            return {name: Fraction(i ** 3 - i, 12)}
        return {}
    return cocycle


def _vir0beta_cocycle(beta):
    vir = _vir_dd("C1")

    def cocycle(a: Sym, b: Sym):
        if a.kind == D and b.kind == D:
            return vir(a, b)
        if a.idx + b.idx != 0:
            return {}
        if a.kind == D and b.kind == X:
            i = a.idx
            if beta == 0:
                return {"C2": i * i + i}
            if beta == -1:
                return {"C2": Fraction(i ** 3 - i, 12)}
            if beta == 1:
                return {"C2": i, "C3": 1}
            return {}
        if a.kind == X and b.kind == X and beta == 0:
            return {"C4": a.idx}
        return {}
    return cocycle


def _affine_cocycle(g: GSpec):
    vir = _vir_dd("C")
    form = g.form

    def cocycle(a: Sym, b: Sym):
        if a.kind == D and b.kind == D:
            return vir(a, b)
        if a.kind == X and b.kind == X and a.idx + b.idx == 0:
            c = form[a.gen][b.gen] * a.idx
            return {"C": c} if c else {}
        return {}
    return cocycle


def _q_cocycle():
    vir = _vir_dd("C")

    def cocycle(a: Sym, b: Sym):
        if a.kind == D and b.kind == D:
            return vir(a, b)
        if a.kind == X and b.kind == X and a.gen == 0 and b.gen == 0 and a.idx + b.idx == 0:
            return {"C": Fraction(a.idx, 3)}
        return {}
    return cocycle


_EMPTY_G = make_gspec((), (), (), {}, label="zero")


@lru_cache(maxsize=None)
def make_algebra(spec: AlgebraSpec):
    """Bracket oracle for a catalog spec."""
    fam = spec.family
    if fam == "Witt":
        return CurrentAlgebra(spec, _EMPTY_G, name="Witt")
    if fam == "ExtendedWitt":
        return CurrentAlgebra(spec, _EMPTY_G, extended=True, name="ExtendedWitt")
    if fam in ("FrakL", "ExtendedFrakL"):
        if spec.g is None:
            raise SpecError(f"{fam} needs a g")
        return CurrentAlgebra(spec, spec.g, extended=fam == "ExtendedFrakL",
                              name=f"{fam}({spec.g.label})")
    if fam == "Vir0Beta":
        beta = as_scalar(spec.beta)
        return CurrentAlgebra(spec, one_dim(beta), centrals=("C1", "C2", "C3", "C4"),
                              cocycle=_vir0beta_cocycle(beta), name=f"Vir0Beta({format_scalar(beta)})")
    if fam == "AffineVirasoro":
        g = spec.g
        if g.form is None:
            raise SpecError("AffineVirasoro needs an invariant form on g")
        if any(b != 0 for b in g.beta):
            raise SpecError("AffineVirasoro requires beta_s = 0 for all s")
        if any(g.parity):
            raise SpecError("AffineVirasoro is implemented for even g only")
        return CurrentAlgebra(spec, g, centrals=("C",), cocycle=_affine_cocycle(g),
                              name=f"AffineVirasoro({g.label})")
    if fam == "QSuper":
        return CurrentAlgebra(spec, q_g(), centrals=("C",), cocycle=_q_cocycle(), d_name="L",
                              name="QSuper")
    if fam == "WH":
        beta = as_scalar(spec.beta)
        return CurrentAlgebra(spec, heisenberg(beta, -beta), name=f"WH({format_scalar(beta)})")
    if fam == "Ghat":
        return GhatAlgebra(spec)
    if fam == "MapAlgebra":
        base = make_algebra(spec.base)
        if not isinstance(base, CurrentAlgebra):
            raise SpecError("MapAlgebra base must be a current algebra")
        if base.extended:
            raise SpecError("MapAlgebra base must not carry the A-extension")
        return CurrentAlgebra(spec, base.g, extended=False, centrals=base.centrals,
                              cocycle=base._cocycle, ring=spec.ring, d_name=base.d_name,
                              name=f"{base.name}⊗{spec.ring.family}")
    raise SpecError(f"unknown family {fam!r}")


def validate_gspec(g: GSpec, window: int = 1) -> None:
    """Raise SpecError if g (with its derivation) fails the super-Lie axioms."""
    rep = verify_axioms(make_algebra(ghat(g)), window)
    if not rep.passed:
        raise SpecError(f"g is not a Lie superalgebra with derivation: {rep.summary()}")


# ---------------------------------------------------------------------------
# (t-1)-adic filtration a_k and the quotient a_0 -> ghat


def expand_filtration_element(kind: str, k: int, i: int, s: int = 0) -> Element:
    """(t-1)^k d_i  (kind 'W')  or  (t-1)^k x_s(i)  (kind 'I') in the D/X basis."""
    if k < 0:
        raise ValueError("k must be >= 0")
    terms: Dict[Sym, Scalar] = {}
    for a in range(k + 1):
        c = math.comb(k, a) * (-1) ** (k - a)
        sym = Sym(D, 0, i + a, ()) if kind == "W" else Sym(X, s, i + a, ())
        terms[sym] = c
    return Element(terms)


def _valuation(coeffs: Dict[int, Scalar]):
    """Largest v with (t-1)^v dividing the Laurent polynomial sum c_i t^i."""
    if not coeffs:
        return INF
    lo, hi = min(coeffs), max(coeffs)
    p = [coeffs.get(i, 0) for i in range(lo, hi + 1)]
    v = 0
    while sum(p, 0) == 0:
        # synthetic division by (t - 1), highest degree first
        q = []
        acc: Scalar = 0
        for c in reversed(p):
            acc = acc + c
            q.append(acc)
        q.pop()  # remainder, zero here
        p = list(reversed(q))
        v += 1
    return v


def valuation_at_one(a: Element) -> Tuple[object, object]:
    """(nu_W, nu_I): (t-1)-adic valuations of the W-part and the g⊗A part."""
    w: Dict[int, Scalar] = {}
    parts: Dict[object, Dict[int, Scalar]] = {}
    for sym, c in a.terms.items():
        if sym.kind == D and not sym.ring:
            w[sym.idx] = c
        elif sym.kind == X and not sym.ring:
            parts.setdefault(sym.gen, {})[sym.idx] = c
        else:
            raise ValueError(f"valuation_at_one: {sym} is not in L")
    nu_w = _valuation(w)
    nu_i = min((_valuation(p) for p in parts.values()), default=INF)
    return nu_w, nu_i


def in_filtration(a: Element, k: int) -> bool:
    nu_w, nu_i = valuation_at_one(a)
    return nu_w >= k + 1 and nu_i >= k


class FiltrationError(ValueError):
    pass


def project_to_ghat(a: Element) -> Element:
    """The quotient a_0 -> a_0/a_1 = ghat:  d_i - d_0 -> i*dbar,  x_s(i) -> x_s."""
    nu_w, _ = valuation_at_one(a)
    if nu_w < 1:
        raise FiltrationError(f"element not in a_0: W-part valuation {nu_w} < 1")
    out: Dict[Sym, Scalar] = {}
    for sym, c in a.terms.items():
        if sym.kind == D:
            if sym.idx:
                add_into(out, DBAR, sym.idx * c)
        else:
            add_into(out, xbar(sym.gen), c)
    return Element._raw(out)
