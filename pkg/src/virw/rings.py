"""Finite-dimensional supercommutative coefficient rings and characters on them.

Every ring here is generated by finitely many nilpotent generators, each
either odd (square zero) or even with a truncation order.  A monomial is a
sorted tuple of generator indices, the empty tuple being the unit.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .scalars import Scalar, as_scalar

Monomial = Tuple[int, ...]


class RingError(ValueError):
    pass


@dataclass(frozen=True)
class RingSpec:
    family: str
    names: Tuple[str, ...] = ()
    parities: Tuple[int, ...] = ()
    orders: Tuple[int, ...] = ()
    parts: Tuple["RingSpec", ...] = ()

    @property
    def trivial(self) -> bool:
        return not self.names

    def parity(self, mono: Monomial) -> int:
        p = 0
        for g in mono:
            p ^= self.parities[g]
        return p

    def basis(self) -> List[Monomial]:
        """All nonzero monomials, unit first, in a fixed order."""
        ranges = []
        for g, order in enumerate(self.orders):
            ranges.append(range(order))
        out = []
        for exps in itertools.product(*ranges):
            mono: List[int] = []
            for g, e in enumerate(exps):
                mono.extend([g] * e)
            out.append(tuple(mono))
        out.sort(key=lambda m: (len(m), m))
        return out

    def mul(self, m1: Monomial, m2: Monomial) -> Optional[Tuple[int, Monomial]]:
        """Product of monomials as (sign, monomial), or None when it vanishes."""
        if not m1:
            return 1, m2
        if not m2:
            return 1, m1
        sign = 1
        par = self.parities
        # Koszul sign: odd generators of m2 moved left past larger odd generators of m1.
        odd1 = [a for a in m1 if par[a]]
        if odd1:
            for b in m2:
                if par[b]:
                    n = sum(1 for a in odd1 if a > b)
                    if n & 1:
                        sign = -sign
        merged = tuple(sorted(m1 + m2))
        counts: Dict[int, int] = {}
        for g in merged:
            counts[g] = counts.get(g, 0) + 1
        for g, n in counts.items():
            if n >= self.orders[g]:
                return None
        return sign, merged

    def generator(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise RingError(f"ring {self.family} has no generator {name!r}") from None

    def monomial_from_names(self, factors: Sequence[str]) -> Tuple[int, Monomial]:
        """Monomial (with ordering sign) for a product of named generators."""
        sign, mono = 1, ()
        for name in factors:
            r = self.mul(mono, (self.generator(name),))
            if r is None:
                return 0, ()
            s, mono = r
            sign *= s
        return sign, mono

    def format_monomial(self, mono: Monomial) -> str:
        if not mono:
            return "1"
        out = []
        for g, grp in itertools.groupby(mono):
            n = len(list(grp))
            out.append(self.names[g] + (f"^{n}" if n > 1 else ""))
        return ".".join(out)

    def describe(self) -> dict:
        d = {"family": self.family}
        if self.family == "Grassmann":
            d["n"] = len(self.names)
        elif self.family == "TruncPoly":
            d["k"] = self.orders[0] if self.orders else 1
        elif self.family == "Product":
            d["parts"] = [p.describe() for p in self.parts]
        return d


TRIVIAL_RING = RingSpec("Trivial")


def grassmann(n: int) -> RingSpec:
    """Exterior algebra on odd generators xi1..xin."""
    if n < 0:
        raise RingError("Grassmann rank must be >= 0")
    return RingSpec("Grassmann", tuple(f"xi{j}" for j in range(1, n + 1)), (1,) * n, (2,) * n)


def trunc_poly(k: int, name: str = "eps") -> RingSpec:
    """C[eps]/(eps^k); k=2 gives the dual numbers."""
    if k < 1:
        raise RingError("truncation order must be >= 1")
    if k == 1:
        return RingSpec("TruncPoly", (), (), (), ())
    return RingSpec("TruncPoly", (name,), (0,), (k,))


def product(rings: Sequence[RingSpec]) -> RingSpec:
    """Super tensor product of rings (generators concatenated, Koszul signs)."""
    names: List[str] = []
    pars: List[int] = []
    orders: List[int] = []
    for r in rings:
        for n in r.names:
            if n in names:
                raise RingError(f"duplicate ring generator {n!r} in product")
        names.extend(r.names)
        pars.extend(r.parities)
        orders.extend(r.orders)
    return RingSpec("Product", tuple(names), tuple(pars), tuple(orders), tuple(rings))


def ring_from_config(cfg) -> RingSpec:
    if cfg is None:
        return TRIVIAL_RING
    fam = cfg.get("family", "Trivial")
    if fam == "Trivial":
        return TRIVIAL_RING
    if fam == "Grassmann":
        return grassmann(int(cfg["n"]))
    if fam == "TruncPoly":
        return trunc_poly(int(cfg["k"]))
    if fam == "Product":
        return product([ring_from_config(p) for p in cfg["parts"]])
    raise RingError(f"unknown ring family {fam!r}")


@dataclass(frozen=True)
class PsiSpec:
    """A character R -> C given by its values on the ring generators."""

    values: Tuple[Tuple[str, Scalar], ...]

    @classmethod
    def from_mapping(cls, m: Mapping[str, object]) -> "PsiSpec":
        return cls(tuple(sorted((k, as_scalar(v)) for k, v in m.items())))

    @classmethod
    def forced(cls, ring: RingSpec) -> "PsiSpec":
        """The only character on a ring of nilpotents: every generator to 0."""
        return cls(tuple(sorted((n, 0) for n in ring.names)))

    def as_dict(self) -> Dict[str, Scalar]:
        return dict(self.values)

    def validate(self, ring: RingSpec) -> None:
        vals = self.as_dict()
        for name in vals:
            ring.generator(name)
        for g, name in enumerate(ring.names):
            if name not in vals:
                raise RingError(f"psi has no value for generator {name!r}")
            v = vals[name]
            if ring.parities[g] and v:
                raise RingError(f"psi must vanish on odd generator {name!r}")
            if ring.orders[g] and v:
                raise RingError(
                    f"psi({name}) = {v} but {name}^{ring.orders[g]} = 0 forces psi({name}) = 0")

    def apply_monomial(self, ring: RingSpec, mono: Monomial) -> Scalar:
        vals = self.as_dict()
        out: Scalar = 1
        for g in mono:
            name = ring.names[g]
            if name not in vals:
                raise RingError(f"psi has no value for generator {name!r}")
            out = out * vals[name]
        return out


def psi_apply(psi: PsiSpec, ring: RingSpec, r: Mapping[Monomial, Scalar]) -> Scalar:
    """Linear extension of psi to a ring element {monomial: coefficient}."""
    psi.validate(ring)
    total: Scalar = 0
    for mono, c in r.items():
        total = total + c * psi.apply_monomial(ring, mono)
    return total
