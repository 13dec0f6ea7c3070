"""Sparse linear combinations of graded basis symbols and the super-bracket.

A basis symbol is a :class:`Sym` named tuple ``(kind, gen, idx, ring)``.
Tuple order is the global PBW order: centrals first, then ``t^k``, then
current generators ``x_s(k)`` (by generator id, then index), then the Witt
generators ``d_i``.  The finite-dimensional ``ghat`` symbols sort last.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Mapping, NamedTuple, Optional, Tuple

from .scalars import Scalar, format_scalar, parse_scalar

CENTRAL, T, X, D, GX, GD = 0, 1, 2, 3, 4, 5


class Sym(NamedTuple):
    kind: int
    gen: object = 0
    idx: int = 0
    ring: Tuple[int, ...] = ()


def d(i: int, ring=()) -> Sym:
    return Sym(D, 0, i, tuple(ring))


def x(s: int, k: int, ring=()) -> Sym:
    return Sym(X, s, k, tuple(ring))


def t(k: int) -> Sym:
    return Sym(T, 0, k, ())


def central(name: str, ring=()) -> Sym:
    return Sym(CENTRAL, name, 0, tuple(ring))


DBAR = Sym(GD, 0, 0, ())


def xbar(s: int) -> Sym:
    return Sym(GX, s, 0, ())


def degree(sym: Sym) -> int:
    """ad(d_0)-degree: the Laurent index for D/X/T symbols, 0 otherwise."""
    if sym.kind in (D, X, T):
        return sym.idx
    return 0


def shift(sym: Sym, r: int) -> Sym:
    """Multiply the Laurent part by ``t^r``."""
    if sym.kind not in (D, X, T):
        raise ValueError(f"cannot shift {sym}")
    return sym._replace(idx=sym.idx + r)


def with_ring(sym: Sym, ring: Tuple[int, ...]) -> Sym:
    return sym._replace(ring=tuple(ring))


def add_into(acc: Dict, key, coeff) -> None:
    """acc[key] += coeff, dropping exact zeros."""
    v = acc.get(key)
    if v is None:
        if coeff:
            acc[key] = coeff
        return
    v = v + coeff
    if v:
        acc[key] = v
    else:
        del acc[key]


class Element:
    """A finite exact linear combination of basis symbols.

    Treat instances as immutable; arithmetic returns new elements.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Optional[Mapping[Sym, Scalar]] = None):
        clean = {}
        if terms:
            for k, v in terms.items():
                if v:
                    clean[k] = v
        self.terms: Dict[Sym, Scalar] = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Sym, Scalar]) -> "Element":
        e = cls.__new__(cls)
        e.terms = terms
        e._hash = None
        return e

    @classmethod
    def of(cls, sym: Sym, coeff: Scalar = 1) -> "Element":
        return cls({sym: coeff})

    def __iter__(self) -> Iterator[Tuple[Sym, Scalar]]:
        return iter(sorted(self.terms.items()))

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, Element):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __add__(self, other: "Element") -> "Element":
        acc = dict(self.terms)
        for k, v in other.terms.items():
            add_into(acc, k, v)
        return Element._raw(acc)

    def __sub__(self, other: "Element") -> "Element":
        acc = dict(self.terms)
        for k, v in other.terms.items():
            add_into(acc, k, -v)
        return Element._raw(acc)

    def __neg__(self) -> "Element":
        return Element._raw({k: -v for k, v in self.terms.items()})

    def __mul__(self, c: Scalar) -> "Element":
        if not c:
            return Element()
        return Element._raw({k: v * c for k, v in self.terms.items()})

    __rmul__ = __mul__

    def coeff(self, sym: Sym) -> Scalar:
        return self.terms.get(sym, 0)

    def symbols(self) -> List[Sym]:
        return sorted(self.terms)

    def __repr__(self) -> str:
        return f"Element({format_element(self)!r})"

    def __str__(self) -> str:
        return format_element(self)


def degree_decompose(a: Element) -> Dict[int, Element]:
    """Split ``a`` into its ad(d_0)-homogeneous components."""
    parts: Dict[int, Dict[Sym, Scalar]] = {}
    for sym, c in a.terms.items():
        parts.setdefault(degree(sym), {})[sym] = c
    return {n: Element._raw(p) for n, p in sorted(parts.items())}


class ForeignSymbolError(ValueError):
    def __init__(self, sym, family):
        super().__init__(f"symbol {sym} does not belong to algebra {family}")
        self.sym = sym


def bracket(alg, a: Element, b: Element) -> Element:
    """Bilinear extension of the basis bracket oracle of ``alg``.

    The oracle already implements the super sign for each homogeneous pair,
    so mixed-parity elements are handled term by term.
    """
    for e in (a, b):
        for sym in e.terms:
            if not alg.owns(sym):
                raise ForeignSymbolError(sym, alg.name)
    acc: Dict[Sym, Scalar] = {}
    bs = alg.bracket_sym
    for s1, c1 in a.terms.items():
        for s2, c2 in b.terms.items():
            c = c1 * c2
            for s, v in bs(s1, s2).items():
                add_into(acc, s, c * v)
    return Element._raw(acc)


def parity_of(alg, a: Element) -> Optional[int]:
    """Parity of a homogeneous element, None if mixed (0 for the zero element)."""
    ps = {alg.parity(s) for s in a.terms}
    if not ps:
        return 0
    if len(ps) == 1:
        return ps.pop()
    return None


# ---------------------------------------------------------------------------
# axiom sweeps


@dataclass
class AxiomReport:
    algebra: str
    window: int
    passed: bool
    pairs_checked: int = 0
    triples_checked: int = 0
    witness: Optional[Tuple[Sym, ...]] = None
    residual: Optional[Element] = None
    failure: Optional[str] = None

    def summary(self) -> str:
        if self.passed:
            return (f"{self.algebra}: pass (window {self.window}, {self.pairs_checked} pairs, "
                    f"{self.triples_checked} triples)")
        return f"{self.algebra}: FAIL {self.failure} at {self.witness}: residual {self.residual}"


def _bracket_dict(bs, a: Dict[Sym, Scalar], b: Dict[Sym, Scalar]) -> Dict[Sym, Scalar]:
    acc: Dict[Sym, Scalar] = {}
    for s1, c1 in a.items():
        for s2, c2 in b.items():
            c = c1 * c2
            for s, v in bs(s1, s2).items():
                add_into(acc, s, c * v)
    return acc


def verify_axioms(alg, window: int, triples: str = "sorted") -> AxiomReport:
    """Check super-antisymmetry and super-Jacobi on basis symbols of index <= window.

    Antisymmetry is checked on all ordered pairs of the doubled window, which
    covers every pair that appears inside a nested bracket below.  Given
    antisymmetry, the Jacobiator is super-alternating, so Jacobi on
    nondecreasing triples implies it on all orderings; ``triples="all"``
    checks every ordered triple anyway.
    """
    if window < 1:
        raise ValueError("window must be >= 1")
    basis = alg.basis(window)
    wide = alg.basis(2 * window)
    bs = alg.bracket_sym
    par = alg.parity
    report = AxiomReport(alg.name, window, True)
    for a in wide:
        pa = par(a)
        for b in wide:
            ab = bs(a, b)
            ba = bs(b, a)
            sign = -1 if (pa & par(b)) else 1
            res = dict(ab)
            for s, v in ba.items():
                add_into(res, s, sign * v)
            report.pairs_checked += 1
            if res:
                report.passed = False
                report.failure = "antisymmetry"
                report.witness = (a, b)
                report.residual = Element._raw(res)
                return report
    if triples == "all":
        it: Iterable = itertools.product(basis, repeat=3)
    else:
        it = itertools.combinations_with_replacement(basis, 3)
    for a, b, c in it:
        res = jacobi_residual_dict(bs, par, a, b, c)
        report.triples_checked += 1
        if res:
            report.passed = False
            report.failure = "jacobi"
            report.witness = (a, b, c)
            report.residual = Element._raw(res)
            return report
    return report


def jacobi_residual_dict(bs, par, a: Sym, b: Sym, c: Sym) -> Dict[Sym, Scalar]:
    """[a,[b,c]] - [[a,b],c] - (-1)^{|a||b|} [b,[a,c]]."""
    res = _bracket_dict(bs, {a: 1}, bs(b, c))
    for s, v in _bracket_dict(bs, bs(a, b), {c: 1}).items():
        add_into(res, s, -v)
    sign = 1 if (par(a) & par(b)) else -1
    for s, v in _bracket_dict(bs, {b: 1}, bs(a, c)).items():
        add_into(res, s, sign * v)
    return res


def jacobi_residual(alg, a: Sym, b: Sym, c: Sym) -> Element:
    return Element._raw(jacobi_residual_dict(alg.bracket_sym, alg.parity, a, b, c))


# ---------------------------------------------------------------------------
# text grammar:  coef*SYM(indices)[@ring]  joined by + / -


def format_sym(sym: Sym, names=None) -> str:
    if names is not None:
        return names.format_sym(sym)
    return _default_format(sym)


def _default_format(sym: Sym) -> str:
    k = sym.kind
    if k == D:
        base = f"D({sym.idx})"
    elif k == X:
        base = f"X({sym.gen},{sym.idx})"
    elif k == T:
        base = f"T({sym.idx})"
    elif k == CENTRAL:
        base = str(sym.gen)
    elif k == GD:
        base = "Dbar"
    else:
        base = f"Xbar({sym.gen})"
    if sym.ring:
        base += "@" + ".".join(f"r{g}" for g in sym.ring)
    return base


def format_coeff_prefix(c: Scalar, first: bool) -> str:
    """Render a coefficient with its joining sign; ``1``/``-1`` are elided."""
    txt = format_scalar(c)
    complex_ = "i" in txt
    if complex_:
        body = f"({txt})*"
        return body if first else f" + {body}"
    neg = txt.startswith("-")
    mag = txt[1:] if neg else txt
    body = "" if mag == "1" else f"{mag}*"
    if first:
        return ("-" if neg else "") + body
    return (" - " if neg else " + ") + body


def format_element(e: Element, names=None) -> str:
    if not e.terms:
        return "0"
    out = []
    for i, (sym, c) in enumerate(sorted(e.terms.items())):
        out.append(format_coeff_prefix(c, i == 0) + format_sym(sym, names))
    return "".join(out)


_TOKEN = re.compile(
    r"\s*(?:(?P<cplx>\([^()]*\))|(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*@().,^]))"
)
_ARG_OPEN = re.compile(r"\s*(?P<op>\()")


def tokenize(text: str) -> List[Tuple[str, str]]:
    pos = 0
    toks = []
    text = text.strip()
    while pos < len(text):
        # a parenthesis right after a symbol name opens its argument list
        after_name = bool(toks) and toks[-1][0] == "name" and text[pos:].lstrip().startswith("(")
        m = (_ARG_OPEN if after_name else _TOKEN).match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"unexpected character at {pos} in {text!r}")
        pos = m.end()
        for kind in ("cplx", "num", "name", "op"):
            if m.groupdict().get(kind) is not None:
                toks.append((kind, m.group(kind)))
                break
    return toks


class _Parser:
    """Shared recursive-descent reader for element and word expressions."""

    def __init__(self, text: str, names):
        self.toks = tokenize(text)
        self.pos = 0
        self.names = names
        self.text = text

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else (None, None)

    def take(self, value=None):
        tok = self.peek()
        if tok[0] is None or (value is not None and tok[1] != value):
            raise ValueError(f"expected {value or 'token'} in {self.text!r} at token {self.pos}")
        self.pos += 1
        return tok

    def at_end(self):
        return self.pos >= len(self.toks)

    def integer(self) -> int:
        sign = 1
        while self.peek()[1] in ("-", "+"):
            if self.take()[1] == "-":
                sign = -sign
        kind, val = self.take()
        if kind != "num" or "/" in val:
            raise ValueError(f"expected integer in {self.text!r}")
        return sign * int(val)

    def coefficient(self) -> Optional[Scalar]:
        kind, val = self.peek()
        if kind == "cplx":
            self.take()
            c = parse_scalar(val)
        elif kind == "num":
            self.take()
            c = parse_scalar(val)
        else:
            return None
        if self.peek()[1] == "*":
            self.take("*")
        return c

    def symbol(self) -> Sym:
        kind, name = self.take()
        if kind != "name":
            raise ValueError(f"expected a symbol name in {self.text!r}, got {name!r}")
        args: List = []
        if self.peek()[1] == "(":
            self.take("(")
            while self.peek()[1] != ")":
                k2, v2 = self.peek()
                if k2 == "name":
                    self.take()
                    args.append(v2)
                else:
                    args.append(self.integer())
                if self.peek()[1] == ",":
                    self.take(",")
            self.take(")")
        elif self.peek()[1] == "^":
            self.take("^")
            args.append(self.integer())
        ring = None
        if self.peek()[1] == "@":
            self.take("@")
            ring = self.ring_monomial()
        return self.names.parse_sym(name, args, ring)

    def ring_monomial(self) -> List[str]:
        factors = []
        while True:
            kind, val = self.take()
            if kind == "num" and val == "1":
                pass
            elif kind != "name":
                raise ValueError(f"bad ring monomial in {self.text!r}")
            else:
                power = 1
                if self.peek()[1] == "^":
                    self.take("^")
                    power = self.integer()
                factors.extend([val] * power)
            if self.peek()[1] == ".":
                self.take(".")
                continue
            return factors


def parse_element(text: str, names) -> Element:
    """Parse the element grammar against the naming scheme of an algebra."""
    p = _Parser(text, names)
    if p.toks == [("num", "0")]:
        return Element()
    acc: Dict[Sym, Scalar] = {}
    sign = 1
    first = True
    while not p.at_end():
        tok = p.peek()[1]
        if tok in ("+", "-"):
            p.take()
            sign = -1 if tok == "-" else 1
            while p.peek()[1] in ("+", "-"):
                if p.take()[1] == "-":
                    sign = -sign
        elif not first:
            raise ValueError(f"expected + or - in {text!r}")
        c = p.coefficient()
        c = 1 if c is None else c
        sym = p.symbol()
        add_into(acc, sym, sign * c)
        sign = 1
        first = False
    return Element._raw(acc)


def parse_words(text: str, names) -> List[Tuple[Scalar, Tuple[Sym, ...]]]:
    """Parse ``coef*A*B*C + ...`` into (coefficient, word) pairs, unnormalized.

    ``1`` alone denotes the empty word.
    """
    p = _Parser(text, names)
    out: List[Tuple[Scalar, Tuple[Sym, ...]]] = []
    sign = 1
    first = True
    while not p.at_end():
        tok = p.peek()[1]
        if tok in ("+", "-"):
            p.take()
            sign = -1 if tok == "-" else 1
        elif not first:
            raise ValueError(f"expected + or - in {text!r}")
        c = p.coefficient()
        word: List[Sym] = []
        if p.at_end() or p.peek()[1] in ("+", "-"):
            if c is None:
                raise ValueError(f"empty term in {text!r}")
        else:
            word.append(p.symbol())
            while p.peek()[1] == "*":
                p.take("*")
                word.append(p.symbol())
        out.append((sign * (1 if c is None else c), tuple(word)))
        sign = 1
        first = False
    return out
