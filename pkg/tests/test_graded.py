import pytest
from hypothesis import given, strategies as st

from virw.catalog import SpecError, make_algebra, witt
from virw.graded import (D, Element, Sym, bracket, d, format_element, parse_element, parse_words,
                         tokenize, verify_axioms)
from virw.suites import _CorruptedWitt

W = make_algebra(witt())
idx = st.integers(-6, 6)


@given(idx, idx)
def test_witt_bracket_formula(m, n):
    assert W.bracket_sym(d(m), d(n)) == ({d(m + n): n - m} if n != m else {})


@given(idx, idx, idx)
def test_witt_jacobi(a, b, c):
    A, B, C = (Element.of(d(k)) for k in (a, b, c))
    lhs = bracket(W, A, bracket(W, B, C))
    rhs = bracket(W, bracket(W, A, B), C) + bracket(W, B, bracket(W, A, C))
    assert lhs == rhs


def test_parse_symbol_arguments_after_names():
    # "(2)" right after a name is an argument list, not a complex coefficient
    assert tokenize("d(2)") == [("name", "d"), ("op", "("), ("num", "2"), ("op", ")")]
    assert parse_element("d(2) - 3*D(-1)", W) == Element({d(2): 1, d(-1): -3})
    assert parse_element("(1+i)*d(1)", W).coeff(d(1)) != 0


def test_parse_format_round_trip():
    e = Element({d(3): 2, d(-1): -1})
    assert parse_element(format_element(e, W), W) == e


def test_parse_words_keeps_order():
    words = parse_words("2*D(2)*D(1) - D(0)", W)
    assert words == [(2, (d(2), d(1))), (-1, (d(0),))]


def test_foreign_symbol_rejected():
    with pytest.raises(SpecError):
        parse_element("E(1)", W)


def test_axioms_pass_on_witt():
    rep = verify_axioms(W, 4)
    assert rep.passed and rep.triples_checked == 165


def test_corrupted_structure_constant_is_caught():
    rep = verify_axioms(_CorruptedWitt(), 2)
    assert not rep.passed and rep.failure == "jacobi"
    assert any(s == Sym(D, 0, 1, ()) for s in rep.witness) or any(s.idx == 2 for s in rep.witness)
