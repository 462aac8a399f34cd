import pytest
from hypothesis import given
from hypothesis import strategies as st

from echelons.orders import Cmp, MonomialOrder, Term, compare, initial_term, satisfies_sharp
from echelons.series import Series
from strategies import exponents, orders

LEX = MonomialOrder.lex(3)


def test_lex_examples():
    assert compare(LEX, (0, 1, 1), (1, 0, 0)) is Cmp.LESS  # yz < x
    assert compare(LEX, (1, 0, 1), (1, 0, 2)) is Cmp.LESS
    assert compare(LEX, (2, 1, 0), (2, 1, 0)) is Cmp.EQUAL


def test_grlex_degree_first():
    o = MonomialOrder.grlex(3)
    assert compare(o, (1, 0, 0), (0, 1, 1)) is Cmp.LESS
    assert compare(o, (0, 1, 0), (1, 0, 0)) is Cmp.LESS


def test_precedence_permutation():
    o = MonomialOrder("lex", (2, 1, 0))  # z most significant
    assert compare(o, (5, 0, 0), (0, 0, 1)) is Cmp.LESS


def test_sharp_flag():
    assert satisfies_sharp(MonomialOrder.grlex(2))
    assert not satisfies_sharp(MonomialOrder.lex(2))


def test_initial_terms_of_example_generators():
    h = Series(3, 5, {(0, 1, 1): 1, (1, 0, 0): -1})
    assert initial_term(h, LEX) == Term(1, (0, 1, 1))
    g = Series(3, 5, {(1, 0, 1): 1, (1, 0, 2): 1})
    assert initial_term(g, LEX).exp == (1, 0, 1)
    assert initial_term(Series(3, 5), LEX) is None


def test_length_mismatch():
    with pytest.raises(ValueError):
        compare(LEX, (1, 0), (1, 0, 0))


def test_bad_order():
    with pytest.raises(ValueError):
        MonomialOrder("revlex", (0, 1))
    with pytest.raises(ValueError):
        MonomialOrder("lex", (0, 0))


def test_json_round_trip():
    o = MonomialOrder("grlex", (1, 0, 2))
    names = ["x", "y", "z"]
    assert o.to_json(names) == {"kind": "grlex", "precedence": ["y", "x", "z"]}
    assert MonomialOrder.from_json(o.to_json(names), names) == o


@given(st.integers(1, 3).flatmap(lambda n: st.tuples(orders(n), exponents(n), exponents(n), exponents(n))))
def test_total_and_compatible(t):
    o, a, b, c = t
    ab = compare(o, a, b)
    assert (ab is Cmp.EQUAL) == (a == b)
    assert compare(o, b, a) == Cmp(-ab)
    shift = lambda e: tuple(u + v for u, v in zip(e, c))
    assert compare(o, shift(a), shift(b)) == ab
    assert compare(o, (0,) * len(a), a) in (Cmp.LESS, Cmp.EQUAL)
    if compare(o, a, b) is Cmp.LESS and compare(o, b, c) is Cmp.LESS:
        assert compare(o, a, c) is Cmp.LESS
