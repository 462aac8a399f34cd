from fractions import Fraction

from hypothesis import strategies as st

from echelons.echelon import EchelonPresentation, ScopedGenerator
from echelons.orders import MonomialOrder
from echelons.series import Series

coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def exponents(n, maxdeg=4):
    return st.lists(st.integers(0, maxdeg), min_size=n, max_size=n).map(tuple).filter(lambda e: sum(e) <= maxdeg)


@st.composite
def series(draw, n=None, prec=None, maxdeg=4, max_terms=5):
    n = draw(st.integers(1, 3)) if n is None else n
    prec = draw(st.integers(0, 8)) if prec is None else prec
    terms = draw(st.dictionaries(exponents(n, maxdeg), coeffs, max_size=max_terms))
    return Series(n, prec, terms)


@st.composite
def orders(draw, n):
    perm = draw(st.permutations(range(n)))
    return MonomialOrder(draw(st.sampled_from(["lex", "grlex"])), tuple(perm))


@st.composite
def echelons(draw, n=None, prec=8, kinds=("lex", "grlex")):
    n = draw(st.integers(1, 3)) if n is None else n
    k = draw(st.integers(1, 4))
    gens = []
    for _ in range(k):
        s = draw(series(n=n, prec=prec, maxdeg=3, max_terms=4).filter(bool))
        gens.append(ScopedGenerator(s, draw(st.integers(0, n))))
    perm = draw(st.permutations(range(n)))
    return EchelonPresentation(n, tuple(gens), MonomialOrder(draw(st.sampled_from(kinds)), tuple(perm)))
