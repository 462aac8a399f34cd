from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from echelons import gabrielov as gb
from echelons.acceptance import random_member_candidate
from echelons.echelon import EchelonPresentation, ScopedGenerator
from echelons.oracle import PrecisionError, artifact_threshold, oracle_membership, oracle_relation_order
from echelons.orders import MonomialOrder
from echelons.series import Series, add, mul
from strategies import echelons, series


def check_solution(f, p, d, cert):
    total = Series(p.nvars, d)
    for a, g in zip(cert.solution, p.generators):
        assert a.uses_only_first(g.scope)
        total = add(total, mul(a.with_prec(d), g.series).truncate(d))
    assert total.truncate(d) == f.truncate(d)


def test_membership_examples():
    p = gb.gabrielov_echelon(8)
    g2 = gb.g_closed(2, 8)
    cert = oracle_membership(g2, p, 6)
    assert cert.feasible
    check_solution(g2, p, 6, cert)
    assert not oracle_membership(Series.monomial(3, 8, (0, 0, 1)), p, 4).feasible
    zero = oracle_membership(Series(3, 8), p, 5)
    assert zero.feasible and all(a.is_zero() for a in zero.solution)


def test_precision_error():
    p = gb.gabrielov_echelon(4)
    with pytest.raises(PrecisionError):
        oracle_membership(Series(3, 6), p, 5)
    with pytest.raises(PrecisionError):
        oracle_relation_order(p, 5)


def test_relation_examples():
    one = EchelonPresentation(2, (ScopedGenerator(Series(2, 5, {(0, 0): 1}), 2),), MonomialOrder.grlex(2))
    rep = oracle_relation_order(one, 4)
    assert rep.min_order is None and rep.kernel_dim == 0
    x = Series(2, 4, {(1, 0): 1})
    dup = EchelonPresentation(2, (ScopedGenerator(x, 2), ScopedGenerator(x, 2)), MonomialOrder.grlex(2))
    rep = oracle_relation_order(dup, 2)
    assert rep.min_order == 0 and rep.census[0] == 1


def test_gabrielov_relation_census():
    # truncation lets h absorb any high-order element of the echelon, so a
    # relation of order 2 survives modulo degree > 8
    rep = oracle_relation_order(gb.gabrielov_echelon(8), 8)
    assert rep.threshold == artifact_threshold(gb.gabrielov_echelon(8), 8) == 7
    assert rep.min_order == 2
    assert rep.census == {2: 1, 3: 4, 4: 7, 5: 10, 6: 13, 7: 16, 8: 54}
    assert rep.kernel_dim == 105


def test_bounded_multipliers_empty_kernel():
    for e in range(1, 4):
        assert oracle_relation_order(gb.gabrielov_echelon(e + 3), e + 3, multiplier_degree=e).kernel_dim == 0


@settings(max_examples=40, deadline=None)
@given(echelons(prec=5), st.data())
def test_solutions_verify_and_monotone(p, data):
    import random

    rng = random.Random(data.draw(st.integers(0, 10**6)))
    f = random_member_candidate(rng, p, 5, 5)
    feas = [oracle_membership(f, p, d) for d in range(6)]
    for d, cert in enumerate(feas):
        if cert.feasible:
            check_solution(f, p, d, cert)
            assert all(c.feasible for c in feas[:d])
