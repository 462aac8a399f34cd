from fractions import Fraction
from math import factorial

import pytest

from echelons import gabrielov as gb
from echelons.orders import initial_term
from echelons.series import Series

F = Fraction


def rel(k, prec):
    _, r = gb.bracket(gb.g_closed(k, prec))
    return [c for _, c in r]


def test_generators():
    ctx = gb.GabrielovContext(8)
    assert initial_term(ctx.f, gb.ORDER).exp == (0, 0, 0)
    assert initial_term(ctx.g, gb.ORDER).exp == (1, 0, 1)
    assert initial_term(ctx.h, gb.ORDER).exp == (0, 1, 1)
    assert [g.scope for g in ctx.generators()] == [2, 2, 3]
    assert ctx.g.coeff((1, 0, 7)) == F(1, factorial(7))


def test_q_examples():
    assert gb.q(2, 2) == F(1, 12)
    assert gb.q(5, 5) == F(1, 25401600)
    assert all(gb.q(i, 1) == F(1, factorial(i)) for i in range(1, 10))
    with pytest.raises(ValueError):
        gb.q(2, 3)


def test_closed_form_brackets():
    assert rel(2, 9) == [1, F(1, 2), F(3, 20), F(1, 30), F(1, 168), F(1, 1120)]
    assert rel(4, 11)[:4] == [1, F(1, 2), F(5, 36), F(1, 36)]
    assert gb.g_closed(1, 9) == gb.GabrielovContext(9).g


def test_relative_q_is_the_direct_ratio():
    for k in range(1, 8):
        for i in range(k, 16):
            assert gb.relative_q(i, k) == gb.q(i, k) / gb.q(k, k)


def test_relative_bound():
    for k in range(1, 11):
        vals = [gb.relative_q(i, k) for i in range(k, 21)]
        assert vals[0] == 1
        assert all(v < 1 for v in vals[1:])
        assert all(u > v for u, v in zip(vals, vals[1:]))


def test_algorithmic_matches_closed():
    for k in range(2, 7):
        assert gb.g_algorithmic(k, 14) == gb.g_closed(k, 14)
    assert gb.g_algorithmic(2, 9) == gb.g_closed(2, 9)
    g6 = gb.g_algorithmic(6, 14)
    t = initial_term(g6, gb.ORDER)
    assert t.exp == (6, 0, 6) and t.coeff == F(1, 10059033600)


def test_algorithmic_precision_guard():
    with pytest.raises(ValueError):
        gb.g_algorithmic(4, 7)


def test_g5_reference_value_differs():
    assert gb.relative_q(8, 5) == F(7, 264)
    assert gb.relative_q(8, 5) != gb.REFERENCE_G5_X5Z8


def test_abc_initial_steps():
    a3, b3, _ = gb.abc(3, 10)
    assert dict(a3.items()) == {(2, 1, 0): -1}
    assert dict(b3.items()) == {(0, 2, 0): 1, (1, 1, 0): F(-1, 2), (2, 0, 0): F(1, 12)}


def test_abc_identity_and_homogeneity():
    prec = 20
    fam = gb.abc_family(8, prec)
    for k in range(2, 9):
        a, b, c = fam[k - 1]
        assert gb.presentation_value(a, b, c, prec).agrees_with(gb.g_closed(k, prec))
        assert {sum(e) for e in a.exponents()} == {k}
        assert {sum(e) for e in b.exponents()} == {k - 1}
        assert a.uses_only_first(2) and b.uses_only_first(2)


def test_ray_coefficients_unit():
    fam = gb.abc_family(12, 24)
    for k in range(2, 13):
        a, b, c = fam[k - 1]
        assert abs(a.coeff((2, k - 2, 0))) == 1
        assert abs(b.coeff((0, k - 1, 0))) == 1
        assert abs(c.coeff((1, k - 2, 0))) == 1


def test_ratio_check():
    assert gb.ratio_check(1) == F(1, 12)
    assert gb.ratio_check(4) == F(1, 252)
    assert gb.ratio_check(20) == F(1, 4 * 41 * 39)
    for k in range(1, 21):
        assert gb.ratio_check(k) == F(1, 4 * (2 * k + 1) * (2 * k - 1))


def test_e_combination():
    e = gb.e_combination(8, 16)
    assert all(e.coeff((k, 0, k)) == 1 for k in range(2, 9))
    assert e.coeff((5, 0, 7)) == F(3, 22)
    assert max(abs(c) for _, c in e.items()) == 1
    with_g = gb.e_combination(8, 16, start=1)
    assert (with_g - e) == gb.GabrielovContext(16).g.truncate(16)


def test_e_original():
    e = gb.e_original(8)
    assert e.coeff((1, 0, 1)) == 1
    assert e.coeff((2, 0, 3)) == F(1, 12)
    assert all(sum(x) <= 8 for x in e.exponents())


def test_divergence_report():
    rep = gb.divergence_report(10, 24)
    rows = rep["rows"]
    assert rows[0]["r_k"] == 12 and rows[1]["r_k"] == 720
    assert rows[0]["ratio"] == 60
    for row in rows:
        assert abs(row["a_coeff"]) == row["r_k"]
        if "ratio" in row:
            assert row["ratio"] == row["ratio_formula"]
            if row["k"] >= 8:
                assert row["ratio"] > 1000
    assert all(rep["verdict"][k] for k in ("ratios_match_formula", "rays_equal_r_k", "super_geometric_growth"))
    with pytest.raises(ValueError):
        gb.divergence_report(2, 10)


def test_format_bracket():
    assert gb.format_bracket(gb.g_closed(2, 9), terms=3) == "g_2 = 1/12 * [x^2z^2 + 1/2*x^2z^3 + 3/20*x^2z^4 + ...]"
    with pytest.raises(ValueError):
        gb.format_bracket(Series(3, 4))
