import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from myctheta import (
    DomainError,
    cubic_residual,
    lpu_formula,
    mycielski_theta_formula,
    solve_cubic_trig,
    verify_root_selection,
)
from myctheta.formula import evaluate_cubic, mycielski_cubic_coefficients, star_branch
from myctheta.certificates import degenerate_root_residual


def sympy_real_roots(a, b, c, d):
    x = sympy.symbols("x")
    poly = sympy.Poly(a * x**3 + b * x**2 + c * x + d, x)
    return sorted(float(r) for r in poly.all_roots() if r.is_real)


def test_cubic_symmetric_example():
    res = solve_cubic_trig(1, 0, -3, 0)
    # branch order follows the trig formula: largest, middle, smallest
    assert res.roots[0] == pytest.approx(math.sqrt(3), abs=1e-14)
    assert res.roots[1] == pytest.approx(0.0, abs=1e-14)
    assert res.roots[2] == pytest.approx(-math.sqrt(3), abs=1e-14)


def test_cubic_t2_factoring_oracle():
    # the t = 2 cubic: x^3 - x^2 - 5x + 5 = (x - 1)(x^2 - 5)
    x = sympy.symbols("x")
    quotient, remainder = sympy.div(x**3 - x**2 - 5 * x + 5, x - 1, x)
    assert remainder == 0 and sympy.expand(quotient) == x**2 - 5
    res = solve_cubic_trig(1, -1, -5, 5)
    expected = sympy_real_roots(1, -1, -5, 5)
    assert sorted(res.roots) == pytest.approx(expected, abs=1e-12)


def test_cubic_trig_identity_example():
    res = solve_cubic_trig(1, 0, -3, 1)
    assert res.roots[0] == pytest.approx(2 * math.cos(math.acos(-0.5) / 3), abs=1e-14)
    assert res.roots[0] == pytest.approx(2 * math.cos(2 * math.pi / 9), abs=1e-14)


def test_cubic_domain_errors():
    with pytest.raises(DomainError):
        solve_cubic_trig(0, 1, 2, 3)
    with pytest.raises(DomainError):
        solve_cubic_trig(1, 0, 3, 1)  # p > 0: one real root only
    with pytest.raises(DomainError):
        solve_cubic_trig(1, 0, -1, 5)  # p < 0 but |arg| > 1


@given(
    r1=st.floats(-10, 10),
    gap2=st.floats(0.01, 10),
    gap3=st.floats(0.01, 10),
)
def test_cubic_roots_from_constructed_factors(r1, gap2, gap3):
    roots = sorted([r1, r1 + gap2, r1 + gap2 + gap3])
    a = 1.0
    b = -(roots[0] + roots[1] + roots[2])
    c = roots[0] * roots[1] + roots[0] * roots[2] + roots[1] * roots[2]
    d = -roots[0] * roots[1] * roots[2]
    res = solve_cubic_trig(a, b, c, d)
    scale = max(abs(v) for v in (a, b, c, d))
    for root in res.roots:
        assert abs(evaluate_cubic(a, b, c, d, root)) <= 1e-9 * max(1.0, scale)
    assert sorted(res.roots) == pytest.approx(roots, abs=1e-6 * max(1.0, scale))


def test_formula_values():
    r2 = mycielski_theta_formula(2.0)
    assert r2.m == pytest.approx(math.sqrt(5), abs=1e-12)
    assert abs(r2.cubic_residual) < 1e-12
    r3 = mycielski_theta_formula(3.0)
    assert r3.m == pytest.approx(4 * math.cos(2 * math.pi / 9), abs=1e-12)
    with pytest.raises(DomainError):
        mycielski_theta_formula(1.5)


def test_formula_matches_cubic_solver():
    for t in (2.0, 2.5, 3.0, 5.0, 17.0):
        res = mycielski_theta_formula(t)
        cubic = solve_cubic_trig(*mycielski_cubic_coefficients(t))
        assert res.m == pytest.approx(cubic.roots[0], abs=1e-10)
        assert res.discarded == pytest.approx(cubic.roots[1:], abs=1e-10)


@given(st.floats(2.0, 50.0))
def test_formula_cubic_consistency(t):
    res = mycielski_theta_formula(t)
    assert abs(cubic_residual(t, res.m)) < 1e-8
    assert t < res.m < t + 1.0
    assert verify_root_selection(t)


def test_residual_at_m_equals_t():
    for t in (2.0, 2.5, 3.0, 7.0, 10.0):  # dyadic values evaluate exactly
        assert cubic_residual(t, t) == -1.0
    assert cubic_residual(2.0, 1.0) == 0.0
    assert cubic_residual(2.0, math.sqrt(5)) == pytest.approx(0.0, abs=1e-12)


def test_degenerate_root_factor():
    for t in (2.0, 4.0, 8.0, 16.0, 32.0):  # w = 1/t exact in binary
        assert degenerate_root_residual(t) == 0.0
    for t in (2.7, 3.0, 11.3):
        assert abs(degenerate_root_residual(t)) < 1e-15
    # t + 1 is not a root of the cubic itself: residual is 4 t (t - 1)
    for t in (2.0, 3.0, 5.0):
        assert cubic_residual(t, t + 1.0) == pytest.approx(4 * t * (t - 1), rel=1e-12)


def test_formula_monotone_scan():
    ts = [2.0 + 0.01 * i for i in range(int((50 - 2) / 0.01) + 1)]
    values = [mycielski_theta_formula(t).m for t in ts]
    assert all(b > a for a, b in zip(values, values[1:]))


def test_formula_cubic_consistency_thousand_samples():
    import random

    rng = random.Random(61)
    for _ in range(1000):
        t = rng.uniform(2.0, 50.0)
        res = mycielski_theta_formula(t)
        assert abs(cubic_residual(t, res.m)) < 1e-8
        assert res.m < t + 1.0


def test_discarded_branches_below_one():
    for t in (2.0, 3.0, 10.0, 100.0):
        res = mycielski_theta_formula(t)
        assert res.discarded[0] <= 1.0 + 1e-12
        assert res.discarded[1] <= 1.0 + 1e-12
        assert star_branch(t, 0) == res.m


def test_lpu_formula():
    assert lpu_formula(Fraction(5, 2)) == Fraction(29, 10)
    assert lpu_formula(1) == 2
    assert lpu_formula(Fraction(1)) == 2
    for n in (2, 3, 7):
        assert lpu_formula(n) == Fraction(n) + Fraction(1, n)
    assert lpu_formula(2.0) == pytest.approx(2.5)
    with pytest.raises(DomainError):
        lpu_formula(0)
    with pytest.raises(DomainError):
        lpu_formula(Fraction(-1, 2))
