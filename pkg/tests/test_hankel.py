import cmath
import math
import random
from fractions import Fraction

import pytest

from bubres import hankel as hk
from bubres.exact import GRational


def test_pl_low_orders_exact():
    assert [c.to_complex() for c in hk.pl_coefficients(0).coefficients] == [-1j]
    assert [c.to_complex() for c in hk.pl_coefficients(1).coefficients] == [-1j, -1]
    assert [c.to_complex() for c in hk.pl_coefficients(2).coefficients] == [-3j, -3, 1j]


def test_pl_gaussian_integers_and_unit_leading():
    for l in range(0, 25):
        poly = hk.pl_coefficients(l)
        assert len(poly.coefficients) == l + 1
        assert all(c.den == 1 for c in poly.coefficients)
        lead = poly.coefficients[-1]
        assert abs(lead.re_num) + abs(lead.im_num) == 1   # i^(-l-1)


def test_hankel_l0_closed_form():
    got = hk.spherical_hankel(0, 1.0)
    want = math.sin(1.0) - 1j * math.cos(1.0)
    assert abs(got - want) < 1e-15


def test_hankel_l1_at_i():
    got = hk.spherical_hankel(1, 1j)
    assert abs(got - 2j / math.e) < 1e-15


def test_hankel_upward_recurrence_consistency():
    z = 3 + 0.5j
    h4 = hk.spherical_hankel(4, z)
    h5 = hk.spherical_hankel(5, z)
    h6 = hk.spherical_hankel(6, z)
    assert abs((2 * 5 + 1) / z * h5 - h4 - h6) < 1e-12 * abs(h6)


def test_hankel_pole_at_origin():
    with pytest.raises(hk.PoleError):
        hk.spherical_hankel(2, 0)


def test_derivative_zero_at_p1_root():
    # dh_0 = -h_1 and p_1(-i) = 0
    assert abs(hk.spherical_hankel_derivative(0, -1j)) < 1e-15


def test_derivative_finite_difference():
    z = 1 - 1j
    h = 1e-6
    fd = (hk.spherical_hankel(1, z + h) - hk.spherical_hankel(1, z - h)) / (2 * h)
    assert abs(hk.spherical_hankel_derivative(1, z) - fd) < 1e-7


def test_derivative_two_identity_agreement():
    z = 2.0
    a = hk.spherical_hankel_derivative(3, z)
    b = hk.spherical_hankel(2, z) - 4 / z * hk.spherical_hankel(3, z)
    assert abs(a - b) < 1e-12 * abs(a)


def test_second_derivative_matches_ode():
    for l, z in [(0, 1.3 - 0.4j), (3, 2 + 1j), (6, -1 - 2j)]:
        lhs = hk.spherical_hankel_second_derivative(l, z)
        h = hk.spherical_hankel(l, z)
        dh = hk.spherical_hankel_derivative(l, z)
        rhs = -2 / z * dh - (1 - l * (l + 1) / (z * z)) * h
        assert abs(lhs - rhs) < 1e-12 * max(abs(lhs), abs(h))


def test_ratio_G_l0():
    assert abs(hk.hankel_ratio_G(0, 2.0) - (-1 + 2j)) < 1e-14


def test_ratio_G_small_z_limit():
    assert abs(hk.hankel_ratio_G(7, 1e-8) - (-8)) < 1e-6


def test_ratio_G_two_method_large_order():
    z = GRational.from_fractions(3, Fraction(1, 2))
    exact = hk.g_ratio_exact(40, z).to_complex()
    rec = hk.hankel_ratio_G(40, 3 + 0.5j)
    assert abs(exact - rec) < 1e-10 * abs(exact)


def test_ratio_G_rational_vs_recurrence_grid():
    # fixed sample grid away from h_l zeros (which sit deep in the fourth
    # quadrant): the two evaluation routes must agree
    grid = [0.7, 2.5, 1.0 + 1.0j, 4.0 + 0.3j, -1.5 + 2.0j, 6.0 - 0.2j]
    for l in (1, 4, 9, 17, 25, 30):
        for z in grid:
            a = hk.hankel_ratio_G(l, z)
            b = hk._g_ratio_recurrence(l, z)
            assert abs(a - b) <= 1e-10 * abs(a), (l, z)


def test_ratio_G_pole_guard():
    with pytest.raises(hk.PoleError):
        hk.hankel_ratio_G(1, -1j)    # p_1(-i) = 0


def test_ratio_G_real_on_imaginary_axis():
    for l in (0, 2, 5, 11):
        for y in (0.3, 1.7, -2.4, 8.0):
            g = hk.hankel_ratio_G(l, 1j * y)
            assert abs(g.imag) < 1e-12 * max(1.0, abs(g))


def test_ratio_G_prime_matches_finite_difference():
    z = 1.4 - 0.6j
    h = 1e-6
    for l in (0, 3, 8):
        fd = (hk.hankel_ratio_G(l, z + h) - hk.hankel_ratio_G(l, z - h)) / (2 * h)
        assert abs(hk.hankel_ratio_G_prime(l, z) - fd) < 1e-7 * max(1, abs(fd))


def test_g_taylor_l0_series_terminates():
    coeffs = hk.g_taylor_coefficients(0, 6)
    assert coeffs[0].to_complex() == -1
    assert coeffs[1].to_complex() == 1j
    assert all(c.is_zero() for c in coeffs[2:])


def test_g_taylor_l1():
    coeffs = hk.g_taylor_coefficients(1, 3)
    assert coeffs[1].is_zero()
    assert coeffs[3] == GRational(0, 1, 1)


def test_g_taylor_l3_order7():
    coeffs = hk.g_taylor_coefficients(3, 7)
    assert coeffs[7] == GRational(0, 1, 225)


def test_g_taylor_structure_through_l10():
    for l in range(1, 11):
        coeffs = hk.g_taylor_coefficients(l, 2 * l + 1)
        for k in range(l):
            assert coeffs[2 * k + 1].is_zero(), (l, k)
        for j in range(0, 2 * l + 2, 2):
            assert coeffs[j].is_real(), (l, j)
        expected = (Fraction(2 ** l * math.factorial(l), math.factorial(2 * l))) ** 2
        assert coeffs[2 * l + 1].real == 0
        assert coeffs[2 * l + 1].imag == expected


def test_g_taylor_oddness_oracle():
    # independent check of the first odd coefficient via G(z) - G(-z)
    l = 1
    z = 0.01
    lhs = hk.hankel_ratio_G(l, z) - hk.hankel_ratio_G(l, -z)
    series = 2j * z ** 3 / (1 + z * z)
    assert abs(lhs - series) < 1e-12


def test_wronskian_exact_zero():
    assert hk.wronskian_residual(1, GRational(1, 1, 1)).is_zero()
    rng = random.Random(99)
    for l in range(0, 9):
        for _ in range(5):
            z = GRational(rng.randrange(-40, 41), rng.randrange(-40, 41), rng.randrange(1, 7))
            assert hk.wronskian_residual(l, z).is_zero(), (l, z)


def test_wronskian_float_mode_small():
    z = 0.3 - 2j
    r = hk.wronskian_residual(4, z)
    mags = [abs(c.to_complex()) for c in hk.pl_coefficients(4).coefficients]
    scale = sum(m * abs(z) ** n for n, m in enumerate(mags)) ** 2
    assert abs(r) < 1e-10 * scale


def test_wronskian_l0_float_exactly_zero():
    assert hk.wronskian_residual(0, 1.234 - 0.77j) == 0


def test_q_ratio_closed_form_l0():
    omega, r, c = 10.0, 2.0, 10.0
    got = hk.q_ratio(0, omega, r, c)
    h0 = hk.spherical_hankel(0, omega * r / c)
    dh0 = hk.spherical_hankel_derivative(0, omega / c)
    want = h0 * cmath.exp(-1j * omega * (r - 1) / c) / ((omega / c) * dh0)
    assert abs(got - want) < 1e-12 * abs(want)


def test_q_ratio_large_frequency_asymptote():
    # |Q| decays like c/(omega r); the limiting constant of Q * (omega r/c)
    # is -i = a_l^l / a_{l+1}^{l+1}, the unit-modulus leading-coefficient
    # ratio of the Hankel polynomials
    omega, r, c = 1e4, 1.5, 1.0
    q = hk.q_ratio(2, omega, r, c)
    assert abs(abs(q) * omega * r / c - 1) < 0.01
    assert abs(q * omega * r / c - (-1j)) < 0.01


def test_q_ratio_pole_at_rigid_resonance():
    with pytest.raises(hk.PoleError):
        hk.q_ratio(0, -1j * 10.0, 1.5, 10.0)


def test_j1_y1_linearly_independent_at_bubble_wall():
    # Wronskian j_1 y_1' - j_1' y_1 = 1/r^2, so the 2x2 boundary system at
    # r = 1 is nonsingular and pins the l=1 exclusion
    h = 1e-6
    j1p = (hk.spherical_j1(1 + h) - hk.spherical_j1(1 - h)) / (2 * h)
    y1p = (hk.spherical_y1(1 + h) - hk.spherical_y1(1 - h)) / (2 * h)
    det = hk.spherical_j1(1.0) * y1p - j1p * hk.spherical_y1(1.0)
    assert det == pytest.approx(1.0, abs=1e-9)
