import random
from fractions import Fraction

import pytest

from bubres.exact import GRational


def test_construction_reduces():
    g = GRational(2, 4, 6)
    assert (g.re_num, g.im_num, g.den) == (1, 2, 3)
    g = GRational(1, -1, -2)
    assert (g.re_num, g.im_num, g.den) == (-1, 1, 2)


def test_zero_denominator_rejected():
    with pytest.raises(ZeroDivisionError):
        GRational(1, 1, 0)


def test_from_fractions_roundtrip():
    g = GRational.from_fractions(Fraction(3, 4), Fraction(-5, 6))
    assert g.real == Fraction(3, 4)
    assert g.imag == Fraction(-5, 6)


def _random_gr(rng):
    return GRational(rng.randrange(-30, 31), rng.randrange(-30, 31), rng.randrange(1, 12))


def test_field_axioms_random():
    rng = random.Random(20240817)
    for _ in range(300):
        a, b, c = _random_gr(rng), _random_gr(rng), _random_gr(rng)
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c
        assert (a * b) * c == a * (b * c)
        if not b.is_zero():
            assert (a / b) * b == a
        assert a - a == GRational(0, 0, 1)


def test_conjugate_and_modulus():
    rng = random.Random(7)
    for _ in range(50):
        a = _random_gr(rng)
        m = a * a.conjugate()
        assert m.is_real()
        assert m.real >= 0


def test_integer_powers():
    i = GRational(0, 1, 1)
    assert i ** 2 == GRational(-1, 0, 1)
    assert i ** 5 == i
    assert (GRational(2, 1, 3) ** 0) == GRational(1, 0, 1)
    with pytest.raises(ValueError):
        i ** -1


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        GRational(1, 0, 1) / GRational(0, 0, 1)


def test_to_complex_rounds_once():
    g = GRational(1, -1, 3)
    z = g.to_complex()
    assert z == complex(1 / 3, -1 / 3)


def test_to_complex_saturates_on_overflow():
    g = GRational(10 ** 400, -(10 ** 400), 1)
    z = g.to_complex()
    assert z.real == float("inf") and z.imag == float("-inf")
