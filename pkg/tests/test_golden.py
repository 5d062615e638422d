import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from p3hardcore.golden import PHI, CycloPoint, GoldenNumber, fibonacci

small = st.fractions(min_value=-50, max_value=50, max_denominator=20)
golden = st.builds(GoldenNumber, small, small)
ints = st.integers(-20, 20)
cyclo = st.builds(CycloPoint, ints, ints, ints, ints)


def test_phi_squared():
    assert PHI * PHI == PHI + 1
    assert float(PHI) == pytest.approx((1 + math.sqrt(5)) / 2)


def test_phi_powers_are_fibonacci():
    for n in range(1, 20):
        assert GoldenNumber.phi_power(n) == GoldenNumber(fibonacci(n - 1), fibonacci(n))
    assert GoldenNumber.phi_power(-4) == GoldenNumber(5, -3)


def test_sqrt5_form():
    x = GoldenNumber(41, -25)
    assert x.sqrt5_form() == (Fraction(57, 2), Fraction(-25, 2))
    assert GoldenNumber.from_sqrt5(Fraction(57, 2), Fraction(-25, 2)) == x


@given(golden, golden, golden)
def test_field_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert (a - b) + b == a


@given(golden)
def test_inverse(a):
    if a == 0:
        with pytest.raises(ZeroDivisionError):
            a.inverse()
    else:
        assert a * a.inverse() == 1


@given(golden, golden)
def test_order_matches_float(a, b):
    if float(a) - float(b) > 1e-9:
        assert a > b
    if a == b:
        assert not a < b


@given(golden)
def test_norm_is_product_with_conjugate(a):
    assert a * a.conjugate() == GoldenNumber(a.norm())


@given(cyclo, cyclo)
def test_cyclo_multiplication_matches_complex(a, b):
    assert (a * b).to_complex() == pytest.approx(a.to_complex() * b.to_complex(), abs=1e-6)


@given(cyclo)
def test_mul_phi_scales(a):
    assert a.mul_phi().to_complex() == pytest.approx(a.to_complex() * float(PHI), abs=1e-6)
    assert a.mul_golden(GoldenNumber.phi_power(-4)).mul_golden(GoldenNumber.phi_power(4)) == a


def test_units_are_tenth_roots():
    for d in range(10):
        z = CycloPoint.unit(d).to_complex()
        assert z == pytest.approx(complex(math.cos(math.pi * d / 5), math.sin(math.pi * d / 5)))
        assert float(CycloPoint.unit(d).abs2()) == pytest.approx(1.0)
    assert CycloPoint.zeta(5) == CycloPoint.zeta(0)


@given(cyclo)
def test_hash_consistent(a):
    b = CycloPoint(*tuple(a))
    assert a == b and hash(a) == hash(b)
