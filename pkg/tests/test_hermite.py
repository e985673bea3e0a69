from fractions import Fraction

import pytest

from lacunae.arith import BivarPoly, LambdaSeries, ZERO, factorial, series_mul
from lacunae.hermite import classical_hermite, hermite_coeff_table, hermite_egf, hermite_poly, random_coeff_table
from lacunae.lacunary import shift


X = BivarPoly.x()
Y = BivarPoly.y()


def test_hermite_poly_small():
    assert hermite_poly(0) == 1
    assert hermite_poly(1) == X
    assert hermite_poly(2) == X ** 2 + Y * 2
    assert hermite_poly(3) == X ** 3 + X * Y * 6
    assert hermite_poly(4) == X ** 4 + X ** 2 * Y * 12 + Y ** 2 * 12


def test_classical_hermite():
    assert classical_hermite(3) == X ** 3 * 8 - X * 12
    assert classical_hermite(2) == X ** 2 * 4 - 2


def test_recurrence():
    # H_{n+1} = x H_n + 2 n y H_{n-1}
    for n in range(1, 41):
        assert hermite_poly(n + 1) == X * hermite_poly(n) + Y * hermite_poly(n - 1) * (2 * n)


def test_degree_and_y_zero():
    for n in range(25):
        p = hermite_poly(n)
        assert p.degree_x() == n
        assert p.substitute(y=ZERO) == X ** n


def test_hermite_egf():
    egf = hermite_egf(8)
    assert egf.coefficient(0) == 1
    assert egf.egf_coefficient(2) == X ** 2 + Y * 2
    exp_x = LambdaSeries([X ** k * Fraction(1, factorial(k)) for k in range(9)], 8)
    exp_y = LambdaSeries([Y ** (k // 2) * Fraction(1, factorial(k // 2)) if k % 2 == 0 else 0 for k in range(9)], 8)
    assert series_mul(exp_x, exp_y) == egf


def test_higher_order_family():
    # EGF exp(λx + λ³y)
    assert hermite_poly(3, m=3) == X ** 3 + Y * 6
    assert hermite_poly(6, m=3) == X ** 6 + X ** 3 * Y * 120 + Y ** 2 * 360
    with pytest.raises(ValueError):
        hermite_poly(2, m=1)
    with pytest.raises(ValueError):
        hermite_poly(-1)


def test_hermite_poly_evaluate():
    # H_2(1, 1/2) = 1 + 1
    assert hermite_poly(2).evaluate(1, Fraction(1, 2)) == 2
    assert hermite_poly(3).evaluate(2, -1) == -4


def test_coeff_table_entries():
    table = hermite_coeff_table()
    assert table(3, 1) == ZERO
    assert table(0, 2) == Y * 2
    assert table(2, 4) == Y ** 2 * 180
    assert not table.supports(5)
    assert table.even_support


def test_coeff_table_reconstructs_egf():
    table = hermite_coeff_table()
    for order in (0, 1, 7, 20):
        assert table.egf(order) == hermite_egf(order)
    assert hermite_coeff_table(m=3).egf(9) == hermite_egf(9, m=3)


def test_random_table_is_dense_and_seeded():
    a = random_coeff_table(7)
    b = random_coeff_table(7)
    assert not a.even_support
    assert all(not a(r, m).is_zero() for r in range(4) for m in range(4))
    assert a(2, 3) == b(2, 3)
    assert a(2, 3) != random_coeff_table(8)(2, 3) or a(3, 2) != random_coeff_table(8)(3, 2)


def test_shift_of_egf_moves_the_index():
    s = shift(hermite_egf(7), 3)
    for n in range(5):
        assert s.egf_coefficient(n) == hermite_poly(n + 3)
