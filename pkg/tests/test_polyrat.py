import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from catcover.errors import InputError
from catcover.polyrat import (
    Poly,
    RationalFunction,
    bareiss_determinant,
    linear_factor_split,
    poly_gcd,
    solve_linear,
)

small_ints = st.integers(min_value=-6, max_value=6)
int_polys = st.lists(small_ints, min_size=0, max_size=6).map(Poly)


def test_canonical_form_strips_trailing_zeros():
    assert Poly([1, 2, 0, 0]).coeffs == (1, 2)
    assert Poly([0, 0]).is_zero()
    assert Poly().degree == -1
    assert Poly([5]).degree == 0


def test_basic_arithmetic():
    p = Poly([1, 1])
    q = Poly([1, -1])
    assert p * q == Poly([1, 0, -1])
    assert p + q == Poly([2])
    assert p - p == Poly()
    assert p**3 == Poly([1, 3, 3, 1])
    assert 2 * p == Poly([2, 2])


@given(int_polys, int_polys)
@settings(max_examples=80)
def test_divmod_property(a, b):
    if b.is_zero():
        with pytest.raises(ZeroDivisionError):
            divmod(a, b)
        return
    q, r = divmod(a, b)
    assert a == q * b + r
    assert r.degree < b.degree


@given(int_polys, int_polys, int_polys)
@settings(max_examples=60)
def test_gcd_divides_both_and_sees_common_factor(a, b, c):
    g = poly_gcd(a * c, b * c)
    if not g.is_zero():
        assert (a * c % g).is_zero()
        assert (b * c % g).is_zero()
    if not c.is_zero() and not (a.is_zero() and b.is_zero()):
        assert (g % c.monic()).is_zero()


def test_exact_div_raises_on_remainder():
    with pytest.raises(ArithmeticError):
        Poly([1, 1]).exact_div(Poly([1, 1, 1]))


def test_evaluate_and_calculus():
    p = Poly([1, -2, 3])
    assert p.evaluate(2) == 1 - 4 + 12
    assert p.derivative() == Poly([-2, 6])
    assert p.integral() == Poly([0, 1, -1, 1])
    assert p.integral().derivative() == p


def test_rational_function_reduces_like_the_gamma_example():
    f = RationalFunction(Poly([2, 2]), Poly([1, 0, -1]))  # (2+2t)/(1-t^2)
    g = RationalFunction(Poly([2]), Poly([1, -1]))  # 2/(1-t)
    assert f == g
    assert f.evaluate(-1) == 1


def test_rational_function_canonical_monic_denominator():
    f = RationalFunction(Poly([4]), Poly([2, -2]))
    assert f.den.leading() == 1
    assert f.evaluate(0) == 2


def test_try_evaluate_pole():
    f = RationalFunction(Poly([1]), Poly([1, 1]))  # 1/(1+t)
    assert f.try_evaluate(-1) is None
    assert f.try_evaluate(0) == 1
    with pytest.raises(ZeroDivisionError):
        f.evaluate(-1)


def test_series_coefficients_geometric():
    f = RationalFunction(Poly([1]), Poly([1, -2]))
    assert f.series_coefficients(6) == [2**n for n in range(7)]
    g = RationalFunction(Poly([2]), Poly([1, -2, 1]))
    assert g.series_coefficients(4) == [2, 4, 6, 8, 10]


def test_series_requires_nonzero_constant():
    with pytest.raises(InputError):
        RationalFunction(Poly([1]), Poly([0, 1])).series_coefficients(3)


@given(int_polys, int_polys, int_polys, int_polys)
@settings(max_examples=50)
def test_bareiss_matches_cofactor_2x2(a, b, c, d):
    det = bareiss_determinant([[a, b], [c, d]])
    assert det == a * d - b * c


def test_bareiss_matches_gaussian_elimination_oracle():
    rng = random.Random(5)
    for _ in range(25):
        n = rng.randint(1, 4)
        m = [[Poly([rng.randint(-3, 3), rng.randint(-3, 3)]) for _ in range(n)] for _ in range(n)]
        det = bareiss_determinant(m)
        point = Fraction(rng.randint(2, 9), rng.randint(10, 13))
        values = [[entry.evaluate(point) for entry in row] for row in m]
        expected = _fraction_det(values)
        assert det.evaluate(point) == expected


def _fraction_det(values):
    n = len(values)
    a = [row[:] for row in values]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        det *= a[col][col]
        inv = Fraction(1) / a[col][col]
        for r in range(col + 1, n):
            factor = a[r][col] * inv
            a[r] = [v - factor * w for v, w in zip(a[r], a[col])]
    return det


def test_bareiss_singular_matrix():
    row = [Poly([1, 1]), Poly([2, 2])]
    assert bareiss_determinant([row, [p.scale(3) for p in row]]).is_zero()


def test_solve_linear_roundtrip():
    rng = random.Random(9)
    for _ in range(25):
        n = rng.randint(1, 5)
        while True:
            matrix = [[Fraction(rng.randint(-5, 5)) for _ in range(n)] for _ in range(n)]
            if _fraction_det(matrix) != 0:
                break
        x = [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(n)]
        rhs = [sum(matrix[i][j] * x[j] for j in range(n)) for i in range(n)]
        assert solve_linear(matrix, rhs) == x


def test_solve_linear_singular_raises():
    with pytest.raises(InputError):
        solve_linear([[1, 1], [2, 2]], [1, 2])


def test_linear_factor_split_full():
    p = Poly([1, -2]) * Poly([1, 1]) * Poly([1, 1])  # (1-2z)(1+z)^2
    factors, rest = linear_factor_split(p)
    assert factors == [(Fraction(-1), 2), (Fraction(2), 1)]
    assert rest == Poly.one()


def test_linear_factor_split_partial():
    fib = Poly([1, -1, -1])  # irrational reciprocal roots
    factors, rest = linear_factor_split(fib)
    assert factors == []
    assert rest == fib
    mixed = fib * Poly([1, -3])
    factors, rest = linear_factor_split(mixed)
    assert factors == [(Fraction(3), 1)]
    assert rest == fib


def test_linear_factor_split_fractional_root():
    p = Poly([1, Fraction(-1, 2)])  # (1 - z/2)
    factors, rest = linear_factor_split(p)
    assert factors == [(Fraction(1, 2), 1)]
    assert rest == Poly.one()


def test_format():
    assert Poly([1, -2]).format() == "1 - 2*z"
    assert Poly([0, 0, 3]).format("t") == "3*t^2"
    assert str(RationalFunction(Poly([2]), Poly([1, -1]))) == "(2) / (1 - z)"
