from fractions import Fraction

import pytest
from hypothesis import given, settings

from quantorder.angular import l_component
from quantorder.phase_space import ClassicalPolynomial, moyal_star, poisson_bracket, star_commutator
from quantorder.scalars import HBAR, I, Coefficient

from conftest import classical_polys, real_coefficients

C = ClassicalPolynomial
x, p = C.x(1), C.p(1)
iH = I * HBAR


def test_canonical_bracket():
    assert poisson_bracket(x, p) == C.scalar(1)
    assert poisson_bracket(p, x) == C.scalar(-1)


def test_bracket_cubic():
    # d/dx(x^2 p) d/dp(x p^2) - d/dp(x^2 p) d/dx(x p^2) = 2xp*2xp - x^2*p^2
    assert poisson_bracket(x * x * p, x * p * p) == (x * x * p * p).scale(3)


def test_bracket_of_angular_components():
    assert poisson_bracket(l_component(1, 2, 3), l_component(1, 3, 3)) == C.x(2) * C.p(3) - C.x(3) * C.p(2)


def test_star_examples():
    half_iH = iH * Fraction(1, 2)
    assert moyal_star(x, p) == x * p + C.scalar(half_iH)
    assert moyal_star(p, x) == x * p - C.scalar(half_iH)
    assert star_commutator(x, p) == C.scalar(iH)
    f = x * x * p + C.p(2)
    assert moyal_star(f, C.scalar(1)) == f
    assert moyal_star(C.scalar(1), f) == f


def test_star_truncation_orders():
    f, g = x * x, p * p
    full = moyal_star(f, g)
    # x^2 * p^2 = x^2 p^2 + 2 i hbar x p - hbar^2 / 2
    assert full == x * x * p * p + (x * p).scale(2 * iH) + C.scalar(-HBAR ** 2 * Fraction(1, 2))
    assert moyal_star(f, g, truncate=0) == f * g
    assert moyal_star(f, g, truncate=1) == x * x * p * p + (x * p).scale(2 * iH)
    assert moyal_star(f, g, truncate=5) == full
    with pytest.raises(ValueError):
        moyal_star(f, g, truncate=-1)


@settings(max_examples=200)
@given(
    classical_polys(max_exp=1, max_terms=2),
    classical_polys(max_exp=1, max_terms=2),
    classical_polys(max_exp=1, max_terms=2),
)
def test_star_associative(f, g, h):
    assert moyal_star(moyal_star(f, g), h) == moyal_star(f, moyal_star(g, h))


@settings(max_examples=200)
@given(
    classical_polys(max_exp=3, coeffs=real_coefficients()),
    classical_polys(max_exp=3, coeffs=real_coefficients()),
)
def test_commutator_defect_starts_at_hbar_cubed(f, g):
    defect = star_commutator(f, g) - poisson_bracket(f, g).scale(iH)
    for _, c in defect.items():
        assert min(c.hbar_exponents) >= 3


def test_commutator_defect_is_nonzero_at_cubic_order():
    # only j = 3 survives: 2 * (i hbar/2)^3 / 3! * (d_x^3 x^3)(d_p^3 p^3) = -3/2 i hbar^3
    defect = star_commutator(x ** 3, p ** 3) - poisson_bracket(x ** 3, p ** 3).scale(iH)
    assert defect == C.scalar(Coefficient.monomial(I.constant() * Fraction(-3, 2), hbar=3))


@settings(max_examples=200)
@given(classical_polys(), classical_polys())
def test_leading_order_is_pointwise_product(f, g):
    assert moyal_star(f, g, truncate=0) == f * g


@settings(max_examples=200)
@given(classical_polys(), classical_polys())
def test_bracket_antisymmetric_and_derivation(f, g):
    assert poisson_bracket(f, g) == -poisson_bracket(g, f)
    h = x * C.p(2)
    assert poisson_bracket(f, g * h) == poisson_bracket(f, g) * h + g * poisson_bracket(f, h)
