from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings

from quantorder.scalars import (
    HBAR,
    I,
    ONE,
    TAU,
    ZERO,
    Coefficient,
    GaussianRational,
    NotDivisibleError,
    coeff_arith,
    eval_tau,
    integrate_tau_unit,
)

from conftest import coefficients, rationals


def test_gaussian_product_identity():
    a = ONE + I * HBAR
    b = ONE - I * HBAR
    assert coeff_arith(a, b, "mul") == ONE + HBAR ** 2


def test_additive_inverse_is_empty():
    half_h2 = Coefficient.monomial(Fraction(1, 2), hbar=2)
    out = coeff_arith(half_h2, -half_h2, "add")
    assert out == ZERO
    assert out.terms == {}


def test_distributivity_example():
    assert coeff_arith(TAU, ONE - TAU, "mul") == TAU - TAU ** 2


def test_unknown_op():
    with pytest.raises(ValueError):
        coeff_arith(ONE, ONE, "div")


@pytest.mark.parametrize(
    "c, expected",
    [
        (TAU * (ONE - TAU), Fraction(1, 6)),
        (TAU ** 3, Fraction(1, 4)),
        (ONE, 1),
    ],
)
def test_integrate_examples(c, expected):
    assert integrate_tau_unit(c) == Coefficient.coerce(expected)


def test_integrate_keeps_hbar():
    c = HBAR ** 2 * TAU + HBAR
    assert integrate_tau_unit(c) == HBAR ** 2 * Fraction(1, 2) + HBAR


@pytest.mark.parametrize("n", range(11))
def test_beta_integrals_against_factorials(n):
    for k in range(n + 1):
        integrand = TAU ** (n - k) * (ONE - TAU) ** k
        expected = Fraction(factorial(n - k) * factorial(k), factorial(n + 1))
        assert integrate_tau_unit(integrand) == Coefficient.coerce(expected)


@pytest.mark.parametrize(
    "c, r, expected",
    [
        (TAU * (ONE - TAU), Fraction(1, 2), Fraction(1, 4)),
        (TAU, 0, 0),
        (ONE - TAU, 1, 0),
    ],
)
def test_eval_tau_examples(c, r, expected):
    assert eval_tau(c, r) == Coefficient.coerce(expected)


@settings(max_examples=200)
@given(coefficients(), coefficients(), coefficients())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    assert a * b == b * a
    assert a - a == ZERO
    assert a * ONE == a


@settings(max_examples=200)
@given(coefficients(), coefficients())
def test_integration_is_linear(a, b):
    assert integrate_tau_unit(a + b) == integrate_tau_unit(a) + integrate_tau_unit(b)
    assert integrate_tau_unit(a).tau_free


@settings(max_examples=200)
@given(coefficients())
def test_eval_tau_at_boundaries(c):
    at_zero = Coefficient({(h, 0): v for (h, t), v in c.terms.items() if t == 0})
    assert eval_tau(c, 0) == at_zero
    at_one = ZERO
    for (h, _), v in c.terms.items():
        at_one = at_one + Coefficient.monomial(v, hbar=h)
    assert eval_tau(c, 1) == at_one


@given(coefficients(), rationals)
def test_eval_tau_is_ring_homomorphism(c, r):
    assert eval_tau(c * c, r) == eval_tau(c, r) * eval_tau(c, r)


def test_no_zero_terms_stored():
    c = Coefficient({(0, 0): 0, (1, 0): GaussianRational(0, 0), (2, 1): 3})
    assert c.terms == {(2, 1): GaussianRational(3)}


def test_div_i_hbar():
    c = Coefficient.monomial(GaussianRational(0, 9), hbar=1)
    assert c.div_i_hbar() == Coefficient.coerce(9)
    with pytest.raises(NotDivisibleError):
        (ONE + HBAR).div_i_hbar()


def test_text_rendering():
    c = Coefficient({(0, 0): GaussianRational(Fraction(1, 2), Fraction(-1, 3)), (2, 1): -2})
    assert c.to_text() == "-2 * hbar^2 * tau + (1/2 - 1/3*i)"
    assert ZERO.to_text() == "0"
    assert (I * HBAR).to_text() == "i * hbar"


def test_json_round_trip():
    c = Coefficient({(0, 0): GaussianRational(Fraction(1, 2), 3), (2, 1): Fraction(-7, 4)})
    data = c.to_json()
    assert {"re": "-7/4", "im": "0", "hbar": 2, "tau": 1} in data
    assert Coefficient.from_json(data) == c


def test_large_integers_exact():
    big = Coefficient.coerce(factorial(40))
    assert (big * big).constant().re == factorial(40) ** 2
