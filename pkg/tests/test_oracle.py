from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from quantorder.oracle import (
    Wavefunction,
    apply_operator,
    apply_word,
    operators_agree,
    test_monomials,
    words_agree,
)
from quantorder.scalars import HBAR, I, Coefficient, GaussianRational
from quantorder.weyl_algebra import P, X, OperatorPolynomial, normal_order_word, op_mul

from conftest import coefficients, operator_polys

Op = OperatorPolynomial
iH = I * HBAR
H2 = HBAR ** 2


@st.composite
def wavefunctions(draw, n_vars=2, max_exp=3):
    vec = st.lists(st.integers(0, max_exp), min_size=n_vars, max_size=n_vars).map(tuple)
    return Wavefunction(draw(st.dictionaries(vec, coefficients(max_tau=0), max_size=3)))


def test_apply_examples():
    assert apply_operator(Op.generator(P(1)), Wavefunction.monomial((2,))) == Wavefunction.monomial((1,), -2 * iH)
    assert apply_operator(Op.word((1,), (1,)), Wavefunction.monomial((1,))) == Wavefunction.monomial((1,), -iH)


def test_normal_ordering_validation_example():
    a = Op.word((2,), (2,)) - Op.word((1,), (1,), 4 * iH) - 2 * H2
    psi = Wavefunction.monomial((2,))
    # X^2 P^2 x^2 = -2 hbar^2 x^2; -4 i hbar X P x^2 = -8 hbar^2 x^2; -2 hbar^2 x^2
    assert apply_operator(a, psi) == Wavefunction.monomial((2,), -12 * H2)
    assert apply_word([P(1), P(1), X(1), X(1)], psi) == apply_operator(a, psi)


def test_operators_agree_examples():
    a = normal_order_word([P(1), P(1), X(1), X(1)])
    b = Op.word((2,), (2,)) - Op.word((1,), (1,), 4 * iH) - 2 * H2
    assert operators_agree(a, b)
    xp = Op.word((1,), (1,))
    px = normal_order_word([P(1), X(1)])
    assert not operators_agree(xp, px)
    assert apply_operator(xp - px, Wavefunction.monomial(())) == Wavefunction.monomial((), iH)
    assert operators_agree(xp, xp)


def test_test_set_bounds():
    assert len(test_monomials([2, 2], 2)) == 6
    assert len(test_monomials([], 0)) == 1


@settings(max_examples=200)
@given(operator_polys(), operator_polys(), wavefunctions())
def test_representation_property(a, b, psi):
    assert apply_operator(op_mul(a, b), psi) == apply_operator(a, apply_operator(b, psi))


@settings(max_examples=200)
@given(operator_polys(), st.data())
def test_agreement_iff_structural_equality(a, data):
    assert operators_agree(a, a)
    # perturb one coefficient (or add a term) to inject inequality
    words = list(a) or [None]
    target = data.draw(st.sampled_from(words))
    bump = data.draw(coefficients(max_tau=0).filter(bool))
    if target is None:
        b = a + Op.scalar(bump)
    else:
        b = a + Op({target: bump})
    assert a != b
    assert not operators_agree(a, b)


@settings(max_examples=200)
@given(operator_polys(), wavefunctions())
def test_hbar_degree_only_increases(a, psi):
    low = min((h for _, c in psi.terms.items() for h in c.hbar_exponents), default=0)
    low_a = min((h for _, c in a.items() for h in c.hbar_exponents), default=0)
    for _, c in apply_operator(a, psi).terms.items():
        assert min(c.hbar_exponents) >= low + low_a


@settings(max_examples=200)
@given(st.lists(st.builds(lambda k, i: X(i) if k else P(i), st.booleans(), st.integers(1, 3)), max_size=7))
def test_words_agree_with_engine(word):
    ones = [(Coefficient.coerce(1), tuple(word))]
    normal = normal_order_word(word)
    assert words_agree(ones, normal)
    assert not words_agree(ones, normal + Op.scalar(HBAR))
