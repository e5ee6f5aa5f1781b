from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from quantorder.phase_space import ClassicalPolynomial
from quantorder.scalars import Coefficient, GaussianRational
from quantorder.weyl_algebra import Generator, OperatorPolynomial

settings.register_profile(
    "default",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

small_ints = st.integers(min_value=-6, max_value=6)
rationals = st.builds(Fraction, small_ints, st.integers(min_value=1, max_value=5))
gaussians = st.builds(GaussianRational, rationals, rationals)


@st.composite
def coefficients(draw, max_terms=3, max_hbar=2, max_tau=2):
    keys = st.tuples(st.integers(0, max_hbar), st.integers(0, max_tau))
    terms = draw(st.dictionaries(keys, gaussians, max_size=max_terms))
    return Coefficient(terms)


@st.composite
def real_coefficients(draw):
    return Coefficient.coerce(draw(rationals))


def _monomials(n_vars, max_exp):
    vec = st.lists(st.integers(0, max_exp), min_size=n_vars, max_size=n_vars).map(tuple)
    return st.tuples(vec, vec)


@st.composite
def operator_polys(draw, n_vars=2, max_exp=2, max_terms=3, coeffs=None):
    if coeffs is None:
        coeffs = coefficients(max_terms=2, max_tau=0)
    terms = draw(st.dictionaries(_monomials(n_vars, max_exp), coeffs, max_size=max_terms))
    return OperatorPolynomial(terms)


@st.composite
def classical_polys(draw, n_vars=2, max_exp=2, max_terms=3, coeffs=None):
    if coeffs is None:
        coeffs = coefficients(max_terms=2, max_tau=0)
    terms = draw(st.dictionaries(_monomials(n_vars, max_exp), coeffs, max_size=max_terms))
    return ClassicalPolynomial(terms)


def generators(n_vars=3):
    return st.builds(Generator, st.sampled_from(["x", "p"]), st.integers(1, n_vars))


words = st.lists(generators(), max_size=8)


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
