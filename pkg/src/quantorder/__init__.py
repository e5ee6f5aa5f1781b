"""Exact comparison of Weyl, Shubin and Born-Jordan operator orderings on
polynomial observables."""

from .angular import (
    ShiftReport,
    conjecture_scan,
    l_component,
    l_hat_squared,
    l_squared_classical,
    ordering_shift,
)
from .oracle import Wavefunction, apply_operator, operators_agree
from .parser import ParseError, parse_observable
from .phase_space import ClassicalPolynomial, moyal_star, poisson_bracket
from .quantize import (
    QuantizationScheme,
    bj_quantize,
    dirac_defect,
    parse_scheme,
    quantize,
    shubin_quantize,
    weyl_quantize,
    weyl_symbol,
)
from .scalars import HBAR, I, TAU, Coefficient, GaussianRational
from .weyl_algebra import P, X, OperatorPolynomial, adjoint, commutator, normal_order_word, op_mul

__version__ = "0.1.0"
