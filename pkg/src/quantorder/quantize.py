"""Weyl, Shubin-tau and Born-Jordan quantization of polynomial symbols.

Every scheme is defined one conjugate pair at a time on ``x_i^m p_i^n``;
a monomial over several pairs is quantized as the product of its per-pair
orderings with a single shared tau, integrated once for Born-Jordan. The
per-pair factors act on distinct indices and so commute.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb
from typing import Optional, Union

from ._terms import Monomial, pad
from .phase_space import ClassicalPolynomial, poisson_bracket
from .scalars import ONE, TAU, Coefficient, NotDivisibleError, beta_weight
from .weyl_algebra import (
    Generator,
    OperatorPolynomial,
    commutator,
    normal_order_word,
    op_mul,
)

__all__ = [
    "QuantizationScheme",
    "DiracDefectError",
    "parse_scheme",
    "shubin_quantize",
    "weyl_quantize",
    "bj_quantize",
    "quantize",
    "ordering_words",
    "weyl_symbol",
    "dirac_defect",
]

VARIANTS = ("weyl", "shubin", "bj")
FORMS = ("one_S", "one_S2")
BJ_MODES = ("direct", "integral")


@dataclass(frozen=True)
class QuantizationScheme:
    """Which ordering to use.

    ``tau`` is only meaningful for Shubin; ``None`` keeps it symbolic.
    ``form`` selects the x-outer (one_S) or p-outer (one_S2) expansion for
    Shubin and for the integral route of Born-Jordan.
    """

    variant: str = "weyl"
    tau: Optional[Fraction] = None
    form: str = "one_S"
    bj_mode: str = "direct"

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown scheme variant {self.variant!r}")
        if self.form not in FORMS:
            raise ValueError(f"unknown Shubin form {self.form!r}")
        if self.bj_mode not in BJ_MODES:
            raise ValueError(f"unknown Born-Jordan mode {self.bj_mode!r}")
        if self.tau is not None:
            object.__setattr__(self, "tau", Fraction(self.tau))

    @classmethod
    def weyl(cls) -> "QuantizationScheme":
        return cls("weyl")

    @classmethod
    def bj(cls, mode: str = "direct", form: str = "one_S") -> "QuantizationScheme":
        return cls("bj", form=form, bj_mode=mode)

    @classmethod
    def shubin(cls, tau=None, form: str = "one_S") -> "QuantizationScheme":
        return cls("shubin", tau=tau, form=form)

    @property
    def symbolic(self) -> bool:
        return self.variant == "shubin" and self.tau is None

    def __str__(self):
        if self.variant == "shubin":
            if self.tau is None:
                return "shubin:sym"
            return f"shubin:{self.tau.numerator}/{self.tau.denominator}"
        return self.variant


def parse_scheme(text: str) -> QuantizationScheme:
    """Parse ``weyl``, ``bj``, ``shubin:<num>/<den>`` or ``shubin:sym``."""
    text = text.strip()
    if text == "weyl":
        return QuantizationScheme.weyl()
    if text == "bj":
        return QuantizationScheme.bj()
    if text.startswith("shubin:"):
        arg = text[len("shubin:"):]
        if arg == "sym":
            return QuantizationScheme.shubin()
        try:
            return QuantizationScheme.shubin(Fraction(arg))
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"bad Shubin parameter {arg!r}") from None
    raise ValueError(f"unknown scheme {text!r}; expected weyl, bj, shubin:<a>/<b> or shubin:sym")


# per-pair orderings ------------------------------------------------------

def _word(i: int, *blocks: tuple[str, int]) -> tuple:
    out = []
    for kind, e in blocks:
        out.extend([Generator(kind, i)] * e)
    return tuple(out)


ONE_MINUS_TAU = ONE - TAU


@lru_cache(maxsize=None)
def _shubin_pair_terms(i: int, m: int, n: int, form: str) -> tuple:
    """Raw words of one pair under the Shubin rule, weights symbolic in tau.

    Each entry is ``(weight, word, tau_power)``.
    """
    if form == "one_S":
        return tuple(
            (
                Coefficient.monomial(comb(m, k)) * TAU ** k * ONE_MINUS_TAU ** (m - k),
                _word(i, ("x", k), ("p", n), ("x", m - k)),
                k,
            )
            for k in range(m + 1)
        )
    return tuple(
        (
            Coefficient.monomial(comb(n, k)) * TAU ** (n - k) * ONE_MINUS_TAU ** k,
            _word(i, ("p", k), ("x", m), ("p", n - k)),
            n - k,
        )
        for k in range(n + 1)
    )


@lru_cache(maxsize=None)
def _weyl_pair_terms(i: int, m: int, n: int) -> tuple:
    scale = Fraction(1, 2 ** m)
    return tuple(
        (Coefficient.monomial(scale * comb(m, k)), _word(i, ("x", k), ("p", n), ("x", m - k)))
        for k in range(m + 1)
    )


@lru_cache(maxsize=None)
def _shubin_pair(i: int, m: int, n: int, form: str) -> OperatorPolynomial:
    out = OperatorPolynomial.zero()
    for w, word, _ in _shubin_pair_terms(i, m, n, form):
        out = out + normal_order_word(word).scale(w)
    return out


@lru_cache(maxsize=None)
def _weyl_pair(i: int, m: int, n: int) -> OperatorPolynomial:
    out = OperatorPolynomial.zero()
    for w, word in _weyl_pair_terms(i, m, n):
        out = out + normal_order_word(word).scale(w)
    return out


@lru_cache(maxsize=None)
def _bj_pair_groups(i: int, m: int, n: int) -> tuple:
    """``(C(m,k) * normal(X^k P^n X^(m-k)))`` for k = 0..m."""
    return tuple(
        normal_order_word(_word(i, ("x", k), ("p", n), ("x", m - k))).scale(comb(m, k))
        for k in range(m + 1)
    )


def _pairs(mono: Monomial) -> list[tuple[int, int, int]]:
    n = mono.n_vars
    xs, ps = pad(mono.x, n), pad(mono.p, n)
    return [(i + 1, xs[i], ps[i]) for i in range(n) if xs[i] or ps[i]]


def _product(factors) -> OperatorPolynomial:
    out = OperatorPolynomial.scalar(1)
    for f in factors:
        out = op_mul(out, f)
    return out


# the maps ------------------------------------------------------------------

def _linear(f: ClassicalPolynomial, on_monomial) -> OperatorPolynomial:
    out = OperatorPolynomial.zero()
    for mono, c in f.items():
        out = out + on_monomial(mono).scale(c)
    return out


def shubin_quantize(
    f: ClassicalPolynomial, tau: Union[None, int, Fraction] = None, form: str = "one_S"
) -> OperatorPolynomial:
    """Shubin tau-ordering. ``tau=None`` leaves tau as a symbol in the coefficients."""
    if form not in FORMS:
        raise ValueError(f"unknown Shubin form {form!r}")

    def on_monomial(mono):
        return _product(_shubin_pair(i, m, n, form) for i, m, n in _pairs(mono))

    result = _linear(f, on_monomial)
    if tau is not None:
        result = result.map_coefficients(lambda c: c.eval_tau(tau))
    return result


def weyl_quantize(f: ClassicalPolynomial) -> OperatorPolynomial:
    def on_monomial(mono):
        return _product(_weyl_pair(i, m, n) for i, m, n in _pairs(mono))

    return _linear(f, on_monomial)


def _bj_direct_monomial(mono: Monomial) -> OperatorPolynomial:
    # accumulate by K = total number of x letters placed left of the momenta;
    # the shared-tau weight tau^K (1-tau)^(M-K) integrates to K!(M-K)!/(M+1)!
    pairs = _pairs(mono)
    total_m = sum(m for _, m, _ in pairs)
    state = {0: OperatorPolynomial.scalar(1)}
    for i, m, n in pairs:
        groups = _bj_pair_groups(i, m, n)
        new: dict = {}
        for K, poly in state.items():
            for k, g in enumerate(groups):
                term = op_mul(poly, g)
                new[K + k] = new[K + k] + term if K + k in new else term
        state = new
    out = OperatorPolynomial.zero()
    for K, poly in state.items():
        out = out + poly.scale(beta_weight(K, total_m - K))
    return out


def bj_quantize(
    f: ClassicalPolynomial, mode: str = "direct", form: str = "one_S"
) -> OperatorPolynomial:
    """Born-Jordan quantization.

    ``direct`` uses closed-form factorial weights; ``integral`` expands the
    Shubin ordering with symbolic tau and integrates tau over [0, 1].
    """
    if mode == "direct":
        return _linear(f, _bj_direct_monomial)
    if mode == "integral":
        return shubin_quantize(f, None, form).map_coefficients(lambda c: c.integrate_tau_unit())
    raise ValueError(f"unknown Born-Jordan mode {mode!r}")


def quantize(scheme: QuantizationScheme, f: ClassicalPolynomial) -> OperatorPolynomial:
    if scheme.variant == "weyl":
        return weyl_quantize(f)
    if scheme.variant == "bj":
        return bj_quantize(f, scheme.bj_mode, scheme.form)
    return shubin_quantize(f, scheme.tau, scheme.form)


def ordering_words(scheme: QuantizationScheme, f: ClassicalPolynomial) -> list[tuple[Coefficient, tuple]]:
    """Unreduced operator words with weights, i.e. the ordering before any
    commutation relation is used. Feeds the representation oracle.
    """
    out = []
    for mono, c in f.items():
        pairs = _pairs(mono)
        if scheme.variant == "weyl":
            per_pair = [
                [(w, word, 0) for w, word in _weyl_pair_terms(i, m, n)] for i, m, n in pairs
            ]
        elif scheme.variant == "shubin":
            per_pair = [list(_shubin_pair_terms(i, m, n, scheme.form)) for i, m, n in pairs]
        else:
            per_pair = [
                [
                    (Coefficient.monomial(comb(m, k)), _word(i, ("x", k), ("p", n), ("x", m - k)), k)
                    for k in range(m + 1)
                ]
                for i, m, n in pairs
            ]
        total_m = sum(m for _, m, _ in pairs)
        for combo in product(*per_pair):
            weight = c
            word: tuple = ()
            K = 0
            for w, wd, k in combo:
                weight = weight * w
                word += wd
                K += k
            if scheme.variant == "bj":
                weight = weight * beta_weight(K, total_m - K)
            elif scheme.variant == "shubin" and scheme.tau is not None:
                weight = weight.eval_tau(scheme.tau)
            if weight:
                out.append((weight, word))
    return out


# inverse Weyl map ----------------------------------------------------------

def weyl_symbol(a: OperatorPolynomial) -> ClassicalPolynomial:
    """Classical symbol whose Weyl quantization is ``a``.

    Op_W(x^alpha p^beta) is X^alpha P^beta plus terms of strictly lower
    degree, so peeling off the top-degree words terminates.
    """
    symbol = ClassicalPolynomial.zero()
    rest = a
    while rest:
        top = rest.degree
        layer = ClassicalPolynomial({m: c for m, c in rest.items() if m.degree == top})
        symbol = symbol + layer
        rest = rest - weyl_quantize(layer)
    return symbol


# Dirac consistency ----------------------------------------------------------

class DiracDefectError(ArithmeticError):
    """The commutator of two quantized observables was not divisible by i*hbar."""


def dirac_defect(
    scheme: QuantizationScheme, f: ClassicalPolynomial, g: ClassicalPolynomial
) -> OperatorPolynomial:
    """``Q({f, g}) - [Q(f), Q(g)] / (i hbar)``."""
    qf, qg = quantize(scheme, f), quantize(scheme, g)
    try:
        scaled = commutator(qf, qg).map_coefficients(lambda c: c.div_i_hbar())
    except NotDivisibleError as exc:
        raise DiracDefectError(f"commutator not divisible by i*hbar: {exc}") from exc
    return quantize(scheme, poisson_bracket(f, g)) - scaled
