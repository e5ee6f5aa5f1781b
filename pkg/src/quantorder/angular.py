"""Angular momentum on R^n and the ordering shift Q(l^2) - l_hat^2."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import comb
from typing import Optional

from .phase_space import ClassicalPolynomial
from .quantize import QuantizationScheme, ordering_words, quantize
from .scalars import Coefficient
from .weyl_algebra import Generator, OperatorPolynomial, op_mul
from . import oracle

__all__ = [
    "ShiftReport",
    "OrderingShiftError",
    "l_component",
    "l_squared_classical",
    "l_hat_component",
    "l_hat_squared",
    "l_hat_squared_words",
    "ordering_remainder",
    "ordering_shift",
    "component_shift",
    "additivity_prediction",
    "conjecture_value",
    "conjecture_scan",
    "verify_shift",
]


class OrderingShiftError(ValueError):
    """Q(l^2) - l_hat^2 is not a multiple of the identity."""

    def __init__(self, message: str, remainder: OperatorPolynomial):
        super().__init__(message)
        self.remainder = remainder


def _check_pair(i: int, j: int, n: int) -> None:
    if n < 2:
        raise ValueError(f"dimension must be at least 2, got {n}")
    if not (1 <= i <= n and 1 <= j <= n):
        raise ValueError(f"indices ({i}, {j}) out of range for dimension {n}")
    if i >= j:
        raise ValueError(f"need i < j, got ({i}, {j})")


def l_component(i: int, j: int, n: int) -> ClassicalPolynomial:
    """``l_ij = x_i p_j - x_j p_i``."""
    _check_pair(i, j, n)
    C = ClassicalPolynomial
    return C.x(i) * C.p(j) - C.x(j) * C.p(i)


def _pairs(n: int):
    if n < 2:
        raise ValueError(f"dimension must be at least 2, got {n}")
    return [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]


def l_squared_classical(n: int) -> ClassicalPolynomial:
    out = ClassicalPolynomial.zero()
    for i, j in _pairs(n):
        lij = l_component(i, j, n)
        out = out + lij * lij
    return out


def l_hat_component(i: int, j: int, n: int) -> OperatorPolynomial:
    _check_pair(i, j, n)
    g = OperatorPolynomial.generator
    return op_mul(g(Generator("x", i)), g(Generator("p", j))) - op_mul(
        g(Generator("x", j)), g(Generator("p", i))
    )


def l_hat_squared(n: int) -> OperatorPolynomial:
    out = OperatorPolynomial.zero()
    for i, j in _pairs(n):
        lij = l_hat_component(i, j, n)
        out = out + op_mul(lij, lij)
    return out


def l_hat_squared_words(n: int) -> list[tuple[Coefficient, tuple]]:
    """Unreduced words of ``sum (X_i P_j - X_j P_i)^2`` for the oracle."""
    out = []
    for i, j in _pairs(n):
        parts = [
            (1, (Generator("x", i), Generator("p", j))),
            (-1, (Generator("x", j), Generator("p", i))),
        ]
        for ca, wa in parts:
            for cb, wb in parts:
                out.append((Coefficient.coerce(ca * cb), wa + wb))
    return out


def ordering_remainder(scheme: QuantizationScheme, n: int) -> OperatorPolynomial:
    """``Q(l^2) - l_hat^2`` as a full operator (may be non-scalar)."""
    return quantize(scheme, l_squared_classical(n)) - l_hat_squared(n)


def conjecture_value(n: int) -> Coefficient:
    """``2(n-2) hbar^2`` with n the ambient dimension."""
    return Coefficient.monomial(2 * (n - 2), hbar=2)


@dataclass(frozen=True)
class ShiftReport:
    dimension: int
    scheme: QuantizationScheme
    shift: Coefficient
    conjecture_value: Coefficient
    matches_conjecture: bool
    # conjecture read with n as the sphere dimension (ambient n + 1)
    sphere_conjecture_value: Coefficient = field(default_factory=Coefficient)
    verified: Optional[bool] = None

    def to_json(self) -> dict:
        return {
            "dimension": self.dimension,
            "scheme": str(self.scheme),
            "shift": self.shift.to_json(),
            "shift_text": self.shift.to_text(),
            "conjecture_value": self.conjecture_value.to_json(),
            "conjecture_text": self.conjecture_value.to_text(),
            "matches_conjecture": self.matches_conjecture,
            "sphere_conjecture_value": self.sphere_conjecture_value.to_json(),
            "sphere_conjecture_text": self.sphere_conjecture_value.to_text(),
            "verified": self.verified,
        }


def _as_shift(remainder: OperatorPolynomial, what: str) -> Coefficient:
    if not remainder.is_scalar():
        raise OrderingShiftError(
            f"{what} is not a multiple of the identity: {remainder.to_text()}", remainder
        )
    return remainder.scalar_part()


def ordering_shift(scheme: QuantizationScheme, n: int, verify: bool = False) -> ShiftReport:
    """The scalar S with ``Q(l^2) = l_hat^2 + S`` on R^n.

    Raises OrderingShiftError when the difference has an operator part,
    which happens for Shubin orderings with tau != 1/2.
    """
    shift = _as_shift(ordering_remainder(scheme, n), f"Q(l^2) - l_hat^2 in R^{n} under {scheme}")
    target = conjecture_value(n)
    return ShiftReport(
        dimension=n,
        scheme=scheme,
        shift=shift,
        conjecture_value=target,
        matches_conjecture=shift == target,
        sphere_conjecture_value=Coefficient.monomial(2 * (n - 3), hbar=2),
        verified=verify_shift(scheme, n, shift) if verify else None,
    )


def component_shift(scheme: QuantizationScheme, i: int = 1, j: int = 2, n: int = 2) -> Coefficient:
    """Shift of a single squared component l_ij^2."""
    lij = l_component(i, j, n)
    lhat = l_hat_component(i, j, n)
    remainder = quantize(scheme, lij * lij) - op_mul(lhat, lhat)
    return _as_shift(remainder, f"Q(l_{i}{j}^2) - l_hat_{i}{j}^2")


def verify_shift(scheme: QuantizationScheme, n: int, shift: Coefficient) -> bool:
    """Check ``Q(l^2) = l_hat^2 + shift`` in the wavefunction representation,
    starting from unreduced ordering words on both sides.
    """
    lhs = ordering_words(scheme, l_squared_classical(n))
    rhs = OperatorPolynomial.scalar(shift)
    neg_lhat = [(-c, w) for c, w in l_hat_squared_words(n)]
    # lhs - l_hat^2 as raw words must equal the scalar shift
    return oracle.words_agree(lhs + neg_lhat, rhs)


def _scan_one(args) -> ShiftReport:
    scheme, n, verify = args
    return ordering_shift(scheme, n, verify=verify)


def conjecture_scan(
    scheme: QuantizationScheme,
    n_min: int,
    n_max: int,
    verify: bool = False,
    workers: Optional[int] = None,
) -> list[ShiftReport]:
    """One ShiftReport per dimension in ``[n_min, n_max]``, ordered by dimension."""
    if not 2 <= n_min <= n_max:
        raise ValueError(f"need 2 <= n_min <= n_max, got {n_min}, {n_max}")
    jobs = [(scheme, n, verify) for n in range(n_min, n_max + 1)]
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_scan_one, jobs))
    return [_scan_one(job) for job in jobs]


def additivity_prediction(scheme: QuantizationScheme, n: int) -> Coefficient:
    """C(n, 2) times the shift of l_12^2 in R^2."""
    return component_shift(scheme) * comb(n, 2)
