"""Commutative phase-space polynomials, Poisson bracket and Moyal product.

The Moyal product uses plain partial derivatives and the expansion

    f * g = sum_j (i hbar / 2)^j / j!  Pi^j(f, g),
    Pi(f, g) = sum_i (d_xi f  d_pi g - d_pi f  d_xi g),

which terminates on polynomials.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import factorial, perm
from typing import Optional

from ._terms import Monomial, TermMap, add_exps, pad, trim
from .scalars import Coefficient, GaussianRational

__all__ = [
    "ClassicalMonomial",
    "ClassicalPolynomial",
    "poisson_bracket",
    "moyal_star",
    "star_commutator",
]

ClassicalMonomial = Monomial


class ClassicalPolynomial(TermMap):
    __slots__ = ()
    x_name = "x"
    p_name = "p"

    @classmethod
    def x(cls, i: int) -> "ClassicalPolynomial":
        return cls.monomial((0,) * (i - 1) + (1,), ())

    @classmethod
    def p(cls, i: int) -> "ClassicalPolynomial":
        return cls.monomial((), (0,) * (i - 1) + (1,))

    def __mul__(self, other):
        if not isinstance(other, ClassicalPolynomial):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        out: dict = {}
        for ma, ca in self.items():
            for mb, cb in other.items():
                m = Monomial(add_exps(ma.x, mb.x), add_exps(ma.p, mb.p))
                v = ca * cb
                s = out.get(m)
                out[m] = v if s is None else s + v
        return ClassicalPolynomial._raw({m: c for m, c in out.items() if c})

    def __rmul__(self, other):
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not defined")
        result = ClassicalPolynomial.scalar(1)
        for _ in range(n):
            result = result * self
        return result

    def derivative(self, kind: str, i: int) -> "ClassicalPolynomial":
        """Partial derivative in ``x_i`` (kind ``"x"``) or ``p_i``."""
        j = i - 1
        out: dict = {}
        for m, c in self.items():
            exps = m.x if kind == "x" else m.p
            if j >= len(exps) or exps[j] == 0:
                continue
            e = exps[j]
            new = list(exps)
            new[j] -= 1
            key = Monomial(trim(new), m.p) if kind == "x" else Monomial(m.x, trim(new))
            out[key] = out[key] + c * e if key in out else c * e
        return ClassicalPolynomial._raw({m: c for m, c in out.items() if c})

    def is_real(self) -> bool:
        return all(c.is_real() for _, c in self.items())


def poisson_bracket(f: ClassicalPolynomial, g: ClassicalPolynomial) -> ClassicalPolynomial:
    n = max(f.n_vars, g.n_vars)
    out = ClassicalPolynomial.zero()
    for i in range(1, n + 1):
        out = out + f.derivative("x", i) * g.derivative("p", i)
        out = out - f.derivative("p", i) * g.derivative("x", i)
    return out


def _multi_indices(bounds):
    return product(*(range(b + 1) for b in bounds))


def _falling(exps: tuple, orders: tuple) -> int:
    out = 1
    for e, k in zip(exps, orders):
        out *= perm(e, k)
    return out


def _half_i_hbar_power(j: int, sign: int, denom: int) -> Coefficient:
    # (i hbar / 2)^j * sign / denom
    phase = (GaussianRational(1), GaussianRational(0, 1), GaussianRational(-1), GaussianRational(0, -1))[j % 4]
    return Coefficient.monomial(phase * Fraction(sign, denom * 2 ** j), hbar=j)


def _star_monomials(a: Monomial, b: Monomial, truncate: Optional[int]) -> list:
    n = max(a.n_vars, b.n_vars)
    ax, ap, bx, bp = (pad(v, n) for v in (a.x, a.p, b.x, b.p))
    # alpha: d_x on a paired with d_p on b; beta: d_p on a paired with d_x on b
    alpha_bounds = [min(u, v) for u, v in zip(ax, bp)]
    beta_bounds = [min(u, v) for u, v in zip(ap, bx)]
    out = []
    for alpha in _multi_indices(alpha_bounds):
        sa = sum(alpha)
        if truncate is not None and sa > truncate:
            continue
        for beta in _multi_indices(beta_bounds):
            j = sa + sum(beta)
            if truncate is not None and j > truncate:
                continue
            weight = _falling(ax, alpha) * _falling(bp, alpha) * _falling(ap, beta) * _falling(bx, beta)
            denom = 1
            for k in alpha + beta:
                denom *= factorial(k)
            sign = -1 if sum(beta) % 2 else 1
            x = trim(ax[i] - alpha[i] + bx[i] - beta[i] for i in range(n))
            p = trim(ap[i] - beta[i] + bp[i] - alpha[i] for i in range(n))
            out.append((Monomial(x, p), _half_i_hbar_power(j, sign * weight, denom)))
    return out


def moyal_star(
    f: ClassicalPolynomial, g: ClassicalPolynomial, truncate: Optional[int] = None
) -> ClassicalPolynomial:
    """Moyal product of two polynomial symbols.

    ``truncate`` keeps only the orders ``j <= truncate`` of the expansion.
    """
    if truncate is not None and truncate < 0:
        raise ValueError("truncate must be non-negative")
    out: dict = {}
    for ma, ca in f.items():
        for mb, cb in g.items():
            c = ca * cb
            for m, w in _star_monomials(ma, mb, truncate):
                v = c * w
                out[m] = out[m] + v if m in out else v
    return ClassicalPolynomial._raw({m: c for m, c in out.items() if c})


def star_commutator(f: ClassicalPolynomial, g: ClassicalPolynomial) -> ClassicalPolynomial:
    return moyal_star(f, g) - moyal_star(g, f)
