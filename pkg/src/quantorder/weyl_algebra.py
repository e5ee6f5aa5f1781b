"""Noncommutative polynomials in X_i, P_i under [X_j, P_k] = i*hbar*delta_jk.

Elements are stored in the normal-ordered (PBW) basis ``X^alpha P^beta``:
all positions to the left of all momenta. Products of basis words are
computed on exponent vectors, using for each shared index

    P^a X^b = sum_k C(a,k) C(b,k) k! (-i hbar)^k X^(b-k) P^(a-k).
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product
from math import comb, factorial
from typing import Iterable, NamedTuple, Sequence

from ._terms import Monomial, TermMap, add_exps, pad, trim
from .scalars import Coefficient, GaussianRational

__all__ = [
    "Generator",
    "X",
    "P",
    "NormalWord",
    "OperatorPolynomial",
    "normal_order_word",
    "normal_order_letters",
    "op_mul",
    "commutator",
    "adjoint",
]

NormalWord = Monomial


class Generator(NamedTuple):
    kind: str  # "x" or "p"
    index: int  # 1-based

    def __repr__(self):
        return f"{self.kind.upper()}{self.index}"


def X(i: int) -> Generator:
    if i < 1:
        raise ValueError("generator index must be >= 1")
    return Generator("x", i)


def P(i: int) -> Generator:
    if i < 1:
        raise ValueError("generator index must be >= 1")
    return Generator("p", i)


_MINUS_I = GaussianRational(0, -1)


@lru_cache(maxsize=None)
def _reorder_factor(a: int, b: int) -> tuple:
    """Expansion of P^a X^b for one index as ``((k, weight), ...)``.

    Term ``k`` is ``weight * (-i hbar)^k X^(b-k) P^(a-k)``.
    """
    return tuple((k, comb(a, k) * comb(b, k) * factorial(k)) for k in range(min(a, b) + 1))


@lru_cache(maxsize=200_000)
def _mul_words(left: Monomial, right: Monomial) -> tuple:
    """Normal-ordered product of two basis words as ``((word, coeff), ...)``."""
    px, xr = left.p, right.x
    n = min(len(px), len(xr))
    choices = []
    for i in range(n):
        if px[i] and xr[i]:
            choices.append((i, _reorder_factor(px[i], xr[i])))
    x_sum = add_exps(left.x, right.x)
    p_sum = add_exps(left.p, right.p)
    if not choices:
        return ((Monomial(x_sum, p_sum), Coefficient.monomial(1)),)

    width = max(len(x_sum), len(p_sum))
    out = []
    for combo in product(*(c for _, c in choices)):
        x = list(pad(x_sum, width))
        p = list(pad(p_sum, width))
        weight = 1
        total = 0
        for (i, _), (k, w) in zip(choices, combo):
            x[i] -= k
            p[i] -= k
            weight *= w
            total += k
        phase = _MINUS_I_POWERS[total % 4]
        out.append(
            (Monomial(trim(x), trim(p)), Coefficient.monomial(phase * weight, hbar=total))
        )
    return tuple(out)


_MINUS_I_POWERS = {
    0: GaussianRational(1),
    1: GaussianRational(0, -1),
    2: GaussianRational(-1),
    3: GaussianRational(0, 1),
}


class OperatorPolynomial(TermMap):
    """Element of the Weyl algebra in normal-ordered form."""

    __slots__ = ()
    x_name = "X"
    p_name = "P"

    @classmethod
    def generator(cls, g: Generator) -> "OperatorPolynomial":
        unit = (0,) * (g.index - 1) + (1,)
        if g.kind == "x":
            return cls._raw({Monomial(unit, ()): Coefficient.monomial(1)})
        return cls._raw({Monomial((), unit): Coefficient.monomial(1)})

    @classmethod
    def word(cls, x=(), p=(), c=1) -> "OperatorPolynomial":
        return cls.monomial(x, p, c)

    def __mul__(self, other):
        if isinstance(other, OperatorPolynomial):
            return op_mul(self, other)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __rmul__(self, other):
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not defined")
        result = OperatorPolynomial.scalar(1)
        for _ in range(n):
            result = result * self
        return result

    def max_p_degrees(self) -> tuple:
        """Per-variable maximum momentum exponent over all terms."""
        n = self.n_vars
        out = [0] * n
        for m in self._terms:
            for i, e in enumerate(m.p):
                out[i] = max(out[i], e)
        return tuple(out)


def op_mul(a: OperatorPolynomial, b: OperatorPolynomial) -> OperatorPolynomial:
    out: dict = {}
    for wa, ca in a.items():
        for wb, cb in b.items():
            c = ca * cb
            for w, k in _mul_words(wa, wb):
                v = c * k
                s = out.get(w)
                out[w] = v if s is None else s + v
    return OperatorPolynomial._raw({w: c for w, c in out.items() if c})


def commutator(a: OperatorPolynomial, b: OperatorPolynomial) -> OperatorPolynomial:
    return op_mul(a, b) - op_mul(b, a)


def adjoint(a: OperatorPolynomial) -> OperatorPolynomial:
    """Hermitian adjoint: reverse each word and conjugate its coefficient."""
    out = OperatorPolynomial.zero()
    for w, c in a.items():
        reversed_word = _mul_words(Monomial((), w.p), Monomial(w.x, ()))
        part = OperatorPolynomial._raw(dict(reversed_word))
        out = out + part.scale(c.conjugate())
    return out


def _runs(word: Sequence[Generator]) -> Iterable[tuple[Generator, int]]:
    run_gen, run_len = None, 0
    for g in word:
        if g == run_gen:
            run_len += 1
        else:
            if run_gen is not None:
                yield run_gen, run_len
            run_gen, run_len = g, 1
    if run_gen is not None:
        yield run_gen, run_len


def _power_word(g: Generator, e: int) -> OperatorPolynomial:
    unit = (0,) * (g.index - 1) + (e,)
    mono = Monomial(unit, ()) if g.kind == "x" else Monomial((), unit)
    return OperatorPolynomial._raw({mono: Coefficient.monomial(1)})


def normal_order_word(word: Sequence[Generator]) -> OperatorPolynomial:
    """Normal-ordered expansion of a product of generators, left to right."""
    result = OperatorPolynomial.scalar(1)
    for g, e in _runs(word):
        result = op_mul(result, _power_word(g, e))
    return result


# Letter-by-letter rewriting. Kept as an independent reference path for
# testing the exponent-vector engine above; exponential in word length.

def _letter_key(g: Generator):
    return (0 if g.kind == "x" else 1, g.index)


@lru_cache(maxsize=None)
def _rewrite(word: tuple, strategy: str) -> tuple:
    positions = [
        j for j in range(len(word) - 1) if _letter_key(word[j]) > _letter_key(word[j + 1])
    ]
    if not positions:
        x: dict = {}
        p: dict = {}
        for g in word:
            bucket = x if g.kind == "x" else p
            bucket[g.index] = bucket.get(g.index, 0) + 1
        n = max(list(x) + list(p) + [0])
        mono = Monomial.make([x.get(i, 0) for i in range(1, n + 1)],
                             [p.get(i, 0) for i in range(1, n + 1)])
        return ((mono, Coefficient.monomial(1)),)
    j = positions[0] if strategy == "leftmost" else positions[-1]
    a, b = word[j], word[j + 1]
    swapped = word[:j] + (b, a) + word[j + 2:]
    out = list(_rewrite(swapped, strategy))
    if a.kind == "p" and b.kind == "x" and a.index == b.index:
        # P X = X P - i hbar
        minus_i_hbar = Coefficient.monomial(_MINUS_I, hbar=1)
        for mono, c in _rewrite(word[:j] + word[j + 2:], strategy):
            out.append((mono, c * minus_i_hbar))
    return tuple(out)


def normal_order_letters(word: Sequence[Generator], strategy: str = "leftmost") -> OperatorPolynomial:
    """Normal order by swapping adjacent letters one at a time.

    ``strategy`` picks the leftmost or rightmost out-of-order pair first.
    """
    if strategy not in ("leftmost", "rightmost"):
        raise ValueError(f"unknown strategy {strategy!r}")
    return OperatorPolynomial(_collect(_rewrite(tuple(word), strategy)))


def _collect(pairs) -> dict:
    out: dict = {}
    for mono, c in pairs:
        out[mono] = out[mono] + c if mono in out else c
    return out
