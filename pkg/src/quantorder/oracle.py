"""Polynomial wavefunction representation of the Weyl algebra.

X_i acts by multiplication with x_i and P_i by -i hbar d/dx_i. Words are
applied one letter at a time from the right; nothing here calls the
normal-ordering engine, so agreement with it is a real cross-check.
"""

from __future__ import annotations

from itertools import product
from typing import Iterable, Mapping, Sequence

from ._terms import pad, trim
from .scalars import Coefficient, GaussianRational
from .weyl_algebra import Generator, OperatorPolynomial

__all__ = [
    "Wavefunction",
    "apply_letter",
    "apply_word",
    "apply_operator",
    "apply_words",
    "operators_agree",
    "words_agree",
    "test_monomials",
]

_MINUS_I_HBAR = Coefficient.monomial(GaussianRational(0, -1), hbar=1)


class Wavefunction:
    """Polynomial in position variables only, ``{x_exps: Coefficient}``."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple, object] | None = None):
        clean: dict = {}
        for exps, c in (terms or {}).items():
            key = trim(exps)
            c = Coefficient.coerce(c)
            if key in clean:
                c = clean[key] + c
            if c:
                clean[key] = c
            else:
                clean.pop(key, None)
        self.terms = clean

    @classmethod
    def monomial(cls, exps, c=1) -> "Wavefunction":
        return cls({tuple(exps): c})

    def __add__(self, other: "Wavefunction") -> "Wavefunction":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return Wavefunction(out)

    def scale(self, c) -> "Wavefunction":
        c = Coefficient.coerce(c)
        return Wavefunction({k: v * c for k, v in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, Wavefunction):
            return NotImplemented
        return self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"Wavefunction({self.terms!r})"


def apply_letter(g: Generator, psi: Wavefunction) -> Wavefunction:
    j = g.index - 1
    out: dict = {}
    for exps, c in psi.terms.items():
        e = list(pad(exps, j + 1))
        if g.kind == "x":
            e[j] += 1
            out[tuple(e)] = c
        else:
            if e[j] == 0:
                continue
            k = e[j]
            e[j] -= 1
            key = trim(e)
            v = c * _MINUS_I_HBAR * k
            out[key] = out[key] + v if key in out else v
    return Wavefunction(out)


def apply_word(word: Sequence[Generator], psi: Wavefunction) -> Wavefunction:
    """Apply ``word[0] word[1] ... word[-1]`` to psi (rightmost letter first)."""
    for g in reversed(word):
        psi = apply_letter(g, psi)
        if not psi:
            break
    return psi


def _letters(x: tuple, p: tuple) -> list[Generator]:
    out = []
    for i, e in enumerate(x, start=1):
        out.extend([Generator("x", i)] * e)
    for i, e in enumerate(p, start=1):
        out.extend([Generator("p", i)] * e)
    return out


def apply_operator(a: OperatorPolynomial, psi: Wavefunction) -> Wavefunction:
    out = Wavefunction()
    for word, c in a.items():
        out = out + apply_word(_letters(word.x, word.p), psi).scale(c)
    return out


def apply_words(words: Iterable[tuple[object, Sequence[Generator]]], psi: Wavefunction) -> Wavefunction:
    """Apply an unreduced sum ``[(coeff, letters), ...]``."""
    out = Wavefunction()
    for c, word in words:
        out = out + apply_word(word, psi).scale(c)
    return out


def test_monomials(max_per_var: Sequence[int], max_total: int) -> list[Wavefunction]:
    """All monomials x^g with ``g <= max_per_var`` and ``|g| <= max_total``."""
    out = []
    for g in product(*(range(d + 1) for d in max_per_var)):
        if sum(g) <= max_total:
            out.append(Wavefunction.monomial(g))
    return out


test_monomials.__test__ = False


def _word_bounds(words: Iterable[Sequence[Generator]]) -> tuple[list[int], int]:
    # per-variable and total momentum-letter counts over a family of words
    per: dict = {}
    total = 0
    for word in words:
        counts: dict = {}
        for g in word:
            if g.kind == "p":
                counts[g.index] = counts.get(g.index, 0) + 1
        total = max(total, sum(counts.values()))
        for i, k in counts.items():
            per[i] = max(per.get(i, 0), k)
    n = max(per, default=0)
    return [per.get(i, 0) for i in range(1, n + 1)], total


def _operator_words(a: OperatorPolynomial) -> list[list[Generator]]:
    return [_letters(w.x, w.p) for w in a]


def operators_agree(a: OperatorPolynomial, b: OperatorPolynomial) -> bool:
    """True iff a and b act identically on polynomial wavefunctions.

    Only monomials up to the momentum degrees present in ``a - b`` are
    needed: take a term of a - b whose momentum exponent beta is minimal;
    on x^beta every other term vanishes or has a different image, and this
    one contributes beta! (-i hbar)^|beta| x^alpha != 0.
    """
    diff = a - b
    per, total = _word_bounds(_operator_words(diff))
    for psi in test_monomials(per, total):
        if apply_operator(a, psi) != apply_operator(b, psi):
            return False
    return True


def words_agree(words: Sequence[tuple[object, Sequence[Generator]]], a: OperatorPolynomial) -> bool:
    """True iff an unreduced word sum and a normal-ordered operator coincide."""
    words = list(words)
    per, total = _word_bounds([w for _, w in words] + _operator_words(a))
    for psi in test_monomials(per, total):
        if apply_words(words, psi) != apply_operator(a, psi):
            return False
    return True
