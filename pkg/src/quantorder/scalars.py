"""Exact coefficient ring: Gaussian rationals extended by the symbols hbar and tau.

A :class:`Coefficient` is a polynomial in ``hbar`` and ``tau`` whose
coefficients are Gaussian rationals ``a + b*i`` with ``a, b`` in Q.
Rationals are :class:`fractions.Fraction`, which already keeps
``gcd(num, den) == 1`` and ``den > 0`` and uses Python's unbounded ints.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Iterable, Iterator, Mapping, Union

Rational = Fraction

__all__ = [
    "Rational",
    "GaussianRational",
    "Coefficient",
    "NotDivisibleError",
    "coeff_arith",
    "integrate_tau_unit",
    "eval_tau",
    "parse_rational",
    "format_rational",
    "HBAR",
    "TAU",
    "I",
    "ONE",
    "ZERO",
]


def parse_rational(text: str) -> Fraction:
    """Parse ``"a/b"`` or ``"a"`` into a Fraction."""
    return Fraction(text.strip())


def format_rational(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class GaussianRational:
    """A number ``re + im*i`` with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def coerce(cls, value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, complex):
            raise TypeError("floating complex values are not exact")
        return cls(value, 0)

    def __add__(self, other):
        other = GaussianRational.coerce(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = GaussianRational.coerce(other)
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __mul__(self, other):
        other = GaussianRational.coerce(other)
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __truediv__(self, other):
        other = GaussianRational.coerce(other)
        norm = other.re * other.re + other.im * other.im
        if norm == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        num = self * other.conjugate()
        return GaussianRational(num.re / norm, num.im / norm)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        try:
            other = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussianRational({format_rational(self.re)}, {format_rational(self.im)})"

    def to_text(self) -> str:
        """Render as ``a/b``, ``c/d*i`` or ``(a/b + c/d*i)``."""
        if not self.im:
            return format_rational(self.re)
        if self.im == 1:
            imag = "i"
        elif self.im == -1:
            imag = "-i"
        else:
            imag = f"{format_rational(self.im)}*i"
        if not self.re:
            return imag
        sign = "-" if self.im < 0 else "+"
        mag = -self.im if self.im < 0 else self.im
        mag_text = "i" if mag == 1 else f"{format_rational(mag)}*i"
        return f"({format_rational(self.re)} {sign} {mag_text})"


class NotDivisibleError(ArithmeticError):
    """Raised when a coefficient has a term that ``i*hbar`` does not divide."""


Key = tuple  # (hbar_exp, tau_exp)
Scalar = Union[int, Fraction, GaussianRational, "Coefficient"]


class Coefficient:
    """Immutable polynomial in ``hbar`` and ``tau`` over Q(i).

    ``terms`` maps ``(hbar_exp, tau_exp)`` to a non-zero GaussianRational.
    Zero terms are dropped on construction, so ``==`` is semantic equality.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Key, object] | None = None):
        clean = {}
        if terms:
            for key, val in terms.items():
                h, t = key
                if h < 0 or t < 0:
                    raise ValueError(f"negative exponent in coefficient key {key}")
                g = GaussianRational.coerce(val)
                if g:
                    clean[(int(h), int(t))] = g
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "Coefficient":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def coerce(cls, value: Scalar) -> "Coefficient":
        if isinstance(value, Coefficient):
            return value
        g = GaussianRational.coerce(value)
        return cls._raw({(0, 0): g} if g else {})

    @classmethod
    def monomial(cls, value=1, hbar: int = 0, tau: int = 0) -> "Coefficient":
        return cls({(hbar, tau): value})

    @property
    def terms(self) -> Mapping[Key, GaussianRational]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Key, GaussianRational]]:
        return iter(sorted(self._terms.items()))

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_scalar(self) -> bool:
        """True if only the ``hbar^0 tau^0`` term is present (or zero)."""
        return all(k == (0, 0) for k in self._terms)

    def constant(self) -> GaussianRational:
        return self._terms.get((0, 0), GaussianRational())

    @property
    def tau_free(self) -> bool:
        return all(t == 0 for _, t in self._terms)

    @property
    def hbar_exponents(self) -> set[int]:
        return {h for h, _ in self._terms}

    def is_real(self) -> bool:
        return all(not g.im for g in self._terms.values())

    # ring operations

    def __add__(self, other):
        if not isinstance(other, Coefficient):
            try:
                other = Coefficient.coerce(other)
            except TypeError:
                return NotImplemented
        out = dict(self._terms)
        for k, v in other._terms.items():
            s = out.get(k)
            s = v if s is None else s + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return Coefficient._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Coefficient._raw({k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Coefficient):
            try:
                other = Coefficient.coerce(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return Coefficient.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Coefficient):
            try:
                other = Coefficient.coerce(other)
            except TypeError:
                return NotImplemented
        out: dict = {}
        for (h1, t1), v1 in self._terms.items():
            for (h2, t2), v2 in other._terms.items():
                k = (h1 + h2, t1 + t2)
                p = v1 * v2
                s = out.get(k)
                out[k] = p if s is None else s + p
        return Coefficient._raw({k: v for k, v in out.items() if v})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not in the ring")
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, other):
        """Division by a non-zero constant only."""
        other = Coefficient.coerce(other)
        if not other.is_scalar() or not other:
            raise ZeroDivisionError("can only divide by a non-zero constant")
        c = other.constant()
        return Coefficient._raw({k: v / c for k, v in self._terms.items()})

    def conjugate(self) -> "Coefficient":
        """Complex conjugation; hbar and tau are real."""
        return Coefficient._raw({k: v.conjugate() for k, v in self._terms.items()})

    def div_i_hbar(self) -> "Coefficient":
        """Exact division by ``i*hbar``.

        Raises NotDivisibleError if some term has no factor of hbar.
        """
        out = {}
        for (h, t), v in self._terms.items():
            if h == 0:
                raise NotDivisibleError(f"term {v.to_text()}*tau^{t} has no hbar factor")
            # 1/i = -i
            out[(h - 1, t)] = v * GaussianRational(0, -1)
        return Coefficient._raw(out)

    def integrate_tau_unit(self) -> "Coefficient":
        """Exact integral over tau in [0, 1]."""
        out: dict = {}
        for (h, t), v in self._terms.items():
            w = v * Fraction(1, t + 1)
            s = out.get((h, 0))
            out[(h, 0)] = w if s is None else s + w
        return Coefficient._raw({k: v for k, v in out.items() if v})

    def eval_tau(self, r) -> "Coefficient":
        r = Fraction(r)
        out: dict = {}
        for (h, t), v in self._terms.items():
            w = v * (r ** t)
            s = out.get((h, 0))
            out[(h, 0)] = w if s is None else s + w
        return Coefficient._raw({k: v for k, v in out.items() if v})

    def substitute_tau(self, poly: "Coefficient") -> "Coefficient":
        """Replace tau by another coefficient (e.g. ``1 - tau``)."""
        out = ZERO
        for (h, t), v in self._terms.items():
            out = out + Coefficient.monomial(v, hbar=h) * poly ** t
        return out

    def __eq__(self, other):
        if not isinstance(other, Coefficient):
            try:
                other = Coefficient.coerce(other)
            except TypeError:
                return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self):
        return f"Coefficient({self.to_text()!r})"

    # rendering

    def term_texts(self) -> list[tuple[bool, str]]:
        """Render each term as ``(negative, magnitude_text)``.

        Terms are ordered by descending hbar power, then descending tau power.
        """
        out = []
        for (h, t), g in sorted(self._terms.items(), key=lambda kv: (-kv[0][0], -kv[0][1])):
            negative = False
            if not g.im and g.re < 0:
                negative, g = True, -g
            elif not g.re and g.im < 0:
                negative, g = True, -g
            factors = []
            if g != 1 or (h == 0 and t == 0):
                factors.append(g.to_text())
            if h:
                factors.append("hbar" if h == 1 else f"hbar^{h}")
            if t:
                factors.append("tau" if t == 1 else f"tau^{t}")
            out.append((negative, " * ".join(factors)))
        return out

    def to_text(self) -> str:
        parts = self.term_texts()
        if not parts:
            return "0"
        return join_signed(parts)

    def to_json(self) -> list[dict]:
        return [
            {"re": format_rational(g.re), "im": format_rational(g.im), "hbar": h, "tau": t}
            for (h, t), g in self.items()
        ]

    @classmethod
    def from_json(cls, data: Iterable[Mapping]) -> "Coefficient":
        out = ZERO
        for item in data:
            g = GaussianRational(parse_rational(item["re"]), parse_rational(item["im"]))
            out = out + cls.monomial(g, hbar=int(item["hbar"]), tau=int(item["tau"]))
        return out


def join_signed(parts: list[tuple[bool, str]]) -> str:
    text = ""
    for n, (negative, body) in enumerate(parts):
        if n == 0:
            text = f"-{body}" if negative else body
        else:
            text += f" - {body}" if negative else f" + {body}"
    return text


ZERO = Coefficient()
ONE = Coefficient.monomial(1)
I = Coefficient.monomial(GaussianRational(0, 1))
HBAR = Coefficient.monomial(1, hbar=1)
TAU = Coefficient.monomial(1, tau=1)


def coeff_arith(a: Scalar, b: Scalar, op: str) -> Coefficient:
    a, b = Coefficient.coerce(a), Coefficient.coerce(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown coefficient operation {op!r}")


def integrate_tau_unit(c: Scalar) -> Coefficient:
    return Coefficient.coerce(c).integrate_tau_unit()


def eval_tau(c: Scalar, r) -> Coefficient:
    return Coefficient.coerce(c).eval_tau(r)


def beta_weight(a: int, b: int) -> Fraction:
    """Closed form of the integral of ``tau^a (1-tau)^b`` over [0, 1]."""
    return Fraction(factorial(a) * factorial(b), factorial(a + b + 1))
