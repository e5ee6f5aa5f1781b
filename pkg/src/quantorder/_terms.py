"""Shared machinery for polynomials keyed by (x-exponents, p-exponents)."""

from __future__ import annotations

from typing import Iterator, Mapping, NamedTuple

from .scalars import Coefficient, join_signed


def trim(exps) -> tuple:
    exps = tuple(int(e) for e in exps)
    if any(e < 0 for e in exps):
        raise ValueError(f"negative exponent in {exps}")
    end = len(exps)
    while end and exps[end - 1] == 0:
        end -= 1
    return exps[:end]


def pad(exps: tuple, n: int) -> tuple:
    return exps + (0,) * (n - len(exps))


def add_exps(a: tuple, b: tuple) -> tuple:
    n = max(len(a), len(b))
    return trim(u + v for u, v in zip(pad(a, n), pad(b, n)))


class Monomial(NamedTuple):
    """Exponent vectors ``x^alpha p^beta`` with trailing zeros removed."""

    x: tuple = ()
    p: tuple = ()

    @classmethod
    def make(cls, x=(), p=()) -> "Monomial":
        return cls(trim(x), trim(p))

    @property
    def degree(self) -> int:
        return sum(self.x) + sum(self.p)

    @property
    def n_vars(self) -> int:
        return max(len(self.x), len(self.p))

    def sort_key(self):
        return (self.degree, self.x, self.p)


ONE_MONOMIAL = Monomial()


class TermMap:
    """Immutable linear combination of :class:`Monomial` keys.

    Subclasses fix the multiplication and the variable spelling used in
    text output (``x1``/``p1`` or ``X1``/``P1``).
    """

    __slots__ = ("_terms", "_hash")
    x_name = "x"
    p_name = "p"

    def __init__(self, terms: Mapping[Monomial, object] | None = None):
        clean: dict = {}
        if terms:
            for mono, c in terms.items():
                mono = Monomial.make(*mono)
                c = Coefficient.coerce(c)
                if mono in clean:
                    c = clean[mono] + c
                if c:
                    clean[mono] = c
                else:
                    clean.pop(mono, None)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict):
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def scalar(cls, c=1):
        c = Coefficient.coerce(c)
        return cls._raw({ONE_MONOMIAL: c} if c else {})

    @classmethod
    def monomial(cls, x=(), p=(), c=1):
        return cls({Monomial.make(x, p): c})

    @classmethod
    def zero(cls):
        return cls._raw({})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Monomial, Coefficient]]:
        return iter(self._terms.items())

    def coefficient(self, mono: Monomial) -> Coefficient:
        return self._terms.get(Monomial.make(*mono), Coefficient())

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __iter__(self):
        return iter(self._terms)

    @property
    def degree(self) -> int:
        return max((m.degree for m in self._terms), default=0)

    @property
    def n_vars(self) -> int:
        return max((m.n_vars for m in self._terms), default=0)

    def is_scalar(self) -> bool:
        return all(m == ONE_MONOMIAL for m in self._terms)

    def scalar_part(self) -> Coefficient:
        return self._terms.get(ONE_MONOMIAL, Coefficient())

    def map_coefficients(self, fn):
        out = {}
        for m, c in self._terms.items():
            c = fn(c)
            if c:
                out[m] = c
        return type(self)._raw(out)

    def _coerce_same(self, other):
        if isinstance(other, type(self)):
            return other
        if isinstance(other, TermMap):
            return None
        try:
            return type(self).scalar(other)
        except TypeError:
            return None

    def __add__(self, other):
        other = self._coerce_same(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m)
            s = c if s is None else s + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return type(self)._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return type(self)._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce_same(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce_same(other)
        if other is None:
            return NotImplemented
        return other - self

    def scale(self, c):
        c = Coefficient.coerce(c)
        if not c:
            return type(self).zero()
        return self.map_coefficients(lambda v: v * c)

    def __eq__(self, other):
        other = self._coerce_same(other)
        if other is None:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self):
        return f"{type(self).__name__}({self.to_text()!r})"

    # rendering

    def _mono_factors(self, mono: Monomial) -> list[str]:
        out = []
        for name, exps in ((self.x_name, mono.x), (self.p_name, mono.p)):
            for i, e in enumerate(exps, start=1):
                if e == 1:
                    out.append(f"{name}{i}")
                elif e:
                    out.append(f"{name}{i}^{e}")
        return out

    def sorted_items(self):
        return sorted(self._terms.items(), key=lambda mc: mc[0].sort_key(), reverse=True)

    def to_text(self) -> str:
        """Canonical text; parseable by :func:`quantorder.cli.parse_observable`."""
        parts = []
        for mono, c in self.sorted_items():
            mono_factors = self._mono_factors(mono)
            for negative, body in c.term_texts():
                if mono_factors and body == "1":
                    factors = list(mono_factors)
                else:
                    factors = [body] + mono_factors
                parts.append((negative, " * ".join(factors)))
        if not parts:
            return "0"
        return join_signed(parts)

    def to_json(self, mode: str) -> dict:
        n = self.n_vars
        return {
            "mode": mode,
            "terms": [
                {"x": list(pad(m.x, n)), "p": list(pad(m.p, n)), "coeff": c.to_json()}
                for m, c in self.sorted_items()
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping):
        return cls(
            {
                Monomial.make(t["x"], t["p"]): Coefficient.from_json(t["coeff"])
                for t in data["terms"]
            }
        )
