"""
Exact integer polynomials in one variable ``q``.

:class:`IntPolynomial` is a dense polynomial over the integers (ascending
coefficients, no trailing zeros) and :class:`LaurentPolynomial` allows
negative exponents as well. Both are immutable and hashable.

>>> q = IntPolynomial.q()
>>> (q - 1) ** 2
IntPolynomial('q^2 - 2q + 1')
>>> ((q - 1) * q).to_list()
[0, -1, 1]
"""

from __future__ import annotations

from typing import Iterable, Union

__all__ = ["IntPolynomial", "LaurentPolynomial", "X_VALUES", "parse_x", "x_poly"]

Scalar = Union[int, "IntPolynomial"]

# the two admissible instantiations of the parameter x
X_VALUES = ("q", "-1")


def _strip(coeffs: Iterable[int]) -> tuple[int, ...]:
    c = [int(a) for a in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _format_terms(terms: list[tuple[int, int]]) -> str:
    """Render ``(exponent, coefficient)`` pairs, highest exponent first."""
    if not terms:
        return "0"
    out = []
    for k, (e, c) in enumerate(terms):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if e == 0:
            body = str(a)
        else:
            var = "q" if e == 1 else f"q^{e}"
            body = var if a == 1 else f"{a}{var}"
        if k == 0:
            out.append(("-" if sign == "-" else "") + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


class IntPolynomial:
    """Polynomial in ``q`` with integer coefficients, lowest degree first."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Iterable[int] = ()):
        self._c = _strip(coeffs)
        self._hash = None

    # -- constructors

    @classmethod
    def constant(cls, a: int) -> IntPolynomial:
        return cls((a,))

    @classmethod
    def q(cls) -> IntPolynomial:
        return cls((0, 1))

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> IntPolynomial:
        if degree < 0:
            raise ValueError("negative degree")
        return cls((0,) * degree + (coeff,))

    @classmethod
    def zero(cls) -> IntPolynomial:
        return cls(())

    @classmethod
    def one(cls) -> IntPolynomial:
        return cls((1,))

    # -- inspection

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self._c

    def to_list(self) -> list[int]:
        return list(self._c)

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial has degree -1."""
        return len(self._c) - 1

    def is_zero(self) -> bool:
        return not self._c

    def __getitem__(self, i: int) -> int:
        return self._c[i] if 0 <= i < len(self._c) else 0

    def __call__(self, value):
        acc = 0
        for a in reversed(self._c):
            acc = acc * value + a
        return acc

    def reciprocal(self, n: int) -> IntPolynomial:
        """Return ``q^n f(1/q)``; requires ``deg f <= n``."""
        if self.degree > n:
            raise ValueError(f"degree {self.degree} exceeds {n}")
        if not self._c:
            return self
        return IntPolynomial(tuple(reversed(self._c)) if len(self._c) == n + 1
                             else (0,) * (n + 1 - len(self._c)) + tuple(reversed(self._c)))

    # -- arithmetic

    @staticmethod
    def _coerce(other) -> IntPolynomial:
        if isinstance(other, IntPolynomial):
            return other
        if isinstance(other, int):
            return IntPolynomial((other,))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        a, b = self._c, o._c
        if len(a) < len(b):
            a, b = b, a
        return IntPolynomial(tuple(x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)))

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial(-a for a in self._c)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        a, b = self._c, o._c
        if not a or not b:
            return IntPolynomial()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = IntPolynomial.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> IntPolynomial:
        """Multiply by ``q^k`` (``k >= 0``)."""
        if not self._c:
            return self
        return IntPolynomial((0,) * k + self._c)

    # -- comparison / hashing

    def __eq__(self, other):
        if isinstance(other, IntPolynomial):
            return self._c == other._c
        if isinstance(other, int):
            return self._c == _strip((other,))
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(("IntPolynomial", self._c))
        return self._hash

    def __str__(self):
        return _format_terms([(e, c) for e, c in reversed(list(enumerate(self._c))) if c])

    def __repr__(self):
        return f"IntPolynomial({str(self)!r})"


class LaurentPolynomial:
    """Finitely supported ``{exponent: coefficient}`` over the integers."""

    __slots__ = ("_terms",)

    def __init__(self, terms: dict[int, int] | None = None):
        self._terms = {e: c for e, c in (terms or {}).items() if c}

    @classmethod
    def q(cls, power: int = 1) -> LaurentPolynomial:
        return cls({power: 1})

    @classmethod
    def constant(cls, a: int) -> LaurentPolynomial:
        return cls({0: a})

    @classmethod
    def from_poly(cls, p: IntPolynomial) -> LaurentPolynomial:
        return cls(dict(enumerate(p.coeffs)))

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    @staticmethod
    def _coerce(other):
        if isinstance(other, LaurentPolynomial):
            return other
        if isinstance(other, int):
            return LaurentPolynomial({0: other})
        if isinstance(other, IntPolynomial):
            return LaurentPolynomial.from_poly(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        t = dict(self._terms)
        for e, c in o._terms.items():
            t[e] = t.get(e, 0) + c
        return LaurentPolynomial(t)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        t: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in o._terms.items():
                t[e1 + e2] = t.get(e1 + e2, 0) + c1 * c2
        return LaurentPolynomial(t)

    __rmul__ = __mul__

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._terms == o._terms

    def __hash__(self):
        return hash(("LaurentPolynomial", frozenset(self._terms.items())))

    def __str__(self):
        return _format_terms(sorted(self._terms.items(), reverse=True))

    def __repr__(self):
        return f"LaurentPolynomial({str(self)!r})"


def parse_x(x) -> str:
    """Normalize a choice of the parameter x to ``"q"`` or ``"-1"``."""
    s = str(x).strip()
    if s in X_VALUES:
        return s
    raise ValueError(f"x must be 'q' or '-1', got {x!r}")


def x_poly(x) -> IntPolynomial:
    """The parameter x as a polynomial."""
    return IntPolynomial.q() if parse_x(x) == "q" else IntPolynomial.constant(-1)
