"""
Exact arithmetic in Q(√2, √3, √5).

An element is stored as eight rational coordinates on the basis
``√d`` for ``d`` a squarefree product of a subset of {2, 3, 5}; the subset is
encoded as a bitmask (bit 0 ↔ 2, bit 1 ↔ 3, bit 2 ↔ 5). This ring contains
``2cos(π/m)`` for m = 2, ..., 6, which is all the geometric representation of
a Coxeter group with such labels needs.

Signs are decided exactly by descending the tower of quadratic extensions:
for ``a + b√p`` with ``a`` and ``b`` of opposite signs, the sign is
``sign(a) * sign(a² - p b²)``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce

__all__ = ["QSqrt", "two_cos_pi_over"]

PRIMES = (2, 3, 5)
DIM = 8


def _mask_product(mask: int) -> int:
    return reduce(lambda acc, k: acc * PRIMES[k] if mask >> k & 1 else acc, range(3), 1)


# √(a)·√(b) = extra · √(a xor b), where extra is the product of shared primes
_MUL = [[(i ^ j, _mask_product(i & j)) for j in range(DIM)] for i in range(DIM)]


class QSqrt:
    __slots__ = ("c", "_hash")

    def __init__(self, coords):
        c = tuple(Fraction(x) for x in coords)
        if len(c) != DIM:
            raise ValueError("expected eight coordinates")
        self.c = c
        self._hash = None

    @classmethod
    def of(cls, rational=0, sqrt2=0, sqrt3=0, sqrt5=0) -> QSqrt:
        c = [Fraction(0)] * DIM
        c[0], c[1], c[2], c[4] = Fraction(rational), Fraction(sqrt2), Fraction(sqrt3), Fraction(sqrt5)
        return cls(c)

    def is_zero(self) -> bool:
        return not any(self.c)

    def __add__(self, other: QSqrt) -> QSqrt:
        return QSqrt(a + b for a, b in zip(self.c, other.c))

    def __sub__(self, other: QSqrt) -> QSqrt:
        return QSqrt(a - b for a, b in zip(self.c, other.c))

    def __neg__(self) -> QSqrt:
        return QSqrt(-a for a in self.c)

    def __mul__(self, other) -> QSqrt:
        if isinstance(other, (int, Fraction)):
            return QSqrt(a * other for a in self.c)
        out = [Fraction(0)] * DIM
        for i, a in enumerate(self.c):
            if a:
                row = _MUL[i]
                for j, b in enumerate(other.c):
                    if b:
                        k, extra = row[j]
                        out[k] += a * b * extra
        return QSqrt(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, QSqrt):
            return self.c == other.c
        if isinstance(other, (int, Fraction)):
            return self.c == QSqrt.of(other).c
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.c)
        return self._hash

    def sign(self) -> int:
        return _sign(self.c, 3)

    def __float__(self):
        return sum(float(a) * _mask_product(m) ** 0.5 for m, a in enumerate(self.c))

    def __repr__(self):
        names = ["1", "√2", "√3", "√6", "√5", "√10", "√15", "√30"]
        parts = [f"{a}·{names[m]}" if m else str(a) for m, a in enumerate(self.c) if a]
        return "QSqrt(" + (" + ".join(parts) or "0") + ")"


def _sub_mul(a: list, b: list, levels: int) -> list:
    size = 1 << levels
    out = [Fraction(0)] * size
    for i in range(size):
        if a[i]:
            for j in range(size):
                if b[j]:
                    k, extra = _MUL[i][j]
                    out[k] += a[i] * b[j] * extra
    return out


def _sign(c, levels: int) -> int:
    """Sign of an element of the subfield generated by the first ``levels`` square roots."""
    if levels == 0:
        x = c[0]
        return (x > 0) - (x < 0)
    half = 1 << (levels - 1)
    a = list(c[:half])
    b = list(c[half:2 * half])
    sa = _sign(a, levels - 1)
    sb = _sign(b, levels - 1)
    if sb == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb
    p = PRIMES[levels - 1]
    a2 = _sub_mul(a, a, levels - 1)
    b2 = _sub_mul(b, b, levels - 1)
    d = [x - p * y for x, y in zip(a2, b2)]
    return sa * _sign(d, levels - 1)


def two_cos_pi_over(m: int) -> QSqrt:
    """``2cos(π/m)`` for m in 2..6."""
    table = {
        2: QSqrt.of(0),
        3: QSqrt.of(1),
        4: QSqrt.of(0, sqrt2=1),
        5: QSqrt.of(Fraction(1, 2), sqrt5=Fraction(1, 2)),
        6: QSqrt.of(0, sqrt3=1),
    }
    try:
        return table[m]
    except KeyError:
        raise ValueError(f"Coxeter label {m} not supported (expected 2..6)") from None
