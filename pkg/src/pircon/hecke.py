"""
Hecke-module actions on the quotient of a dihedral group by one generator.

Take the dihedral group on ``s``, ``r`` with ``m(s, r) = d`` and ``H = {r}``.
The quotient ``W^H`` has one element ``w_p = ...srs`` (``p`` letters) of each
length ``p`` in ``0..d-1``. Module elements are coefficient vectors over
``Z[q, q^-1]`` on the basis ``m_{w_0}, ..., m_{w_{d-1}}``.

For a generator ``g`` the endomorphisms ``L_g`` and ``Gamma_g`` follow three
cases depending on whether ``g w`` is below ``w``, above ``w`` inside ``W^H``,
or above ``w`` outside ``W^H`` (the last case multiplies by ``x``).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .polynomial import LaurentPolynomial, parse_x

__all__ = ["DihedralModule", "verify_diagrams", "verify_hecke_relations", "GENERATORS"]

GENERATORS = ("s", "r")

Vector = tuple[LaurentPolynomial, ...]
Matrix = tuple[tuple[LaurentPolynomial, ...], ...]

_ZERO = LaurentPolynomial()
_ONE = LaurentPolynomial.constant(1)
_Q = LaurentPolynomial.q()


@dataclass(frozen=True)
class DihedralModule:
    """
    The module for ``m(s, r) = d`` and parameter ``x``.

    ``mutation`` deliberately corrupts one coefficient (``q`` becomes ``q - 1``
    in the down-move of ``L_s``); it exists only for negative controls.
    """

    d: int
    x: str = "q"
    mutation: bool = False

    def __post_init__(self):
        if self.d < 2:
            raise ValueError("d must be at least 2")
        object.__setattr__(self, "x", parse_x(self.x))

    @property
    def x_value(self) -> LaurentPolynomial:
        return _Q if self.x == "q" else LaurentPolynomial.constant(-1)

    # -- vectors

    def basis(self, p: int) -> Vector:
        return tuple(_ONE if i == p else _ZERO for i in range(self.d))

    def zero(self) -> Vector:
        return (_ZERO,) * self.d

    def vector(self, coeffs: dict[int, LaurentPolynomial]) -> Vector:
        return tuple(LaurentPolynomial._coerce(coeffs.get(i, _ZERO)) for i in range(self.d))

    # -- combinatorics of w_p

    def _left_letter(self, p: int) -> str | None:
        if p == 0:
            return None
        return "s" if p % 2 else "r"

    def _move(self, g: str, p: int) -> tuple[str, int]:
        """Where ``g w_p`` lands: ``("down", p-1)``, ``("up", p+1)`` or ``("out", p)``."""
        if g not in GENERATORS:
            raise ValueError(f"generator must be 's' or 'r', got {g!r}")
        if self._left_letter(p) == g:
            return "down", p - 1
        # g w_p is reduced of length p+1 and starts with g; it lies in W^H iff it
        # ends in s (true when g = s and p is even, or g = r and p is odd) and is
        # shorter than the longest element
        ends_in_s = (g == "s") == (p % 2 == 0)
        if ends_in_s and p + 1 <= self.d - 1:
            return "up", p + 1
        return "out", p

    def _image(self, g: str, p: int, gamma: bool) -> dict[int, LaurentPolynomial]:
        kind, t = self._move(g, p)
        if kind == "out":
            return {p: self.x_value}
        # L moves down with the quadratic term, Gamma moves up with it
        if (kind == "down") != gamma:
            lead = _Q - 1 if (self.mutation and g == "s" and not gamma) else _Q
            return {t: lead, p: _Q - 1}
        return {t: _ONE}

    def _apply(self, g: str, v: Sequence[LaurentPolynomial], gamma: bool) -> Vector:
        out = [_ZERO] * self.d
        for p, c in enumerate(v):
            if c.is_zero():
                continue
            for t, a in self._image(g, p, gamma).items():
                out[t] = out[t] + c * a
        return tuple(out)

    def act_L(self, g: str, v: Sequence[LaurentPolynomial]) -> Vector:
        return self._apply(g, v, gamma=False)

    def act_Gamma(self, g: str, v: Sequence[LaurentPolynomial]) -> Vector:
        return self._apply(g, v, gamma=True)

    def involution_I(self, v: Sequence[LaurentPolynomial]) -> Vector:
        return tuple(reversed(tuple(v)))

    def bar_generator(self, g: str) -> str:
        """``s̄`` and ``r̄``: unchanged for even ``d``, swapped for odd ``d``."""
        if self.d % 2 == 0:
            return g
        return "r" if g == "s" else "s"

    # -- matrices (column p is the image of m_{w_p})

    def matrix(self, op: str, g: str) -> Matrix:
        fn = {"L": self.act_L, "Gamma": self.act_Gamma}[op]
        cols = [fn(g, self.basis(p)) for p in range(self.d)]
        return tuple(tuple(cols[j][i] for j in range(self.d)) for i in range(self.d))

    def identity(self) -> Matrix:
        return tuple(self.basis(i) for i in range(self.d))


def matmul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = _ZERO
            for k in range(n):
                if not a[i][k].is_zero() and not b[k][j].is_zero():
                    acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def matadd(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def matscale(c: LaurentPolynomial, a: Matrix) -> Matrix:
    return tuple(tuple(c * x for x in row) for row in a)


def verify_diagrams(d: int, x: str = "q", mutation: bool = False) -> bool:
    """``I∘L_g = Gamma_{ḡ}∘I`` on every basis vector, for ``g = s, r``."""
    mod = DihedralModule(d, x, mutation)
    for g in GENERATORS:
        gb = mod.bar_generator(g)
        for p in range(d):
            e = mod.basis(p)
            if mod.involution_I(mod.act_L(g, e)) != mod.act_Gamma(gb, mod.involution_I(e)):
                return False
    return True


def braid_product(mod: DihedralModule, first: str, factors: int) -> Matrix:
    out = mod.identity()
    g = first
    for _ in range(factors):
        out = matmul(out, mod.matrix("Gamma", g))
        g = "r" if g == "s" else "s"
    return out


def verify_hecke_relations(d: int, x: str = "q", braid_length: int | None = None,
                           detail: bool = False):
    """
    Quadratic relation ``Gamma_g² = (q-1)Gamma_g + q`` for both generators and
    the braid relation with ``braid_length`` factors (default ``d``).

    With ``detail=True`` returns ``{"quadratic": bool, "braid": bool}``.
    """
    mod = DihedralModule(d, x)
    k = d if braid_length is None else braid_length
    quad = True
    for g in GENERATORS:
        G = mod.matrix("Gamma", g)
        rhs = matadd(matscale(_Q - 1, G), matscale(_Q, mod.identity()))
        quad = quad and matmul(G, G) == rhs
    braid = braid_product(mod, "s", k) == braid_product(mod, "r", k)
    if detail:
        return {"quadratic": quad, "braid": braid}
    return quad and braid
