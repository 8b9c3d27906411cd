"""
Incidence algebra of a graded poset over Z[q].

An incidence function assigns a polynomial to every pair ``u <= v``; pairs
with ``u`` not below ``v`` read as zero. The bar involution sends
``f_{u,v}(q)`` to ``q^{ρ(v)-ρ(u)} f_{u,v}(1/q)`` and is defined when every
entry has degree at most the rank gap. ``K`` is a P-kernel when
``K · bar(K) = δ``; its KLS polynomials are the unique ``f`` with
``f_{u,u} = 1``, ``deg f_{u,v} < gap/2`` for ``u < v`` and ``K · f = bar(f)``.
"""

from __future__ import annotations

from typing import Callable, Iterable, Iterator, Mapping

from .polynomial import IntPolynomial
from .poset import GradedPoset, poset_from_order

__all__ = [
    "KernelError", "BaseMismatch", "DegreeBoundViolated", "NotUnitary",
    "NotAKernel", "DegreeObstruction", "IncidenceFunction", "delta",
    "convolve", "bar", "kernel_defect", "is_kernel", "kls_polynomials",
    "solve_bar_identity", "poset_from_pairs",
]

_ZERO = IntPolynomial.zero()
_ONE = IntPolynomial.one()


class KernelError(ValueError):
    pass


class BaseMismatch(KernelError):
    pass


class DegreeBoundViolated(KernelError):
    def __init__(self, u: str, v: str, degree: int, bound: int):
        super().__init__(f"entry ({u}, {v}) has degree {degree} > rank gap {bound}")
        self.u, self.v = u, v


class NotUnitary(KernelError):
    pass


class NotAKernel(KernelError):
    def __init__(self, u: str, v: str):
        super().__init__(f"K·bar(K) differs from delta at ({u}, {v})")
        self.u, self.v = u, v


class DegreeObstruction(ArithmeticError):
    """The bar identity has no solution within the degree bound."""

    def __init__(self, u: str, v: str, detail: str = ""):
        super().__init__(f"no degree-bounded solution at ({u}, {v}){': ' + detail if detail else ''}")
        self.u, self.v = u, v


class IncidenceFunction:
    """Polynomials on the comparable pairs of ``base``."""

    def __init__(self, base: GradedPoset, entries: Mapping[tuple[str, str], IntPolynomial] | None = None):
        self.base = base
        self._entries: dict[tuple[str, str], IntPolynomial] = {}
        for (u, v), f in (entries or {}).items():
            if not base.leq(u, v):
                if not IntPolynomial._coerce(f).is_zero():
                    raise KernelError(f"nonzero entry on incomparable pair ({u}, {v})")
                continue
            self._entries[(u, v)] = IntPolynomial._coerce(f)

    @classmethod
    def from_function(cls, base: GradedPoset, fn: Callable[[str, str], IntPolynomial]) -> IncidenceFunction:
        return cls(base, {(u, v): fn(u, v) for u, v in base.comparable_pairs()})

    def __call__(self, u: str, v: str) -> IntPolynomial:
        return self._entries.get((u, v), _ZERO)

    get = __call__

    def gap(self, u: str, v: str) -> int:
        return self.base.rank(v) - self.base.rank(u)

    def items(self) -> Iterator[tuple[tuple[str, str], IntPolynomial]]:
        """Entries over all comparable pairs in poset order (missing ones as zero)."""
        for u, v in self.base.comparable_pairs():
            yield (u, v), self(u, v)

    def with_entry(self, u: str, v: str, f: IntPolynomial) -> IncidenceFunction:
        entries = dict(self._entries)
        entries[(u, v)] = f
        return self._rebuild(entries)

    def _rebuild(self, entries):
        return IncidenceFunction(self.base, entries)

    def is_unitary(self) -> bool:
        return all(self(u, u) == _ONE for u in self.base.elements)

    def degree_bounded(self) -> bool:
        return all(f.degree <= self.gap(u, v) for (u, v), f in self.items())

    def __eq__(self, other):
        if not isinstance(other, IncidenceFunction):
            return NotImplemented
        return self.base == other.base and dict(self.items()) == dict(other.items())

    def __repr__(self):
        return f"<{type(self).__name__} on {len(self.base)} elements>"

    def to_json(self) -> dict:
        return {"entries": [{"u": u, "w": v, "poly": f.to_list()} for (u, v), f in self.items()]}


def poset_from_pairs(elements: Iterable[str], pairs: Iterable[tuple[str, str]]) -> GradedPoset:
    """Recover a poset from its full list of comparable pairs ``u <= v``."""
    elements = list(dict.fromkeys(elements))
    below: dict[str, set] = {e: {e} for e in elements}
    for u, v in pairs:
        below[v].add(u)
    order = sorted(elements, key=lambda e: (len(below[e]), elements.index(e)))
    return poset_from_order(order, lambda a, b: a in below[b])


def delta(p: GradedPoset) -> IncidenceFunction:
    return IncidenceFunction(p, {(u, u): _ONE for u in p.elements})


def convolve(f: IncidenceFunction, g: IncidenceFunction) -> IncidenceFunction:
    """``(f·g)_{u,v} = Σ_{u<=z<=v} f_{u,z} g_{z,v}``."""
    if f.base != g.base:
        raise BaseMismatch("incidence functions live on different posets")
    p = f.base
    out = {}
    for u, v in p.comparable_pairs():
        acc = _ZERO
        for z in p.up_set(u):
            if p.leq(z, v):
                a = f(u, z)
                if not a.is_zero():
                    acc = acc + a * g(z, v)
        out[(u, v)] = acc
    return IncidenceFunction(p, out)


def bar(f: IncidenceFunction) -> IncidenceFunction:
    out = {}
    for (u, v), poly in f.items():
        n = f.gap(u, v)
        if poly.degree > n:
            raise DegreeBoundViolated(u, v, poly.degree, n)
        out[(u, v)] = poly.reciprocal(n)
    return f._rebuild(out)


def kernel_defect(K: IncidenceFunction) -> tuple[str, str] | None:
    """First pair where ``K·bar(K)`` differs from δ, or ``None``."""
    if not K.is_unitary():
        bad = next(u for u in K.base.elements if K(u, u) != _ONE)
        raise NotUnitary(f"K({bad}, {bad}) = {K(bad, bad)} is not 1")
    prod = convolve(K, bar(K))
    for (u, v), f in prod.items():
        if f != (_ONE if u == v else _ZERO):
            return (u, v)
    return None


def is_kernel(K: IncidenceFunction) -> bool:
    return kernel_defect(K) is None


def _pairs_by_gap(p: GradedPoset) -> list[tuple[str, str]]:
    return sorted(((u, v) for u, v in p.comparable_pairs() if u != v),
                  key=lambda t: p.rank(t[1]) - p.rank(t[0]))


def solve_bar_identity(u: str, v: str, n: int, g: IntPolynomial) -> IntPolynomial:
    """
    Find ``f`` with ``deg f < n/2`` and ``q^n f(1/q) - f = g``.

    The reflected part of ``g`` (degrees above ``n/2``) fixes ``f``; the rest
    of ``g`` must then agree, otherwise :class:`DegreeObstruction`.
    """
    if g.degree > n:
        raise DegreeObstruction(u, v, f"known part has degree {g.degree} > {n}")
    coeffs = [g[n - i] for i in range((n + 1) // 2)]
    f = IntPolynomial(coeffs)
    if f.reciprocal(n) - f != g:
        raise DegreeObstruction(u, v, "low-degree coefficients disagree with the reflected ones")
    return f


def kls_polynomials(K: IncidenceFunction) -> IncidenceFunction:
    """The KLS polynomials of a P-kernel ``K``, by induction on the rank gap."""
    bad = kernel_defect(K)
    if bad is not None:
        raise NotAKernel(*bad)
    p = K.base
    f: dict[tuple[str, str], IntPolynomial] = {(u, u): _ONE for u in p.elements}
    for u, v in _pairs_by_gap(p):
        # (K·f)_{u,v} = f_{u,v} + Σ_{u<z<=v} K_{u,z} f_{z,v} must equal bar(f)_{u,v}
        g = _ZERO
        for z in p.up_set(u):
            if z != u and p.leq(z, v):
                g = g + K(u, z) * f[(z, v)]
        f[(u, v)] = solve_bar_identity(u, v, p.rank(v) - p.rank(u), g)
    return IncidenceFunction(p, f)
