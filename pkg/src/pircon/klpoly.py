"""
Kazhdan-Lusztig R^x-polynomials.

A refined pircon fixes one SPM ``M_w`` for each non-minimal ``w``. The table
is built by increasing rank of ``w``: with ``z = M_w(w)``,

* ``R_{u,w} = R_{M(u),z}`` if ``M(u) ⋖ u``,
* ``R_{u,w} = (q-1)R_{u,z} + q R_{M(u),z}`` if ``u ⋖ M(u)``,
* ``R_{u,w} = (q-1-x) R_{u,z}`` if ``M(u) = u``,

with ``R_{w,w} = 1`` and zero off the order. ``x`` is ``q`` or ``-1``, so the
factor ``q-1-x`` is ``-1`` or ``q``.

The same file holds the Coxeter-side recursions: parabolic R and P
polynomials of a quotient, and the R/Q polynomials on twisted identities.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .coxeter import CoxeterGroup, TwistedIdentityPoset, twisted_identities
from .coxeter.intervals import _check_quotient, parabolic_interval
from .kernel import DegreeObstruction, IncidenceFunction, poset_from_pairs
from .matching import (SpecialPartialMatching, is_pircon, matching_from_json,
                       restrict_spm, s_coherent, spms_of)
from .polynomial import IntPolynomial, parse_x
from .poset import GradedPoset, order_ideal

__all__ = [
    "RefinementIncomplete", "NotAPirconSystem", "RefinedPircon", "RTable",
    "r_polynomials", "is_calculating", "calculating_defect", "restriction_closure",
    "check_pircon_system", "refinement_invariance", "random_refinement",
    "parabolic_r", "parabolic_p", "klv_polynomials", "check_relazione",
    "fixed_factor",
]

_ZERO = IntPolynomial.zero()
_ONE = IntPolynomial.one()
_Q = IntPolynomial.q()
_QM1 = IntPolynomial((-1, 1))


class RefinementIncomplete(ValueError):
    pass


class NotAPirconSystem(ValueError):
    def __init__(self, condition: int, witness, detail: str = ""):
        super().__init__(f"pircon-system condition {condition} fails at {witness}"
                         + (f": {detail}" if detail else ""))
        self.condition = condition
        self.witness = witness


def fixed_factor(x: str) -> IntPolynomial:
    """``q - 1 - x``: ``-1`` for ``x = q`` and ``q`` for ``x = -1``."""
    return IntPolynomial.constant(-1) if parse_x(x) == "q" else _Q


class RTable(IncidenceFunction):
    """An incidence function tagged with the parameter ``x``."""

    def __init__(self, base: GradedPoset, x: str, entries=None):
        super().__init__(base, entries)
        self.x = parse_x(x)

    def _rebuild(self, entries):
        return RTable(self.base, self.x, entries)

    def __eq__(self, other):
        if isinstance(other, RTable) and other.x != self.x:
            return False
        return super().__eq__(other)

    __hash__ = None

    def to_json(self) -> dict:
        return {"x": self.x, **super().to_json()}

    @classmethod
    def from_json(cls, data: Mapping, base: GradedPoset | None = None) -> RTable:
        rows = data["entries"]
        if base is None:
            elements = []
            for r in rows:
                elements += [r["u"], r["w"]]
            base = poset_from_pairs(elements, [(r["u"], r["w"]) for r in rows])
        return cls(base, data.get("x", "q"),
                   {(r["u"], r["w"]): IntPolynomial(r["poly"]) for r in rows})


@dataclass
class RefinedPircon:
    """A poset with one chosen SPM of ``P_{<=v}`` for each non-minimal ``v``."""

    base: GradedPoset
    refinement: dict[str, SpecialPartialMatching] = field(repr=False)

    def __post_init__(self):
        need = [v for v in self.base.elements if self.base.rank(v) > 0]
        missing = [v for v in need if v not in self.refinement]
        if missing:
            raise RefinementIncomplete(f"no matching chosen for {missing}")
        extra = [v for v in self.refinement if v not in need]
        if extra:
            raise RefinementIncomplete(f"matchings given for minimal or unknown elements {extra}")
        for v in need:
            m = self.refinement[v]
            if m.base.top != v or m.base.elements != order_ideal(self.base, v).elements:
                raise RefinementIncomplete(f"matching chosen for {v!r} is not an SPM of its ideal")

    def __getitem__(self, v: str) -> SpecialPartialMatching:
        return self.refinement[v]

    @classmethod
    def from_json(cls, base: GradedPoset, data: Mapping) -> RefinedPircon:
        """``{"v": {"map": {...}}, ...}``, one entry per non-minimal element."""
        return cls(base, {v: matching_from_json(order_ideal(base, v), m) for v, m in data.items()})

    def to_json(self) -> dict:
        return {v: self.refinement[v].to_json() for v in self.base.elements if v in self.refinement}


def _step(m: SpecialPartialMatching, u: str, table, fixed: IntPolynomial) -> IntPolynomial:
    """Right-hand side of the recursion for ``R_{u,w}`` using ``m`` on the ideal of ``w``."""
    z = m(m.top)
    mu = m(u)
    p = m.base
    if p.rank(mu) < p.rank(u):
        return table(mu, z)
    if p.rank(mu) > p.rank(u):
        return _QM1 * table(u, z) + _Q * table(mu, z)
    return fixed * table(u, z)


def r_polynomials(rp: RefinedPircon, x: str = "q") -> RTable:
    """The R^x table of ``rp``, computed rank by rank."""
    x = parse_x(x)
    p = rp.base
    fixed = fixed_factor(x)
    entries: dict[tuple[str, str], IntPolynomial] = {}

    def get(u, v):
        return entries.get((u, v), _ZERO)

    for w in sorted(p.elements, key=p.rank):
        entries[(w, w)] = _ONE
        if p.rank(w) == 0:
            continue
        m = rp[w]
        for u in p.down_set(w):
            if u != w:
                entries[(u, w)] = _step(m, u, get, fixed)
    return RTable(p, x, entries)


def calculating_defect(table: RTable, m: SpecialPartialMatching) -> str | None:
    """First ``u`` where ``m`` fails the three-case identity against ``table``."""
    fixed = fixed_factor(table.x)
    w = m.top
    for u in m.base.elements:
        if u != w and table(u, w) != _step(m, u, table, fixed):
            return u
    return None


def is_calculating(rp_or_table, w: str, m: SpecialPartialMatching, x: str | None = None) -> bool:
    """Does ``m`` (an SPM of ``w``) reproduce the R^x table of the refined pircon?"""
    if isinstance(rp_or_table, RefinedPircon):
        table = r_polynomials(rp_or_table, "q" if x is None else x)
    else:
        table = rp_or_table
        if x is not None and parse_x(x) != table.x:
            raise ValueError("table was computed for a different x")
    if m.top != w:
        raise ValueError(f"matching is not an SPM of {w!r}")
    return calculating_defect(table, m) is None


# -- pircon systems


def _group_by_top(spms: Iterable[SpecialPartialMatching]) -> dict[str, list[SpecialPartialMatching]]:
    out: dict[str, list[SpecialPartialMatching]] = {}
    for m in spms:
        lst = out.setdefault(m.top, [])
        if m not in lst:
            lst.append(m)
    return out


def restriction_closure(spms: Iterable[SpecialPartialMatching]) -> list[SpecialPartialMatching]:
    """Add the restriction of each ``M`` to every ideal below a ``z`` that ``M`` moves down."""
    out: list[SpecialPartialMatching] = []
    seen = set()
    for m in spms:
        for z in m.base.elements:
            if m.moves_down(z):
                r = restrict_spm(m, z)
                if r not in seen:
                    seen.add(r)
                    out.append(r)
    return out


def check_pircon_system(p: GradedPoset, S: Sequence[SpecialPartialMatching],
                        budget: int | None = None) -> None:
    """
    Raise :class:`NotAPirconSystem` unless

    1. ``p`` is a pircon,
    2. every member of ``S`` is an SPM of an ideal of a non-minimal element,
    3. every non-minimal ``w`` is moved down by some member of ``S``,
    4. any two members moving ``w`` down restrict to ``S``-coherent SPMs of ``w``.

    Coherence paths in 4 may use restrictions of members of ``S``.
    """
    if not is_pircon(p, budget):
        raise NotAPirconSystem(1, None, "not a pircon")
    for m in S:
        v = m.top
        if v not in p or p.rank(v) == 0 or m.base != order_ideal(p, v):
            raise NotAPirconSystem(2, m, "not an SPM of an ideal of the poset")
    closure = _group_by_top(restriction_closure(S))
    for w in p.elements:
        if p.rank(w) == 0:
            continue
        movers = closure.get(w, [])
        if not movers:
            raise NotAPirconSystem(3, w, "no member moves it down")
        for i, m in enumerate(movers):
            for n in movers[i + 1:]:
                if not s_coherent(m, n, movers):
                    raise NotAPirconSystem(4, (w, m, n), "restrictions are not coherent")


def _canonical_refinement(p: GradedPoset, by_top: Mapping[str, list[SpecialPartialMatching]]) -> RefinedPircon:
    return RefinedPircon(p, {w: by_top[w][0] for w in p.elements if p.rank(w) > 0})


def refinement_invariance(p: GradedPoset, S: Sequence[SpecialPartialMatching], x: str = "q",
                          budget: int | None = None) -> bool:
    """
    Whether every refinement drawn from ``S`` gives the same R^x table.

    All refinements agree iff every member of ``S`` calculates the table of
    one fixed refinement: a refinement's table is determined rank by rank, and
    swapping in a non-calculating matching at ``w`` changes the entries at ``w``.
    """
    check_pircon_system(p, S, budget)
    by_top = _group_by_top(S)
    missing = [w for w in p.elements if p.rank(w) > 0 and w not in by_top]
    if missing:
        # condition 3 can be met through restrictions alone; then no refinement is drawn from S
        raise NotAPirconSystem(3, missing[0], "no member of S is an SPM of this element")
    table = r_polynomials(_canonical_refinement(p, by_top), x)
    return all(calculating_defect(table, m) is None for lst in by_top.values() for m in lst)


def random_refinement(p: GradedPoset, S: Sequence[SpecialPartialMatching] | None,
                      rng: random.Random) -> RefinedPircon:
    """A refinement choosing uniformly from ``S`` (or all SPMs) at each element."""
    by_top = _group_by_top(S) if S is not None else {}
    choice = {}
    for w in p.elements:
        if p.rank(w) == 0:
            continue
        pool = by_top.get(w) if S is not None else spms_of(p, w)
        if not pool:
            raise RefinementIncomplete(f"no candidate matching for {w!r}")
        choice[w] = rng.choice(pool)
    return RefinedPircon(p, choice)


# -- parabolic Kazhdan-Lusztig polynomials


def parabolic_r(W: CoxeterGroup, H: Iterable[str], w, x: str = "q",
                quotient: GradedPoset | None = None) -> RTable:
    """
    Parabolic R^{H,x} on ``[e, w]^H``: for ``u < v`` pick the first left
    descent ``s`` of ``v``; then ``R_{su,sv}`` if ``s`` is a left descent of
    ``u``, ``(q-1)R_{u,sv} + qR_{su,sv}`` if ``su ∈ W^H``, and
    ``(q-1-x)R_{u,sv}`` otherwise.
    """
    H = tuple(H)
    x = parse_x(x)
    _check_quotient(W, w, H)
    Q = quotient if quotient is not None else parabolic_interval(W, w, H)
    fixed = fixed_factor(x)
    elem = {name: W.parse(name) for name in Q.elements}
    entries: dict[tuple[str, str], IntPolynomial] = {}

    def R(a, b):
        return entries.get((W.name(a), W.name(b)), _ZERO) if W.bruhat_leq(a, b) else _ZERO

    for vn in sorted(Q.elements, key=Q.rank):
        v = elem[vn]
        entries[(vn, vn)] = _ONE
        if W.length(v) == 0:
            continue
        s = W.left_descents(v)[0]
        sv = W.lmul(s, v)
        for un in Q.down_set(vn):
            if un == vn:
                continue
            u = elem[un]
            su = W.lmul(s, u)
            if s in W.left_descents(u):
                val = R(su, sv)
            elif W.in_quotient(su, H):
                val = _QM1 * R(u, sv) + _Q * R(su, sv)
            else:
                val = fixed * R(u, sv)
            entries[(un, vn)] = val
    return RTable(Q, x, entries)


def parabolic_p(W: CoxeterGroup, H: Iterable[str], w, x: str = "q",
                r_table: RTable | None = None) -> IncidenceFunction:
    """
    Parabolic P^{H,x} on ``[e, w]^H`` from
    ``q^{ℓ(v)-ℓ(u)} P_{u,v}(1/q) = Σ_{u<=z<=v} R_{u,z} P_{z,v}``.

    Writing ``g`` for the sum over ``z > u``, the identity reads
    ``bar(P) - P = g``; the degree bound puts all of ``P`` in degrees below
    half the gap, so ``P_i = -g_i`` there and the upper half of ``g`` must be
    the mirror image.
    """
    H = tuple(H)
    R = r_table if r_table is not None else parabolic_r(W, H, w, x)
    Q = R.base
    P: dict[tuple[str, str], IntPolynomial] = {(u, u): _ONE for u in Q.elements}
    pairs = [(u, v) for u, v in Q.comparable_pairs() if u != v]
    pairs.sort(key=lambda t: Q.rank(t[1]) - Q.rank(t[0]))
    for u, v in pairs:
        n = Q.rank(v) - Q.rank(u)
        g = _ZERO
        for z in Q.up_set(u):
            if z != u and Q.leq(z, v):
                g = g + R(u, z) * P[(z, v)]
        low = IntPolynomial([-g[i] for i in range((n + 1) // 2)])
        if low.reciprocal(n) - low != g:
            raise DegreeObstruction(u, v, "parabolic identity has no degree-bounded solution")
        P[(u, v)] = low
    return IncidenceFunction(Q, P)


# -- twisted identities


def klv_polynomials(n: int, variant: str = "R", iota: TwistedIdentityPoset | None = None) -> RTable:
    """
    R (``variant="R"``) or Q (``variant="Q"``) polynomials on the twisted
    identities of ``S_{2n}``, with ``x ∗ s = θ(s) x s`` and ``s`` the first
    right descent of ``w``. The fixed case multiplies by ``-1`` for R and by
    ``q`` for Q; the table is tagged ``x = q`` and ``x = -1`` respectively.
    """
    variant = variant.upper()
    if variant not in ("R", "Q"):
        raise ValueError("variant must be 'R' or 'Q'")
    io = iota if iota is not None else twisted_identities(n)
    W, P = io.group, io.poset
    fixed = IntPolynomial.constant(-1) if variant == "R" else _Q
    entries: dict[tuple[str, str], IntPolynomial] = {}

    def R(a, b):
        return entries.get((a, b), _ZERO)

    for wn in sorted(P.elements, key=P.rank):
        entries[(wn, wn)] = _ONE
        w = io.perms[wn]
        if W.length(w) == 0:
            continue
        s = W.right_descents(w)[0]
        ws = io.star(wn, s)
        for un in P.down_set(wn):
            if un == wn:
                continue
            us = io.star(un, s)
            lu, lus = W.length(io.perms[un]), W.length(io.perms[us])
            if us == un:
                val = fixed * R(un, ws)
            elif lus < lu:
                val = R(us, ws)
            else:
                val = _QM1 * R(un, ws) + _Q * R(us, ws)
            entries[(un, wn)] = val
    return RTable(P, "q" if variant == "R" else "-1", entries)


# -- consistency between the two parameters


def check_relazione(rq: RTable, rm: RTable) -> list[tuple[str, str, str]]:
    """
    Violations of: ``deg R^{-1}_{u,w} = gap``; ``R^q_{u,w}(0) = (-1)^gap``;
    ``R^{-1}_{u,w}(q) = (-q)^gap R^q_{u,w}(1/q)``. Each violation is
    ``(u, w, claim)`` with claim ``"degree"``, ``"constant"`` or ``"reciprocity"``.
    """
    if rq.x != "q" or rm.x != "-1":
        raise ValueError("expected an x=q table and an x=-1 table")
    if rq.base != rm.base:
        raise ValueError("tables live on different posets")
    out = []
    for (u, w), a in rq.items():
        b = rm(u, w)
        n = rq.gap(u, w)
        if b.degree != n:
            out.append((u, w, "degree"))
        if a(0) != (-1) ** n:
            out.append((u, w, "constant"))
        if a.degree > n or b != a.reciprocal(n) * ((-1) ** n):
            out.append((u, w, "reciprocity"))
    return out
