"""
Bruhat intervals, parabolic quotients and the matchings that live on them.

Posets built here use ``W.name(u)`` as element ids, so ``W.parse`` recovers
the group element from a poset id.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from ..matching import SpecialPartialMatching, enumerate_spms, validate_spm
from ..poset import GradedPoset, NotComparable, build_poset, order_ideal, poset_from_order
from .groups import CoxeterError, CoxeterGroup, NotDescent, SymmetricGroup

__all__ = [
    "NotMinimalCosetRep", "NotHSpecial", "length", "descents", "bruhat_leq",
    "bruhat_interval", "parabolic_interval", "coset_decompose",
    "left_mult_matching", "is_h_special", "enumerate_h_special", "project_mh",
    "TwistedIdentityPoset", "twisted_identities", "conjugation_spm",
]


class NotMinimalCosetRep(CoxeterError):
    pass


class NotHSpecial(CoxeterError):
    pass


def length(W: CoxeterGroup, u) -> int:
    return W.length(u)


def descents(W: CoxeterGroup, u, side: str = "R") -> tuple[str, ...]:
    return W.descents(u, side)


def bruhat_leq(W: CoxeterGroup, u, v) -> bool:
    return W.bruhat_leq(u, v)


def _sorted(W: CoxeterGroup, elems: Iterable) -> list:
    return sorted(elems, key=W.sort_key)


def bruhat_interval(W: CoxeterGroup, u, v) -> GradedPoset:
    """``[u, v]`` in Bruhat order; covers are the comparable pairs of adjacent length."""
    if not W.bruhat_leq(u, v):
        raise NotComparable(f"{W.name(u)} is not below {W.name(v)}")
    elems = _sorted(W, (z for z in W.lower_interval(v) if W.bruhat_leq(u, z)))
    names = [W.name(z) for z in elems]
    by_len: dict[int, list[int]] = {}
    for i, z in enumerate(elems):
        by_len.setdefault(W.length(z), []).append(i)
    covers = []
    for j, z in enumerate(elems):
        for i in by_len.get(W.length(z) - 1, ()):
            if W.bruhat_leq(elems[i], z):
                covers.append((names[i], names[j]))
    return build_poset(names, covers)


def _check_quotient(W: CoxeterGroup, w, H) -> None:
    if not W.in_quotient(w, H):
        raise NotMinimalCosetRep(f"{W.name(w)} has a right descent in {sorted(H)}")


def parabolic_interval(W: CoxeterGroup, w, H: Iterable[str]) -> GradedPoset:
    """``[e, w]^H``, the elements of the quotient ``W^H`` below ``w``, with covers recomputed."""
    H = tuple(H)
    _check_quotient(W, w, H)
    elems = _sorted(W, (z for z in W.lower_interval(w) if W.in_quotient(z, H)))
    names = {W.name(z): z for z in elems}
    return poset_from_order(list(names), lambda a, b: W.bruhat_leq(names[a], names[b]))


def coset_decompose(W: CoxeterGroup, w, J: Iterable[str], side: str = "right"):
    """
    Factor ``w`` through the parabolic subgroup ``W_J``.

    ``side="right"`` returns ``(w^J, w_J)`` with ``w = w^J w_J``;
    ``side="left"`` returns ``(^J w, w_J)`` with ``w = w_J ^J w``.
    Lengths add in both cases.
    """
    J = set(J)
    u = w
    stripped = []
    if side == "right":
        while True:
            s = next((g for g in W.right_descents(u) if g in J), None)
            if s is None:
                break
            stripped.append(s)
            u = W.rmul(u, s)
        return u, W.from_word(reversed(stripped))
    if side == "left":
        while True:
            s = next((g for g in W.left_descents(u) if g in J), None)
            if s is None:
                break
            stripped.append(s)
            u = W.lmul(s, u)
        return u, W.from_word(stripped)
    raise ValueError("side must be 'left' or 'right'")


def left_mult_matching(W: CoxeterGroup, s: str, w, poset: GradedPoset | None = None) -> SpecialPartialMatching:
    """The special matching ``u ↦ su`` of ``[e, w]``; ``s`` must be a left descent of ``w``."""
    if s not in W.left_descents(w):
        raise NotDescent(f"{s} is not a left descent of {W.name(w)}")
    p = poset if poset is not None else bruhat_interval(W, W.identity, w)
    mapping = {x: W.name(W.lmul(s, W.parse(x))) for x in p.elements}
    return validate_spm(p, mapping)


def is_h_special(W: CoxeterGroup, m: SpecialPartialMatching, H: Iterable[str]) -> bool:
    """Whenever ``u ∈ W^H`` is matched down, its partner is in ``W^H`` too."""
    H = tuple(H)
    for x in m.base.elements:
        if m.moves_down(x):
            if W.in_quotient(W.parse(x), H) and not W.in_quotient(W.parse(m(x)), H):
                return False
    return True


def enumerate_h_special(W: CoxeterGroup, w, H: Iterable[str], budget: int | None = None,
                        poset: GradedPoset | None = None) -> list[SpecialPartialMatching]:
    """H-special matchings of ``[e, w]``, filtered from all special matchings."""
    H = tuple(H)
    _check_quotient(W, w, H)
    p = poset if poset is not None else bruhat_interval(W, W.identity, w)
    return [m for m in enumerate_spms(p, budget, fixed_points=False) if is_h_special(W, m, H)]


def project_mh(W: CoxeterGroup, m: SpecialPartialMatching, H: Iterable[str],
               quotient: GradedPoset | None = None) -> SpecialPartialMatching:
    """``M^H`` on ``[e, w]^H``: follow ``M`` when it stays in ``W^H``, otherwise fix."""
    H = tuple(H)
    if not m.is_special_matching() or not is_h_special(W, m, H):
        raise NotHSpecial("matching is not an H-special matching")
    top = W.parse(m.base.top)
    q = quotient if quotient is not None else parabolic_interval(W, top, H)
    mapping = {}
    for x in q.elements:
        y = m(x)
        mapping[x] = y if W.in_quotient(W.parse(y), H) else x
    return validate_spm(q, mapping)


# -- twisted identities


@dataclass
class TwistedIdentityPoset:
    """The twisted identities of ``S_{2n}`` with the induced Bruhat order."""

    n: int
    group: SymmetricGroup
    poset: GradedPoset
    perms: dict = field(repr=False)

    def theta(self, s: str) -> str:
        i = self.group.gen_index(s)
        return f"s{2 * self.n - i}"

    def star(self, x: str, s: str) -> str:
        """``x ∗ s = θ(s) x s`` on poset ids."""
        W = self.group
        return W.name(W.lmul(self.theta(s), W.rmul(self.perms[x], s)))


def _theta_perm(u: tuple) -> tuple:
    # conjugation by the longest element: i ↦ N+1-i on positions and values
    N = len(u)
    return tuple(N + 1 - u[N - i] for i in range(1, N + 1))


def twisted_identities(n: int) -> TwistedIdentityPoset:
    """``ι = {θ(w⁻¹)w}`` in ``S_{2n}``, with ``θ(s_i) = s_{2n-i}``."""
    W = SymmetricGroup(2 * n)
    found = {W.mul(_theta_perm(W.inverse(w)), w) for w in W.elements()}
    elems = _sorted(W, found)
    perms = {W.name(z): z for z in elems}
    poset = poset_from_order(list(perms), lambda a, b: W.bruhat_leq(perms[a], perms[b]))
    return TwistedIdentityPoset(n, W, poset, perms)


def conjugation_spm(iota: TwistedIdentityPoset, w: str, s: str) -> SpecialPartialMatching:
    """The SPM ``x ↦ θ(s)xs`` of the ideal of ``ι`` below ``w``; ``s`` must be a right descent of ``w``."""
    W = iota.group
    if s not in W.right_descents(iota.perms[w]):
        raise NotDescent(f"{s} is not a right descent of {w}")
    ideal = order_ideal(iota.poset, w)
    return validate_spm(ideal, {x: iota.star(x, s) for x in ideal.elements})
