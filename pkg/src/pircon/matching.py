"""
Special partial matchings of finite posets with a maximum.

A special partial matching (SPM) ``M`` of a poset ``P`` with top ``1`` is an
involution with ``M(1) ⋖ 1`` that moves every element along a Hasse edge or
fixes it, and such that ``x ⋖ y`` with ``M(x) != y`` forces ``M(x) < M(y)``.
A special matching is an SPM without fixed points.

This module validates and enumerates SPMs, classifies the orbits of the
group generated by two of them, and decides the coherence conditions and the
pircon / zircon / dircon properties built on top of them.
"""

from __future__ import annotations

import enum
import os
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from .poset import GradedPoset, is_dihedral_interval, order_ideal

__all__ = [
    "DEFAULT_BUDGET", "MatchingError", "NotInvolution", "TopNotMatchedDown",
    "NotAdjacent", "SpecialityViolated", "NotMatchedDown", "SizeLimitExceeded",
    "OrbitClassificationError", "SpecialPartialMatching", "OrbitKind", "Orbit",
    "validate_spm", "enumerate_spms", "restrict_spm", "orbits",
    "strictly_coherent", "s_coherent", "coherent", "is_pircon", "is_zircon",
    "is_dircon", "spms_of", "matching_from_json", "coherence_classes",
]

DEFAULT_BUDGET = int(os.environ.get("PIRCON_BUDGET", 10**7))


class MatchingError(ValueError):
    """A map fails one of the defining conditions of an SPM."""


class NotInvolution(MatchingError):
    pass


class TopNotMatchedDown(MatchingError):
    pass


class NotAdjacent(MatchingError):
    def __init__(self, x: str, y: str):
        super().__init__(f"{x!r} is sent to {y!r}, which is not a neighbour in the Hasse diagram")
        self.x = x
        self.y = y


class SpecialityViolated(MatchingError):
    def __init__(self, x: str, y: str, mx: str, my: str):
        super().__init__(f"{x!r} ⋖ {y!r} but M({x!r})={mx!r} is not below M({y!r})={my!r}")
        self.x, self.y = x, y


class NotMatchedDown(MatchingError):
    pass


class SizeLimitExceeded(RuntimeError):
    """An enumeration exceeded its node budget."""


class OrbitClassificationError(RuntimeError):
    """An orbit is neither dihedral nor chain-like (impossible for valid SPMs)."""


class SpecialPartialMatching:
    """An SPM of ``base``, stored as an image table aligned with ``base.elements``."""

    __slots__ = ("base", "_img", "_hash")

    def __init__(self, base: GradedPoset, img: Sequence[int]):
        self.base = base
        self._img = tuple(img)
        self._hash = None

    def __call__(self, x: str) -> str:
        return self.base.elements[self._img[self.base.index(x)]]

    @property
    def top(self) -> str:
        return self.base.top

    @property
    def image(self) -> tuple[int, ...]:
        return self._img

    def as_dict(self) -> dict[str, str]:
        e = self.base.elements
        return {e[i]: e[j] for i, j in enumerate(self._img)}

    def pairs(self) -> list[tuple[str, str]]:
        """Non-fixed pairs ``(x, M(x))``, each once, earlier element first."""
        e = self.base.elements
        return [(e[i], e[j]) for i, j in enumerate(self._img) if i < j]

    def fixed_points(self) -> list[str]:
        e = self.base.elements
        return [e[i] for i, j in enumerate(self._img) if i == j]

    def is_special_matching(self) -> bool:
        return all(i != j for i, j in enumerate(self._img))

    def moves_down(self, x: str) -> bool:
        i = self.base.index(x)
        return self.base._rank[self._img[i]] < self.base._rank[i]

    def moves_up(self, x: str) -> bool:
        i = self.base.index(x)
        return self.base._rank[self._img[i]] > self.base._rank[i]

    def to_json(self) -> dict:
        return {"map": dict(self.pairs())}

    def __eq__(self, other):
        if not isinstance(other, SpecialPartialMatching):
            return NotImplemented
        return self._img == other._img and self.base == other.base

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.base, self._img))
        return self._hash

    def __repr__(self):
        body = ", ".join(f"{a}↔{b}" for a, b in self.pairs())
        fixed = self.fixed_points()
        if fixed:
            body += "; fixed " + ", ".join(fixed)
        return f"SPM({body})"


# -- validation


def _first_violation(p: GradedPoset, img: Sequence[int]) -> MatchingError | None:
    e = p.elements
    n = len(e)
    for i in range(n):
        j = img[i]
        if img[j] != i:
            return NotInvolution(f"M(M({e[i]!r})) = {e[img[j]]!r} != {e[i]!r}")
    top = p.top
    if top is None:
        return MatchingError("poset has no maximum")
    t = p.index(top)
    if img[t] not in p._lower_covers[t]:
        return TopNotMatchedDown(f"M({top!r}) = {e[img[t]]!r} is not covered by the top")
    for i in range(n):
        j = img[i]
        if j != i and j not in p._lower_covers[i] and j not in p._upper_covers[i]:
            return NotAdjacent(e[i], e[j])
    up = p._up
    for x, y in p.covers:
        i, k = p._index[x], p._index[y]
        mi, mk = img[i], img[k]
        if mi != k and not (mi != mk and up[mi] >> mk & 1):
            return SpecialityViolated(x, y, e[mi], e[mk])
    return None


def validate_spm(p: GradedPoset, mapping: Mapping[str, str]) -> SpecialPartialMatching:
    """
    Check a map against the definition of an SPM and wrap it.

    ``mapping`` may list each pair in one or both directions; unlisted
    elements are fixed.
    """
    img = list(range(len(p)))
    for x, y in mapping.items():
        i, j = p.index(x), p.index(y)
        for a, b in ((i, j), (j, i)):
            if img[a] != a and img[a] != b:
                raise NotInvolution(
                    f"{p.elements[a]!r} is assigned to both {p.elements[img[a]]!r} and {p.elements[b]!r}")
        img[i] = j
        if i != j:
            if mapping.get(y, x) != x:
                raise NotInvolution(f"M({x!r})={y!r} but M({y!r})={mapping[y]!r}")
            img[j] = i
    err = _first_violation(p, img)
    if err is not None:
        raise err
    return SpecialPartialMatching(p, img)


def matching_from_json(p: GradedPoset, data: Mapping) -> SpecialPartialMatching:
    return validate_spm(p, data.get("map", data))


# -- enumeration


def _search(p: GradedPoset, fixed_points: bool, budget: int) -> Iterator[tuple[int, ...]]:
    n = len(p)
    rank = p._rank
    up = p._up
    lower, upper = p._lower_covers, p._upper_covers
    top = p.top
    if top is None:
        return
    order = sorted(range(n), key=lambda i: (-rank[i], i))
    img = [-1] * n
    nodes = 0

    def consistent(i: int) -> bool:
        mi = img[i]
        for j in lower[i]:
            mj = img[j]
            if mj != -1 and mj != i and not (mj != mi and up[mj] >> mi & 1):
                return False
        for j in upper[i]:
            mj = img[j]
            if mj != -1 and mi != j and not (mi != mj and up[mi] >> mj & 1):
                return False
        return True

    def rec(k: int):
        nonlocal nodes
        while k < n and img[order[k]] != -1:
            k += 1
        if k == n:
            yield tuple(img)
            return
        i = order[k]
        for j in lower[i]:
            if img[j] != -1:
                continue
            nodes += 1
            if nodes > budget:
                raise SizeLimitExceeded(f"SPM enumeration exceeded budget of {budget} nodes")
            img[i], img[j] = j, i
            if consistent(i) and consistent(j):
                yield from rec(k + 1)
            img[i] = img[j] = -1
        if fixed_points and k > 0:
            nodes += 1
            if nodes > budget:
                raise SizeLimitExceeded(f"SPM enumeration exceeded budget of {budget} nodes")
            img[i] = i
            if consistent(i):
                yield from rec(k + 1)
            img[i] = -1

    yield from rec(0)


def enumerate_spms(p: GradedPoset, budget: int | None = None, *,
                   fixed_points: bool = True, limit: int | None = None) -> list[SpecialPartialMatching]:
    """
    All SPMs of ``p`` (all special matchings if ``fixed_points`` is false).

    Backtracks over elements in decreasing rank; raises
    :class:`SizeLimitExceeded` after ``budget`` search nodes instead of
    returning a partial list. ``limit`` stops after that many results.
    """
    budget = DEFAULT_BUDGET if budget is None else budget
    out = []
    for img in _search(p, fixed_points, budget):
        out.append(SpecialPartialMatching(p, img))
        if limit is not None and len(out) >= limit:
            break
    return out


def spms_of(p: GradedPoset, w: str, budget: int | None = None, *,
            fixed_points: bool = True) -> list[SpecialPartialMatching]:
    """``SPM_w``: all SPMs of the ideal below ``w``, memoized on the ideal."""
    ideal = order_ideal(p, w)
    key = ("spms", fixed_points)
    if key not in ideal._cache:
        ideal._cache[key] = enumerate_spms(ideal, budget, fixed_points=fixed_points)
    return ideal._cache[key]


def restrict_spm(m: SpecialPartialMatching, z: str) -> SpecialPartialMatching:
    """Restriction of ``m`` to the ideal below ``z``; needs ``m(z) ⋖ z``."""
    p = m.base
    if not m.moves_down(z):
        raise NotMatchedDown(f"M({z!r}) = {m(z)!r} is not covered by {z!r}")
    if z == p.top:
        return m
    ideal = order_ideal(p, z)
    img = [ideal.index(m(x)) for x in ideal.elements]
    err = _first_violation(ideal, img)
    if err is not None:  # pragma: no cover - excluded by the lifting property
        raise err
    return SpecialPartialMatching(ideal, img)


# -- orbits and coherence


class OrbitKind(str, enum.Enum):
    DIHEDRAL = "dihedral"
    CHAIN = "chain-like"


@dataclass(frozen=True)
class Orbit:
    elements: tuple[str, ...]
    kind: OrbitKind
    rank: int
    bottom: str
    top: str


def _orbit_sets(m: SpecialPartialMatching, n: SpecialPartialMatching) -> list[list[int]]:
    size = len(m.base)
    seen = [False] * size
    out = []
    for start in range(size):
        if seen[start]:
            continue
        comp = []
        queue = [start]
        seen[start] = True
        while queue:
            i = queue.pop()
            comp.append(i)
            for j in (m._img[i], n._img[i]):
                if not seen[j]:
                    seen[j] = True
                    queue.append(j)
        out.append(sorted(comp))
    return out


def _classify(p: GradedPoset, m: SpecialPartialMatching, n: SpecialPartialMatching,
              comp: list[int]) -> Orbit:
    rank = p._rank
    e = p.elements
    ranks = [rank[i] for i in comp]
    lo, hi = min(ranks), max(ranks)
    tops = [i for i in comp if rank[i] == hi]
    bottoms = [i for i in comp if rank[i] == lo]
    if len(tops) != 1 or len(bottoms) != 1:
        raise OrbitClassificationError(f"orbit {[e[i] for i in comp]} lacks a unique top or bottom")
    z, b = tops[0], bottoms[0]
    names = tuple(e[i] for i in comp)
    r = hi - lo
    mi, ni = m._img, n._img
    if rank[mi[z]] < rank[z] and rank[ni[z]] < rank[z]:
        if any(mi[i] == i or ni[i] == i for i in comp) or len(comp) != 2 * r:
            raise OrbitClassificationError(f"orbit {names} is not dihedral")
        if r >= 2 and not is_dihedral_interval(p.subposet(names)):
            raise OrbitClassificationError(f"orbit {names} is not a dihedral interval")
        return Orbit(names, OrbitKind.DIHEDRAL, r, e[b], e[z])
    if len(comp) != r + 1 or len(set(ranks)) != len(comp):
        raise OrbitClassificationError(f"orbit {names} is not a chain")
    if not (b in (mi[b], ni[b]) and z in (mi[z], ni[z])):
        raise OrbitClassificationError(f"chain orbit {names} has unfixed extremes")
    return Orbit(names, OrbitKind.CHAIN, r, e[b], e[z])


def orbits(m: SpecialPartialMatching, n: SpecialPartialMatching) -> list[Orbit]:
    """Partition the common base of ``m`` and ``n`` into classified orbits."""
    if m.base != n.base:
        raise ValueError("matchings live on different posets")
    p = m.base
    return [_classify(p, m, n, comp) for comp in _orbit_sets(m, n)]


def strictly_coherent(m: SpecialPartialMatching, n: SpecialPartialMatching) -> bool:
    """Orbit ranks (plus one for chains) must divide the rank of the orbit of the top."""
    obs = orbits(m, n)
    top = m.base.top
    big = next(o.rank for o in obs if top in o.elements)
    for o in obs:
        d = o.rank if o.kind is OrbitKind.DIHEDRAL else o.rank + 1
        if big % d:
            return False
    return True


def s_coherent(m: SpecialPartialMatching, n: SpecialPartialMatching,
               pool: Iterable[SpecialPartialMatching]) -> bool:
    """True iff a path of pairwise strictly coherent SPMs from ``pool`` joins m and n."""
    if m == n:
        return True
    nodes = [k for k in dict.fromkeys(pool) if k.base == m.base]
    for k in (m, n):
        if k not in nodes:
            nodes.append(k)
    start, goal = nodes.index(m), nodes.index(n)
    seen = {start}
    queue = deque([start])
    while queue:
        i = queue.popleft()
        for j in range(len(nodes)):
            if j not in seen and strictly_coherent(nodes[i], nodes[j]):
                if j == goal:
                    return True
                seen.add(j)
                queue.append(j)
    return False


def coherent(m: SpecialPartialMatching, n: SpecialPartialMatching, budget: int | None = None) -> bool:
    return s_coherent(m, n, enumerate_spms(m.base, budget))


def coherence_classes(spms: Sequence[SpecialPartialMatching]) -> list[list[int]]:
    """Connected components of the strict-coherence graph on ``spms``."""
    k = len(spms)
    comp = [-1] * k
    classes = []
    for s in range(k):
        if comp[s] != -1:
            continue
        comp[s] = len(classes)
        members = [s]
        queue = [s]
        while queue:
            i = queue.pop()
            for j in range(k):
                if comp[j] == -1 and strictly_coherent(spms[i], spms[j]):
                    comp[j] = comp[s]
                    members.append(j)
                    queue.append(j)
        classes.append(sorted(members))
    return classes


# -- poset classes


def _non_minimal(p: GradedPoset) -> list[str]:
    return [x for x in p.elements if p.rank(x) > 0]


def is_pircon(p: GradedPoset, budget: int | None = None) -> bool:
    """Every ideal below a non-minimal element admits an SPM."""
    return all(enumerate_spms(order_ideal(p, x), budget, limit=1) for x in _non_minimal(p))


def is_zircon(p: GradedPoset, budget: int | None = None) -> bool:
    """Every ideal below a non-minimal element admits a special matching."""
    return all(enumerate_spms(order_ideal(p, x), budget, fixed_points=False, limit=1)
               for x in _non_minimal(p))


def is_dircon(p: GradedPoset, budget: int | None = None) -> bool:
    """A pircon in which any two SPMs of the same element are coherent."""
    if not is_pircon(p, budget):
        return False
    for w in _non_minimal(p):
        spms = spms_of(p, w, budget)
        if len(coherence_classes(spms)) > 1:
            return False
    return True
