"""
Finite graded posets given by their Hasse diagram.

Elements are opaque string ids kept in input order; every algorithm in the
package iterates in that order so results are reproducible. The order
relation is answered from a reachability table of Python-int bitsets.

>>> p = build_poset(["0", "a", "b", "1"], [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])
>>> [p.rank(x) for x in p.elements]
[0, 1, 1, 2]
>>> p.leq("a", "b"), p.leq("0", "1")
(False, True)
"""

from __future__ import annotations

from collections import deque
from typing import Callable, Iterable, Sequence

__all__ = [
    "PosetError", "CycleDetected", "NotGraded", "NoMinimum", "UnknownId",
    "NotComparable", "RedundantCover", "GradedPoset", "build_poset",
    "poset_from_order", "leq", "order_ideal", "interval", "is_dihedral_interval",
]


class PosetError(ValueError):
    """Base class for malformed posets and bad queries."""


class CycleDetected(PosetError):
    pass


class NotGraded(PosetError):
    pass


class NoMinimum(PosetError):
    pass


class UnknownId(PosetError, KeyError):
    def __str__(self):
        return ValueError.__str__(self)


class NotComparable(PosetError):
    pass


class RedundantCover(PosetError):
    """A listed cover is implied by a longer chain of covers."""


class GradedPoset:
    """
    Finite graded poset with a minimum, stored as its cover relation.

    Construct with :func:`build_poset`; instances are immutable.
    """

    __slots__ = ("elements", "covers", "_index", "_rank", "_up", "_down",
                 "_upper_covers", "_lower_covers", "_hash", "_cache")

    def __init__(self, elements, covers, index, rank, up, down, upper_covers, lower_covers):
        self.elements: tuple[str, ...] = elements
        self.covers: tuple[tuple[str, str], ...] = covers
        self._index: dict[str, int] = index
        self._rank: tuple[int, ...] = rank
        # bitsets: bit j of _up[i] set iff elements[i] <= elements[j]
        self._up: tuple[int, ...] = up
        self._down: tuple[int, ...] = down
        self._upper_covers: tuple[tuple[int, ...], ...] = upper_covers
        self._lower_covers: tuple[tuple[int, ...], ...] = lower_covers
        self._hash = None
        # memo for derived objects (ideals, matching lists); filled idempotently
        self._cache: dict = {}

    # -- basic queries

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return x in self._index

    def __eq__(self, other):
        if not isinstance(other, GradedPoset):
            return NotImplemented
        return self.elements == other.elements and self.covers == other.covers

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.elements, self.covers))
        return self._hash

    def __repr__(self):
        return f"<GradedPoset |P|={len(self)} rank={self.height}>"

    def index(self, x: str) -> int:
        try:
            return self._index[x]
        except KeyError:
            raise UnknownId(f"unknown element {x!r}") from None

    def rank(self, x: str) -> int:
        return self._rank[self.index(x)]

    @property
    def ranks(self) -> dict[str, int]:
        return dict(zip(self.elements, self._rank))

    @property
    def height(self) -> int:
        return max(self._rank)

    @property
    def bottom(self) -> str:
        return self.elements[self._rank.index(0)]

    @property
    def top(self) -> str | None:
        """The maximum element, or ``None`` if there is none."""
        maximal = [i for i, ups in enumerate(self._upper_covers) if not ups]
        return self.elements[maximal[0]] if len(maximal) == 1 else None

    def leq(self, x: str, y: str) -> bool:
        return bool(self._up[self.index(x)] >> self.index(y) & 1)

    def lt(self, x: str, y: str) -> bool:
        return x != y and self.leq(x, y)

    def covered_by(self, x: str, y: str) -> bool:
        """True iff ``x ⋖ y``."""
        j = self.index(y)
        return j in self._upper_covers[self.index(x)]

    def upper_covers(self, x: str) -> list[str]:
        return [self.elements[j] for j in self._upper_covers[self.index(x)]]

    def lower_covers(self, x: str) -> list[str]:
        return [self.elements[j] for j in self._lower_covers[self.index(x)]]

    def down_set(self, x: str) -> list[str]:
        """Elements ``y <= x`` in poset order."""
        bits = self._down[self.index(x)]
        return [e for i, e in enumerate(self.elements) if bits >> i & 1]

    def up_set(self, x: str) -> list[str]:
        bits = self._up[self.index(x)]
        return [e for i, e in enumerate(self.elements) if bits >> i & 1]

    def rank_levels(self) -> list[list[str]]:
        levels: list[list[str]] = [[] for _ in range(self.height + 1)]
        for e, r in zip(self.elements, self._rank):
            levels[r].append(e)
        return levels

    def comparable_pairs(self) -> list[tuple[str, str]]:
        """All ``(u, v)`` with ``u <= v``, in element order."""
        out = []
        for i, u in enumerate(self.elements):
            bits = self._up[i]
            out.extend((u, v) for j, v in enumerate(self.elements) if bits >> j & 1)
        return out

    def subposet(self, keep: Iterable[str]) -> GradedPoset:
        """Induced subposet on a convex subset (covers are inherited)."""
        keep_set = set(keep)
        elems = [e for e in self.elements if e in keep_set]
        covers = [(a, b) for a, b in self.covers if a in keep_set and b in keep_set]
        return build_poset(elems, covers)

    def to_json(self) -> dict:
        return {"elements": list(self.elements), "covers": [list(c) for c in self.covers]}

    @classmethod
    def from_json(cls, data: dict) -> GradedPoset:
        return build_poset(data["elements"], [tuple(c) for c in data["covers"]])


def build_poset(elements: Sequence[str], covers: Iterable[Sequence[str]]) -> GradedPoset:
    """
    Validate a Hasse diagram and return the graded poset it describes.

    Raises :class:`UnknownId`, :class:`CycleDetected`, :class:`RedundantCover`,
    :class:`NoMinimum` or :class:`NotGraded`.
    """
    elements = tuple(str(e) for e in elements)
    index = {e: i for i, e in enumerate(elements)}
    if len(index) != len(elements):
        dup = next(e for e in elements if elements.count(e) > 1)
        raise PosetError(f"duplicate element id {dup!r}")
    if not elements:
        raise NoMinimum("empty poset")
    n = len(elements)

    pairs = set()
    for c in covers:
        a, b = (str(t) for t in c)
        for t in (a, b):
            if t not in index:
                raise UnknownId(f"cover ({a!r}, {b!r}) references unknown element {t!r}")
        if a == b:
            raise CycleDetected(f"self-cover on {a!r}")
        pairs.add((index[a], index[b]))
    pairs = sorted(pairs)

    ups: list[list[int]] = [[] for _ in range(n)]
    downs: list[list[int]] = [[] for _ in range(n)]
    for i, j in pairs:
        ups[i].append(j)
        downs[j].append(i)

    # Kahn topological sort, stable in element order
    indeg = [len(d) for d in downs]
    queue = deque(i for i in range(n) if indeg[i] == 0)
    topo = []
    while queue:
        i = queue.popleft()
        topo.append(i)
        for j in ups[i]:
            indeg[j] -= 1
            if indeg[j] == 0:
                queue.append(j)
    if len(topo) != n:
        stuck = [elements[i] for i in range(n) if indeg[i] > 0]
        raise CycleDetected(f"cover relation has a cycle through {stuck[:5]}")

    up = [1 << i for i in range(n)]
    for i in reversed(topo):
        for j in ups[i]:
            up[i] |= up[j]
    down = [0] * n
    for i in range(n):
        bits = up[i]
        while bits:
            low = bits & -bits
            down[low.bit_length() - 1] |= 1 << i
            bits ^= low

    for i, j in pairs:
        for k in ups[i]:
            if k != j and up[k] >> j & 1:
                raise RedundantCover(
                    f"cover ({elements[i]!r}, {elements[j]!r}) is implied via {elements[k]!r}")

    minimal = [i for i in range(n) if not downs[i]]
    if len(minimal) != 1:
        raise NoMinimum(f"expected one minimal element, found {[elements[i] for i in minimal]}")

    rank = [-1] * n
    rank[minimal[0]] = 0
    for i in topo:
        for j in ups[i]:
            if rank[j] == -1:
                rank[j] = rank[i] + 1
            elif rank[j] != rank[i] + 1:
                raise NotGraded(
                    f"cover ({elements[i]!r}, {elements[j]!r}) does not raise rank by one")

    return GradedPoset(
        elements,
        tuple((elements[i], elements[j]) for i, j in pairs),
        index,
        tuple(rank),
        tuple(up),
        tuple(down),
        tuple(tuple(u) for u in ups),
        tuple(tuple(d) for d in downs),
    )


def poset_from_order(elements: Sequence[str], leq_fn: Callable[[str, str], bool]) -> GradedPoset:
    """
    Build the Hasse diagram of an order given as a predicate.

    ``elements`` must be listed in a linear extension of the order (for
    example sorted by rank); covers are found by transitive reduction.
    """
    elements = list(elements)
    n = len(elements)
    below = [[j for j in range(i) if leq_fn(elements[j], elements[i])] for i in range(n)]
    below_sets = [set(b) for b in below]
    covers = []
    for i in range(n):
        # j is covered by i unless some k lies strictly between
        for j in below[i]:
            if not any(k != j and j in below_sets[k] for k in below[i]):
                covers.append((elements[j], elements[i]))
    return build_poset(elements, covers)


def leq(p: GradedPoset, x: str, y: str) -> bool:
    return p.leq(x, y)


def order_ideal(p: GradedPoset, x: str) -> GradedPoset:
    """The principal order ideal ``P_{<=x}`` as a poset with top ``x``."""
    key = ("ideal", x)
    cached = p._cache.get(key)
    if cached is None:
        cached = p._cache[key] = p.subposet(p.down_set(x))
    return cached


def interval(p: GradedPoset, u: str, v: str) -> GradedPoset:
    """The interval ``[u, v]``, re-ranked so that ``u`` has rank 0."""
    if not p.leq(u, v):
        raise NotComparable(f"{u!r} is not below {v!r}")
    keep = set(p.up_set(u)) & set(p.down_set(v))
    return p.subposet(keep)


def is_dihedral_interval(p: GradedPoset) -> bool:
    """
    True iff ``p`` is isomorphic to a Bruhat interval of rank >= 1 in a
    dihedral group: a 2-chain, or two elements at each inner rank with every
    element covering all elements of the rank below.
    """
    if p.top is None:
        return False
    levels = p.rank_levels()
    r = len(levels) - 1
    if r < 1:
        return False
    if r == 1:
        return len(p) == 2
    if len(levels[r]) != 1 or any(len(levels[k]) != 2 for k in range(1, r)):
        return False
    for k in range(1, r + 1):
        below = set(levels[k - 1])
        for y in levels[k]:
            if set(p.lower_covers(y)) != below:
                return False
    return True
