"""
Coxeter group backends.

Three exact backends share one interface:

* :class:`SymmetricGroup` -- permutations in one-line notation,
* :class:`DihedralGroup` -- normal forms ``(length, first letter)``,
* :class:`ReflectionGroup` -- any Coxeter matrix with labels 2..6, acting on
  the geometric representation over ``Q(√2, √3, √5)``.

Elements are hashable values owned by their group; ``name``/``parse``
convert to and from the string ids used as poset elements.
"""

from __future__ import annotations

import itertools
import json
from typing import Iterable, Sequence

from .ring import QSqrt, two_cos_pi_over

__all__ = [
    "CoxeterError", "NotDescent", "CoxeterGroup", "SymmetricGroup",
    "DihedralGroup", "ReflectionGroup", "coxeter_group",
]


class CoxeterError(ValueError):
    pass


class NotDescent(CoxeterError):
    pass


class CoxeterGroup:
    """Common machinery; subclasses supply multiplication by generators and descents."""

    generators: tuple[str, ...]

    def __init__(self):
        self._leq_cache: dict = {}
        self._lower_cache: dict = {}
        self._parse_cache: dict = {}

    # -- backend hooks

    @property
    def identity(self):
        raise NotImplementedError

    def lmul(self, s: str, u):
        raise NotImplementedError

    def rmul(self, u, s: str):
        raise NotImplementedError

    def length(self, u) -> int:
        raise NotImplementedError

    def left_descents(self, u) -> tuple[str, ...]:
        raise NotImplementedError

    def right_descents(self, u) -> tuple[str, ...]:
        raise NotImplementedError

    def m(self, s: str, t: str) -> int:
        raise NotImplementedError

    # -- derived operations

    def descents(self, u, side: str = "R") -> tuple[str, ...]:
        side = side.upper()
        if side == "L":
            return self.left_descents(u)
        if side == "R":
            return self.right_descents(u)
        raise ValueError("side must be 'L' or 'R'")

    def _check_gen(self, s: str) -> None:
        if s not in self.generators:
            raise CoxeterError(f"unknown generator {s!r}; generators are {self.generators}")

    def from_word(self, word: Iterable[str]):
        u = self.identity
        for s in word:
            self._check_gen(s)
            u = self.rmul(u, s)
        return u

    def reduced_word(self, u) -> tuple[str, ...]:
        """ShortLex normal form: strip the first left descent (generator order) repeatedly."""
        word = []
        while self.length(u):
            s = self.left_descents(u)[0]
            word.append(s)
            u = self.lmul(s, u)
        return tuple(word)

    def mul(self, u, v):
        for s in self.reduced_word(v):
            u = self.rmul(u, s)
        return u

    def inverse(self, u):
        return self.from_word(reversed(self.reduced_word(u)))

    def name(self, u) -> str:
        word = self.reduced_word(u)
        return "-".join(word) if word else "e"

    def parse(self, text):
        """Parse an element given as a word ``"s-t-s"`` (``"e"`` for the identity)."""
        if not isinstance(text, str):
            raise CoxeterError(f"cannot parse element {text!r}")
        key = text.strip()
        if key not in self._parse_cache:
            if key in ("", "e"):
                word = []
            else:
                word = [w.strip() for w in key.split("-")]
            self._parse_cache[key] = self.from_word(word)
        return self._parse_cache[key]

    def sort_key(self, u):
        return (self.length(u), self.name(u))

    def in_quotient(self, u, H: Iterable[str]) -> bool:
        """``u ∈ W^H``: no right descent in ``H``."""
        H = set(H)
        return not any(s in H for s in self.right_descents(u))

    def bruhat_leq(self, u, v) -> bool:
        """
        Bruhat order via the recursion: for ``s`` a left descent of ``v``,
        ``u <= v`` iff ``su <= sv`` (when ``s`` is a left descent of ``u``)
        or ``u <= sv`` (otherwise).
        """
        key = (u, v)
        hit = self._leq_cache.get(key)
        if hit is not None:
            return hit
        lu, lv = self.length(u), self.length(v)
        if lu > lv:
            res = False
        elif lu == lv:
            res = u == v
        elif lu == 0:
            res = True
        else:
            s = self.left_descents(v)[0]
            sv = self.lmul(s, v)
            if s in self.left_descents(u):
                res = self.bruhat_leq(self.lmul(s, u), sv)
            else:
                res = self.bruhat_leq(u, sv)
        self._leq_cache[key] = res
        return res

    def lower_interval(self, v) -> frozenset:
        """All ``u <= v``: ``[e,v] = X ∪ sX`` with ``X = [e,sv]`` for a left descent ``s``."""
        hit = self._lower_cache.get(v)
        if hit is not None:
            return hit
        if self.length(v) == 0:
            res = frozenset([v])
        else:
            s = self.left_descents(v)[0]
            below = self.lower_interval(self.lmul(s, v))
            res = below | frozenset(self.lmul(s, x) for x in below)
        self._lower_cache[v] = res
        return res


class SymmetricGroup(CoxeterGroup):
    """``S_n`` on one-line permutations of ``1..n``; generator ``s{i}`` swaps i and i+1."""

    def __init__(self, n: int):
        super().__init__()
        if n < 1:
            raise CoxeterError("n must be positive")
        self.n = n
        self.generators = tuple(f"s{i}" for i in range(1, n))
        self._gidx = {g: i for i, g in enumerate(self.generators, start=1)}

    def __repr__(self):
        return f"SymmetricGroup({self.n})"

    def __eq__(self, other):
        return isinstance(other, SymmetricGroup) and other.n == self.n

    def __hash__(self):
        return hash(("S", self.n))

    @property
    def identity(self):
        return tuple(range(1, self.n + 1))

    def gen_index(self, s: str) -> int:
        try:
            return self._gidx[s]
        except KeyError:
            raise CoxeterError(f"unknown generator {s!r}") from None

    def m(self, s, t):
        i, j = self.gen_index(s), self.gen_index(t)
        return 1 if i == j else 3 if abs(i - j) == 1 else 2

    def rmul(self, u, s):
        i = self.gen_index(s)
        w = list(u)
        w[i - 1], w[i] = w[i], w[i - 1]
        return tuple(w)

    def lmul(self, s, u):
        i = self.gen_index(s)
        return tuple(i + 1 if a == i else i if a == i + 1 else a for a in u)

    def mul(self, u, v):
        return tuple(u[v[k] - 1] for k in range(self.n))

    def inverse(self, u):
        inv = [0] * self.n
        for pos, val in enumerate(u, start=1):
            inv[val - 1] = pos
        return tuple(inv)

    def length(self, u):
        return sum(1 for i in range(self.n) for j in range(i + 1, self.n) if u[i] > u[j])

    def right_descents(self, u):
        return tuple(f"s{i}" for i in range(1, self.n) if u[i - 1] > u[i])

    def left_descents(self, u):
        pos = self.inverse(u)
        return tuple(f"s{i}" for i in range(1, self.n) if pos[i - 1] > pos[i])

    def bruhat_leq(self, u, v):
        """Tableau criterion: sorted prefixes of ``u`` are dominated by those of ``v``."""
        if u == v:
            return True
        for k in range(1, self.n):
            a = sorted(u[:k])
            b = sorted(v[:k])
            if any(x > y for x, y in zip(a, b)):
                return False
        return True

    def name(self, u):
        sep = "" if self.n < 10 else ","
        return sep.join(str(a) for a in u)

    def parse(self, text):
        if isinstance(text, (list, tuple)):
            perm = tuple(int(a) for a in text)
        else:
            t = text.strip()
            if t.startswith("["):
                perm = tuple(int(a) for a in json.loads(t))
            elif t == "e" or t.startswith("s"):
                return super().parse(t)
            elif "," in t:
                perm = tuple(int(a) for a in t.split(","))
            else:
                perm = tuple(int(a) for a in t)
        if sorted(perm) != list(range(1, self.n + 1)):
            raise CoxeterError(f"{text!r} is not a permutation of 1..{self.n}")
        return perm

    def elements(self):
        return [tuple(p) for p in itertools.permutations(range(1, self.n + 1))]


class DihedralGroup(CoxeterGroup):
    """``I_2(m)`` with generators ``s`` and ``t``; elements are ``(length, first letter)``."""

    generators = ("s", "t")

    def __init__(self, m: int):
        super().__init__()
        if m < 2:
            raise CoxeterError("m must be at least 2")
        self.order = m

    def __repr__(self):
        return f"DihedralGroup({self.order})"

    @property
    def identity(self):
        return (0, "")

    def m(self, s, t):
        return 1 if s == t else self.order

    @staticmethod
    def _other(g):
        return "t" if g == "s" else "s"

    def _norm(self, k, first):
        return (k, "") if k in (0, self.order) else (k, first)

    def _last(self, u):
        k, f = u
        if k in (0, self.order):
            return None
        return f if k % 2 else self._other(f)

    def lmul(self, s, u):
        self._check_gen(s)
        k, f = u
        if k == 0:
            return self._norm(1, s)
        if k == self.order:
            return self._norm(k - 1, self._other(s))
        if f == s:
            return self._norm(k - 1, self._other(s))
        return self._norm(k + 1, s)

    def inverse(self, u):
        k, f = u
        if k in (0, self.order):
            return u
        return (k, self._last(u))

    def rmul(self, u, s):
        return self.inverse(self.lmul(s, self.inverse(u)))

    def length(self, u):
        return u[0]

    def left_descents(self, u):
        k, f = u
        if k == 0:
            return ()
        if k == self.order:
            return self.generators
        return (f,)

    def right_descents(self, u):
        k, _ = u
        if k == 0:
            return ()
        if k == self.order:
            return self.generators
        return (self._last(u),)

    def bruhat_leq(self, u, v):
        return u == v or u[0] < v[0]

    def elements(self):
        out = [(0, "")]
        for k in range(1, self.order):
            out += [(k, "s"), (k, "t")]
        out.append((self.order, ""))
        return out


class _ReflElement:
    """Matrix of the geometric representation, with its inverse and length."""

    __slots__ = ("mat", "inv", "length", "_hash")

    def __init__(self, mat, inv, length):
        self.mat = mat
        self.inv = inv
        self.length = length
        self._hash = hash(mat)

    def __eq__(self, other):
        return isinstance(other, _ReflElement) and self.mat == other.mat

    def __hash__(self):
        return self._hash


def _negative_column(mat, j) -> bool:
    for row in mat:
        sg = row[j].sign()
        if sg:
            return sg < 0
    raise AssertionError("zero column in a reflection matrix")


class ReflectionGroup(CoxeterGroup):
    """
    Coxeter group of an arbitrary matrix with labels in 2..6.

    ``w`` acts on the span of the simple roots; its matrix has column ``j``
    equal to ``w(α_j)``. ``s`` is a right descent of ``w`` iff ``w(α_s)`` is a
    negative root, and a left descent iff ``w⁻¹(α_s)`` is.
    """

    def __init__(self, generators: Sequence[str], labels: dict[tuple[str, str], int]):
        super().__init__()
        self.generators = tuple(generators)
        if len(set(self.generators)) != len(self.generators):
            raise CoxeterError("duplicate generator names")
        k = len(self.generators)
        self._idx = {g: i for i, g in enumerate(self.generators)}
        self._m = [[1 if i == j else 2 for j in range(k)] for i in range(k)]
        for (a, b), val in labels.items():
            i, j = self._idx[a], self._idx[b]
            if i == j or val < 2:
                raise CoxeterError(f"invalid label m({a},{b}) = {val}")
            self._m[i][j] = self._m[j][i] = int(val)
        self._c = [[two_cos_pi_over(self._m[i][j]) if i != j else None for j in range(k)]
                   for i in range(k)]
        one, zero = QSqrt.of(1), QSqrt.of(0)
        ident = tuple(tuple(one if i == j else zero for j in range(k)) for i in range(k))
        self._identity = _ReflElement(ident, ident, 0)
        self._desc_cache: dict = {}
        self._name_cache: dict = {}

    def __repr__(self):
        return f"ReflectionGroup({self.generators}, {self._m})"

    @property
    def identity(self):
        return self._identity

    def m(self, s, t):
        return self._m[self._idx[s]][self._idx[t]]

    def _left_act(self, s: int, mat):
        # rows of sigma(s)·A: only row s changes
        k = len(self.generators)
        rows = list(mat)
        new = [-x for x in mat[s]]
        for j in range(k):
            c = self._c[s][j]
            if j != s and not c.is_zero():
                new = [a + c * b for a, b in zip(new, mat[j])]
        rows[s] = tuple(new)
        return tuple(rows)

    def _right_act(self, mat, s: int):
        # columns of A·sigma(s): column t gains c_st times column s, column s flips
        k = len(self.generators)
        out = []
        for row in mat:
            a_s = row[s]
            new = list(row)
            for t in range(k):
                if t == s:
                    new[t] = -a_s
                else:
                    c = self._c[s][t]
                    if not c.is_zero():
                        new[t] = row[t] + c * a_s
            out.append(tuple(new))
        return tuple(out)

    def _descents(self, u):
        hit = self._desc_cache.get(u)
        if hit is None:
            left = tuple(g for i, g in enumerate(self.generators) if _negative_column(u.inv, i))
            right = tuple(g for i, g in enumerate(self.generators) if _negative_column(u.mat, i))
            hit = self._desc_cache[u] = (left, right)
        return hit

    def left_descents(self, u):
        return self._descents(u)[0]

    def right_descents(self, u):
        return self._descents(u)[1]

    def lmul(self, s, u):
        self._check_gen(s)
        i = self._idx[s]
        length = u.length - 1 if s in self.left_descents(u) else u.length + 1
        return _ReflElement(self._left_act(i, u.mat), self._right_act(u.inv, i), length)

    def rmul(self, u, s):
        self._check_gen(s)
        i = self._idx[s]
        length = u.length - 1 if s in self.right_descents(u) else u.length + 1
        return _ReflElement(self._right_act(u.mat, i), self._left_act(i, u.inv), length)

    def length(self, u):
        return u.length

    def inverse(self, u):
        return _ReflElement(u.inv, u.mat, u.length)

    def name(self, u):
        hit = self._name_cache.get(u)
        if hit is None:
            hit = self._name_cache[u] = super().name(u)
        return hit


def coxeter_group(spec: dict) -> CoxeterGroup:
    """
    Build a group from its JSON description::

        {"type": "symmetric", "n": 4}
        {"type": "dihedral", "m": 5}
        {"type": "matrix", "generators": ["s", "t", "p"], "m": {"s,t": 5, "s,p": 3, "t,p": 3}}
    """
    kind = spec.get("type")
    if kind == "symmetric":
        return SymmetricGroup(int(spec["n"]))
    if kind == "dihedral":
        return DihedralGroup(int(spec["m"]))
    if kind == "matrix":
        labels = {}
        for key, val in spec.get("m", {}).items():
            a, b = (x.strip() for x in key.split(","))
            labels[(a, b)] = int(val)
        return ReflectionGroup(spec["generators"], labels)
    raise CoxeterError(f"unknown group type {kind!r}")
