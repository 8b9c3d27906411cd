"""
Built-in posets, matchings and refinements drawn from worked examples.

``nonkernel``
    A 7-element pircon ``0 < d, e < c < b < a < 1`` with a chosen SPM for
    every non-minimal element. Its R^x-polynomials do not form a P-kernel.
``nondircone``
    A diamond with a 2-chain on top, together with two special matchings of
    the top element ("dashed" and "solid") that are not coherent.
``esempio``
    An 11-element poset (a rank-3 dihedral interval glued to a 5-chain) with
    an SPM fixing only the bottom element.
``counterexample-533``
    The Coxeter group with m(s,t)=5, m(s,p)=3, m(t,p)=3, the parabolic
    subset {p} and the element ststps.
"""

from __future__ import annotations

from .matching import SpecialPartialMatching, validate_spm
from .poset import GradedPoset, build_poset, order_ideal

__all__ = [
    "diamond", "chain", "nonkernel_poset", "nonkernel_refinement",
    "nondircone_poset", "nondircone_matchings", "esempio_poset",
    "esempio_matching", "COUNTEREXAMPLE_GROUP", "COUNTEREXAMPLE_H",
    "COUNTEREXAMPLE_W", "FIXTURE_NAMES", "fixture_json",
]


def chain(n: int) -> GradedPoset:
    """The chain ``c0 < c1 < ... < c{n-1}``."""
    names = [f"c{i}" for i in range(n)]
    return build_poset(names, list(zip(names, names[1:])))


def diamond() -> GradedPoset:
    return build_poset(["0", "a", "b", "1"], [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])


# -- nonkernel

NONKERNEL_ELEMENTS = ["0", "d", "e", "c", "b", "a", "1"]
NONKERNEL_COVERS = [("0", "d"), ("0", "e"), ("d", "c"), ("e", "c"), ("c", "b"), ("b", "a"), ("a", "1")]

# one SPM per non-minimal element, listed as non-fixed pairs
NONKERNEL_MATCHINGS = {
    "1": {"1": "a", "c": "d", "0": "e"},
    "a": {"a": "b", "c": "d", "0": "e"},
    "b": {"b": "c"},
    "c": {"c": "d", "0": "e"},
    "d": {"d": "0"},
    "e": {"e": "0"},
}


def nonkernel_poset() -> GradedPoset:
    return build_poset(NONKERNEL_ELEMENTS, NONKERNEL_COVERS)


def nonkernel_refinement() -> dict[str, SpecialPartialMatching]:
    p = nonkernel_poset()
    return {v: validate_spm(order_ideal(p, v), m) for v, m in NONKERNEL_MATCHINGS.items()}


# -- nondircone: v and u are the atoms, c covers both, then b, then 1

NONDIRCONE_ELEMENTS = ["0", "v", "u", "c", "b", "1"]
NONDIRCONE_COVERS = [("0", "v"), ("0", "u"), ("v", "c"), ("u", "c"), ("c", "b"), ("b", "1")]
NONDIRCONE_DASHED = {"1": "b", "c": "v", "0": "u"}
NONDIRCONE_SOLID = {"1": "b", "c": "u", "0": "v"}


def nondircone_poset() -> GradedPoset:
    return build_poset(NONDIRCONE_ELEMENTS, NONDIRCONE_COVERS)


def nondircone_matchings() -> dict[str, SpecialPartialMatching]:
    p = nondircone_poset()
    return {"dashed": validate_spm(p, NONDIRCONE_DASHED), "solid": validate_spm(p, NONDIRCONE_SOLID)}


# -- esempio: chain k0 < ... < k4 beside a hexagon h0 < h1l, h1r < h2l, h2r < h3

ESEMPIO_ELEMENTS = ["k0", "k1", "k2", "h0", "k3", "h1l", "h1r", "k4", "h2l", "h2r", "h3"]
ESEMPIO_COVERS = [
    ("k0", "k1"), ("k1", "k2"), ("k2", "k3"), ("k3", "k4"),
    ("k1", "h0"), ("k2", "h1r"), ("k3", "h2r"), ("k4", "h3"),
    ("h0", "h1l"), ("h0", "h1r"),
    ("h1l", "h2l"), ("h1l", "h2r"), ("h1r", "h2l"), ("h1r", "h2r"),
    ("h2l", "h3"), ("h2r", "h3"),
]
ESEMPIO_MATCHING = {"h2l": "h1l", "h0": "h1r", "h2r": "h3", "k4": "k3", "k2": "k1"}


def esempio_poset() -> GradedPoset:
    return build_poset(ESEMPIO_ELEMENTS, ESEMPIO_COVERS)


def esempio_matching() -> SpecialPartialMatching:
    return validate_spm(esempio_poset(), ESEMPIO_MATCHING)


# -- counterexample in a non simply laced group

COUNTEREXAMPLE_GROUP = {"type": "matrix", "generators": ["s", "t", "p"],
                        "m": {"s,t": 5, "s,p": 3, "t,p": 3}}
COUNTEREXAMPLE_H = ("p",)
COUNTEREXAMPLE_W = "s-t-s-t-p-s"


FIXTURE_NAMES = ("nonkernel", "nondircone", "esempio", "counterexample-533")


def _pairs(m: SpecialPartialMatching) -> dict:
    return m.to_json()


def fixture_json(name: str) -> dict:
    """JSON form of a named fixture, in the CLI file formats."""
    if name == "nonkernel":
        p = nonkernel_poset()
        return {"poset": p.to_json(),
                "refinement": {v: _pairs(m) for v, m in nonkernel_refinement().items()}}
    if name == "nondircone":
        p = nondircone_poset()
        return {"poset": p.to_json(),
                "matchings": {k: _pairs(m) for k, m in nondircone_matchings().items()}}
    if name == "esempio":
        return {"poset": esempio_poset().to_json(), "matching": _pairs(esempio_matching())}
    if name == "counterexample-533":
        return {"group": COUNTEREXAMPLE_GROUP, "H": list(COUNTEREXAMPLE_H), "w": COUNTEREXAMPLE_W}
    raise KeyError(f"unknown fixture {name!r}; choose from {', '.join(FIXTURE_NAMES)}")
