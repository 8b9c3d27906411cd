import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import coset_oracle, dot_leq, perm_from_word, perm_length, spm_oracle, subword_leq
from pircon.coxeter import (CoxeterGroup, DihedralGroup, NotDescent,
                            NotHSpecial, NotMinimalCosetRep, QSqrt,
                            SymmetricGroup, bruhat_interval, bruhat_leq,
                            conjugation_spm, coset_decompose, coxeter_group,
                            descents, enumerate_h_special, left_mult_matching,
                            length, parabolic_interval, project_mh,
                            twisted_identities)
from pircon.fixtures import COUNTEREXAMPLE_GROUP, COUNTEREXAMPLE_H, COUNTEREXAMPLE_W
from pircon.matching import enumerate_spms, orbits, validate_spm
from pircon.poset import is_dihedral_interval

S4 = SymmetricGroup(4)


def subsets(gens):
    for k in range(len(gens) + 1):
        yield from itertools.combinations(gens, k)


# -- exact ring


fractions = st.fractions(min_value=-5, max_value=5, max_denominator=7)


@given(fractions, fractions, fractions, fractions)
def test_ring_sign_matches_float(a, b, c, d):
    x = QSqrt.of(a, b, c, d) * QSqrt.of(d, c, b, a)
    f = float(x)
    if abs(f) > 1e-9:
        assert x.sign() == (1 if f > 0 else -1)
    elif x.is_zero():
        assert x.sign() == 0


def test_ring_sign_near_cancellation():
    # 1 + √2 - √3 - √5/... chosen so the float is tiny but nonzero
    x = QSqrt.of(Fraction(5), sqrt2=Fraction(-3), sqrt3=Fraction(-1), sqrt5=Fraction(1, 1000))
    assert x.sign() == (1 if float(x) > 0 else -1)
    golden = QSqrt.of(Fraction(1, 2), sqrt5=Fraction(1, 2))
    assert golden * golden == golden + QSqrt.of(1)


# -- basic invariants


def test_length_and_descents():
    e = S4.identity
    assert length(S4, e) == 0 and descents(S4, e, "L") == () and descents(S4, e, "R") == ()
    u = S4.parse("s2-s1-s3-s2")
    assert u == S4.parse("3412") and length(S4, u) == perm_length(u) == 4
    assert descents(S4, u, "R") == tuple(f"s{i}" for i in range(1, 4) if u[i - 1] > u[i])


def test_dihedral_longest_word():
    D = DihedralGroup(5)
    w = D.parse("s-t-s-t-s")
    assert D.length(w) == 5
    # in I_2(5) the alternating word of length 5 is the longest element, so both letters are descents
    assert D.left_descents(w) == ("s", "t") and D.right_descents(w) == ("s", "t")
    u = D.parse("s-t-s-t")
    assert D.left_descents(u) == ("s",) and D.right_descents(u) == ("t",)


def test_bruhat_examples():
    v = S4.parse("3412")
    assert all(bruhat_leq(S4, S4.identity, x) for x in S4.elements())
    assert bruhat_leq(S4, S4.parse("s2"), v)
    a, b = S4.parse("s1-s2"), S4.parse("s2-s1")
    assert not bruhat_leq(S4, a, b) and not bruhat_leq(S4, b, a)


def test_bruhat_s4_dot_criterion_and_generic_recursion():
    for u, v in itertools.product(S4.elements(), repeat=2):
        expected = dot_leq(u, v)
        assert S4.bruhat_leq(u, v) == expected
        assert CoxeterGroup.bruhat_leq(S4, u, v) == expected


def test_bruhat_s5_sampled():
    W = SymmetricGroup(5)
    rng = random.Random(5)
    elems = W.elements()
    for _ in range(400):
        u, v = rng.choice(elems), rng.choice(elems)
        assert W.bruhat_leq(u, v) == dot_leq(u, v)


def test_permutation_words_agree_with_oracle():
    for u in S4.elements():
        word = [S4.gen_index(s) for s in S4.reduced_word(u)]
        assert perm_from_word(word, 4) == u


def test_reflection_backend_matches_symmetric():
    for n in (3, 4):
        W = SymmetricGroup(n)
        gens = W.generators
        G = coxeter_group({"type": "matrix", "generators": list(gens),
                           "m": {f"{a},{b}": W.m(a, b) for a, b in itertools.combinations(gens, 2)}})
        for u in W.elements():
            g = G.from_word(W.reduced_word(u))
            assert G.reduced_word(g) == W.reduced_word(u)
            assert G.left_descents(g) == W.left_descents(u)
            assert G.right_descents(g) == W.right_descents(u)
        if n == 3:
            for u, v in itertools.product(W.elements(), repeat=2):
                assert G.bruhat_leq(G.from_word(W.reduced_word(u)), G.from_word(W.reduced_word(v))) == W.bruhat_leq(u, v)


@pytest.mark.parametrize("m", [2, 3, 4, 5, 6])
def test_reflection_backend_matches_dihedral(m):
    D = DihedralGroup(m)
    G = coxeter_group({"type": "matrix", "generators": ["s", "t"], "m": {"s,t": m}})
    for u in D.elements():
        g = G.from_word(D.reduced_word(u))
        assert G.length(g) == D.length(u)
        assert G.reduced_word(g) == D.reduced_word(u)
    longest = G.from_word(D.reduced_word(D.elements()[-1]))
    for s in ("s", "t"):
        assert G.length(G.rmul(longest, s)) == m - 1


def test_reflection_bruhat_matches_subwords():
    W = coxeter_group(COUNTEREXAMPLE_GROUP)
    w = W.parse(COUNTEREXAMPLE_W)
    below = W.lower_interval(w)
    for u in below:
        assert subword_leq(W, u, w)
    # every element of length <= 6 reached by a word in s, t, p is tested against w
    words = set()
    for k in range(5):
        for word in itertools.product(W.generators, repeat=k):
            words.add(W.from_word(word))
    for u in words:
        assert W.bruhat_leq(u, w) == subword_leq(W, u, w)


# -- lifting property


@pytest.mark.parametrize("W", [S4] + [DihedralGroup(m) for m in range(2, 7)], ids=repr)
def test_lifting_property(W):
    for u, w in itertools.product(W.elements(), repeat=2):
        if not W.bruhat_leq(u, w):
            continue
        for s in W.generators:
            for side in ("L", "R"):
                mul = (lambda x: W.lmul(s, x)) if side == "L" else (lambda x: W.rmul(x, s))
                dw, du = s in W.descents(w, side), s in W.descents(u, side)
                if dw == du:
                    assert W.bruhat_leq(mul(u), mul(w))
                elif dw:
                    assert W.bruhat_leq(mul(u), w) and W.bruhat_leq(u, mul(w))


# -- intervals


def test_intervals():
    D = DihedralGroup(3)
    p = bruhat_interval(D, D.identity, D.parse("s-t-s"))
    assert len(p) == 6 and p.height == 3 and is_dihedral_interval(p)
    S3 = SymmetricGroup(3)
    assert len(bruhat_interval(S3, S3.identity, S3.parse("321"))) == 6


def test_counterexample_quotient_shape():
    W = coxeter_group(COUNTEREXAMPLE_GROUP)
    w = W.parse(COUNTEREXAMPLE_W)
    Q = parabolic_interval(W, w, COUNTEREXAMPLE_H)
    assert Q.top == "s-t-s-t-p-s" and Q.height == 6
    assert all(W.in_quotient(W.parse(x), COUNTEREXAMPLE_H) for x in Q.elements)
    with pytest.raises(NotMinimalCosetRep):
        parabolic_interval(W, W.parse("s-p"), ("p",))


# -- parabolic factorization


@pytest.mark.parametrize("side", ["right", "left"])
def test_coset_decompose_matches_oracle(side):
    for J in subsets(S4.generators):
        for w in S4.elements():
            head, tail = coset_decompose(S4, w, J, side)
            assert S4.length(w) == S4.length(head) + S4.length(tail)
            if side == "right":
                assert S4.mul(head, tail) == w
                assert (head, tail) == coset_oracle(S4, w, J)
            else:
                assert S4.mul(tail, head) == w
                inv_head, inv_tail = coset_oracle(S4, S4.inverse(w), J)
                assert (S4.inverse(inv_head), S4.inverse(inv_tail)) == (head, tail)


def test_coset_decompose_trivial_cases():
    J = ("s2",)
    w = S4.parse("s1-s2")
    assert coset_decompose(S4, S4.parse("s2-s1"), J) == (S4.parse("s2-s1"), S4.identity)
    assert coset_decompose(S4, w, J) == (S4.parse("s1"), S4.parse("s2"))
    assert coset_decompose(S4, S4.parse("s2"), J) == (S4.identity, S4.parse("s2"))


def test_projection_to_quotient_is_monotone():
    for J in subsets(S4.generators):
        head = {w: coset_decompose(S4, w, J)[0] for w in S4.elements()}
        for v, w in itertools.product(S4.elements(), repeat=2):
            if S4.bruhat_leq(v, w):
                assert S4.bruhat_leq(head[v], head[w])


# -- matchings on intervals


def test_left_multiplication_matching_dihedral():
    D = DihedralGroup(3)
    m = left_mult_matching(D, "s", D.parse("s-t-s"))
    assert sorted(m.pairs()) == sorted([("e", "s"), ("t", "s-t"), ("t-s", "s-t-s")])
    with pytest.raises(NotDescent):
        left_mult_matching(D, "t", D.parse("s-t"))


def test_left_multiplication_matchings_validate_in_s4():
    for w in S4.elements():
        p = bruhat_interval(S4, S4.identity, w)
        for s in S4.left_descents(w):
            m = left_mult_matching(S4, s, w, p)
            assert m(S4.name(S4.identity)) == S4.name(S4.parse(s))
            if len(p) <= 10:
                assert m.as_dict() in spm_oracle(p.elements, p.covers)
            else:
                assert validate_spm(p, m.as_dict()) == m


def test_h_special_basics():
    for w in S4.elements():
        if S4.length(w) == 0:
            continue
        p = bruhat_interval(S4, S4.identity, w)
        allspecial = enumerate_spms(p, fixed_points=False)
        assert enumerate_h_special(S4, w, (), poset=p) == allspecial
        for H in subsets(S4.generators):
            if not S4.in_quotient(w, H):
                continue
            hs = enumerate_h_special(S4, w, H, poset=p)
            for s in S4.left_descents(w):
                assert left_mult_matching(S4, s, w, p) in hs


def test_projection_of_left_multiplication():
    for H in subsets(S4.generators):
        for w in S4.elements():
            if S4.length(w) == 0 or not S4.in_quotient(w, H):
                continue
            Q = parabolic_interval(S4, w, H)
            for s in S4.left_descents(w):
                mh = project_mh(S4, left_mult_matching(S4, s, w), H, Q)
                expected = {x for x in Q.elements if not S4.in_quotient(S4.lmul(s, S4.parse(x)), H)}
                assert set(mh.fixed_points()) == expected
                if not H:
                    assert mh.as_dict() == left_mult_matching(S4, s, w).as_dict()


def test_projection_rejects_non_h_special():
    rejected = 0
    for H in subsets(S4.generators):
        for w in S4.elements():
            if S4.length(w) == 0 or not S4.in_quotient(w, H):
                continue
            p = bruhat_interval(S4, S4.identity, w)
            hs = enumerate_h_special(S4, w, H, poset=p)
            for m in enumerate_spms(p, fixed_points=False):
                if m in hs:
                    continue
                rejected += 1
                with pytest.raises(NotHSpecial):
                    project_mh(S4, m, H)
    assert rejected > 0


def test_counterexample_h_special():
    W = coxeter_group(COUNTEREXAMPLE_GROUP)
    w = W.parse(COUNTEREXAMPLE_W)
    hs = enumerate_h_special(W, w, COUNTEREXAMPLE_H)
    assert len(hs) == 3
    Q = parabolic_interval(W, w, COUNTEREXAMPLE_H)
    assert {project_mh(W, m, COUNTEREXAMPLE_H, Q)(Q.top) for m in hs} == {"t-s-t-p-s"}


# -- structure of quotients inside intervals, scanned over S_4


def test_forbidden_configuration_absent():
    p = bruhat_interval(S4, S4.identity, S4.parse("4321"))
    elem = {x: S4.parse(x) for x in p.elements}
    for H in subsets(S4.generators):
        inq = {x: S4.in_quotient(elem[x], H) for x in p.elements}
        for a in p.elements:
            if inq[a]:
                continue
            for b, c in itertools.combinations(p.lower_covers(a), 2):
                if inq[b] or inq[c]:
                    continue
                common = set(p.lower_covers(b)) & set(p.lower_covers(c))
                for d, u in itertools.permutations(common, 2):
                    if not inq[u]:
                        continue
                    for f in set(p.lower_covers(d)) & set(p.lower_covers(u)):
                        assert not inq[f], (H, a, b, c, d, u, f)


def test_orbit_intersections_with_quotient():
    for H in subsets(S4.generators):
        for w in S4.elements():
            if S4.length(w) == 0 or not S4.in_quotient(w, H):
                continue
            p = bruhat_interval(S4, S4.identity, w)
            hs = enumerate_h_special(S4, w, H, poset=p)
            for m, n in itertools.product(hs, repeat=2):
                for o in orbits(m, n):
                    inside = [x for x in o.elements if S4.in_quotient(S4.parse(x), H)]
                    if len(inside) in (0, len(o.elements)) or inside == [o.bottom]:
                        continue
                    chain = sorted(inside, key=p.rank)
                    assert chain[0] == o.bottom
                    assert p.covered_by(chain[-1], o.top)
                    for x, y in zip(chain, chain[1:]):
                        assert p.covered_by(x, y) and y in (m(x), n(x))


# -- twisted identities


def double_factorial(k):
    return 1 if k <= 0 else k * double_factorial(k - 2)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_twisted_identity_sizes(n):
    io = twisted_identities(n)
    assert len(io.poset) == double_factorial(2 * n - 1)
    assert io.poset.bottom == io.group.name(io.group.identity)


def test_twisted_identities_s4():
    io = twisted_identities(2)
    W = io.group
    assert io.poset.elements == (W.name(W.identity), W.name(W.parse("s1-s3")), W.name(W.parse("s2-s1-s3-s2")))
    assert io.poset.height == 2 and len(io.poset.covers) == 2
    w = W.name(W.parse("s1-s3"))
    m = conjugation_spm(io, w, "s1")
    assert m(w) == "1234" and m("1234") == w
    with pytest.raises(NotDescent):
        conjugation_spm(io, w, "s2")


def test_identity_star_generator():
    for n in (2, 3):
        io = twisted_identities(n)
        e = io.group.name(io.group.identity)
        for s in io.group.generators:
            image = io.star(e, s)
            if io.theta(s) == s:
                assert image == e
            else:
                assert io.poset.covered_by(e, image)
