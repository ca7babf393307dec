import random

import pytest

from freecyl.automorphism import Automorphism, BudgetExceeded, nielsen
from freecyl.double import split_unit, RectangleUnion
from freecyl.image import dual_map
from freecyl.multicyl import MultiCylinder, minimize
from freecyl.oracle import (
    Membership,
    brute_minimize,
    depth_slice,
    double_membership,
    image_prefixer,
    verify_double_image,
    verify_image,
)
from freecyl.words import Alphabet, ReducedWord, WordError, extend_letters

from conftest import random_automorphism, random_word


def S(text, al):
    return MultiCylinder.parse(text, al)


def test_depth_slice_examples(al2):
    sl = depth_slice(S("{ab}", al2), 3)
    assert {str(w) for w in sl.words} == {"aba", "abb", "abA"} and len(sl) == 3
    assert len(depth_slice(S("{}", al2), 4)) == 0
    assert len(depth_slice(S("{a, b}", al2), 2)) == 6
    with pytest.raises(WordError):
        depth_slice(S("{abab}", al2), 3)


def test_verify_image_examples(phi0, al2, W):
    ident = Automorphism.identity(2)
    assert verify_image(ident, W("ab"), S("{ab}", al2))
    assert not verify_image(phi0, W("ba"), S("{baaba}", al2))
    assert verify_image(phi0, W("ba"), dual_map(phi0, W("ba")))


def test_verify_image_requires_antichain(phi0, al2, W):
    with pytest.raises(ValueError):
        verify_image(phi0, W("ba"), S("{baa, baab}", al2))


@pytest.mark.parametrize("source", ["sharp", "best", "certified"])
def test_bound_sources_agree(source, al2, W):
    n = nielsen(1, 2, 2)
    for u in ("a", "bA", "B"):
        M = dual_map(n, W(u))
        assert verify_image(n, W(u), M, source=source)
        assert not verify_image(n, W(u), S("{ab}", al2) if M != S("{ab}", al2) else S("{a}", al2),
                                source=source)


def test_uniform_source_on_phi0(phi0, W):
    # uniform trimming by C(phi) is slower but must reach the same verdicts
    assert verify_image(phi0, W("ba"), dual_map(phi0, W("ba")), source="best")


def test_prefixer_sources_are_sound(phi0):
    for source in ("sharp", "best", "certified"):
        pre = image_prefixer(phi0, source=source)
        for X in extend_letters((), 3, 2):
            t = pre(X, phi0.apply_letters(X))
            for Z in extend_letters(X, 4, 2):
                assert phi0.apply_letters(Z)[: len(t)] == t


def test_mutations_are_rejected():
    rng = random.Random(31)
    checked = 0
    while checked < 15:
        rank = rng.choice((2, 3))
        al = Alphabet.of_rank(rank)
        phi = random_automorphism(rng, rank)
        u = random_word(rng, al, rng.randint(1, 3))
        M = dual_map(phi, u)
        assert verify_image(phi, u, M)
        if len(M) > 1:
            for w in M.tuples:
                assert not verify_image(phi, u, MultiCylinder._raw(M.tuples - {w}, al))
        # a fresh word outside the image, disjoint from every claim word
        for t in extend_letters((), M.max_length() + 1, rank):
            if not any(t[: len(c)] == c for c in M.tuples):
                assert not verify_image(phi, u, MultiCylinder._raw(M.tuples | {t}, al))
                break
        checked += 1


def test_slice_cardinality_transport():
    # count length-L words whose certified preimage prefix extends u, directly
    rng = random.Random(32)
    for _ in range(10):
        phi = random_automorphism(rng, 2, max_factors=3)
        al = Alphabet.of_rank(2)
        u = random_word(rng, al, rng.randint(1, 2))
        M = dual_map(phi, u)
        L = M.max_length() + 3
        inv = phi.inverse()
        pre = image_prefixer(inv)
        inside = 0
        undecided = 0
        for x in extend_letters((), L, 2):
            p = pre(x, inv.apply_letters(x))
            if len(p) >= len(u):
                inside += p[: len(u)] == u.letters
            elif p == u.letters[: len(p)]:
                undecided += 1
        assert undecided == 0
        assert inside == len(depth_slice(M, L))


def test_membership_examples(W):
    assert double_membership(W("b"), W("a"), W("baa"), W("aba")) is Membership.YES
    assert double_membership(W("a"), W("b"), W("baa"), W("aba")) is Membership.NO
    assert double_membership(W("abab"), W("b"), W("ab"), W("ba")) is Membership.INSUFFICIENT
    with pytest.raises(WordError):
        double_membership(W("a"), W("b"), W("ab"), W("ab"))


def test_membership_comparable_prefixes(W):
    # X a prefix of Y: the turning point is not located yet
    assert double_membership(W("a"), W("ab"), W("a"), W("ab")) is Membership.INSUFFICIENT
    assert double_membership(W("b"), W("a"), W("a"), W("ab")) is Membership.NO


def test_membership_against_geodesic_walk(al2):
    # reference: build the vertex list of the geodesic between long prefixes
    words = [t for k in range(3) for t in extend_letters((), k, 2)]
    level = extend_letters((), 4, 2)
    rng = random.Random(33)
    for _ in range(300):
        X, Y = rng.sample(level, 2)
        m = 0
        while X[m] == Y[m]:
            m += 1
        path = [X[:i] for i in range(len(X), m - 1, -1)] + [Y[:i] for i in range(m + 1, len(Y) + 1)]
        u, v = rng.sample(words, 2)
        got = double_membership(ReducedWord(u, al2), ReducedWord(v, al2),
                                ReducedWord(X, al2), ReducedWord(Y, al2))
        expected = u in path and v in path and path.index(u) < path.index(v)
        assert got is (Membership.YES if expected else Membership.NO)


def test_verify_double_examples(al2, W):
    ident = Automorphism.identity(2)
    assert verify_double_image(ident, W("a"), W("b"), RectangleUnion.parse("[a, b]", al2), L=3)
    assert verify_double_image(ident, W("1"), W("a"), split_unit("a", al2), L=3)
    assert not verify_double_image(ident, W("1"), W("a"), RectangleUnion.parse("[b, a]", al2), L=3)


def test_brute_minimize_examples(al2):
    assert brute_minimize(S("{ab, abA}", al2), 4) == S("{ab}", al2)
    assert brute_minimize(S("{aa, ab, aB}", al2), 3) == S("{a}", al2)
    with pytest.raises(WordError):
        brute_minimize(S("{abab}", al2), 4)


def test_brute_minimize_agrees():
    rng = random.Random(34)
    for _ in range(100):
        rank = rng.choice((2, 3))
        al = Alphabet.of_rank(rank)
        U = MultiCylinder([random_word(rng, al, rng.randint(0, 3)) for _ in range(rng.randint(0, 5))], al)
        assert brute_minimize(U, 4) == minimize(U)


def test_budget_is_enforced(phi0, W):
    with pytest.raises(BudgetExceeded):
        verify_image(phi0, W("ba"), dual_map(phi0, W("ba")), budget=3)
