import random

import pytest

from freecyl.automorphism import (
    Automorphism,
    AutomorphismError,
    BudgetExceeded,
    apply,
    apply_inverse,
    certified_cancellation,
    compose,
    defect,
    dump_automorphism,
    empirical_cancellation,
    is_valid,
    load_automorphism,
    nielsen,
    parse_automorphism,
    size,
    validate,
)
from freecyl.words import Alphabet, ReducedWord, concat_letters, reduce_concat

from conftest import random_automorphism, random_word


def hand_apply(fwd: dict, w: str, al) -> ReducedWord:
    # independent reference: concatenate image strings, then reduce
    text = "".join(fwd[ch] if ch.islower() else str(ReducedWord.parse(fwd[ch.lower()], al).__invert__())
                   for ch in w)
    return ReducedWord.parse_and_reduce(text or "1", al)


def test_validate_examples(phi0):
    validate(phi0)
    validate(Automorphism.identity(2))
    with pytest.raises(AutomorphismError, match="generator a"):
        Automorphism.from_images(["aba", "ba"], ["a", "b"])
    assert not is_valid(["aba", "ba"], ["a", "b"])


def test_empty_image_rejected():
    with pytest.raises((AutomorphismError, ValueError)):
        Automorphism.from_images(["1", "b"], ["1", "b"])


def test_apply_examples(phi0, W, al2):
    assert apply(phi0, W("baBA")) == W("baBA")
    assert apply(phi0, W("baBAA")) == W("baBAABA")
    assert apply(Automorphism.identity(2), W("ab")) == W("ab")
    fwd = {"a": "aba", "b": "ba"}
    for w in ("baBA", "baBAA", "bbA", "aaBBab"):
        assert apply(phi0, W(w)) == hand_apply(fwd, w, al2)


def test_apply_inverse_examples(phi0, W):
    assert apply_inverse(phi0, W("a")) == W("aB")
    assert apply_inverse(phi0, apply(phi0, W("bba"))) == W("bba")
    assert apply_inverse(Automorphism.identity(2), W("B")) == W("B")


def test_size_examples(phi0):
    assert size(phi0) == 3
    assert size(Automorphism.identity(2)) == 1
    assert size(Automorphism.from_images(["ab", "b"], ["aB", "b"])) == 2


def test_certified_examples(phi0):
    b = certified_cancellation(phi0)
    assert (b.certified_fwd, b.certified_bwd) == (9, 9)
    assert b.empirical_fwd is None
    assert (certified_cancellation(Automorphism.identity(2)).certified_fwd,) == (1,)
    n = certified_cancellation(nielsen(1, 2, 2))
    assert (n.certified_fwd, n.certified_bwd) == (4, 4)


def test_empirical_examples(phi0):
    assert empirical_cancellation(phi0, 1).empirical_fwd >= 4
    ident = empirical_cancellation(Automorphism.identity(2), 3)
    assert (ident.empirical_fwd, ident.empirical_bwd) == (0, 0)
    assert empirical_cancellation(nielsen(1, 2, 2), 1).empirical_fwd == 2


def test_empirical_budget(phi0):
    with pytest.raises(BudgetExceeded):
        empirical_cancellation(phi0, 8, budget=1000)


def test_defect_example(phi0, W):
    # |aba| + |AB| - |a| = 4
    assert defect(phi0, W("a"), W("B")) == 4


def test_compose_examples(phi0):
    ident = Automorphism.identity(2)
    assert compose(ident, phi0) == phi0
    assert compose(phi0, phi0.inverse()) == ident
    n = nielsen(1, 2, 2)
    assert n.fwd[0] == (1, 2)
    assert compose(n, n).fwd[0] == (1, 2, 2)


def test_file_format_round_trip(phi0, tmp_path):
    text = dump_automorphism(phi0)
    assert parse_automorphism(text) == phi0
    path = tmp_path / "phi.aut"
    path.write_text("# comment\n\n" + text)
    assert load_automorphism(path) == phi0


@pytest.mark.parametrize("text,token", [
    ("phi a -> a", "rank"),
    ("rank 2\nphi a -> aba\nphi b -> ba\ninv a -> a\ninv b -> b\n", "generator a"),
    ("rank 2\nphi a -> aAb\n", "aAb"),
    ("rank 2\nphi a -> ab\nphi b -> b\ninv a -> aB\n", "inv image for b"),
    ("rank 2\nphi z -> a\n", "'z'"),
])
def test_file_format_errors(text, token):
    with pytest.raises(AutomorphismError, match=token):
        parse_automorphism(text)


def _random_setup(seed):
    rng = random.Random(seed)
    rank = rng.choice((2, 3))
    phi = random_automorphism(rng, rank)
    return rng, phi, Alphabet.of_rank(rank)


def test_length_sandwich():
    for seed in range(20):
        rng, phi, al = _random_setup(seed)
        s = size(phi)
        for _ in range(25):
            w = random_word(rng, al, rng.randint(0, 30))
            n = len(apply(phi, w))
            assert len(w) <= n * s and n <= len(w) * s


def test_cancellation_at_certified_bound():
    for seed in range(20):
        rng, phi, al = _random_setup(seed)
        s = size(phi)
        count = 0
        while count < 25:
            u = random_word(rng, al, rng.randint(0, 10))
            v = random_word(rng, al, rng.randint(0, 10))
            if len(reduce_concat(u, v)) != len(u) + len(v):
                continue
            count += 1
            assert 0 <= defect(phi, u, v) <= s * s


def test_homomorphism_and_round_trip():
    for seed in range(20):
        rng, phi, al = _random_setup(seed)
        for _ in range(25):
            u = random_word(rng, al, rng.randint(0, 12))
            v = random_word(rng, al, rng.randint(0, 12))
            assert apply(phi, reduce_concat(u, v)) == reduce_concat(apply(phi, u), apply(phi, v))
            assert apply_inverse(phi, apply(phi, u)) == u
