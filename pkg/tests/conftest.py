import random

import pytest

from freecyl.automorphism import (
    Automorphism,
    compose,
    inversion,
    nielsen,
    parse_automorphism,
    permutation,
)
from freecyl.words import Alphabet, ReducedWord

PHI0_TEXT = """\
# a -> aba, b -> ba
rank 2
phi a -> aba
phi b -> ba
inv a -> aB
inv b -> bbA
"""


@pytest.fixture
def al2():
    return Alphabet.of_rank(2)


@pytest.fixture
def al3():
    return Alphabet.of_rank(3)


@pytest.fixture
def phi0():
    return parse_automorphism(PHI0_TEXT)


@pytest.fixture
def W(al2):
    return lambda s: ReducedWord.parse(s, al2)


def random_elementary(rng: random.Random, rank: int) -> Automorphism:
    kind = rng.choice(("nielsen", "perm", "inv"))
    if kind == "nielsen":
        g = rng.randint(1, rank)
        other = rng.choice([h for h in range(1, rank + 1) if h != g]) * rng.choice((1, -1))
        return nielsen(g, other, rank)
    if kind == "perm":
        p = list(range(1, rank + 1))
        rng.shuffle(p)
        return permutation(p)
    return inversion(rng.randint(1, rank), rank)


def random_automorphism(rng: random.Random, rank: int, max_factors: int = 4) -> Automorphism:
    phi = Automorphism.identity(rank)
    for _ in range(rng.randint(1, max_factors)):
        phi = compose(phi, random_elementary(rng, rank))
    return phi


def random_word(rng: random.Random, al: Alphabet, n: int) -> ReducedWord:
    out = []
    while len(out) < n:
        x = rng.choice(al.letters())
        if out and out[-1] == -x:
            continue
        out.append(x)
    return ReducedWord(tuple(out), al)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
