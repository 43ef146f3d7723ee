import random

import pytest

from fbc import Alphabet, Automorphism, GroupPresentation


def make(names, images):
    return GroupPresentation.from_images(names, images)


@pytest.fixture(scope="session")
def swap():
    return make("ab", ["b", "a"])


@pytest.fixture(scope="session")
def nielsen():
    return make("ab", ["a b", "b"])


@pytest.fixture(scope="session")
def trivial():
    return make("ab", ["a", "b"])


@pytest.fixture(scope="session")
def f2():
    return Alphabet("ab")


@pytest.fixture
def rng():
    return random.Random(20261016)


def random_word(rng, rank, maxlen):
    from fbc.words import reduce
    n = rng.randint(0, maxlen)
    return reduce([rng.choice([1, -1]) * rng.randint(1, rank) for _ in range(n)])


def random_reduced(rng, rank, length):
    w = []
    while len(w) < length:
        x = rng.choice([1, -1]) * rng.randint(1, rank)
        if not w or w[-1] != -x:
            w.append(x)
    return tuple(w)
