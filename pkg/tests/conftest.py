import random

import pytest
from hypothesis import strategies as st

from nanowords.moves import random_walk
from nanowords.words import (CLOSED, CROSSING, CUSP, FRONT, FRONT_ALPHABET, LONG,
                             SMOOTH_ALPHABET, EtaleWord, LetterDecl, base_curve)

# acceptance lines collected by tests/test_acceptance.py
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)


def make_word(curve_class, crossings, cusps=0, rng=None, index=0):
    """Random word with the given letter counts (not necessarily realizable)."""
    rng = rng or random.Random(0)
    alphabet = FRONT_ALPHABET if curve_class == FRONT else SMOOTH_ALPHABET
    names = [f"L{k}" for k in range(crossings + cusps)]
    decls = [LetterDecl(n, CROSSING if k < crossings else CUSP, rng.choice(alphabet))
             for k, n in enumerate(names)]
    occ = names[:crossings] * 2 + names[crossings:]
    rng.shuffle(occ)
    return EtaleWord(curve_class, tuple(decls), tuple(occ), None if curve_class == LONG else index)


@st.composite
def words(draw, curve_class=CLOSED, max_letters=6, max_cusps=0):
    n = draw(st.integers(0, max_letters))
    k = draw(st.integers(0, max_cusps)) * 2 if curve_class == FRONT else 0
    seed = draw(st.integers(0, 2**32 - 1))
    index = draw(st.integers(-3, 3))
    return make_word(curve_class, n, k, random.Random(seed), index)


def reachable(family, index, cusps=None, walks=4, steps=60, seed=0):
    """Words visited by a few seeded walks from a base curve."""
    start = base_curve(family, index, cusps)
    out = []
    for t in range(walks):
        out += random_walk(start, steps, seed + t, kind_weights={"III": 4}).words
    return out


@pytest.fixture(scope="session")
def closed_pool():
    return reachable("K", 2, walks=6) + reachable("K", 0, walks=2, seed=100)


@pytest.fixture(scope="session")
def long_pool():
    return reachable("L", 1, walks=6) + reachable("L", -2, walks=2, seed=100)


@pytest.fixture(scope="session")
def front_pool():
    return reachable("KF", 1, 1, walks=6) + reachable("KF", 0, 2, walks=2, seed=100)
