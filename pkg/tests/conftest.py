import random

import pytest

from freeinv.fiber import build_fiber_algebra, enumerate_involutions
from freeinv.pages import DerivationSpace, build_e2, d_squared_witness, last_page, turn_page

DESK_TRIPLES = [(1, 2, 4), (2, 3, 5), (1, 2, 3), (2, 2, 2), (1, 1, 2), (1, 2, 2), (2, 2, 4),
                (1, 1, 1)]


def random_triple(rng, top=9):
    while True:
        n = rng.randint(1, 4)
        m = rng.randint(n, 5)
        l = rng.randint(m, 6)
        if n + m + l <= top:
            return n, m, l


def random_walk(F, g, rng):
    """Pages E_2 .. E_final with a randomly chosen valid d_r on each.

    Returns ``[(P, D, next_page), ...]``."""
    P = build_e2(F, g)
    out = []
    for _ in range(2, last_page(F) + 1):
        space = DerivationSpace(P)
        sols = space.solve(limit=1 << 10)
        picks = rng.sample(sols, min(len(sols), 6))
        D = space.derivation(0)
        for c in picks:
            cand = space.derivation(c)
            if d_squared_witness(P, cand) is None:
                D = cand
                break
        nxt = turn_page(P, D)
        out.append((P, D, nxt))
        P = nxt
    return out


def random_instance(rng):
    t = random_triple(rng)
    F = build_fiber_algebra(t)
    g = rng.choice(enumerate_involutions(F))
    return F, g


@pytest.fixture
def rng():
    return random.Random(20261019)
