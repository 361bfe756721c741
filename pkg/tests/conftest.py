import random

import pytest

from abelprym.abgroup import Coordinates, span, standard_automorphisms, standard_elements
from abelprym.coverdata import PrymDatum, parse_block, validate

GOLDEN = {
    "z6_four": "N=6; A=1,3,4,4; H=2",
    "z3sq_four": "N=3; A=1,1,1,0;0,0,2,1; H=0,1",
    "z6_five": "N=6; A=1,1,1,1,2; H=2",
    "z3sq_five": "N=3; A=1,0,1,2,2;0,2,2,0,2; H=0,1",
    "z2cube_six": "N=2; A=0,0,1,1,0,0;0,1,1,1,0,1;1,1,1,1,1,1; H=1,0,0;0,1,0",
}


@pytest.fixture
def golden():
    return {k: parse_block(v) for k, v in GOLDEN.items()}


def random_prym(rng, max_N=12, max_m=3, min_s=3, max_s=7, max_group=None):
    """A random valid datum; H is generated by one or two random elements and is nontrivial."""
    while True:
        N = rng.randint(2, max_N)
        m = rng.randint(1, max_m)
        s = rng.randint(min_s, max_s)
        cols = [[rng.randrange(N) for _ in range(m)] for _ in range(s - 1)]
        last = [-sum(c[i] for c in cols) % N for i in range(m)]
        cols.append(last)
        if any(not any(c) for c in cols):
            continue
        rows = [[c[i] for c in cols] for i in range(m)]
        datum = validate(N, rows)
        G = datum.group
        if max_group is not None and len(G) > max_group:
            continue
        gens = [rng.choice(G.elements) for _ in range(rng.randint(1, 2))]
        if not any(any(g) for g in gens):
            gens = [datum.columns[0]]
        return PrymDatum.make(datum, gens)


def relabel(prym, rng):
    """Apply a random automorphism of G~, a random column permutation and a random
    invertible row operation; the result describes an equivalent family."""
    return relabeler(prym)(rng)


def relabeler(prym):
    datum = prym.datum
    N, m = datum.N, datum.m
    coords = Coordinates(datum.group)
    table = standard_automorphisms(coords.factors)
    std = standard_elements(coords.factors)

    def draw(rng):
        row = table[rng.randrange(len(table))]

        def phi(x):
            return coords.from_std[std[row[coords.index(x)]]]

        cols = [phi(c) for c in datum.columns]
        H = [phi(h) for h in prym.H.generators]
        order = list(range(datum.s))
        rng.shuffle(order)
        cols = [cols[j] for j in order]
        U = random_unimodular(m, N, rng)
        cols = [apply(U, c, N) for c in cols]
        H = [apply(U, h, N) for h in H]
        rows = [[c[i] for c in cols] for i in range(m)]
        return PrymDatum.make(validate(N, rows), H)

    return draw


def apply(U, v, N):
    return tuple(sum(a * b for a, b in zip(row, v)) % N for row in U)


def random_unimodular(m, N, rng):
    """Product of random elementary matrices over Z/N (always invertible)."""
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    for _ in range(3 * m):
        i, j = rng.randrange(m), rng.randrange(m)
        if i == j:
            unit = rng.choice([u for u in range(1, N) if _gcd(u, N) == 1])
            U[i] = [unit * x % N for x in U[i]]
        else:
            k = rng.randrange(N)
            U[i] = [(x + k * y) % N for x, y in zip(U[i], U[j])]
    return U


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


@pytest.fixture
def rng():
    return random.Random(20241017)


def cyclic(N, gens=((1,),)):
    return span(list(gens), N, 1)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
