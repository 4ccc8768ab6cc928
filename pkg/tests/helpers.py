"""Fixture builders shared by the test modules."""

import random
from collections import Counter
from itertools import combinations
from math import comb

from hyperembed.hypergraph import Hypergraph, amalgamate, complete_3_uniform, fiber_sizes

A, B, C = 0, 1, 2


def rainbow(m):
    return Hypergraph(range(m), {(t, i + 1): 1 for i, t in enumerate(combinations(range(m), 3))})


def monochromatic(m, color=1):
    return complete_3_uniform(m).recolor({0: color})


def _pieces(classes):
    table = Counter()
    for color, pieces in classes.items():
        for p in pieces:
            table[tuple(sorted(p)), color] += 1
    return Hypergraph(range(3), table)


def hand_pieces_valid():
    """m=3, n=6, r=2, k=5 pieces coloring that embeds."""
    return _pieces({
        1: [(A, B, C), (A, B), (C,)],
        2: [(A, B), (A, C), (B,), (C,)],
        3: [(A, B), (B, C), (A,), (C,)],
        4: [(A, C), (B, C), (A,), (B,)],
        5: [(A, C), (B, C), (A,), (B,)],
    })


def hand_pieces_all_singleton_last():
    """Same census, but color 5 consists of single pieces only."""
    return _pieces({
        1: [(A, B, C), (A,), (B,), (C,)],
        2: [(A, B), (A, C), (B, C)],
        3: [(A, B), (A, C), (B, C)],
        4: [(A, B), (A, C), (B, C)],
        5: [(A,), (A,), (B,), (B,), (C,), (C,)],
    })


def valid_rs(n):
    d = comb(n - 1, 2)
    return [r for r in range(1, d + 1) if d % r == 0 and (r * n) % 3 == 0]


def random_partial_coloring(m, r, k, rng):
    """Random coloring of K_m^3 with colors in 1..k and every color degree <= r."""
    triples = list(combinations(range(m), 3))
    for _ in range(1000):
        rng.shuffle(triples)
        palette = rng.sample(range(1, k + 1), rng.randint(1, min(k, len(triples))))
        deg = Counter()
        table = {}
        for t in triples:
            options = [j for j in palette if all(deg[v, j] < r for v in t)]
            if not options:
                unused = [j for j in range(1, k + 1) if j not in palette]
                if not unused:
                    break
                palette.append(rng.choice(unused))
                options = [palette[-1]]
            j = rng.choice(options)
            table[t, j] = 1
            for v in t:
                deg[v, j] += 1
        else:
            return Hypergraph(range(m), table)
    raise RuntimeError("could not build a random coloring")


def random_colored_complete(n, k, rng):
    return Hypergraph(range(n), {(t, rng.randint(1, k)): 1 for t in combinations(range(n), 3)})


def random_surjection(n, rng):
    w = rng.randint(1, n)
    image = list(range(w)) + [rng.randrange(w) for _ in range(n - w)]
    rng.shuffle(image)
    return dict(enumerate(image))


def random_amalgam(rng, n_max=9):
    """(G, F, psi, g): a random colored K_n^3 and one of its amalgamations."""
    n = rng.randint(3, n_max)
    G = random_colored_complete(n, rng.randint(1, 6), rng)
    psi = random_surjection(n, rng)
    return G, amalgamate(G, psi), psi, fiber_sizes(psi)
