from itertools import combinations
from math import comb

import pytest

from hyperembed.errors import PreconditionError
from hyperembed.factorization import factorization_exists, generate_r_factorization, one_vertex_amalgam
from hyperembed.verifier import verify_factorization


@pytest.mark.parametrize("m, r, expected", [(9, 1, True), (7, 3, True), (7, 1, False), (4, 3, True), (6, 4, False), (2, 1, False)])
def test_factorization_exists(m, r, expected):
    assert factorization_exists(m, r) is expected


def test_k4_is_its_own_3_factor():
    G = generate_r_factorization(4, 3)
    assert G.colors() == [1]
    assert G.num_edges() == 4 and G.is_r_factor(1, 3)


def test_nine_points_parallel_classes():
    G = generate_r_factorization(9, 1)
    assert len(G.colors()) == comb(8, 2) == 28
    for j in G.colors():
        cls = [key for (key, c) in G.table if c == j]
        assert len(cls) == 3
        assert sorted(v for key in cls for v in key) == list(range(9))


def test_seven_points_three_factors():
    G = generate_r_factorization(7, 3)
    assert len(G.colors()) == comb(6, 2) // 3 == 5
    for j in G.colors():
        H = G.color_class(j)
        assert H.num_edges() == 7 and H.is_r_factor(j, 3)


@pytest.mark.parametrize("m, r", [(6, 1), (6, 2), (8, 3), (10, 6)])
def test_generated_factorizations_verify(m, r):
    G = generate_r_factorization(m, r, seed=4)
    assert verify_factorization(G, r).overall
    per_color = {j: G.color_class(j).num_edges() for j in G.colors()}
    assert set(per_color.values()) == {r * m // 3}
    assert sum(per_color.values()) == comb(m, 3) == len(list(combinations(range(m), 3)))


def test_one_vertex_amalgam_census():
    F = one_vertex_amalgam(9, 1)
    assert F.multiplicity([0, 0, 0]) == comb(9, 3)
    assert all(F.degree(0, j) == 9 for j in F.colors())


def test_generation_refuses_impossible_parameters():
    with pytest.raises(PreconditionError):
        generate_r_factorization(7, 1)


def test_generation_is_deterministic():
    a = generate_r_factorization(9, 2, seed=7)
    assert a == generate_r_factorization(9, 2, seed=7)
