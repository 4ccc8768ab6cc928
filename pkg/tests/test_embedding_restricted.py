import random
from collections import Counter
from math import comb

import pytest

from hyperembed.embedding_full import EmbeddingInstance, bound_min_n, build_amalgam, embed
from hyperembed.embedding_restricted import (
    PiecesInstance,
    build_f_prime,
    check_conditions_restricted,
    embed_restricted,
    fill_counts,
    piece_census,
    pieces_from_embedding,
)
from hyperembed.errors import IneligibleInstanceError, PreconditionError
from hyperembed.hypergraph import Hypergraph
from hyperembed.verifier import verify_embedding

from helpers import hand_pieces_all_singleton_last, hand_pieces_valid, rainbow, random_partial_coloring, valid_rs


def hand_instance():
    return PiecesInstance(3, 6, 2, hand_pieces_valid())


def test_hand_instance_passes_every_condition():
    rep = check_conditions_restricted(hand_instance())
    assert rep.ok, rep.failures()
    assert rep.k == 5


def test_hand_instance_census():
    census = piece_census(hand_pieces_valid())
    assert sum(census.f.values()) == 9 and sum(census.e.values()) == 1
    assert sum(census.g.values()) == 3 * comb(3, 2)
    ell = fill_counts(hand_instance(), census)
    assert ell == {1: 1, 2: 0, 3: 0, 4: 0, 5: 0}
    assert sum(ell.values()) == comb(3, 3)


def test_per_vertex_degree_identity():
    F = hand_pieces_valid()
    assert comb(2, 2) + 2 * 3 + comb(3, 2) == comb(5, 2) == 10
    assert all(F.degree(v) == 10 for v in F.vertices)


def test_singleton_color_fails_condition_v():
    inst = PiecesInstance(3, 6, 2, hand_pieces_all_singleton_last())
    rep = check_conditions_restricted(inst)
    assert [name for name, ok in rep.checks.items() if not ok] == ["v"]
    assert "[5]" in rep.details["v"]
    with pytest.raises(IneligibleInstanceError):
        embed_restricted(inst)


def test_census_violation_is_reported():
    F = hand_pieces_valid()
    table = Counter(F.table)
    table[(0, 1), 1] += 1
    inst = PiecesInstance(3, 6, 2, Hypergraph(range(3), table))
    assert not check_conditions_restricted(inst).checks["well-formed"]
    with pytest.raises(PreconditionError):
        build_f_prime(inst)


def test_build_f_prime_extends_pieces():
    Fp = build_f_prime(hand_instance())
    u = 3
    assert Fp.table[(0, 1, u), 2] == 1
    assert Fp.table[(2, u, u), 1] == 1
    assert Fp.multiplicity([u, u, u]) == comb(3, 3) == 1
    assert Fp.table[(u, u, u), 0] == 1


def test_build_f_prime_conserves_hinges():
    inst = hand_instance()
    before = sum(len(k) * c for (k, _), c in inst.pieces.table.items())
    pairs = sum(c for (k, _), c in inst.pieces.table.items() if len(k) == 2)
    singles = sum(c for (k, _), c in inst.pieces.table.items() if len(k) == 1)
    after = sum(len(k) * c for (k, _), c in build_f_prime(inst).table.items())
    assert after - before == pairs + 2 * singles + 3 * comb(inst.n - inst.m, 3)


def test_f_prime_matches_full_amalgam_shape():
    # ignoring colors, F' has the same key multiplicities as the one-vertex amalgam of K_n^3
    full, _ = build_amalgam(EmbeddingInstance(4, 12, 1, rainbow(4)))
    pieces = pieces_from_embedding(embed(EmbeddingInstance(4, 12, 1, rainbow(4))), 4)
    assert build_f_prime(pieces).keys() == full.keys()


def test_embed_hand_instance():
    inst = hand_instance()
    G = embed_restricted(inst, seed=0)
    assert len(G.colors()) == 5
    assert all(G.color_class(j).num_edges() == 4 and G.is_r_factor(j, 2) for j in G.colors())
    assert G.num_edges() == comb(6, 3)
    cert = verify_embedding(inst.pieces, G, "restricted", 2)
    assert cert.overall


def test_necessity_identities_on_output():
    inst = hand_instance()
    G = embed_restricted(inst)
    m, n, r = 3, 6, 2
    for j in G.colors():
        by_old = Counter(sum(v < m for v in key) for (key, c), cnt in G.table.items() if c == j for _ in range(cnt))
        e, f, g, ell = by_old[3], by_old[2], by_old[1], by_old[0]
        assert r * (n - m) == 3 * ell + 2 * g + f
        assert r * m == g + 2 * f + 3 * e


def generated_instances(count, seed=0):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        m = rng.choice([3, 4])
        n = rng.choice([6, 9]) if m == 3 else bound_min_n(4)
        r = rng.choice(valid_rs(n)[:3])
        coloring = random_partial_coloring(m, r, comb(n - 1, 2) // r, rng)
        G = embed(EmbeddingInstance(m, n, r, coloring), rng.randrange(1000), enforce_bound=m >= 4)
        out.append(pieces_from_embedding(G, m, r))
    return out


@pytest.mark.parametrize("inst", generated_instances(6), ids=lambda i: f"m{i.m}n{i.n}r{i.r}")
def test_generated_instances_round_trip(inst):
    rep = check_conditions_restricted(inst)
    assert rep.ok
    ell = fill_counts(inst, piece_census(inst.pieces))
    assert min(ell.values()) >= 0
    assert sum(ell.values()) == comb(inst.n - inst.m, 3)
    G = embed_restricted(inst, seed=2)
    assert verify_embedding(inst.pieces, G, "restricted", inst.r).overall


def test_condition_v_iff_fill_counts_nonnegative():
    candidates = generated_instances(4, seed=5) + [PiecesInstance(3, 6, 2, hand_pieces_all_singleton_last()), hand_instance()]
    for inst in candidates:
        rep = check_conditions_restricted(inst)
        ell = fill_counts(inst, piece_census(inst.pieces))
        assert rep.checks["v"] == (min(ell.values()) >= 0)


def test_pieces_instance_json_round_trip():
    inst = hand_instance()
    again = PiecesInstance.from_json(inst.to_json())
    assert again == inst
