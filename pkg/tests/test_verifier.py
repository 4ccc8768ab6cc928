from collections import Counter
from math import comb

from hyperembed.detachment import detach
from hyperembed.embedding_full import EmbeddingInstance, embed
from hyperembed.embedding_restricted import PiecesInstance, embed_restricted
from hyperembed.factorization import generate_r_factorization, one_vertex_amalgam
from hyperembed.hypergraph import Hypergraph, complete_3_uniform
from hyperembed.verifier import verify_detachment, verify_embedding, verify_factorization

from helpers import hand_pieces_valid, monochromatic, rainbow


def check_named(cert, prefix):
    return next(c for c in cert.checks if c.name.startswith(prefix))


def test_generated_factorization_passes():
    cert = verify_factorization(generate_r_factorization(9, 1), 1)
    assert cert.overall
    assert check_named(cert, "number of color classes").actual == 28


def test_two_colored_k4_is_not_a_factorization():
    G = complete_3_uniform(4).recolor({0: 1})
    table = Counter(G.table)
    del table[(0, 1, 2), 1]
    table[(0, 1, 2), 2] = 1
    cert = verify_factorization(Hypergraph(range(4), table))
    assert not cert.overall
    assert any("regular" in c.name for c in cert.failed())


def test_monochromatic_k4_is_a_3_factorization():
    assert verify_factorization(monochromatic(4), 3).overall
    assert not verify_factorization(monochromatic(4), 1).overall


def test_missing_and_repeated_triples_detected():
    G = generate_r_factorization(6, 1)
    table = Counter(G.table)
    (key, color), _ = next(iter(sorted(table.items())))
    table[key, color] += 1
    cert = verify_factorization(Hypergraph(G.vertices, table), 1)
    assert check_named(cert, "complete").actual["repeated"] == 1


def test_embedding_passes_then_fails_after_recoloring_an_old_triple():
    inst = EmbeddingInstance(4, 12, 1, rainbow(4))
    G = embed(inst)
    assert verify_embedding(inst.coloring, G, "full", 1).overall
    table = Counter(G.table)
    a, b = ((0, 1, 2), 1), ((0, 1, 3), 2)
    # swap colors between two old triples
    del table[a], table[b]
    table[a[0], 2] = 1
    table[b[0], 1] = 1
    cert = verify_embedding(inst.coloring, Hypergraph(G.vertices, table), "full", 1)
    assert not cert.overall
    assert check_named(cert, "triple").actual == 4 - 2


def test_restricted_counts_recomputed():
    inst = PiecesInstance(3, 6, 2, hand_pieces_valid())
    G = embed_restricted(inst)
    cert = verify_embedding(inst.pieces, G, "restricted", 2)
    assert cert.overall
    # distinct (piece, color) entries, recounted directly from the fixture
    sizes = Counter(len(key) for (key, _) in inst.pieces.table)
    assert check_named(cert, "pair-piece").actual == sizes[2] == 9
    assert check_named(cert, "single-piece").actual == sizes[1] == 9
    assert check_named(cert, "triple").actual == 1


def test_full_mode_rejects_piece_input():
    inst = PiecesInstance(3, 6, 2, hand_pieces_valid())
    G = embed_restricted(inst)
    assert not verify_embedding(inst.pieces, G, "full", 2).overall


def test_detachment_of_one_vertex_amalgam():
    F = one_vertex_amalgam(9, 1)
    res = detach(F, {0: 9}, seed=1)
    cert = verify_detachment(F, res.detached, res.psi, {0: 9})
    assert cert.overall
    assert verify_factorization(res.detached, 1).overall
    a2 = check_named(cert, "A2")
    assert a2.actual["checked"] == comb(9, 3)


def test_moving_an_edge_breaks_round_trip():
    F = one_vertex_amalgam(6, 1)
    res = detach(F, {0: 6})
    G = res.detached
    table = Counter(G.table)
    (key, color), _ = next(iter(sorted(table.items())))
    table[key, color] -= 1
    if not table[key, color]:
        del table[key, color]
    other = 1 + color % max(G.colors())
    table[key, other] += 1
    cert = verify_detachment(F, Hypergraph(G.vertices, table), res.psi)
    assert not cert.overall
    assert not check_named(cert, "amalgamating").passed


def test_identity_detachment_passes():
    G = rainbow(5)
    psi = {v: v for v in G.vertices}
    assert verify_detachment(G, G, psi).overall


def test_wrong_fiber_sizes_are_reported():
    G = rainbow(5)
    cert = verify_detachment(G, G, {v: v for v in G.vertices}, {v: 2 for v in G.vertices})
    assert not check_named(cert, "fiber sizes").passed


def test_certificate_json_is_stable():
    cert = verify_factorization(generate_r_factorization(6, 1))
    assert cert.dumps() == verify_factorization(generate_r_factorization(6, 1)).dumps()
    data = cert.to_json()
    assert data["kind"] == "factorization" and data["overall"] is True
