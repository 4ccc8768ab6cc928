"""Embeddings of hyperedge-colored K_m^3 into r-factorizations of K_n^3."""

from .detachment import DetachmentResult, check_preconditions, detach, split_one
from .embedding_full import (
    ColorCensus,
    EmbeddingInstance,
    bound_min_n,
    check_conditions,
    counterexample,
    embed,
    infeasibility_witness,
)
from .embedding_restricted import PiecesInstance, build_f_prime, check_conditions_restricted, embed_restricted
from .factorization import factorization_exists, generate_r_factorization
from .hypergraph import (
    Hypergraph,
    amalgamate,
    color_class,
    complete_3_uniform,
    complete_uniform,
    degree,
    is_r_factor,
    lambda_multiple,
    multiplicity,
    union,
)
from .verifier import Certificate, verify_detachment, verify_embedding, verify_factorization

__version__ = "0.1.0"
