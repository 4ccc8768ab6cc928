"""r-factorizations of K_m^3 built by detaching a one-vertex amalgamation."""

from __future__ import annotations

from math import comb

from .detachment import detach
from .errors import PreconditionError
from .hypergraph import Hypergraph


def factorization_exists(m: int, r: int) -> bool:
    """Whether K_m^3 admits an r-factorization (3 | rm and r | C(m-1, 2))."""
    if m < 3 or r < 1:
        return False
    return (r * m) % 3 == 0 and comb(m - 1, 2) % r == 0


def one_vertex_amalgam(m: int, r: int) -> Hypergraph:
    """K_m^3 with all vertices identified, its C(m,3) loops split evenly over k colors."""
    k = comb(m - 1, 2) // r
    per_color = r * m // 3
    return Hypergraph([0], {((0, 0, 0), j): per_color for j in range(1, k + 1)})


def generate_r_factorization(m: int, r: int, seed: int = 0) -> Hypergraph:
    """A K_m^3 whose color classes 1..C(m-1,2)/r are r-factors.

    >>> G = generate_r_factorization(9, 1)
    >>> len(G.colors()), G.num_edges()
    (28, 84)
    """
    if not factorization_exists(m, r):
        raise PreconditionError(
            f"K_{m}^3 has no {r}-factorization",
            [f"need m >= 3, 3 | r*m and r | C(m-1,2); got m={m}, r={r}"],
        )
    return detach(one_vertex_amalgam(m, r), {0: m}, seed).detached
