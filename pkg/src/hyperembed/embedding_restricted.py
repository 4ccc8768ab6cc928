"""Embedding a colored K_m^3 together with colored pieces of the future edges.

The input lives on the old vertices ``0..m-1`` and holds every triple once,
every pair ``n - m`` times and every single vertex ``C(n-m, 2)`` times.  A
pair piece ``{v, w}`` of color ``j`` becomes a color ``j`` edge ``{v, w, x}``
with ``x`` new; a single piece ``{v}`` becomes ``{v, x, y}`` with ``x, y``
new.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Mapping

from .detachment import detach
from .embedding_full import ColorCensus, EligibilityReport
from .errors import ConstructionError, IneligibleInstanceError, PreconditionError
from .hypergraph import UNCOLORED, Hypergraph


@dataclass(frozen=True)
class PiecesInstance:
    m: int
    n: int
    r: int
    pieces: Hypergraph

    @property
    def k(self) -> int | None:
        d = comb(self.n - 1, 2)
        return d // self.r if self.r > 0 and d % self.r == 0 else None

    def to_json(self) -> dict:
        data = self.pieces.to_json()
        data.update(m=self.m, n=self.n, r=self.r)
        return data

    @classmethod
    def from_json(cls, data: Mapping, n: int | None = None, r: int | None = None) -> PiecesInstance:
        pieces = Hypergraph.from_json(data)
        n = data.get("n") if n is None else n
        r = data.get("r") if r is None else r
        if n is None or r is None:
            raise PreconditionError("instance needs both n and r")
        return cls(len(pieces), int(n), int(r), pieces)


def piece_census(pieces: Hypergraph) -> ColorCensus:
    """e_j, f_j, g_j: number of color-j pieces on 3, 2 and 1 vertices."""
    census = ColorCensus()
    slot = {3: census.e, 2: census.f, 1: census.g}
    for j in pieces.colors():
        for d in slot.values():
            d[j] = 0
    for (key, color), count in pieces.table.items():
        slot[len(key)][color] += count
    return census


def _census_problem(inst: PiecesInstance) -> str:
    m, n = inst.m, inst.n
    if inst.pieces.vertices != tuple(range(m)):
        return f"vertices must be 0..{m - 1}"
    if n <= m:
        return f"need n > m, got n={n}, m={m}"
    if any(color == UNCOLORED for _, color in inst.pieces.table):
        return "some piece is uncolored"
    expected = {}
    for size, mult in ((3, 1), (2, n - m), (1, comb(n - m, 2))):
        if mult:
            for t in combinations(range(m), size):
                expected[t] = mult
    got = dict(inst.pieces.keys())
    if got != expected:
        wrong = sorted(set(got) ^ set(expected) | {t for t in got if got[t] != expected.get(t)})
        return f"piece multiplicities differ from K_m^3 + (n-m)K_m^2 + C(n-m,2)K_m^1 at {[list(t) for t in wrong[:5]]}"
    return ""


def check_conditions_restricted(inst: PiecesInstance) -> EligibilityReport:
    m, n, r = inst.m, inst.n, inst.r
    rep = EligibilityReport()
    problem = "" if r >= 1 else f"r must be positive, got {r}"
    problem = problem or _census_problem(inst)
    rep.checks["well-formed"] = not problem
    rep.details["well-formed"] = problem or "exact piece census"

    rep.checks["i"] = (r * n) % 3 == 0
    rep.details["i"] = f"3 | r*n = {r * n}"
    d = comb(n - 1, 2)
    rep.checks["ii"] = r >= 1 and d % r == 0
    rep.details["ii"] = f"r = {r} | C(n-1,2) = {d}"
    rep.k = k = d // r if rep.checks["ii"] else None
    colors = inst.pieces.colors()
    rep.checks["iii"] = k is not None and set(colors) <= set(range(1, k + 1))
    rep.details["iii"] = f"colors {colors[:3]}{'...' if len(colors) > 3 else ''} drawn from 1..k, k = C(n-1,2)/r = {k}"
    if k is None:
        rep.checks["iv"] = False
        rep.details["iv"] = "k undefined"
    else:
        bad = [(v, j) for j in range(1, k + 1) for v in range(m) if v in inst.pieces and inst.pieces.degree(v, j) != r]
        rep.checks["iv"] = not bad and len(inst.pieces) == m
        rep.details["iv"] = f"(vertex, color) pairs with degree != r: {bad[:5]}" if bad else f"every color has degree {r} at every vertex"
    census = piece_census(inst.pieces)
    short = [j for j in colors if 3 * (census.f[j] + 2 * census.e[j]) < r * (3 * m - n)]
    if k is not None:
        short += [j for j in range(1, k + 1) if j not in census.f and 0 < r * (3 * m - n)]
    rep.checks["v"] = not short
    rep.details["v"] = f"colors with f_j + 2e_j < r(m - n/3): {sorted(short)}" if short else "f_j + 2e_j >= r(m - n/3) for all j"
    return rep


def fill_counts(inst: PiecesInstance, census: ColorCensus) -> dict:
    base = inst.r * inst.n // 3 - inst.r * inst.m
    return {j: base + census.f.get(j, 0) + 2 * census.e.get(j, 0) for j in range(1, inst.k + 1)}


def build_f_prime(inst: PiecesInstance) -> Hypergraph:
    """Extend every piece through a new vertex ``u = m`` and add C(n-m,3) uncolored loops at ``u``."""
    problem = _census_problem(inst)
    if problem:
        raise PreconditionError("piece census violated", [problem])
    u = inst.m
    table: Counter = Counter()
    for (key, color), count in inst.pieces.table.items():
        table[key + (u,) * (3 - len(key)), color] += count
    loops = comb(inst.n - inst.m, 3)
    if loops:
        table[(u, u, u), UNCOLORED] = loops
    return Hypergraph(range(inst.m + 1), table)


def color_loops(F_prime: Hypergraph, u: int, ell: Mapping) -> Hypergraph:
    table: Counter = Counter(F_prime.table)
    loops = table.pop(((u, u, u), UNCOLORED), 0)
    if sum(ell.values()) != loops:
        raise ConstructionError(f"fill counts sum to {sum(ell.values())}, expected {loops}")
    for j, count in ell.items():
        if count:
            table[(u, u, u), j] += count
    return Hypergraph(F_prime.vertices, table)


def embed_restricted(inst: PiecesInstance, seed: int = 0) -> Hypergraph:
    """Colored K_n^3 whose classes are r-factors and whose traces on the old vertices are the pieces."""
    rep = check_conditions_restricted(inst)
    if not rep.ok:
        raise IneligibleInstanceError("instance fails a necessary condition", rep.failures())
    ell = fill_counts(inst, piece_census(inst.pieces))
    negative = {j: v for j, v in ell.items() if v < 0}
    if negative:
        raise ConstructionError(f"negative fill counts {negative} although every condition holds")
    F3 = color_loops(build_f_prime(inst), inst.m, ell)
    g = {v: 1 for v in range(inst.m)}
    g[inst.m] = inst.n - inst.m
    return detach(F3, g, seed).detached


def pieces_from_embedding(G: Hypergraph, m: int, r: int | None = None) -> PiecesInstance:
    """Read the pieces on old vertices ``0..m-1`` off a colored K_n^3.

    Every edge contributes its intersection with the old vertices (if any)
    in its own color.  ``r`` defaults to the degree of vertex 0 in the
    first color.
    """
    table: Counter = Counter()
    for (key, color), count in G.table.items():
        trace = tuple(v for v in key if v < m)
        if trace:
            table[trace, color] += count
    if r is None:
        r = G.degree(0, G.colors()[0])
    return PiecesInstance(m, len(G), r, Hypergraph(range(m), table))
