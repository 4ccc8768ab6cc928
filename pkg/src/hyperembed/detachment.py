"""Fair 3-uniform detachments of colored amalgamated hypergraphs.

A vertex ``x`` that must become ``g(x)`` vertices is split one vertex at a
time.  Each split hands a new vertex ``u`` one hinge from some of the edges
at ``x``.  For every hyperedge key ``K`` and color ``j`` the fair share of
``u`` is ``c_x(K) * count(K, j) / g`` where ``c_x(K)`` is the number of
hinges ``K`` has at ``x`` and ``g`` the current fiber size of ``x``.  The
split rounds the whole share matrix at once so that every entry, every key
total (summed over colors) and every color total (the degree of ``u`` in
that color) lies between the floor and the ceiling of its exact share.
Such a rounding always exists (Baranyai's rounding lemma) and is found as a
feasible circulation.  Because each rounded quantity stays inside the
floor/ceil interval of its share, the intervals nest from one split to the
next and the finished detachment meets the per-vertex degree and
per-triple multiplicity bounds measured against the original hypergraph.
"""

from __future__ import annotations

import random
from collections import Counter, defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

import networkx as nx

from .errors import DetachmentError, PreconditionError
from .hypergraph import UNCOLORED, Hypergraph, dumps

__all__ = [
    "DetachmentResult",
    "check_preconditions",
    "detach",
    "round_matrix",
    "split_one",
]


@dataclass(frozen=True)
class DetachmentResult:
    detached: Hypergraph
    psi: Mapping[int, int]
    seed: int

    def number_function(self) -> dict:
        return dict(sorted(Counter(self.psi.values()).items()))

    def to_json(self) -> dict:
        data = self.detached.to_json()
        data["psi"] = {str(u): x for u, x in sorted(self.psi.items())}
        data["seed"] = self.seed
        return data

    def dumps(self) -> str:
        return dumps(self.to_json())

    @classmethod
    def from_json(cls, data) -> DetachmentResult:
        psi = {int(u): int(x) for u, x in data["psi"].items()}
        return cls(Hypergraph.from_json(data), psi, int(data.get("seed", 0)))


def check_preconditions(F: Hypergraph, g: Mapping[int, int]) -> list:
    """Every reason ``F`` cannot have a 3-uniform ``g``-detachment, as text.

    Besides the number-function requirements (``g(x) <= 2`` forbids loops
    ``{x,x,x}``; ``g(x) == 1`` forbids ``{x,x,y}``) the edges themselves must
    carry exactly three hinges.
    """
    problems = []
    for x in F.vertices:
        if x not in g:
            problems.append(f"g undefined at vertex {x}")
        elif int(g[x]) < 1:
            problems.append(f"g({x}) = {g[x]} is not a positive integer")
    extra = sorted(set(g) - set(F.vertices))
    if extra:
        problems.append(f"g defined outside V(F): {extra}")
    for key, count in sorted(F.keys().items()):
        if len(key) != 3:
            problems.append(f"edge {list(key)} has {len(key)} hinges, expected 3")
            continue
        for x, c in Counter(key).items():
            gx = int(g.get(x, 0))
            if c == 3 and gx <= 2 and gx >= 1:
                problems.append(f"m({x}^3) = {count} but g({x}) = {gx} <= 2")
            elif c == 2 and gx == 1:
                problems.append(f"m({x}^2,{[y for y in key if y != x][0]}) = {count} but g({x}) = 1")
    return problems


def round_matrix(values: Mapping, rng: random.Random | None = None) -> dict:
    """Round a non-negative rational matrix keeping all margins fair.

    ``values`` maps ``(row, col)`` to a ``Fraction``.  Returns integers
    ``t[row, col]`` with ``floor(v) <= t <= ceil(v)`` entrywise and the same
    floor/ceil property for every row sum and every column sum.  ``rng``
    perturbs arc costs so different seeds may pick different roundings.
    """
    if not values:
        return {}
    rng = rng or random.Random(0)
    rows: dict = defaultdict(Fraction)
    cols: dict = defaultdict(Fraction)
    for (i, j), v in values.items():
        if v < 0:
            raise ValueError("round_matrix needs non-negative entries")
        rows[i] += v
        cols[j] += v

    net = nx.DiGraph()
    demand: Counter = Counter()

    def arc(a, b, value, cost=0):
        lo, hi = _floor(value), _ceil(value)
        net.add_edge(a, b, capacity=hi - lo, weight=cost)
        demand[a] += lo
        demand[b] -= lo

    src, snk = ("s",), ("t",)
    row_ids = {r: ("r", n) for n, r in enumerate(rows)}
    col_ids = {c: ("c", n) for n, c in enumerate(cols)}
    net.add_nodes_from([src, snk, *row_ids.values(), *col_ids.values()])
    for r, total in rows.items():
        arc(src, row_ids[r], total)
    cells = list(values.items())
    rng.shuffle(cells)
    for (i, j), v in cells:
        arc(row_ids[i], col_ids[j], v, rng.randrange(1 << 16))
    for c, total in cols.items():
        arc(col_ids[c], snk, total)
    net.add_edge(snk, src, capacity=sum(_ceil(t) for t in rows.values()), weight=0)
    for node in net.nodes:
        net.nodes[node]["demand"] = demand[node]

    try:
        _, flow = nx.network_simplex(net)
    except nx.NetworkXUnfeasible as exc:
        raise DetachmentError("no fair rounding exists for the split matrix") from exc
    return {(i, j): _floor(v) + flow[row_ids[i]][col_ids[j]] for (i, j), v in values.items()}


def _floor(q: Fraction) -> int:
    return q.numerator // q.denominator


def _ceil(q: Fraction) -> int:
    return -(-q.numerator // q.denominator)


def _split_counts(table: Mapping, x: int, g_x: int, u: int, rng: random.Random) -> dict:
    """One split on a raw ``{(key, color): count}`` table; returns the new table."""
    shares = {}
    for (key, color), count in table.items():
        c = key.count(x)
        if c:
            if c > g_x:
                raise DetachmentError(f"edge {key} has {c} hinges at {x} but only {g_x} fiber vertices remain")
            shares[key, color] = Fraction(c * count, g_x)
    moved = round_matrix(shares, rng)
    out: Counter = Counter(table)
    for (key, color), t in moved.items():
        if not t:
            continue
        out[key, color] -= t
        i = key.index(x)
        new_key = tuple(sorted(key[:i] + (u,) + key[i + 1:]))
        out[new_key, color] += t
    return {kc: c for kc, c in out.items() if c}


def split_one(F: Hypergraph, x: int, g_x: int, seed: int = 0, new_vertex: int | None = None):
    """Split one vertex off ``x``, which currently stands for ``g_x`` vertices.

    Returns ``(F', u)``: ``F'`` has the new vertex ``u`` carrying a fair
    ``1/g_x`` share of every color degree and every key multiplicity at
    ``x``; the residual ``x`` stands for ``g_x - 1`` vertices.
    """
    if g_x < 2:
        raise ValueError("split_one needs g_x >= 2")
    if x not in F:
        raise PreconditionError(f"vertex {x} not in hypergraph")
    u = max(F.vertices) + 1 if new_vertex is None else new_vertex
    if u in F:
        raise PreconditionError(f"vertex id {u} already in use")
    table = _split_counts(dict(F.table), x, g_x, u, random.Random(seed))
    return Hypergraph((*F.vertices, u), table), u


def detach(F: Hypergraph, g: Mapping[int, int], seed: int = 0) -> DetachmentResult:
    """Construct a 3-uniform ``g``-detachment of ``F`` with fair degrees and multiplicities.

    Detached vertex ids are dense: the fiber of amalgamated vertex ``x``
    (taken in increasing order of ``x``) occupies the next ``g(x)`` ids, and
    the residual copy of ``x`` is the first of them.
    """
    problems = check_preconditions(F, g)
    if any(color == UNCOLORED for _, color in F.table):
        problems.append("F has uncolored edges")
    if problems:
        raise PreconditionError("detachment preconditions violated", problems)

    rng = random.Random(seed)
    table = dict(F.table)
    next_id = max(F.vertices, default=-1) + 1
    fibers = {x: [x] for x in F.vertices}
    for x in F.vertices:
        remaining = int(g[x])
        while remaining > 1:
            u = next_id
            next_id += 1
            try:
                table = _split_counts(table, x, remaining, u, rng)
            except DetachmentError as exc:
                exc.partial = {"table": table, "fibers": fibers, "vertex": x, "remaining": remaining}
                raise
            fibers[x].append(u)
            remaining -= 1

    relabel, psi = {}, {}
    for x in F.vertices:
        for v in fibers[x]:
            relabel[v] = len(relabel)
            psi[relabel[v]] = x
    detached: Counter = Counter()
    for (key, color), count in table.items():
        new_key = tuple(sorted(relabel[v] for v in key))
        if len(set(new_key)) != 3:
            raise DetachmentError(f"edge {new_key} is not 3-uniform after detachment", {"table": table})
        detached[new_key, color] += count
    return DetachmentResult(Hypergraph(psi, detached), psi, seed)
