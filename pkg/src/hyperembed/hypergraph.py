"""Hinge-count model for 3-uniform hypergraphs and their amalgamations.

A hyperedge is stored as a sorted tuple of vertex ids in which a vertex is
repeated once per hinge attaching it to the edge, so ``(4, 4, 7)`` is the
edge joining ``u=4`` twice and ``v=7`` once.  Parallel edges are aggregated:
the table maps ``(key, color)`` to a positive multiplicity.  Color ``0``
marks an uncolored edge.
"""

from __future__ import annotations

import json
from collections import Counter, defaultdict
from fractions import Fraction
from itertools import combinations
from math import comb
from types import MappingProxyType
from typing import Iterable, Mapping

from .errors import InvalidHypergraphError, InvalidOrderError, UnknownVertexError

Key = tuple  # sorted vertex ids with repetition, length 1..3
UNCOLORED = 0


def make_key(verts: Iterable[int]) -> Key:
    key = tuple(sorted(int(v) for v in verts))
    if not 1 <= len(key) <= 3:
        raise InvalidHypergraphError(f"hyperedge must carry 1 to 3 hinges, got {key}")
    if key[0] < 0:
        raise InvalidHypergraphError(f"negative vertex id in {key}")
    return key


def key_size(key: Key) -> int:
    """Number of distinct vertices joined by ``key`` (the size |e|)."""
    return len(set(key))


class Hypergraph:
    """Immutable colored multi-hypergraph keyed by hinge multisets."""

    __slots__ = ("_vertices", "_vertex_set", "_table", "_degree_cache", "_mult_cache")

    def __init__(self, vertices: Iterable[int], table: Mapping | Iterable = ()):
        self._vertices = tuple(sorted({int(v) for v in vertices}))
        self._vertex_set = frozenset(self._vertices)
        if any(v < 0 for v in self._vertices):
            raise InvalidHypergraphError("vertex ids must be non-negative")
        items = table.items() if isinstance(table, Mapping) else ((e[:2], e[2]) for e in table)
        acc: dict = defaultdict(int)
        for (verts, color), count in items:
            key = make_key(verts)
            color = int(color)
            count = int(count)
            if color < 0:
                raise InvalidHypergraphError(f"negative color {color}")
            if count < 0:
                raise InvalidHypergraphError(f"negative multiplicity for {key}")
            missing = set(key) - self._vertex_set
            if missing:
                raise InvalidHypergraphError(f"edge {key} uses vertices {sorted(missing)} outside the vertex set")
            acc[key, color] += count
        self._table = MappingProxyType({k: c for k, c in sorted(acc.items()) if c})
        self._degree_cache = None
        self._mult_cache = None

    # -- basic views -----------------------------------------------------

    @property
    def vertices(self) -> tuple:
        return self._vertices

    @property
    def table(self) -> Mapping:
        return self._table

    def __len__(self):
        return len(self._vertices)

    def __contains__(self, v):
        return v in self._vertex_set

    def __eq__(self, other):
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return self._vertices == other._vertices and dict(self._table) == dict(other._table)

    def __hash__(self):
        return hash((self._vertices, frozenset(self._table.items())))

    def __repr__(self):
        return f"Hypergraph(|V|={len(self._vertices)}, |E|={self.num_edges()}, colors={self.colors()})"

    def num_edges(self) -> int:
        return sum(self._table.values())

    def colors(self) -> list:
        return sorted({c for _, c in self._table})

    def keys(self) -> Counter:
        """Multiplicity of each hinge multiset, summed over colors."""
        if self._mult_cache is None:
            mult: Counter = Counter()
            for (key, _), count in self._table.items():
                mult[key] += count
            self._mult_cache = mult
        return self._mult_cache

    def _degrees(self):
        if self._degree_cache is None:
            total: Counter = Counter()
            per_color: dict = defaultdict(Counter)
            for (key, color), count in self._table.items():
                for v in key:
                    total[v] += count
                    per_color[color][v] += count
            self._degree_cache = (total, per_color)
        return self._degree_cache

    def degree(self, v: int, color: int | None = None) -> int:
        if v not in self._vertex_set:
            raise UnknownVertexError(v)
        total, per_color = self._degrees()
        if color is None:
            return total[v]
        return per_color[color][v] if color in per_color else 0

    def degrees(self, color: int | None = None) -> dict:
        total, per_color = self._degrees()
        src = total if color is None else per_color.get(color, {})
        return {v: src.get(v, 0) for v in self._vertices}

    def multiplicity(self, spec: Iterable[int]) -> int:
        key = make_key(spec)
        if len(key) != 3:
            raise InvalidHypergraphError(f"multiplicity spec must have three hinges, got {key}")
        for v in set(key):
            if v not in self._vertex_set:
                raise UnknownVertexError(v)
        return self.keys().get(key, 0)

    def color_class(self, color: int) -> Hypergraph:
        return Hypergraph(self._vertices, {kc: c for kc, c in self._table.items() if kc[1] == color})

    def is_r_factor(self, color: int, r: int) -> bool:
        return all(d == r for d in self.degrees(color).values())

    def restrict(self, vertices: Iterable[int]) -> Hypergraph:
        """Sub-hypergraph induced on ``vertices`` (edges entirely inside)."""
        keep = set(vertices)
        return Hypergraph(keep, {kc: c for kc, c in self._table.items() if set(kc[0]) <= keep})

    def recolor(self, mapping: Mapping) -> Hypergraph:
        acc: Counter = Counter()
        for (key, color), count in self._table.items():
            acc[key, mapping.get(color, color)] += count
        return Hypergraph(self._vertices, acc)

    # -- serialization ---------------------------------------------------

    def to_json(self) -> dict:
        return {
            "vertices": list(self._vertices),
            "edges": [
                {"verts": list(key), "color": color, "count": count}
                for (key, color), count in self._table.items()
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> Hypergraph:
        try:
            vertices = data["vertices"]
            edges = [((tuple(e["verts"]), e.get("color", UNCOLORED)), e.get("count", 1)) for e in data["edges"]]
        except (KeyError, TypeError) as exc:
            raise InvalidHypergraphError(f"malformed hypergraph JSON: {exc}") from exc
        acc: Counter = Counter()
        for kc, count in edges:
            acc[make_key(kc[0]), kc[1]] += count
        return cls(vertices, acc)


def dumps(obj) -> str:
    """Canonical JSON text used for every artifact (stable bytes)."""
    return json.dumps(obj, sort_keys=True, indent=1) + "\n"


# -- constructors and operations -----------------------------------------


def complete_uniform(n: int, size: int, color: int = UNCOLORED) -> Hypergraph:
    """K_n^size for size in 1..3: every ``size``-subset once."""
    if n < size or n < 1:
        raise InvalidOrderError(f"K_{n}^{size} needs at least {max(size, 1)} vertices")
    return Hypergraph(range(n), {(t, color): 1 for t in combinations(range(n), size)})


def complete_3_uniform(n: int) -> Hypergraph:
    if n < 3:
        raise InvalidOrderError(f"K_n^3 needs n >= 3, got {n}")
    return complete_uniform(n, 3)


def lambda_multiple(G: Hypergraph, lam: int) -> Hypergraph:
    if lam < 1:
        raise ValueError("lambda must be a positive integer")
    return Hypergraph(G.vertices, {kc: c * lam for kc, c in G.table.items()})


def union(graphs: Iterable[Hypergraph]) -> Hypergraph:
    graphs = list(graphs)
    if not graphs:
        raise ValueError("union of an empty family")
    verts = graphs[0].vertices
    acc: Counter = Counter()
    for G in graphs:
        if G.vertices != verts:
            raise InvalidHypergraphError("union requires identical vertex sets")
        acc.update(G.table)
    return Hypergraph(verts, acc)


def degree(G: Hypergraph, v: int, color: int | None = None) -> int:
    return G.degree(v, color)


def multiplicity(G: Hypergraph, spec: Iterable[int]) -> int:
    return G.multiplicity(spec)


def color_class(G: Hypergraph, color: int) -> Hypergraph:
    return G.color_class(color)


def is_r_factor(G: Hypergraph, color: int, r: int) -> bool:
    return G.is_r_factor(color, r)


def fiber_sizes(psi: Mapping) -> dict:
    """Number function g(w) = |psi^-1(w)| induced by an amalgamation map."""
    return dict(sorted(Counter(psi.values()).items()))


def amalgamate(G: Hypergraph, psi: Mapping, targets: Iterable[int] | None = None) -> Hypergraph:
    """Identify vertices of ``G`` through ``psi``; hinges and colors are kept.

    ``targets`` is the intended vertex set of the amalgamation; when given,
    ``psi`` must map onto it.
    """
    missing = [v for v in G.vertices if v not in psi]
    if missing:
        raise InvalidHypergraphError(f"amalgamation map undefined on {missing}")
    extra = set(psi) - set(G.vertices)
    if extra:
        raise InvalidHypergraphError(f"amalgamation map defined outside V(G): {sorted(extra)}")
    image = {psi[v] for v in G.vertices}
    if targets is not None and set(targets) != image:
        raise InvalidHypergraphError("amalgamation map is not onto the target vertex set")
    acc: Counter = Counter()
    for (key, color), count in G.table.items():
        acc[tuple(sorted(psi[v] for v in key)), color] += count
    return Hypergraph(image, acc)


def g_tilde(g: Mapping, key: Key) -> int:
    """Number of distinct detached triples lying over the multiset ``key``."""
    out = 1
    for x, c in Counter(key).items():
        out *= comb(g[x], c)
    return out


def share(value: int, parts: int) -> tuple:
    """(floor, ceil) of value/parts with exact integer arithmetic."""
    q = Fraction(value, parts)
    return q.numerator // q.denominator, -(-q.numerator // q.denominator)
