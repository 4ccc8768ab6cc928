"""Independent certificates for factorizations, embeddings and detachments.

Nothing here calls the constructors or the degree/multiplicity helpers of
:class:`~hyperembed.hypergraph.Hypergraph`; every quantity is recounted from
the raw ``(key, color) -> count`` table.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Any, Mapping

from .hypergraph import Hypergraph, dumps

KINDS = ("factorization", "embedding-full", "embedding-restricted", "detachment")


@dataclass
class Check:
    name: str
    expected: Any
    actual: Any
    passed: bool

    def to_json(self) -> dict:
        return {"name": self.name, "expected": self.expected, "actual": self.actual, "pass": self.passed}


@dataclass
class Certificate:
    kind: str
    checks: list = field(default_factory=list)

    @property
    def overall(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name, expected, actual, passed=None):
        self.checks.append(Check(name, expected, actual, expected == actual if passed is None else bool(passed)))

    def failed(self) -> list:
        return [c for c in self.checks if not c.passed]

    def to_json(self) -> dict:
        return {"kind": self.kind, "overall": self.overall, "checks": [c.to_json() for c in self.checks]}

    def dumps(self) -> str:
        return dumps(self.to_json())


def _floor_div(a: int, b: int) -> int:
    return a // b


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _hinge_degrees(table: Mapping) -> dict:
    deg: dict = defaultdict(Counter)
    for (key, color), count in table.items():
        for v in key:
            deg[color][v] += count
    return deg


def _factorization_checks(cert: Certificate, G: Hypergraph, r: int | None) -> int | None:
    table = dict(G.table)
    verts = list(G.vertices)
    n = len(verts)
    not_triples = sum(c for (key, _), c in table.items() if len(key) != 3 or len(set(key)) != 3)
    cert.add("every edge joins three distinct vertices", 0, not_triples)
    uncolored = sum(c for (_, color), c in table.items() if color < 1)
    cert.add("every edge colored", 0, uncolored)

    mult: Counter = Counter()
    for (key, _), c in table.items():
        mult[key] += c
    wanted = set(combinations(verts, 3))
    missing = len(wanted - set(mult))
    repeated = sum(1 for t, c in mult.items() if t in wanted and c != 1)
    stray = len(set(mult) - wanted)
    cert.add("complete: each triple exactly once", {"missing": 0, "repeated": 0, "stray": 0},
             {"missing": missing, "repeated": repeated, "stray": stray})

    deg = _hinge_degrees(table)
    colors = sorted(deg)
    if r is None:
        r = deg[colors[0]][verts[0]] if colors and verts else 0
        cert.add("factor degree r (inferred from first color)", r, r, True)
    else:
        cert.add("factor degree r", r, r, True)
    for j in colors:
        ds = [deg[j][v] for v in verts]
        cert.add(f"color {j} is a spanning {r}-regular factor", [r, r], [min(ds), max(ds)])
    expected_classes = comb(n - 1, 2) // r if r and comb(n - 1, 2) % r == 0 else None
    cert.add("number of color classes", expected_classes, len(colors))
    return r


def verify_factorization(G: Hypergraph, r: int | None = None) -> Certificate:
    cert = Certificate("factorization")
    _factorization_checks(cert, G, r)
    return cert


def verify_embedding(original: Hypergraph, G: Hypergraph, mode: str = "full", r: int | None = None) -> Certificate:
    """Factorization checks plus agreement with the prescribed colors.

    ``full``: ``original`` is a colored K_m^3 and every one of its triples
    must keep its color.  ``restricted``: ``original`` also holds pair and
    single pieces, and for each color the number of output edges meeting the
    old vertices in exactly that pair (single) must equal the piece's
    multiplicity.
    """
    if mode not in ("full", "restricted"):
        raise ValueError(f"unknown embedding mode {mode!r}")
    cert = Certificate(f"embedding-{mode}")
    _factorization_checks(cert, G, r)
    old = set(original.vertices)
    cert.add("original vertices contained in output", True, old <= set(G.vertices))

    trace: dict = {1: Counter(), 2: Counter(), 3: Counter()}
    for (key, color), count in G.table.items():
        t = tuple(v for v in key if v in old)
        if t:
            trace[len(t)][t, color] += count
    given: dict = {1: Counter(), 2: Counter(), 3: Counter()}
    for (key, color), count in original.table.items():
        given[len(key)][key, color] += count

    sizes = (3,) if mode == "full" else (3, 2, 1)
    labels = {3: "triple", 2: "pair-piece", 1: "single-piece"}
    if mode == "full" and (given[1] or given[2]):
        cert.add("original is a plain K_m^3 coloring", 0, len(given[1]) + len(given[2]))
    for size in sizes:
        matched = sum(1 for kc, c in given[size].items() if trace[size].get(kc) == c)
        exact = trace[size] == given[size]
        cert.add(f"{labels[size]} color counts preserved", len(given[size]), matched, exact and matched == len(given[size]))
    return cert


def verify_detachment(F: Hypergraph, detached: Hypergraph, psi: Mapping, g: Mapping | None = None) -> Certificate:
    """Round trip, 3-uniformity and both fairness bounds, recomputed from scratch."""
    cert = Certificate("detachment")
    psi = {int(u): int(x) for u, x in psi.items()}
    fibers: dict = defaultdict(list)
    for u in sorted(psi):
        fibers[psi[u]].append(u)
    sizes = {x: len(fibers[x]) for x in F.vertices}
    if g is None:
        g = sizes
    cert.add("fiber sizes equal g", {str(x): int(g.get(x, 0)) for x in F.vertices}, {str(x): sizes[x] for x in F.vertices})
    cert.add("psi is defined exactly on the detached vertices", sorted(detached.vertices), sorted(psi))
    cert.add("psi maps onto V(F)", sorted(F.vertices), sorted(set(psi.values())))
    if set(psi) != set(detached.vertices):
        return cert

    back: Counter = Counter()
    for (key, color), count in detached.table.items():
        back[tuple(sorted(psi[v] for v in key)), color] += count
    cert.add("amalgamating the detachment gives back F", True, dict(back) == dict(F.table))

    bad = sum(c for (key, _), c in detached.table.items() if len(key) != 3 or len(set(key)) != 3)
    cert.add("detachment is 3-uniform", 0, bad)

    f_deg = _hinge_degrees(F.table)
    d_deg = _hinge_degrees(detached.table)
    a1_checked = a1_bad = 0
    for j in sorted(f_deg):
        for x in F.vertices:
            lo = _floor_div(f_deg[j][x], sizes[x] or 1)
            hi = _ceil_div(f_deg[j][x], sizes[x] or 1)
            for u in fibers[x]:
                a1_checked += 1
                if not lo <= d_deg[j][u] <= hi:
                    a1_bad += 1
    cert.add("A1: per-color degrees within floor/ceil of d_F(j)(x)/g(x)", {"violations": 0}, {"violations": a1_bad, "checked": a1_checked},
             a1_bad == 0)

    f_mult: Counter = Counter()
    for (key, _), count in F.table.items():
        f_mult[key] += count
    d_mult: Counter = Counter()
    for (key, _), count in detached.table.items():
        d_mult[key] += count
    a2_checked = a2_bad = 0
    for t in combinations(sorted(psi), 3):
        image = tuple(sorted(psi[v] for v in t))
        normalizer = 1
        for x, c in Counter(image).items():
            normalizer *= comb(sizes[x], c)
        lo, hi = _floor_div(f_mult[image], normalizer), _ceil_div(f_mult[image], normalizer)
        a2_checked += 1
        if not lo <= d_mult[t] <= hi:
            a2_bad += 1
    cert.add("A2: triple multiplicities within floor/ceil of m_F/g~", {"violations": 0}, {"violations": a2_bad, "checked": a2_checked},
             a2_bad == 0)

    unguarded = 0
    for key in f_mult:
        counts = Counter(key)
        if any(comb(sizes[x], c) == 0 for x, c in counts.items()):
            unguarded += 1
    cert.add("F multisets with no distinct detached triple (unconstrained)", None, unguarded, True)
    return cert
