"""Embedding a colored K_m^3 into an r-factorization of K_n^3.

The construction adds a single vertex ``u`` standing for all ``n - m`` new
vertices, colors the edges meeting it in three passes, and then detaches
``u`` into ``n - m`` vertices:

1. ``n - m`` copies of every ``{u, v, w}`` are colored greedily while no
   old vertex exceeds degree ``r`` in any color;
2. every old vertex ``v`` receives ``C(n-m, 2)`` copies of ``{u, u, v}``,
   colored so that each color reaches degree exactly ``r`` at ``v``;
3. ``C(n-m, 3)`` loops ``{u, u, u}`` are shared out so color ``j`` gets
   ``r(n/3 - m) + f_j + 2 e_j`` of them, giving ``u`` degree ``r(n - m)``
   in every color.

Old vertices keep ids ``0..m-1``; ``u`` is ``m`` and its detached copies
become ``m..n-1``.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb, isqrt
from typing import Mapping

from .detachment import detach
from .errors import (
    ConstructionError,
    GreedyStuckError,
    IneligibleInstanceError,
    NegativeFillError,
    PreconditionError,
    UnsupportedInstanceError,
)
from .factorization import factorization_exists, generate_r_factorization
from .hypergraph import UNCOLORED, Hypergraph


@dataclass(frozen=True)
class EmbeddingInstance:
    m: int
    n: int
    r: int
    coloring: Hypergraph

    @property
    def k(self) -> int | None:
        """Number of color classes of the target factorization, if integral."""
        d = comb(self.n - 1, 2)
        return d // self.r if self.r > 0 and d % self.r == 0 else None

    @property
    def q(self) -> int:
        return len({c for _, c in self.coloring.table})

    def to_json(self) -> dict:
        data = self.coloring.to_json()
        data.update(m=self.m, n=self.n, r=self.r)
        return data

    @classmethod
    def from_json(cls, data: Mapping, n: int | None = None, r: int | None = None) -> EmbeddingInstance:
        coloring = Hypergraph.from_json(data)
        n = data.get("n") if n is None else n
        r = data.get("r") if r is None else r
        if n is None or r is None:
            raise PreconditionError("instance needs both n and r")
        return cls(len(coloring), int(n), int(r), coloring)


@dataclass
class ColorCensus:
    """Per-color counts of edges meeting the old vertices in 3, 2, 1 and 0 vertices."""

    e: dict = field(default_factory=dict)
    f: dict = field(default_factory=dict)
    g: dict = field(default_factory=dict)
    ell: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            str(j): {"e": self.e.get(j, 0), "f": self.f.get(j, 0), "g": self.g.get(j, 0), "ell": self.ell.get(j, 0)}
            for j in sorted(set(self.e) | set(self.f) | set(self.g) | set(self.ell))
        }


@dataclass
class EligibilityReport:
    checks: dict = field(default_factory=dict)  # name -> bool, insertion ordered
    details: dict = field(default_factory=dict)
    k: int | None = None

    CONDITIONS = ("well-formed", "i", "ii", "iii", "iv")

    @property
    def conditions_hold(self) -> bool:
        return all(self.checks.get(name, False) for name in self.CONDITIONS)

    @property
    def bound_ok(self) -> bool:
        return self.checks.get("bound", False)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def failures(self) -> list:
        return [f"{name}: {self.details.get(name, 'failed')}" for name, passed in self.checks.items() if not passed]

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "checks": [{"name": name, "pass": passed, "detail": self.details.get(name, "")} for name, passed in self.checks.items()],
            "ok": self.ok,
        }


def bound_min_n(m: int) -> int:
    """Smallest n with n > 2m + (-1 + sqrt(8m^2 - 16m - 7)) / 2, for m >= 4.

    Decided in integers: with t = 2n - 4m + 1 the inequality reads
    t > 0 and t^2 > 8m^2 - 16m - 7.
    """
    if m < 4:
        raise ValueError("the lower bound on n is only stated for m >= 4")
    disc = 8 * m * m - 16 * m - 7
    t = isqrt(disc) + 1
    if t % 2 == 0:
        t += 1
    return (t + 4 * m - 1) // 2


def satisfies_bound(m: int, n: int) -> bool:
    if m <= 3:
        return True
    t = 2 * n - 4 * m + 1
    return t > 0 and t * t > 8 * m * m - 16 * m - 7


def _is_complete_on(coloring: Hypergraph, m: int) -> str:
    if coloring.vertices != tuple(range(m)):
        return f"vertices must be 0..{m - 1}"
    mult = coloring.keys()
    if set(mult) != set(combinations(range(m), 3)) or any(c != 1 for c in mult.values()):
        return f"edge multiset is not K_{m}^3"
    if any(color == UNCOLORED for _, color in coloring.table):
        return "some triple is uncolored"
    return ""


def check_conditions(inst: EmbeddingInstance) -> EligibilityReport:
    m, n, r = inst.m, inst.n, inst.r
    rep = EligibilityReport()
    problem = _is_complete_on(inst.coloring, m)
    if not problem and not (r >= 1 and n > m):
        problem = f"need r >= 1 and n > m, got r={r}, n={n}, m={m}"
    rep.checks["well-formed"] = not problem
    rep.details["well-formed"] = problem or "input is a fully colored K_m^3"

    rep.checks["i"] = (r * n) % 3 == 0
    rep.details["i"] = f"3 | r*n = {r * n}"
    d = comb(n - 1, 2)
    rep.checks["ii"] = r >= 1 and d % r == 0
    rep.details["ii"] = f"r = {r} | C(n-1,2) = {d}"
    rep.k = d // r if rep.checks["ii"] else None
    q = inst.q
    rep.checks["iii"] = r >= 1 and q * r <= d
    rep.details["iii"] = f"q = {q} <= C(n-1,2)/r = {Fraction(d, r) if r else 'undefined'}"
    worst = max((inst.coloring.degree(v, j) for j in inst.coloring.colors() for v in inst.coloring.vertices), default=0)
    rep.checks["iv"] = worst <= r
    rep.details["iv"] = f"max per-color degree {worst} <= r = {r}"
    if rep.k is not None:
        bad = [j for j in inst.coloring.colors() if not 1 <= j <= rep.k]
        rep.checks["colors-in-range"] = not bad
        rep.details["colors-in-range"] = f"colors outside 1..{rep.k}: {bad}" if bad else f"all colors in 1..{rep.k}"
    if m >= 4:
        rep.checks["bound"] = satisfies_bound(m, n)
        rep.details["bound"] = f"n = {n} >= {bound_min_n(m)}"
    else:
        rep.checks["bound"] = True
        rep.details["bound"] = "m <= 3: no lower bound on n"
    return rep


# -- the three coloring passes -------------------------------------------


def _old_degrees(coloring: Hypergraph) -> Counter:
    deg: Counter = Counter()
    for (key, color), count in coloring.table.items():
        for v in key:
            deg[v, color] += count
    return deg


def step1_greedy(inst: EmbeddingInstance, seed: int = 0):
    """Add ``u = m`` with ``n - m`` copies of each ``{u, v, w}``, all colored greedily.

    Pairs are visited in lexicographic order with copies innermost; each copy
    takes the first color, in a seed-determined preference order, that is
    still below degree ``r`` at both ``v`` and ``w``.  Returns ``(F1, f)``.
    """
    m, n, r, k = inst.m, inst.n, inst.r, inst.k
    u = m
    deg = _old_degrees(inst.coloring)
    order = list(range(1, k + 1))
    random.Random(seed).shuffle(order)
    table: Counter = Counter(inst.coloring.table)
    f = {j: 0 for j in range(1, k + 1)}
    for v, w in combinations(range(m), 2):
        for _ in range(n - m):
            j = next((j for j in order if deg[v, j] < r and deg[w, j] < r), None)
            if j is None:
                raise GreedyStuckError(f"no color left for an edge {{u,{v},{w}}}")
            table[(v, w, u), j] += 1
            deg[v, j] += 1
            deg[w, j] += 1
            f[j] += 1
    return Hypergraph(range(m + 1), table), f


def step2_forced(inst: EmbeddingInstance, F1: Hypergraph):
    """Add ``C(n-m, 2)`` copies of ``{u, u, v}`` per old ``v``, topping each color up to ``r``."""
    m, n, r, k = inst.m, inst.n, inst.r, inst.k
    u = m
    table: Counter = Counter(F1.table)
    g = {j: 0 for j in range(1, k + 1)}
    for v in range(m):
        added = 0
        for j in range(1, k + 1):
            need = r - F1.degree(v, j)
            if need < 0:
                raise ConstructionError(f"vertex {v} already exceeds degree r in color {j}")
            if need:
                table[(u, u, v), j] += need
                g[j] += need
                added += need
        if added != comb(n - m, 2):
            raise ConstructionError(f"vertex {v} needs {added} edges {{u,u,v}}, expected C(n-m,2) = {comb(n - m, 2)}")
    return Hypergraph(F1.vertices, table), g


def fill_counts(inst: EmbeddingInstance, e: Mapping, f: Mapping) -> dict:
    """Loops ``{u,u,u}`` each color needs: ``r(n/3 - m) + f_j + 2 e_j``."""
    base = inst.r * inst.n // 3 - inst.r * inst.m
    return {j: base + f.get(j, 0) + 2 * e.get(j, 0) for j in range(1, inst.k + 1)}


def step3_fill(inst: EmbeddingInstance, F2: Hypergraph, e: Mapping, f: Mapping):
    """Add ``C(n-m, 3)`` loops at ``u``, exactly ``ell_j`` of them in color ``j``."""
    ell = fill_counts(inst, e, f)
    negative = {j: v for j, v in ell.items() if v < 0}
    if negative:
        raise NegativeFillError(f"colors needing a negative number of new triples: {negative}")
    if sum(ell.values()) != comb(inst.n - inst.m, 3):
        raise ConstructionError(f"fill counts sum to {sum(ell.values())}, expected C(n-m,3)")
    u = inst.m
    table: Counter = Counter(F2.table)
    for j, count in ell.items():
        if count:
            table[(u, u, u), j] += count
    return Hypergraph(F2.vertices, table), ell


def build_amalgam(inst: EmbeddingInstance, seed: int = 0):
    """Run the three coloring passes; returns ``(F3, census)``.  No eligibility checks."""
    e = {j: 0 for j in range(1, inst.k + 1)}
    for (_, color), count in inst.coloring.table.items():
        e[color] += count
    F1, f = step1_greedy(inst, seed)
    F2, g = step2_forced(inst, F1)
    F3, ell = step3_fill(inst, F2, e, f)
    return F3, ColorCensus(e=e, f=f, g=g, ell=ell)


def embed(inst: EmbeddingInstance, seed: int = 0, enforce_bound: bool = True) -> Hypergraph:
    """Colored K_n^3 extending ``inst.coloring`` whose color classes are r-factors.

    Raises ``IneligibleInstanceError`` when a necessary condition fails.
    Below the lower bound on ``n`` (or when ``m <= 3``) the construction is
    attempted only with ``enforce_bound=False`` and a stuck pass raises
    ``UnsupportedInstanceError`` rather than an internal error.
    """
    rep = check_conditions(inst)
    if not rep.conditions_hold or not rep.checks.get("colors-in-range", False):
        raise IneligibleInstanceError("instance fails a necessary condition", rep.failures())
    guaranteed = rep.bound_ok and inst.m >= 4
    if not rep.bound_ok and enforce_bound:
        raise IneligibleInstanceError("n is below the guaranteed range", rep.failures())
    try:
        F3, _ = build_amalgam(inst, seed)
    except GreedyStuckError as exc:
        if guaranteed:
            raise
        raise UnsupportedInstanceError(str(exc), "greedy-stuck") from exc
    except NegativeFillError as exc:
        if guaranteed:
            raise
        raise UnsupportedInstanceError(str(exc), "negative-fill") from exc
    g = {v: 1 for v in range(inst.m)}
    g[inst.m] = inst.n - inst.m
    return detach(F3, g, seed).detached


# -- lower-bound counterexamples -----------------------------------------


def counterexample(m: int, seed: int = 0) -> EmbeddingInstance:
    """An r-factorization of K_m^3 with n = 2m - 1 that meets every necessary condition yet cannot embed."""
    tried = []
    for r in range(3, m, 3):
        if (m - 1) % r:
            continue
        if factorization_exists(m, r):
            return EmbeddingInstance(m, 2 * m - 1, r, generate_r_factorization(m, r, seed))
        tried.append(f"r={r}: K_{m}^3 has no {r}-factorization")
    raise PreconditionError(f"no r with 3 | r, r | m-1 and an r-factorization of K_{m}^3", tried or [f"no multiple of 3 divides m-1 = {m - 1}"])


@dataclass
class WitnessReport:
    applicable: bool
    reason: str = ""
    required: Fraction | None = None
    available: int | None = None

    @property
    def infeasible(self) -> bool:
        return self.applicable and self.required > self.available

    def to_json(self) -> dict:
        req = self.required
        return {
            "applicable": self.applicable,
            "reason": self.reason,
            "required": None if req is None else (req.numerator if req.denominator == 1 else str(req)),
            "available": self.available,
            "infeasible": self.infeasible,
        }


def infeasibility_witness(inst: EmbeddingInstance) -> WitnessReport:
    """Counting obstruction for embedding an r-factorization of K_m^3.

    Old vertices are already saturated in the q given colors, so those colors
    must form r-factors on the n - m new vertices alone: q r (n-m) / 3 edges
    inside a set that only has C(n-m, 3) triples.
    """
    m, n, r = inst.m, inst.n, inst.r
    if _is_complete_on(inst.coloring, m):
        return WitnessReport(False, "input is not a colored K_m^3")
    colors = inst.coloring.colors()
    if not all(inst.coloring.is_r_factor(j, r) for j in colors):
        return WitnessReport(False, "input coloring is not an r-factorization of K_m^3")
    required = Fraction(len(colors) * r * (n - m), 3)
    available = comb(n - m, 3)
    rep = WitnessReport(True, "", required, available)
    if rep.infeasible:
        rep.reason = f"given colors need {required} triples on the {n - m} new vertices but only {available} exist"
    else:
        rep.reason = "no counting contradiction"
    return rep
