"""Exhaustive search for fair 3-uniform detachments of tiny hypergraphs.

Used to cross-check :func:`hyperembed.detachment.detach`: every edge of
``F`` is placed on a distinct detached triple lying over it, by plain
backtracking, until a placement meets both fairness bounds.  Exponential;
meant for at most six detached vertices.
"""

from __future__ import annotations

from collections import Counter
from itertools import combinations, product
from math import comb
from typing import Mapping

from .hypergraph import Hypergraph


def _candidates(key, fibers):
    parts = [combinations(fibers[x], c) for x, c in sorted(Counter(key).items())]
    return sorted(tuple(sorted(v for part in choice for v in part)) for choice in product(*parts))


def find_detachment(F: Hypergraph, g: Mapping[int, int], max_vertices: int = 6):
    """Return ``(detached, psi)`` for some fair detachment, or ``None`` if there is none."""
    total = sum(int(g[x]) for x in F.vertices)
    if total > max_vertices:
        raise ValueError(f"oracle limited to {max_vertices} detached vertices, asked for {total}")
    fibers, psi = {}, {}
    for x in F.vertices:
        fibers[x] = list(range(len(psi), len(psi) + int(g[x])))
        psi.update({u: x for u in fibers[x]})

    f_deg: Counter = Counter()
    f_mult: Counter = Counter()
    for (key, color), count in F.table.items():
        f_mult[key] += count
        for x in key:
            f_deg[x, color] += count
    colors = sorted({c for _, c in F.table})

    def mult_bounds(t):
        image = tuple(sorted(psi[v] for v in t))
        norm = 1
        for x, c in Counter(image).items():
            norm *= comb(len(fibers[x]), c)
        return f_mult[image] // norm, -(-f_mult[image] // norm)

    def deg_bounds(u, j):
        x = psi[u]
        d = f_deg[x, j]
        return d // len(fibers[x]), -(-d // len(fibers[x]))

    groups = []
    for (key, color), count in F.table.items():
        cands = _candidates(key, fibers) if len(key) == 3 else []
        if not cands:
            return None
        groups.append((len(cands), key, color, count, cands))
    groups.sort()
    slots = [(gi, color, cands) for gi, (_, _, color, count, cands) in enumerate(groups) for _ in range(count)]

    deg_cap = {(u, j): deg_bounds(u, j)[1] for u in psi for j in colors}
    deg_floor = {(u, j): deg_bounds(u, j)[0] for u in psi for j in colors}
    mult_cap = {t: mult_bounds(t)[1] for t in combinations(sorted(psi), 3)}
    mult_floor = {t: mult_bounds(t)[0] for t in mult_cap}
    over = {}
    for t in mult_cap:
        over.setdefault(tuple(sorted(psi[v] for v in t)), []).append(t)
    # unplaced edge slots per (amalgamated vertex, color) and per key
    rem_deg: Counter = Counter()
    rem_key: Counter = Counter()
    for gi, color, _ in slots:
        key = groups[gi][1]
        rem_key[key] += 1
        for x in set(key):
            rem_deg[x, color] += 1
    deg: Counter = Counter()
    mult: Counter = Counter()
    chosen = [0] * len(slots)

    def reachable(key, color):
        for x in set(key):
            for u in fibers[x]:
                if deg[u, color] + rem_deg[x, color] < deg_floor[u, color]:
                    return False
        return all(mult[t] + rem_key[key] >= mult_floor[t] for t in over.get(key, ()))

    def place(i, start):
        if i == len(slots):
            return True
        gi, color, cands = slots[i]
        key = groups[gi][1]
        rem_key[key] -= 1
        for x in set(key):
            rem_deg[x, color] -= 1
        nxt = i + 1
        for ci in range(start, len(cands)):
            t = cands[ci]
            if mult[t] >= mult_cap[t] or any(deg[v, color] >= deg_cap[v, color] for v in t):
                continue
            mult[t] += 1
            for v in t:
                deg[v, color] += 1
            chosen[i] = ci
            if reachable(key, color) and place(nxt, ci if nxt < len(slots) and slots[nxt][0] == gi else 0):
                return True
            mult[t] -= 1
            for v in t:
                deg[v, color] -= 1
        rem_key[key] += 1
        for x in set(key):
            rem_deg[x, color] += 1
        return False

    if not place(0, 0):
        return None
    table: Counter = Counter()
    for (gi, color, cands), ci in zip(slots, chosen):
        table[cands[ci], color] += 1
    return Hypergraph(psi, table), psi
