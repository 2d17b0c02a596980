"""Exact maximum density m(G), maximum 2-density m2(G) and degeneracy.

Densities are ``fractions.Fraction`` throughout.  The maximisation is an
exhaustive scan over vertex subsets (restricting to induced subgraphs is
enough: dropping edges at a fixed vertex set never helps), vectorised with
numpy.  A connected piece may hold at most ``ENVELOPE`` vertices after
pruning; beyond that a DensityEnvelopeError is raised.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DensityEnvelopeError, DomainError
from .graph import Graph, bits

ENVELOPE = 24


@dataclass(frozen=True)
class DensityReport:
    value: Fraction
    witness: tuple[int, ...]
    kind: str  # "max-density" | "max-2-density"

    def __str__(self):
        return f"{self.value.numerator}/{self.value.denominator}"


def _subset_tables(g: Graph, verts: list[int]) -> tuple[np.ndarray, np.ndarray]:
    """Edge and vertex counts of G[S] for every subset S of ``verts`` (bitmask-indexed)."""
    k = len(verts)
    if k > ENVELOPE:
        raise DensityEnvelopeError(
            f"exhaustive density scan limited to {ENVELOPE} vertices per piece, got {k}"
        )
    index = {v: i for i, v in enumerate(verts)}
    lower = [0] * k
    for i, v in enumerate(verts):
        for w in bits(g.adj[v]):
            j = index.get(w)
            if j is not None and j < i:
                lower[i] |= 1 << j
    e = np.zeros(1, dtype=np.int32)
    for i in range(k):
        masks = np.arange(1 << i, dtype=np.int64)
        add = np.bitwise_count(masks & lower[i]).astype(np.int32)
        e = np.concatenate([e, e + add])
    size = np.bitwise_count(np.arange(1 << k, dtype=np.int64)).astype(np.int32)
    return e, size


def _lex_min(masks: np.ndarray) -> int:
    """Lexicographically smallest sorted-vertex-list among the given subset masks."""
    cand = masks
    prefix = 0
    while True:
        if np.any(cand == prefix):
            return prefix
        rest = cand & ~np.int64(prefix)
        low = rest & -rest
        nxt = low.min()
        cand = cand[low == nxt]
        prefix |= int(nxt)


def _best_ratio(num: np.ndarray, den: np.ndarray, valid: np.ndarray) -> tuple[Fraction, np.ndarray]:
    """Max of num/den over valid entries, exactly, and all masks attaining it."""
    idx = np.flatnonzero(valid)
    ratio = num[idx] / den[idx]
    top = idx[int(np.argmax(ratio))]
    bn, bd = int(num[top]), int(den[top])
    hit = valid & (num.astype(np.int64) * bd == np.int64(bn) * den)
    return Fraction(bn, bd), np.flatnonzero(hit).astype(np.int64)


def _scan(g: Graph, verts: list[int], two: bool) -> tuple[Fraction, tuple[int, ...]]:
    e, size = _subset_tables(g, verts)
    if two:
        value, hits = _best_ratio(e - 1, size - 2, size >= 3)
    else:
        value, hits = _best_ratio(e, size, size >= 1)
    best = _lex_min(hits)
    return value, tuple(verts[i] for i in bits(best))


def _prune_low_degree(g: Graph, keep: set[int], bound: Fraction) -> set[int]:
    """Drop vertices whose degree inside ``keep`` is below ``bound``, repeatedly."""
    deg = {v: sum(1 for w in bits(g.adj[v]) if w in keep) for v in keep}
    stack = [v for v in keep if deg[v] < bound]
    alive = set(keep)
    while stack:
        v = stack.pop()
        if v not in alive:
            continue
        alive.discard(v)
        for w in bits(g.adj[v]):
            if w in alive:
                deg[w] -= 1
                if deg[w] < bound:
                    stack.append(w)
    return alive


def max_density(g: Graph) -> DensityReport:
    """m(G) = max e(J)/v(J) over subgraphs with at least one vertex."""
    if g.n == 0:
        raise DomainError("max density of the empty graph is undefined")
    if not g.edges:
        return DensityReport(Fraction(0), (0,), "max-density")
    comps = g.connected_components()
    lower = max(Fraction(g.induced(c).m, len(c)) for c in comps)
    # a maximiser J has minimum degree >= m(G) >= lower
    alive = _prune_low_degree(g, set(g.active_vertices()), lower)
    if len(alive) <= ENVELOPE:
        value, witness = _scan(g, sorted(alive), two=False)
        return DensityReport(value, witness, "max-density")
    best: tuple[Fraction, tuple[int, ...]] | None = None
    for comp in g.induced(alive).connected_components():
        value, witness = _scan(g, comp, two=False)
        if best is None or value > best[0] or (value == best[0] and witness < best[1]):
            best = (value, witness)
    return DensityReport(best[0], best[1], "max-density")


def max_2_density(g: Graph) -> DensityReport:
    """m2(G) = max (e(J)-1)/(v(J)-2) over subgraphs with at least three vertices."""
    if g.n < 3:
        raise DomainError("max 2-density needs at least 3 vertices")
    if g.n <= ENVELOPE:
        value, witness = _scan(g, list(range(g.n)), two=True)
        return DensityReport(value, witness, "max-2-density")
    comps = [c for c in g.connected_components() if len(c) >= 3]
    if not comps:
        raise DensityEnvelopeError("max 2-density of a large graph without 3-vertex components")
    best = None
    for comp in comps:
        value, witness = _scan(g, comp, two=True)
        if best is None or value > best[0] or (value == best[0] and witness < best[1]):
            best = (value, witness)
    return DensityReport(best[0], best[1], "max-2-density")


def is_strictly_2_balanced(h: Graph) -> bool:
    """True iff every proper subgraph F with v(F) >= 3 has m2(F) < m2(h)."""
    if h.n < 3:
        raise DomainError("strict 2-balancedness needs at least 3 vertices")
    verts = list(range(h.n))
    e, size = _subset_tables(h, verts)
    value, hits = _best_ratio(e - 1, size - 2, size >= 3)
    full = (1 << h.n) - 1
    return hits.tolist() == [full]


def degeneracy(g: Graph) -> tuple[int, list[int]]:
    """Largest minimum degree over subgraphs, with a min-degree elimination order."""
    deg = g.degrees()
    heap = [(d, v) for v, d in enumerate(deg)]
    heapq.heapify(heap)
    removed = [False] * g.n
    order = []
    d_max = 0
    while heap:
        d, v = heapq.heappop(heap)
        if removed[v] or d != deg[v]:
            continue
        removed[v] = True
        order.append(v)
        d_max = max(d_max, d)
        for w in bits(g.adj[v]):
            if not removed[w]:
                deg[w] -= 1
                heapq.heappush(heap, (deg[w], w))
    return d_max, order


def m2_complete(t: int) -> Fraction:
    return Fraction(t * (t - 1) // 2 - 1, t - 2)


def m2_cycle(t: int) -> Fraction:
    return Fraction(t - 1, t - 2)
