"""Canonical labelling for small graphs (colour refinement + brute force inside cells)."""

from __future__ import annotations

from itertools import permutations, product

from .graph import Graph, bits


def _refine(g: Graph) -> list[list[int]]:
    colour = [g.degree(v) for v in range(g.n)]
    while True:
        sig = [(colour[v], tuple(sorted(colour[w] for w in bits(g.adj[v])))) for v in range(g.n)]
        palette = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [palette[s] for s in sig]
        if len(set(new)) == len(set(colour)):
            colour = new
            break
        colour = new
    cells: dict[int, list[int]] = {}
    for v in range(g.n):
        cells.setdefault(colour[v], []).append(v)
    return [cells[c] for c in sorted(cells)]


def canonical_form(g: Graph) -> tuple[int, tuple[tuple[int, int], ...]]:
    """Isomorphism invariant that determines ``g`` up to isomorphism.

    Intended for graphs with at most ~8 vertices; cost grows with the product
    of factorials of the refinement cell sizes.
    """
    cells = _refine(g)
    best = None
    for perms in product(*(permutations(c) for c in cells)):
        order = [v for p in perms for v in p]
        pos = [0] * g.n
        for i, v in enumerate(order):
            pos[v] = i
        key = tuple(sorted((min(pos[u], pos[v]), max(pos[u], pos[v])) for u, v in g.edges))
        if best is None or key < best:
            best = key
    return g.n, best or ()


def are_isomorphic(a: Graph, b: Graph) -> bool:
    if a.n != b.n or a.m != b.m or sorted(a.degrees()) != sorted(b.degrees()):
        return False
    return canonical_form(a) == canonical_form(b)
