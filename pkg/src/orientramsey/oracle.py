"""Exact decision of G -> H by backtracking over edge directions.

Every embedding of the pattern's base graph into G fixes one direction per
host edge; the pattern appears in an orientation iff all directions of
some embedding are met.  These direction vectors act as clauses: the search
keeps, per clause, how many literals hold and whether one is violated, and
propagates the last open literal of an almost-complete clause.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError, VerificationError
from .graph import Graph, Orientation, bits, complete_graph, contains_oriented, is_self_converse, iter_embeddings, norm
from .structure import TRIANGLE, h_components, is_ab_constructible


@dataclass(frozen=True)
class ArrowCertificate:
    arrows: bool
    witness: Orientation | None
    nodes_explored: int
    exhausted: bool
    note: str = ""

    def __bool__(self):
        return self.arrows


@dataclass(frozen=True)
class Indeterminate:
    """Budget ran out before a decision; deliberately not usable as a bool."""

    budget: int
    nodes_explored: int
    note: str = ""

    arrows = None

    def __bool__(self):
        raise TypeError("an indeterminate result has no truth value")


class BudgetExceeded(Exception):
    pass


def _clauses(g: Graph, pattern: Orientation, eid: dict) -> list[tuple[tuple[int, int], ...]]:
    base = pattern.base
    seen = set()
    out = []
    for emb in iter_embeddings(base.n, base.adj, base.adj, g.n, g.adj, g.adj):
        lits = []
        for t, h in pattern.arcs:
            a, b = emb[t], emb[h]
            e = norm(a, b)
            lits.append((eid[e], 0 if a < b else 1))
        key = tuple(sorted(lits))
        if key not in seen:
            seen.add(key)
            out.append(key)
    out.sort()
    return out


class _Search:
    def __init__(self, m: int, clauses, budget: int):
        self.m = m
        self.clauses = clauses
        self.size = [len(c) for c in clauses]
        self.sat = [0] * len(clauses)
        self.dead = [0] * len(clauses)
        self.occ = [([], []) for _ in range(m)]
        for ci, c in enumerate(clauses):
            for e, d in c:
                self.occ[e][d].append(ci)
        self.value = [-1] * m
        self.trail: list[int] = []
        self.budget = budget
        self.nodes = 0
        self.relevant = sorted({e for c in clauses for e, _ in c})

    def assign(self, e: int, d: int, queue: list[int]) -> bool:
        self.value[e] = d
        self.trail.append(e)
        ok = True
        for ci in self.occ[e][d]:
            self.sat[ci] += 1
            if not self.dead[ci]:
                left = self.size[ci] - self.sat[ci]
                if left == 0:
                    ok = False
                elif left == 1:
                    queue.append(ci)
        for ci in self.occ[e][1 - d]:
            self.dead[ci] += 1
        return ok

    def undo_to(self, mark: int) -> None:
        while len(self.trail) > mark:
            e = self.trail.pop()
            d = self.value[e]
            for ci in self.occ[e][d]:
                self.sat[ci] -= 1
            for ci in self.occ[e][1 - d]:
                self.dead[ci] -= 1
            self.value[e] = -1

    def propagate(self, queue: list[int]) -> bool:
        k = 0
        while k < len(queue):
            ci = queue[k]
            k += 1
            if self.dead[ci] or self.size[ci] - self.sat[ci] != 1:
                continue
            for e, d in self.clauses[ci]:
                if self.value[e] < 0:
                    if not self.assign(e, 1 - d, queue):
                        return False
                    break
        return True

    def choose(self) -> int:
        score: dict[int, list[int]] = {}
        for ci, c in enumerate(self.clauses):
            if self.dead[ci]:
                continue
            left = self.size[ci] - self.sat[ci]
            for e, _ in c:
                if self.value[e] < 0:
                    s = score.setdefault(e, [0, 0, 0])
                    if left == 1:
                        s[0] += 1
                    elif left == 2:
                        s[1] += 1
                    s[2] += 1
        if not score:
            return -1
        return min(score, key=lambda e: (-score[e][0], -score[e][1], -score[e][2], e))

    def solve(self, first_fixed: bool) -> bool:
        """True if a pattern-free assignment of the relevant edges exists (kept in value)."""
        queue: list[int] = []
        if first_fixed and self.relevant:
            if not self.assign(self.relevant[0], 0, queue) or not self.propagate(queue):
                return False
        return self._rec()

    def _rec(self) -> bool:
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded
        e = self.choose()
        if e < 0:
            return True
        for d in (0, 1):
            mark = len(self.trail)
            queue: list[int] = []
            if self.assign(e, d, queue) and self.propagate(queue) and self._rec():
                return True
            self.undo_to(mark)
        return False


def _free_orientation(g: Graph, edges: list, value: list[int]) -> Orientation:
    arcs = [(e if value[i] != 1 else (e[1], e[0])) for i, e in enumerate(edges)]
    return Orientation(g, arcs)


def arrows(g: Graph, pattern: Orientation, budget: int = 1_000_000) -> ArrowCertificate | Indeterminate:
    """Decide whether every orientation of ``g`` contains ``pattern``."""
    if budget <= 0:
        raise DomainError("budget must be positive")
    if not pattern.is_total():
        raise DomainError("pattern must be a total orientation")
    edges = g.sorted_edges()
    eid = {e: i for i, e in enumerate(edges)}
    clauses = _clauses(g, pattern, eid)
    if any(len(c) == 0 for c in clauses):
        return ArrowCertificate(True, None, 0, True, "pattern without arcs")
    search = _Search(len(edges), clauses, budget)
    symmetric = bool(clauses) and is_self_converse(pattern)
    try:
        free = search.solve(first_fixed=symmetric)
    except BudgetExceeded:
        return Indeterminate(budget, search.nodes)
    if not free:
        return ArrowCertificate(True, None, search.nodes, True)
    witness = _free_orientation(g, edges, search.value)
    if contains_oriented(witness, pattern):
        raise VerificationError("oracle witness contains the pattern")
    return ArrowCertificate(False, witness, search.nodes, False)


def _merge(g: Graph, parts, pattern: Orientation, nodes: int, note: str) -> ArrowCertificate:
    arcs = {}
    for o in parts:
        for a in o.arcs:
            arcs[norm(*a)] = a
    w = Orientation(g, arcs.values()).completed()
    if contains_oriented(w, pattern):
        raise VerificationError("merged witness contains the pattern")
    return ArrowCertificate(False, w, nodes, False, note)


def arrows_component_wise(g: Graph, pattern: Orientation, budget: int = 1_000_000):
    """Solve each H-component separately; G arrows iff some component does."""
    dec = h_components(g, pattern.base)
    parts = []
    nodes = 0
    for comp in dec.components:
        res = arrows(comp, pattern, max(1, budget - nodes))
        if isinstance(res, Indeterminate):
            return Indeterminate(budget, nodes + res.nodes_explored)
        nodes += res.nodes_explored
        if res.arrows:
            return ArrowCertificate(True, None, nodes, True, f"component on {comp.active_vertices()}")
        parts.append(res.witness)
    return _merge(g, parts, pattern, nodes, f"{len(parts)} component(s)")


def find_k4(g: Graph) -> tuple[int, int, int, int] | None:
    for u, v in g.sorted_edges():
        common = g.adj[u] & g.adj[v]
        for w in bits(common):
            rest = common & g.adj[w]
            if rest:
                x = (rest & -rest).bit_length() - 1
                return tuple(sorted((u, v, w, x)))
    return None


def decide_tt3_fast(g: Graph, budget: int = 1_000_000):
    """TT3 decision: K4 means arrows, AB-constructible means not; otherwise search."""
    from .orienters import orient_avoid_tt3
    from .patterns import tt3

    pattern = tt3()
    dec = h_components(g, TRIANGLE)
    parts = []
    nodes = 0
    for comp in dec.components:
        k4 = find_k4(comp)
        if k4 is not None:
            sub = Graph(g.n, [norm(a, b) for i, a in enumerate(k4) for b in k4[i + 1 :]])
            res = arrows(sub, pattern, budget)
            if isinstance(res, Indeterminate) or not res.arrows:
                raise VerificationError("K4 failed to arrow TT3")
            return ArrowCertificate(True, None, nodes + res.nodes_explored, True, f"K4 on {list(k4)}")
        ok, _ = is_ab_constructible(comp)
        if ok:
            parts.append(orient_avoid_tt3(comp).orientation)
            continue
        res = arrows(comp, pattern, max(1, budget - nodes))
        if isinstance(res, Indeterminate):
            return Indeterminate(budget, nodes + res.nodes_explored, "fallback search")
        nodes += res.nodes_explored
        if res.arrows:
            return ArrowCertificate(True, None, nodes, True, f"search on {comp.active_vertices()}")
        parts.append(res.witness)
    return _merge(g, parts, pattern, nodes, "tt3-fast")


K4 = complete_graph(4)
