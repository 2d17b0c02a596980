"""Constructive pattern-free orientations.

Every public orienter ends by searching its own output for the pattern and
raises VerificationError if one is found, so a returned OrienterResult is
always checked.  Edges whose direction does not matter are oriented from
the smaller to the larger vertex id.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Callable

from .density import DensityReport, degeneracy, is_strictly_2_balanced, max_2_density, max_density
from .errors import (
    BlockOrientationError,
    DomainError,
    NotABConstructibleError,
    OrientRamseyError,
    PreconditionError,
    UnsupportedPatternError,
    VerificationError,
)
from .graph import Arc, Graph, Orientation, bits, blocks_of, contains_oriented, norm
from .patterns import cycle_longest_block, is_complete, is_cycle_graph, pattern_class
from .structure import (
    TRIANGLE,
    construction_sequence,
    copyset_for,
    h_closure_peel,
    h_components,
    is_ab_constructible,
    obstruction_kind,
    triangles,
    type_steps_triangle,
)


@dataclass(frozen=True)
class OrienterResult:
    orientation: Orientation
    method: str
    verified: bool


def _finish(g: Graph, arcs, pattern: Orientation, method: str) -> OrienterResult:
    """Fill unoriented edges (tail = smaller id) and run the mandatory check."""
    o = Orientation(g, arcs).completed()
    if contains_oriented(o, pattern):
        raise VerificationError(f"{method}: output contains the pattern")
    return OrienterResult(o, method, True)


def require_density_below(g: Graph, bound: Fraction, what: str) -> DensityReport | None:
    if not g.edges:
        return None
    rep = max_density(g)
    if rep.value >= bound:
        raise PreconditionError(
            f"{what}: m(G) = {rep} is not below {bound.numerator}/{bound.denominator}"
            f" (witness {list(rep.witness)})",
            rep,
        )
    return rep


# -- 2-Ramsey-avoidable extension --------------------------------------------------

def _cycle_extension(pattern: Orientation, pre: dict[tuple, Arc]) -> list[Arc]:
    k = pattern.n
    want_long = cycle_longest_block(pattern) < k - 1
    free = [e for e in pattern.base.sorted_edges() if e not in pre]
    for dirs in product((0, 1), repeat=len(free)):
        arcs = list(pre.values()) + [e if d == 0 else (e[1], e[0]) for e, d in zip(free, dirs)]
        longest = max(b.length for b in blocks_of(Orientation(pattern.base, arcs)))
        if (want_long and longest >= k - 1) or (not want_long and longest < 3):
            return arcs
    raise VerificationError("no cycle completion of the required block shape")


def _tournament_extension(pattern: Orientation, pre: dict[tuple, Arc]) -> list[Arc]:
    g = pattern.base
    for a, b, c in triangles(g):
        es = [norm(a, b), norm(b, c), norm(a, c)]
        if sum(e in pre for e in es) > 1:
            continue
        oriented = [pre[e] for e in es if e in pre]
        if oriented:
            t, h = oriented[0]
            w = next(v for v in (a, b, c) if v not in (t, h))
            new = [(h, w), (w, t)]
        else:
            new = [(a, b), (b, c), (c, a)]
        return list(pre.values()) + new
    raise VerificationError("every triangle has two preoriented edges")


def _antidirected_extension(pattern: Orientation, pre: dict[tuple, Arc]) -> list[Arc]:
    g = pattern.base
    arcs = dict(pre)
    for v in range(g.n):
        at_v = [e for e in pre if v in e]
        free = [norm(v, w) for w in bits(g.adj[v]) if norm(v, w) not in pre]
        if len(at_v) > 1 or not free:
            continue
        f = free[0]
        w = f[0] if f[1] == v else f[1]
        if not at_v:
            if len(free) < 2:
                continue
            f2 = free[1]
            w2 = f2[0] if f2[1] == v else f2[1]
            arcs[f], arcs[f2] = (w, v), (v, w2)
        elif pre[at_v[0]][1] == v:  # u -> v, continue v -> w
            arcs[f] = (v, w)
        else:
            arcs[f] = (w, v)
        return list(arcs.values())
    raise VerificationError("no vertex admits a directed 2-arc path")


def extend_2ramsey(pattern: Orientation, preoriented: Orientation) -> Orientation:
    """Total pattern-free orientation of base(pattern) extending <= 2 given arcs."""
    if preoriented.base != pattern.base:
        raise DomainError("preoriented must be a partial orientation of the pattern's base")
    if len(preoriented.arcs) > 2:
        raise DomainError("at most two edges may be preoriented")
    pre = {norm(*a): a for a in preoriented.arcs}
    h = pattern.base
    if is_cycle_graph(h) and h.n >= 4:
        arcs = _cycle_extension(pattern, pre)
    elif is_complete(h) and h.n >= 4 and pattern.is_acyclic():
        arcs = _tournament_extension(pattern, pre)
    elif pattern.is_antidirected() and h.min_degree() >= 2:
        arcs = _antidirected_extension(pattern, pre)
    else:
        raise DomainError("extension needs an oriented cycle or TT_k (k >= 4) or an anti-directed pattern with min degree >= 2")
    o = Orientation(h, arcs).completed()
    if contains_oriented(o, pattern):
        raise VerificationError("extension contains the pattern")
    return o


# -- component reduction through H-blocks -----------------------------------------------

def orient_component_via_blocks(
    g: Graph, pattern: Orientation, block_orienter: Callable[[Graph], "OrienterResult | Orientation"]
) -> OrienterResult:
    """Peel to the H-closed core, orient each H-block, then reinsert peeled copies."""
    h = pattern.base
    cs = copyset_for(g, h)
    union = Graph(g.n, cs.edge_to_copies)
    closure = h_closure_peel(union, h, cs)
    arcs: dict[tuple, Arc] = {}
    for block in closure.blocks:
        try:
            res = block_orienter(block)
        except OrientRamseyError as exc:
            raise BlockOrientationError(f"block orienter failed: {exc}", block, exc) from exc
        o = res.orientation if isinstance(res, OrienterResult) else res
        for a in o.arcs:
            arcs[norm(*a)] = a
    for copy, removed in reversed(closure.peeled):
        vm = copy.vertex_map
        inv = {hv: pv for pv, hv in enumerate(vm)}
        pre = []
        for e in copy.edge_set - removed:
            t, hd = arcs[e]
            pre.append((inv[t], inv[hd]))
        # the copy's pattern is the compacted base; compact(base) == base for these classes
        ext = extend_2ramsey(pattern, Orientation(copy.pattern, pre))
        for t, hd in ext.arcs:
            e = norm(vm[t], vm[hd])
            if e in removed:
                arcs[e] = (vm[t], vm[hd])
    return _finish(g, arcs.values(), pattern, "via-blocks")


# -- transitive triangle -------------------------------------------------------------------

def orient_avoid_tt3(g: Graph) -> OrienterResult:
    """Every triangle directed: H1 cyclic, each A/B step closes a directed triangle."""
    from .patterns import tt3

    dec = h_components(g, TRIANGLE)
    arcs: dict[tuple, Arc] = {}
    for comp in dec.components:
        ok, ob = is_ab_constructible(comp)
        if not ok:
            kind = obstruction_kind(ob)
            raise NotABConstructibleError(
                f"K3-component is not AB-constructible ({kind} obstruction on {ob.active_vertices()})",
                comp,
                ob,
                kind,
            )
        seq = type_steps_triangle(construction_sequence(comp, TRIANGLE))
        a, b, c = seq.steps[0].copy.vertex_map
        for t, hd in ((a, b), (b, c), (c, a)):
            arcs[norm(t, hd)] = (t, hd)
        for st in seq.steps[1:]:
            old = st.copy.edge_set - st.new_edges
            if st.step_type == "C" or len(old) != 1:
                raise VerificationError("type C step in an AB-constructible component")
            t, hd = arcs[next(iter(old))]
            w = next(v for v in st.copy.vertices if v not in (t, hd))
            arcs[norm(hd, w)] = (hd, w)
            arcs[norm(w, t)] = (w, t)
    return _finish(g, arcs.values(), tt3(), "tt3-directed-triangles")


# -- transitive tournaments, k >= 4 ---------------------------------------------------------

def _cliques_through(adj, u: int, nbrs: list[int], size: int) -> list[tuple[int, ...]]:
    """All ``size``-subsets of ``nbrs`` that are cliques (sorted, lexicographic)."""
    out = []

    def rec(start, chosen, common):
        if len(chosen) == size:
            out.append(tuple(chosen))
            return
        for i in range(start, len(nbrs)):
            v = nbrs[i]
            if common >> v & 1:
                rec(i + 1, chosen + [v], common & adj[v])

    mask = 0
    for v in nbrs:
        mask |= 1 << v
    rec(0, [], mask)
    return out


def orient_avoid_ttk(g: Graph, k: int) -> OrienterResult:
    """Reinsert vertices in reverse degeneracy order so every K_k gets a directed triangle."""
    from .density import m2_complete
    from .patterns import transitive_tournament

    if k < 4:
        raise DomainError("orient_avoid_ttk needs k >= 4")
    require_density_below(g, m2_complete(k), f"TT{k} orienter")
    _, order = degeneracy(g)
    inserted = 0
    arcs: dict[tuple, Arc] = {}

    def triangle_arcs(u, v, w):
        # orient uv and uw so that u, v, w form a directed triangle
        t, hd = arcs[norm(v, w)]
        arcs[norm(u, t)] = (u, t)
        arcs[norm(hd, u)] = (hd, u)

    for u in reversed(order):
        nbrs = list(bits(g.adj[u] & inserted))
        if len(nbrs) > k:
            raise VerificationError(f"vertex {u} reinserted with degree {len(nbrs)} > {k}")
        sub_adj = [a & inserted for a in g.adj]
        cliques = _cliques_through(sub_adj, u, nbrs, k - 1)
        if len(cliques) == 1:
            v, w = cliques[0][:2]
            triangle_arcs(u, v, w)
        elif len(cliques) >= 2:
            kk, kp = set(cliques[0]), set(cliques[1])
            v = next(iter(kk - kp))
            w = next(iter(kp - kk))
            x, y = sorted(kk & kp)[:2]
            triangle_arcs(u, v, x)
            triangle_arcs(u, w, y)
        for v in nbrs:
            arcs.setdefault(norm(u, v), norm(u, v))
        inserted |= 1 << u
    return _finish(g, arcs.values(), transitive_tournament(k), f"tt{k}-induction")


# -- anti-directed patterns ------------------------------------------------------------------

def antidirected_density_ok(g: Graph, pattern: Orientation) -> tuple[bool, str]:
    h = pattern.base
    delta = h.min_degree()
    m = max_density(g).value if g.edges else Fraction(0)
    if m < delta - Fraction(1, 2):
        return True, f"m(G) = {m} < delta(H) - 1/2"
    m2 = max_2_density(h).value
    if is_strictly_2_balanced(h) and m2 - (m2.numerator // m2.denominator) <= Fraction(1, 2) and m < m2:
        return True, f"m(G) = {m} < m2(H) = {m2} with H strictly 2-balanced"
    return False, f"m(G) = {m} is not below delta(H) - 1/2 = {delta - Fraction(1, 2)}"


def orient_avoid_antidirected(g: Graph, pattern: Orientation) -> OrienterResult:
    """Reinsert min-degree vertices with half their edges in and half out."""
    if not pattern.is_antidirected():
        raise UnsupportedPatternError("pattern is not anti-directed")
    if pattern.base.min_degree() < 2:
        raise UnsupportedPatternError("anti-directed orienter needs min degree >= 2 in the pattern")
    ok, why = antidirected_density_ok(g, pattern)
    if not ok:
        raise PreconditionError(f"anti-directed orienter: {why}")
    _, order = degeneracy(g)
    inserted = 0
    arcs = []
    for v in reversed(order):
        nbrs = list(bits(g.adj[v] & inserted))
        half = len(nbrs) // 2
        arcs += [(w, v) for w in nbrs[:half]] + [(v, w) for w in nbrs[half:]]
        inserted |= 1 << v
    return _finish(g, arcs, pattern, "antidirected-induction")


# -- cycles with a long block ----------------------------------------------------------------

def three_colouring(g: Graph) -> list[int]:
    """Greedy colouring along reverse degeneracy order (<= d+1 colours)."""
    _, order = degeneracy(g)
    colour = [-1] * g.n
    for v in reversed(order):
        used = {colour[w] for w in bits(g.adj[v]) if colour[w] >= 0}
        colour[v] = next(c for c in range(g.n + 1) if c not in used)
    return colour


def orient_avoid_longblock_cycle(g: Graph, pattern: Orientation) -> OrienterResult:
    """Orient towards the larger colour of a proper 3-colouring: no directed 3-arc path."""
    if not is_cycle_graph(pattern.base) or cycle_longest_block(pattern) < 3:
        raise UnsupportedPatternError("pattern must be an oriented cycle with a block of length >= 3")
    require_density_below(g, max_2_density(pattern.base).value, "long-block cycle orienter")
    colour = three_colouring(g)
    if max(colour, default=0) > 2:
        raise VerificationError("graph is not 3-coloured greedily")
    arcs = [(u, v) if (colour[u], u) < (colour[v], v) else (v, u) for u, v in g.edges]
    return _finish(g, arcs, pattern, "long-block-colouring")


# -- dispatcher ----------------------------------------------------------------------------

def orient_avoid(g: Graph, pattern: Orientation) -> OrienterResult:
    """Route to the orienter matching the pattern's class."""
    from .cycles import orient_avoid_c4, orient_avoid_cycle

    cls = pattern_class(pattern)
    if cls == "cyclic":
        raise UnsupportedPatternError("pattern has a directed cycle; outside the acyclic theory")
    if cls == "tt":
        k = pattern.n
        if k == 3:
            return orient_avoid_tt3(g)
        return orient_component_via_blocks(g, pattern, lambda b: orient_avoid_ttk(b, k))
    if cls == "cycle":
        if pattern.n == 4:
            return orient_component_via_blocks(g, pattern, lambda b: orient_avoid_c4(b, pattern))
        return orient_component_via_blocks(g, pattern, lambda b: orient_avoid_cycle(b, pattern))
    if cls == "anti":
        if pattern.base.min_degree() < 2:
            raise UnsupportedPatternError("anti-directed pattern with a vertex of degree < 2")
        return orient_component_via_blocks(g, pattern, lambda b: orient_avoid_antidirected(b, pattern))
    raise UnsupportedPatternError("pattern is not a tournament, cycle or anti-directed graph")
