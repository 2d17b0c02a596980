"""Copies of a pattern graph, H-components, H-closed cores, H-blocks and
construction sequences (with cycle and triangle step typing).

The pattern H is an undirected Graph here; orientations live elsewhere.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field, replace
from functools import lru_cache

import numpy as np

from .canon import are_isomorphic, canonical_form
from .errors import DomainError, GrammarViolation
from .graph import Copy, Edge, Graph, bits, complete_graph, iter_embeddings, norm, path_or_cycle_order, wheel_graph

TRIANGLE = complete_graph(3)
BLOCK_CHECK_LIMIT = 20
AB_SEARCH_LIMIT = 20


class DisjointSet:
    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)

    def groups(self) -> list[list[int]]:
        out: dict[int, list[int]] = {}
        for x in range(len(self.parent)):
            out.setdefault(self.find(x), []).append(x)
        return list(out.values())


# -- copies ---------------------------------------------------------------------

@dataclass(frozen=True)
class CopySet:
    host: Graph
    pattern: Graph
    copies: tuple[Copy, ...]
    edge_to_copies: dict = field(compare=False)

    def __len__(self):
        return len(self.copies)

    def copies_on(self, e: Edge) -> tuple[int, ...]:
        return self.edge_to_copies.get(norm(*e), ())


def _make_copyset(host: Graph, pattern: Graph, copies) -> CopySet:
    copies = tuple(sorted(set(copies), key=lambda c: c.sorted_edges()))
    index: dict[Edge, list[int]] = {}
    for i, c in enumerate(copies):
        for e in c.edge_set:
            index.setdefault(e, []).append(i)
    return CopySet(host, pattern, copies, {e: tuple(v) for e, v in index.items()})


def enumerate_copies(host: Graph, pattern: Graph) -> CopySet:
    """All subgraphs of ``host`` isomorphic to ``pattern`` (one Copy per edge set).

    Isolated pattern vertices are ignored, so copies are edge-induced.
    """
    if pattern.n < 3:
        raise DomainError("pattern must have at least 3 vertices")
    core, _ = pattern.compact()
    if core.m == 0:
        return _make_copyset(host, pattern, ())
    found = {}
    for emb in iter_embeddings(core.n, core.adj, core.adj, host.n, host.adj, host.adj):
        c = Copy(core, emb)
        found.setdefault(c.edge_set, c)
    return _make_copyset(host, core, found.values())


def triangles(g: Graph) -> list[tuple[int, int, int]]:
    out = []
    for u, v in g.sorted_edges():
        for w in bits(g.adj[u] & g.adj[v]):
            if w > v:
                out.append((u, v, w))
    return out


def triangle_copyset(g: Graph) -> CopySet:
    return _make_copyset(g, TRIANGLE, (Copy(TRIANGLE, t) for t in triangles(g)))


def copyset_for(host: Graph, pattern: Graph) -> CopySet:
    if pattern.n == 3 and pattern.m == 3:
        return triangle_copyset(host)
    return enumerate_copies(host, pattern)


def union_graph(n: int, copies) -> Graph:
    es = set()
    for c in copies:
        es |= c.edge_set
    return Graph(n, es)


# -- H-components ---------------------------------------------------------------

@dataclass(frozen=True)
class ComponentDecomposition:
    components: tuple[Graph, ...]
    component_copies: tuple[tuple[Copy, ...], ...]
    leftover_edges: frozenset


def h_components(host: Graph, pattern: Graph, copies: CopySet | None = None) -> ComponentDecomposition:
    """Unions of copies over the connected pieces of the edge-intersection graph."""
    cs = copies if copies is not None else copyset_for(host, pattern)
    ds = DisjointSet(len(cs.copies))
    for idx in cs.edge_to_copies.values():
        for j in idx[1:]:
            ds.union(idx[0], j)
    groups = sorted(ds.groups(), key=lambda g: g[0])
    comps, comp_copies = [], []
    covered = set()
    for grp in groups:
        cc = tuple(cs.copies[i] for i in grp)
        g = union_graph(host.n, cc)
        covered |= g.edges
        comps.append(g)
        comp_copies.append(cc)
    return ComponentDecomposition(tuple(comps), tuple(comp_copies), host.edges - covered)


# -- H-closed cores and blocks ------------------------------------------------------

@dataclass(frozen=True)
class ClosureResult:
    closed_core: Graph
    peeled: tuple[tuple[Copy, frozenset], ...]
    blocks: tuple[Graph, ...]
    core_copies: tuple[Copy, ...] = ()


def h_closure_peel(host: Graph, pattern: Graph, copies: CopySet | None = None) -> ClosureResult:
    """Peel copies with at most two H-closed edges until the rest is H-closed.

    Each peel removes the copy's edges that lie in no other live copy.  The
    closed core is what remains; its H-blocks are computed as well.
    """
    cs = copies if copies is not None else copyset_for(host, pattern)
    covered = set(cs.edge_to_copies)
    for e in host.sorted_edges():
        if e not in covered:
            raise DomainError(f"edge {e[0]}-{e[1]} lies in no copy of the pattern")
    live = set(range(len(cs.copies)))
    count = {e: len(v) for e, v in cs.edge_to_copies.items()}
    edges = set(host.edges)
    peeled = []
    changed = True
    while changed:
        changed = False
        for i in sorted(live):
            c = cs.copies[i]
            closed = sum(1 for e in c.edge_set if count[e] >= 2)
            if closed <= 2:
                live.discard(i)
                removed = frozenset(e for e in c.edge_set if count[e] == 1)
                for e in c.edge_set:
                    count[e] -= 1
                edges -= removed
                peeled.append((c, removed))
                changed = True
                break
    core = Graph(host.n, edges)
    core_copies = tuple(cs.copies[i] for i in sorted(live))
    return ClosureResult(core, tuple(peeled), _blocks_from_copies(core, core_copies), core_copies)


def is_h_closed(g: Graph, pattern: Graph, copies: CopySet | None = None) -> bool:
    cs = copies if copies is not None else copyset_for(g, pattern)
    if set(cs.edge_to_copies) != set(g.edges):
        return False
    return all(sum(1 for e in c.edge_set if len(cs.edge_to_copies[e]) >= 2) >= 3 for c in cs.copies)


def _blocks_from_copies(core: Graph, copies) -> tuple[Graph, ...]:
    if not copies:
        return ()
    ds = DisjointSet(len(copies))
    owner: dict[Edge, int] = {}
    for i, c in enumerate(copies):
        for e in c.edge_set:
            if e in owner:
                ds.union(owner[e], i)
            else:
                owner[e] = i
    groups = sorted(ds.groups(), key=lambda g: min(copies[i].sorted_edges()[0] for i in g))
    return tuple(union_graph(core.n, (copies[i] for i in grp)) for grp in groups)


def h_blocks(core: Graph, pattern: Graph, copies: CopySet | None = None) -> list[Graph]:
    """Edge partition of an H-closed graph into H-blocks."""
    cs = copies if copies is not None else copyset_for(core, pattern)
    if not core.edges:
        return []
    if not is_h_closed(core, pattern, cs):
        raise DomainError("graph is not H-closed")
    return list(_blocks_from_copies(core, cs.copies))


def is_indivisible(block: Graph, pattern: Graph, copies: CopySet | None = None) -> bool:
    """No proper nonempty edge subset E' avoids being straddled by some copy.

    Exhaustive over all 2^(e-1) splits, so limited to BLOCK_CHECK_LIMIT edges.
    """
    k = block.m
    if k > BLOCK_CHECK_LIMIT:
        raise DomainError(f"indivisibility check limited to {BLOCK_CHECK_LIMIT} edges")
    if k <= 1:
        return True
    cs = copies if copies is not None else copyset_for(block, pattern)
    index = {e: i for i, e in enumerate(block.sorted_edges())}
    # by complement symmetry, only subsets containing edge 0 are needed
    subsets = (np.arange(1 << (k - 1), dtype=np.int64) << 1) | 1
    subsets = subsets[subsets != (1 << k) - 1]
    straddled = np.zeros(subsets.shape, dtype=bool)
    for c in cs.copies:
        mask = 0
        for e in c.edge_set:
            if e in index:
                mask |= 1 << index[e]
        hit = subsets & mask
        straddled |= (hit != 0) & (hit != mask)
    return bool(straddled.all())


def is_h_block(g: Graph, pattern: Graph) -> bool:
    cs = copyset_for(g, pattern)
    return bool(g.edges) and is_h_closed(g, pattern, cs) and is_indivisible(g, pattern, cs)


# -- construction sequences ------------------------------------------------------------

@dataclass(frozen=True)
class Step:
    """One copy added to the running union.

    ``q`` is the path of new edges (cycles only), from ``q[0] = x`` to
    ``q[-1] = z``; ``y`` is the old interior vertex of a B step.
    ``labelling`` is the witnessing u1..ul of a typed cycle step.
    """

    copy: Copy
    new_edges: frozenset
    new_vertices: frozenset
    step_type: str | None = None
    labelling: tuple[int, ...] | None = None
    q: tuple[int, ...] | None = None
    y: int | None = None

    @property
    def x(self):
        return self.q[0] if self.q else None

    @property
    def z(self):
        return self.q[-1] if self.q else None

    @property
    def kind(self) -> str | None:
        """``A`` or ``B`` for typed cycle steps."""
        return self.step_type[0] if self.step_type else None

    @property
    def index(self) -> int | None:
        """The j of A_j or k of B_k."""
        return int(self.step_type[1:]) if self.step_type and len(self.step_type) > 1 else None


@dataclass(frozen=True)
class ConstructionSequence:
    pattern: Graph
    n: int
    steps: tuple[Step, ...]

    def __len__(self):
        return len(self.steps)

    @property
    def copies(self) -> list[Copy]:
        return [s.copy for s in self.steps]

    def prefix_graph(self, i: int) -> Graph:
        """H_i: the union of the first ``i`` copies."""
        return union_graph(self.n, self.copies[:i])

    def graph(self) -> Graph:
        return self.prefix_graph(len(self.steps))

    def types(self) -> list[str | None]:
        return [s.step_type for s in self.steps[1:]]


def sequence_from_copies(pattern: Graph, n: int, copies) -> ConstructionSequence:
    """Validate an ordering of copies as a construction sequence."""
    copies = list(copies)
    if not copies:
        raise DomainError("a construction sequence needs at least one copy")
    edges: set = set()
    verts: set = set()
    steps = []
    for i, c in enumerate(copies):
        new_e = c.edge_set - edges
        if i:
            if not new_e:
                raise DomainError(f"copy {i} is contained in the union so far")
            if len(new_e) == len(c.edge_set):
                raise DomainError(f"copy {i} shares no edge with the union so far")
        steps.append(Step(c, frozenset(new_e), frozenset(c.vertices - verts)))
        edges |= c.edge_set
        verts |= c.vertices
    return ConstructionSequence(pattern, n, tuple(steps))


def _greedy_order(prefix, pool, edges: set):
    order = list(prefix)
    remaining = [c for c in pool if c not in set(order)]
    while remaining:
        best = None
        keep = []
        for c in remaining:
            if c.edge_set <= edges:
                continue
            keep.append(c)
            shared = len(c.edge_set & edges)
            if shared == 0:
                continue
            key = (-shared, c.sorted_edges())
            if best is None or key < best[0]:
                best = (key, c)
        if best is None:
            if keep:
                raise DomainError("copies do not form a single H-component")
            break
        c = best[1]
        order.append(c)
        edges |= c.edge_set
        remaining = [d for d in keep if d is not c]
    return order


def construction_sequence(
    component: Graph, pattern: Graph, start: Copy | None = None, copies: CopySet | None = None
) -> ConstructionSequence:
    """Greedy construction sequence from ``start``: most shared edges first, then lexicographic."""
    cs = copies if copies is not None else copyset_for(component, pattern)
    if not cs.copies:
        raise DomainError("component contains no copy of the pattern")
    if start is None:
        start = cs.copies[0]
    elif start not in set(cs.copies):
        raise DomainError("start is not a copy of the pattern in the component")
    order = _greedy_order([start], cs.copies, set(start.edge_set))
    seq = sequence_from_copies(cs.pattern, component.n, order)
    if seq.graph().edges != component.edges:
        raise DomainError("component has edges outside every copy")
    return seq


def reorder_sequence(seq: ConstructionSequence, prefix) -> ConstructionSequence:
    """A construction sequence of the same graph that starts with ``prefix``."""
    prefix = list(prefix)
    edges: set = set()
    for c in prefix:
        edges |= c.edge_set
    order = _greedy_order(prefix, seq.copies, edges)
    out = sequence_from_copies(seq.pattern, seq.n, order)
    if out.graph().edges != seq.graph().edges:
        raise DomainError("reordered sequence does not rebuild the component")
    return out


# -- cycle step typing --------------------------------------------------------------

def cycle_order(c: Copy) -> list[int]:
    order, closed = path_or_cycle_order(Graph(max(c.vertices) + 1, c.edge_set))
    if not closed:
        raise DomainError("copy is not a cycle")
    return order


def type_cycle_step(prefix_edges: set, prefix_vertices: set, copy: Copy, ell: int) -> Step:
    """Type one step as A_j or B_k; raise GrammarViolation otherwise."""
    c = cycle_order(copy)
    if len(c) != ell:
        raise GrammarViolation(f"copy has length {len(c)}, expected {ell}")
    old = [norm(c[k], c[(k + 1) % ell]) in prefix_edges for k in range(ell)]
    starts = [k for k in range(ell) if old[k] and not old[k - 1]]
    if len(starts) != 1:
        raise GrammarViolation(f"old edges of the new cycle {c} do not form one path")
    s = starts[0]
    rot = c[s:] + c[:s]
    j = sum(old)  # old edges rot[0]rot[1] ... rot[j-1]rot[j]
    j_vertices = j + 1
    interior = rot[j_vertices:]
    old_inside = [w for w in interior if w in prefix_vertices]
    new_e = frozenset(norm(rot[k], rot[(k + 1) % ell]) for k in range(j, ell))
    new_v = frozenset(w for w in interior if w not in prefix_vertices)
    if not old_inside:
        lab = tuple(rot)
        q = tuple(rot[j:]) + (rot[0],)
        return Step(copy, new_e, new_v, f"A{j_vertices}", lab, q, None)
    if len(old_inside) == 1 and j_vertices == 2:
        w = old_inside[0]
        k_fwd = rot.index(w) + 1
        k_rev = ell + 3 - k_fwd
        cands = []
        if 3 <= k_fwd <= ell - 1:
            cands.append((k_fwd, tuple(rot)))
        if 3 <= k_rev <= ell - 1:
            cands.append((k_rev, (rot[1], rot[0]) + tuple(reversed(rot[2:]))))
        if cands:
            k, lab = min(cands)
            q = lab[1:] + (lab[0],)
            return Step(copy, new_e, new_v, f"B{k}", lab, q, w)
    raise GrammarViolation(
        f"step adding cycle {c} matches no A_j/B_k type "
        f"({j} old edges, {len(old_inside)} old interior vertices)"
    )


def type_steps_cycle(seq: ConstructionSequence, ell: int) -> ConstructionSequence:
    if ell < 4:
        raise DomainError("cycle typing needs length >= 4")
    edges = set(seq.steps[0].copy.edge_set)
    verts = set(seq.steps[0].copy.vertices)
    out = [seq.steps[0]]
    for st in seq.steps[1:]:
        out.append(type_cycle_step(edges, verts, st.copy, ell))
        edges |= st.copy.edge_set
        verts |= st.copy.vertices
    return replace(seq, steps=tuple(out))


def config_violations(types, ell: int) -> list[str]:
    """Violations of the step-type configuration bounds for a C_ell construction."""
    types = [t for t in types if t is not None]
    out = []
    a_full = f"A{ell}"
    a_sub = f"A{ell - 1}"
    for i, t in enumerate(types):
        others = types[:i] + types[i + 1 :]
        if ell == 4:
            # only the B3 rule holds for 4-cycles
            if t.startswith("B") and any(o != "A2" for o in others):
                out.append(f"{t} present with {sorted(set(o for o in others if o != 'A2'))}")
            continue
        if t == a_full:
            bad = [o for o in others if o not in ("A2", "A3")]
            if bad:
                out.append(f"{t} present with {sorted(set(bad))}")
        if t == a_sub:
            bad = [o for o in others if o not in ("A2", "A3", a_sub)]
            if bad:
                out.append(f"{t} present with {sorted(set(bad))}")
        if t.startswith("B"):
            bad = [o for o in others if o != "A2"]
            if bad:
                out.append(f"{t} present with {sorted(set(bad))}")
    if ell > 4 and types.count(a_sub) >= 2:
        if ell != 5:
            out.append(f"two {a_sub} steps with ell={ell}")
        bad = [o for o in types if o not in ("A2", a_sub)]
        if bad:
            out.append(f"two {a_sub} steps present with {sorted(set(bad))}")
    return sorted(set(out))


def check_config_bounds(seq: ConstructionSequence, ell: int) -> list[str]:
    return config_violations(seq.types(), ell)


def bounded_sequence(
    component: Graph, pattern: Graph, ell: int, copies: CopySet | None = None, node_limit: int = 200_000
) -> ConstructionSequence | None:
    """Some typed construction sequence with no bound violations, or None.

    Depth-first over orderings; a step is only taken if it types and keeps
    the type list violation-free (violations never disappear later).
    """
    cs = copies if copies is not None else copyset_for(component, pattern)
    target = frozenset(component.edges)
    failed: set = set()
    nodes = 0

    def rec(order, edges, verts, types):
        nonlocal nodes
        if edges == target:
            return order
        key = (edges, tuple(sorted(types)))
        if key in failed:
            return None
        nodes += 1
        if nodes > node_limit:
            return None
        for c in cs.copies:
            if c.edge_set <= edges or not (c.edge_set & edges):
                continue
            try:
                st = type_cycle_step(edges, verts, c, ell)
            except GrammarViolation:
                continue
            nt = types + [st.step_type]
            if config_violations(nt, ell):
                continue
            got = rec(order + [c], edges | c.edge_set, verts | c.vertices, nt)
            if got is not None:
                return got
        failed.add(key)
        return None

    for start in cs.copies:
        got = rec([start], frozenset(start.edge_set), frozenset(start.vertices), [])
        if got is not None:
            return type_steps_cycle(sequence_from_copies(cs.pattern, component.n, got), ell)
        if nodes > node_limit:
            break
    return None


# -- triangle step typing -------------------------------------------------------------

def type_steps_triangle(seq: ConstructionSequence) -> ConstructionSequence:
    out = [seq.steps[0]]
    for st in seq.steps[1:]:
        ne, nv = len(st.new_edges), len(st.new_vertices)
        if ne == 2 and nv == 1:
            t = "A"
        elif ne == 2 and nv == 0:
            t = "B"
        elif ne == 1:
            t = "C"
        else:
            raise GrammarViolation(f"triangle step with {ne} new edges and {nv} new vertices")
        out.append(replace(st, step_type=t))
    return replace(seq, steps=tuple(out))


# -- AB-constructibility -----------------------------------------------------------------

def _triangle_components_without(g: Graph, tris, e: Edge) -> dict[Edge, int]:
    """Component id (in the triangle edge-intersection graph of g - e) for each covered edge."""
    live = [t for t in tris if e not in _tri_edges(t)]
    ds = DisjointSet(len(live))
    owner: dict[Edge, int] = {}
    for i, t in enumerate(live):
        for f in _tri_edges(t):
            if f in owner:
                ds.union(owner[f], i)
            else:
                owner[f] = i
    return {f: ds.find(i) for f, i in owner.items()}


def _tri_edges(t) -> tuple[Edge, Edge, Edge]:
    a, b, c = t
    return norm(a, b), norm(a, c), norm(b, c)


def c_step_witness_criterion(g: Graph):
    """(u, w, v) such that uw, wv lie in one K3-component of g - uv and uwv is a triangle.

    Such a triple exists iff some construction sequence has a C step.
    """
    tris = triangles(g)
    by_edge: dict[Edge, list] = {}
    for t in tris:
        for f in _tri_edges(t):
            by_edge.setdefault(f, []).append(t)
    for e in sorted(by_edge):
        comp = None
        for t in by_edge[e]:
            w = next(x for x in t if x not in e)
            f, h = norm(e[0], w), norm(e[1], w)
            if len(by_edge[f]) < 2 or len(by_edge[h]) < 2:
                continue
            if comp is None:
                comp = _triangle_components_without(g, tris, e)
            if f in comp and h in comp and comp[f] == comp[h]:
                return e[0], w, e[1]
    return None


def c_step_witness_search(g: Graph):
    """Exhaustive memoised search over reachable copy unions; same contract as the criterion."""
    if g.m > AB_SEARCH_LIMIT:
        raise DomainError(f"exhaustive AB search limited to {AB_SEARCH_LIMIT} edges")
    tris = triangles(g)
    idx = {e: i for i, e in enumerate(g.sorted_edges())}
    masks = [sum(1 << idx[f] for f in _tri_edges(t)) for t in tris]
    seen: set[int] = set()
    for start in masks:
        stack = [start]
        while stack:
            s = stack.pop()
            if s in seen:
                continue
            seen.add(s)
            for t, m in zip(tris, masks):
                shared = m & s
                if not shared or shared == m:
                    continue
                if (m & ~s).bit_count() == 1:
                    new = next(f for f in _tri_edges(t) if not s >> idx[f] & 1)
                    w = next(x for x in t if x not in new)
                    return new[0], w, new[1]
                stack.append(s | m)
    return None


def extract_obstruction(g: Graph, witness) -> Graph:
    """K4, W5 or a 6-vertex 9-edge subgraph certifying a C step at ``witness``.

    Uses a shortest path F1..Fs in the triangle intersection graph of g - uv
    from a triangle on uw to one on wv.
    """
    u, w, v = witness
    h = g.without_edges([(u, v)])
    tris = triangles(h)
    by_edge: dict[Edge, list[int]] = {}
    for i, t in enumerate(tris):
        for f in _tri_edges(t):
            by_edge.setdefault(f, []).append(i)
    src = by_edge[norm(u, w)]
    dst = set(by_edge[norm(w, v)])
    prev = {i: None for i in src}
    queue = deque(src)
    end = None
    while queue:
        i = queue.popleft()
        if i in dst:
            end = i
            break
        for f in _tri_edges(tris[i]):
            for j in by_edge[f]:
                if j not in prev:
                    prev[j] = i
                    queue.append(j)
    if end is None:
        raise DomainError("witness edges are not joined by triangles")
    path = []
    while end is not None:
        path.append(end)
        end = prev[end]
    path.reverse()
    chosen = path[:4]
    es = set()
    for i in chosen:
        es |= set(_tri_edges(tris[i]))
    if len(path) <= 3:
        es.add(norm(u, v))
    return Graph(g.n, es)


def obstruction_kind(ob: Graph) -> str:
    core, _ = ob.compact()
    if are_isomorphic(core, complete_graph(4)):
        return "K4"
    if are_isomorphic(core, wheel_graph(4)):
        return "W5"
    if core.n == 6 and core.m == 9:
        return "J"
    return "other"


def is_ab_constructible(component: Graph, method: str = "auto") -> tuple[bool, Graph | None]:
    """Whether no construction sequence of any K3-component has a C step.

    ``method`` is ``search`` (exhaustive, <= 20 edges), ``criterion`` (exact
    polynomial test) or ``auto``.  The second value is an obstruction
    subgraph (same vertex labels) when the answer is False.
    """
    if method == "auto":
        method = "search" if component.m <= AB_SEARCH_LIMIT else "criterion"
    if method == "search":
        wit = c_step_witness_search(component)
    elif method == "criterion":
        wit = c_step_witness_criterion(component)
    else:
        raise ValueError(f"unknown method {method!r}")
    if wit is None:
        return True, None
    return False, extract_obstruction(component, wit)


@lru_cache(maxsize=None)
def j_family() -> tuple[Graph, ...]:
    """Non-isomorphic 6-vertex 9-edge unions of four triangles along a shortest path.

    Brute force: sequences F1..F4 where each Fi meets F(i-1) in exactly one
    edge, meets the earlier union in exactly one edge, shares no edge with
    F1..F(i-2), and every edge lies in at most two triangles of the union.
    """
    found: dict = {}

    def grow(seq, union: set, nverts: int):
        if len(seq) == 4:
            g = Graph(6, union)
            if len(g.active_vertices()) == 6 and g.m == 9:
                if all(len([t for t in triangles(g) if f in _tri_edges(t)]) <= 2 for f in g.edges):
                    found.setdefault(canonical_form(g), g)
            return
        last = seq[-1]
        for a, b in _tri_edges(last):
            for w in list(range(nverts)) + ([nverts] if nverts < 6 else []):
                if w in (a, b):
                    continue
                t = tuple(sorted((a, b, w)))
                te = set(_tri_edges(t))
                if t in seq or len(te & union) != 1:
                    continue
                if any(te & set(_tri_edges(s)) for s in seq[:-1]):
                    continue
                sub = union | te
                g = Graph(6, sub)
                if any(len([x for x in triangles(g) if f in _tri_edges(x)]) > 2 for f in sub):
                    continue
                grow(seq + [t], sub, max(nverts, w + 1))

    grow([(0, 1, 2)], set(_tri_edges((0, 1, 2))), 3)
    return tuple(found[k] for k in sorted(found))


def contains_subgraph(host: Graph, sub: Graph) -> bool:
    core, _ = sub.compact()
    for _ in iter_embeddings(core.n, core.adj, core.adj, host.n, host.adj, host.adj):
        return True
    return False


# -- cycles -------------------------------------------------------------------------------

def cycle_lengths(g: Graph) -> set[int]:
    """Lengths of all cycles of ``g`` (exhaustive; meant for small graphs)."""
    lengths = set()
    n = g.n
    for s in range(n):
        # cycles whose minimum vertex is s
        stack = [(s, 1 << s, 0)]
        while stack:
            v, used, depth = stack.pop()
            for w in bits(g.adj[v]):
                if w == s and depth >= 2:
                    lengths.add(depth + 1)
                elif w > s and not used >> w & 1:
                    stack.append((w, used | 1 << w, depth + 1))
    return lengths


def count_subgraphs(host: Graph, sub: Graph) -> int:
    """Number of subgraphs of ``host`` isomorphic to ``sub`` (by edge set)."""
    core, _ = sub.compact()
    seen = set()
    for emb in iter_embeddings(core.n, core.adj, core.adj, host.n, host.adj, host.adj):
        seen.add(frozenset(norm(emb[a], emb[b]) for a, b in core.edges))
    return len(seen)
