"""Pattern-free orientations for oriented cycles whose blocks have length <= 2.

Each C_l-component is built by a typed construction sequence; the step
types decide which recipe applies.  The recipes aim for an orientation in
which every l-cycle of the component has a block of length >= 3, which is
checked before the global pattern search.  Rerooting and the step rewrites
are pure reorderings of copies followed by retyping and a fresh dispatch.
"""

from __future__ import annotations

import math

from .density import m2_cycle, max_density
from .errors import DomainError, PreconditionError, UnsupportedPatternError, VerificationError
from .graph import Arc, Copy, Graph, Orientation, blocks_of, norm, orient_path
from .orienters import (
    OrienterResult,
    _finish,
    orient_avoid_antidirected,
    orient_avoid_longblock_cycle,
)
from .patterns import cycle_longest_block, is_cycle_graph
from .structure import (
    ConstructionSequence,
    CopySet,
    _greedy_order,
    bounded_sequence,
    config_violations,
    construction_sequence,
    copyset_for,
    cycle_order,
    h_components,
    sequence_from_copies,
    type_steps_cycle,
    union_graph,
)

MAX_REWRITES = 8


class DispatchError(VerificationError):
    """A case recipe's structural assumption failed on a component."""


class _Component:
    def __init__(self, graph: Graph, cs: CopySet, ell: int):
        self.graph = graph
        self.cs = cs
        self.ell = ell
        self.by_edges = {c.edge_set: c for c in cs.copies}
        self.trace: list[str] = []

    def typed(self, copies) -> ConstructionSequence:
        return type_steps_cycle(sequence_from_copies(self.cs.pattern, self.graph.n, copies), self.ell)

    def copies_within(self, edges) -> list[Copy]:
        return [c for c in self.cs.copies if c.edge_set <= edges]

    def rebuild(self, prefix, upto_edges, rest) -> ConstructionSequence:
        """Sequence of the subgraph ``upto_edges`` grown from ``prefix``, then ``rest``."""
        edges: set = set()
        for c in prefix:
            edges |= c.edge_set
        head = _greedy_order(prefix, self.copies_within(upto_edges), edges)
        if union_graph(self.graph.n, head).edges != upto_edges:
            raise DispatchError("rerooted prefix does not rebuild the same subgraph")
        return self.typed(head + list(rest))


# -- orientation helpers ------------------------------------------------------

def _put(arcs: dict, pairs) -> None:
    for t, h in pairs:
        e = norm(t, h)
        if e in arcs and arcs[e] != (t, h):
            raise DispatchError(f"edge {e} oriented twice in opposite directions")
        arcs[e] = (t, h)


def _rotate_to(order: list[int], v: int) -> list[int]:
    i = order.index(v)
    return order[i:] + order[:i]


def _directed_cycle_arcs(c: Copy) -> list[Arc]:
    order = cycle_order(c)
    return orient_path(order + [order[0]])


def _all_long(comp: _Component, arcs: dict) -> list[Copy]:
    """Copies of C_l in the component without a long block."""
    bad = []
    for c in comp.cs.copies:
        o = Orientation(Graph(comp.graph.n, c.edge_set), [arcs[e] for e in c.edge_set])
        if max(b.length for b in blocks_of(o)) < 3:
            bad.append(c)
    return bad


# -- the cases -------------------------------------------------------------------

def _case0(comp, seq):
    arcs: dict = {}
    _put(arcs, _directed_cycle_arcs(seq.steps[0].copy))
    for st in seq.steps[1:]:
        _put(arcs, orient_path(st.q))
    return arcs


def _reroot_at(comp, seq, i, z):
    """Sequence whose first copy is an l-cycle of H_i through ``z``; H_i stays a prefix."""
    hi = seq.prefix_graph(i).edges
    start = next((c for c in comp.copies_within(hi) if z in c.vertices), None)
    if start is None:
        raise DispatchError(f"no l-cycle of H_{i} contains {z}")
    return comp.rebuild([start], hi, seq.copies[i:])


def _case1(comp, seq, i):
    st = seq.steps[i]
    z = st.z
    arcs: dict = {}
    c = _rotate_to(cycle_order(seq.steps[0].copy), z)
    # z -> c1 -> ... -> c_{l-1} and z -> c_{l-1}
    _put(arcs, orient_path(c))
    _put(arcs, [(z, c[-1])])
    for s in range(1, len(seq.steps)):
        q = seq.steps[s].q
        if s < i and q[-1] == z:
            q = q[::-1]
        _put(arcs, orient_path(q))
    return arcs


def _case2(comp, seq, i):
    st = seq.steps[i]
    z = st.z
    ell = comp.ell
    arcs: dict = {}
    c = _rotate_to(cycle_order(seq.steps[0].copy), z)
    a = math.ceil(ell / 2)
    _put(arcs, orient_path(c[: a + 1]))
    _put(arcs, orient_path([z] + c[:a - 1:-1]))
    hi = seq.prefix_graph(i)
    near = {z} | set(hi.neighbors(z))
    for s in range(1, len(seq.steps)):
        q = seq.steps[s].q
        if s == i:
            _put(arcs, [(st.x, z)])
            continue
        if s > i:
            _put(arcs, orient_path(q))
            continue
        ends = [q[0] in near, q[-1] in near]
        if not any(ends):
            _put(arcs, orient_path(q))
        elif not all(ends):
            _put(arcs, orient_path(q if ends[0] else q[::-1]))
        else:
            if q[-1] == z:
                q = q[::-1]
            # block of length e(Q)-1 from q[0], one-arc block from r = q[-1]
            _put(arcs, orient_path(q[:-1]))
            _put(arcs, [(q[-1], q[-2])])
    return arcs


def _four_paths(g: Graph, a: int, b: int) -> list[tuple[int, int, int, int]]:
    out = []
    for u in g.neighbors(a):
        if u == b:
            continue
        for v in g.neighbors(u):
            if v in (a, b) or not g.has_edge(v, b):
                continue
            out.append((a, u, v, b))
    return out


def _case3a(comp, seq, i, j, c5):
    """H1 = c5 directed, steps directed, Q_j aligned with the edge common to all 4-paths."""
    hj = seq.prefix_graph(j).edges
    seq2 = comp.rebuild([c5, seq.copies[i]], hj, seq.copies[j:])
    j2 = next(s for s in range(1, len(seq2.steps)) if seq2.steps[s].copy == seq.copies[j])
    stj = seq2.steps[j2]
    if stj.step_type != f"A{comp.ell - 1}":
        raise DispatchError(f"step j retyped as {stj.step_type} after rerooting")
    comp.trace.append(f"case3a reroot j={j2}")
    x, z = stj.x, stj.z
    hjg = Graph(comp.graph.n, hj)
    paths = _four_paths(hjg, x, z)
    common = None
    for p in paths:
        es = {norm(p[0], p[1]), norm(p[1], p[2]), norm(p[2], p[3])}
        common = es if common is None else common & es
    cands = sorted(e for e in (common or ()) if x in e or z in e)
    if not cands:
        raise DispatchError("no edge common to all 4-paths between the ends of Q_j")
    e = cands[0]
    arcs: dict = {}
    _put(arcs, _directed_cycle_arcs(seq2.steps[0].copy))
    for s in range(1, len(seq2.steps)):
        q = seq2.steps[s].q
        if s == j2:
            t, h = arcs[e]
            # forward Q (x -> z) continues an arc into x or out of z
            forward = (h == x) if x in e else (t == z)
            _put(arcs, orient_path(q if forward else q[::-1]))
        else:
            _put(arcs, orient_path(q))
    return arcs, seq2


def _case3_rewrite(comp, seq, i):
    """Subcases b and c: swap in the cycle p2 x u5 z p3 before the step that made x p2."""
    st = seq.steps[i]
    lab = st.labelling
    path = (lab[3], lab[2], lab[1], lab[0])  # x_i .. z_i in H_i
    u5 = lab[4]
    hi = seq.prefix_graph(i).edges
    pool = comp.copies_within(hi)
    pe = [norm(path[k], path[k + 1]) for k in range(3)]
    choice = None
    for want in (2, 1):
        for p in (path, path[::-1]):
            far = norm(p[2], p[3])
            mid = norm(p[1], p[2])
            near = norm(p[0], p[1])
            for c in pool:
                inside = sum(e in c.edge_set for e in pe)
                if inside != want or far not in c.edge_set or near in c.edge_set:
                    continue
                if want == 2 and mid not in c.edge_set:
                    continue
                choice = (p, c, "b" if want == 2 else "c")
                break
            if choice:
                break
        if choice:
            break
    if choice is None:
        raise DispatchError("no 5-cycle of H_i meets the 4-path as required")
    p, c5, sub = choice
    x, p2, p3, z = p
    seq2 = comp.rebuild([c5], hi, seq.copies[i:])
    target = norm(x, p2)
    beta = next((s for s in range(1, len(seq2.steps)) if target in seq2.steps[s].new_edges), None)
    if beta is None:
        raise DispatchError("edge x p2 is never new")
    d1_edges = frozenset({norm(p2, x), norm(x, u5), norm(u5, z), norm(z, p3), norm(p3, p2)})
    d1 = comp.by_edges.get(d1_edges)
    if d1 is None:
        raise DispatchError("replacement cycle is not a copy")
    copy_i = seq.copies[i]
    copies = seq2.copies
    new = copies[:beta] + [d1, copies[beta]] + [c for c in copies[beta + 1 :] if c != copy_i]
    comp.trace.append(f"case3{sub} rewrite at step {beta}")
    return comp.typed(new)


def _case4_rewrite(comp, seq, i):
    """A new cycle through exactly one half of Q_i goes first; None if there is none."""
    st = seq.steps[i]
    q = st.q
    k = q.index(st.y)
    qa = {norm(q[s], q[s + 1]) for s in range(k)}
    qb = {norm(q[s], q[s + 1]) for s in range(k, len(q) - 1)}
    hnext = seq.prefix_graph(i + 1).edges
    for d in comp.copies_within(hnext):
        if not d.edge_set & st.new_edges or d == st.copy:
            continue
        has_a, has_b = qa <= d.edge_set, qb <= d.edge_set
        if has_a != has_b:
            comp.trace.append(f"case4 split step {i}")
            copies = seq.copies
            return comp.typed(copies[:i] + [d, copies[i]] + copies[i + 1 :])
    return None


def _dispatch(comp: _Component, seq: ConstructionSequence, depth: int = 0) -> dict:
    if depth > MAX_REWRITES:
        raise DispatchError("too many sequence rewrites")
    ell = comp.ell
    types = seq.types()
    bad = config_violations(types, ell)
    if bad:
        raise DispatchError(f"step-type bounds violated: {bad}")
    idx_b = [s for s in range(1, len(seq.steps)) if seq.steps[s].kind == "B"]
    idx_sub = [s for s in range(1, len(seq.steps)) if seq.steps[s].step_type == f"A{ell - 1}"]
    idx_full = [s for s in range(1, len(seq.steps)) if seq.steps[s].step_type == f"A{ell}"]
    if idx_b:
        i = idx_b[0]
        seq2 = _case4_rewrite(comp, seq, i)
        if seq2 is not None and not config_violations(seq2.types(), ell):
            return _dispatch(comp, seq2, depth + 1)
        comp.trace.append("case4 directed")
        return _case0(comp, seq)
    if len(idx_sub) >= 2:
        i, j = idx_sub[:2]
        lab = seq.steps[i].labelling
        path = {norm(lab[3], lab[2]), norm(lab[2], lab[1]), norm(lab[1], lab[0])}
        hi = seq.prefix_graph(i).edges
        c5 = next((c for c in comp.copies_within(hi) if path <= c.edge_set), None)
        if c5 is not None:
            arcs, _ = _case3a(comp, seq, i, j, c5)
            return arcs
        return _dispatch(comp, _case3_rewrite(comp, seq, i), depth + 1)
    for idx, recipe, name in ((idx_full, _case2, "case2"), (idx_sub, _case1, "case1")):
        if idx:
            i = idx[0]
            z = seq.steps[i].z
            if z not in seq.steps[0].copy.vertices:
                comp.trace.append(f"{name} reroot")
                return _dispatch(comp, _reroot_at(comp, seq, i, z), depth + 1)
            comp.trace.append(name)
            return recipe(comp, seq, i)
    comp.trace.append("case0")
    return _case0(comp, seq)


def _component_density_check(comp_graph: Graph, bound, what: str):
    rep = max_density(comp_graph)
    if rep.value >= bound:
        raise PreconditionError(
            f"{what}: C_l-component has m = {rep} not below {bound.numerator}/{bound.denominator}"
            f" (witness {list(rep.witness)})",
            rep,
        )


def _orient_components(g: Graph, pattern: Orientation, orient_one) -> tuple[dict, list[str]]:
    ell = pattern.n
    cs = copyset_for(g, pattern.base)
    dec = h_components(g, pattern.base, cs)
    arcs: dict = {}
    trace = []
    for comp_graph, copies in zip(dec.components, dec.component_copies):
        _component_density_check(comp_graph, m2_cycle(ell), f"C{ell} orienter")
        sub = CopySet(comp_graph, cs.pattern, copies, {
            e: tuple(k for k, c in enumerate(copies) if e in c.edge_set) for e in comp_graph.edges
        })
        comp = _Component(comp_graph, sub, ell)
        seq = type_steps_cycle(construction_sequence(comp_graph, cs.pattern, copies=sub), ell)
        if config_violations(seq.types(), ell):
            # the greedy order can break the bounds (e.g. A5 with A4 at l=6); look for another order
            alt = bounded_sequence(comp_graph, cs.pattern, ell, sub)
            if alt is not None:
                comp.trace.append("reordered")
                seq = alt
        part = orient_one(comp, seq)
        bad = _all_long(comp, part) if orient_one is _dispatch else []
        if bad:
            raise VerificationError(
                f"cycle recipe ({'; '.join(comp.trace)}) left {len(bad)} {ell}-cycle(s) without a long block,"
                f" first {sorted(bad[0].edge_set)}"
            )
        arcs.update(part)
        trace += comp.trace
    return arcs, trace


def orient_avoid_cycle(g: Graph, pattern: Orientation) -> OrienterResult:
    """Oriented l-cycle, l >= 5: every l-cycle of the output has a long block."""
    if not is_cycle_graph(pattern.base) or pattern.n < 5:
        raise UnsupportedPatternError("orient_avoid_cycle needs an oriented cycle of length >= 5")
    if cycle_longest_block(pattern) >= 3:
        return orient_avoid_longblock_cycle(g, pattern)
    arcs, trace = _orient_components(g, pattern, _dispatch)
    method = "cycle:" + ",".join(sorted(set(t.split()[0] for t in trace))) if trace else "cycle:none"
    return _finish(g, arcs.values(), pattern, method)


def _c4_orient(comp: _Component, seq: ConstructionSequence, depth: int = 0) -> dict:
    if depth > MAX_REWRITES:
        raise DispatchError("too many sequence rewrites")
    idx_b = [s for s in range(1, len(seq.steps)) if seq.steps[s].kind == "B"]
    if idx_b:
        bad = config_violations(seq.types(), 4)
        if bad:
            raise DispatchError(f"step-type bounds violated: {bad}")
        seq2 = _case4_rewrite(comp, seq, idx_b[0])
        if seq2 is not None and not config_violations(seq2.types(), 4):
            return _c4_orient(comp, seq2, depth + 1)
        comp.trace.append("c4-directed")
        return _case0(comp, seq)
    colour = comp.graph.two_colouring()
    if colour is None:
        raise DispatchError("B3-free C4-component is not bipartite")
    comp.trace.append("c4-bipartite")
    return {e: (e if colour[e[0]] == 0 else (e[1], e[0])) for e in comp.graph.edges}


def orient_avoid_c4(g: Graph, pattern: Orientation) -> OrienterResult:
    """Oriented 4-cycle: anti-directed and long-block patterns are routed; blocks (2,2) handled here."""
    if not is_cycle_graph(pattern.base) or pattern.n != 4:
        raise UnsupportedPatternError("orient_avoid_c4 needs an oriented 4-cycle")
    if pattern.is_antidirected():
        return orient_avoid_antidirected(g, pattern)
    if cycle_longest_block(pattern) >= 3:
        return orient_avoid_longblock_cycle(g, pattern)
    arcs, trace = _orient_components(g, pattern, _c4_orient)
    method = "c4:" + ",".join(sorted(set(trace))) if trace else "c4:none"
    return _finish(g, arcs.values(), pattern, method)
