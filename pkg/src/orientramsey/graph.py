"""Graph, orientation and copy value types plus oriented-subgraph search.

Vertices are the dense integers ``0..n-1`` and adjacency is kept as one
Python ``int`` bitset per vertex.  Everything here is immutable once built.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import DomainError, GraphValidationError

Edge = tuple[int, int]
Arc = tuple[int, int]


def norm(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Graph:
    """Simple undirected graph on vertices ``0..n-1``."""

    __slots__ = ("n", "edges", "adj", "_hash")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        if n < 0:
            raise GraphValidationError(f"vertex count must be >= 0, got {n}")
        adj = [0] * n
        seen: set[Edge] = set()
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if u == v:
                raise GraphValidationError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphValidationError(f"edge {u}-{v} out of range for n={n}")
            key = norm(u, v)
            if key in seen:
                raise GraphValidationError(f"parallel edge {key[0]}-{key[1]}")
            seen.add(key)
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self.n = n
        self.edges: frozenset[Edge] = frozenset(seen)
        self.adj: tuple[int, ...] = tuple(adj)
        self._hash = None

    # -- basic queries -------------------------------------------------
    @property
    def m(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, u: int) -> list[int]:
        return list(bits(self.adj[u]))

    def degree(self, u: int) -> int:
        return self.adj[u].bit_count()

    def degrees(self) -> list[int]:
        return [a.bit_count() for a in self.adj]

    def min_degree(self) -> int:
        return min(self.degrees(), default=0)

    def active_vertices(self) -> list[int]:
        """Vertices incident with at least one edge."""
        return [v for v in range(self.n) if self.adj[v]]

    # -- derived graphs ------------------------------------------------
    def edge_subgraph(self, edges: Iterable[Edge]) -> "Graph":
        """Subgraph on the same vertex labels containing only ``edges``."""
        es = [norm(*e) for e in edges]
        for e in es:
            if e not in self.edges:
                raise DomainError(f"{e[0]}-{e[1]} is not an edge of the graph")
        return Graph(self.n, es)

    def induced(self, vertices: Iterable[int]) -> "Graph":
        mask = 0
        for v in vertices:
            mask |= 1 << v
        return Graph(self.n, [(u, v) for u, v in self.edges if mask >> u & 1 and mask >> v & 1])

    def without_edges(self, edges: Iterable[Edge]) -> "Graph":
        drop = {norm(*e) for e in edges}
        return Graph(self.n, [e for e in self.edges if e not in drop])

    def compact(self, vertices: Sequence[int] | None = None) -> tuple["Graph", tuple[int, ...]]:
        """Relabel onto ``0..k-1``.  Returns the graph and the old labels."""
        if vertices is None:
            vertices = self.active_vertices()
        labels = tuple(sorted(vertices))
        index = {v: i for i, v in enumerate(labels)}
        es = [(index[u], index[v]) for u, v in self.edges if u in index and v in index]
        return Graph(len(labels), es), labels

    def relabel(self, mapping: Sequence[int], n: int) -> "Graph":
        return Graph(n, [(mapping[u], mapping[v]) for u, v in self.edges])

    def disjoint_union(self, other: "Graph") -> "Graph":
        k = self.n
        return Graph(k + other.n, list(self.edges) + [(u + k, v + k) for u, v in other.edges])

    def plus_edges(self, edges: Iterable[Edge]) -> "Graph":
        return Graph(self.n, list(self.edges) + [norm(*e) for e in edges])

    def connected_components(self) -> list[list[int]]:
        """Components among active vertices, each sorted, ordered by first vertex."""
        seen = 0
        comps = []
        for s in range(self.n):
            if seen >> s & 1 or not self.adj[s]:
                continue
            comp = 1 << s
            frontier = 1 << s
            while frontier:
                nxt = 0
                for v in bits(frontier):
                    nxt |= self.adj[v]
                frontier = nxt & ~comp
                comp |= nxt
            seen |= comp
            comps.append(list(bits(comp)))
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or (len(self.connected_components()) == 1 and all(self.adj))

    def two_colouring(self) -> dict[int, int] | None:
        """Proper 2-colouring of the active vertices, or None if not bipartite."""
        colour: dict[int, int] = {}
        for s in self.active_vertices():
            if s in colour:
                continue
            colour[s] = 0
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for w in bits(self.adj[u]):
                    if w not in colour:
                        colour[w] = 1 - colour[u]
                        queue.append(w)
                    elif colour[w] == colour[u]:
                        return None
        return colour

    # -- dunder --------------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, self.edges))
        return self._hash

    def __repr__(self):
        body = " ".join(f"{u}-{v}" for u, v in self.sorted_edges())
        return f"Graph({self.n}; {body})"


# -- constructors --------------------------------------------------------

def complete_graph(t: int) -> Graph:
    return Graph(t, [(u, v) for u in range(t) for v in range(u + 1, t)])


def cycle_graph(t: int) -> Graph:
    if t < 3:
        raise GraphValidationError("a cycle needs at least 3 vertices")
    return Graph(t, [(i, (i + 1) % t) for i in range(t)])


def path_graph(t: int) -> Graph:
    return Graph(t, [(i, i + 1) for i in range(t - 1)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, [(u, a + v) for u in range(a) for v in range(b)])


def wheel_graph(rim: int) -> Graph:
    """Cycle on ``rim`` vertices plus a universal hub (vertex ``rim``)."""
    c = cycle_graph(rim)
    return Graph(rim + 1, list(c.edges) + [(i, rim) for i in range(rim)])


# -- orientations ----------------------------------------------------------

class Orientation:
    """Partial or total assignment of directions to the edges of ``base``."""

    __slots__ = ("base", "arcs", "_head_of", "out_adj", "in_adj")

    def __init__(self, base: Graph, arcs: Iterable[Sequence[int]] = ()):
        head_of: dict[Edge, Arc] = {}
        out_adj = [0] * base.n
        in_adj = [0] * base.n
        for a in arcs:
            t, h = int(a[0]), int(a[1])
            key = norm(t, h)
            if t == h or key not in base.edges:
                raise GraphValidationError(f"arc {t}>{h} is not an edge of the base graph")
            if key in head_of:
                if head_of[key] != (t, h):
                    raise GraphValidationError(f"edge {key[0]}-{key[1]} oriented both ways")
                continue
            head_of[key] = (t, h)
            out_adj[t] |= 1 << h
            in_adj[h] |= 1 << t
        self.base = base
        self._head_of = head_of
        self.arcs: frozenset[Arc] = frozenset(head_of.values())
        self.out_adj = tuple(out_adj)
        self.in_adj = tuple(in_adj)

    @classmethod
    def from_mapping(cls, base: Graph, mapping: dict) -> "Orientation":
        return cls(base, mapping.values())

    @property
    def n(self) -> int:
        return self.base.n

    def is_total(self) -> bool:
        return len(self._head_of) == len(self.base.edges)

    def arc(self, u: int, v: int) -> Arc | None:
        """The oriented form of edge ``uv``, or None if unoriented."""
        return self._head_of.get(norm(u, v))

    def has_arc(self, t: int, h: int) -> bool:
        return bool(self.out_adj[t] >> h & 1)

    def oriented_edges(self) -> frozenset[Edge]:
        return frozenset(self._head_of)

    def unoriented_edges(self) -> list[Edge]:
        return sorted(self.base.edges - self._head_of.keys())

    def sorted_arcs(self) -> list[Arc]:
        return sorted(self.arcs, key=lambda a: (norm(*a), a))

    def outdegree(self, v: int) -> int:
        return self.out_adj[v].bit_count()

    def indegree(self, v: int) -> int:
        return self.in_adj[v].bit_count()

    def reverse(self) -> "Orientation":
        return Orientation(self.base, [(h, t) for t, h in self.arcs])

    def extended(self, arcs: Iterable[Sequence[int]]) -> "Orientation":
        return Orientation(self.base, list(self.arcs) + [tuple(a) for a in arcs])

    def restricted(self, base: Graph) -> "Orientation":
        """The orientation induced on a subgraph ``base`` (same labels)."""
        return Orientation(base, [self._head_of[e] for e in base.edges if e in self._head_of])

    def completed(self) -> "Orientation":
        """Orient every remaining edge from its smaller to its larger end."""
        return Orientation(self.base, list(self.arcs) + self.unoriented_edges())

    def is_acyclic(self) -> bool:
        indeg = [self.indegree(v) for v in range(self.n)]
        queue = deque(v for v in range(self.n) if indeg[v] == 0)
        seen = 0
        while queue:
            v = queue.popleft()
            seen += 1
            for w in bits(self.out_adj[v]):
                indeg[w] -= 1
                if indeg[w] == 0:
                    queue.append(w)
        return seen == self.n

    def is_antidirected(self) -> bool:
        return all(not (self.out_adj[v] and self.in_adj[v]) for v in range(self.n))

    def __eq__(self, other):
        return isinstance(other, Orientation) and self.base == other.base and self.arcs == other.arcs

    def __hash__(self):
        return hash((self.base, self.arcs))

    def __repr__(self):
        parts = [f"{t}>{h}" for t, h in self.sorted_arcs()]
        parts += [f"{u}-{v}" for u, v in self.unoriented_edges()]
        return f"Orientation({self.n}; {' '.join(parts)})"


def orient_path(vertices: Sequence[int]) -> list[Arc]:
    """Arcs of the directed path through ``vertices`` in the given order."""
    return [(vertices[i], vertices[i + 1]) for i in range(len(vertices) - 1)]


# -- embedding search --------------------------------------------------------

def _search_order(n: int, adj: Sequence[int]) -> list[int]:
    """Vertex order in which every vertex after a component root has an earlier neighbour."""
    order: list[int] = []
    placed = 0
    remaining = sorted(range(n), key=lambda v: (-adj[v].bit_count(), v))
    for root in remaining:
        if placed >> root & 1:
            continue
        order.append(root)
        placed |= 1 << root
        while True:
            # most-constrained next vertex: most already-placed neighbours
            best, best_key = -1, None
            for v in range(n):
                if placed >> v & 1 or not adj[v] & placed:
                    continue
                key = ((adj[v] & placed).bit_count(), adj[v].bit_count(), -v)
                if best_key is None or key > best_key:
                    best, best_key = v, key
            if best < 0:
                break
            order.append(best)
            placed |= 1 << best
    return order


def iter_embeddings(
    pattern_n: int,
    pattern_out: Sequence[int],
    pattern_in: Sequence[int],
    host_n: int,
    host_out: Sequence[int],
    host_in: Sequence[int],
) -> Iterator[tuple[int, ...]]:
    """Injective maps V(pattern) -> V(host) carrying arcs onto arcs.

    For undirected search pass the adjacency bitsets as both ``*_out`` and
    ``*_in``; every pattern edge then appears as an arc both ways.
    """
    if pattern_n == 0:
        yield ()
        return
    if pattern_n > host_n:
        return
    und = [pattern_out[v] | pattern_in[v] for v in range(pattern_n)]
    order = _search_order(pattern_n, und)
    pos = {v: i for i, v in enumerate(order)}
    # constraints[i]: list of (earlier pattern vertex, use_out) for order[i]
    constraints = []
    for i, v in enumerate(order):
        cons = []
        for w in bits(und[v]):
            if pos[w] < i:
                if pattern_in[v] >> w & 1:
                    cons.append((w, True))  # arc w -> v: v among out-neighbours of image(w)
                if pattern_out[v] >> w & 1:
                    cons.append((w, False))  # arc v -> w: v among in-neighbours of image(w)
        constraints.append(cons)
    all_host = (1 << host_n) - 1
    outdeg = [pattern_out[v].bit_count() for v in range(pattern_n)]
    indeg = [pattern_in[v].bit_count() for v in range(pattern_n)]
    feasible = []
    for v in range(pattern_n):
        mask = 0
        for h in range(host_n):
            if host_out[h].bit_count() >= outdeg[v] and host_in[h].bit_count() >= indeg[v]:
                mask |= 1 << h
        feasible.append(mask)

    image = [0] * pattern_n
    k = pattern_n

    def rec(i: int, used: int):
        if i == k:
            yield tuple(image)
            return
        v = order[i]
        cand = feasible[v] & ~used
        for w, use_out in constraints[i]:
            cand &= host_out[image[w]] if use_out else host_in[image[w]]
            if not cand:
                return
        if not constraints[i]:
            cand &= all_host
        for h in bits(cand):
            image[v] = h
            yield from rec(i + 1, used | 1 << h)

    yield from rec(0, 0)


def contains_oriented(host: Orientation, pattern: Orientation) -> bool:
    """Does some injective vertex map carry every arc of ``pattern`` onto a host arc?

    Unoriented host edges never match.
    """
    if not pattern.is_total():
        raise DomainError("pattern orientation must be total")
    if len(pattern.arcs) > len(host.arcs):
        return False
    for _ in iter_embeddings(
        pattern.n, pattern.out_adj, pattern.in_adj, host.n, host.out_adj, host.in_adj
    ):
        return True
    return False


def find_oriented(host: Orientation, pattern: Orientation) -> tuple[int, ...] | None:
    """Vertex map of one pattern copy in ``host``, or None."""
    for emb in iter_embeddings(
        pattern.n, pattern.out_adj, pattern.in_adj, host.n, host.out_adj, host.in_adj
    ):
        return emb
    return None


def is_isomorphic_oriented(a: Orientation, b: Orientation) -> bool:
    return (
        a.n == b.n
        and len(a.arcs) == len(b.arcs)
        and len(a.base.edges) == len(b.base.edges)
        and a.is_total()
        and b.is_total()
        and contains_oriented(a, b)
    )


def is_self_converse(pattern: Orientation) -> bool:
    return is_isomorphic_oriented(pattern, pattern.reverse())


# -- copies ------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Copy:
    """An image of ``pattern`` in a host; equality is by edge set only."""

    pattern: Graph
    vertex_map: tuple[int, ...]
    edge_set: frozenset = field(init=False)

    def __post_init__(self):
        vm = self.vertex_map
        if len(set(vm)) != len(vm):
            raise GraphValidationError("copy vertex map must be injective")
        object.__setattr__(
            self, "edge_set", frozenset(norm(vm[u], vm[v]) for u, v in self.pattern.edges)
        )

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(self.vertex_map)

    def sorted_edges(self) -> tuple[Edge, ...]:
        return tuple(sorted(self.edge_set))

    def __eq__(self, other):
        return isinstance(other, Copy) and self.edge_set == other.edge_set

    def __hash__(self):
        return hash(self.edge_set)

    def __repr__(self):
        return f"Copy({list(self.vertex_map)})"


# -- blocks of oriented paths and cycles --------------------------------------

@dataclass(frozen=True)
class Block:
    """Maximal directed path, listed from origin to terminus."""

    vertices: tuple[int, ...]
    length: int

    @property
    def is_long(self) -> bool:
        return self.length >= 3


def path_or_cycle_order(g: Graph) -> tuple[list[int], bool]:
    """Vertex order along ``g`` (active part) and whether it closes into a cycle."""
    active = g.active_vertices()
    if not active:
        raise DomainError("base graph has no edges")
    degs = [g.degree(v) for v in active]
    if max(degs) > 2 or len(g.connected_components()) != 1:
        raise DomainError("base graph is not a path or a cycle")
    is_cycle = g.m == len(active)
    if not is_cycle and g.m != len(active) - 1:
        raise DomainError("base graph is not a path or a cycle")
    start = min(active) if is_cycle else min(v for v in active if g.degree(v) == 1)
    order = [start]
    prev, cur = start, min(g.neighbors(start))
    while cur != start:
        order.append(cur)
        rest = [w for w in g.neighbors(cur) if w != prev]
        if not rest:
            break
        prev, cur = cur, rest[0]
    return order, is_cycle


def blocks_of(o: Orientation) -> list[Block]:
    """Maximal directed subpaths of a totally oriented path or cycle.

    A directed cycle is reported as a single block whose length is the cycle
    length.
    """
    if not o.is_total():
        raise DomainError("orientation must be total")
    order, is_cycle = path_or_cycle_order(o.base)
    k = len(order)
    walk = order + [order[0]] if is_cycle else order
    forward = [o.has_arc(walk[i], walk[i + 1]) for i in range(len(walk) - 1)]
    steps = len(forward)
    if is_cycle:
        if all(forward) or not any(forward):
            seq = walk if all(forward) else walk[::-1]
            return [Block(tuple(seq[:-1]), k)]
        # rotate so the walk starts at a direction change
        shift = next(i for i in range(steps) if forward[i] != forward[i - 1])
        walk = order[shift:] + order[:shift] + [order[shift]]
        forward = forward[shift:] + forward[:shift]
    blocks = []
    i = 0
    while i < steps:
        j = i
        while j + 1 < steps and forward[j + 1] == forward[i]:
            j += 1
        seg = walk[i : j + 2]
        blocks.append(Block(tuple(seg if forward[i] else seg[::-1]), j - i + 1))
        i = j + 1
    return blocks


def longest_block(o: Orientation) -> int:
    return max(b.length for b in blocks_of(o))
