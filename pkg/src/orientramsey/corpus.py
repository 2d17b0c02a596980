"""Graph corpora: all small connected graphs and random C_l-components.

Random components are grown step by step with the A_j / B_k moves and then
filtered by an exact density test, so every instance returned satisfies
m(G) < m2(C_l).
"""

from __future__ import annotations

import random
from functools import lru_cache

from .canon import canonical_form
from .density import m2_cycle, max_density
from .graph import Graph, bits, norm


@lru_cache(maxsize=None)
def graphs_up_to_iso(n: int) -> tuple[Graph, ...]:
    """All graphs on exactly ``n`` vertices, one per isomorphism class."""
    level = {canonical_form(Graph(n)): Graph(n)}
    out = list(level.values())
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    for _ in pairs:
        nxt = {}
        for g in level.values():
            for e in pairs:
                if e not in g.edges:
                    h = g.plus_edges([e])
                    key = canonical_form(h)
                    if key not in nxt:
                        nxt[key] = Graph(n, key[1])
        level = nxt
        out += [level[k] for k in sorted(level)]
        if not level:
            break
    return tuple(out)


def connected_graphs(max_n: int, min_n: int = 1) -> list[Graph]:
    """Connected graphs on min_n..max_n vertices up to isomorphism."""
    out = []
    for n in range(min_n, max_n + 1):
        out += [g for g in graphs_up_to_iso(n) if g.is_connected()]
    return out


# -- random C_l-components ---------------------------------------------------------------

class _Builder:
    def __init__(self, ell: int, rng: random.Random):
        self.ell = ell
        self.rng = rng
        self.n = ell
        self.edges = {norm(i, (i + 1) % ell) for i in range(ell)}
        self.adj: dict[int, set[int]] = {i: {(i - 1) % ell, (i + 1) % ell} for i in range(ell)}
        self.types: list[str] = []

    def _add_path(self, path):
        for a, b in zip(path, path[1:]):
            self.edges.add(norm(a, b))
            self.adj.setdefault(a, set()).add(b)
            self.adj.setdefault(b, set()).add(a)

    def _random_path(self, vertices: int):
        """Random simple path with the given number of vertices, or None."""
        verts = sorted(self.adj)
        for _ in range(30):
            p = [self.rng.choice(verts)]
            while len(p) < vertices:
                opts = sorted(self.adj[p[-1]] - set(p))
                if not opts:
                    break
                p.append(self.rng.choice(opts))
            if len(p) == vertices:
                return p
        return None

    def step_a(self, j: int) -> bool:
        p = self._random_path(j)
        if p is None:
            return False
        if j == self.ell and norm(p[0], p[-1]) in self.edges:
            return False
        fresh = list(range(self.n, self.n + self.ell - j))
        self.n += len(fresh)
        self._add_path([p[-1]] + fresh + [p[0]])
        self.types.append(f"A{j}")
        return True

    def step_b(self, k: int) -> bool:
        e = self.rng.choice(sorted(self.edges))
        u1, u2 = e if self.rng.random() < 0.5 else (e[1], e[0])
        old = sorted(set(self.adj) - {u1, u2})
        if k == 3:
            old = [w for w in old if w not in self.adj[u2]]
        if not old:
            return False
        uk = self.rng.choice(old)
        # u3..u_l with u_k old, the rest new; path u2 u3 .. u_l u1
        seq = []
        for idx in range(3, self.ell + 1):
            if idx == k:
                seq.append(uk)
            else:
                seq.append(self.n)
                self.n += 1
        self._add_path([u2] + seq + [u1])
        self.types.append(f"B{k}")
        return True

    def graph(self) -> Graph:
        return Graph(self.n, self.edges)


def _compliant(g: Graph, ell: int) -> bool:
    return max_density(g).value < m2_cycle(ell)


def random_cycle_component(ell: int, rng: random.Random, max_vertices: int = 20, allowed=None):
    """One random density-compliant C_l-component and the step types used to grow it.

    ``allowed`` restricts the move types, e.g. ``("A2",)`` or ``("A2", "A3")``.
    """
    if allowed is None:
        allowed = [f"A{j}" for j in range(2, ell + 1)] + [f"B{k}" for k in range(3, ell)]
    allowed = list(allowed)
    specials = [t for t in allowed if t != "A2"]
    while True:
        b = _Builder(ell, rng)
        steps = rng.randint(0, max(0, (max_vertices - ell) // max(1, ell - 2)))
        n_special = rng.choice([0, 1, 1, 2]) if specials else 0
        plan = ["A2"] * steps
        for _ in range(n_special):
            plan.insert(rng.randint(0, len(plan)), rng.choice(specials))
        if "A2" not in allowed:
            plan = [t for t in plan if t != "A2"]
        ok = True
        for t in plan:
            done = b.step_a(int(t[1:])) if t[0] == "A" else b.step_b(int(t[1:]))
            if not done or b.n > max_vertices:
                ok = False
                break
        if not ok:
            continue
        g = b.graph()
        if _compliant(g, ell):
            return g, tuple(b.types)


def cycle_component_corpus(count: int, ells=(4, 5, 6), seed: int = 0, max_vertices: int = 20):
    rng = random.Random(seed)
    out = []
    for i in range(count):
        ell = ells[i % len(ells)]
        g, types = random_cycle_component(ell, rng, max_vertices)
        out.append((ell, g, types))
    return out


def restricted_c5_corpus(count: int, allowed, seed: int = 0, max_vertices: int = 20):
    """C5-components grown only with the given move types (no density filter needed)."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        b = _Builder(5, rng)
        for _ in range(rng.randint(0, 8)):
            t = rng.choice(list(allowed))
            if b.n + 3 > max_vertices:
                break
            b.step_a(int(t[1:]))
        out.append((b.graph(), tuple(b.types)))
    return out


def triangle_chain(length: int) -> Graph:
    """Triangles 0-1-2, then each new apex joined to the last edge."""
    edges = {(0, 1), (0, 2), (1, 2)}
    for k in range(3, length + 2):
        edges |= {norm(k - 2, k), norm(k - 1, k)}
    return Graph(length + 2, edges)
