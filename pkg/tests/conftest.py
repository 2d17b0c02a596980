"""Strategies and independent brute-force oracles shared by the test modules."""

from __future__ import annotations

import itertools
from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import strategies as st
from networkx.algorithms.isomorphism import DiGraphMatcher, GraphMatcher

from orientramsey.graph import Graph, Orientation

_ACCEPTANCE = pytest.StashKey[list]()


@st.composite
def graphs(draw, max_n=7, min_n=0, max_edges=None):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=max_edges)) if pairs else []
    return Graph(n, chosen)


@st.composite
def orientations(draw, max_n=6):
    g = draw(graphs(max_n=max_n))
    flips = draw(st.lists(st.booleans(), min_size=g.m, max_size=g.m))
    arcs = [(v, u) if f else (u, v) for (u, v), f in zip(g.sorted_edges(), flips)]
    return Orientation(g, arcs)


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def to_nx_di(o: Orientation) -> nx.DiGraph:
    d = nx.DiGraph()
    d.add_nodes_from(range(o.n))
    d.add_edges_from(o.arcs)
    return d


def nx_contains(host: Orientation, pattern: Orientation) -> bool:
    """Subdigraph (not induced) containment through networkx monomorphisms."""
    m = DiGraphMatcher(to_nx_di(host), to_nx_di(pattern))
    return any(True for _ in m.subgraph_monomorphisms_iter())


def nx_subgraph_count(host: Graph, sub: Graph) -> int:
    m = GraphMatcher(to_nx(host), to_nx(sub))
    return len({frozenset(frozenset((inv[a], inv[b])) for a, b in sub.edges)
                for mono in m.subgraph_monomorphisms_iter()
                for inv in [{v: k for k, v in mono.items()}]})


def all_orientations(g: Graph):
    edges = g.sorted_edges()
    for flips in itertools.product((False, True), repeat=len(edges)):
        yield Orientation(g, [(v, u) if f else (u, v) for (u, v), f in zip(edges, flips)])


def brute_arrows(g: Graph, pattern: Orientation) -> bool:
    return all(nx_contains(o, pattern) for o in all_orientations(g))


def brute_max_density(g: Graph) -> Fraction:
    best = Fraction(0)
    for r in range(1, g.n + 1):
        for vs in itertools.combinations(range(g.n), r):
            s = set(vs)
            e = sum(1 for u, v in g.edges if u in s and v in s)
            best = max(best, Fraction(e, r))
    return best


def brute_max_2_density(g: Graph) -> Fraction:
    best = None
    for r in range(3, g.n + 1):
        for vs in itertools.combinations(range(g.n), r):
            s = set(vs)
            e = sum(1 for u, v in g.edges if u in s and v in s)
            val = Fraction(e - 1, r - 2)
            best = val if best is None else max(best, val)
    return best


def brute_cycle_lengths(g: Graph) -> set[int]:
    return {len(c) for c in nx.simple_cycles(to_nx(g))}


# -- acceptance reporting --------------------------------------------------------------

@pytest.fixture
def criterion(request):
    """Callable recording one PASS/FAIL line for the terminal summary."""
    lines = request.config.stash.setdefault(_ACCEPTANCE, [])

    def record(number, ok, detail):
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
        lines.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
