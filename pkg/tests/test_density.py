from fractions import Fraction

import pytest
from hypothesis import given, settings

from orientramsey.density import (
    degeneracy,
    is_strictly_2_balanced,
    m2_complete,
    m2_cycle,
    max_2_density,
    max_density,
)
from orientramsey.errors import DensityEnvelopeError, DomainError
from orientramsey.graph import Graph, complete_bipartite, complete_graph, cycle_graph, path_graph, wheel_graph

from conftest import brute_max_2_density, brute_max_density, graphs


@settings(max_examples=200, deadline=None)
@given(graphs(max_n=8, min_n=1))
def test_max_density_brute_force(g):
    rep = max_density(g)
    assert rep.value == brute_max_density(g)
    w = set(rep.witness)
    e = sum(1 for u, v in g.edges if u in w and v in w)
    assert Fraction(e, len(w)) == rep.value


@settings(max_examples=200, deadline=None)
@given(graphs(max_n=8, min_n=3))
def test_max_2_density_brute_force(g):
    assert max_2_density(g).value == brute_max_2_density(g)


def test_known_values():
    assert max_density(complete_graph(4)).value == Fraction(3, 2)
    assert str(max_2_density(cycle_graph(4))) == "3/2"
    assert max_2_density(wheel_graph(4)).value == Fraction(7, 3)
    assert max_density(path_graph(5)).value == Fraction(4, 5)


def test_large_graph_pruned_into_envelope():
    # a long path hanging off K4 is pruned away before the subset scan
    g = Graph(40, list(complete_graph(4).edges) + [(i, i + 1) for i in range(3, 39)])
    rep = max_density(g)
    assert rep.value == Fraction(3, 2) and rep.witness == (0, 1, 2, 3)


def test_large_piece_outside_envelope():
    g = cycle_graph(30).disjoint_union(complete_graph(4))
    with pytest.raises(DensityEnvelopeError):
        max_density(g)


@pytest.mark.parametrize("t", range(3, 9))
def test_closed_forms(t):
    assert max_2_density(complete_graph(t)).value == m2_complete(t)
    assert max_2_density(cycle_graph(t)).value == m2_cycle(t)
    assert is_strictly_2_balanced(complete_graph(t))
    assert is_strictly_2_balanced(cycle_graph(t))


def test_not_strictly_balanced():
    # a triangle with a pendant edge: the triangle alone is denser
    g = Graph(4, [(0, 1), (1, 2), (0, 2), (2, 3)])
    assert not is_strictly_2_balanced(g)
    assert not is_strictly_2_balanced(complete_graph(4).disjoint_union(complete_graph(3)))


def test_empty_and_tiny():
    with pytest.raises(DomainError):
        max_density(Graph(0))
    assert max_density(Graph(3)).value == 0
    with pytest.raises(DomainError):
        max_2_density(Graph(2, [(0, 1)]))


@given(graphs(max_n=9))
def test_degeneracy_is_max_min_degree(g):
    import networkx as nx

    from conftest import to_nx

    d, order = degeneracy(g)
    assert sorted(order) == list(range(g.n))
    core = nx.core_number(to_nx(g)) if g.n else {}
    assert d == max(core.values(), default=0)


def test_degeneracy_examples():
    assert degeneracy(complete_graph(5))[0] == 4
    assert degeneracy(complete_bipartite(3, 3))[0] == 3
    assert degeneracy(cycle_graph(7))[0] == 2


@settings(max_examples=150, deadline=None)
@given(graphs(max_n=8, min_n=3))
def test_m2_dominates_m(g):
    active = len(g.active_vertices())
    if g.m >= g.n and active == g.n:
        assert max_2_density(g).value >= max_density(g).value


@settings(max_examples=150, deadline=None)
@given(graphs(max_n=8, min_n=1))
def test_min_degree_bounded_by_twice_density(g):
    m = max_density(g).value
    for comp in g.connected_components():
        assert g.induced(comp).min_degree() <= 2 * m
    d, _ = degeneracy(g)
    assert d <= 2 * m


@settings(max_examples=150, deadline=None)
@given(graphs(max_n=7, min_n=3))
def test_strictly_balanced_triangle_free_has_m2_below_min_degree(g):
    from orientramsey.structure import triangles

    if g.min_degree() < 2 or triangles(g) or not is_strictly_2_balanced(g):
        return
    assert max_2_density(g).value < g.min_degree()


def test_triangle_is_the_tight_case():
    assert max_2_density(complete_graph(3)).value == complete_graph(3).min_degree() == 2
