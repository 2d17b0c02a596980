import pytest
from hypothesis import given, settings

from orientramsey.corpus import connected_graphs, triangle_chain
from orientramsey.errors import DomainError
from orientramsey.graph import Graph, complete_graph, cycle_graph, wheel_graph
from orientramsey.oracle import (
    ArrowCertificate,
    Indeterminate,
    arrows,
    arrows_component_wise,
    decide_tt3_fast,
    find_k4,
)
from orientramsey.patterns import antidirected_cycle, cycle_from_blockstring, directed_cycle, transitive_tournament, tt3

from conftest import brute_arrows, graphs, nx_contains

SMALL_PATTERNS = [tt3(), directed_cycle(3), directed_cycle(4), cycle_from_blockstring("++--"), antidirected_cycle(4)]


@settings(max_examples=80, deadline=None)
@given(graphs(max_n=6, max_edges=9))
def test_oracle_matches_brute_force(g):
    for p in SMALL_PATTERNS:
        res = arrows(g, p)
        assert res.arrows == brute_arrows(g, p)
        if not res.arrows:
            assert res.witness.is_total() and not nx_contains(res.witness, p)


def test_known_cases():
    assert arrows(complete_graph(4), tt3()).arrows
    assert not arrows(complete_graph(3), tt3()).arrows
    assert not arrows(wheel_graph(4), tt3()).arrows
    assert arrows(complete_graph(8), transitive_tournament(4)).arrows
    assert not arrows(complete_graph(7), transitive_tournament(4)).arrows


def test_wheel_brute_force():
    assert brute_arrows(wheel_graph(4), tt3()) is False


def test_indeterminate_has_no_truth_value():
    res = arrows(complete_graph(6), tt3(), budget=1)
    assert isinstance(res, Indeterminate)
    with pytest.raises(TypeError):
        bool(res)
    assert res.arrows is None


def test_bad_budget_and_partial_pattern():
    with pytest.raises(DomainError):
        arrows(complete_graph(3), tt3(), budget=0)
    from orientramsey.graph import Orientation

    with pytest.raises(DomainError):
        arrows(complete_graph(3), Orientation(complete_graph(3), [(0, 1)]))


def test_certificate_truthiness():
    res = arrows(complete_graph(4), tt3())
    assert isinstance(res, ArrowCertificate) and res and res.exhausted


def test_graph_without_copies():
    res = arrows(cycle_graph(5), tt3())
    assert not res.arrows and res.witness.is_total()


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=7, max_edges=12))
def test_component_wise_agrees(g):
    for p in (tt3(), cycle_from_blockstring("++--")):
        a = arrows(g, p)
        b = arrows_component_wise(g, p)
        assert a.arrows == b.arrows
        if not b.arrows:
            assert not nx_contains(b.witness, p)


def test_tt3_fast_agrees_on_small_connected_graphs():
    for g in connected_graphs(6, min_n=3):
        fast = decide_tt3_fast(g)
        assert fast.arrows == arrows(g, tt3()).arrows


def test_tt3_fast_k4_shortcut():
    g = triangle_chain(5).disjoint_union(complete_graph(4))
    res = decide_tt3_fast(g)
    assert res.arrows and res.note.startswith("K4")
    assert find_k4(triangle_chain(5)) is None


def test_tt3_fast_witness():
    res = decide_tt3_fast(wheel_graph(4).disjoint_union(triangle_chain(3)))
    assert not res.arrows and not nx_contains(res.witness, tt3())
