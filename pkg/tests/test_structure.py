import itertools

import pytest
from hypothesis import given, settings

from orientramsey.canon import are_isomorphic
from orientramsey.corpus import connected_graphs, triangle_chain
from orientramsey.density import m2_cycle, max_density
from orientramsey.errors import DomainError, GrammarViolation
from orientramsey.graph import Graph, complete_graph, cycle_graph, wheel_graph
from orientramsey.structure import (
    TRIANGLE,
    bounded_sequence,
    check_config_bounds,
    config_violations,
    construction_sequence,
    copyset_for,
    count_subgraphs,
    cycle_lengths,
    enumerate_copies,
    h_blocks,
    h_closure_peel,
    h_components,
    is_ab_constructible,
    is_h_block,
    is_h_closed,
    is_indivisible,
    j_family,
    obstruction_kind,
    sequence_from_copies,
    type_steps_cycle,
    type_steps_triangle,
    union_graph,
)

from conftest import brute_cycle_lengths, graphs, nx_subgraph_count

BOWTIE = Graph(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])
DIAMOND = Graph(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])


def two_c5_sharing_edge():
    return Graph(8, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (0, 5), (5, 6), (6, 7), (1, 7)])


@pytest.mark.parametrize(
    "host, pattern, count",
    [(complete_graph(4), TRIANGLE, 4), (cycle_graph(5), cycle_graph(5), 1), (complete_graph(4), cycle_graph(4), 3),
     (complete_graph(5), cycle_graph(5), 12)],
)
def test_copy_counts(host, pattern, count):
    assert len(enumerate_copies(host, pattern).copies) == count


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=7))
def test_copy_counts_match_networkx(g):
    for h in (TRIANGLE, cycle_graph(4), cycle_graph(5)):
        assert len(enumerate_copies(g, h).copies) == nx_subgraph_count(g, h)


def test_h_components():
    assert len(h_components(complete_graph(4), TRIANGLE).components) == 1
    dec = h_components(BOWTIE, TRIANGLE)
    assert len(dec.components) == 2
    assert not dec.leftover_edges
    dec = h_components(Graph(4, [(0, 1), (1, 2), (0, 2), (2, 3)]), TRIANGLE)
    assert dec.leftover_edges == {(2, 3)}


def test_peel_k4_is_closed():
    res = h_closure_peel(complete_graph(4), TRIANGLE)
    assert res.closed_core.m == 6 and not res.peeled and len(res.blocks) == 1
    assert is_h_closed(complete_graph(4), TRIANGLE)
    assert is_indivisible(complete_graph(4), TRIANGLE)
    assert is_h_block(complete_graph(4), TRIANGLE)


def test_peel_diamond_empties():
    res = h_closure_peel(DIAMOND, TRIANGLE)
    assert res.closed_core.m == 0 and len(res.peeled) == 2 and res.blocks == ()


def test_peel_rejects_uncovered_edges():
    with pytest.raises(DomainError):
        h_closure_peel(Graph(4, [(0, 1), (1, 2), (0, 2), (2, 3)]), TRIANGLE)


def test_blocks_reject_open_input():
    with pytest.raises(DomainError):
        h_blocks(DIAMOND, TRIANGLE)
    assert h_blocks(Graph(0), TRIANGLE) == []


def test_two_closed_gadgets_give_two_blocks():
    g = complete_graph(4).disjoint_union(complete_graph(4))
    assert len(h_blocks(g, TRIANGLE)) == 2


def _closure_cases():
    for g in connected_graphs(6):
        for h in (TRIANGLE, cycle_graph(4)):
            cs = copyset_for(g, h)
            if cs.copies:
                yield g, h, cs


def test_peeling_and_block_soundness():
    for g, h, cs in _closure_cases():
        union = union_graph(g.n, cs.copies)
        res = h_closure_peel(union, h, cs)
        # reinserting peeled copies rebuilds the union exactly
        edges = set(res.closed_core.edges)
        for c, removed in reversed(res.peeled):
            assert removed <= c.edge_set and not (removed & edges)
            edges |= c.edge_set
        assert edges == set(union.edges)
        assert is_h_closed(res.closed_core, h) or res.closed_core.m == 0
        block_edges = [set(b.edges) for b in res.blocks]
        assert sum(len(b) for b in block_edges) == res.closed_core.m
        for c in enumerate_copies(res.closed_core, h).copies:
            assert sum(1 for b in block_edges if c.edge_set <= b) == 1
        for b in res.blocks:
            assert is_indivisible(b, h)


def test_indivisible_brute_force():
    # K4 plus a disjoint triangle is divisible; its two parts are not
    g = complete_graph(4).disjoint_union(TRIANGLE)
    assert not is_indivisible(g, TRIANGLE)
    cs = enumerate_copies(g, TRIANGLE)
    edges = g.sorted_edges()
    def split_ok(part):
        return all(not (c.edge_set & part) or c.edge_set <= part for c in cs.copies)
    found = any(split_ok(set(s)) for r in range(1, len(edges)) for s in itertools.combinations(edges, r))
    assert found


def test_construction_sequence_examples():
    assert len(construction_sequence(two_c5_sharing_edge(), cycle_graph(5)).steps) == 2
    assert len(construction_sequence(cycle_graph(5), cycle_graph(5)).steps) == 1
    seq = construction_sequence(complete_graph(4), TRIANGLE)
    assert seq.graph() == complete_graph(4)
    cs = enumerate_copies(complete_graph(4), TRIANGLE)
    for start in cs.copies:
        s = construction_sequence(complete_graph(4), TRIANGLE, start=start)
        assert s.steps[0].copy == start and s.graph() == complete_graph(4)


def test_construction_sequence_bad_start():
    cs = enumerate_copies(complete_graph(5), TRIANGLE)
    with pytest.raises(DomainError):
        construction_sequence(complete_graph(4), TRIANGLE, start=cs.copies[-1])


def test_sequence_validation():
    cs = enumerate_copies(BOWTIE, TRIANGLE)
    with pytest.raises(DomainError):
        sequence_from_copies(TRIANGLE, 5, cs.copies)


def _typed(g, ell):
    return type_steps_cycle(construction_sequence(g, cycle_graph(ell)), ell)


def test_type_a2():
    assert _typed(two_c5_sharing_edge(), 5).types() == ["A2"]


def test_type_b3():
    g = Graph(6, [(1, 2), (2, 3), (3, 4), (1, 4), (2, 4), (4, 5), (1, 5)])
    cs = enumerate_copies(g, cycle_graph(4))
    start = next(c for c in cs.copies if c.edge_set == {(1, 2), (2, 3), (3, 4), (1, 4)})
    seq = construction_sequence(g, cycle_graph(4), start=start)
    typed = type_steps_cycle(sequence_from_copies(cycle_graph(4), 6, seq.copies[:2]), 4)
    st = typed.steps[1]
    assert st.step_type == "B3" and st.y == 4


def test_type_a5_chord():
    # two A2 steps, then one chord closing a 4-edge path
    g = cycle_graph(5)
    g = Graph(11, list(g.edges) + [(0, 5), (5, 6), (6, 7), (1, 7), (2, 8), (8, 9), (9, 10), (3, 10)])
    base = _typed(g, 5)
    assert base.types() == ["A2", "A2"]
    h = g.plus_edges([(0, 8)])
    assert max_density(h).value < m2_cycle(5)
    seq = construction_sequence(h, cycle_graph(5), start=base.steps[0].copy)
    ordered = base.copies + [c for c in seq.copies if c not in base.copies]
    typed = type_steps_cycle(sequence_from_copies(cycle_graph(5), 11, ordered[: len(base.copies) + 1]), 5)
    assert typed.types() == ["A2", "A2", "A5"]
    assert typed.steps[-1].new_vertices == frozenset()


def test_untypable_step_raises():
    # the second 5-cycle meets the first in the two disjoint edges 0-1 and 2-3
    first = Graph(6, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])
    g = first.plus_edges([(1, 5), (2, 5), (0, 3)])
    cs = enumerate_copies(g, cycle_graph(5))
    c1 = next(c for c in cs.copies if c.edge_set == first.edges)
    c2 = next(c for c in cs.copies if c.edge_set == {(0, 1), (1, 5), (2, 5), (2, 3), (0, 3)})
    with pytest.raises(GrammarViolation):
        type_steps_cycle(sequence_from_copies(cycle_graph(5), 6, [c1, c2]), 5)


@pytest.mark.parametrize(
    "types, ell, bad",
    [
        (["A2", "A2"], 5, False),
        (["B3", "A3"], 4, True),
        (["A4", "A4", "A2"], 5, False),
        (["A4", "A4", "A3"], 5, True),
        (["A5", "A5"], 6, True),
        (["A5", "A4"], 5, True),
        (["A5", "A3", "A2"], 5, False),
        (["B3", "A2"], 5, False),
        (["B3", "A3"], 5, True),
        (["A3", "A3"], 4, False),
    ],
)
def test_config_bounds_table(types, ell, bad):
    assert bool(config_violations(types, ell)) == bad


def test_configuration_bound_counterexample_at_length_six():
    """A density-compliant C6-component whose greedy sequence is A5 then A4."""
    g = Graph(9, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5), (1, 6), (3, 6), (3, 7), (7, 8), (0, 8)])
    assert max_density(g).value == max_density(g).value.__class__(11, 9) < m2_cycle(6)
    assert len(h_components(g, cycle_graph(6)).components) == 1
    seq = _typed(g, 6)
    assert seq.types() == ["A5", "A4"]
    assert check_config_bounds(seq, 6) == ["A5 present with ['A4']"]
    alt = bounded_sequence(g, cycle_graph(6), 6)
    assert alt is not None and alt.types() == ["B4"]
    assert alt.graph() == g


def test_triangle_typing():
    chain = triangle_chain(5)
    seq = type_steps_triangle(construction_sequence(chain, TRIANGLE))
    assert set(seq.types()) == {"A"}
    assert type_steps_triangle(construction_sequence(TRIANGLE, TRIANGLE)).types() == []
    k4 = type_steps_triangle(construction_sequence(complete_graph(4), TRIANGLE))
    assert k4.types()[-1] == "C" and set(k4.types()[:-1]) <= {"A", "B"}


def test_every_k4_sequence_ends_with_c():
    cs = enumerate_copies(complete_graph(4), TRIANGLE)
    for perm in itertools.permutations(cs.copies):
        try:
            seq = sequence_from_copies(TRIANGLE, 4, perm[:3])
        except DomainError:
            continue
        typed = type_steps_triangle(seq)
        assert typed.types()[-1] == "C"


def test_ab_examples():
    assert is_ab_constructible(triangle_chain(6)) == (True, None)
    ok, ob = is_ab_constructible(complete_graph(4))
    assert not ok and obstruction_kind(ob) == "K4"
    ok, ob = is_ab_constructible(wheel_graph(4))
    assert not ok and obstruction_kind(ob) == "W5"


def test_j_family():
    fam = j_family()
    assert len(fam) == 2
    for j in fam:
        assert (len(j.active_vertices()), j.m) == (6, 9)
    assert not are_isomorphic(fam[0], fam[1])
    # the triangle chain of length four is one member
    assert any(are_isomorphic(j, triangle_chain(4)) for j in fam)


def _k3_components(limit):
    for g in connected_graphs(limit):
        for comp in h_components(g, TRIANGLE).components:
            yield comp


def test_ab_search_agrees_with_criterion():
    from orientramsey.structure import AB_SEARCH_LIMIT

    for comp in _k3_components(7):
        if comp.m > AB_SEARCH_LIMIT:
            continue
        a, ob_a = is_ab_constructible(comp, method="search")
        b, ob_b = is_ab_constructible(comp, method="criterion")
        assert a == b
        if not a:
            for ob in (ob_a, ob_b):
                assert ob.edges <= comp.edges
                kind = obstruction_kind(ob)
                assert kind in ("K4", "W5", "J")
                core = ob.compact()[0]
                if kind == "J":
                    # a dense certificate, not itself an obstruction
                    assert (core.n, core.m) == (6, 9)
                    assert any(are_isomorphic(core, j) for j in j_family())
                else:
                    assert not is_ab_constructible(core, method="search")[0]


@settings(max_examples=80, deadline=None)
@given(graphs(max_n=8))
def test_cycle_lengths_match_networkx(g):
    assert cycle_lengths(g) == brute_cycle_lengths(g)


def test_count_subgraphs():
    assert count_subgraphs(complete_graph(6), complete_graph(4)) == 15
    assert count_subgraphs(complete_graph(5), wheel_graph(4)) == nx_subgraph_count(complete_graph(5), wheel_graph(4))
