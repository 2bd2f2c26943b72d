"""Core digraph container, cycle detection, gamma, and the text format."""

import pytest
from hypothesis import given, strategies as st

from trifree import (
    Digraph,
    GraphInputError,
    MalformedCertificateError,
    find_short_cycle,
    format_edge_list,
    gamma,
    gamma_count,
    is_acyclic,
    is_k_free,
    parse_edge_list,
    verify_feedback_set,
)


def arc_sets(max_n=6):
    """Strategy: (n, arcs) with no self-loops and no duplicate arcs."""

    def build(n, picks):
        pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
        arcs = [p for p, keep in zip(pairs, picks) if keep]
        return n, arcs

    return st.integers(min_value=0, max_value=max_n).flatmap(
        lambda n: st.builds(
            build,
            st.just(n),
            st.lists(st.booleans(), min_size=n * (n - 1), max_size=n * (n - 1)),
        )
    )


class TestConstruction:
    def test_basic(self):
        G = Digraph(3, [(0, 1), (1, 2)])
        assert G.vertex_count == 3
        assert G.arc_count == 2
        assert G.has_arc(0, 1)
        assert not G.has_arc(1, 0)

    def test_arcs_sorted(self):
        G = Digraph(3, [(2, 0), (0, 1)])
        assert G.arcs == ((0, 1), (2, 0))

    def test_empty(self):
        G = Digraph(0, [])
        assert G.vertex_count == 0
        assert G.arcs == ()

    def test_self_loop_rejected(self):
        with pytest.raises(GraphInputError):
            Digraph(2, [(1, 1)])

    def test_out_of_range_rejected(self):
        with pytest.raises(GraphInputError):
            Digraph(2, [(0, 2)])
        with pytest.raises(GraphInputError):
            Digraph(2, [(-1, 0)])

    def test_duplicate_rejected(self):
        with pytest.raises(GraphInputError):
            Digraph(3, [(0, 1), (0, 1)])

    def test_digon_allowed(self):
        # the container is a general digraph; freeness is checked by algorithms
        G = Digraph(2, [(0, 1), (1, 0)])
        assert G.arc_count == 2

    def test_from_masks_round_trip(self):
        G = Digraph(4, [(0, 1), (1, 3), (2, 0)])
        assert Digraph.from_masks(4, G.out_masks) == G

    def test_equality_and_hash(self):
        G = Digraph(3, [(0, 1)])
        H = Digraph(3, [(0, 1)])
        assert G == H
        assert hash(G) == hash(H)
        assert G != Digraph(3, [(1, 0)])
        assert G != Digraph(4, [(0, 1)])

    def test_neighbors(self):
        G = Digraph(4, [(0, 1), (0, 2), (3, 0)])
        assert G.out_neighbors(0) == (1, 2)
        assert G.in_neighbors(0) == (3,)
        assert G.adjacent(0, 3)
        assert not G.adjacent(1, 2)


class TestInducedSubgraph:
    def test_relabelling(self):
        G = Digraph(5, [(0, 2), (2, 4), (4, 0), (1, 3)])
        sub = G.induced_subgraph([0, 2, 4])
        assert sub.graph.n == 3
        assert set(sub.graph.arcs) == {(0, 1), (1, 2), (2, 0)}
        assert sub.old_labels == (0, 2, 4)
        assert sub.lift_arc((0, 1)) == (0, 2)

    def test_out_of_range(self):
        with pytest.raises(GraphInputError):
            Digraph(3, []).induced_subgraph([0, 5])


class TestAcyclicity:
    def test_path_acyclic(self):
        assert is_acyclic(Digraph(4, [(0, 1), (1, 2), (2, 3)]))

    def test_cycle_not_acyclic(self):
        assert not is_acyclic(Digraph(3, [(0, 1), (1, 2), (2, 0)]))

    def test_empty_acyclic(self):
        assert is_acyclic(Digraph(0, []))

    def test_digon_not_acyclic(self):
        assert not is_acyclic(Digraph(2, [(0, 1), (1, 0)]))


class TestShortCycle:
    def test_triangle_found(self):
        G = Digraph(3, [(0, 1), (1, 2), (2, 0)])
        cycle = find_short_cycle(G, 3)
        assert cycle is not None
        assert len(cycle) == 3
        # the witness must consist of real consecutive arcs
        for i in range(3):
            assert G.has_arc(cycle[i], cycle[(i + 1) % 3])

    def test_four_cycle_needs_k4(self):
        G = Digraph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
        assert find_short_cycle(G, 3) is None
        cycle = find_short_cycle(G, 4)
        assert cycle is not None and len(cycle) == 4

    def test_digon_found_at_k2(self):
        G = Digraph(2, [(0, 1), (1, 0)])
        assert find_short_cycle(G, 2) == [0, 1]
        assert find_short_cycle(G, 1) is None

    def test_is_k_free(self):
        assert is_k_free(Digraph(4, [(0, 1), (1, 2), (2, 3), (3, 0)]), 3)
        assert not is_k_free(Digraph(3, [(0, 1), (1, 2), (2, 0)]), 3)


class TestGamma:
    def test_four_cycle(self):
        G = Digraph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
        report = gamma(G)
        assert report.gamma == 2
        assert set(report.pairs) == {(0, 2), (1, 3)}

    def test_tournament_zero(self):
        G = Digraph(3, [(0, 1), (0, 2), (1, 2)])
        assert gamma(G).gamma == 0

    def test_empty_graph_all_pairs(self):
        assert gamma(Digraph(5, [])).gamma == 10

    def test_digon_counts_adjacent(self):
        assert gamma(Digraph(2, [(0, 1), (1, 0)])).gamma == 0

    @given(arc_sets())
    def test_mask_count_matches_pair_enumeration(self, case):
        n, arcs = case
        G = Digraph(n, arcs)
        assert gamma_count(n, G.out_masks, G.in_masks) == len(gamma(G).pairs)


class TestVerifyFeedbackSet:
    def test_valid_certificate(self):
        G = Digraph(3, [(0, 1), (1, 2), (2, 0)])
        assert verify_feedback_set(G, [(2, 0)])

    def test_insufficient_certificate(self):
        G = Digraph(4, [(0, 1), (1, 2), (2, 3), (3, 0), (1, 3)])
        assert not verify_feedback_set(G, [(1, 3)])

    def test_missing_arc_rejected(self):
        G = Digraph(3, [(0, 1)])
        with pytest.raises(MalformedCertificateError):
            verify_feedback_set(G, [(1, 0)])

    def test_empty_certificate_on_acyclic(self):
        assert verify_feedback_set(Digraph(2, [(0, 1)]), [])


class TestTextFormat:
    def test_round_trip(self):
        G = Digraph(4, [(0, 1), (2, 3), (3, 0)])
        assert parse_edge_list(format_edge_list(G)) == G

    def test_comments_and_blanks_ignored(self):
        text = "# a comment\n\nn 3\n0 1\n\n# another\n1 2\n"
        assert parse_edge_list(text) == Digraph(3, [(0, 1), (1, 2)])

    def test_no_header(self):
        with pytest.raises(GraphInputError):
            parse_edge_list("0 1\n")

    def test_bad_arc_line(self):
        with pytest.raises(GraphInputError) as exc:
            parse_edge_list("n 3\n0 1 2\n")
        assert "line 2" in str(exc.value)

    def test_non_integer(self):
        with pytest.raises(GraphInputError):
            parse_edge_list("n 3\n0 x\n")

    def test_duplicate_arc_line(self):
        with pytest.raises(GraphInputError):
            parse_edge_list("n 3\n0 1\n0 1\n")

    def test_out_of_range_arc(self):
        with pytest.raises(GraphInputError):
            parse_edge_list("n 2\n0 2\n")

    def test_empty_graph(self):
        assert parse_edge_list("n 0\n") == Digraph(0, [])

    @given(arc_sets())
    def test_round_trip_random(self, case):
        n, arcs = case
        G = Digraph(n, arcs)
        assert parse_edge_list(format_edge_list(G)) == G
