"""Pivot decomposition: 2-path counts, splits, and the gamma-bounded certificate."""

import pytest
from hypothesis import given, settings, strategies as st

from trifree import (
    Digraph,
    EmptyInputError,
    NotThreeFreeError,
    beta_exact,
    choose_pivot,
    gamma,
    is_acyclic,
    pivot_feedback_size,
    theorem1_feedback,
    two_path_counts,
    random_3free,
)

FOUR_CYCLE = Digraph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])


def transitive_tournament(n):
    return Digraph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


class TestTwoPathCounts:
    def test_transitive_tournament_all_zero(self):
        stats = two_path_counts(transitive_tournament(4))
        assert stats.f == (0, 0, 0, 0)
        assert stats.g == (0, 0, 0, 0)

    def test_four_cycle(self):
        stats = two_path_counts(FOUR_CYCLE)
        assert stats.f == (1, 1, 1, 1)
        assert stats.g == (1, 1, 1, 1)

    def test_single_arc_three_vertices(self):
        stats = two_path_counts(Digraph(3, [(0, 1)]))
        assert stats.f == (0, 0, 0)
        assert stats.g == (0, 0, 0)

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 8), st.integers(0, 10**9))
    def test_total_f_equals_total_g(self, n, seed):
        G = random_3free(n, 0.3, seed)
        stats = two_path_counts(G)
        assert sum(stats.f) == sum(stats.g)

    def test_counts_match_triple_enumeration(self):
        G = random_3free(7, 0.3, seed=11)
        stats = two_path_counts(G)
        f = [0] * G.n
        g = [0] * G.n
        for x in range(G.n):
            for y in range(G.n):
                for z in range(G.n):
                    if len({x, y, z}) == 3 and G.has_arc(x, y) and G.has_arc(y, z):
                        if not G.adjacent(x, z):
                            f[x] += 1
                            g[y] += 1
        assert stats.f == tuple(f)
        assert stats.g == tuple(g)


class TestChoosePivot:
    def test_four_cycle(self):
        split = choose_pivot(FOUR_CYCLE)
        assert split.pivot == 0
        assert split.A == (1,)
        assert split.B == (3,)
        assert split.C == (2,)

    def test_transitive_tournament(self):
        split = choose_pivot(transitive_tournament(3))
        assert split.pivot == 0
        assert split.A == (1, 2)
        assert split.B == ()
        assert split.C == ()

    def test_isolated_vertices(self):
        split = choose_pivot(Digraph(2, []))
        assert split.pivot == 0
        assert split.A == ()
        assert split.B == ()
        assert split.C == (1,)

    def test_empty_graph(self):
        with pytest.raises(EmptyInputError):
            choose_pivot(Digraph(0, []))

    @settings(max_examples=60, deadline=None)
    @given(st.integers(1, 8), st.integers(0, 10**9))
    def test_split_partitions_and_f_le_g(self, n, seed):
        G = random_3free(n, 0.3, seed)
        split = choose_pivot(G)
        parts = [split.A, split.B, split.C, (split.pivot,)]
        combined = sorted(v for part in parts for v in part)
        assert combined == list(range(n))
        stats = two_path_counts(G)
        assert stats.f[split.pivot] <= stats.g[split.pivot]

    @settings(max_examples=60, deadline=None)
    @given(st.integers(1, 8), st.integers(0, 10**9))
    def test_no_arc_from_A_to_B(self, n, seed):
        G = random_3free(n, 0.35, seed)
        split = choose_pivot(G)
        for a in split.A:
            for b in split.B:
                assert not G.has_arc(a, b)


class TestRecursionInvariants:
    @settings(max_examples=40, deadline=None)
    @given(st.integers(2, 9), st.integers(0, 10**9))
    def test_gamma_superadditive_over_split(self, n, seed):
        # one induction step: gamma(G) >= gamma(G_A) + gamma(G_BC) + g(pivot)
        G = random_3free(n, 0.3, seed)
        split = choose_pivot(G)
        g_pivot = two_path_counts(G).g[split.pivot]
        gamma_A = gamma(G.induced_subgraph(split.A).graph).gamma
        gamma_BC = gamma(G.induced_subgraph(split.B + split.C).graph).gamma
        assert gamma(G).gamma >= gamma_A + gamma_BC + g_pivot

    @settings(max_examples=40, deadline=None)
    @given(st.integers(2, 9), st.integers(0, 10**9))
    def test_deleted_layer_size_is_f_pivot(self, n, seed):
        G = random_3free(n, 0.3, seed)
        split = choose_pivot(G)
        x3 = [
            (a, c) for a in split.A for c in split.C if G.has_arc(a, c)
        ]
        assert len(x3) == two_path_counts(G).f[split.pivot]


class TestCertificate:
    def test_transitive_tournament_empty(self):
        cert = theorem1_feedback(transitive_tournament(5))
        assert cert.arcs == ()
        assert cert.bound_value == 0

    def test_four_cycle(self):
        cert = theorem1_feedback(FOUR_CYCLE)
        assert cert.arcs == ((1, 2),)
        assert cert.bound_kind == "gamma"
        assert cert.bound_value == 2

    def test_empty_graph(self):
        cert = theorem1_feedback(Digraph(0, []))
        assert cert.arcs == ()

    def test_triangle_rejected_with_witness(self):
        G = Digraph(3, [(0, 1), (1, 2), (2, 0)])
        with pytest.raises(NotThreeFreeError) as exc:
            theorem1_feedback(G)
        cycle = exc.value.cycle
        assert len(cycle) <= 3
        for i in range(len(cycle)):
            assert G.has_arc(cycle[i], cycle[(i + 1) % len(cycle)])

    def test_digon_rejected(self):
        with pytest.raises(NotThreeFreeError):
            theorem1_feedback(Digraph(2, [(0, 1), (1, 0)]))

    def test_exhaustive_small(self):
        from trifree import enumerate_3free

        for n in range(5):
            for G in enumerate_3free(n):
                cert = theorem1_feedback(G)
                assert cert.size <= gamma(G).gamma
                assert is_acyclic(G.without_arcs(cert.arcs))

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 12), st.integers(0, 10**9))
    def test_random_instances(self, n, seed):
        G = random_3free(n, 0.3, seed)
        cert = theorem1_feedback(G)
        g = gamma(G).gamma
        assert cert.size <= g
        assert is_acyclic(G.without_arcs(cert.arcs))
        assert beta_exact(G).beta <= cert.size

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 10), st.integers(0, 10**9))
    def test_size_fast_path_matches(self, n, seed):
        G = random_3free(n, 0.3, seed)
        assert pivot_feedback_size(G.n, G.out_masks, G.in_masks) == theorem1_feedback(G).size
