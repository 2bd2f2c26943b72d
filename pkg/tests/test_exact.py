"""Exact minimum deletion number: subset DP against the permutation oracle."""

import pytest
from hypothesis import given, settings, strategies as st

from trifree import (
    Digraph,
    SizeLimitError,
    beta_exact,
    beta_oracle_permutations,
    beta_value,
    is_acyclic,
)


def small_digraphs(max_n=6):
    def build(n, picks):
        pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
        return Digraph(n, [p for p, keep in zip(pairs, picks) if keep])

    return st.integers(min_value=0, max_value=max_n).flatmap(
        lambda n: st.builds(
            build,
            st.just(n),
            st.lists(st.booleans(), min_size=n * (n - 1), max_size=n * (n - 1)),
        )
    )


class TestKnownValues:
    def test_empty(self):
        assert beta_exact(Digraph(0, [])).beta == 0

    def test_single_arc(self):
        assert beta_exact(Digraph(2, [(0, 1)])).beta == 0

    def test_digon(self):
        assert beta_exact(Digraph(2, [(0, 1), (1, 0)])).beta == 1

    def test_triangle(self):
        assert beta_exact(Digraph(3, [(0, 1), (1, 2), (2, 0)])).beta == 1

    def test_four_cycle(self):
        assert beta_exact(Digraph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])).beta == 1

    def test_transitive_tournament(self):
        n = 5
        G = Digraph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])
        assert beta_exact(G).beta == 0

    def test_two_disjoint_cycles(self):
        arcs = [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]
        G = Digraph(6, arcs)
        assert beta_exact(G).beta == 2
        assert beta_oracle_permutations(G) == 2

    def test_complete_digraph(self):
        # every pair is a digon; one arc per pair must go
        G = Digraph(4, [(u, v) for u in range(4) for v in range(4) if u != v])
        assert beta_exact(G).beta == 6


class TestWitness:
    def test_witness_is_valid_and_tight(self):
        G = Digraph(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)])
        result = beta_exact(G)
        assert len(result.witness) == result.beta
        assert is_acyclic(G.without_arcs(result.witness))

    def test_order_is_permutation(self):
        G = Digraph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
        result = beta_exact(G)
        assert sorted(result.elimination_order) == [0, 1, 2, 3]

    def test_witness_arcs_are_backward(self):
        G = Digraph(5, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 0)])
        result = beta_exact(G)
        pos = {v: i for i, v in enumerate(result.elimination_order)}
        for u, v in G.arcs:
            backward = pos[u] > pos[v]
            assert backward == ((u, v) in result.witness)

    def test_deterministic(self):
        G = Digraph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
        assert beta_exact(G) == beta_exact(G)


class TestLimits:
    def test_over_limit_rejected(self):
        with pytest.raises(SizeLimitError) as exc:
            beta_exact(Digraph(25, []))
        assert "24" in str(exc.value)

    def test_oracle_limit(self):
        with pytest.raises(SizeLimitError):
            beta_oracle_permutations(Digraph(9, []))


class TestOracleAgreement:
    @settings(max_examples=150, deadline=None)
    @given(small_digraphs())
    def test_dp_matches_permutation_oracle(self, G):
        assert beta_exact(G).beta == beta_oracle_permutations(G)

    @given(small_digraphs())
    def test_mask_path_matches(self, G):
        assert beta_value(G.n, G.out_masks) == beta_exact(G).beta

    def test_monotone_under_arc_removal(self):
        G = Digraph(4, [(0, 1), (1, 2), (2, 3), (3, 0), (1, 3)])
        b = beta_exact(G).beta
        for arc in G.arcs:
            assert beta_exact(G.without_arcs([arc])).beta <= b
