"""Exact minimum feedback arc set size via subset dynamic programming.

The minimum number of arcs to delete for acyclicity equals the minimum,
over all linear orders of the vertices, of the number of arcs pointing
backward in the order.  best(S) is that minimum restricted to orders that
place the vertices of S first:

    best(S) = min over v in S of best(S - v) + |arcs from v into S - v|

where v is the vertex placed last among S.  The table has 2^n entries, so
instances are capped (default 24 vertices) and the cap is reported rather
than silently attempted.
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass
from itertools import permutations

from .digraph import Arc, Digraph
from .errors import SizeLimitError

DP_VERTEX_LIMIT = 24
ORACLE_VERTEX_LIMIT = 8


@dataclass(frozen=True)
class BetaResult:
    """Exact deletion number plus a witness achieving it.

    elimination_order is a vertex sequence; the witness is exactly the set
    of arcs pointing backward in that sequence, and len(witness) == beta.
    """

    beta: int
    witness: tuple[Arc, ...]
    elimination_order: tuple[int, ...]


def _dp_table(n: int, out_masks) -> array:
    dp = array("I", bytes(4 << n))
    for S in range(1, 1 << n):
        best = 0xFFFFFFFF
        rem = S
        while rem:
            low = rem & -rem
            rem ^= low
            v = low.bit_length() - 1
            rest = S ^ low
            cost = dp[rest] + (out_masks[v] & rest).bit_count()
            if cost < best:
                best = cost
        dp[S] = best
    return dp


def beta_exact(G: Digraph, limit: int = DP_VERTEX_LIMIT) -> BetaResult:
    """Exact beta with a deterministic optimal order and witness.

    Works on arbitrary digraphs, short cycles included.  Raises
    SizeLimitError above `limit` vertices since the table is 2^n entries.
    Ties in the reconstruction go to the smallest vertex label, so the
    witness is reproducible run to run.
    """
    if G.n > limit:
        raise SizeLimitError(
            f"beta_exact is capped at {limit} vertices (2^n table); got n={G.n}"
        )
    dp = _dp_table(G.n, G.out_masks)
    order = [0] * G.n
    S = (1 << G.n) - 1
    while S:
        chosen = -1
        for v in range(G.n):
            low = 1 << v
            if not S & low:
                continue
            rest = S ^ low
            if dp[rest] + (G.out_masks[v] & rest).bit_count() == dp[S]:
                chosen = v
                break
        order[S.bit_count() - 1] = chosen
        S ^= 1 << chosen
    pos = {v: i for i, v in enumerate(order)}
    witness = tuple((u, v) for (u, v) in G.arcs if pos[u] > pos[v])
    beta = dp[(1 << G.n) - 1] if G.n else 0
    assert len(witness) == beta
    return BetaResult(beta=beta, witness=witness, elimination_order=tuple(order))


def beta_value(n: int, out_masks) -> int:
    """Just the number, straight from masks; shared by the scan harness."""
    if n == 0:
        return 0
    return _dp_table(n, out_masks)[(1 << n) - 1]


def beta_oracle_permutations(G: Digraph, limit: int = ORACLE_VERTEX_LIMIT) -> int:
    """Independent check: minimize backward arcs over every vertex order.

    Deliberately has nothing in common with the subset table, so agreement
    on random instances is meaningful evidence.  Factorial time, capped.
    """
    if G.n > limit:
        raise SizeLimitError(
            f"beta_oracle_permutations is capped at {limit} vertices (n! orders); got n={G.n}"
        )
    if G.n == 0:
        return 0
    arcs = G.arcs
    best = len(arcs)
    pos = [0] * G.n
    for perm in permutations(range(G.n)):
        for idx, v in enumerate(perm):
            pos[v] = idx
        cost = 0
        for u, v in arcs:
            if pos[u] > pos[v]:
                cost += 1
                if cost >= best:
                    break
        if cost < best:
            best = cost
    return best
