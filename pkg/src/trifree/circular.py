"""Circular interval digraphs: index sets, generator, cuts, completion, recognition.

Fix t >= 1 and s = 3t + 1 positions on a circle.  The span D_s(ij) of an
ordered pair is the set of positions walked over clockwise from i up to but
not including j; E_s holds the pairs with span at most t, and F_s the
unordered pairs reachable within t in neither direction.  C_s(k) collects
the E_s pairs whose span covers position k, so deleting one such layer cuts
every arc family that wraps the circle.

The block generator places s consecutive blocks around the circle, orders
each block internally, and adds complete arcs from each block to the next t
blocks clockwise.  Completion and recognition connect arbitrary 3-free
circular interval digraphs to that normal form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .digraph import Arc, Digraph, FeedbackCertificate, find_short_cycle, gamma_count, is_acyclic, verify_feedback_set
from .errors import (
    GraphInputError,
    NotThreeFreeError,
    ShapeError,
    StructureError,
    StructureViolationError,
)


@dataclass(frozen=True)
class BlockStructure:
    """Block sizes n_0..n_{3t} around the circle, reach t."""

    t: int
    sizes: tuple[int, ...]

    def __post_init__(self):
        if self.t < 1:
            raise ShapeError(f"reach t must be at least 1, got {self.t}")
        object.__setattr__(self, "sizes", tuple(int(x) for x in self.sizes))
        if len(self.sizes) != 3 * self.t + 1:
            raise ShapeError(
                f"expected {3 * self.t + 1} block sizes for t={self.t}, got {len(self.sizes)}"
            )
        if any(x < 0 for x in self.sizes):
            raise ShapeError("block sizes must be nonnegative")

    @property
    def s(self) -> int:
        return 3 * self.t + 1

    @property
    def total(self) -> int:
        return sum(self.sizes)


@dataclass(frozen=True)
class CircularOrder:
    """A circular arrangement: order[p] is the vertex at position p."""

    order: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.order)


@dataclass(frozen=True)
class CutIndex:
    """A chosen circle position k and the weight of the layer C_s(k)."""

    k: int
    value: Fraction


@dataclass(frozen=True)
class TransitiveTournament:
    """Recognition outcome: every pair adjacent, no cycle at all."""


@dataclass(frozen=True)
class IndexSets:
    """Span table and the derived index families for one value of t.

    Treat all fields as read-only; instances are cached per t.
    """

    t: int
    s: int
    D: dict
    E: frozenset
    F: frozenset
    C: tuple


@lru_cache(maxsize=None)
def index_sets(t: int) -> IndexSets:
    """Spans D_s, short pairs E_s, far pairs F_s, covering layers C_s(k)."""
    if t < 1:
        raise ShapeError(f"reach t must be at least 1, got {t}")
    s = 3 * t + 1
    D = {}
    for i in range(s):
        for j in range(s):
            if i == j:
                continue
            q = (j - i) % s
            D[(i, j)] = tuple((i + p) % s for p in range(q))
    E = frozenset(ij for ij, span in D.items() if len(span) <= t)
    F = frozenset(
        frozenset((i, j))
        for i in range(s)
        for j in range(i + 1, s)
        if (i, j) not in E and (j, i) not in E
    )
    C = tuple(frozenset(ij for ij in E if k in D[ij]) for k in range(s))
    return IndexSets(t=t, s=s, D=D, E=E, F=F, C=C)


def _block_ranges(blocks: BlockStructure) -> list[range]:
    offsets = [0]
    for size in blocks.sizes:
        offsets.append(offsets[-1] + size)
    return [range(offsets[i], offsets[i + 1]) for i in range(blocks.s)]


def generate(blocks: BlockStructure) -> tuple[Digraph, CircularOrder]:
    """Build the block digraph; vertices come out already in circular order.

    Within a block, arcs run forward by index; between blocks, every vertex
    sends arcs to all vertices of the next t blocks clockwise.  The result
    is 3-free and circular-interval with respect to the identity order.
    """
    ranges = _block_ranges(blocks)
    arcs: list[Arc] = []
    for block in ranges:
        arcs.extend((u, v) for u in block for v in block if u < v)
    for h in range(blocks.s):
        for step in range(1, blocks.t + 1):
            target = ranges[(h + step) % blocks.s]
            arcs.extend((u, v) for u in ranges[h] for v in target)
    G = Digraph(blocks.total, arcs)
    order = CircularOrder(tuple(range(blocks.total)))
    assert find_short_cycle(G, 3) is None
    assert verify_circular_interval(G, order)
    return G, order


def _positions(G: Digraph, order: CircularOrder) -> list[int]:
    seq = order.order if isinstance(order, CircularOrder) else tuple(order)
    if sorted(seq) != list(range(G.n)):
        raise GraphInputError("order is not a permutation of the vertices")
    pos = [0] * G.n
    for p, v in enumerate(seq):
        pos[v] = p
    return pos


def verify_circular_interval(G: Digraph, order: CircularOrder) -> bool:
    """Check that every out- and in-neighbourhood is a contiguous arc.

    Out-neighbourhoods must start immediately clockwise of the vertex and
    in-neighbourhoods must end immediately counterclockwise of it.
    """
    pos = _positions(G, order)
    n = G.n
    for v in range(n):
        p = pos[v]
        out_rels = sorted((pos[w] - p) % n for w in G.out_neighbors(v))
        if out_rels != list(range(1, len(out_rels) + 1)):
            return False
        in_rels = sorted((p - pos[w]) % n for w in G.in_neighbors(v))
        if in_rels != list(range(1, len(in_rels) + 1)):
            return False
    return True


def best_cut(weights: Sequence) -> CutIndex:
    """Minimum-weight covering layer over all circle positions.

    weights must have length 3t + 1 for some t >= 1; entries are
    nonnegative rationals.  Ties go to the smallest position.  The returned
    value always satisfies the covering bound: twice the minimum layer
    weight is at most the total far-pair weight.
    """
    w = [Fraction(x) for x in weights]
    if any(x < 0 for x in w):
        raise ValueError("weights must be nonnegative")
    if len(w) < 4 or (len(w) - 1) % 3 != 0:
        raise ShapeError(
            f"weight vector length must be 3t+1 for some t >= 1, got {len(w)}"
        )
    t = (len(w) - 1) // 3
    idx = index_sets(t)
    best_k = 0
    best_val = None
    for k in range(idx.s):
        val = sum((w[i] * w[j] for (i, j) in idx.C[k]), Fraction(0))
        if best_val is None or val < best_val:
            best_k, best_val = k, val
    far_pairs = [tuple(sorted(pair)) for pair in idx.F]
    far_total = sum((w[i] * w[j] for (i, j) in far_pairs), Fraction(0))
    assert 2 * best_val <= far_total
    return CutIndex(k=best_k, value=best_val)


def _cluster_cut_arcs(clusters: Sequence[Sequence[int]], layer: Iterable) -> list[Arc]:
    arcs: list[Arc] = []
    for (i, j) in sorted(layer):
        arcs.extend((u, v) for u in clusters[i] for v in clusters[j])
    return arcs


def cut_arcs(G: Digraph, blocks: BlockStructure, k) -> tuple[Arc, ...]:
    """All arcs of the covering layer C_s(k), as concrete arcs of G.

    G must be exactly generate(blocks); every directed cycle of G passes
    through the returned set, so it is a feedback arc set.
    """
    expected, _ = generate(blocks)
    if G != expected:
        raise StructureError("graph does not match generate(blocks)")
    k_val = k.k if isinstance(k, CutIndex) else int(k)
    if not (0 <= k_val < blocks.s):
        raise ShapeError(f"cut position must lie in 0..{blocks.s - 1}, got {k_val}")
    idx = index_sets(blocks.t)
    arcs = _cluster_cut_arcs(_block_ranges(blocks), idx.C[k_val])
    return tuple(sorted(arcs))


def _addable(pos_of, out, inn, outdeg, indeg, n, u, v) -> bool:
    gap = (pos_of[v] - pos_of[u]) % n
    if gap != outdeg[u] + 1 or gap != indeg[v] + 1:
        return False
    # a new arc u->v closes a triangle exactly when some w has v->w->u
    return not (out[v] & inn[u])


def maximal_completion(G: Digraph, order: CircularOrder) -> Digraph:
    """Add arcs until no arc can be added keeping 3-freeness and the intervals.

    Candidates are scanned in a fixed order, lexicographic over (clockwise
    gap from tail to head, tail position), restarting after every addition,
    so the fixed point is deterministic.  Idempotent by construction.
    """
    cycle = find_short_cycle(G, 3)
    if cycle is not None:
        raise NotThreeFreeError(
            f"graph has a directed cycle of length {len(cycle)}: {cycle}", cycle=cycle
        )
    if not verify_circular_interval(G, order):
        raise StructureError("graph is not circular-interval with respect to the order")
    pos = _positions(G, order)
    n = G.n
    out = list(G.out_masks)
    inn = list(G.in_masks)
    outdeg = [m.bit_count() for m in out]
    indeg = [m.bit_count() for m in inn]
    while True:
        added = False
        candidates = []
        for u in range(n):
            adj = out[u] | inn[u]
            for v in range(n):
                if v != u and not (adj >> v) & 1:
                    candidates.append((((pos[v] - pos[u]) % n), pos[u], u, v))
        candidates.sort()
        for _, _, u, v in candidates:
            if _addable(pos, out, inn, outdeg, indeg, n, u, v):
                out[u] |= 1 << v
                inn[v] |= 1 << u
                outdeg[u] += 1
                indeg[v] += 1
                added = True
                break
        if not added:
            break
    return Digraph.from_masks(n, out)


def _is_fixed_point(G: Digraph, order: CircularOrder) -> bool:
    pos = _positions(G, order)
    n = G.n
    out = list(G.out_masks)
    inn = list(G.in_masks)
    outdeg = [m.bit_count() for m in out]
    indeg = [m.bit_count() for m in inn]
    for u in range(n):
        adj = out[u] | inn[u]
        for v in range(n):
            if v != u and not (adj >> v) & 1:
                if _addable(pos, out, inn, outdeg, indeg, n, u, v):
                    return False
    return True


def _is_cluster(G: Digraph, members: frozenset, member_mask: int) -> bool:
    verts = sorted(members)
    for a in verts:
        for b in verts:
            if a < b and not G.adjacent(a, b):
                return False
    for v in range(G.n):
        if v in members:
            continue
        o = G.out_masks[v] & member_mask
        i = G.in_masks[v] & member_mask
        if o and o != member_mask:
            return False
        if i and i != member_mask:
            return False
        if o and i:
            return False
    return True


def _maximal_clusters(G: Digraph, order: CircularOrder) -> list[tuple[int, int]]:
    """All maximal proper cluster intervals as (start position, length)."""
    seq = order.order
    n = G.n
    found = []
    for start in range(n):
        for length in range(1, n):
            members = frozenset(seq[(start + i) % n] for i in range(length))
            mask = 0
            for v in members:
                mask |= 1 << v
            if _is_cluster(G, members, mask):
                found.append((start, length, members))
    maximal = [
        (start, length)
        for (start, length, members) in found
        if not any(members < other for (_, _, other) in found)
    ]
    return sorted(maximal)


def _recognize(G: Digraph, order: CircularOrder, check_fixed_point: bool):
    """Shared recognition core; returns (outcome, clusters as vertex tuples)."""
    cycle = find_short_cycle(G, 3)
    if cycle is not None:
        raise NotThreeFreeError(
            f"graph has a directed cycle of length {len(cycle)}: {cycle}", cycle=cycle
        )
    if not verify_circular_interval(G, order):
        raise StructureError("graph is not circular-interval with respect to the order")
    if check_fixed_point and not _is_fixed_point(G, order):
        raise StructureError(
            "graph is not maximal: some arc can still be added under the order"
        )
    if gamma_count(G.n, G.out_masks, G.in_masks) == 0:
        assert is_acyclic(G)
        return TransitiveTournament(), None

    seq = order.order
    n = G.n
    intervals = _maximal_clusters(G, order)
    # every singleton is a cluster, so maximal clusters always cover V;
    # the partition can only fail through overlap, i.e. lengths summing past n
    if sum(length for (_, length) in intervals) != n:
        raise StructureViolationError(
            "maximal clusters overlap instead of partitioning the vertex set",
            details={"clusters": intervals},
        )
    count = len(intervals)
    if count < 4 or (count - 1) % 3 != 0:
        raise StructureViolationError(
            f"found {count} maximal clusters; expected 3t+1 of them for some t >= 1",
            details={"clusters": intervals},
        )
    t = (count - 1) // 3

    # rotate so the cluster holding position 0 comes first
    first = next(
        idx for idx, (start, length) in enumerate(intervals) if (0 - start) % n < length
    )
    ordered = intervals[first:] + intervals[:first]
    clusters = [
        tuple(seq[(start + i) % n] for i in range(length)) for (start, length) in ordered
    ]

    expected: set[Arc] = set()
    for members in clusters:
        expected.update(
            (members[i], members[j])
            for i in range(len(members))
            for j in range(i + 1, len(members))
        )
    for h in range(count):
        for step in range(1, t + 1):
            target = clusters[(h + step) % count]
            expected.update((u, v) for u in clusters[h] for v in target)
    actual = set(G.arcs)
    if actual != expected:
        sample = sorted(actual.symmetric_difference(expected))[:5]
        raise StructureViolationError(
            f"arc set disagrees with the block normal form in {len(actual ^ expected)} "
            f"arcs, first few: {sample}",
            details={"clusters": clusters, "difference": sample},
        )
    sizes = tuple(len(members) for members in clusters)
    return BlockStructure(t=t, sizes=sizes), clusters


def recognize_structure(G: Digraph, order: CircularOrder):
    """Classify a maximal graph: TransitiveTournament or a BlockStructure.

    G must be a completion fixed point for the given order.  Cluster sizes
    in the result are all positive and listed in circular order starting
    from the cluster containing the first position; callers comparing
    against a generator input should compare up to rotation.  Anything that
    fits neither structure raises StructureViolationError describing which
    condition failed.
    """
    outcome, _ = _recognize(G, order, check_fixed_point=True)
    return outcome


def circular_feedback(G: Digraph, order: CircularOrder) -> FeedbackCertificate:
    """Feedback arc set within half gamma via completion and a covering layer.

    Complete G to its maximal fixed point, recognize the block structure,
    take the cheapest covering layer there, then keep only the arcs G
    actually has.  The completion only shrinks the nonadjacency count, so
    the bound carries back to G.
    """
    completion = maximal_completion(G, order)
    outcome, clusters = _recognize(completion, order, check_fixed_point=False)
    if isinstance(outcome, TransitiveTournament):
        X: tuple[Arc, ...] = ()
    else:
        cut = best_cut(outcome.sizes)
        layer = index_sets(outcome.t).C[cut.k]
        star = _cluster_cut_arcs(clusters, layer)
        X = tuple(sorted(arc for arc in star if G.has_arc(*arc)))
    g = gamma_count(G.n, G.out_masks, G.in_masks)
    assert 2 * len(X) <= g
    assert verify_feedback_set(G, X)
    return FeedbackCertificate(
        arcs=X,
        bound_kind="half_gamma",
        bound_value=Fraction(g, 2),
        algorithm="circular-cut",
    )
