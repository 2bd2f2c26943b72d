"""Recursive pivot decomposition certifying beta <= gamma on 3-free digraphs.

A 2-path is a vertex triple (x, y, z) with arcs x->y and y->z where x and z
are nonadjacent.  f(v) counts 2-paths starting at v, g(v) counts 2-paths
whose middle vertex is v.  Both sums count every 2-path exactly once, so
some vertex has f(v) <= g(v); splitting there and recursing yields a
feedback arc set of size at most the number of nonadjacent pairs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .digraph import (
    Arc,
    Digraph,
    FeedbackCertificate,
    find_short_cycle,
    gamma_count,
    verify_feedback_set,
)
from .errors import EmptyInputError, NotThreeFreeError


@dataclass(frozen=True)
class PivotStats:
    """Per-vertex counts of 2-paths starting at (f) and centered on (g) each vertex."""

    f: tuple[int, ...]
    g: tuple[int, ...]


@dataclass(frozen=True)
class PivotSplit:
    """A pivot vertex and the three-way split it induces.

    A = out-neighbours, B = in-neighbours, C = vertices nonadjacent to the
    pivot.  In a 3-free digraph these partition the remaining vertices and
    no arc runs from A to B.
    """

    pivot: int
    A: tuple[int, ...]
    B: tuple[int, ...]
    C: tuple[int, ...]


def _two_path_counts(n: int, out, inn) -> tuple[list[int], list[int]]:
    full = (1 << n) - 1
    f = [0] * n
    g = [0] * n
    for y in range(n):
        oy = out[y]
        if not oy:
            continue
        xm = inn[y]
        while xm:
            low = xm & -xm
            xm ^= low
            x = low.bit_length() - 1
            nonadj_x = full & ~(out[x] | inn[x] | low)
            cnt = (oy & nonadj_x).bit_count()
            if cnt:
                f[x] += cnt
                g[y] += cnt
    return f, g


def two_path_counts(G: Digraph) -> PivotStats:
    """Count 2-paths by start vertex and by middle vertex.

    sum(f) == sum(g) always; both count the same triples.
    """
    f, g = _two_path_counts(G.n, G.out_masks, G.in_masks)
    return PivotStats(f=tuple(f), g=tuple(g))


def choose_pivot(G: Digraph) -> PivotSplit:
    """Pick the smallest vertex v with f(v) <= g(v) and split around it."""
    if G.n == 0:
        raise EmptyInputError("cannot choose a pivot in a graph with no vertices")
    f, g = _two_path_counts(G.n, G.out_masks, G.in_masks)
    pivot = -1
    for v in range(G.n):
        if f[v] <= g[v]:
            pivot = v
            break
    # sum(f) == sum(g) guarantees some vertex qualifies
    assert pivot >= 0
    full = (1 << G.n) - 1
    a_mask = G.out_masks[pivot]
    b_mask = G.in_masks[pivot]
    c_mask = full & ~(a_mask | b_mask | (1 << pivot))
    return PivotSplit(
        pivot=pivot,
        A=_mask_vertices(a_mask),
        B=_mask_vertices(b_mask),
        C=_mask_vertices(c_mask),
    )


def _mask_vertices(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def _compress(vertices: list[int], labels, out, inn):
    """Restrict local masks to `vertices` and renumber to 0..k-1."""
    sub_labels = tuple(labels[v] for v in vertices)
    index = {v: i for i, v in enumerate(vertices)}
    k = len(vertices)
    sub_out = [0] * k
    sub_inn = [0] * k
    for i, v in enumerate(vertices):
        om = out[v]
        im = inn[v]
        for w, j in index.items():
            if (om >> w) & 1:
                sub_out[i] |= 1 << j
            if (im >> w) & 1:
                sub_inn[i] |= 1 << j
    return sub_labels, sub_out, sub_inn


def _pivot_feedback_arcs(labels, out, inn) -> list[Arc]:
    """Recursive worker on local bitmasks; returns arcs in original labels."""
    n = len(labels)
    if n <= 1:
        return []
    f, g = _two_path_counts(n, out, inn)
    pivot = 0
    for v in range(n):
        if f[v] <= g[v]:
            pivot = v
            break
    full = (1 << n) - 1
    a_mask = out[pivot]
    b_mask = inn[pivot]
    c_mask = full & ~(a_mask | b_mask | (1 << pivot))

    # arcs from out-neighbours of the pivot into its nonadjacent set
    x3: list[Arc] = []
    am = a_mask
    while am:
        low = am & -am
        am ^= low
        a = low.bit_length() - 1
        targets = out[a] & c_mask
        while targets:
            tl = targets & -targets
            targets ^= tl
            x3.append((labels[a], labels[tl.bit_length() - 1]))

    arcs = x3
    if a_mask:
        arcs += _pivot_feedback_arcs(*_compress(_mask_list(a_mask), labels, out, inn))
    bc_mask = b_mask | c_mask
    if bc_mask:
        arcs += _pivot_feedback_arcs(*_compress(_mask_list(bc_mask), labels, out, inn))
    return arcs


def _mask_list(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def pivot_feedback_size(n: int, out, inn) -> int:
    """Certificate size only, straight from masks; shared by the scan harness."""
    return len(_pivot_feedback_arcs(tuple(range(n)), out, inn))


def theorem1_feedback(G: Digraph) -> FeedbackCertificate:
    """Feedback arc set of size at most gamma(G) for a 3-free digraph.

    Recursion: pick a pivot v with f(v) <= g(v); delete all arcs from the
    out-neighbourhood A into the nonadjacent set C (there are f(v) of them);
    recurse on A and on B+C.  The deleted arcs disconnect A from the rest,
    so acyclicity of the parts gives acyclicity of the whole.

    Raises NotThreeFreeError, naming a concrete short cycle, when G has a
    directed cycle of length at most 3.
    """
    cycle = find_short_cycle(G, 3)
    if cycle is not None:
        raise NotThreeFreeError(
            f"graph has a directed cycle of length {len(cycle)}: {cycle}", cycle=cycle
        )
    arcs = _pivot_feedback_arcs(tuple(range(G.n)), G.out_masks, G.in_masks)
    witness = tuple(sorted(arcs))
    cert = FeedbackCertificate(
        arcs=witness,
        bound_kind="gamma",
        bound_value=Fraction(gamma_count(G.n, G.out_masks, G.in_masks)),
        algorithm="pivot-decomposition",
    )
    assert len(witness) <= cert.bound_value
    assert verify_feedback_set(G, witness)
    return cert
