"""Instance generators and the conjecture scan harness.

Enumeration walks the 3^C(n,2) assignments of pair states (no arc, forward
arc, backward arc), so digons never appear, and prunes a branch the moment
an arc closes a directed triangle.  Every triangle is caught when its
lexicographically last pair is assigned, so the leaves are exactly the
3-free digraphs on n labelled vertices.

The scan checks, for every instance, that the exact deletion number beta
stays within gamma (and within gamma/2 for the stronger conjecture), and
cross-checks the constructive decomposition bound as it goes.
"""

from __future__ import annotations

import multiprocessing
from dataclasses import dataclass
from fractions import Fraction
from random import Random
from typing import Iterable, Iterator

from .circular import BlockStructure, generate
from .decompose import pivot_feedback_size
from .digraph import Arc, Digraph, find_short_cycle, gamma_count
from .errors import SizeLimitError
from .exact import DP_VERTEX_LIMIT, beta_value
from .four_functions import GridFunctions

ENUMERATION_VERTEX_LIMIT = 6
WITNESS_CAP = 8


def _pair_list(n: int) -> list[tuple[int, int]]:
    return [(u, v) for u in range(n) for v in range(u + 1, n)]


def enumerate_masks(n: int, prefix: tuple[int, ...] = ()) -> Iterator[tuple[list[int], list[int]]]:
    """Yield (out_masks, in_masks) for every 3-free digraph on n vertices.

    The yielded lists are reused between steps; consume or copy them before
    advancing.  `prefix` pins the states of the first len(prefix) pairs
    (0 = nonadjacent, 1 = forward, 2 = backward), which partitions the
    search space for parallel scans.
    """
    pairs = _pair_list(n)
    P = len(pairs)
    prefix = tuple(prefix)
    if len(prefix) > P:
        raise ValueError(f"prefix length {len(prefix)} exceeds pair count {P}")
    if any(st not in (0, 1, 2) for st in prefix):
        raise ValueError("prefix states must be 0, 1, or 2")
    out = [0] * n
    inn = [0] * n
    for i, st in enumerate(prefix):
        u, v = pairs[i]
        if st == 1:
            if out[v] & inn[u]:
                return
            out[u] |= 1 << v
            inn[v] |= 1 << u
        elif st == 2:
            if out[u] & inn[v]:
                return
            out[v] |= 1 << u
            inn[u] |= 1 << v
    base = len(prefix)
    if base == P:
        yield out, inn
        return
    trying = [0] * P
    applied = [-1] * P
    level = base
    while level >= base:
        if level == P:
            yield out, inn
            level -= 1
            continue
        prev = applied[level]
        if prev > 0:
            u, v = pairs[level]
            if prev == 1:
                out[u] &= ~(1 << v)
                inn[v] &= ~(1 << u)
            else:
                out[v] &= ~(1 << u)
                inn[u] &= ~(1 << v)
        applied[level] = -1
        st = trying[level]
        if st == 3:
            trying[level] = 0
            level -= 1
            continue
        trying[level] = st + 1
        if st == 0:
            applied[level] = 0
            level += 1
        else:
            u, v = pairs[level]
            if st == 1:
                # closing triangle: some w with v->w and w->u
                if not (out[v] & inn[u]):
                    out[u] |= 1 << v
                    inn[v] |= 1 << u
                    applied[level] = 1
                    level += 1
            else:
                if not (out[u] & inn[v]):
                    out[v] |= 1 << u
                    inn[u] |= 1 << v
                    applied[level] = 2
                    level += 1


def enumerate_3free(n: int, prefix: tuple[int, ...] = ()) -> Iterator[Digraph]:
    """Every 3-free digraph on n labelled vertices, in a fixed order.

    Labelled means no isomorphism reduction: relabelings are distinct
    instances, which keeps the stream order and count reproducible.
    Capped at 6 vertices; use random sampling above that.
    """
    if n < 0:
        raise ValueError("vertex count must be nonnegative")
    if n > ENUMERATION_VERTEX_LIMIT:
        raise SizeLimitError(
            f"exhaustive enumeration is capped at {ENUMERATION_VERTEX_LIMIT} vertices "
            f"(3^C(n,2) instances); use random_3free for larger n"
        )
    for out, _ in enumerate_masks(n, prefix):
        yield Digraph.from_masks(n, out)


def random_3free(n: int, p: float, seed: int) -> Digraph:
    """Seeded random 3-free digraph with pair-state density p.

    Each unordered pair independently gets a forward arc with weight p, a
    backward arc with weight p, and stays nonadjacent with weight
    max(0, 1 - 2p); the weights are normalized, so p above 0.5 simply
    saturates.  Short cycles are then repaired deterministically by
    removing the smallest arc of the first short cycle found, repeatedly.
    """
    if n < 0:
        raise ValueError("vertex count must be nonnegative")
    if not (0.0 <= p <= 1.0):
        raise ValueError(f"p must lie in [0, 1], got {p}")
    rng = Random(seed)
    none_w = max(0.0, 1.0 - 2.0 * p)
    z = 2.0 * p + none_w
    arcs: list[Arc] = []
    if z > 0:
        fwd = p / z
        back = 2.0 * p / z
        for u, v in _pair_list(n):
            r = rng.random()
            if r < fwd:
                arcs.append((u, v))
            elif r < back:
                arcs.append((v, u))
    G = Digraph(n, arcs)
    while True:
        cycle = find_short_cycle(G, 3)
        if cycle is None:
            return G
        cycle_arcs = [
            (cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle))
        ]
        G = G.without_arcs([min(cycle_arcs)])


def extremal_family(n: int) -> Digraph:
    """Four equal blocks of size n around the circle with reach 1.

    Deleting fewer than n*n arcs always leaves a directed cycle, and the
    nonadjacent pairs number exactly 2*n*n, so these graphs sit on the
    half-gamma boundary.
    """
    G, _ = generate(BlockStructure(t=1, sizes=(n, n, n, n)))
    return G


def random_two_clique(m_size: int, n_size: int, p: float, seed: int):
    """Random 3-free digraph whose vertex set splits into two cliques.

    Returns (G, M, N).  Both sides start as transitive tournaments over a
    shuffled order; between-side arcs appear with probability p in either
    direction.  Repair deletes only between-side arcs (each short cycle
    must contain one, since the sides are acyclic), so the sides stay
    cliques.
    """
    if m_size < 0 or n_size < 0:
        raise ValueError("side sizes must be nonnegative")
    rng = Random(seed)
    total = m_size + n_size
    verts = list(range(total))
    rng.shuffle(verts)
    M = sorted(verts[:m_size])
    N = sorted(verts[m_size:])
    m_order = list(M)
    n_order = list(N)
    rng.shuffle(m_order)
    rng.shuffle(n_order)
    arcs: list[Arc] = []
    for order in (m_order, n_order):
        arcs.extend(
            (order[i], order[j])
            for i in range(len(order))
            for j in range(i + 1, len(order))
        )
    between = set()
    for u in M:
        for v in N:
            r = rng.random()
            if r < p:
                arcs.append((u, v))
                between.add((u, v))
            elif r < 2 * p:
                arcs.append((v, u))
                between.add((v, u))
    G = Digraph(total, arcs)
    while True:
        cycle = find_short_cycle(G, 3)
        if cycle is None:
            return G, tuple(M), tuple(N)
        cycle_arcs = [
            (cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle))
        ]
        removable = [a for a in cycle_arcs if a in between]
        G = G.without_arcs([min(removable)])


def random_grid_instance(m: int, n: int, seed: int) -> GridFunctions:
    """Random rational grid candidate biased toward the domination hypothesis.

    a and b share total mass by construction: each of a few crosses puts
    the same weight on a point and on a point dominating it, which makes b
    dominate a by counting.  c and d are drawn from a wider range so the
    pointwise hypothesis has a fair chance; the caller still filters on
    the real checks.
    """
    rng = Random(seed)
    dominating_pairs = [
        ((i, j), (i2, j2))
        for i in range(1, m + 1)
        for j in range(1, n + 1)
        for i2 in range(i + 1, m + 1)
        for j2 in range(j + 1, n + 1)
    ]
    if not dominating_pairs:
        raise ValueError(f"no dominating point pairs exist on a {m}x{n} grid")
    a = [[Fraction(0)] * n for _ in range(m)]
    b = [[Fraction(0)] * n for _ in range(m)]
    for _ in range(rng.randint(1, 4)):
        (i, j), (i2, j2) = rng.choice(dominating_pairs)
        w = Fraction(rng.randint(0, 8), rng.randint(1, 4))
        a[i - 1][j - 1] += w
        b[i2 - 1][j2 - 1] += w
    c = [[Fraction(rng.randint(0, 24), rng.randint(1, 3)) for _ in range(n)] for _ in range(m)]
    d = [[Fraction(rng.randint(0, 24), rng.randint(1, 3)) for _ in range(n)] for _ in range(m)]
    return GridFunctions.from_rows(m, n, a, b, c, d)


@dataclass(frozen=True)
class WitnessRecord:
    graph: Digraph
    beta: int
    gamma: int


@dataclass(frozen=True)
class ViolationRecord:
    kind: str  # "conjecture" for beta > gamma/2, "theorem" for beta > gamma
    graph: Digraph
    beta: int
    gamma: int


@dataclass(frozen=True)
class ScanReport:
    """Aggregated scan outcome; merges associatively across sub-blocks."""

    n: int
    mode: str
    instances_checked: int
    per_n: dict
    max_beta_minus_half_gamma: Fraction
    witnesses: tuple
    violations: tuple
    complete: bool


def merge_reports(left: ScanReport, right: ScanReport) -> ScanReport:
    """Combine partial reports; associative, so block order never matters."""
    if left.mode != right.mode:
        raise ValueError(f"cannot merge {left.mode!r} report with {right.mode!r} report")
    per_n = dict(left.per_n)
    for key, val in right.per_n.items():
        per_n[key] = per_n.get(key, 0) + val
    if left.max_beta_minus_half_gamma > right.max_beta_minus_half_gamma:
        witnesses = left.witnesses
        best = left.max_beta_minus_half_gamma
    elif right.max_beta_minus_half_gamma > left.max_beta_minus_half_gamma:
        witnesses = right.witnesses
        best = right.max_beta_minus_half_gamma
    else:
        witnesses = (left.witnesses + right.witnesses)[:WITNESS_CAP]
        best = left.max_beta_minus_half_gamma
    return ScanReport(
        n=max(left.n, right.n),
        mode=left.mode,
        instances_checked=left.instances_checked + right.instances_checked,
        per_n=per_n,
        max_beta_minus_half_gamma=best,
        witnesses=witnesses,
        violations=left.violations + right.violations,
        complete=left.complete and right.complete,
    )


class _ScanState:
    __slots__ = ("count", "per_n", "best", "witnesses", "violations")

    def __init__(self):
        self.count = 0
        self.per_n = {}
        self.best = None  # 2*beta - gamma, integer
        self.witnesses = []
        self.violations = []

    def record(self, n: int, out, inn) -> None:
        g = gamma_count(n, out, inn)
        b = beta_value(n, out)
        bound = pivot_feedback_size(n, out, inn)
        assert bound <= g, "decomposition certificate exceeded gamma"
        self.count += 1
        self.per_n[n] = self.per_n.get(n, 0) + 1
        if b > g:
            self.violations.append(
                ViolationRecord("theorem", Digraph.from_masks(n, out), b, g)
            )
        delta = 2 * b - g
        if delta > 0:
            self.violations.append(
                ViolationRecord("conjecture", Digraph.from_masks(n, out), b, g)
            )
        if self.best is None or delta > self.best:
            self.best = delta
            self.witnesses = [WitnessRecord(Digraph.from_masks(n, out), b, g)]
        elif delta == self.best and len(self.witnesses) < WITNESS_CAP:
            self.witnesses.append(WitnessRecord(Digraph.from_masks(n, out), b, g))

    def report(self, n_max: int, mode: str, complete: bool) -> ScanReport:
        best = Fraction(self.best, 2) if self.best is not None else Fraction(0)
        return ScanReport(
            n=n_max,
            mode=mode,
            instances_checked=self.count,
            per_n=dict(self.per_n),
            max_beta_minus_half_gamma=best,
            witnesses=tuple(self.witnesses),
            violations=tuple(self.violations),
            complete=complete,
        )


def _scan_exhaustive_block(args) -> ScanReport:
    n_values, n_max, prefix, budget = args
    state = _ScanState()
    complete = True
    for n in n_values:
        use_prefix = prefix if n == n_max else ()
        for out, inn in enumerate_masks(n, use_prefix):
            if budget is not None and state.count >= budget:
                complete = False
                break
            state.record(n, out, inn)
        if not complete:
            break
    return state.report(n_max, "exhaustive", complete)


def _worker_prefixes(depth: int) -> list[tuple[int, ...]]:
    prefixes = [()]
    for _ in range(depth):
        prefixes = [p + (st,) for p in prefixes for st in (0, 1, 2)]
    return prefixes


def conjecture_scan(
    n_max: int,
    mode: str = "exhaustive",
    budget: int | None = None,
    seed: int = 0,
    workers: int = 1,
) -> ScanReport:
    """Scan for violations of beta <= gamma and of beta <= gamma/2.

    Exhaustive mode covers every 3-free digraph on 1..n_max vertices
    (n_max at most 6); a budget caps the instance count and marks the
    report incomplete when it truncates the stream.  Random mode draws
    `budget` seeded instances on up to n_max vertices instead.  With
    workers > 1, exhaustive mode splits the largest n by pair-state
    prefixes and merges the partial reports; a budget then applies per
    block, not globally.
    """
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    if mode not in ("exhaustive", "random"):
        raise ValueError(f"unknown scan mode {mode!r}")

    if mode == "random":
        if n_max > DP_VERTEX_LIMIT:
            raise SizeLimitError(
                f"random scan needs exact beta, capped at {DP_VERTEX_LIMIT} vertices"
            )
        count = 1000 if budget is None else budget
        state = _ScanState()
        rng = Random(seed)
        for i in range(count):
            n = rng.randint(1, n_max)
            p = rng.uniform(0.05, 0.5)
            G = random_3free(n, p, seed=rng.getrandbits(32))
            state.record(n, G.out_masks, G.in_masks)
        return state.report(n_max, "random", True)

    if n_max > ENUMERATION_VERTEX_LIMIT:
        raise SizeLimitError(
            f"exhaustive scan is capped at {ENUMERATION_VERTEX_LIMIT} vertices "
            f"(3^C(n,2) instances); use mode='random' for larger n"
        )
    n_values = list(range(1, n_max + 1))
    if workers <= 1:
        return _scan_exhaustive_block((n_values, n_max, (), budget))

    depth = 1
    while 3**depth < 2 * workers and depth < max(1, n_max * (n_max - 1) // 2):
        depth += 1
    prefixes = _worker_prefixes(depth)
    jobs = [(n_values if prefix == prefixes[0] else [n_max], n_max, prefix, budget) for prefix in prefixes]
    with multiprocessing.get_context("fork").Pool(workers) as pool:
        partials = pool.map(_scan_exhaustive_block, jobs)
    report = partials[0]
    for part in partials[1:]:
        report = merge_reports(report, part)
    return report
