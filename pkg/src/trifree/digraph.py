"""Immutable digraph core: short-cycle predicates, nonadjacency counting, certificates.

Digraphs are simple and loop-free: at most one arc per ordered pair, never
both (u, v) and a loop (u, u).  Antiparallel pairs (digons) are representable
but every bound algorithm in this package requires their absence, since a
digon is a directed cycle of length 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from .errors import GraphInputError, MalformedCertificateError

Arc = tuple[int, int]


class Digraph:
    """A digraph on vertices 0..n-1 with an immutable arc set.

    Arcs are kept both as a sorted tuple (deterministic iteration) and as a
    frozenset (O(1) membership).  Per-vertex out/in bitmasks back the fast
    paths used by solvers and enumeration.
    """

    __slots__ = ("n", "arcs", "_arc_set", "out_masks", "in_masks")

    def __init__(self, n: int, arcs: Iterable[Arc]):
        if n < 0:
            raise GraphInputError(f"vertex count must be nonnegative, got {n}")
        self.n = n
        out = [0] * n
        inn = [0] * n
        seen = set()
        for arc in arcs:
            u, v = arc
            if not (0 <= u < n and 0 <= v < n):
                raise GraphInputError(f"arc ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphInputError(f"self-loop ({u}, {v}) is not allowed")
            if (u, v) in seen:
                raise GraphInputError(f"duplicate arc ({u}, {v})")
            seen.add((u, v))
            out[u] |= 1 << v
            inn[v] |= 1 << u
        self.arcs: tuple[Arc, ...] = tuple(sorted(seen))
        self._arc_set = frozenset(seen)
        self.out_masks: tuple[int, ...] = tuple(out)
        self.in_masks: tuple[int, ...] = tuple(inn)

    @classmethod
    def from_masks(cls, n: int, out_masks: Iterable[int]) -> "Digraph":
        """Build from per-vertex out-neighbour bitmasks (validated)."""
        arcs = []
        for u, mask in enumerate(out_masks):
            while mask:
                low = mask & -mask
                arcs.append((u, low.bit_length() - 1))
                mask ^= low
        return cls(n, arcs)

    @property
    def vertex_count(self) -> int:
        return self.n

    @property
    def arc_count(self) -> int:
        return len(self.arcs)

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self._arc_set

    def adjacent(self, u: int, v: int) -> bool:
        """True when at least one of the two arcs between u and v is present."""
        return (u, v) in self._arc_set or (v, u) in self._arc_set

    def out_neighbors(self, u: int) -> tuple[int, ...]:
        return tuple(_bits(self.out_masks[u]))

    def in_neighbors(self, v: int) -> tuple[int, ...]:
        return tuple(_bits(self.in_masks[v]))

    def without_arcs(self, removed: Iterable[Arc]) -> "Digraph":
        gone = set(map(tuple, removed))
        return Digraph(self.n, [a for a in self.arcs if a not in gone])

    def induced_subgraph(self, vertices: Iterable[int]) -> "InducedSubgraph":
        """Extract the subgraph induced by `vertices`, relabelled to 0..k-1.

        Vertices are sorted, so relabelling is order-preserving.  The result
        carries the label maps needed to lift arcs back to this graph.
        """
        old_labels = tuple(sorted(set(vertices)))
        for v in old_labels:
            if not (0 <= v < self.n):
                raise GraphInputError(f"vertex {v} out of range for n={self.n}")
        new_labels = {old: new for new, old in enumerate(old_labels)}
        arcs = [
            (new_labels[u], new_labels[v])
            for (u, v) in self.arcs
            if u in new_labels and v in new_labels
        ]
        return InducedSubgraph(Digraph(len(old_labels), arcs), old_labels, new_labels)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Digraph):
            return NotImplemented
        return self.n == other.n and self._arc_set == other._arc_set

    def __hash__(self) -> int:
        return hash((self.n, self._arc_set))

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, arcs={list(self.arcs)!r})"


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class InducedSubgraph:
    """An induced subgraph plus both directions of the relabelling."""

    graph: Digraph
    old_labels: tuple[int, ...]  # old_labels[new] = old
    new_labels: dict  # new_labels[old] = new

    def lift_arc(self, arc: Arc) -> Arc:
        a, b = arc
        return (self.old_labels[a], self.old_labels[b])


@dataclass(frozen=True)
class NonadjacencyReport:
    """Count and explicit list of unordered nonadjacent vertex pairs."""

    gamma: int
    pairs: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class FeedbackCertificate:
    """An arc set X whose removal is claimed to leave the graph acyclic.

    bound_kind is "gamma" or "half_gamma"; bound_value is the numeric bound
    |X| was certified against when the certificate was produced.
    """

    arcs: tuple[Arc, ...]
    bound_kind: str
    bound_value: Fraction
    algorithm: str

    @property
    def size(self) -> int:
        return len(self.arcs)


def is_acyclic(G: Digraph) -> bool:
    """Decide acyclicity by iterative removal of in-degree-zero vertices."""
    indeg = [m.bit_count() for m in G.in_masks]
    stack = [v for v in range(G.n) if indeg[v] == 0]
    removed = 0
    while stack:
        v = stack.pop()
        removed += 1
        mask = G.out_masks[v]
        while mask:
            low = mask & -mask
            w = low.bit_length() - 1
            mask ^= low
            indeg[w] -= 1
            if indeg[w] == 0:
                stack.append(w)
    return removed == G.n


def find_short_cycle(G: Digraph, k: int) -> list[int] | None:
    """Return some directed cycle of length <= k as a vertex list, or None.

    Runs a breadth-first search from every vertex s, depth-bounded by k-1;
    the shortest cycle through s is dist(s, v) + 1 over arcs (v, s).
    """
    if k < 1:
        return None
    for s in range(G.n):
        dist = {s: 0}
        parent = {s: -1}
        frontier = [s]
        depth = 0
        while frontier and depth < k - 1:
            depth += 1
            nxt = []
            for u in frontier:
                mask = G.out_masks[u]
                while mask:
                    low = mask & -mask
                    w = low.bit_length() - 1
                    mask ^= low
                    if w not in dist:
                        dist[w] = depth
                        parent[w] = u
                        nxt.append(w)
            frontier = nxt
        for v in G.in_neighbors(s):
            if v in dist and dist[v] + 1 <= k:
                cycle = [v]
                while cycle[-1] != s:
                    cycle.append(parent[cycle[-1]])
                cycle.reverse()
                return cycle
    return None


def is_k_free(G: Digraph, k: int) -> bool:
    """True iff G has no directed cycle of length at most k."""
    return find_short_cycle(G, k) is None


def gamma(G: Digraph) -> NonadjacencyReport:
    """Count unordered pairs with no arc in either direction."""
    pairs = []
    for u in range(G.n):
        adj = G.out_masks[u] | G.in_masks[u]
        for v in range(u + 1, G.n):
            if not (adj >> v) & 1:
                pairs.append((u, v))
    return NonadjacencyReport(gamma=len(pairs), pairs=tuple(pairs))


def gamma_count(n: int, out_masks, in_masks) -> int:
    """Nonadjacent-pair count straight from adjacency masks (fast path)."""
    total = 0
    full = (1 << n) - 1
    for u in range(n):
        nonadj = full & ~(out_masks[u] | in_masks[u] | (1 << u))
        total += (nonadj >> (u + 1)).bit_count()
    return total


def verify_feedback_set(G: Digraph, X: Iterable[Arc]) -> bool:
    """Check that removing X from G leaves an acyclic digraph.

    Raises MalformedCertificateError when X mentions an arc G does not have;
    a certificate that cannot be applied is distinct from one that fails.
    """
    X = [tuple(a) for a in X]
    missing = [a for a in X if not (len(a) == 2 and G.has_arc(*a))]
    if missing:
        raise MalformedCertificateError(
            f"certificate contains {len(missing)} arc(s) not present in the graph, "
            f"first: {missing[0]}"
        )
    return is_acyclic(G.without_arcs(X))


def parse_edge_list(text: str) -> Digraph:
    """Parse the plain text arc-list format.

    The first non-comment line is `n <N>`; every further line is `<u> <v>`
    for one arc.  Lines starting with `#` and blank lines are ignored.
    Duplicate arc lines are an error.
    """
    n = None
    arcs: list[Arc] = []
    seen: set[Arc] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if n is None:
            if len(tokens) != 2 or tokens[0] != "n":
                raise GraphInputError(
                    f"line {lineno}: expected header 'n <N>', got {line!r}"
                )
            try:
                n = int(tokens[1])
            except ValueError:
                raise GraphInputError(f"line {lineno}: vertex count {tokens[1]!r} is not an integer")
            if n < 0:
                raise GraphInputError(f"line {lineno}: vertex count must be nonnegative")
            continue
        if len(tokens) != 2:
            raise GraphInputError(f"line {lineno}: expected '<u> <v>', got {line!r}")
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise GraphInputError(f"line {lineno}: arc endpoints must be integers, got {line!r}")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphInputError(f"line {lineno}: arc ({u}, {v}) out of range for n={n}")
        if u == v:
            raise GraphInputError(f"line {lineno}: self-loop ({u}, {v}) is not allowed")
        if (u, v) in seen:
            raise GraphInputError(f"line {lineno}: duplicate arc ({u}, {v})")
        seen.add((u, v))
        arcs.append((u, v))
    if n is None:
        raise GraphInputError("no 'n <N>' header line found")
    return Digraph(n, arcs)


def format_edge_list(G: Digraph) -> str:
    """Serialize to the text format; parse(format(G)) == G."""
    lines = [f"n {G.n}"]
    lines.extend(f"{u} {v}" for (u, v) in G.arcs)
    return "\n".join(lines) + "\n"


def read_edge_list(path) -> Digraph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_edge_list(fh.read())
