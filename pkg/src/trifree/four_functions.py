"""Exact-rational correlation-style inequality on grid-indexed functions.

V is the m-by-n grid {1..m} x {1..n}.  A point (i', j') dominates (i, j)
when i < i' and j < j', strictly in both coordinates.  For nonnegative
functions a, b, c, d on V the main check is:

    hypothesis 1:  a(i,j) * b(i',j') <= c(i',j) * d(i,j')   for i<i', j<j'
    hypothesis 2:  b dominates a (equal totals, and no X, Y can push
                   a(X) + b(Y) past a(V) without a dominating pair)
    conclusion:    a(V) * b(V) <= c(V) * d(V)

Everything runs on fractions.Fraction; there are no tolerances anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import GraphInputError, MalformedCertificateError, ShapeError, SizeLimitError

GridRows = tuple[tuple[Fraction, ...], ...]
GridPoint = tuple[int, int]

DOMINATES_CELL_LIMIT = 16

_NAMES = ("a", "b", "c", "d")


def _coerce_rows(m: int, n: int, rows, name: str) -> GridRows:
    rows = tuple(tuple(Fraction(x) for x in row) for row in rows)
    if len(rows) != m or any(len(row) != n for row in rows):
        raise ShapeError(f"function {name} must be {m}x{n}")
    for row in rows:
        for x in row:
            if x < 0:
                raise GraphInputError(f"function {name} has a negative entry {x}")
    return rows


@dataclass(frozen=True)
class GridFunctions:
    """Four nonnegative rational functions on a common m-by-n grid.

    Rows are stored 0-indexed; grid coordinates in the inequality are the
    usual 1-based (i, j), so a(i, j) is rows[i-1][j-1].
    """

    m: int
    n: int
    a: GridRows
    b: GridRows
    c: GridRows
    d: GridRows

    @classmethod
    def from_rows(cls, m: int, n: int, a, b, c, d) -> "GridFunctions":
        if m < 1 or n < 1:
            raise ShapeError(f"grid must be at least 1x1, got {m}x{n}")
        return cls(
            m=m,
            n=n,
            a=_coerce_rows(m, n, a, "a"),
            b=_coerce_rows(m, n, b, "b"),
            c=_coerce_rows(m, n, c, "c"),
            d=_coerce_rows(m, n, d, "d"),
        )

    def totals(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return tuple(_total(getattr(self, name)) for name in _NAMES)


def _total(rows: GridRows) -> Fraction:
    return sum((x for row in rows for x in row), Fraction(0))


@dataclass(frozen=True)
class QuadCheck:
    """Outcome of the two-by-two inequality check.

    failed_hypotheses lists every k with a_k^2 > c_k * d_k; the conclusion
    field is only meaningful when that list is empty.  Truthiness means
    `hypotheses held and conclusion holds`.
    """

    conclusion_holds: bool
    failed_hypotheses: tuple[int, ...]

    def __bool__(self) -> bool:
        return self.conclusion_holds and not self.failed_hypotheses


def quad_check(a1, a2, c1, c2, d1, d2) -> QuadCheck:
    """Check (a1 + a2)^2 <= (c1 + c2) * (d1 + d2) given a_k^2 <= c_k * d_k.

    All six values must be nonnegative rationals.  Rather than raising on a
    violated hypothesis, the result reports which k failed.
    """
    a1, a2, c1, c2, d1, d2 = (Fraction(x) for x in (a1, a2, c1, c2, d1, d2))
    for name, x in zip(("a1", "a2", "c1", "c2", "d1", "d2"), (a1, a2, c1, c2, d1, d2)):
        if x < 0:
            raise ValueError(f"{name} must be nonnegative, got {x}")
    failed = tuple(
        k for k, (ak, ck, dk) in enumerate(((a1, c1, d1), (a2, c2, d2)), start=1)
        if ak * ak > ck * dk
    )
    conclusion = (a1 + a2) ** 2 <= (c1 + c2) * (d1 + d2)
    return QuadCheck(conclusion_holds=conclusion, failed_hypotheses=failed)


def _shape_of(rows: Sequence[Sequence]) -> tuple[int, int]:
    m = len(rows)
    if m == 0 or len(set(len(row) for row in rows)) != 1:
        raise ShapeError("grid function must be a nonempty rectangle")
    return m, len(rows[0])


def dominates(a, b, cell_limit: int = DOMINATES_CELL_LIMIT) -> bool:
    """Decide whether b dominates a, exhaustively but with one reduction.

    For fixed Y the worst X is X_Y, the set of points dominated by no
    element of Y: any admissible X is a subset of X_Y and a is nonnegative.
    So it suffices to scan all 2^(m*n) sets Y and test
    a(X_Y) + b(Y) <= a(V).  Grids above `cell_limit` cells are refused.
    """
    a_shape = _shape_of(a)
    if a_shape != _shape_of(b):
        raise ShapeError(f"shapes differ: {a_shape} vs {_shape_of(b)}")
    m, n = a_shape
    cells = m * n
    if cells > cell_limit:
        raise SizeLimitError(
            f"dominates is capped at {cell_limit} grid cells (2^cells subsets); got {cells}"
        )
    flat_a = [Fraction(x) for row in a for x in row]
    flat_b = [Fraction(x) for row in b for x in row]
    total = sum(flat_a, Fraction(0))
    if total != sum(flat_b, Fraction(0)):
        return False

    # dom_masks[p] = cells strictly below and left of cell p (what p dominates)
    dom_masks = []
    for i in range(m):
        for j in range(n):
            mask = 0
            for i0 in range(i):
                for j0 in range(j):
                    mask |= 1 << (i0 * n + j0)
            dom_masks.append(mask)

    size = 1 << cells
    full = size - 1
    sum_a = [Fraction(0)] * size
    sum_b = [Fraction(0)] * size
    dom_union = [0] * size
    for s in range(1, size):
        low = s & -s
        p = low.bit_length() - 1
        rest = s ^ low
        sum_a[s] = sum_a[rest] + flat_a[p]
        sum_b[s] = sum_b[rest] + flat_b[p]
        dom_union[s] = dom_union[rest] | dom_masks[p]
    for y in range(size):
        if sum_a[full & ~dom_union[y]] + sum_b[y] > total:
            return False
    return True


def check_hypothesis1(q: GridFunctions) -> bool:
    """Pointwise products: a(i,j) * b(i',j') <= c(i',j) * d(i,j') for i<i', j<j'."""
    return hypothesis1_violation(q) is None


def hypothesis1_violation(q: GridFunctions) -> tuple[int, int, int, int] | None:
    """First (i, j, i', j') violating hypothesis 1, or None."""
    for i in range(1, q.m + 1):
        for i2 in range(i + 1, q.m + 1):
            for j in range(1, q.n + 1):
                aij = q.a[i - 1][j - 1]
                cij = q.c[i2 - 1][j - 1]
                for j2 in range(j + 1, q.n + 1):
                    if aij * q.b[i2 - 1][j2 - 1] > cij * q.d[i - 1][j2 - 1]:
                        return (i, j, i2, j2)
    return None


@dataclass(frozen=True)
class FourFunctionsVerdict:
    """Structured outcome: hypothesis status, the four totals, and the margin.

    domination_ok is None when the grid exceeds the exhaustive-check cap;
    the caller must then know by construction that domination holds.
    margin = c(V) * d(V) - a(V) * b(V), so the conclusion is margin >= 0.
    """

    m: int
    n: int
    hypothesis1_ok: bool
    hypothesis1_violation: tuple[int, int, int, int] | None
    domination_ok: bool | None
    a_total: Fraction
    b_total: Fraction
    c_total: Fraction
    d_total: Fraction
    margin: Fraction
    conclusion_holds: bool

    def __bool__(self) -> bool:
        return (
            self.hypothesis1_ok
            and self.domination_ok is not False
            and self.conclusion_holds
        )


def verify_four_functions(q: GridFunctions) -> FourFunctionsVerdict:
    """Check both hypotheses and the total inequality, all exactly.

    Never raises on a failed hypothesis; the verdict names what failed so a
    harness can log the instance verbatim.
    """
    violation = hypothesis1_violation(q)
    if q.m * q.n <= DOMINATES_CELL_LIMIT:
        domination_ok = dominates(q.a, q.b)
    else:
        domination_ok = None
    a_total, b_total, c_total, d_total = q.totals()
    margin = c_total * d_total - a_total * b_total
    return FourFunctionsVerdict(
        m=q.m,
        n=q.n,
        hypothesis1_ok=violation is None,
        hypothesis1_violation=violation,
        domination_ok=domination_ok,
        a_total=a_total,
        b_total=b_total,
        c_total=c_total,
        d_total=d_total,
        margin=margin,
        conclusion_holds=margin >= 0,
    )


def witness_points(
    A: Iterable[GridPoint], B: Iterable[GridPoint], m: int, n: int
) -> tuple[frozenset[GridPoint], frozenset[GridPoint]]:
    """Derive the two witness point sets C and D from point sets A and B.

    C collects (i', j) having some A-point strictly above in column j and
    some B-point strictly right in row i'.  D collects (i, j') having some
    A-point strictly left in row i and some B-point strictly below in
    column j'.
    """
    A = set(A)
    B = set(B)
    C = set()
    D = set()
    for i2 in range(1, m + 1):
        for j in range(1, n + 1):
            if any(i < i2 for (i, jj) in A if jj == j) and any(
                j2 > j for (ii, j2) in B if ii == i2
            ):
                C.add((i2, j))
    for i in range(1, m + 1):
        for j2 in range(1, n + 1):
            if any(j < j2 for (ii, j) in A if ii == i) and any(
                i2 > i for (i2, jj) in B if jj == j2
            ):
                D.add((i, j2))
    return frozenset(C), frozenset(D)


def grid_from_matching(
    matching: Iterable[tuple[GridPoint, GridPoint]], m: int, n: int
) -> GridFunctions:
    """Characteristic-function instance built from a set of point crosses.

    Each cross pairs an A-point (i, j) with a B-point (i', j') where i < i'
    and j < j'; all 2k endpoints must be distinct.  The resulting instance
    (1_A, 1_B, 1_C, 1_D) satisfies both hypotheses: any positive product
    a(i,j) * b(i',j') marks points of C and D directly, and any X, Y with
    a(X) + b(Y) > k pins some cross inside X x Y by counting, which is a
    dominating pair.
    """
    crosses = [(tuple(p), tuple(q)) for (p, q) in matching]
    endpoints = [pt for cross in crosses for pt in cross]
    if len(set(endpoints)) != len(endpoints):
        raise MalformedCertificateError("matching endpoints are not pairwise distinct")
    for (i, j), (i2, j2) in crosses:
        if not (1 <= i <= m and 1 <= j <= n and 1 <= i2 <= m and 1 <= j2 <= n):
            raise MalformedCertificateError(
                f"cross (({i},{j}),({i2},{j2})) leaves the {m}x{n} grid"
            )
        if not (i < i2 and j < j2):
            raise MalformedCertificateError(
                f"cross (({i},{j}),({i2},{j2})) is not strictly increasing in both coordinates"
            )
    A = frozenset(p for (p, _) in crosses)
    B = frozenset(q for (_, q) in crosses)
    C, D = witness_points(A, B, m, n)

    def characteristic(points: frozenset) -> GridRows:
        return tuple(
            tuple(Fraction(1 if (i, j) in points else 0) for j in range(1, n + 1))
            for i in range(1, m + 1)
        )

    return GridFunctions(
        m=m,
        n=n,
        a=characteristic(A),
        b=characteristic(B),
        c=characteristic(C),
        d=characteristic(D),
    )


def parse_grid(text: str) -> GridFunctions:
    """Parse the grid text format.

    Header `grid <m> <n>`, then one line per function in the order a, b,
    c, d: `<name>: <m*n rationals row-major>`, rationals written as `p/q`
    or plain integers.  `#` comments and blank lines are ignored.
    """
    header = None
    rows = {}
    expect = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if header is None:
            if len(tokens) != 3 or tokens[0] != "grid":
                raise GraphInputError(f"line {lineno}: expected header 'grid <m> <n>'")
            try:
                header = (int(tokens[1]), int(tokens[2]))
            except ValueError:
                raise GraphInputError(f"line {lineno}: grid dimensions must be integers")
            continue
        if expect >= len(_NAMES):
            raise GraphInputError(f"line {lineno}: unexpected extra line {line!r}")
        name = _NAMES[expect]
        if tokens[0] != f"{name}:":
            raise GraphInputError(f"line {lineno}: expected '{name}: ...', got {line!r}")
        m, n = header
        values = tokens[1:]
        if len(values) != m * n:
            raise GraphInputError(
                f"line {lineno}: expected {m * n} values for {name}, got {len(values)}"
            )
        try:
            flat = [Fraction(tok) for tok in values]
        except (ValueError, ZeroDivisionError):
            raise GraphInputError(f"line {lineno}: values must be rationals like 3 or 3/4")
        rows[name] = tuple(tuple(flat[i * n : (i + 1) * n]) for i in range(m))
        expect += 1
    if header is None:
        raise GraphInputError("no 'grid <m> <n>' header line found")
    if expect != len(_NAMES):
        raise GraphInputError(f"missing line for function {_NAMES[expect]!r}")
    m, n = header
    return GridFunctions.from_rows(m, n, rows["a"], rows["b"], rows["c"], rows["d"])


def format_grid(q: GridFunctions) -> str:
    """Serialize to the grid text format; parse(format(q)) == q."""
    lines = [f"grid {q.m} {q.n}"]
    for name in _NAMES:
        rows = getattr(q, name)
        lines.append(f"{name}: " + " ".join(str(x) for row in rows for x in row))
    return "\n".join(lines) + "\n"
