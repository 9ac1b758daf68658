"""Random exponential matrices, their zero sets, and zero matchings.

Indices are 0-based here; the I/O layer converts to the 1-based convention.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import HypothesisError, InvalidInstance

Cell = tuple[int, int]


class _ZeroEntry:
    """Tag for a deterministic zero entry (an exponential of infinite rate).

    Never takes part in arithmetic: a critical rectangle cannot contain a
    zero, so an attempted rate sum that meets one is a logic error.
    """

    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "ZERO"

    def __reduce__(self):
        return (_ZeroEntry, ())

    def _refuse(self, *_):
        raise TypeError("a zero entry has no finite rate and cannot be summed")

    __add__ = __radd__ = __sub__ = __rsub__ = __mul__ = __rmul__ = _refuse


ZERO = _ZeroEntry()
Rate = Union[Fraction, _ZeroEntry]


def is_zero(rate: Rate) -> bool:
    return rate is ZERO


def as_rate(value) -> Rate:
    """Coerce a user value to a rate: ``"zero"``, an int, a Fraction or an exact decimal string."""
    if value is ZERO or (isinstance(value, str) and value.strip().lower() == "zero"):
        return ZERO
    if isinstance(value, bool):
        raise InvalidInstance(f"not a rate: {value!r}")
    if isinstance(value, float):
        exact = Fraction(value)
        if Fraction(repr(value)) != exact:
            raise InvalidInstance(f"float rate {value!r} is not exactly representable; pass it as a string 'p/q'")
        value = exact
    try:
        rate = Fraction(value)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InvalidInstance(f"not a rate: {value!r}") from exc
    if rate <= 0:
        raise InvalidInstance(f"finite rates must be positive, got {value!r}")
    return rate


class Hypothesis(enum.Enum):
    ZERO_COST_K = "zero_cost_k"
    EXACTLY_K_MINUS_1 = "exactly_k_minus_1"
    INSUFFICIENT = "insufficient"


@dataclass(frozen=True)
class MatrixSpec:
    """An m x n matrix of independent exponential entries and a target assignment size k."""

    m: int
    n: int
    k: int
    entries: tuple[tuple[Rate, ...], ...]

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise InvalidInstance(f"matrix must have at least one row and column, got {self.m}x{self.n}")
        if len(self.entries) != self.m or any(len(row) != self.n for row in self.entries):
            raise InvalidInstance(f"entry grid does not have shape {self.m}x{self.n}")
        if not 0 <= self.k <= min(self.m, self.n):
            raise InvalidInstance(f"k={self.k} outside [0, {min(self.m, self.n)}]")
        for row in self.entries:
            for rate in row:
                if rate is not ZERO and not (isinstance(rate, Fraction) and rate > 0):
                    raise InvalidInstance(f"invalid rate {rate!r}; use as_rate() or MatrixSpec.from_grid()")

    @classmethod
    def from_grid(cls, grid: Sequence[Sequence], k: int) -> "MatrixSpec":
        entries = tuple(tuple(as_rate(v) for v in row) for row in grid)
        if not entries:
            raise InvalidInstance("empty grid")
        return cls(len(entries), len(entries[0]), k, entries)

    def rate(self, i: int, j: int) -> Rate:
        return self.entries[i][j]

    def with_k(self, k: int) -> "MatrixSpec":
        return MatrixSpec(self.m, self.n, k, self.entries)

    def __str__(self):
        rows = ["  ".join("0" if r is ZERO else str(r) for r in row) for row in self.entries]
        return f"MatrixSpec(k={self.k})\n" + "\n".join(rows)


def rate_sum(M: MatrixSpec, rows: Iterable[int], cols: Iterable[int]) -> Fraction:
    """Sum of the finite rates over ``rows x cols``. Raises on a zero entry."""
    cols = list(cols)
    total = Fraction(0)
    for i in rows:
        for j in cols:
            total = total + M.entries[i][j]
    return total


def zero_positions(M: MatrixSpec) -> frozenset[Cell]:
    return frozenset((i, j) for i in range(M.m) for j in range(M.n) if M.entries[i][j] is ZERO)


def _zero_adjacency(M: MatrixSpec) -> list[list[int]]:
    return [[j for j in range(M.n) if M.entries[i][j] is ZERO] for i in range(M.m)]


def _matching_arrays(M: MatrixSpec) -> tuple[list[int], list[int]]:
    """Maximum zero matching as (column of row, row of column), -1 when unmatched.

    Plain augmenting paths (Kuhn); instance sizes are tiny.
    """
    adj = _zero_adjacency(M)
    row_to = [-1] * M.m
    col_to = [-1] * M.n

    def augment(i: int, seen: list[bool]) -> bool:
        for j in adj[i]:
            if seen[j]:
                continue
            seen[j] = True
            if col_to[j] == -1 or augment(col_to[j], seen):
                row_to[i] = j
                col_to[j] = i
                return True
        return False

    for i in range(M.m):
        augment(i, [False] * M.n)
    return row_to, col_to


def max_zero_matching(M: MatrixSpec) -> frozenset[Cell]:
    row_to, _ = _matching_arrays(M)
    return frozenset((i, j) for i, j in enumerate(row_to) if j != -1)


def hypothesis_class(M: MatrixSpec) -> Hypothesis:
    size = len(max_zero_matching(M))
    if size >= M.k:
        return Hypothesis.ZERO_COST_K
    if size == M.k - 1:
        return Hypothesis.EXACTLY_K_MINUS_1
    return Hypothesis.INSUFFICIENT


def require_exactly_k_minus_1(M: MatrixSpec) -> None:
    cls = hypothesis_class(M)
    if cls is not Hypothesis.EXACTLY_K_MINUS_1:
        raise HypothesisError(
            f"operation needs a maximum zero matching of size k-1={M.k - 1}; instance is {cls.value}"
        )


def _rows_reached_from_free_columns(M: MatrixSpec) -> set[int]:
    # alternating search: free column -> (zero edge) row -> (matched edge) column -> ...
    adj = _zero_adjacency(M)
    row_to, col_to = _matching_arrays(M)
    by_col: list[list[int]] = [[] for _ in range(M.n)]
    for i, js in enumerate(adj):
        for j in js:
            by_col[j].append(i)
    stack = [j for j in range(M.n) if col_to[j] == -1]
    seen_cols = set(stack)
    reached: set[int] = set()
    while stack:
        j = stack.pop()
        for i in by_col[j]:
            if i in reached:
                continue
            reached.add(i)
            nxt = row_to[i]
            if nxt != -1 and nxt not in seen_cols:
                seen_cols.add(nxt)
                stack.append(nxt)
    return reached


def avoidable_rows(M: MatrixSpec) -> set[int]:
    """Rows left unmatched by at least one maximum zero matching.

    These are the rows reachable from an unmatched row by an even-length
    alternating path (Dulmage-Mendelsohn).
    """
    adj = _zero_adjacency(M)
    row_to, col_to = _matching_arrays(M)
    stack = [i for i in range(M.m) if row_to[i] == -1]
    reached = set(stack)
    while stack:
        i = stack.pop()
        for j in adj[i]:
            nxt = col_to[j]
            if nxt != -1 and nxt not in reached:
                reached.add(nxt)
                stack.append(nxt)
    return reached


def forced_rows(M: MatrixSpec) -> frozenset[int]:
    """Rows that belong to every (k-1)-cover of the zeros.

    By Konig's construction from the unmatched columns, these are exactly
    the rows of the column-maximal minimum cover.
    """
    require_exactly_k_minus_1(M)
    return frozenset(_rows_reached_from_free_columns(M))


def remove_row(M: MatrixSpec, r: int) -> MatrixSpec:
    if M.k == 0:
        raise InvalidInstance("cannot remove a row when k = 0")
    if not 0 <= r < M.m:
        raise InvalidInstance(f"row {r} out of range")
    if M.m == 1:
        raise InvalidInstance("cannot remove the only row")
    entries = M.entries[:r] + M.entries[r + 1:]
    return MatrixSpec(M.m - 1, M.n, M.k - 1, entries)


def insert_zero(M: MatrixSpec, i: int, j: int) -> MatrixSpec:
    if M.entries[i][j] is ZERO:
        raise InvalidInstance(f"cell ({i}, {j}) is already a zero")
    row = M.entries[i][:j] + (ZERO,) + M.entries[i][j + 1:]
    return MatrixSpec(M.m, M.n, M.k, M.entries[:i] + (row,) + M.entries[i + 1:])
