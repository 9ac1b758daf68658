"""Minimum covers of the zero set and the lattice of critical rectangles."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations

from .errors import InvalidInstance, LatticeError
from .incidence import FinitePoset
from .matrix_model import MatrixSpec, rate_sum, require_exactly_k_minus_1, zero_positions


@dataclass(frozen=True, order=True)
class Cover:
    rows: frozenset[int]
    cols: frozenset[int]

    def size(self) -> int:
        return len(self.rows) + len(self.cols)

    def covers(self, cells) -> bool:
        return all(i in self.rows or j in self.cols for i, j in cells)

    def sort_key(self):
        return (len(self.cols), sorted(self.cols), sorted(self.rows))

    def __str__(self):
        parts = [f"r{i + 1}" for i in sorted(self.rows)] + [f"c{j + 1}" for j in sorted(self.cols)]
        return "{" + ",".join(parts) + "}"


@dataclass(frozen=True)
class Rectangle:
    """Cells left uncovered by a cover, with their total rate."""

    cover: Cover
    rowset: frozenset[int]
    colset: frozenset[int]
    rate: Fraction


def enumerate_covers(M: MatrixSpec) -> list[Cover]:
    """All covers of the zeros using exactly k-1 rows and columns.

    Any such cover is minimum (Konig), so once the rows are chosen the
    columns are forced: they are the columns of the remaining zeros.
    """
    require_exactly_k_minus_1(M)
    zeros = zero_positions(M)
    budget = M.k - 1
    found = []
    for r in range(min(budget, M.m) + 1):
        for rows in combinations(range(M.m), r):
            chosen = frozenset(rows)
            cols = frozenset(j for i, j in zeros if i not in chosen)
            if len(cols) == budget - r:
                found.append(Cover(chosen, cols))
    if not found:
        raise LatticeError("no (k-1)-cover found for an instance with a (k-1) zero matching")
    return sorted(found, key=Cover.sort_key)


def rectangle_of(M: MatrixSpec, cover: Cover) -> Rectangle:
    rowset = frozenset(range(M.m)) - cover.rows
    colset = frozenset(range(M.n)) - cover.cols
    try:
        rate = rate_sum(M, sorted(rowset), sorted(colset))
    except TypeError as exc:
        raise InvalidInstance(f"cover {cover} leaves a zero uncovered") from exc
    return Rectangle(cover, rowset, colset, rate)


def leq(a: Rectangle | Cover, b: Rectangle | Cover) -> bool:
    """Columns of a's cover inside b's, rows of a's cover containing b's."""
    ca = a.cover if isinstance(a, Rectangle) else a
    cb = b.cover if isinstance(b, Rectangle) else b
    return ca.cols <= cb.cols and ca.rows >= cb.rows


def intersection_rate(M: MatrixSpec, a: Rectangle, b: Rectangle) -> Fraction:
    rows = sorted(a.rowset & b.rowset)
    cols = sorted(a.colset & b.colset)
    try:
        return rate_sum(M, rows, cols)
    except TypeError as exc:
        raise InvalidInstance("a zero lies in the intersection of two rectangles") from exc


@dataclass(frozen=True)
class CriticalLattice:
    """Critical rectangles ordered by a linear extension, with the order relation."""

    matrix: MatrixSpec
    elements: tuple[Rectangle, ...]
    relation: tuple[tuple[bool, ...], ...]
    bottom: int
    top: int

    def __len__(self):
        return len(self.elements)

    def rate(self, a: int) -> Fraction:
        return self.elements[a].rate

    def leq(self, a: int, b: int) -> bool:
        return self.relation[a][b]

    def comparable(self, a: int, b: int) -> bool:
        return self.relation[a][b] or self.relation[b][a]

    @cached_property
    def poset(self) -> FinitePoset:
        return FinitePoset(self.relation)

    @cached_property
    def _meet_rates(self) -> dict[tuple[int, int], Fraction]:
        return {}

    def cap_rate(self, a: int, b: int) -> Fraction:
        """Rate of the intersection of rectangles a and b (memoized)."""
        key = (a, b) if a <= b else (b, a)
        cache = self._meet_rates
        if key not in cache:
            cache[key] = intersection_rate(self.matrix, self.elements[a], self.elements[b])
        return cache[key]

    def index_of(self, cover: Cover) -> int:
        for idx, el in enumerate(self.elements):
            if el.cover == cover:
                return idx
        raise KeyError(cover)

    def hasse_edges(self) -> list[tuple[int, int]]:
        return self.poset.cover_relations()


def build_lattice(M: MatrixSpec) -> CriticalLattice:
    covers = enumerate_covers(M)
    elements = tuple(rectangle_of(M, c) for c in covers)
    relation = tuple(tuple(leq(a, b) for b in elements) for a in elements)
    size = len(elements)
    bottoms = [a for a in range(size) if all(relation[a][b] for b in range(size))]
    tops = [b for b in range(size) if all(relation[a][b] for a in range(size))]
    if len(bottoms) != 1 or len(tops) != 1:
        raise LatticeError(f"cover poset lacks a unique bottom/top (bottoms={bottoms}, tops={tops})")
    return CriticalLattice(M, elements, relation, bottoms[0], tops[0])


def meet_cover(a: Cover, b: Cover) -> Cover:
    return Cover(a.rows | b.rows, a.cols & b.cols)


def join_cover(a: Cover, b: Cover) -> Cover:
    return Cover(a.rows & b.rows, a.cols | b.cols)
