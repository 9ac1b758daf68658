"""Incidence algebra of a finite poset over an exact field.

Scalars only need ``+``, ``-``, ``*``, ``/`` and comparison with 0, so
Fractions and :class:`~kcomplete.polynomial.RationalFunction` both work.
"""
from __future__ import annotations

from functools import cached_property
from typing import Callable, Iterator, Mapping, Optional, Sequence

from .errors import SingularError


class FinitePoset:
    """Poset on ``range(size)`` given by an explicit boolean relation ``leq[a][b]``."""

    def __init__(self, leq: Sequence[Sequence[bool]]):
        self.leq = tuple(tuple(bool(x) for x in row) for row in leq)
        self.size = len(self.leq)
        if any(len(row) != self.size for row in self.leq):
            raise ValueError("order relation must be square")

    def is_partial_order(self) -> bool:
        r, n = self.leq, self.size
        if not all(r[a][a] for a in range(n)):
            return False
        for a in range(n):
            for b in range(n):
                if a != b and r[a][b] and r[b][a]:
                    return False
                if r[a][b]:
                    if any(r[b][c] and not r[a][c] for c in range(n)):
                        return False
        return True

    @cached_property
    def linear_extension(self) -> tuple[int, ...]:
        # the number of elements below a strictly grows along the order
        below = [sum(self.leq[c][a] for c in range(self.size)) for a in range(self.size)]
        return tuple(sorted(range(self.size), key=lambda a: (below[a], a)))

    @cached_property
    def _position(self) -> dict[int, int]:
        return {a: p for p, a in enumerate(self.linear_extension)}

    def lt(self, a: int, b: int) -> bool:
        return a != b and self.leq[a][b]

    def intervals(self) -> Iterator[tuple[int, int]]:
        for a in self.linear_extension:
            for b in self.linear_extension:
                if self.leq[a][b]:
                    yield a, b

    def between(self, a: int, b: int) -> list[int]:
        """Elements of the closed interval [a, b] in linear-extension order."""
        return [c for c in self.linear_extension if self.leq[a][c] and self.leq[c][b]]

    def up(self, a: int) -> list[int]:
        return [c for c in self.linear_extension if self.leq[a][c]]

    def down(self, a: int) -> list[int]:
        return [c for c in self.linear_extension if self.leq[c][a]]

    def cover_relations(self) -> list[tuple[int, int]]:
        """Hasse diagram edges (a, b): a < b with nothing strictly between."""
        edges = []
        for a, b in self.intervals():
            if a != b and len(self.between(a, b)) == 2:
                edges.append((a, b))
        return edges

    def subposet(self, keep: Sequence[int]) -> tuple["FinitePoset", list[int]]:
        """Induced subposet on ``keep``; returns it with the map new index -> old index."""
        keep = list(keep)
        rel = [[self.leq[a][b] for b in keep] for a in keep]
        return FinitePoset(rel), keep


def enumerate_chains(
    P: FinitePoset, start: Optional[int] = None, end: Optional[int] = None
) -> list[tuple[int, ...]]:
    """All nonempty strictly increasing chains, optionally pinned to a first and/or last element."""
    order = P.linear_extension
    pos = {a: i for i, a in enumerate(order)}
    out: list[tuple[int, ...]] = []

    def extend(chain: list[int]):
        last = chain[-1]
        if end is None or last == end:
            out.append(tuple(chain))
        if end is not None and last == end:
            return
        for c in order[pos[last] + 1:]:
            if not P.lt(last, c):
                continue
            if end is not None and not P.leq[c][end]:
                continue
            chain.append(c)
            extend(chain)
            chain.pop()

    firsts = order if start is None else (start,)
    for a in firsts:
        if end is not None and not P.leq[a][end]:
            continue
        extend([a])
    return out


class IntervalFunction:
    """A function on the intervals a <= b of a poset; zero off the intervals."""

    def __init__(self, poset: FinitePoset, values: Mapping[tuple[int, int], object], zero=0):
        self.poset = poset
        self.zero = zero
        self.values = {}
        for (a, b), v in values.items():
            if not poset.leq[a][b]:
                if v != 0:
                    raise ValueError(f"value given off the intervals at ({a}, {b})")
                continue
            self.values[(a, b)] = v

    @classmethod
    def from_callable(cls, poset: FinitePoset, fn: Callable[[int, int], object], zero=0) -> "IntervalFunction":
        return cls(poset, {(a, b): fn(a, b) for a, b in poset.intervals()}, zero)

    @classmethod
    def delta(cls, poset: FinitePoset, one=1, zero=0) -> "IntervalFunction":
        return cls(poset, {(a, a): one for a in range(poset.size)}, zero)

    def __call__(self, a: int, b: int):
        return self.values.get((a, b), self.zero)

    def __eq__(self, other):
        if not isinstance(other, IntervalFunction) or other.poset.leq != self.poset.leq:
            return NotImplemented
        return all(self(a, b) == other(a, b) for a, b in self.poset.intervals())

    def __mul__(self, other: "IntervalFunction") -> "IntervalFunction":
        P = self.poset
        out = {}
        for a, b in P.intervals():
            acc = self.zero
            for c in P.between(a, b):
                acc = acc + self(a, c) * other(c, b)
            out[(a, b)] = acc
        return IntervalFunction(P, out, self.zero)

    def matrix(self) -> list[list]:
        """Upper-triangular matrix in the poset's linear extension."""
        order = self.poset.linear_extension
        return [[self(a, b) for b in order] for a in order]

    def invert(self) -> "IntervalFunction":
        return invert(self)


def invert(f: IntervalFunction) -> IntervalFunction:
    """Inverse under convolution, by back-substitution on the triangular matrix."""
    P = f.poset
    for a in P.linear_extension:
        if f(a, a) == 0:
            raise SingularError(a)
    g: dict[tuple[int, int], object] = {}
    for a in reversed(P.linear_extension):
        inv_diag = 1 / f(a, a)
        g[(a, a)] = inv_diag
        for b in P.up(a):
            if b == a:
                continue
            acc = f.zero
            for c in P.between(a, b):
                if c != a:
                    acc = acc + f(a, c) * g[(c, b)]
            g[(a, b)] = -(acc * inv_diag)
    return IntervalFunction(P, g, f.zero)


def chain_weight(f: IntervalFunction, chain: Sequence[int]):
    """Signed chain term: (-1)^(s-1) prod f(g_i, g_{i+1}) / prod f(g_i, g_i)."""
    term = 1 / f(chain[0], chain[0])
    for x, y in zip(chain, chain[1:]):
        term = -(term * f(x, y) / f(y, y))
    return term


def invert_via_chains(f: IntervalFunction, a: int, b: int):
    """One entry of the inverse as a signed sum over chains from a to b."""
    P = f.poset
    if not P.leq[a][b]:
        raise ValueError(f"{a} is not below {b}")
    for c in P.between(a, b):
        if f(c, c) == 0:
            raise SingularError(c)
    acc = f.zero
    for chain in enumerate_chains(P, a, b):
        acc = acc + chain_weight(f, chain)
    return acc
