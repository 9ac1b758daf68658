"""Closed-form expected value and Laplace transform from the critical lattice."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .cover_lattice import Cover, CriticalLattice
from .errors import NonGenericError
from .incidence import IntervalFunction, chain_weight, enumerate_chains, invert


@dataclass(frozen=True)
class MixtureTerm:
    coeff: Fraction
    rate: Fraction
    cover: Optional[Cover] = None


@dataclass(frozen=True)
class ExpMixture:
    """Signed exponential mixture: L(t) = sum c * rate / (rate + t)."""

    terms: tuple[MixtureTerm, ...]

    def __post_init__(self):
        for term in self.terms:
            if term.rate <= 0:
                raise ValueError(f"mixture rate must be positive, got {term.rate}")

    def total(self) -> Fraction:
        return sum((t.coeff for t in self.terms), Fraction(0))

    def collapsed(self) -> dict[Fraction, Fraction]:
        """Coefficients merged by rate, dropping those that cancel to zero.

        Two lattice elements may share a rate when they are incomparable, so
        this is the form to compare against a partial-fraction expansion.
        """
        out: dict[Fraction, Fraction] = {}
        for t in self.terms:
            out[t.rate] = out.get(t.rate, Fraction(0)) + t.coeff
        return {r: c for r, c in sorted(out.items()) if c != 0}

    def mean(self) -> Fraction:
        return sum((t.coeff / t.rate for t in self.terms), Fraction(0))

    def second_moment(self) -> Fraction:
        return sum((2 * t.coeff / (t.rate * t.rate) for t in self.terms), Fraction(0))

    def eval(self, t) -> Fraction:
        return sum((term.coeff * term.rate / (term.rate + t) for term in self.terms), Fraction(0))

    def density(self, x: float) -> float:
        return math.fsum(float(t.coeff) * float(t.rate) * math.exp(-float(t.rate) * x) for t in self.terms)

    def cdf(self, x: float) -> float:
        return 1.0 - math.fsum(float(t.coeff) * math.exp(-float(t.rate) * x) for t in self.terms)

    def to_json(self) -> list[dict]:
        out = []
        for t in self.terms:
            doc = {"rate": str(t.rate), "coeff": str(t.coeff)}
            if t.cover is not None:
                doc["cover"] = {"rows": [i + 1 for i in sorted(t.cover.rows)],
                                "cols": [j + 1 for j in sorted(t.cover.cols)]}
            out.append(doc)
        return out


@dataclass(frozen=True)
class GenericityReport:
    violations: tuple[tuple[int, int], ...] = field(default_factory=tuple)

    @property
    def generic(self) -> bool:
        return not self.violations


def rate_function(L: CriticalLattice) -> IntervalFunction:
    """f(a, b) = rate of the intersection of rectangles a <= b."""
    return IntervalFunction.from_callable(L.poset, L.cap_rate, Fraction(0))


def expectation_interval_form(L: CriticalLattice) -> Fraction:
    inverse = invert(rate_function(L))
    return sum((inverse(a, b) for a, b in L.poset.intervals()), Fraction(0))


def expectation_chain_form(L: CriticalLattice) -> Fraction:
    f = rate_function(L)
    return sum((chain_weight(f, chain) for chain in enumerate_chains(L.poset)), Fraction(0))


def genericity(L: CriticalLattice) -> GenericityReport:
    bad = []
    for a, b in L.poset.intervals():
        if a != b and L.rate(a) == L.rate(b):
            bad.append((a, b))
    return GenericityReport(tuple(bad))


def _require_generic(L: CriticalLattice) -> None:
    report = genericity(L)
    if not report.generic:
        raise NonGenericError(report)


def _down_coefficient(L: CriticalLattice, r: int) -> Fraction:
    # chains R_1 < ... < R_s = r, sign (-1)^s
    base = L.rate(r)
    total = Fraction(0)
    for chain in enumerate_chains(L.poset, None, r):
        term = Fraction((-1) ** len(chain))
        for x, y in zip(chain, chain[1:]):
            term *= (L.cap_rate(x, y) - base) / (L.rate(x) - base)
        total += term
    return total


def _up_coefficient(L: CriticalLattice, r: int) -> Fraction:
    # chains r = R_s < ... < R_u, sign (-1)^(u-s+1)
    base = L.rate(r)
    total = Fraction(0)
    for chain in enumerate_chains(L.poset, r, None):
        term = Fraction((-1) ** len(chain))
        for x, y in zip(chain, chain[1:]):
            term *= (L.cap_rate(y, x) - base) / (L.rate(y) - base)
        total += term
    return total


def laplace_chain_form(L: CriticalLattice) -> ExpMixture:
    _require_generic(L)
    terms = []
    for r in L.poset.linear_extension:
        coeff = _down_coefficient(L, r) * _up_coefficient(L, r)
        terms.append(MixtureTerm(coeff, L.rate(r), L.elements[r].cover))
    return ExpMixture(tuple(terms))


def shifted_rate_function(L: CriticalLattice, r: int) -> tuple[IntervalFunction, list[int]]:
    """g_r on the elements comparable to r, with the map back to lattice indices.

    Elements incomparable to r never lie in an interval ending or starting
    at r, and may legitimately share its rate, so they are left out.
    """
    keep = [c for c in L.poset.linear_extension if L.comparable(c, r)]
    sub, back = L.poset.subposet(keep)
    base = L.rate(r)
    local_r = keep.index(r)

    def g(x: int, y: int) -> Fraction:
        if x == y == local_r:
            return Fraction(1)
        return L.cap_rate(back[x], back[y]) - base

    return IntervalFunction.from_callable(sub, g, Fraction(0)), back


def laplace_inverse_form(L: CriticalLattice) -> ExpMixture:
    _require_generic(L)
    terms = []
    for r in L.poset.linear_extension:
        g, back = shifted_rate_function(L, r)
        ginv = invert(g)
        local_r = back.index(r)
        P = g.poset
        down = sum((ginv(a, local_r) for a in P.down(local_r)), Fraction(0))
        up = sum((ginv(local_r, b) for b in P.up(local_r)), Fraction(0))
        terms.append(MixtureTerm(down * up, L.rate(r), L.elements[r].cover))
    return ExpMixture(tuple(terms))


def mixture_stats(mix: ExpMixture) -> tuple[Fraction, Fraction]:
    return mix.mean(), mix.second_moment()


def mixture_eval(mix: ExpMixture, t) -> Fraction:
    if t < 0:
        raise ValueError("the transform is evaluated at t >= 0")
    return mix.eval(Fraction(t))


def mixture_density(mix: ExpMixture, x: float) -> float:
    return mix.density(x)


def mixture_cdf(mix: ExpMixture, xs: Sequence[float]) -> list[float]:
    return [mix.cdf(x) for x in xs]
