"""Exact expected value and Laplace transform by recursive peeling.

Each step: drop rows that lie in every (k-1)-cover, then look at the
minimum X over the rectangle left by the column-only cover. X has rate
I(R) and its location picks a row i with probability I(K_i)/I(R). If
the new zero completes a zero k-assignment the process stops; otherwise
row i is used by every maximum zero matching, and the problem continues
on the matrix with row i removed and k lowered by one.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import sympy

from .errors import HypothesisError, InvalidInstance, RepeatedPoleError
from .formulas import ExpMixture, MixtureTerm
from .matrix_model import (
    Hypothesis,
    MatrixSpec,
    avoidable_rows,
    forced_rows,
    hypothesis_class,
    max_zero_matching,
    rate_sum,
    remove_row,
    require_exactly_k_minus_1,
)
from .polynomial import Polynomial, RationalFunction, poly_gcd


def essential_matching_rows(M: MatrixSpec) -> frozenset[int]:
    """Rows matched by every maximum zero matching of a normalized instance."""
    require_exactly_k_minus_1(M)
    if forced_rows(M):
        raise InvalidInstance("instance still has forced rows; normalize first")
    return frozenset(range(M.m)) - avoidable_rows(M)


def _check_applicable(M: MatrixSpec) -> Hypothesis:
    cls = hypothesis_class(M)
    if cls is Hypothesis.INSUFFICIENT:
        raise HypothesisError(f"zero set has a maximum matching of size {len(max_zero_matching(M))} < k-1 = {M.k - 1}")
    return cls


def normalize(M: MatrixSpec) -> MatrixSpec:
    """Remove forced rows (each lowers k by one) until none remain."""
    while True:
        rows = forced_rows(M)
        if not rows:
            return M
        M = remove_row(M, max(rows))


def peel_step(M: MatrixSpec):
    """One peeling step on a normalized instance.

    Returns the rate of the column-only rectangle, the probability that its
    minimum completes a zero k-assignment, and (weight, submatrix) branches.
    """
    zero_cols = frozenset(j for _, j in max_zero_matching(M))
    free_cols = [j for j in range(M.n) if j not in zero_cols]
    total = rate_sum(M, range(M.m), free_cols)
    essential = essential_matching_rows(M)
    stop = Fraction(0)
    branches = []
    for i in range(M.m):
        weight = rate_sum(M, [i], free_cols) / total
        if i in essential:
            branches.append((weight, remove_row(M, i)))
        else:
            stop += weight
    return total, stop, branches


def _key(M: MatrixSpec):
    return (M.k, M.entries)


def expectation_recursive(M: MatrixSpec) -> Fraction:
    if _check_applicable(M) is Hypothesis.ZERO_COST_K:
        return Fraction(0)
    return _expectation(_key(M))


@lru_cache(maxsize=4096)
def _expectation(key) -> Fraction:
    k, entries = key
    M = MatrixSpec(len(entries), len(entries[0]), k, entries)
    if hypothesis_class(M) is Hypothesis.ZERO_COST_K:
        return Fraction(0)
    M = normalize(M)
    if M.k == 0:
        return Fraction(0)
    total, _, branches = peel_step(M)
    value = 1 / total
    for weight, sub in branches:
        value += weight * _expectation(_key(sub))
    return value


def laplace_recursive(M: MatrixSpec) -> RationalFunction:
    if _check_applicable(M) is Hypothesis.ZERO_COST_K:
        return RationalFunction.const(1)
    return _laplace(_key(M))


@lru_cache(maxsize=4096)
def _laplace(key) -> RationalFunction:
    k, entries = key
    M = MatrixSpec(len(entries), len(entries[0]), k, entries)
    if hypothesis_class(M) is Hypothesis.ZERO_COST_K:
        return RationalFunction.const(1)
    M = normalize(M)
    if M.k == 0:
        return RationalFunction.const(1)
    total, stop, branches = peel_step(M)
    inner = RationalFunction.const(stop)
    for weight, sub in branches:
        inner = inner + _laplace(_key(sub)) * weight
    return RationalFunction.exp_transform(total) * inner


def peel_count(M: MatrixSpec) -> int:
    """Number of peeling steps in the whole recursion tree.

    Each step multiplies in one linear factor (I(R) + t), so this bounds
    the degree of the transform's denominator.
    """
    if hypothesis_class(M) is Hypothesis.ZERO_COST_K:
        return 0
    M = normalize(M)
    if M.k == 0:
        return 0
    _, _, branches = peel_step(M)
    return 1 + sum(peel_count(sub) for _, sub in branches)


def _linear_roots(p: Polynomial) -> list[Fraction]:
    """Rational roots of a polynomial that splits into linear factors over Q."""
    t = sympy.Symbol("t")
    expr = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(p.coeffs)], t, domain="QQ")
    roots = []
    for factor, mult in expr.factor_list()[1]:
        if factor.degree() != 1:
            raise ValueError(f"denominator factor {factor.as_expr()} has no rational root")
        a, b = factor.all_coeffs()
        root = Fraction(int((-b / a).p), int((-b / a).q))
        roots.extend([root] * mult)
    return roots


def partial_fractions(rf: RationalFunction) -> ExpMixture:
    """Split a transform with simple poles at -r (r > 0) into sum c * r / (r + t)."""
    if rf.num.degree >= rf.den.degree:
        raise ValueError("expected a strictly proper rational function")
    repeated = poly_gcd(rf.den, rf.den.derivative())
    if repeated.degree > 0:
        raise RepeatedPoleError(_linear_roots(repeated)[0])
    dprime = rf.den.derivative()
    terms = []
    for root in sorted(_linear_roots(rf.den), reverse=True):
        rate = -root
        if rate <= 0:
            raise ValueError(f"pole at t = {root} is not at a negative rate")
        # residue at t = -rate equals coeff * rate
        coeff = rf.num(root) / (dprime(root) * rate)
        terms.append(MixtureTerm(coeff, rate))
    return ExpMixture(tuple(terms))


def transform_moments(rf: RationalFunction) -> tuple[Fraction, Fraction]:
    """Mean and second moment from derivatives of the transform at t = 0."""
    d1 = rf.derivative()
    return -d1(0), d1.derivative()(0)
