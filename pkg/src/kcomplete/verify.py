"""Cross-method identity checks on a single instance, and reproducer shrinking."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable

from .cover_lattice import build_lattice, join_cover, meet_cover
from .errors import HypothesisError, KCompleteError, RepeatedPoleError
from .formulas import (
    expectation_chain_form,
    expectation_interval_form,
    genericity,
    laplace_chain_form,
    laplace_inverse_form,
)
from .matrix_model import (
    ZERO,
    Hypothesis,
    MatrixSpec,
    forced_rows,
    hypothesis_class,
    max_zero_matching,
    zero_positions,
)
from .recursion import (
    expectation_recursive,
    laplace_recursive,
    partial_fractions,
    peel_count,
    transform_moments,
)

DENSITY_GRID = [i / 10 for i in range(51)]


@dataclass
class CheckReport:
    hypothesis: Hypothesis
    generic: bool | None = None
    passed: list[str] = field(default_factory=list)
    failed: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failed

    def record(self, name: str, outcome: bool, detail: str = "") -> None:
        if outcome:
            self.passed.append(name)
        else:
            self.failed.append(f"{name}: {detail}" if detail else name)


def min_cover_size(M: MatrixSpec) -> int:
    """Smallest number of lines covering the zeros, by enumerating row subsets."""
    zeros = zero_positions(M)
    best = M.m + M.n
    for r in range(M.m + 1):
        for rows in combinations(range(M.m), r):
            cols = {j for i, j in zeros if i not in rows}
            best = min(best, r + len(cols))
    return best


def check_instance(M: MatrixSpec) -> CheckReport:
    cls = hypothesis_class(M)
    report = CheckReport(cls)
    matching = len(max_zero_matching(M))
    report.record("konig", matching == min_cover_size(M), f"matching {matching} vs cover {min_cover_size(M)}")
    if cls is Hypothesis.INSUFFICIENT:
        raise HypothesisError("instance has fewer than k-1 independent zeros")
    if cls is Hypothesis.ZERO_COST_K:
        report.record("zero_cost_expectation", expectation_recursive(M) == 0)
        report.record("zero_cost_laplace", laplace_recursive(M) == 1)
        return report

    L = build_lattice(M)
    P = L.poset
    report.record("partial_order", P.is_partial_order())
    report.record(
        "linear_extension",
        all(a <= b for a in range(len(L)) for b in range(len(L)) if L.leq(a, b)),
    )
    covers = {el.cover for el in L.elements}
    closed = all(meet_cover(a, b) in covers and join_cover(a, b) in covers for a in covers for b in covers)
    report.record("meet_join_closure", closed)
    report.record("bottom_top", all(L.leq(L.bottom, x) and L.leq(x, L.top) for x in range(len(L))))
    common_rows = frozenset.intersection(*(c.rows for c in covers))
    fr = forced_rows(M)
    report.record("forced_rows", fr == common_rows == L.elements[L.top].cover.rows, f"{fr} vs {common_rows}")
    report.record("positive_rates", all(el.rate > 0 for el in L.elements))

    e_int = expectation_interval_form(L)
    e_chain = expectation_chain_form(L)
    e_rec = expectation_recursive(M)
    report.record("expectation_forms", e_int == e_chain == e_rec, f"interval {e_int}, chains {e_chain}, recursion {e_rec}")

    rf = laplace_recursive(M)
    mean, second = transform_moments(rf)
    report.record("laplace_at_zero", rf(0) == 1, f"L(0) = {rf(0)}")
    report.record("laplace_mean", mean == e_rec, f"-L'(0) = {mean} vs {e_rec}")
    report.record("variance_nonnegative", second - mean * mean >= 0)
    steps = peel_count(M)
    report.record("degree_bound", rf.num.degree < rf.den.degree <= steps,
                  f"deg num {rf.num.degree}, deg den {rf.den.degree}, peeling steps {steps}")

    gen = genericity(L)
    report.generic = gen.generic
    if gen.generic:
        chain_mix = laplace_chain_form(L)
        inv_mix = laplace_inverse_form(L)
        report.record("laplace_forms", [t.coeff for t in chain_mix.terms] == [t.coeff for t in inv_mix.terms])
        report.record("mixture_normalized", chain_mix.total() == 1, f"sum c = {chain_mix.total()}")
        report.record("mixture_mean", chain_mix.mean() == e_int, f"{chain_mix.mean()} vs {e_int}")
        pf = partial_fractions(rf)
        report.record("poles_are_lattice_rates", set(pf.collapsed()) <= {el.rate for el in L.elements})
        report.record("mixture_vs_recursion", chain_mix.collapsed() == pf.collapsed(),
                      f"{chain_mix.collapsed()} vs {pf.collapsed()}")
        report.record("density_nonnegative", all(chain_mix.density(x) >= -1e-12 for x in DENSITY_GRID))
    else:
        try:
            pf = partial_fractions(rf)
        except RepeatedPoleError:
            pass
        else:
            report.record("recursion_mixture_normalized", pf.total() == 1 and pf.mean() == e_rec)
    return report


def _still_fails(M: MatrixSpec, failing: Callable[[MatrixSpec], bool]) -> bool:
    try:
        return failing(M)
    except KCompleteError:
        return False


def _candidates(M: MatrixSpec):
    for r in range(M.m):
        rest = M.entries[:r] + M.entries[r + 1:]
        for k in (M.k, M.k - 1):
            if M.m > 1 and 0 <= k <= min(M.m - 1, M.n):
                yield MatrixSpec(M.m - 1, M.n, k, rest)
    for c in range(M.n):
        rest = tuple(row[:c] + row[c + 1:] for row in M.entries)
        for k in (M.k, M.k - 1):
            if M.n > 1 and 0 <= k <= min(M.m, M.n - 1):
                yield MatrixSpec(M.m, M.n - 1, k, rest)
    if M.k > 1:
        yield M.with_k(M.k - 1)
    for i in range(M.m):
        for j in range(M.n):
            if M.entries[i][j] is ZERO or M.entries[i][j] == 1:
                continue
            row = M.entries[i][:j] + (Fraction(1),) + M.entries[i][j + 1:]
            yield MatrixSpec(M.m, M.n, M.k, M.entries[:i] + (row,) + M.entries[i + 1:])


def shrink(M: MatrixSpec, failing: Callable[[MatrixSpec], bool] | None = None) -> MatrixSpec:
    """Greedily drop rows, columns or k, and reset rates to 1, while the failure persists."""
    if failing is None:
        failing = lambda X: not check_instance(X).ok  # noqa: E731
    improved = True
    while improved:
        improved = False
        for cand in _candidates(M):
            if hypothesis_class(cand) is Hypothesis.INSUFFICIENT:
                continue
            if _still_fails(cand, failing):
                M = cand
                improved = True
                break
    return M
