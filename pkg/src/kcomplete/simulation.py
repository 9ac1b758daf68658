"""Monte Carlo estimates of the optimal k-assignment value.

Random streams: sample ``i`` belongs to block ``i // BLOCK_SIZE``; each block
draws from a Philox4x64 generator seeded by ``SeedSequence(seed, spawn_key=(block,))``.
A sample is therefore a pure function of ``(seed, i)``, whatever the number of
worker processes.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from itertools import combinations, permutations
from typing import Optional, Sequence

import numpy as np

from .matrix_model import MatrixSpec, is_zero

BLOCK_SIZE = 1024
RNG_NAME = "philox4x64; SeedSequence(seed, spawn_key=(block,)); block=1024 samples"
THREADS_ENV = "KCOMPLETE_THREADS"

_INF = float("inf")


@dataclass(frozen=True)
class SampleEstimate:
    mean: float
    std_error: float
    n_samples: int
    seed: int
    t: Optional[float] = None

    def to_json(self) -> dict:
        doc = asdict(self)
        doc["n"] = doc.pop("n_samples")
        if self.t is None:
            doc.pop("t")
        return doc


def block_generator(seed: int, block: int) -> np.random.Generator:
    ss = np.random.SeedSequence(seed, spawn_key=(block,))
    return np.random.Generator(np.random.Philox(ss))


def _rates_array(M: MatrixSpec) -> np.ndarray:
    # 0.0 marks a zero entry
    return np.array([[0.0 if is_zero(r) else float(r) for r in row] for row in M.entries])


def sample_matrix(M: MatrixSpec, rng: np.random.Generator) -> np.ndarray:
    """One cost grid: zeros stay 0.0, a rate-a entry becomes -ln(U)/a."""
    rates = _rates_array(M)
    u = 1.0 - rng.random(rates.shape)
    with np.errstate(divide="ignore", invalid="ignore"):
        costs = -np.log(u) / rates
    return np.where(rates > 0, costs, 0.0)


def min_cost_k_assignment(costs, k: int) -> tuple[float, frozenset[tuple[int, int]]]:
    """Cheapest k-assignment by k rounds of shortest augmenting paths with potentials.

    Costs must be nonnegative. The returned value is summed in row order.
    """
    grid = [list(map(float, row)) for row in costs]
    m = len(grid)
    n = len(grid[0]) if m else 0
    if not 0 <= k <= min(m, n):
        raise ValueError(f"k={k} outside [0, {min(m, n)}]")
    row_to = [-1] * m
    col_to = [-1] * n
    pot_r = [0.0] * m
    pot_c = [0.0] * n

    for _ in range(k):
        dist_r = [0.0 if row_to[i] == -1 else _INF for i in range(m)]
        dist_c = [_INF] * n
        parent_c = [-1] * n
        done_r = [False] * m
        done_c = [False] * n
        target = -1
        while True:
            # pick the closest unsettled node, rows before columns on ties
            best, kind, idx = _INF, 0, -1
            for i in range(m):
                if not done_r[i] and dist_r[i] < best:
                    best, kind, idx = dist_r[i], 0, i
            for j in range(n):
                if not done_c[j] and dist_c[j] < best:
                    best, kind, idx = dist_c[j], 1, j
            if idx == -1:
                raise RuntimeError("no augmenting path; k exceeds the matching number")
            if kind == 0:
                done_r[idx] = True
                row = grid[idx]
                base = best + pot_r[idx]
                for j in range(n):
                    if done_c[j]:
                        continue
                    nd = base + row[j] - pot_c[j]
                    if nd < dist_c[j]:
                        dist_c[j] = nd
                        parent_c[j] = idx
            else:
                done_c[idx] = True
                owner = col_to[idx]
                if owner == -1:
                    target = idx
                    break
                if best < dist_r[owner]:
                    dist_r[owner] = best
        limit = dist_c[target]
        for i in range(m):
            pot_r[i] += min(dist_r[i], limit)
        for j in range(n):
            pot_c[j] += min(dist_c[j], limit)
        j = target
        while j != -1:
            i = parent_c[j]
            prev = row_to[i]
            row_to[i] = j
            col_to[j] = i
            j = prev

    cells = frozenset((i, j) for i, j in enumerate(row_to) if j != -1)
    value = 0.0
    for i, j in sorted(cells):
        value += grid[i][j]
    return value, cells


def brute_force_k_assignment(costs, k: int) -> float:
    """Minimum over every k-assignment, each summed in row order."""
    grid = [list(map(float, row)) for row in costs]
    m, n = len(grid), len(grid[0])
    best = _INF if k else 0.0
    for rows in combinations(range(m), k):
        for cols in permutations(range(n), k):
            value = 0.0
            for i, j in zip(rows, cols):
                value += grid[i][j]
            if value < best:
                best = value
    return best


def _block_values(args) -> np.ndarray:
    M, seed, block, count = args
    rng = block_generator(seed, block)
    out = np.empty(count)
    for s in range(count):
        out[s] = min_cost_k_assignment(sample_matrix(M, rng), M.k)[0]
    return out


def thread_cap() -> int:
    raw = os.environ.get(THREADS_ENV)
    cpus = os.cpu_count() or 1
    if raw:
        try:
            return max(1, min(int(raw), cpus))
        except ValueError:
            pass
    return cpus


def sample_values(M: MatrixSpec, n_samples: int, seed: int, workers: Optional[int] = None) -> np.ndarray:
    """Optimal k-assignment values of samples 0..n_samples-1, in index order."""
    if n_samples < 2:
        raise ValueError("need at least two samples")
    tasks = []
    for block, start in enumerate(range(0, n_samples, BLOCK_SIZE)):
        tasks.append((M, seed, block, min(BLOCK_SIZE, n_samples - start)))
    workers = thread_cap() if workers is None else max(1, workers)
    workers = min(workers, len(tasks))
    if workers == 1:
        parts = [_block_values(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_block_values, tasks))
    return np.concatenate(parts)


def _estimate(values: np.ndarray, seed: int, t: Optional[float]) -> SampleEstimate:
    n = len(values)
    return SampleEstimate(float(values.mean()), float(values.std(ddof=1) / math.sqrt(n)), n, seed, t)


def estimate_expectation(M: MatrixSpec, n_samples: int, seed: int, workers: Optional[int] = None,
                         values: Optional[np.ndarray] = None) -> SampleEstimate:
    if values is None:
        values = sample_values(M, n_samples, seed, workers)
    return _estimate(values, seed, None)


def estimate_laplace(M: MatrixSpec, t: float, n_samples: int, seed: int, workers: Optional[int] = None,
                     values: Optional[np.ndarray] = None) -> SampleEstimate:
    if values is None:
        values = sample_values(M, n_samples, seed, workers)
    return _estimate(np.exp(-float(t) * values), seed, float(t))


def z_score(estimate: SampleEstimate, exact: float) -> float:
    if estimate.std_error == 0:
        return 0.0 if estimate.mean == exact else math.copysign(_INF, estimate.mean - exact)
    return (estimate.mean - exact) / estimate.std_error


def parisi_value(k: int) -> float:
    return math.fsum(1.0 / (i * i) for i in range(1, k + 1))
