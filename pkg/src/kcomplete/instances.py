"""Instance files (JSON) and random instance generation."""
from __future__ import annotations

import json
import random
from fractions import Fraction
from pathlib import Path
from typing import Union

from .errors import InvalidInstance
from .matrix_model import ZERO, Hypothesis, MatrixSpec, as_rate, hypothesis_class, insert_zero, max_zero_matching


def parse_instance(doc: dict) -> MatrixSpec:
    try:
        m, n, k, grid = doc["rows"], doc["cols"], doc["k"], doc["entries"]
    except (KeyError, TypeError) as exc:
        raise InvalidInstance(f"instance must have rows, cols, k and entries: {exc}") from exc
    for name, value in (("rows", m), ("cols", n), ("k", k)):
        if not isinstance(value, int) or isinstance(value, bool):
            raise InvalidInstance(f"{name} must be an integer")
    if not isinstance(grid, list) or len(grid) != m or any(not isinstance(r, list) or len(r) != n for r in grid):
        raise InvalidInstance(f"entries must be a {m}x{n} list of lists")
    return MatrixSpec.from_grid(grid, k)


def load_instance(path: Union[str, Path]) -> MatrixSpec:
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidInstance(f"cannot read instance {path}: {exc}") from exc
    return parse_instance(doc)


def instance_to_json(M: MatrixSpec) -> dict:
    return {
        "rows": M.m,
        "cols": M.n,
        "k": M.k,
        "entries": [["zero" if r is ZERO else str(r) for r in row] for row in M.entries],
    }


def random_rate(rng: random.Random) -> Fraction:
    """Rational in [1, 10] with a small denominator."""
    q = rng.randint(1, 6)
    return Fraction(rng.randint(q, 10 * q), q)


def random_instance(rng: random.Random, max_dim: int = 5, max_k: int = 4, extra_zero_tries: int = 4) -> MatrixSpec:
    """Random rates in [1, 10] and a zero set whose maximum matching has size exactly k-1."""
    m = rng.randint(1, max_dim)
    n = rng.randint(1, max_dim)
    k = rng.randint(1, max(1, min(m, n, max_k)))
    M = MatrixSpec(m, n, k, tuple(tuple(random_rate(rng) for _ in range(n)) for _ in range(m)))
    rows = rng.sample(range(m), k - 1)
    cols = rng.sample(range(n), k - 1)
    for i, j in zip(rows, cols):
        M = insert_zero(M, i, j)
    for _ in range(rng.randint(0, extra_zero_tries)):
        i, j = rng.randrange(m), rng.randrange(n)
        if M.entries[i][j] is ZERO:
            continue
        candidate = insert_zero(M, i, j)
        if len(max_zero_matching(candidate)) == k - 1:
            M = candidate
    assert hypothesis_class(M) is Hypothesis.EXACTLY_K_MINUS_1
    return M


def random_instances(count: int, seed: int, max_dim: int = 5, max_k: int = 4) -> list[MatrixSpec]:
    rng = random.Random(seed)
    return [random_instance(rng, max_dim, max_k) for _ in range(count)]
