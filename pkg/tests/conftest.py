import itertools

import numpy as np
from hypothesis import settings

from lrcdual.gf import field_new

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def naive_span(q: int, rows) -> set[tuple[int, ...]]:
    """All linear combinations of ``rows``, by plain Python loops over field tables."""
    F = field_new(q)
    rows = [list(r) for r in rows]
    n = len(rows[0]) if rows else 0
    out = set()
    for coefs in itertools.product(range(q), repeat=len(rows)):
        w = [0] * n
        for a, r in zip(coefs, rows):
            for t in range(n):
                w[t] = F.add(w[t], F.mul(a, r[t]))
        out.add(tuple(w))
    return out


def random_matrix(rng: np.random.Generator, q: int, rows: int, cols: int) -> np.ndarray:
    return rng.integers(0, q, (rows, cols), dtype=np.int64)
