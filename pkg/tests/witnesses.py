"""Explicit codes with locality, used as feasibility witnesses for the bounds."""

import itertools

import numpy as np

from lrcdual.code import LinearCode
from lrcdual.gf import field_new
from lrcdual.linalg import Matrix, kernel_basis


def from_parity_checks(q, H):
    F = field_new(q)
    return LinearCode(F, kernel_basis(Matrix(F, np.array(H, dtype=np.int64))))


def two_block_parity(q, block):
    """Dual spanned by the indicators of two disjoint blocks: [2b, 2b-2, 2], locality b-1."""
    n = 2 * block
    H = [[1] * block + [0] * block, [0] * block + [1] * block]
    return from_parity_checks(q, H), n


def block_hamming(blocks, m, include_zero):
    """Binary code whose check columns are (block indicator, v) for v in F_2^m."""
    vs = [v for v in itertools.product((0, 1), repeat=m) if include_zero or any(v)]
    cols = [tuple(int(b == c) for c in range(blocks)) + v for b in range(blocks) for v in vs]
    return from_parity_checks(2, np.array(cols).T)


def binary_12_7_3():
    """Three blocks of four; every column distinct, so d >= 3 with locality 3."""
    return block_hamming(3, 2, include_zero=True)


def binary_14_9_4():
    """Two blocks of seven; an odd number of block indicators never cancels, so d >= 4."""
    return block_hamming(2, 3, include_zero=False)


def ternary_golay():
    """The [11, 6, 5] cyclic ternary Golay code, generator x^5 + x^4 - x^3 + x^2 - 1."""
    g = [2, 0, 1, 2, 1, 1]  # low degree first
    G = np.zeros((6, 11), dtype=np.int64)
    for i in range(6):
        G[i, i : i + 6] = g
    return LinearCode(field_new(3), G)


def ternary_simplex():
    """[13, 3, 9]: one column per point of PG(2, 3)."""
    cols = [v for v in itertools.product(range(3), repeat=3) if any(v) and next(x for x in v if x) == 1]
    return LinearCode(field_new(3), np.array(cols).T)


def binary_20_3_11():
    """Points of PG(2, 2) with multiplicities 3,3,3,3,3,3,2; every line carries <= 9."""
    pts = [v for v in itertools.product((0, 1), repeat=3) if any(v)]
    cols = [p for p, m in zip(pts, [3, 3, 3, 3, 3, 3, 2]) for _ in range(m)]
    return LinearCode(field_new(2), np.array(cols).T)
