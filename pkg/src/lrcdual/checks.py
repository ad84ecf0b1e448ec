"""Identity checks run against enumeration, one function per property.

Each check takes a :class:`LinearCode` and returns True/False; they back
the ``verify`` subcommand and the acceptance suite.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .code import LinearCode
from .transform import TransformError, macwilliams, theorem5_eval


def refined_dual_roundtrip(C: LinearCode) -> bool:
    """Refined distribution of C from that of its dual, and the reverse."""
    q, n = C.field.q, C.n
    try:
        forward = theorem5_eval(C.dual_refined_weight_distribution(), n, q, C.dual_size)
        backward = theorem5_eval(C.refined_weight_distribution(), n, q, C.size)
    except TransformError:
        return False
    return forward == C.refined_weight_distribution() and backward == C.dual_refined_weight_distribution()


def weight_marginals(C: LinearCode) -> bool:
    for W, R in ((C.weight_distribution(), C.refined_weight_distribution()),
                 (C.dual_weight_distribution(), C.dual_refined_weight_distribution())):
        for i in range(1, C.n + 1):
            total = sum(R.entries[i - 1])
            if total % i or total // i != W[i]:
                return False
    return True


def macwilliams_identity(C: LinearCode) -> bool:
    q = C.field.q
    try:
        return (macwilliams(C.weight_distribution(), q, C.size) == C.dual_weight_distribution()
                and macwilliams(C.dual_weight_distribution(), q, C.dual_size) == C.weight_distribution())
    except TransformError:
        return False


def recovery_replay(C: LinearCode) -> bool:
    """Every coordinate's recovery set rebuilds the symbol on every codeword."""
    F = C.field
    words = C.codewords()
    R = C.dual_refined_weight_distribution()
    for i in range(1, C.n + 1):
        if R.min_covering_weight(i) is None:
            continue
        rs = C.recovery_set(i, verify=False)
        if i in rs.indices:
            return False
        got = np.zeros(words.shape[0], dtype=np.int64)
        for l, lam in zip(rs.indices, rs.coefficients):
            got = F.add_table[got, F.mul_table[lam, words[:, l - 1]]]
        if not np.array_equal(got, words[:, i - 1]):
            return False
        if len(rs.indices) != R.min_covering_weight(i) - 1:
            return False
    return True


def covering_weight_bound(C: LinearCode) -> bool:
    """Covered coordinates meet a codeword of weight <= n - k + 1 - (d - q)/q."""
    if C.k < 2:
        return True
    q, n, k = C.field.q, C.n, C.k
    d = C.minimum_distance()
    limit = n - k + 1 - Fraction(d - q, q)
    R = C.refined_weight_distribution()
    for i in range(1, n + 1):
        lightest = R.min_covering_weight(i)
        if lightest is not None and lightest > limit:
            return False
    return True


def dual_translate_counts(C: LinearCode) -> bool:
    """Weight counts of a dual translate equal W_i^j(dual) / (q - 1)."""
    q, n = C.field.q, C.n
    words = C.dual_codewords()
    R = C.dual_refined_weight_distribution()
    F = C.field
    for j in range(1, n + 1):
        hits = np.nonzero(words[:, j - 1])[0]
        if hits.size == 0:
            continue
        x = words[hits[0]]
        shortened = words[words[:, j - 1] == 0]
        translate = F.add_table[shortened, x[None, :]]
        counts = np.bincount(np.count_nonzero(translate, axis=1), minlength=n + 1)
        if counts[0]:
            return False
        for i in range(1, n + 1):
            if Fraction(R[i, j], q - 1) != counts[i]:
                return False
    return True


PROPERTIES = {
    "refined_dual_roundtrip": refined_dual_roundtrip,
    "weight_marginals": weight_marginals,
    "macwilliams": macwilliams_identity,
    "recovery_replay": recovery_replay,
    "covering_weight_bound": covering_weight_bound,
    "dual_translate_counts": dual_translate_counts,
}

