import itertools
from fractions import Fraction

import numpy as np
import pytest
from conftest import naive_span

from lrcdual.code import (
    BUDGET_ENV,
    CodeError,
    EnumerationBudgetExceeded,
    LinearCode,
    all_codes,
    random_code,
)
from lrcdual.gf import field_new

F2, F3, F4 = field_new(2), field_new(3), field_new(4)


def rep(n, F=F2):
    return LinearCode(F, [[1] * n])


def paired():
    return LinearCode(F2, [[1, 1, 0, 0], [0, 0, 1, 1]])


def oracle_refined(q, words, n):
    R = [[0] * n for _ in range(n + 1)]
    W = [0] * (n + 1)
    for w in words:
        wt = sum(1 for x in w if x)
        W[wt] += 1
        for j in range(n):
            if w[j]:
                R[wt - 1][j] += 1
    return W, R


def oracle_locality(C: LinearCode) -> int | None:
    """Per coordinate, smallest |S| with |proj_{S+i}(C)| = |proj_S(C)|; None if absent."""
    words = naive_span(C.field.q, C.G.tolist())
    n, worst = C.n, 0
    for i in range(n):
        others = [j for j in range(n) if j != i]
        best = None
        for size in range(0, n):
            for S in itertools.combinations(others, size):
                a = {tuple(w[j] for j in S) for w in words}
                b = {tuple(w[j] for j in S + (i,)) for w in words}
                if len(a) == len(b):
                    best = size
                    break
            if best is not None:
                break
        if best is None:
            return None
        worst = max(worst, best)
    return worst


def sample_codes(seed=0, count=40):
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        q = int(rng.choice([2, 3, 4, 5]))
        n = int(rng.integers(2, 7))
        k = int(rng.integers(1, n))
        out.append(random_code(field_new(q), n, k, rng))
    return out


def test_repetition_code_words_and_distributions():
    C = rep(3)
    assert set(C.enumerate_codewords()) == {(0, 0, 0), (1, 1, 1)}
    assert tuple(C.weight_distribution()) == (1, 0, 0, 1)
    R = C.refined_weight_distribution()
    assert [R[3, j] for j in (1, 2, 3)] == [1, 1, 1]
    assert C.minimum_distance() == 3 and C.dual_distance() == 2
    assert C.locality() == 1


def test_paired_code():
    C = paired()
    assert set(C.enumerate_codewords()) == {(0, 0, 0, 0), (1, 1, 0, 0), (0, 0, 1, 1), (1, 1, 1, 1)}
    assert C.refined_weight_distribution()[2, 1] == 1
    assert C.minimum_distance() == 2 and C.dual_distance() == 2
    assert C.dual() == C
    assert set(C.shorten(1).enumerate_codewords()) == {(0, 0, 0, 0), (0, 0, 1, 1)}


def test_full_space():
    C = LinearCode(F2, np.eye(2, dtype=np.int64))
    assert tuple(C.weight_distribution()) == (1, 2, 1)
    assert C.minimum_distance() == 1
    assert C.locality() is None and C.dual_distance() is None
    assert set(C.shorten(1).enumerate_codewords()) == {(0, 0), (0, 1)}
    with pytest.raises(CodeError):
        C.dual()


@pytest.mark.parametrize("n", [3, 4, 6])
def test_parity_check_locality(n):
    C = rep(n).dual()
    assert C.k == n - 1 and C.locality() == n - 1
    assert rep(n).locality() == 1


def test_recovery_set_examples():
    rs = rep(3).recovery_set(1)
    assert rs.indices == (2,) and rs.coefficients == (1,)
    spc = LinearCode(F2, [[1, 0, 1], [0, 1, 1]])
    rs = spc.recovery_set(3)
    assert rs.indices == (1, 2) and rs.coefficients == (1, 1)


def test_recovery_replay_ternary_63():
    rng = np.random.default_rng(11)
    C = random_code(F3, 6, 3, rng)
    words = naive_span(3, C.G.tolist())
    assert len(words) == 27
    for i in range(1, 7):
        rs = C.recovery_set(i)
        assert i not in rs.indices
        for w in words:
            assert rs.recover(F3, w) == w[i - 1]


def test_rank_deficient_generator_is_rejected():
    with pytest.raises(CodeError, match="row 3"):
        LinearCode(F3, [[1, 0, 2], [0, 1, 1], [1, 1, 0]])


def test_budget_guard(monkeypatch):
    monkeypatch.setenv(BUDGET_ENV, "16")
    C = LinearCode(F2, np.eye(5, dtype=np.int64))
    with pytest.raises(EnumerationBudgetExceeded, match="2\\^5"):
        C.weight_distribution()
    small = LinearCode(F2, np.eye(5, dtype=np.int64), budget=64)
    assert small.weight_distribution().size == 32


def test_shorten_to_zero_code_fails():
    with pytest.raises(CodeError):
        rep(3).shorten(2)


@pytest.mark.parametrize("C", sample_codes(), ids=repr)
def test_enumeration_matches_oracle(C):
    q, n = C.field.q, C.n
    words = naive_span(q, C.G.tolist())
    assert {tuple(w) for w in C.codewords().tolist()} == words
    assert C.codewords().shape[0] == q**C.k
    W, R = oracle_refined(q, words, n)
    assert tuple(C.weight_distribution()) == tuple(W)
    assert [list(r) for r in C.refined_weight_distribution().entries] == R
    for a in words:
        for b in C.H.tolist():
            assert dot(C.field, a, b) == 0
    assert len(naive_span(q, C.H.tolist())) == q ** (n - C.k)


def dot(F, a, b):
    s = 0
    for x, y in zip(a, b):
        s = F.add(s, F.mul(x, y))
    return s


@pytest.mark.parametrize("C", sample_codes(1), ids=repr)
def test_biduality_and_shortening(C):
    assert C.dual().dual() == C
    for j in range(1, C.n + 1):
        try:
            S = C.shorten(j)
        except CodeError:
            assert C.k == 1
            continue
        assert S.size in (C.size, C.size // C.field.q)
        assert not S.codewords()[:, j - 1].any()
        assert S.n == C.n


@pytest.mark.parametrize("C", sample_codes(2, 30), ids=repr)
def test_locality_matches_projection_oracle(C):
    assert C.locality() == oracle_locality(C)


def test_locality_oracle_on_every_small_binary_code():
    for C in all_codes(F2, 4):
        assert C.locality() == oracle_locality(C)


def test_weight_marginals_identity():
    for C in sample_codes(3):
        W, R = C.weight_distribution(), C.refined_weight_distribution()
        for i in range(1, C.n + 1):
            assert Fraction(sum(R.entries[i - 1]), i) == W[i]


def test_weight_bound_for_covered_coordinates():
    # every covered coordinate meets a light codeword, checked over all binary codes, n <= 6
    for n in range(2, 7):
        for C in all_codes(F2, n):
            if C.k < 2:
                continue
            d = C.minimum_distance()
            limit = C.n - C.k + 1 - Fraction(d - 2, 2)
            words = naive_span(2, C.G.tolist())
            for i in range(n):
                covering = [sum(1 for x in w if x) for w in words if w[i]]
                if covering:
                    assert min(covering) <= limit


def gaussian_binomial(n, k, q):
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


@pytest.mark.parametrize("q,n", [(2, 4), (2, 5), (3, 3), (4, 3)])
def test_all_codes_counts_subspaces(q, n):
    F = field_new(q)
    codes = list(all_codes(F, n))
    assert len(codes) == sum(gaussian_binomial(n, k, q) for k in range(1, n + 1))
    assert len({tuple(map(tuple, c.G.tolist())) for c in codes}) == len(codes)


def test_random_code_is_nondegenerate_both_ways():
    rng = np.random.default_rng(0)
    for _ in range(20):
        C = random_code(F4, 6, 3, rng)
        assert C.is_nondegenerate() and C.is_dual_nondegenerate()


def test_profile_of_paired_code():
    p = paired().profile()
    assert (p.n, p.k, p.d, p.d_dual, p.r) == (4, 2, 2, 2, 1)
    assert p.nondegenerate and p.dual_nondegenerate
