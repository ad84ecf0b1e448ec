"""Linear codes over GF(q): enumeration, weight invariants, locality."""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Iterator, Sequence

import numpy as np

from .gf import FieldSpec
from .linalg import Matrix, dependent_row, kernel_basis, rank, rref, row_space_equal

BUDGET_ENV = "LRCDUAL_ENUM_BUDGET"
DEFAULT_BUDGET = 2**26
_CHUNK = 2**15


def enumeration_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    return int(raw) if raw else DEFAULT_BUDGET


class EnumerationBudgetExceeded(RuntimeError):
    def __init__(self, q: int, k: int, budget: int):
        self.size = q**k
        super().__init__(
            f"enumerating {q}^{k} = {self.size} codewords exceeds the budget of {budget}"
        )


class CodeError(ValueError):
    pass


def _span_chunks(F: FieldSpec, rows: np.ndarray, n: int, budget: int | None) -> Iterator[np.ndarray]:
    """Yield the row span of ``rows`` in blocks of at most ~_CHUNK words."""
    k = rows.shape[0]
    budget = enumeration_budget() if budget is None else budget
    if F.q**k > budget:
        raise EnumerationBudgetExceeded(F.q, k, budget)
    low = 0
    while low < k and F.q ** (low + 1) <= _CHUNK:
        low += 1
    base = np.zeros((1, n), dtype=np.int64)
    for g in rows[:low]:
        scaled = F.mul_table[np.arange(F.q)[:, None], g[None, :]]
        base = F.add_table[base[:, None, :], scaled[None, :, :]].reshape(-1, n)
    high = rows[low:]
    for coefs in product(range(F.q), repeat=len(high)):
        offset = np.zeros(n, dtype=np.int64)
        for a, g in zip(coefs, high):
            if a:
                offset = F.add_table[offset, F.mul_table[a, g]]
        yield F.add_table[base, offset[None, :]]


def _distributions(chunks: Iterator[np.ndarray], n: int) -> tuple[np.ndarray, np.ndarray]:
    W = np.zeros(n + 1, dtype=np.int64)
    R = np.zeros((n + 1, n), dtype=np.int64)  # R[w, j] for weight w, 0-based coordinate j
    for words in chunks:
        nz = (words != 0).astype(np.int64)
        wt = nz.sum(axis=1)
        W += np.bincount(wt, minlength=n + 1)
        onehot = np.zeros((words.shape[0], n + 1), dtype=np.int64)
        onehot[np.arange(words.shape[0]), wt] = 1
        R += onehot.T @ nz
    return W, R


@dataclass(frozen=True)
class WeightDistribution:
    counts: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.counts) - 1

    @property
    def size(self) -> int:
        return sum(self.counts)

    def __getitem__(self, i: int) -> int:
        return self.counts[i]

    def __iter__(self):
        return iter(self.counts)

    def __len__(self):
        return len(self.counts)


@dataclass(frozen=True)
class RefinedWeightDistribution:
    """``entries[i-1][j-1]`` is the number of weight-i words with coordinate j nonzero.

    Rows run over weights 1..n+1 (the last row is zero by construction);
    indexing with ``dist[i, j]`` uses the 1-based convention directly.
    """

    entries: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not (1 <= i <= self.n + 1 and 1 <= j <= self.n):
            raise IndexError(f"W_{i}^{j} out of range for n={self.n}")
        return self.entries[i - 1][j - 1]

    def as_fractions(self) -> list[list[Fraction]]:
        return [[Fraction(v) for v in row] for row in self.entries]

    def weight_counts(self) -> list[Fraction]:
        """Totals per weight 1..n recovered as (sum over j) / i."""
        return [Fraction(sum(self.entries[i - 1]), i) for i in range(1, self.n + 1)]

    def min_covering_weight(self, j: int) -> int | None:
        for i in range(1, self.n + 1):
            if self.entries[i - 1][j - 1]:
                return i
        return None


def _refined_from_array(R: np.ndarray) -> RefinedWeightDistribution:
    # R is indexed by weight 0..n; weight-0 words touch nothing, so drop that row
    # and append the conventional zero row for weight n+1.
    n = R.shape[1]
    rows = [tuple(int(v) for v in R[w]) for w in range(1, n + 1)]
    rows.append((0,) * n)
    return RefinedWeightDistribution(tuple(rows))


@dataclass(frozen=True)
class RecoverySet:
    coordinate: int
    indices: tuple[int, ...]
    coefficients: tuple[int, ...]

    def recover(self, field: FieldSpec, word: Sequence[int]) -> int:
        acc = 0
        for l, lam in zip(self.indices, self.coefficients):
            acc = field.add(acc, field.mul(lam, int(word[l - 1])))
        return acc


@dataclass(frozen=True)
class CodeProfile:
    n: int
    k: int
    d: int
    d_dual: int | None
    r: int | None
    nondegenerate: bool
    dual_nondegenerate: bool


class LinearCode:
    """A nonzero subspace of GF(q)^n given by generator rows.

    The generator is stored in reduced row-echelon form; rows that are
    linearly dependent raise :class:`CodeError` naming the offending row.
    """

    def __init__(self, field: FieldSpec, generator, *, budget: int | None = None):
        G = generator if isinstance(generator, Matrix) else Matrix(field, np.asarray(generator))
        if G.field is not field:
            raise CodeError("generator matrix is over a different field")
        if G.rows == 0 or G.cols == 0:
            raise CodeError("a code needs at least one generator row and one coordinate")
        bad = dependent_row(G)
        if bad is not None:
            raise CodeError(f"generator row {bad + 1} is linearly dependent on the rows above it")
        self.field = field
        self.n = G.cols
        self.G, _ = rref(G)
        self.k = self.G.rows
        self.budget = budget

    @classmethod
    def from_spanning_rows(cls, field: FieldSpec, rows, **kw) -> LinearCode:
        """Build from any spanning set, discarding dependent rows."""
        R, _ = rref(Matrix(field, np.asarray(rows)))
        if R.rows == 0:
            raise CodeError("rows span the zero code")
        return cls(field, R, **kw)

    def __repr__(self) -> str:
        return f"LinearCode(GF({self.field.q}), [{self.n}, {self.k}])"

    def __eq__(self, other):
        if not isinstance(other, LinearCode):
            return NotImplemented
        return self.field is other.field and row_space_equal(self.G, other.G)

    def __hash__(self):
        return hash(self.G)

    @cached_property
    def H(self) -> Matrix:
        return kernel_basis(self.G)

    @property
    def size(self) -> int:
        return self.field.q**self.k

    @property
    def dual_size(self) -> int:
        return self.field.q ** (self.n - self.k)

    def dual(self) -> LinearCode:
        if self.k == self.n:
            raise CodeError("the dual of the full space is the zero code")
        return LinearCode(self.field, self.H, budget=self.budget)

    # enumeration

    def chunks(self) -> Iterator[np.ndarray]:
        return _span_chunks(self.field, self.G.data, self.n, self.budget)

    def dual_chunks(self) -> Iterator[np.ndarray]:
        return _span_chunks(self.field, self.H.data, self.n, self.budget)

    def codewords(self) -> np.ndarray:
        return np.concatenate(list(self.chunks()))

    def dual_codewords(self) -> np.ndarray:
        return np.concatenate(list(self.dual_chunks()))

    def enumerate_codewords(self) -> Iterator[tuple[int, ...]]:
        for block in self.chunks():
            for word in block:
                yield tuple(int(v) for v in word)

    # invariants

    @cached_property
    def _dist(self):
        return _distributions(self.chunks(), self.n)

    @cached_property
    def _dual_dist(self):
        return _distributions(self.dual_chunks(), self.n)

    def weight_distribution(self) -> WeightDistribution:
        return WeightDistribution(tuple(int(v) for v in self._dist[0]))

    def refined_weight_distribution(self) -> RefinedWeightDistribution:
        return _refined_from_array(self._dist[1])

    def dual_weight_distribution(self) -> WeightDistribution:
        return WeightDistribution(tuple(int(v) for v in self._dual_dist[0]))

    def dual_refined_weight_distribution(self) -> RefinedWeightDistribution:
        return _refined_from_array(self._dual_dist[1])

    def minimum_distance(self) -> int:
        W = self._dist[0]
        return int(np.nonzero(W[1:])[0][0]) + 1

    def dual_distance(self) -> int | None:
        """None when the dual is the zero code (k = n)."""
        W = self._dual_dist[0]
        nz = np.nonzero(W[1:])[0]
        return int(nz[0]) + 1 if nz.size else None

    def is_nondegenerate(self) -> bool:
        return bool(np.all(self.G.data.any(axis=0)))

    def is_dual_nondegenerate(self) -> bool:
        if self.k == self.n:
            return False
        return bool(np.all(self.H.data.any(axis=0)))

    def locality(self) -> int | None:
        """Smallest r such that every coordinate has a recovery set of size <= r.

        None when some coordinate lies in the support of no dual codeword.
        """
        if self.k == self.n:
            return None
        R = self._dual_dist[1]
        worst = 0
        for j in range(self.n):
            covering = np.nonzero(R[1:, j])[0]
            if covering.size == 0:
                return None
            worst = max(worst, int(covering[0]) + 1)
        return worst - 1

    def recovery_set(self, i: int, *, verify: bool = True) -> RecoverySet:
        """Recovery set for 1-based coordinate ``i`` from a lightest covering dual word."""
        if not 1 <= i <= self.n:
            raise IndexError(f"coordinate {i} outside 1..{self.n}")
        F = self.field
        # lightest covering dual word; ties go to the lexicographically smallest
        # support, then to the smallest word scaled to have a 1 at coordinate i
        best, best_key = None, None
        if self.k < self.n:
            for block in self.dual_chunks():
                hits = block[block[:, i - 1] != 0]
                if hits.shape[0] == 0:
                    continue
                wts = np.count_nonzero(hits, axis=1)
                for x in hits[wts == wts.min()]:
                    unit = F.mul_table[F.inv_table[x[i - 1]], x]
                    key = (int(wts.min()), tuple(np.nonzero(x)[0]), tuple(unit))
                    if best_key is None or key < best_key:
                        best, best_key = unit, key
        if best is None:
            raise CodeError(f"no dual codeword covers coordinate {i}")
        scale = F.neg_table[F.inv_table[best[i - 1]]]
        indices = tuple(int(l) + 1 for l in np.nonzero(best)[0] if l != i - 1)
        coefs = tuple(int(F.mul_table[scale, best[l - 1]]) for l in indices)
        rs = RecoverySet(i, indices, coefs)
        if verify and self.size <= (self.budget or enumeration_budget()):
            for block in self.chunks():
                got = np.zeros(block.shape[0], dtype=np.int64)
                for l, lam in zip(indices, coefs):
                    got = F.add_table[got, F.mul_table[lam, block[:, l - 1]]]
                if not np.array_equal(got, block[:, i - 1]):  # pragma: no cover
                    raise AssertionError(f"recovery set for coordinate {i} fails replay")
        return rs

    def shorten(self, j: int) -> LinearCode:
        """Subcode of words vanishing at 1-based coordinate j; length stays n."""
        if not 1 <= j <= self.n:
            raise IndexError(f"coordinate {j} outside 1..{self.n}")
        col = Matrix(self.field, self.G.data[:, j - 1][None, :])
        messages = kernel_basis(col)
        if messages.rows == 0:
            raise CodeError(f"shortening at coordinate {j} leaves the zero code")
        return LinearCode(self.field, messages @ self.G, budget=self.budget)

    def profile(self) -> CodeProfile:
        return CodeProfile(
            n=self.n,
            k=self.k,
            d=self.minimum_distance(),
            d_dual=self.dual_distance(),
            r=self.locality(),
            nondegenerate=self.is_nondegenerate(),
            dual_nondegenerate=self.is_dual_nondegenerate(),
        )


def random_code(
    field: FieldSpec,
    n: int,
    k: int,
    rng: np.random.Generator,
    *,
    nondegenerate: bool = True,
    max_tries: int = 10_000,
) -> LinearCode:
    """Rejection-sample a uniform k x n generator of full rank.

    With ``nondegenerate`` the code and its dual must both have full support.
    """
    if not 1 <= k <= n:
        raise CodeError(f"need 1 <= k <= n, got k={k}, n={n}")
    for _ in range(max_tries):
        G = Matrix(field, rng.integers(0, field.q, size=(k, n)))
        if rank(G) < k:
            continue
        code = LinearCode(field, G)
        if nondegenerate and not (code.is_nondegenerate() and code.is_dual_nondegenerate()):
            continue
        return code
    raise CodeError(f"no suitable [{n}, {k}] code over GF({field.q}) after {max_tries} draws")


def all_codes(field: FieldSpec, n: int, k: int | None = None) -> Iterator[LinearCode]:
    """Every nonzero subspace of GF(q)^n exactly once, via its unique RREF."""
    from itertools import combinations

    dims = range(1, n + 1) if k is None else [k]
    for dim in dims:
        for pivots in combinations(range(n), dim):
            slots = [(r, c) for r in range(dim) for c in range(pivots[r] + 1, n) if c not in pivots]
            for values in product(range(field.q), repeat=len(slots)):
                G = np.zeros((dim, n), dtype=np.int64)
                for r, c in enumerate(pivots):
                    G[r, c] = 1
                for (r, c), v in zip(slots, values):
                    G[r, c] = v
                yield LinearCode(field, G)
