"""Krawtchouk coefficients, MacWilliams transforms and the refined dual transform.

Everything here is exact: integers and :class:`fractions.Fraction` only.
:func:`refined_dual_transform` is written against ``+``, ``-``, scalar ``*``
and ``/`` alone, so it also accepts symbolic entries such as
:class:`lrcdual.lp.LinExpr` and then returns linear forms; the LP bound
builds its constraints that way.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Sequence

from .code import RefinedWeightDistribution, WeightDistribution
from .gf import is_prime_power

RefinedMatrix = list  # (n+1) x n nested list; entry [i-1][j-1] is a_ij


class TransformError(ValueError):
    pass


@lru_cache(maxsize=None)
def binomial_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Pascal's triangle rows 0..n."""
    rows = [(1,)]
    for m in range(1, n + 1):
        prev = rows[-1]
        rows.append(tuple([1] + [prev[t - 1] + prev[t] for t in range(1, m)] + [1]))
    return tuple(rows)


def _binom(table, a: int, b: int) -> int:
    if b < 0 or a < 0 or b > a:
        return 0
    return table[a][b]


@dataclass(frozen=True)
class KrawtchoukTable:
    n: int
    q: int
    K: tuple[tuple[int, ...], ...]

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.K[i][j]


@lru_cache(maxsize=None)
def krawtchouk(n: int, q: int) -> KrawtchoukTable:
    """K[i][j] = sum_t C(n-t, i-t) C(n-j, t) (-1)^(i-t) q^t for 0 <= i, j <= n."""
    if n < 1:
        raise TransformError(f"length must be >= 1, got {n}")
    if not is_prime_power(q):
        raise TransformError(f"{q} is not a supported prime power")
    B = binomial_table(n)
    K = tuple(
        tuple(
            sum(
                _binom(B, n - t, i - t) * _binom(B, n - j, t) * (-1) ** (i - t) * q**t
                for t in range(i + 1)
            )
            for j in range(n + 1)
        )
        for i in range(n + 1)
    )
    return KrawtchoukTable(n, q, K)


def _as_integers(values: Sequence[Fraction], what: str) -> tuple[int, ...]:
    out = []
    for idx, v in enumerate(values):
        if v.denominator != 1 or v < 0:
            raise TransformError(f"{what}: entry {idx} = {v} is not a nonnegative integer")
        out.append(int(v))
    return tuple(out)


def macwilliams(W: WeightDistribution | Sequence[int], q: int, code_size: int | None = None) -> WeightDistribution:
    """Weight distribution of the dual code; raises if the result is not a valid count."""
    counts = tuple(W)
    n = len(counts) - 1
    size = sum(counts) if code_size is None else code_size
    if size != sum(counts):
        raise TransformError(f"code size {size} does not match distribution total {sum(counts)}")
    K = krawtchouk(n, q).K
    out = [Fraction(sum(K[i][j] * counts[j] for j in range(n + 1)), size) for i in range(n + 1)]
    return WeightDistribution(_as_integers(out, "MacWilliams transform"))


def refined_dual_transform(a: RefinedMatrix, n: int, q: int) -> RefinedMatrix:
    """Map an (n+1) x n array ``a`` to the (n+1) x n array ``a_perp``.

    For 1 <= i, j <= n::

        a_perp[i][j] = K(i,0)(1 - 1/q) - K(i,1)/q (q - 1 + a[2][j])
            + sum_{s=2..n} K(i,s) [ T(s) - 1/q ( (q-1)(T(s-1) - a[s-1][j])
                                               + T(s) + a[s+1][j] + (q-2) a[s][j] ) ]

    where ``T(s) = sum_t a[s][t] / s``.  Row n+1 of the result is zero.
    When ``a`` holds the refined distribution of a dual code, ``a_perp``
    divided by the dual size is the refined distribution of the code.
    """
    if len(a) != n + 1 or any(len(row) != n for row in a):
        raise TransformError(f"expected an {n + 1} x {n} array")
    K = krawtchouk(n, q).K
    inv_q = Fraction(1, q)

    def A(i: int, j: int):
        return a[i - 1][j - 1]

    T = [None] * (n + 1)
    for s in range(1, n + 1):
        total = A(s, 1)
        for t in range(2, n + 1):
            total = total + A(s, t)
        T[s] = total / s

    # Split into the part shared by all j and the part depending on column j.
    shared = []
    for i in range(1, n + 1):
        acc: Any = Fraction(K[i][0]) * (1 - inv_q) - Fraction(K[i][1]) * inv_q * (q - 1)
        for s in range(2, n + 1):
            if K[i][s]:
                acc = acc + T[s] * (Fraction(K[i][s]) * (1 - inv_q))
                acc = acc - T[s - 1] * (Fraction(K[i][s]) * inv_q * (q - 1))
        shared.append(acc)

    zero = A(1, 1) * 0
    out: RefinedMatrix = []
    for i in range(1, n + 1):
        row = []
        for j in range(1, n + 1):
            acc = shared[i - 1] - A(2, j) * (Fraction(K[i][1]) * inv_q)
            for s in range(2, n + 1):
                k_is = K[i][s]
                if not k_is:
                    continue
                c = Fraction(k_is) * inv_q
                acc = acc + A(s - 1, j) * (c * (q - 1))
                acc = acc - A(s + 1, j) * c
                if q != 2:
                    acc = acc - A(s, j) * (c * (q - 2))
            row.append(acc)
        out.append(row)
    out.append([zero] * n)
    return out


def theorem5_eval(
    dual_refined: RefinedWeightDistribution, n: int, q: int, dual_size: int
) -> RefinedWeightDistribution:
    """Refined distribution of a non-degenerate code from that of its dual.

    Raises :class:`TransformError` if any entry comes out fractional or
    negative, which happens when the code is degenerate.
    """
    if dual_refined.n != n:
        raise TransformError(f"distribution has length {dual_refined.n}, expected {n}")
    if any(dual_refined.entries[n]):
        raise TransformError("row n+1 of a refined distribution must be zero")
    perp = refined_dual_transform(dual_refined.as_fractions(), n, q)
    rows = []
    for i in range(n):
        scaled = [Fraction(v) / dual_size for v in perp[i]]
        rows.append(_as_integers(scaled, f"refined transform row {i + 1}"))
    rows.append((0,) * n)
    return RefinedWeightDistribution(tuple(rows))
