"""Upper bounds on the dimension of a code with locality.

Each bound is a pure function of the parameters.  Anything involving
logarithms or ceilings is evaluated by exact integer/rational comparison.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Any, Literal

import numpy as np

from .gf import field_new, is_prime_power
from .lp import LinExpr, LpProblem, Relation, Sense, Status, solve
from .transform import krawtchouk, refined_dual_transform

METHODS = ("lp", "sh_lp", "sh_exact", "gen_singleton", "dual_distance")
METHOD_ALIASES = {"gsing": "gen_singleton", "singleton": "gen_singleton", "dd": "dual_distance"}


class ParamError(ValueError):
    pass


class KOptUnavailable(LookupError):
    def __init__(self, q: int, n: int, d: int):
        self.key = (q, n, d)
        super().__init__(f"no k_opt entry for q={q}, n={n}, d={d}")


@dataclass(frozen=True)
class LrcParams:
    q: int
    n: int
    d: int
    r: int
    k: int | None = None
    d_dual: int | None = None

    def __post_init__(self):
        if not is_prime_power(self.q):
            raise ParamError(f"q={self.q} is not a supported prime power")
        if not 2 <= self.d <= self.n:
            raise ParamError(f"need 2 <= d <= n, got d={self.d}, n={self.n}")
        if not 1 <= self.r <= self.n - 1:
            raise ParamError(f"need 1 <= r <= n-1, got r={self.r}, n={self.n}")


@dataclass(frozen=True)
class BoundResult:
    method: str
    value: int | None
    status: Literal["ok", "infeasible", "unavailable"] = "ok"
    details: dict[str, Any] = field(default_factory=dict, compare=False)


def ceil_log(q: int, x: Fraction | int) -> int:
    """Smallest e >= 0 with q**e >= x."""
    e, power = 0, 1
    while power < x:
        power *= q
        e += 1
    return e


def floor_log(q: int, x: Fraction | int) -> int:
    """Largest e >= 0 with q**e <= x (x >= 1)."""
    if x < 1:
        raise ValueError(f"floor_log needs x >= 1, got {x}")
    e, power = 0, q
    while power <= x:
        power *= q
        e += 1
    return e


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def generalized_singleton(p: LrcParams) -> BoundResult:
    """Largest k with k + ceil(k/r) <= n - d + 2."""
    for k in range(p.n, -1, -1):
        if k + _ceil_div(k, p.r) <= p.n - p.d + 2:
            return BoundResult("gen_singleton", k)
    raise AssertionError("unreachable: k = 0 always satisfies the bound")  # pragma: no cover


# Delsarte's LP bound on the size of a code, turned into a dimension bound.

def delsarte_problem(q: int, n: int, d: int) -> LpProblem:
    """Variables A_d..A_n; maximize their sum subject to every MacWilliams image >= 0."""
    K = krawtchouk(n, q).K
    weights = list(range(d, n + 1))
    P = LpProblem(len(weights), names=[f"A{i}" for i in weights])
    P.set_objective([1] * len(weights), Sense.MAX)
    for j in range(1, n + 1):
        P.add([K[j][i] for i in weights], Relation.GE, -K[j][0], name=f"transform_{j}")
    return P


@lru_cache(maxsize=None)
def delsarte_size_bound(q: int, n: int, d: int) -> Fraction:
    if not 1 <= d <= n:
        raise ParamError(f"need 1 <= d <= n, got d={d}, n={n}")
    sol = solve(delsarte_problem(q, n, d))
    if sol.status is not Status.OPTIMAL:  # pragma: no cover
        raise AssertionError(f"Delsarte LP unexpectedly {sol.status.value}")
    return 1 + sol.objective


def delsarte_kopt(q: int, n: int, d: int) -> int:
    return floor_log(q, delsarte_size_bound(q, n, d))


# k_opt providers.

def parse_kopt_table(text: str, source: str = "<k_opt table>") -> dict[tuple[int, int, int], int]:
    table: dict[tuple[int, int, int], int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 4:
            raise ValueError(f"{source}:{lineno}: expected 'q n d k_opt', got {raw!r}")
        q, n, d, k = (int(x) for x in parts)
        if (q, n, d) in table:
            raise ValueError(f"{source}:{lineno}: duplicate entry for q={q} n={n} d={d}")
        table[(q, n, d)] = k
    return table


def load_kopt_table(path: str | Path | None = None) -> dict[tuple[int, int, int], int]:
    """Read a k_opt file; with no path, the bundled best-known-codes excerpt."""
    if path is None:
        text = resources.files("lrcdual.data").joinpath("kopt.txt").read_text()
        return parse_kopt_table(text, "kopt.txt")
    path = Path(path)
    return parse_kopt_table(path.read_text(), str(path))


class KOptProvider:
    """Source of k_opt(q, n, d): Delsarte LP estimate, a data table, or exhaustive search."""

    def __init__(
        self,
        mode: Literal["delsarte_lp", "table", "brute_force"] = "delsarte_lp",
        table: dict[tuple[int, int, int], int] | None = None,
        brute_force_limit: int = 2**20,
    ):
        if mode not in ("delsarte_lp", "table", "brute_force"):
            raise ValueError(f"unknown k_opt mode {mode!r}")
        if mode == "table" and table is None:
            table = load_kopt_table()
        self.mode = mode
        self.table = table or {}
        self.brute_force_limit = brute_force_limit

    def __call__(self, q: int, n: int, d: int) -> int:
        if self.mode == "delsarte_lp":
            return delsarte_kopt(q, n, d)
        if self.mode == "table":
            try:
                return self.table[(q, n, d)]
            except KeyError:
                raise KOptUnavailable(q, n, d) from None
        if q**n > self.brute_force_limit:
            raise ParamError(f"brute-force k_opt needs q^n <= {self.brute_force_limit}, got {q}^{n}")
        return brute_force_kopt(q, n, d)


def shortening_bound(p: LrcParams, provider: KOptProvider) -> BoundResult:
    """min over t >= 0 with n - t(r+1) >= d of r t + k_opt(n - t(r+1), d)."""
    method = "sh_lp" if provider.mode == "delsarte_lp" else "sh_exact"
    candidates: dict[int, int] = {}
    missing = []
    for t in range((p.n - p.d) // (p.r + 1) + 1):
        length = p.n - t * (p.r + 1)
        try:
            candidates[t] = p.r * t + provider(p.q, length, p.d)
        except KOptUnavailable as exc:
            missing.append(exc.key)
    details: dict[str, Any] = {"t_max": (p.n - p.d) // (p.r + 1), "per_t": candidates}
    if missing:
        details["missing"] = missing
        return BoundResult(method, None, "unavailable", details)
    t_best = min(candidates, key=lambda t: (candidates[t], t))
    details["t"] = t_best
    return BoundResult(method, candidates[t_best], "ok", details)


def dual_distance_bound(q: int, n: int, k: int, d: int, r: int) -> BoundResult:
    """Largest d_dual with d_dual + (d_dual - q)/q <= n - d + 3 - ceil(k/r)."""
    if not 2 <= k <= n - 2:
        raise ParamError(f"dual distance bound needs 2 <= k <= n-2, got k={k}, n={n}")
    rhs = n - d + 3 - _ceil_div(k, r)
    for dd in range(n, 0, -1):
        if dd + Fraction(dd - q, q) <= rhs:
            return BoundResult("dual_distance", dd, "ok", {"rhs": rhs})
    return BoundResult("dual_distance", None, "infeasible", {"rhs": rhs})


def dual_distance_check(code) -> bool | None:
    """Does a LinearCode satisfy the dual distance bound?  None when it does not apply."""
    prof = code.profile()
    n, k = prof.n, prof.k
    if prof.r is None or prof.d_dual is None or not 2 <= k <= n - 2:
        return None
    res = dual_distance_bound(code.field.q, n, k, prof.d, prof.r)
    return res.status == "ok" and prof.d_dual <= res.value


# The LP bound built from the refined dual transform.

def lrc_lp_problem(p: LrcParams, formulation: Literal["full", "symmetric"] = "symmetric") -> LpProblem:
    """LP whose optimum lower-bounds |dual| - 1.

    ``full`` has one variable per a_ij (1 <= i <= n+1, 1 <= j <= n), index
    ``(i-1)*n + (j-1)``.  ``symmetric`` restricts to a_ij = b_i; every
    constraint family is invariant under permuting the coordinates j, so
    averaging an optimal point over all permutations keeps it feasible and
    optimal and both formulations have the same optimum.
    """
    q, n, d, r = p.q, p.n, p.d, p.r
    if formulation == "full":
        var = lambda i, j: (i - 1) * n + (j - 1)
        P = LpProblem((n + 1) * n, names=[f"a{i}_{j}" for i in range(1, n + 2) for j in range(1, n + 1)])
        columns = range(1, n + 1)
    elif formulation == "symmetric":
        var = lambda i, j: i - 1
        P = LpProblem(n + 1, names=[f"b{i}" for i in range(1, n + 2)])
        columns = range(1, 2)
    else:
        raise ValueError(f"unknown formulation {formulation!r}")

    a = [[LinExpr.var(var(i, j)) for j in range(1, n + 1)] for i in range(1, n + 2)]
    perp = refined_dual_transform(a, n, q)

    objective = LinExpr()
    for i in range(1, n + 2):
        for j in range(1, n + 1):
            objective = objective + a[i - 1][j - 1] * Fraction(1, i)
    P.set_objective(objective, Sense.MIN)

    for j in columns:
        for i in range(1, n + 1):
            # a_perp >= 0 for i >= d; for i < d the equality subsumes it.
            rel = Relation.EQ if i <= d - 1 else Relation.GE
            P.add(perp[i - 1][j - 1], rel, 0, name=f"perp_{i}_{j}")
        locality = LinExpr({var(i, j): 1 for i in range(1, r + 2)})
        P.add(locality, Relation.GE, q - 1, name=f"locality_{j}")
        P.add(LinExpr.var(var(1, j)), Relation.EQ, 0, name=f"weight1_{j}")
        P.add(LinExpr.var(var(n + 1, j)), Relation.EQ, 0, name=f"pad_{j}")
    return P


@lru_cache(maxsize=None)
def _lrc_lp_solution(p: LrcParams, formulation: str):
    return solve(lrc_lp_problem(p, formulation))


def lrc_lp_bound(p: LrcParams, formulation: Literal["full", "symmetric"] = "symmetric") -> BoundResult:
    """k <= n - ceil(log_q(1 + mu*)), or status infeasible when the LP has no point."""
    key = LrcParams(p.q, p.n, p.d, p.r)
    sol = _lrc_lp_solution(key, formulation)
    if sol.status is Status.INFEASIBLE:
        return BoundResult("lp", None, "infeasible", {"formulation": formulation})
    if sol.status is not Status.OPTIMAL:  # pragma: no cover
        raise AssertionError(f"LP bound unexpectedly {sol.status.value}")
    mu = sol.objective
    e = ceil_log(p.q, 1 + mu)
    return BoundResult("lp", p.n - e, "ok", {"mu": mu, "log_ceiling": e, "formulation": formulation,
                                             "pivots": sol.pivots})


def evaluate(p: LrcParams, method: str, *, kopt_table: dict | None = None) -> BoundResult:
    method = METHOD_ALIASES.get(method, method)
    if method == "lp":
        return lrc_lp_bound(p)
    if method == "sh_lp":
        return shortening_bound(p, KOptProvider("delsarte_lp"))
    if method == "sh_exact":
        return shortening_bound(p, KOptProvider("table", kopt_table))
    if method == "gen_singleton":
        return generalized_singleton(p)
    if method == "dual_distance":
        if p.k is None:
            raise ParamError("dual_distance needs k")
        return dual_distance_bound(p.q, p.n, p.k, p.d, p.r)
    raise ParamError(f"unknown method {method!r}; choose from {', '.join(METHODS)}")


# Exhaustive k_opt for tiny parameters.

class SearchBudgetExceeded(RuntimeError):
    pass


def _code_exists(q: int, n: int, k: int, d: int, node_budget: int) -> bool:
    """Is there an [n, k, >= d] code?  Searches systematic generators [I | A] with sorted rows of A."""
    if k == 0:
        return True
    if k > n or d > n - k + 1:
        return False
    F = field_new(q)
    red = n - k
    if red == 0:
        return d <= 1
    cands = []
    for idx in range(q**red):
        vec = [(idx // q**t) % q for t in range(red)]
        if sum(1 for v in vec if v) >= d - 1:
            cands.append(np.array(vec[::-1], dtype=np.int64))
    nodes = 0

    def extend(depth: int, start: int, span_red: np.ndarray, span_info: np.ndarray) -> bool:
        nonlocal nodes
        if depth == k:
            return True
        for c in range(start, len(cands)):
            nodes += 1
            if nodes > node_budget:
                raise SearchBudgetExceeded(f"k_opt search for q={q} n={n} k={k} d={d}")
            a = cands[c]
            shifted = F.add_table[span_red, a[None, :]]
            wt = np.count_nonzero(shifted, axis=1) + span_info + 1
            if wt.min() < d:
                continue
            new_red = [span_red]
            new_info = [span_info]
            for alpha in range(1, q):
                new_red.append(F.add_table[span_red, F.mul_table[alpha, a][None, :]])
                new_info.append(span_info + 1)
            if extend(depth + 1, c, np.concatenate(new_red), np.concatenate(new_info)):
                return True
        return False

    return extend(0, 0, np.zeros((1, red), dtype=np.int64), np.zeros(1, dtype=np.int64))


@lru_cache(maxsize=None)
def brute_force_kopt(q: int, n: int, d: int, node_budget: int = 5_000_000) -> int:
    """Largest k admitting an [n, k, >= d] linear code over GF(q), by exhaustive search."""
    if not 1 <= d <= n:
        raise ParamError(f"need 1 <= d <= n, got d={d}, n={n}")
    for k in range(n - d + 1, 0, -1):
        if _code_exists(q, n, k, d, node_budget):
            return k
    return 0  # pragma: no cover - k = 1 (repetition) always exists
