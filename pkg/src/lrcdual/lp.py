"""Exact rational linear programming: two-phase primal simplex, Bland's rule.

The tableau is dense and holds :class:`fractions.Fraction` entries, so every
reported optimum is exact.  After each solve the dual prices are read off the
final tableau and checked against the primal value; a mismatch raises.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Sequence

Number = int | Fraction


class LinExpr:
    """Sparse affine form ``const + sum coefs[v] * x_v`` over the rationals."""

    __slots__ = ("coefs", "const")

    def __init__(self, coefs: Mapping[int, Number] | None = None, const: Number = 0):
        self.coefs = {v: Fraction(c) for v, c in (coefs or {}).items() if c}
        self.const = Fraction(const)

    @classmethod
    def var(cls, index: int) -> LinExpr:
        return cls({index: 1})

    def _combine(self, other, sign: int) -> LinExpr:
        out = LinExpr.__new__(LinExpr)
        if isinstance(other, LinExpr):
            coefs = dict(self.coefs)
            for v, c in other.coefs.items():
                s = coefs.get(v, 0) + sign * c
                if s:
                    coefs[v] = s
                else:
                    coefs.pop(v, None)
            out.coefs, out.const = coefs, self.const + sign * other.const
        elif isinstance(other, Rational):
            out.coefs, out.const = dict(self.coefs), self.const + sign * other
        else:
            return NotImplemented
        return out

    def __add__(self, other):
        return self._combine(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        return self._combine(other, -1)

    def __rsub__(self, other):
        return (-self)._combine(other, 1)

    def __neg__(self):
        return self * -1

    def __mul__(self, scalar):
        if not isinstance(scalar, Rational):
            return NotImplemented
        out = LinExpr.__new__(LinExpr)
        if scalar == 0:
            out.coefs, out.const = {}, Fraction(0)
        else:
            out.coefs = {v: c * scalar for v, c in self.coefs.items()}
            out.const = self.const * scalar
        return out

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        if not isinstance(scalar, Rational):
            return NotImplemented
        return self * (Fraction(1) / Fraction(scalar))

    def evaluate(self, x: Sequence[Number]) -> Fraction:
        return self.const + sum((c * x[v] for v, c in self.coefs.items()), Fraction(0))

    def __repr__(self) -> str:
        terms = " + ".join(f"{c}*x{v}" for v, c in sorted(self.coefs.items()))
        return f"LinExpr({terms or '0'} + {self.const})"


class Sense(str, enum.Enum):
    MIN = "minimize"
    MAX = "maximize"


class Relation(str, enum.Enum):
    LE = "<="
    EQ = "="
    GE = ">="


class Status(str, enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass
class Constraint:
    coefs: dict[int, Fraction]
    rel: Relation
    rhs: Fraction
    name: str = ""

    def lhs(self, x: Sequence[Number]) -> Fraction:
        return sum((c * x[v] for v, c in self.coefs.items()), Fraction(0))

    def satisfied(self, x: Sequence[Number]) -> bool:
        lhs = self.lhs(x)
        if self.rel is Relation.LE:
            return lhs <= self.rhs
        if self.rel is Relation.GE:
            return lhs >= self.rhs
        return lhs == self.rhs


@dataclass
class LpProblem:
    """A linear program in ``num_vars`` variables, each bounded below (default 0).

    A lower bound of ``None`` makes the variable free.
    """

    num_vars: int
    objective: list[Fraction] = field(default_factory=list)
    sense: Sense = Sense.MIN
    constraints: list[Constraint] = field(default_factory=list)
    lower_bounds: list[Fraction | None] = field(default_factory=list)
    objective_const: Fraction = Fraction(0)
    names: list[str] = field(default_factory=list)

    def __post_init__(self):
        if not self.objective:
            self.objective = [Fraction(0)] * self.num_vars
        self.objective = [Fraction(c) for c in self.objective]
        if not self.lower_bounds:
            self.lower_bounds = [Fraction(0)] * self.num_vars
        if len(self.objective) != self.num_vars or len(self.lower_bounds) != self.num_vars:
            raise ValueError("objective and lower bounds must have one entry per variable")
        self.sense = Sense(self.sense)

    def set_objective(self, expr: LinExpr | Sequence[Number], sense: Sense | str = Sense.MIN) -> None:
        if isinstance(expr, LinExpr):
            self.objective = [expr.coefs.get(v, Fraction(0)) for v in range(self.num_vars)]
            self.objective_const = expr.const
        else:
            self.objective = [Fraction(c) for c in expr]
        self.sense = Sense(sense)

    def add(self, lhs: LinExpr | Sequence[Number], rel: Relation | str, rhs: Number = 0, name: str = "") -> None:
        """Add ``lhs rel rhs``; a LinExpr constant is moved to the right side."""
        rel = Relation(rel)
        if isinstance(lhs, LinExpr):
            coefs, rhs = dict(lhs.coefs), Fraction(rhs) - lhs.const
        else:
            if len(lhs) != self.num_vars:
                raise ValueError(f"row has {len(lhs)} entries, expected {self.num_vars}")
            coefs = {v: Fraction(c) for v, c in enumerate(lhs) if c}
        if any(not 0 <= v < self.num_vars for v in coefs):
            raise ValueError("constraint references an unknown variable")
        self.constraints.append(Constraint(coefs, rel, Fraction(rhs), name))

    def objective_value(self, x: Sequence[Number]) -> Fraction:
        return self.objective_const + sum((c * v for c, v in zip(self.objective, x)), Fraction(0))

    def is_feasible(self, x: Sequence[Number]) -> bool:
        if len(x) != self.num_vars:
            return False
        for v, lb in zip(x, self.lower_bounds):
            if lb is not None and v < lb:
                return False
        return all(c.satisfied(x) for c in self.constraints)

    def dump(self) -> str:
        """Human-readable listing, one constraint per line."""
        name = lambda v: self.names[v] if v < len(self.names) else f"x{v}"

        def fmt(coefs: Mapping[int, Fraction]) -> str:
            parts = [f"{'+' if c > 0 else '-'} {abs(c)} {name(v)}" for v, c in sorted(coefs.items())]
            return " ".join(parts) if parts else "0"

        obj = {v: c for v, c in enumerate(self.objective) if c}
        lines = [f"{self.sense.value}: {fmt(obj)} + {self.objective_const}", "subject to:"]
        for idx, c in enumerate(self.constraints):
            label = c.name or f"c{idx}"
            lines.append(f"  {label}: {fmt(c.coefs)} {c.rel.value} {c.rhs}")
        lines.append("bounds:")
        for v, lb in enumerate(self.lower_bounds):
            lines.append(f"  {name(v)} free" if lb is None else f"  {name(v)} >= {lb}")
        return "\n".join(lines) + "\n"


@dataclass
class LpSolution:
    status: Status
    objective: Fraction | None = None
    x: list[Fraction] | None = None
    dual: list[Fraction] | None = None
    pivots: int = 0


class _Tableau:
    """Dense simplex tableau for ``min c.x, A x = b, x >= 0, b >= 0``."""

    def __init__(self, rows: list[list[Fraction]], rhs: list[Fraction], basis: list[int]):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis
        self.pivots = 0

    def reduced_costs(self, cost: list[Fraction]) -> tuple[list[Fraction], Fraction]:
        d = list(cost)
        z = Fraction(0)
        for r, b in enumerate(self.basis):
            cb = cost[b]
            if cb:
                row = self.rows[r]
                for j, a in enumerate(row):
                    if a:
                        d[j] -= cb * a
                z += cb * self.rhs[r]
        return d, z

    def pivot(self, r: int, c: int, obj: list[Fraction]) -> None:
        prow = self.rows[r]
        p = prow[c]
        if p != 1:
            inv = 1 / p
            prow = [a * inv if a else a for a in prow]
            self.rows[r] = prow
            self.rhs[r] = self.rhs[r] * inv
        nz = [j for j, a in enumerate(prow) if a]
        prhs = self.rhs[r]
        for i, row in enumerate(self.rows):
            if i == r:
                continue
            f = row[c]
            if f:
                for j in nz:
                    row[j] -= f * prow[j]
                self.rhs[i] -= f * prhs
        f = obj[c]
        if f:
            for j in nz:
                obj[j] -= f * prow[j]
            obj[-1] -= f * prhs
        self.basis[r] = c
        self.pivots += 1

    def run(self, obj: list[Fraction], allowed: Sequence[bool]) -> bool:
        """Minimize with reduced-cost row ``obj`` (last entry = -value). False if unbounded."""
        ncols = len(allowed)
        while True:
            enter = next((j for j in range(ncols) if allowed[j] and obj[j] < 0), None)
            if enter is None:
                return True
            leave, best = None, None
            for i, row in enumerate(self.rows):
                a = row[enter]
                if a > 0:
                    ratio = self.rhs[i] / a
                    if best is None or ratio < best or (ratio == best and self.basis[i] < self.basis[leave]):
                        leave, best = i, ratio
            if leave is None:
                return False
            self.pivot(leave, enter, obj)


def solve(problem: LpProblem) -> LpSolution:
    """Solve exactly.  Optimal solutions carry primal values and dual prices."""
    nv = problem.num_vars
    # Column layout: one column per bounded variable, two for each free variable.
    col_of: list[tuple[int, int | None]] = []
    ncols = 0
    for v in range(nv):
        if problem.lower_bounds[v] is None:
            col_of.append((ncols, ncols + 1))
            ncols += 2
        else:
            col_of.append((ncols, None))
            ncols += 1
    shift = [lb if lb is not None else Fraction(0) for lb in problem.lower_bounds]

    sign = 1 if problem.sense is Sense.MIN else -1
    struct_cost = [Fraction(0)] * ncols
    for v, c in enumerate(problem.objective):
        pos, neg = col_of[v]
        struct_cost[pos] = sign * c
        if neg is not None:
            struct_cost[neg] = -sign * c
    const = problem.objective_const + sum((c * s for c, s in zip(problem.objective, shift)), Fraction(0))

    m = len(problem.constraints)
    row_sign: list[int] = []
    dense: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    rels: list[Relation] = []
    for con in problem.constraints:
        row = [Fraction(0)] * ncols
        b = con.rhs
        for v, a in con.coefs.items():
            pos, neg = col_of[v]
            row[pos] += a
            if neg is not None:
                row[neg] -= a
            b -= a * shift[v]
        rel = con.rel
        s = 1
        if b < 0:
            s = -1
            row = [-a for a in row]
            b = -b
            rel = {Relation.LE: Relation.GE, Relation.GE: Relation.LE}.get(rel, rel)
        row_sign.append(s)
        dense.append(row)
        rhs.append(b)
        rels.append(rel)

    n_slack = sum(1 for rel in rels if rel is not Relation.EQ)
    n_art = sum(1 for rel in rels if rel is not Relation.LE)
    total = ncols + n_slack + n_art
    rows: list[list[Fraction]] = []
    basis: list[int] = []
    identity_col: list[int] = []
    slack_at, art_at = ncols, ncols + n_slack
    for i in range(m):
        row = dense[i] + [Fraction(0)] * (n_slack + n_art)
        if rels[i] is Relation.LE:
            row[slack_at] = Fraction(1)
            basis.append(slack_at)
            identity_col.append(slack_at)
            slack_at += 1
        else:
            if rels[i] is Relation.GE:
                row[slack_at] = Fraction(-1)
                slack_at += 1
            row[art_at] = Fraction(1)
            basis.append(art_at)
            identity_col.append(art_at)
            art_at += 1
        rows.append(row)
    art_start = ncols + n_slack
    tab = _Tableau(rows, rhs, basis)

    if n_art:
        phase1 = [Fraction(0)] * art_start + [Fraction(1)] * n_art
        d, z = tab.reduced_costs(phase1)
        obj = d + [-z]
        tab.run(obj, [True] * total)
        if obj[-1] != 0:
            return LpSolution(Status.INFEASIBLE, pivots=tab.pivots)
        # Drive zero-level artificials out of the basis where a structural pivot exists.
        for r in range(m):
            if tab.basis[r] >= art_start:
                c = next((j for j in range(art_start) if tab.rows[r][j] != 0), None)
                if c is not None:
                    tab.pivot(r, c, [Fraction(0)] * (total + 1))

    cost = struct_cost + [Fraction(0)] * (n_slack + n_art)
    d, z = tab.reduced_costs(cost)
    obj = d + [-z]
    allowed = [j < art_start for j in range(total)]
    if not tab.run(obj, allowed):
        return LpSolution(Status.UNBOUNDED, pivots=tab.pivots)

    values = [Fraction(0)] * total
    for r, b in enumerate(tab.basis):
        values[b] = tab.rhs[r]
    x = []
    for v in range(nv):
        pos, neg = col_of[v]
        val = values[pos] - (values[neg] if neg is not None else 0)
        x.append(val + shift[v])
    objective = problem.objective_value(x)

    # Dual prices of the sign-normalized rows are -(reduced cost of the identity column).
    y_min = [-obj[identity_col[i]] * row_sign[i] for i in range(m)]
    dual = [sign * y for y in y_min]
    _certify(problem, x, dual, objective, const)
    return LpSolution(Status.OPTIMAL, objective, x, dual, tab.pivots)


def _certify(problem: LpProblem, x, dual, objective, const) -> None:
    if not problem.is_feasible(x):
        raise AssertionError("simplex returned an infeasible point")
    shifted_rhs = []
    shift = [lb if lb is not None else Fraction(0) for lb in problem.lower_bounds]
    for con in problem.constraints:
        shifted_rhs.append(con.rhs - sum((a * shift[v] for v, a in con.coefs.items()), Fraction(0)))
    dual_value = const + sum((y * b for y, b in zip(dual, shifted_rhs)), Fraction(0))
    if dual_value != objective:
        raise AssertionError(f"primal value {objective} != dual value {dual_value}")
    # Dual feasibility, stated for the minimization form.
    sign = 1 if problem.sense is Sense.MIN else -1
    reduced = [sign * c for c in problem.objective]
    for y, con in zip(dual, problem.constraints):
        ym = sign * y
        if (con.rel is Relation.GE and ym < 0) or (con.rel is Relation.LE and ym > 0):
            raise AssertionError(f"dual price {y} has the wrong sign for {con.rel.value}")
        for v, a in con.coefs.items():
            reduced[v] -= ym * a
    for v, rc in enumerate(reduced):
        if problem.lower_bounds[v] is None and rc != 0:
            raise AssertionError("nonzero reduced cost on a free variable")
        if rc < 0:
            raise AssertionError("negative reduced cost at claimed optimum")


def build(num_vars: int, objective: LinExpr | Sequence[Number], sense: Sense | str,
          constraints: Iterable[tuple[LinExpr | Sequence[Number], str, Number]],
          lower_bounds: Sequence[Number | None] | None = None) -> LpProblem:
    """Shorthand constructor used in tests and scripts."""
    P = LpProblem(num_vars, lower_bounds=[None if b is None else Fraction(b) for b in lower_bounds]
                  if lower_bounds is not None else [])
    P.set_objective(objective, sense)
    for lhs, rel, rhs in constraints:
        P.add(lhs, rel, rhs)
    return P
