"""Exact rational linear programming.

Two-phase dense-tableau simplex.  Each tableau row is kept as an integer
vector with one positive denominator, so a pivot is integer cross
multiplication followed by a gcd reduction and the ratio test never
leaves the integers.  Variables may be declared non-negative (one
column) or left free (split into a difference of non-negatives); every
row gets an artificial in phase one.

Pivoting is deterministic: steepest Dantzig descent with smallest-index
tie-breaks, falling back to Bland's rule after a fixed pivot count so
termination is still guaranteed on (never observed) cycling instances.
Infeasibility comes back as a Farkas certificate indexed by the original
constraints: multipliers >= 0 on '<=' rows, <= 0 on '>=' rows and free on
'=' rows whose combination annihilates every free variable column, is
non-negative on every non-negative column, and makes the right-hand side
negative.  Certificates and points are re-verified exactly before being
returned.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Optional, Sequence

from .errors import BadParameters, DimensionMismatch

RELATIONS = ("<=", "=", ">=")


@dataclass(frozen=True)
class LinearConstraint:
    coeffs: tuple
    relation: str
    rhs: Fraction

    def __post_init__(self):
        if self.relation not in RELATIONS:
            raise BadParameters(f"unknown relation {self.relation!r}")

    @classmethod
    def of(cls, coeffs: Sequence, relation: str, rhs) -> "LinearConstraint":
        return cls(tuple(Fraction(c) for c in coeffs), relation, Fraction(rhs))

    def evaluate(self, x: Sequence[Fraction]) -> Fraction:
        return sum(c * v for c, v in zip(self.coeffs, x))

    def satisfied_by(self, x: Sequence[Fraction]) -> bool:
        lhs = self.evaluate(x)
        if self.relation == "<=":
            return lhs <= self.rhs
        if self.relation == ">=":
            return lhs >= self.rhs
        return lhs == self.rhs


@dataclass(frozen=True)
class RationalLpProblem:
    """Maximize objective . x subject to the constraints; a zero objective
    asks for feasibility only.  ``nonneg[j]`` constrains x_j >= 0."""

    objective: tuple
    constraints: tuple
    nonneg: tuple = ()

    def __post_init__(self):
        n = len(self.objective)
        for c in self.constraints:
            if len(c.coeffs) != n:
                raise DimensionMismatch("constraint arity differs from objective")
        if self.nonneg and len(self.nonneg) != n:
            raise DimensionMismatch("one nonneg flag per variable required")

    @classmethod
    def of(cls, objective: Sequence, constraints, nonneg: Sequence = ()) -> "RationalLpProblem":
        return cls(
            tuple(Fraction(c) for c in objective),
            tuple(
                c if isinstance(c, LinearConstraint) else LinearConstraint.of(*c)
                for c in constraints
            ),
            tuple(bool(b) for b in nonneg),
        )

    def is_nonneg(self, j: int) -> bool:
        return bool(self.nonneg) and self.nonneg[j]


@dataclass(frozen=True)
class LpResult:
    status: str  # optimal | infeasible | unbounded
    point: Optional[tuple]
    objective_value: Optional[Fraction]
    farkas: Optional[tuple]  # one multiplier per constraint


def _reduce_row(num: list, den: int) -> tuple:
    g = den
    for x in num:
        if x:
            g = gcd(g, x)
            if g == 1:
                break
    if g > 1:
        num = [x // g for x in num]
        den //= g
    return num, den


class _Tableau:
    """Rows store (integer vector including the rhs column, positive
    denominator); the cost row is stored the same way with -z in the rhs
    slot."""

    def __init__(self, rows, rhs, cost_rows: int = 0):
        self.m = len(rows)
        self.ncols = len(rows[0]) if rows else 0
        self.num = []
        self.den = []
        for row, b in zip(rows, rhs):
            nums, d = _to_int_row(list(row) + [b])
            self.num.append(nums)
            self.den.append(d)
        self.cost = [0] * (self.ncols + 1)
        self.cden = 1
        self.basis = [0] * self.m
        self.pivots_done = 0
        self.banned: set = set()  # columns that may never enter the basis

    def set_cost(self, cost: Sequence[Fraction]):
        nums, d = _to_int_row(list(cost) + [Fraction(0)])
        self.cost = nums
        self.cden = d
        for i in range(self.m):
            cb = self.cost_value_of_col(self.basis[i])
            if cb != 0:
                self._combine_cost(i, cb)

    def cost_value_of_col(self, j) -> Fraction:
        return Fraction(self.cost[j], self.cden)

    def _combine_cost(self, row, factor: Fraction):
        # cost -= factor * (row normalized)
        rn, rd = self.num[row], self.den[row]
        piv = rn[self.basis[row]]
        # normalized row entry j = rn[j] / piv ; factor = fn/fd
        fn, fd = factor.numerator, factor.denominator
        scale = fd * piv
        if scale < 0:
            fn, scale = -fn, -scale
        new = [c * scale - self.cden * fn * r for c, r in zip(self.cost, rn)]
        self.cost, self.cden = _reduce_row(new, self.cden * scale)

    def value(self, row) -> Fraction:
        return Fraction(self.num[row][self.ncols], self.den[row])

    def entry(self, row, col) -> Fraction:
        return Fraction(self.num[row][col], self.den[row])

    def objective(self) -> Fraction:
        return Fraction(-self.cost[self.ncols], self.cden)

    def pivot(self, row, col):
        self.pivots_done += 1
        rn = self.num[row]
        piv = rn[col]
        for i in range(self.m):
            if i == row:
                continue
            f = self.num[i][col]
            if f:
                ni = self.num[i]
                new = [a * piv - f * b for a, b in zip(ni, rn)]
                d = self.den[i] * piv
                if d < 0:
                    d = -d
                    new = [-x for x in new]
                self.num[i], self.den[i] = _reduce_row(new, d)
        f = self.cost[col]
        if f:
            # normalized pivot row entry j is rn[j]/piv; den[row] cancels
            new = [a * piv - f * b for a, b in zip(self.cost, rn)]
            d = self.cden * piv
            if d < 0:
                d = -d
                new = [-x for x in new]
            self.cost, self.cden = _reduce_row(new, d)
        d = piv
        if d < 0:
            d = -d
            rn = [-x for x in rn]
        self.num[row], self.den[row] = _reduce_row(list(rn), d)
        self.basis[row] = col

    def _entering(self, bland: bool) -> Optional[int]:
        if bland:
            for j in range(self.ncols):
                if self.cost[j] < 0 and j not in self.banned:
                    return j
            return None
        best = None
        for j in range(self.ncols):
            c = self.cost[j]
            if c < 0 and j not in self.banned and (best is None or c < best[0]):
                best = (c, j)
        return None if best is None else best[1]

    def _leaving(self, col) -> Optional[int]:
        best = None
        for i in range(self.m):
            a = self.num[i][col]
            if a > 0:
                b = self.num[i][self.ncols]
                # compare b/a across rows by cross multiplication
                if best is None:
                    best = (b, a, self.basis[i], i)
                else:
                    lhs = b * best[1]
                    rhs = best[0] * a
                    if lhs < rhs or (lhs == rhs and self.basis[i] < best[2]):
                        best = (b, a, self.basis[i], i)
        return None if best is None else best[3]

    def solve(self, bland_after: int = 10_000) -> str:
        start = self.pivots_done
        while True:
            bland = self.pivots_done - start > bland_after
            col = self._entering(bland)
            if col is None:
                return "optimal"
            row = self._leaving(col)
            if row is None:
                return "unbounded"
            self.pivot(row, col)


def _to_int_row(vals) -> tuple:
    fracs = [Fraction(v) for v in vals]
    d = 1
    for f in fracs:
        d = lcm(d, f.denominator)
    return [int(f * d) for f in fracs], d


def lp_feasible(problem: RationalLpProblem) -> LpResult:
    """Solve the LP exactly.

    Returns an optimal (or merely feasible, for a zero objective) rational
    point, an 'unbounded' status, or an 'infeasible' status carrying a
    Farkas certificate.
    """
    nvars = len(problem.objective)
    cons = problem.constraints
    m = len(cons)

    # column layout: one column per non-negative variable, a (+,-) pair per
    # free variable, then slacks, then one artificial per row
    col_of_var = []
    neg_col_of_var = []
    ncols = 0
    for j in range(nvars):
        col_of_var.append(ncols)
        ncols += 1
        if problem.is_nonneg(j):
            neg_col_of_var.append(None)
        else:
            neg_col_of_var.append(ncols)
            ncols += 1
    nslack = sum(1 for c in cons if c.relation != "=")
    slack_base = ncols
    ncols += nslack
    art_base = ncols
    ncols += m

    rows = []
    rhs = []
    tau = []
    sigma = [1] * m
    s_idx = slack_base
    for i, c in enumerate(cons):
        tau.append(-1 if c.relation == ">=" else 1)
        row = [Fraction(0)] * ncols
        for j, a in enumerate(c.coeffs):
            if a:
                row[col_of_var[j]] = tau[i] * a
                if neg_col_of_var[j] is not None:
                    row[neg_col_of_var[j]] = -tau[i] * a
        b = tau[i] * c.rhs
        if c.relation != "=":
            row[s_idx] = Fraction(1)
            s_idx += 1
        if b < 0:
            sigma[i] = -1
            row = [-x for x in row]
            b = -b
        row[art_base + i] = Fraction(1)
        rows.append(row)
        rhs.append(b)

    tab = _Tableau(rows, rhs)
    for i in range(m):
        tab.basis[i] = art_base + i

    # phase 1: minimize the sum of artificials
    phase1 = [Fraction(0)] * ncols
    for i in range(m):
        phase1[art_base + i] = Fraction(1)
    tab.set_cost(phase1)
    status = tab.solve()
    assert status == "optimal"
    if tab.objective() > 0:  # infeasible
        y = [Fraction(1) - tab.cost_value_of_col(art_base + i) for i in range(m)]
        farkas = tuple(-y[i] * sigma[i] * tau[i] for i in range(m))
        assert verify_farkas(problem, farkas), "bad Farkas certificate"
        return LpResult("infeasible", None, None, farkas)

    feasibility_only = all(c == 0 for c in problem.objective)
    if not feasibility_only:
        # drive any zero-level artificials out of the basis
        for i in range(m):
            if tab.basis[i] >= art_base:
                col = next((j for j in range(art_base) if tab.num[i][j] != 0), None)
                if col is not None:
                    tab.pivot(i, col)
        cost = [Fraction(0)] * ncols
        for j, cj in enumerate(problem.objective):
            cost[col_of_var[j]] = -Fraction(cj)
            if neg_col_of_var[j] is not None:
                cost[neg_col_of_var[j]] = Fraction(cj)
        tab.banned = {art_base + i for i in range(m)}  # artificials never re-enter
        tab.set_cost(cost)
        status = tab.solve()
        if status == "unbounded":
            return LpResult("unbounded", None, None, None)

    values = {}
    for i in range(m):
        values[tab.basis[i]] = tab.value(i)
    point = []
    for j in range(nvars):
        v = values.get(col_of_var[j], Fraction(0))
        if neg_col_of_var[j] is not None:
            v -= values.get(neg_col_of_var[j], Fraction(0))
        point.append(v)
    for c in cons:
        assert c.satisfied_by(point), "simplex returned an infeasible point"
    value = sum(c * x for c, x in zip(problem.objective, point))
    return LpResult("optimal", tuple(point), value, None)


def verify_farkas(problem: RationalLpProblem, lam: Sequence[Fraction]) -> bool:
    """Re-check an infeasibility certificate by exact evaluation."""
    nvars = len(problem.objective)
    for i, c in enumerate(problem.constraints):
        if c.relation == "<=" and lam[i] < 0:
            return False
        if c.relation == ">=" and lam[i] > 0:
            return False
    for j in range(nvars):
        combined = sum(l * c.coeffs[j] for l, c in zip(lam, problem.constraints))
        if problem.is_nonneg(j):
            if combined < 0:
                return False
        elif combined != 0:
            return False
    return sum(l * c.rhs for l, c in zip(lam, problem.constraints)) < 0
