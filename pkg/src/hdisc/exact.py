"""Exact rational linear algebra: a two-phase simplex and rational null spaces.

Everything here works over :class:`fractions.Fraction`, so results are exact
and reproducible.  Pivoting follows Bland's smallest-index rule, which rules
out cycling on degenerate problems.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Sequence, Union

Rational = Fraction


def as_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return Fraction(value)
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass an int, str or Fraction")
    return Fraction(value)


@dataclass
class LpProblem:
    """Maximize ``objective . x`` subject to ``eq_rows x = eq_rhs``,
    ``le_rows x <= le_rhs`` and ``x >= 0``."""

    objective: Sequence
    eq_rows: Sequence[Sequence] = ()
    eq_rhs: Sequence = ()
    le_rows: Sequence[Sequence] = ()
    le_rhs: Sequence = ()

    @property
    def num_vars(self) -> int:
        return len(self.objective)


@dataclass(frozen=True)
class Optimal:
    value: Fraction
    point: tuple[Fraction, ...]


@dataclass(frozen=True)
class Infeasible:
    pass


@dataclass(frozen=True)
class Unbounded:
    # a feasible point and a recession direction along which the objective grows
    point: tuple[Fraction, ...] = field(default=())
    ray: tuple[Fraction, ...] = field(default=())


LpOutcome = Union[Optimal, Infeasible, Unbounded]


class _Tableau:
    """Dense tableau ``rows[i] = [a_i0 .. a_i(n-1) | b_i]`` with a basis list."""

    def __init__(self, rows, basis, ncols):
        self.rows = rows
        self.basis = basis
        self.ncols = ncols

    def pivot(self, r, c):
        row = self.rows[r]
        p = row[c]
        if p != 1:
            row = [v / p for v in row]
            self.rows[r] = row
        for i, other in enumerate(self.rows):
            if i == r:
                continue
            f = other[c]
            if f:
                self.rows[i] = [a - f * b for a, b in zip(other, row)]
        self.basis[r] = c

    def reduced_costs(self, cost, allowed):
        # reduced cost of column j for a maximization: c_j - c_B . B^-1 A_j
        n = self.ncols
        red = list(cost[:n])
        for i, b in enumerate(self.basis):
            cb = cost[b]
            if cb:
                row = self.rows[i]
                for j in range(n):
                    if row[j]:
                        red[j] -= cb * row[j]
        return [red[j] if allowed[j] else Fraction(0) for j in range(n)]

    def run(self, cost, allowed):
        """Primal simplex with Bland's rule.  Returns the entering column of
        an unbounded ray, or None at optimality."""
        while True:
            red = self.reduced_costs(cost, allowed)
            enter = next((j for j in range(self.ncols) if red[j] > 0), None)
            if enter is None:
                return None
            best = None
            leave = None
            for i, row in enumerate(self.rows):
                a = row[enter]
                if a > 0:
                    ratio = row[-1] / a
                    if (best is None or ratio < best
                            or (ratio == best and self.basis[i] < self.basis[leave])):
                        best = ratio
                        leave = i
            if leave is None:
                return enter
            self.pivot(leave, enter)

    def point(self, n):
        x = [Fraction(0)] * n
        for i, b in enumerate(self.basis):
            if b < n:
                x[b] = self.rows[i][-1]
        return x


def solve_lp(problem: LpProblem) -> LpOutcome:
    """Solve ``problem`` exactly.  The optimal point returned is a basic
    feasible solution of the standard-form system."""
    n = problem.num_vars
    cost = [as_rational(v) for v in problem.objective]
    eq = [[as_rational(v) for v in row] for row in problem.eq_rows]
    le = [[as_rational(v) for v in row] for row in problem.le_rows]
    eq_b = [as_rational(v) for v in problem.eq_rhs]
    le_b = [as_rational(v) for v in problem.le_rhs]
    if len(eq) != len(eq_b) or len(le) != len(le_b):
        raise ValueError("row and right-hand-side counts differ")
    for row in eq + le:
        if len(row) != n:
            raise ValueError("constraint row has the wrong length")

    m_le = len(le)
    n_std = n + m_le  # original variables followed by slacks
    rows = []
    for row, b in zip(eq, eq_b):
        rows.append(row + [Fraction(0)] * m_le + [b])
    for k, (row, b) in enumerate(zip(le, le_b)):
        slack = [Fraction(0)] * m_le
        slack[k] = Fraction(1)
        rows.append(row + slack + [b])
    for row in rows:
        if row[-1] < 0:
            row[:] = [-v for v in row]

    m = len(rows)
    ncols = n_std + m  # one artificial per row
    full = []
    for i, row in enumerate(rows):
        art = [Fraction(0)] * m
        art[i] = Fraction(1)
        full.append(row[:-1] + art + [row[-1]])
    tab = _Tableau(full, [n_std + i for i in range(m)], ncols)

    # phase one: maximize minus the sum of artificials
    phase1 = [Fraction(0)] * n_std + [Fraction(-1)] * m
    tab.run(phase1, [True] * ncols)
    infeas = sum(tab.rows[i][-1] for i, b in enumerate(tab.basis) if b >= n_std)
    if infeas != 0:
        return Infeasible()

    # drive zero-level artificials out of the basis, dropping redundant rows
    i = 0
    while i < len(tab.rows):
        if tab.basis[i] >= n_std:
            row = tab.rows[i]
            col = next((j for j in range(n_std) if row[j] != 0), None)
            if col is None:
                del tab.rows[i]
                del tab.basis[i]
                continue
            tab.pivot(i, col)
        i += 1

    tab.rows = [row[:n_std] + [row[-1]] for row in tab.rows]
    tab.ncols = n_std
    cost2 = cost + [Fraction(0)] * m_le
    enter = tab.run(cost2, [True] * n_std)
    point = tab.point(n_std)
    if enter is not None:
        ray = [Fraction(0)] * n_std
        ray[enter] = Fraction(1)
        for i, b in enumerate(tab.basis):
            ray[b] = -tab.rows[i][enter]
        return Unbounded(tuple(point[:n]), tuple(ray[:n]))
    value = sum((c * x for c, x in zip(cost, point)), Fraction(0))
    return Optimal(value, tuple(point[:n]))


def rref(matrix: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    rows = [[as_rational(v) for v in row] for row in matrix]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pv = rows[r][c]
        rows[r] = [v / pv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def primitive(vector: Sequence[Fraction]) -> tuple[int, ...]:
    """Scale a rational vector to coprime integers with a positive leading entry."""
    from math import gcd

    den = lcm(*(Fraction(v).denominator for v in vector)) if vector else 1
    ints = [int(Fraction(v) * den) for v in vector]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    if g == 0:
        return tuple(ints)
    ints = [v // g for v in ints]
    lead = next((v for v in ints if v != 0), 0)
    if lead < 0:
        ints = [-v for v in ints]
    return tuple(ints)


def kernel_basis(matrix: Sequence[Sequence], ncols: int | None = None) -> list[tuple[int, ...]]:
    """Basis of the rational null space, each vector scaled to primitive
    integers.  ``ncols`` is needed only when ``matrix`` has no rows."""
    if not matrix:
        if ncols is None:
            raise ValueError("ncols is required for an empty matrix")
        return [tuple(1 if j == i else 0 for j in range(ncols)) for i in range(ncols)]
    n = len(matrix[0])
    reduced, pivots = rref(matrix)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, p in zip(reduced, pivots):
            v[p] = -row[f]
        basis.append(primitive(v))
    return basis


def in_span(vector: Sequence, basis: Sequence[Sequence]) -> bool:
    """True when ``vector`` is a rational combination of ``basis``."""
    if not any(Fraction(v) for v in vector):
        return True
    if not basis:
        return False
    _, piv_a = rref([list(b) for b in basis])
    _, piv_b = rref([list(b) for b in basis] + [list(vector)])
    return len(piv_a) == len(piv_b)


def common_denominator(values) -> int:
    return lcm(1, *(Fraction(v).denominator for v in values))
