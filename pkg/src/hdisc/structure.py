"""Structural tests on the r-colorings of a graph: the four-class balance
condition, uniformity, the (s, t)-structure space and non-balanced-uniform
fractional factors."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from math import comb

from .coloring import Coloring, chromatic_number, coloring_stats, enumerate_partitions
from .exact import LpProblem, Optimal, in_span, kernel_basis, solve_lp
from .graph import Graph


@dataclass(frozen=True)
class C4Report:
    k: int
    holds: bool
    # a violating coloring and an ordered quadruple (i1, i2, i3, i4) with
    # e(A_i1, A_i2) + e(A_i3, A_i4) != e(A_i1, A_i3) + e(A_i2, A_i4)
    coloring: Coloring | None = None
    quadruple: tuple[int, int, int, int] | None = None


def _c4_violation(e, k):
    for a, b, c, d in combinations(range(k), 4):
        s1 = e[a][b] + e[c][d]
        s2 = e[a][c] + e[b][d]
        s3 = e[a][d] + e[b][c]
        if s1 != s2:
            return (a, b, c, d)
        if s1 != s3:
            return (a, b, d, c)
        if s2 != s3:
            return (a, c, d, b)
    return None


def satisfies_c4(h: Graph, k: int) -> C4Report:
    """Check that every proper k-coloring (empty classes allowed) has equal
    pairing sums on every four classes."""
    if k < 4:
        return C4Report(k, True)
    for part in enumerate_partitions(h, k):
        used = max(part, default=-1) + 1
        # more than four empty classes never changes the answer
        width = min(k, used + 4)
        st = coloring_stats(h, part, width)
        quad = _c4_violation(st.e, width)
        if quad is not None:
            return C4Report(k, False, part, quad)
    return C4Report(k, True)


def is_uniform(h: Graph) -> bool:
    r = chromatic_number(h)
    if r < 2:
        return True
    target = Fraction(h.num_edges, comb(r, 2))
    for part in enumerate_partitions(h, r):
        e = coloring_stats(h, part, r).e
        if any(e[i][j] != target for i, j in combinations(range(r), 2)):
            return False
    return True


def _structure_rows(h: Graph):
    r = chromatic_number(h)
    rows = set()
    for part in enumerate_partitions(h, r):
        st = coloring_stats(h, part, r)
        for i, j in combinations(range(r), 2):
            rows.add((-st.x[i][j], -st.e[i][j], st.sizes[i] + st.sizes[j]))
    return sorted(rows)


def structured_space(h: Graph) -> list[tuple[int, ...]]:
    """Integer basis of all (s, t, rho) with
    rho (|A_i| + |A_j|) = s X_ij + t e_ij for every r-coloring and pair."""
    return kernel_basis(_structure_rows(h), ncols=3)


def in_structured_space(h: Graph, vector) -> bool:
    return in_span(vector, structured_space(h))


def structure_density(h: Graph, s, t) -> Fraction | None:
    """The rho making ``h`` (s, t)-structured, or None."""
    rho = None
    for x, e, a in _structure_rows(h):
        val = Fraction(-s * x - t * e, a)
        if rho is None:
            rho = val
        elif rho != val:
            return None
    return rho


@dataclass(frozen=True)
class NonbalancedUniformResult:
    exists: bool
    pair: tuple[int, int] | None = None
    # fractional factor: (labeled coloring, weight) with balanced classes and
    # non-uniform edge counts on ``pair``
    weights: tuple[tuple[Coloring, Fraction], ...] = ()


def labeled_colorings_from_partitions(h: Graph, r: int):
    """All labeled r-colorings that use every color, via partitions."""
    for part in enumerate_partitions(h, r):
        if max(part, default=-1) + 1 != r:
            continue
        for perm in permutations(range(r)):
            yield tuple(perm[c] for c in part)


def exists_nonbalanced_uniform_factor(h: Graph) -> NonbalancedUniformResult:
    """Is there a fractional H-factor whose induced r-coloring is balanced
    but has some pair of classes with a non-average edge count?"""
    r = chromatic_number(h)
    if r < 2:
        return NonbalancedUniformResult(False)
    columns = {}
    for col in labeled_colorings_from_partitions(h, r):
        st = coloring_stats(h, col, r)
        key = (st.sizes, st.e)
        columns.setdefault(key, col)
    keys = sorted(columns)
    avg = Fraction(h.num_edges, comb(r, 2))
    eq_rows = [[sizes[i] - sizes[0] for sizes, _ in keys] for i in range(1, r)]
    eq_rows.append([1] * len(keys))
    rhs = [0] * (r - 1) + [1]
    for i, j in combinations(range(r), 2):
        dev = [e[i][j] - avg for _, e in keys]
        for sign in (1, -1):
            out = solve_lp(LpProblem([sign * d for d in dev], eq_rows, rhs))
            if isinstance(out, Optimal) and out.value > 0:
                weights = tuple((columns[k], w) for k, w in zip(keys, out.point) if w)
                return NonbalancedUniformResult(True, (i, j), weights)
    return NonbalancedUniformResult(False)
