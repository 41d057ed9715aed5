"""Concrete certificates: balanced blowup factors, template witnesses with
two perfect factors of different discrepancy, lower-bound blowups on which
every perfect factor has the same discrepancy, and the complete multipartite
auxiliary graph whose critical chromatic number approximates the threshold.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations, permutations
from math import comb, factorial, gcd
from typing import Sequence

from .blowups import (BlowupSpec, ExplicitFactor, Placement, blowup, merge_placements,
                      placement_discrepancy, placement_loads, realize)
from .coloring import classes_of, chromatic_number, enumerate_partitions
from .errors import Contradiction, ContractViolation, HypothesisFailure
from .exact import LpProblem, Optimal, as_rational, solve_lp
from .graph import ColoredGraph, Graph, graph_basics
from .params import chromatic_profile, multipartite_profile
from .structure import satisfies_c4, structure_density
from .templates import (Frame, as_frame, butterfly, hom_columns, is_template, kr_coloring,
                        kr_edges, star_clique)


# --------------------------------------------------------------------------
# helpers

def _r_partitions(h: Graph, r: int):
    for part in enumerate_partitions(h, r):
        if max(part, default=-1) + 1 == r:
            yield classes_of(part, r)


def _first_classes(h: Graph, r: int) -> list[list[int]]:
    return next(_r_partitions(h, r))


def _place(n: int, classes: Sequence[Sequence[int]], targets: Sequence[int],
           moves: dict[int, int] | None = None) -> Placement:
    """Send class ``i`` to frame vertex ``targets[i]``, then apply vertex moves."""
    phi = [0] * n
    for cls, x in zip(classes, targets):
        for v in cls:
            phi[v] = x
    for v, x in (moves or {}).items():
        phi[v] = x
    return tuple(phi)


def _edges_between(h: Graph, a, b) -> int:
    return h.edges_between(a, b)


def _clique_disc(f: ColoredGraph, vertices) -> int:
    return sum(f.color(u, v) for u, v in combinations(sorted(vertices), 2))


def _is_clique(f: ColoredGraph, vertices) -> bool:
    return all(f.has_edge(u, v) for u, v in combinations(vertices, 2))


def _missing_edge(f: ColoredGraph, r: int) -> tuple[int, int]:
    """The non-edge of a frame that is K_{r+1} minus one edge."""
    if f.n != r + 1:
        raise HypothesisFailure(f"frame must have {r + 1} vertices (two {r}-cliques sharing {r - 1})")
    missing = [e for e in combinations(range(f.n), 2) if not f.has_edge(*e)]
    if len(missing) != 1:
        raise HypothesisFailure(f"frame must be two {r}-cliques sharing {r - 1} vertices")
    return missing[0]


def clique_pair_in(f: ColoredGraph, r: int, shared: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """The lexicographically first pair of r-cliques that share ``shared``
    vertices and together cover every vertex and edge of the frame."""
    if f.n != 2 * r - shared:
        raise HypothesisFailure(f"frame must have {2 * r - shared} vertices (two {r}-cliques sharing {shared})")
    cliques = [c for c in combinations(range(f.n), r) if _is_clique(f, c)]
    for l1, l2 in combinations(cliques, 2):
        if len(set(l1) & set(l2)) != shared:
            continue
        covered = set(combinations(l1, 2)) | set(combinations(l2, 2))
        if covered == set(f.edges):
            return l1, l2
    raise HypothesisFailure(f"frame is not two {r}-cliques sharing {shared} vertices")


def _positive_degrees(f: ColoredGraph, vertices) -> list[int]:
    vs = set(vertices)
    return [sum(1 for w in vs if w != v and f.color(v, w) > 0) for v in sorted(vs)]


# --------------------------------------------------------------------------
# balanced blowup

def balanced_blowup_factor(h: Graph, frame=None) -> tuple[BlowupSpec, ExplicitFactor]:
    """The ``(r-1)!|H|``-blowup of K_r with one H-copy per permutation of the
    classes of a fixed r-coloring.  ``frame`` colors K_r (default all +1)."""
    r = chromatic_number(h)
    if r < 2:
        raise ContractViolation("H must have an edge")
    if frame is None:
        frame = kr_coloring(r, (1 << comb(r, 2)) - 1)
    frame = as_frame(frame)
    if frame.n != r or frame.colored.num_edges != comb(r, 2):
        raise ContractViolation(f"frame must be a coloring of K_{r}")
    classes = _first_classes(h, r)
    placements = [(_place(h.n, classes, perm), 1) for perm in permutations(range(r))]
    spec = BlowupSpec(frame, (factorial(r - 1) * h.n,) * r)
    return spec, realize(h, spec, placements)


# --------------------------------------------------------------------------
# template witnesses

RECIPES = ("bipartite-components", "sharing-much", "nonregular-clique", "degree-split",
           "unbalanced", "nonuniform", "c4-violation", "structured-pair")


@dataclass(frozen=True)
class TemplateWitness:
    recipe: str
    spec: BlowupSpec
    factor_a: ExplicitFactor
    factor_b: ExplicitFactor
    placements_a: tuple[tuple[Placement, int], ...]
    placements_b: tuple[tuple[Placement, int], ...]
    disc_a: int
    disc_b: int
    predicted_difference: Fraction
    details: dict = field(default_factory=dict)

    @property
    def difference(self) -> int:
        return self.disc_a - self.disc_b


def _finish(recipe, h, frame: Frame, pa, pb, predicted, details) -> TemplateWitness:
    f = frame.colored
    pa, pb = merge_placements(pa), merge_placements(pb)
    la, lb = placement_loads(pa, f.n), placement_loads(pb, f.n)
    if la != lb:
        raise Contradiction(f"{recipe}: the two factors cover different cluster sizes {la} vs {lb}")
    spec = BlowupSpec(frame, la)
    fa, fb = realize(h, spec, pa), realize(h, spec, pb)
    da, db = placement_discrepancy(h, f, pa), placement_discrepancy(h, f, pb)
    if da - db != predicted:
        raise Contradiction(f"{recipe}: discrepancy difference {da - db} differs from the closed form {predicted}")
    return TemplateWitness(recipe, spec, fa, fb, tuple(pa), tuple(pb), da, db,
                           Fraction(predicted), details)


def _bipartite_components(h: Graph, frame: Frame) -> TemplateWitness:
    f = frame.colored
    if chromatic_number(h) != 2:
        raise HypothesisFailure("H must be bipartite")
    if f.n != 4 or f.num_edges != 2 or len({v for e in f.edges for v in e}) != 4:
        raise HypothesisFailure("frame must be two disjoint edges")
    (x1, y1), (x2, y2) = f.edges
    c1, c2 = f.color(x1, y1), f.color(x2, y2)
    if c1 == c2:
        raise HypothesisFailure("the two frame edges must have different colors")
    comps = [set(c) for c in graph_basics(h).components]
    dens = [(sum(1 for u, v in h.edges if u in c), len(c)) for c in comps]
    pair = next(((i, j) for i, j in combinations(range(len(comps)), 2)
                 if dens[i][0] * dens[j][1] != dens[j][0] * dens[i][1]), None)
    if pair is None:
        raise HypothesisFailure("all components of H have the same edge density")
    U, W = comps[pair[0]], comps[pair[1]]
    eU, eW = dens[pair[0]][0], dens[pair[1]][0]
    side = next(enumerate_partitions(h, 2))
    first, second = (x1, y1), (x2, y2)

    def mixed(part, o_in, o_out):
        return tuple(first[side[v] ^ o_in] if v in part else second[side[v] ^ o_out] for v in range(h.n))

    def whole(o):
        return tuple(second[side[v] ^ o] for v in range(h.n))

    pa = [(mixed(U, a, b), len(W)) for a in (0, 1) for b in (0, 1)] + [(whole(o), 2 * len(U)) for o in (0, 1)]
    pb = [(mixed(W, a, b), len(U)) for a in (0, 1) for b in (0, 1)] + [(whole(o), 2 * len(W)) for o in (0, 1)]
    predicted = (c1 - c2) * 4 * (len(W) * eU - len(U) * eW)
    return _finish("bipartite-components", h, frame, pa, pb, predicted,
                   {"U": sorted(U), "W": sorted(W)})


def _sharing_much_core(recipe, h: Graph, frame: Frame, s: int, t: int) -> TemplateWitness:
    f = frame.colored
    r = chromatic_number(h)
    q = [x for x in range(f.n) if x not in (s, t)]
    cl1, cl2 = _clique_disc(f, q + [s]), _clique_disc(f, q + [t])
    if cl1 == cl2:
        raise HypothesisFailure("the two cliques must have different discrepancies")
    deg = [h.degree(v) for v in range(h.n)]
    if len(set(deg)) <= 1:
        raise HypothesisFailure("H must be non-regular")
    u = deg.index(min(deg))
    v = deg.index(max(deg))
    classes = _first_classes(h, r)
    cls_of = {w: i for i, c in enumerate(classes) for w in c}

    def family(w, moved):
        out = []
        iw = cls_of[w]
        rest = [j for j in range(r) if j != iw]
        for perm in permutations(rest):
            targets = [0] * r
            targets[iw] = t
            for qi, j in zip(q, perm):
                targets[j] = qi
            out.append((_place(h.n, classes, targets, {w: s} if moved else None), 1))
        return out

    pa = family(v, False) + family(u, True)
    pb = family(u, False) + family(v, True)
    predicted = (cl2 - cl1) * factorial(r - 2) * (deg[v] - deg[u])
    return _finish(recipe, h, frame, pa, pb, predicted, {"s": s, "t": t, "u": u, "v": v})


def _sharing_much(h: Graph, frame: Frame) -> TemplateWitness:
    r = chromatic_number(h)
    s, t = _missing_edge(frame.colored, r)
    return _sharing_much_core("sharing-much", h, frame, s, t)


def _nonregular_clique(h: Graph, frame: Frame) -> TemplateWitness:
    f = frame.colored
    r = chromatic_number(h)
    if f.n != r + 1 or f.num_edges != comb(r + 1, 2):
        raise HypothesisFailure(f"frame must be a coloring of K_{r + 1}")
    sums = [f.color_sum_at(x) for x in range(f.n)]
    pair = next(((a, b) for a, b in combinations(range(f.n), 2) if sums[a] != sums[b]), None)
    if pair is None:
        raise HypothesisFailure("the positive edges of the frame must not form a regular graph")
    return _sharing_much_core("nonregular-clique", h, frame, *pair)


def _degree_split(h: Graph, frame: Frame) -> TemplateWitness:
    f = frame.colored
    r = chromatic_number(h)
    x, y = _missing_edge(f, r)
    common = [w for w in range(f.n) if w not in (x, y)]
    if _clique_disc(f, common + [x]) != _clique_disc(f, common + [y]):
        raise HypothesisFailure("the two cliques must have equal discrepancy")
    diff = {w: f.color(x, w) - f.color(y, w) for w in common}
    z = next((w for w in common if diff[w]), None)
    if z is None:
        raise HypothesisFailure("some shared vertex must see the two private vertices in different colors")
    w = next((w for w in common if diff[w] == -diff[z]), None)
    if w is None:
        raise HypothesisFailure("no balancing shared vertex; needs r >= 3")
    found = None
    for classes in _r_partitions(h, r):
        for a1 in range(h.n):
            i1 = next(i for i, c in enumerate(classes) if a1 in c)
            nb = h.adj[a1]
            dto = [len(nb & set(c)) for c in classes]
            others = [i for i in range(r) if i != i1]
            for i2, i3 in permutations(others, 2):
                if dto[i2] != dto[i3]:
                    found = (classes, a1, i1, i2, i3, dto)
                    break
            if found:
                break
        if found:
            break
    if found is None:
        raise HypothesisFailure("every vertex has equal degree to every pair of other classes in every coloring")
    classes, a1, i1, i2, i3, dto = found
    rest = [i for i in range(r) if i not in (i1, i2, i3)]
    vs = [v for v in common if v not in (z, w)]

    def copy(swap, moved, perm):
        targets = [0] * r
        targets[i1] = y
        targets[i2], targets[i3] = (w, z) if swap else (z, w)
        for vi, j in zip(vs, perm):
            targets[j] = vi
        return (_place(h.n, classes, targets, {a1: x} if moved else None), 1)

    perms = list(permutations(rest))
    pa = [copy(False, False, p) for p in perms] + [copy(True, True, p) for p in perms]
    pb = [copy(True, False, p) for p in perms] + [copy(False, True, p) for p in perms]
    c = f.color
    predicted = factorial(r - 3) * (dto[i2] - dto[i3]) * (c(y, z) - c(x, z) - c(y, w) + c(x, w))
    return _finish("degree-split", h, frame, pa, pb, predicted,
                   {"x": x, "y": y, "z": z, "w": w, "vertex": a1})


def _unbalanced(h: Graph, frame: Frame) -> TemplateWitness:
    f = frame.colored
    r = chromatic_number(h)
    if r < 4:
        raise HypothesisFailure("needs chromatic number at least 4")
    l1, l2 = clique_pair_in(f, r, r - 2)
    d1, d2 = set(_positive_degrees(f, l1)), set(_positive_degrees(f, l2))
    if len(d1) != 1 or len(d2) != 1:
        raise HypothesisFailure("the positive edges of each clique must form a regular graph")
    d, d_ = d1.pop(), d2.pop()
    if d == d_:
        raise HypothesisFailure("the two cliques must have different positive degrees")
    if not satisfies_c4(h, r).holds:
        raise HypothesisFailure(f"H must satisfy the {r}-wise four-class condition")
    classes = next((sorted(c, key=len) for c in _r_partitions(h, r)
                    if len({len(x) for x in c}) > 1), None)
    if classes is None:
        raise HypothesisFailure("every r-coloring of H is balanced")
    common = sorted(set(l1) & set(l2))
    x1, y1 = sorted(set(l1) - set(l2))
    x2, y2 = sorted(set(l2) - set(l1))
    low = len(classes[0]) + len(classes[1])
    high = len(classes[-2]) + len(classes[-1])

    def low_on(x, y, count):
        # classes 1, 2 on the private pair, classes 3..r on the shared vertices
        return [(_place(h.n, classes, list(pair) + common), count) for pair in ((x, y), (y, x))]

    def high_on(x, y, count):
        # classes r-1, r on the private pair, classes 1..r-2 on the shared vertices
        return [(_place(h.n, classes, common + list(pair)), count) for pair in ((x, y), (y, x))]

    pa = low_on(x1, y1, high) + high_on(x2, y2, low)
    pb = high_on(x1, y1, low) + low_on(x2, y2, high)
    predicted = Fraction(4 * (d - d_) * (high - low) * h.num_edges, r - 1)
    return _finish("unbalanced", h, frame, pa, pb, predicted,
                   {"first": list(l1), "second": list(l2), "degrees": (d, d_)})


def _pair_choices(f: ColoredGraph, r: int):
    """Yield (shared set V, x1, y1, x2, y2) for frames made of two r-cliques
    sharing r-2 or r-1 vertices."""
    if f.n == r + 1:
        s, t = _missing_edge(f, r)
        common = [w for w in range(f.n) if w not in (s, t)]
        for x in common:
            yield [w for w in common if w != x], x, s, x, t
    else:
        l1, l2 = clique_pair_in(f, r, r - 2)
        common = sorted(set(l1) & set(l2))
        x1, y1 = sorted(set(l1) - set(l2))
        x2, y2 = sorted(set(l2) - set(l1))
        yield common, x1, y1, x2, y2


def _nonuniform(h: Graph, frame: Frame) -> TemplateWitness:
    f = frame.colored
    r = chromatic_number(h)
    if r < 4:
        raise HypothesisFailure("needs chromatic number at least 4")
    c = f.color
    chosen = None
    for V, x1, y1, x2, y2 in _pair_choices(f, r):
        qv = sum(c(x1, v) + c(y1, v) - c(x2, v) - c(y2, v) for v in V)
        if qv in (0, 2 * (r - 2), -2 * (r - 2), 4 * (r - 2), -4 * (r - 2)):
            continue
        g = {v: c(v, x1) + c(v, y1) - c(v, x2) - c(v, y2) for v in V}
        pair = next(((a, b) for a, b in combinations(V, 2) if g[a] != g[b]), None)
        if pair:
            chosen = (V, x1, y1, x2, y2, g, pair)
            break
    if chosen is None:
        raise HypothesisFailure("the frame's cross-discrepancy is a multiple of 2(r-2)")
    if not satisfies_c4(h, r).holds:
        raise HypothesisFailure(f"H must satisfy the {r}-wise four-class condition")
    V, x1, y1, x2, y2, g, (u, v) = chosen
    found = None
    for classes in _r_partitions(h, r):
        e = [[_edges_between(h, a, b) for b in classes] for a in classes]
        for i1, i2, i3 in permutations(range(r), 3):
            if e[i1][i2] != e[i1][i3]:
                found = (classes, e, i1, i2, i3)
                break
        if found:
            break
    if found is None:
        raise HypothesisFailure("H is uniform")
    classes, e, i1, i2, i3 = found
    i4 = next(i for i in range(r) if i not in (i1, i2, i3))
    rest = [i for i in range(r) if i not in (i1, i2, i3, i4)]
    vs = [w for w in V if w not in (u, v)]

    def copy(xa, ya, a2, a3):
        targets = [0] * r
        targets[i1], targets[i4], targets[i2], targets[i3] = xa, ya, a2, a3
        for w, j in zip(vs, rest):
            targets[j] = w
        return (_place(h.n, classes, targets), 1)

    pa = [copy(x1, y1, u, v), copy(x2, y2, v, u)]
    pb = [copy(x1, y1, v, u), copy(x2, y2, u, v)]
    predicted = (g[u] - g[v]) * (e[i1][i2] - e[i1][i3])
    return _finish("nonuniform", h, frame, pa, pb, predicted,
                   {"shared": V, "u": u, "v": v})


def _c4_violation(h: Graph, frame: Frame) -> TemplateWitness:
    f = frame.colored
    k = f.n
    if k < 4:
        raise HypothesisFailure("needs a clique frame on at least 4 vertices")
    if f.num_edges != comb(k, 2):
        raise HypothesisFailure("frame must be a coloring of a complete graph")
    colors = set(f.colors.values())
    plus_star = any(all(f.color(u, w) == (1 if u == x or w == x else -1)
                        for u, w in f.edges) for x in range(k))
    minus_star = any(all(f.color(u, w) == (-1 if u == x or w == x else 1)
                         for u, w in f.edges) for x in range(k))
    if len(colors) == 1 or plus_star or minus_star:
        raise HypothesisFailure("frame must be neither monochromatic nor a star")
    report = satisfies_c4(h, k)
    if report.holds:
        raise HypothesisFailure(f"H satisfies the {k}-wise four-class condition")
    classes = classes_of(report.coloring, k)
    i1, i2, i3, i4 = report.quadruple
    c = f.color
    quad = next(q for q in permutations(range(k), 4)
                if c(q[0], q[1]) + c(q[2], q[3]) != c(q[0], q[2]) + c(q[1], q[3]))
    a1, a2, a3, a4 = quad
    rest_cls = [i for i in range(k) if i not in report.quadruple]
    rest_vtx = [x for x in range(k) if x not in quad]

    def copy(t1, t2, t3, t4):
        targets = [0] * k
        targets[i1], targets[i2], targets[i3], targets[i4] = t1, t2, t3, t4
        for j, x in zip(rest_cls, rest_vtx):
            targets[j] = x
        return (_place(h.n, classes, targets), 1)

    pa = [copy(a1, a2, a3, a4), copy(a4, a3, a2, a1)]
    pb = [copy(a1, a3, a2, a4), copy(a4, a2, a3, a1)]
    e = lambda a, b: _edges_between(h, classes[a], classes[b])
    predicted = ((c(a1, a2) + c(a3, a4) - c(a1, a3) - c(a2, a4))
                 * (e(i1, i2) + e(i3, i4) - e(i1, i3) - e(i2, i4)))
    return _finish("c4-violation", h, frame, pa, pb, predicted,
                   {"frame_quadruple": quad, "class_quadruple": report.quadruple})


def _structured_pair(h: Graph, frame: Frame) -> TemplateWitness:
    f = frame.colored
    r = chromatic_number(h)
    if r < 3:
        raise HypothesisFailure("needs chromatic number at least 3")
    l1, l2 = clique_pair_in(f, r, r - 2)
    common = sorted(set(l1) & set(l2))
    x1, y1 = sorted(set(l1) - set(l2))
    x2, y2 = sorted(set(l2) - set(l1))
    c = f.color
    q = sum(c(x1, v) + c(y1, v) - c(x2, v) - c(y2, v) for v in common)
    t = c(x1, y1) - c(x2, y2)
    s = Fraction(q, 2 * (r - 2))

    def score(classes, i, j):
        inside = set(classes[i]) | set(classes[j])
        leaving = sum(1 for a, b in h.edges if (a in inside) != (b in inside))
        return (s * leaving + t * _edges_between(h, classes[i], classes[j])) / (len(classes[i]) + len(classes[j]))

    first = None
    second = None
    for classes in _r_partitions(h, r):
        for i, j in combinations(range(r), 2):
            val = score(classes, i, j)
            if first is None:
                first = (classes, i, j, val)
            elif val != first[3]:
                second = (classes, i, j, val)
                break
        if second:
            break
    if second is None:
        raise HypothesisFailure(f"H is ({s}, {t})-structured")

    def ordered(entry):
        classes, i, j, _ = entry
        return [classes[i], classes[j]] + [classes[k] for k in range(r) if k not in (i, j)]

    A, B = ordered(first), ordered(second)
    pA, pB = len(A[0]) + len(A[1]), len(B[0]) + len(B[1])

    def on(classes, x, y, count):
        out = []
        for pair in ((x, y), (y, x)):
            for perm in permutations(common):
                out.append((_place(h.n, classes, list(pair) + list(perm)), count))
        return out

    pa = on(A, x1, y1, pB) + on(B, x2, y2, pA)
    pb = on(A, x2, y2, pB) + on(B, x1, y1, pA)
    predicted = 2 * factorial(r - 2) * pA * pB * (first[3] - second[3])
    return _finish("structured-pair", h, frame, pa, pb, predicted,
                   {"s": s, "t": t, "scores": (first[3], second[3])})


_RECIPE_FN = {
    "bipartite-components": _bipartite_components,
    "sharing-much": _sharing_much,
    "nonregular-clique": _nonregular_clique,
    "degree-split": _degree_split,
    "unbalanced": _unbalanced,
    "nonuniform": _nonuniform,
    "c4-violation": _c4_violation,
    "structured-pair": _structured_pair,
}


def template_witness(recipe: str, h: Graph, frame) -> TemplateWitness:
    """Build a blowup of ``frame`` with two explicit perfect H-factors whose
    discrepancies differ by the recipe's closed form."""
    if recipe not in _RECIPE_FN:
        raise ContractViolation(f"unknown recipe {recipe!r}; choose from {', '.join(RECIPES)}")
    if h.num_edges == 0:
        raise ContractViolation("H must have an edge")
    return _RECIPE_FN[recipe](h, as_frame(frame))


# --------------------------------------------------------------------------
# lower-bound constructions

CASES = ("regular-star", "twin-cliques", "butterfly", "circulant", "regular-split",
         "star-triangle", "structured-clique")
CLAIMS = ("all_factors_zero", "all_factors_equal", "no_factor")


@dataclass(frozen=True)
class LowerBoundConstruction:
    case: str
    spec: BlowupSpec | None          # None when the host is not a blowup
    min_degree_ratio: Fraction
    claim: str
    provenance: str
    order: int
    details: dict = field(default_factory=dict)
    host: ColoredGraph | None = field(default=None, repr=False)

    @cached_property
    def colored_graph(self) -> ColoredGraph:
        return self.host if self.host is not None else blowup(self.spec)


def circulant_coloring(k: int, offsets: int) -> ColoredGraph:
    """K_k with +1 exactly on pairs at cyclic distance at most ``offsets``."""
    cols = {}
    for u, v in combinations(range(k), 2):
        dist = min(v - u, k - (v - u))
        cols[(u, v)] = 1 if dist <= offsets else -1
    return ColoredGraph(k, cols)


def blowup_min_degree_ratio(spec: BlowupSpec) -> Fraction:
    f = spec.frame.colored
    degs = [sum(spec.sizes[y] for y in f.adj[x]) for x in range(f.n) if spec.sizes[x] > 0]
    return Fraction(min(degs), spec.total)


def has_fractional_factor(h: Graph, spec: BlowupSpec) -> bool:
    cols = hom_columns(h, spec.frame.colored)
    if not cols:
        return spec.total == 0
    loads = sorted({c.loads for c in cols})
    rows = [[ld[x] for ld in loads] for x in range(spec.frame.n)]
    out = solve_lp(LpProblem([0] * len(loads), rows, list(spec.sizes)))
    return isinstance(out, Optimal)


def _need_divisible(m: int, d: int, what: str):
    if m <= 0 or m % d:
        raise HypothesisFailure(f"scale must be a positive multiple of {d} ({what})")


def _structured_clique_params(h: Graph, r: int):
    """(C, label) for the structured-clique case, or a refusal."""
    if structure_density(h, 0, 1) is not None:
        return Fraction(0), "(0,1)-structured"
    c4 = None
    for t in (-2, -1, 0, 1, 2):
        if structure_density(h, 1, t) is None:
            continue
        if c4 is None:
            c4 = satisfies_c4(h, r).holds
        if not c4:
            break
        if r + t == 4:
            raise HypothesisFailure("r + t = 4: every coloring is balanced, the bound comes from the chromatic value")
        return Fraction(-2, 2 * r - 4 + t), f"(1,{t})-structured"
    raise HypothesisFailure("H is neither (0,1)-structured nor (1,t)-structured with |t| <= 2 and the r-wise four-class condition")


def structured_clique_coloring(r: int) -> ColoredGraph:
    """K_r with every edge at vertex 0 positive and exactly one more positive
    than negative edge, extra positives taken in lexicographic order."""
    edges = kr_edges(r)
    need = (len(edges) + 1) // 2
    # edges at vertex 0 come first in lexicographic order
    return kr_coloring(r, (1 << need) - 1)


def lower_bound_construction(h: Graph, case: str, m: int, k: int | None = None,
                             check: bool = True, kind: int | None = None) -> LowerBoundConstruction:
    """Build the colored host of a lower-bound argument at scale ``m``.

    With ``check=False`` the case hypothesis on H is skipped ("posed" mode);
    the claim is then read off the template program on the frame."""
    if case not in CASES:
        raise ContractViolation(f"unknown case {case!r}; choose from {', '.join(CASES)}")
    if h.num_edges == 0:
        raise ContractViolation("H must have an edge")
    r = chromatic_number(h)
    basics = graph_basics(h)
    details: dict = {}
    host = None
    spec = None

    if case == "regular-star":
        if check and not basics.is_regular:
            raise HypothesisFailure("H must be regular")
        _need_divisible(m, 4 * h.n // gcd(4, h.n), "4 and |H|")
        spec = BlowupSpec(star_clique(4, 1), (m // 4,) * 4)
    elif case == "twin-cliques":
        if check and basics.component_density is None:
            raise HypothesisFailure("components of H must share one edge density")
        _need_divisible(m, 2 * h.n // gcd(2, h.n), "2 and |H|")
        half = m // 2
        cols = {}
        for off, sign in ((0, 1), (half, -1)):
            for u, v in combinations(range(off, off + half), 2):
                cols[(u, v)] = sign
        host = ColoredGraph(m, cols)
        ratio = Fraction(half - 1, m)
    elif case == "butterfly":
        if r != 3 and check:
            raise HypothesisFailure("needs chromatic number 3")
        kinds = (kind,) if kind else (1, 2, 3)
        chosen = next((b for b in kinds if not is_template(butterfly(b), h).is_template), None)
        if chosen is None:
            if check:
                raise HypothesisFailure("every butterfly is a template for H")
            chosen = kinds[0]
        _need_divisible(m, 7 * h.n // gcd(7, h.n), "7 and |H|")
        spec = BlowupSpec(butterfly(chosen), (3 * m // 7,) + (m // 7,) * 4)
        details["butterfly"] = chosen
    elif case == "circulant":
        if k is None:
            k = r + (1 - r) % 4
        if k % 4 != 1:
            raise HypothesisFailure("k must be 1 mod 4")
        if check and not satisfies_c4(h, k).holds:
            raise HypothesisFailure(f"H must satisfy the {k}-wise four-class condition")
        _need_divisible(m, k, "k")
        spec = BlowupSpec(Frame(circulant_coloring(k, (k - 1) // 4), f"circulant:{k}"), (m // k,) * k)
        details["k"] = k
    elif case == "regular-split":
        if k is None:
            k = r + 1 if (r + 1) % 4 != 1 else r
        if k % 4 == 1 or k < 2:
            raise HypothesisFailure("k must not be 1 mod 4")
        if check and not basics.is_regular:
            raise HypothesisFailure("H must be regular")
        if check and not satisfies_c4(h, k).holds:
            raise HypothesisFailure(f"H must satisfy the {k}-wise four-class condition")
        _need_divisible(m, 4 * k, "4k")
        ell, plus, minus = {0: (k // 2, 0, m // k), 2: ((k - 2) // 2, m // (2 * k), m // (2 * k)),
                            3: ((k - 3) // 2, 3 * m // (4 * k), m // (4 * k))}[k % 4]
        inner = circulant_coloring(k - 1, ell // 2)
        cols = dict(inner.colors)
        # split vertex: k-1 positive everywhere, k negative everywhere, not adjacent
        for u in range(k - 1):
            cols[(u, k - 1)] = 1
            cols[(u, k)] = -1
        frame = Frame(ColoredGraph(k + 1, cols), f"split-circulant:{k}")
        spec = BlowupSpec(frame, (m // k,) * (k - 1) + (plus, minus))
        details.update(k=k, ell=ell)
    elif case == "star-triangle":
        if check:
            if r != 3:
                raise HypothesisFailure("needs chromatic number 3")
            if structure_density(h, 1, 2) is None:
                raise HypothesisFailure("H must be (1,2)-structured")
        if m <= 0:
            raise HypothesisFailure("scale must be positive")
        spec = BlowupSpec(star_clique(3, 1), (2 * m, 3 * m, 3 * m))
    else:  # structured-clique
        if r < 6 or r % 4 not in (2, 3):
            raise HypothesisFailure("needs r >= 6 with r = 2 or 3 mod 4")
        if check:
            C, label = _structured_clique_params(h, r)
        else:
            C, label = Fraction(0), "posed"
        d = (r - 2) * (r - 1) * (r + 1) * C.denominator * h.n
        _need_divisible(m, d, "(r-2)(r-1)(r+1)|H| times the denominator of C")
        x = ((r - 3) - (r - 1) * C) * m / ((r - 2) * (r + 1))
        y = (m - x) / (r - 1)
        if x.denominator != 1 or y.denominator != 1:
            raise HypothesisFailure("part sizes are not integral at this scale")
        spec = BlowupSpec(Frame(structured_clique_coloring(r), "structured-clique"),
                          (int(x),) + (int(y),) * (r - 1))
        details.update(C=C, structure=label)

    if spec is not None:
        ratio = blowup_min_degree_ratio(spec)
        if spec.total % h.n or not has_fractional_factor(h, spec):
            claim = "no_factor"
        elif check:
            claim = "all_factors_zero"
        elif is_template(spec.frame, h).is_template:
            raise ContractViolation("the frame is a template for H: no common discrepancy to claim")
        else:
            claim = "all_factors_equal"
    else:
        claim = "all_factors_zero"
    return LowerBoundConstruction(case, spec, ratio, claim, case if check else f"{case} (posed)",
                                  m if spec is None else spec.total, details, host)


# --------------------------------------------------------------------------
# auxiliary complete multipartite graph

@dataclass(frozen=True)
class FactorBlock:
    """``count`` disjoint copies of a complete r-partite block with the given
    part sizes, each tiled by the listed placements (H-vertex -> part)."""

    name: str
    count: int
    part_sizes: tuple[int, ...]
    placements: tuple[tuple[Placement, int], ...]


@dataclass(frozen=True)
class HStarResult:
    r: int
    part_sizes: tuple[int, ...]          # empty when r = 2 (H itself is used)
    alpha: Fraction
    eta: Fraction
    internals: dict
    factor_plan: tuple[FactorBlock, ...]
    checks: dict
    graph: Graph | None = field(default=None, repr=False)

    @property
    def order(self) -> int:
        return sum(self.part_sizes) if self.part_sizes else self.graph.n


def smallest_denominator_in(lo: Fraction, hi: Fraction) -> Fraction:
    """Rational with the smallest denominator in [lo, hi] (ties: smaller numerator)."""
    if lo > hi:
        raise ContractViolation("empty interval")
    d = 1
    while True:
        num = -((-lo.numerator * d) // lo.denominator)   # ceil(lo * d)
        if Fraction(num, d) <= hi:
            return Fraction(num, d)
        d += 1


def bezout(values: Sequence[int]) -> tuple[int, list[int]]:
    """gcd of positive ``values`` and integer coefficients, folded in order."""
    g, coeffs = 0, []
    for v in values:
        # extended Euclid on (g, v)
        a, b, x0, x1, y0, y1 = g, v, 1, 0, 0, 1
        while b:
            qq = a // b
            a, b = b, a - qq * b
            x0, x1 = x1, x0 - qq * x1
            y0, y1 = y1, y0 - qq * y1
        coeffs = [c * x0 for c in coeffs] + [y0]
        g = a
    return g, coeffs


def _cyclic(n_vertices: int, classes, parts: Sequence[int], last=None) -> list[tuple[Placement, int]]:
    """One placement per rotation of ``classes`` over ``parts``; ``last``
    (a class) stays on part ``last[1]`` throughout."""
    k = len(parts)
    out = []
    for i in range(k):
        targets = [parts[(j + i) % k] for j in range(k)]
        cls = list(classes)
        if last is not None:
            cls = cls + [last[0]]
            targets = targets + [last[1]]
        out.append((_place(n_vertices, cls, targets), 1))
    return out


def _plan_loads(plan: Sequence[FactorBlock], r: int) -> tuple[int, ...]:
    tot = [0] * r
    for blk in plan:
        ld = placement_loads(blk.placements, r)
        if ld != blk.part_sizes:
            raise Contradiction(f"block {blk.name} placements do not tile its parts")
        for i in range(r):
            tot[i] += blk.count * ld[i]
    return tuple(tot)


def build_h_star(h: Graph, eta, delta0_value=None) -> HStarResult:
    """Complete r-partite graph with a perfect H-factor whose critical
    chromatic number lies just above ``alpha = max(delta0, 1 - 1/chi*)``."""
    from .templates import delta0 as _delta0

    eta = as_rational(eta)
    if not (0 < eta <= 1):
        raise ContractViolation("eta must lie in (0, 1]")
    prof = chromatic_profile(h)
    r = prof.r
    d0 = _delta0(h).value if delta0_value is None else as_rational(delta0_value)
    alpha = max(d0, 1 - 1 / prof.chi_star)
    if r == 2:
        return HStarResult(2, (), alpha, eta, {"path": "identity"}, (), {}, h)
    n = h.n
    if alpha + eta / 4 >= Fraction(r - 1, r):
        classes = _first_classes(h, r)
        block = FactorBlock("balanced", 1, (n,) * r, tuple(_cyclic(n, classes, list(range(r)))))
        sizes = _plan_loads([block], r)
        internals = {"path": "balanced"}
        plan = (block,)
    else:
        sig = prof.sigma
        beta = smallest_denominator_in(1 - alpha - eta / 5, 1 - alpha - eta / 10)
        q = ((n - sig) - (r - 1) * n * beta) / (r * n * beta - n)
        if q < 0:
            raise Contradiction("negative blowup ratio in the auxiliary construction")
        ell = q.denominator
        kk = q.numerator
        # block one: r-1 parts of n - sigma, last part (r-1) sigma
        small = next(c for c in _r_partitions(h, r) if min(len(x) for x in c) == sig)
        small = sorted(small, key=len, reverse=True)
        b1 = FactorBlock("unbalanced", 0, (n - sig,) * (r - 1) + ((r - 1) * sig,),
                         tuple(_cyclic(n, small[:-1], list(range(r - 1)), (small[-1], r - 1))))
        b2 = FactorBlock("balanced", 0, (n,) * r, tuple(_cyclic(n, small, list(range(r)))))
        b3_sizes = tuple(kk * x + ell * y for x, y in zip(b2.part_sizes, b1.part_sizes))
        b3_total = sum(b3_sizes)
        # block four: unit gap between the first two parts via Bezout
        gaps = sorted(s for s in prof.d_set if s)
        g, xs = bezout(gaps)
        if g != 1:
            raise Contradiction("class-size gaps are not coprime on the non-balanced path")
        b4_place = []
        for s_gap, coef in zip(gaps, xs):
            if not coef:
                continue
            for cl in _r_partitions(h, r):
                srt = sorted(cl, key=len)
                j = next((j for j in range(r - 1) if len(srt[j + 1]) - len(srt[j]) == s_gap), None)
                if j is not None:
                    break
            order = [srt[j + 1], srt[j]] + [c for i, c in enumerate(srt) if i not in (j, j + 1)]
            if coef < 0:
                order[0], order[1] = order[1], order[0]
            b4_place.append((_place(n, order, list(range(r))), abs(coef)))
        b4_sizes = placement_loads(b4_place, r)
        a = sum(b4_sizes)
        M = 1
        while True:
            big = a + a * M * b3_total
            c1 = Fraction(abs(a * b3_sizes[-1] - b4_sizes[-1] * b3_total), (r - 1) * b3_total * big)
            c2 = (1 - beta) * a / big
            if c1 <= eta / 20 and c2 < eta / 10:
                break
            M += 1
        copies = a * M
        plan = (FactorBlock("gap", 1, b4_sizes, tuple(b4_place)),
                FactorBlock("balanced", copies * kk, b2.part_sizes, b2.placements),
                FactorBlock("unbalanced", copies * ell, b1.part_sizes, b1.placements))
        sizes = _plan_loads(plan, r)
        internals = {"path": "full", "beta": beta, "k": kk, "ell": ell, "M": M,
                     "bezout": dict(zip(gaps, xs)), "gap_block_sizes": b4_sizes,
                     "mixed_block_sizes": b3_sizes, "mixed_block_copies": copies,
                     "block_counts": {"unbalanced": copies * ell, "balanced": copies * kk,
                                      "mixed": copies, "gap": 1}}
    star = multipartite_profile(sizes)
    total = sum(sizes)
    lhs = 1 - 1 / star.chi_cr
    checks = {
        "complete_multipartite_with_factor": len(sizes) == r and min(sizes) > 0,
        "critical_value_window": alpha <= lhs <= alpha + eta / 4,
        "gap_gcd_one": (star.hcf_chi == 1) if alpha + eta / 4 < Fraction(r - 1, r) else True,
        "min_degree_above_delta0": (Fraction(total - max(sizes), total) > d0)
        if d0 < 1 - Fraction(1, r) else True,
    }
    if not all(checks.values()):
        failed = [k for k, v in checks.items() if not v]
        raise Contradiction(f"auxiliary graph fails {failed}")
    return HStarResult(r, sizes, alpha, eta, internals, tuple(plan), checks)
