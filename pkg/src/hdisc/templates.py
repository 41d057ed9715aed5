"""Colored frames, the template linear program and the zero-discrepancy
threshold over colorings of the complete graph.

A homomorphism ``phi: H -> F`` stands for an H-copy placed in the blowup of
the colored frame ``F``: vertex ``u`` of H lands in the part of ``phi(u)``.
Its load vector counts how many vertices of H land in each part and its
color sum ``g(phi)`` is the discrepancy of that copy.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd

from .coloring import Homomorphism, chromatic_number, enumerate_homomorphisms
from .errors import ContractViolation
from .exact import LpProblem, Optimal, Unbounded, common_denominator, solve_lp
from .graph import ColoredGraph, Graph


@dataclass(frozen=True)
class Frame:
    colored: ColoredGraph
    name: str | None = None

    @property
    def n(self) -> int:
        return self.colored.n


def as_frame(frame) -> Frame:
    return frame if isinstance(frame, Frame) else Frame(frame)


# --------------------------------------------------------------------------
# catalog

def _sign(s) -> int:
    if s in (1, "+", "+1"):
        return 1
    if s in (-1, "-", "-1"):
        return -1
    raise ContractViolation(f"color must be + or -, got {s!r}")


def mono_clique(k: int, sign=1) -> Frame:
    s = _sign(sign)
    if k < 2:
        raise ContractViolation("clique needs at least 2 vertices")
    return Frame(ColoredGraph(k, {e: s for e in combinations(range(k), 2)}),
                 f"mono_clique:{k},{'+' if s > 0 else '-'}")


def star_clique(k: int, sign=1) -> Frame:
    """K_k whose edges at vertex 0 have color ``sign`` and all others ``-sign``."""
    s = _sign(sign)
    if k < 2:
        raise ContractViolation("clique needs at least 2 vertices")
    return Frame(ColoredGraph(k, {(u, v): s if u == 0 else -s for u, v in combinations(range(k), 2)}),
                 f"star_clique:{k},{'+' if s > 0 else '-'}")


# wing-one colors (c(u v1), c(u w1), c(v1 w1)); wing two is the negation
BUTTERFLY_WINGS = {
    1: (1, 1, 1),      # monochromatic wings
    2: (-1, -1, 1),    # star wings centred at the shared vertex
    3: (1, -1, 1),     # star wings centred away from the shared vertex
}
BUTTERFLY_NAMES = {1: "monochromatic wings", 2: "stars at the shared vertex",
                   3: "stars away from the shared vertex"}


def butterfly(kind: int) -> Frame:
    """Two triangles ``0,1,2`` and ``0,3,4`` sharing vertex 0 with opposite colors."""
    if kind not in BUTTERFLY_WINGS:
        raise ContractViolation(f"butterfly type must be 1, 2 or 3, got {kind!r}")
    a, b, c = BUTTERFLY_WINGS[kind]
    return Frame(ColoredGraph(5, {(0, 1): a, (0, 2): b, (1, 2): c,
                                  (0, 3): -a, (0, 4): -b, (3, 4): -c}),
                 f"butterfly:{kind}")


def is_butterfly(frame: ColoredGraph) -> bool:
    if frame.n != 5 or frame.edge_set != frozenset({(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)}):
        return False
    c = frame.color
    return c(0, 1) == -c(0, 3) and c(0, 2) == -c(0, 4) and c(1, 2) == -c(3, 4)


def clique_pair(r: int, shared: int, sign1=1, sign2=-1, shared_sign=None) -> Frame:
    """Two copies of K_r on vertices ``0..r-1`` and ``r-shared..2r-shared-1``.

    Edges inside the shared vertices get ``shared_sign`` (default ``sign1``),
    the other edges of each clique get that clique's sign."""
    if not (1 <= shared <= r - 1):
        raise ContractViolation("shared must lie in 1..r-1")
    s1, s2 = _sign(sign1), _sign(sign2)
    ss = s1 if shared_sign is None else _sign(shared_sign)
    first = range(r)
    second = range(r - shared, 2 * r - shared)
    common = set(first) & set(second)
    colors = {}
    for u, v in combinations(first, 2):
        colors[(u, v)] = ss if u in common and v in common else s1
    for u, v in combinations(second, 2):
        colors.setdefault((u, v), s2)
    return Frame(ColoredGraph(2 * r - shared, colors), f"clique_pair:{r},{shared}")


def edge_pair(c1=1, c2=-1) -> Frame:
    """Disjoint edges ``0-1`` and ``2-3``."""
    return Frame(ColoredGraph(4, {(0, 1): _sign(c1), (2, 3): _sign(c2)}), "edge_pair")


def frame_catalog(name: str, params=()) -> Frame:
    params = tuple(params)
    try:
        if name == "mono_clique":
            return mono_clique(int(params[0]), params[1] if len(params) > 1 else 1)
        if name == "star_clique":
            return star_clique(int(params[0]), params[1] if len(params) > 1 else 1)
        if name == "butterfly":
            return butterfly(int(params[0]))
        if name == "clique_pair":
            return clique_pair(int(params[0]), int(params[1]), *params[2:])
        if name == "edge_pair":
            return edge_pair(*params)
    except (IndexError, ValueError) as exc:
        if isinstance(exc, ContractViolation):
            raise
        raise ContractViolation(f"bad parameters for frame {name!r}: {params!r}") from exc
    raise ContractViolation(f"unknown frame {name!r}")


def parse_frame_spec(spec: str) -> Frame:
    """``NAME[:P1,P2,...]`` as accepted by the command line."""
    name, _, rest = spec.partition(":")
    params = [p.strip() for p in rest.split(",")] if rest else []
    return frame_catalog(name.strip(), params)


# --------------------------------------------------------------------------
# columns

@dataclass(frozen=True)
class Column:
    loads: tuple[int, ...]
    g: int
    hom: Homomorphism       # first homomorphism met with these loads and color sum
    multiplicity: int


def hom_columns(h: Graph, frame: ColoredGraph) -> list[Column]:
    """Homomorphisms into ``frame`` folded by (load vector, color sum)."""
    folded: dict[tuple, list] = {}
    edges = h.edges
    color = frame.color
    for phi in enumerate_homomorphisms(h, frame):
        loads = [0] * frame.n
        for x in phi:
            loads[x] += 1
        g = sum(color(phi[u], phi[v]) for u, v in edges)
        key = (tuple(loads), g)
        if key in folded:
            folded[key][1] += 1
        else:
            folded[key] = [phi, 1]
    return [Column(k[0], k[1], v[0], v[1]) for k, v in sorted(folded.items())]


@dataclass(frozen=True)
class TemplateCertificate:
    part_sizes: tuple[int, ...]
    factor_a: tuple[tuple[Homomorphism, int], ...]
    factor_b: tuple[tuple[Homomorphism, int], ...]
    disc_a: int
    disc_b: int


@dataclass(frozen=True)
class TemplateDecision:
    is_template: bool
    optimum: Fraction = Fraction(0)
    certificate: TemplateCertificate | None = None
    note: str = ""


def _template_lp(columns: list[Column], p: int) -> LpProblem:
    m = len(columns)
    nv = 2 * m + p
    rows = []
    for v in range(p):
        rx = [0] * nv
        ry = [0] * nv
        for j, col in enumerate(columns):
            rx[j] = col.loads[v]
            ry[m + j] = col.loads[v]
        rx[2 * m + v] = -1
        ry[2 * m + v] = -1
        rows += [rx, ry]
    rows.append([0] * (2 * m) + [1] * p)
    rhs = [0] * (2 * p) + [1]
    obj = [c.g for c in columns] + [-c.g for c in columns] + [0] * p
    return LpProblem(obj, rows, rhs)


def _smallest_integer_multiple(values) -> list[int]:
    """The primitive integer vector on the ray through ``values``."""
    scale = common_denominator(values)
    ints = [int(v * scale) for v in values]
    g = 0
    for v in ints:
        g = gcd(g, v)
    return [v // g for v in ints] if g > 1 else ints


def is_template(frame, h: Graph) -> TemplateDecision:
    """Decide via the fractional-factor program whether some blowup of
    ``frame`` carries two perfect H-factors of different discrepancy."""
    f = as_frame(frame).colored
    if f.n == 0:
        raise ContractViolation("frame must be nonempty")
    if chromatic_number(h) < 2:
        raise ContractViolation("H must have an edge")
    columns = hom_columns(h, f)
    if not columns:
        return TemplateDecision(False, note="no-embedding")
    out = solve_lp(_template_lp(columns, f.n))
    if isinstance(out, Unbounded):
        raise ContractViolation("template program reported unbounded")
    if not isinstance(out, Optimal):
        return TemplateDecision(False, note="no-fractional-factor")
    if out.value <= 0:
        return TemplateDecision(False, out.value)
    m = len(columns)
    pt = _smallest_integer_multiple(out.point)
    fa = tuple((c.hom, w) for c, w in zip(columns, pt[:m]) if w)
    fb = tuple((c.hom, w) for c, w in zip(columns, pt[m:2 * m]) if w)
    da = sum(c.g * w for c, w in zip(columns, pt[:m]))
    db = sum(c.g * w for c, w in zip(columns, pt[m:2 * m]))
    cert = TemplateCertificate(tuple(pt[2 * m:]), fa, fb, da, db)
    return TemplateDecision(True, out.value, cert)


# --------------------------------------------------------------------------
# colorings of K_r

def kr_edges(r: int) -> list[tuple[int, int]]:
    return list(combinations(range(r), 2))


def kr_coloring(r: int, mask: int) -> ColoredGraph:
    """Coloring of K_r where bit i of ``mask`` set means edge i (in
    lexicographic order) has color +1."""
    return ColoredGraph(r, {e: 1 if mask >> i & 1 else -1 for i, e in enumerate(kr_edges(r))})


def kr_mask(frame: ColoredGraph) -> int:
    return sum(1 << i for i, e in enumerate(kr_edges(frame.n)) if frame.colors[e] == 1)


def kr_orbits(r: int) -> dict[int, int]:
    """Map each coloring mask of K_r to the smallest mask in its orbit under
    vertex permutations and the global color swap."""
    edges = kr_edges(r)
    index = {e: i for i, e in enumerate(edges)}
    total = 1 << len(edges)
    gens = []
    perms = []
    if r >= 2:
        perms.append([1, 0] + list(range(2, r)))
    if r >= 3:
        perms.append([(i + 1) % r for i in range(r)])
    for p in perms:
        gens.append([index[tuple(sorted((p[u], p[v])))] for u, v in edges])
    parent = list(range(total))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            if ra < rb:
                parent[rb] = ra
            else:
                parent[ra] = rb

    full = total - 1
    for mask in range(total):
        for g in gens:
            img = 0
            for i, j in enumerate(g):
                if mask >> i & 1:
                    img |= 1 << j
            union(mask, img)
        union(mask, full ^ mask)
    return {m: find(m) for m in range(total)}


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("HDISC_THREADS", "1")))
    except ValueError:
        return 1


def parallel_map(fn, items):
    """Order-preserving map; uses worker processes when HDISC_THREADS > 1."""
    items = list(items)
    n = _threads()
    if n <= 1 or len(items) < 2:
        return [fn(*it) for it in items]
    with ProcessPoolExecutor(max_workers=n) as ex:
        return list(ex.map(_star, [(fn, it) for it in items]))


def _star(pair):
    fn, args = pair
    return fn(*args)


def _template_for_mask(h: Graph, r: int, mask: int) -> bool:
    return is_template(kr_coloring(r, mask), h).is_template


def nontemplate_masks(h: Graph) -> list[int]:
    r = chromatic_number(h)
    orbit = kr_orbits(r)
    reps = sorted(set(orbit.values()))
    flags = dict(zip(reps, parallel_map(_template_for_mask, [(h, r, m) for m in reps])))
    return [m for m in sorted(orbit) if not flags[orbit[m]]]


def nontemplate_colorings_kr(h: Graph) -> list[ColoredGraph]:
    r = chromatic_number(h)
    return [kr_coloring(r, m) for m in nontemplate_masks(h)]


# --------------------------------------------------------------------------
# zero-discrepancy threshold

@dataclass(frozen=True)
class Delta0Witness:
    coloring: ColoredGraph                           # classes relabeled so ratios ascend
    ratios: tuple[Fraction, ...]
    factor: tuple[tuple[Homomorphism, int], ...]     # integer weights, zero discrepancy
    part_sizes: tuple[int, ...]


@dataclass(frozen=True)
class Delta0Result:
    value: Fraction
    witness: Delta0Witness | None
    nontemplate_colorings: tuple[ColoredGraph, ...] = field(repr=False, default=())


def zero_disc_program(h: Graph, frame: ColoredGraph):
    """Smallest possible largest part ratio of a zero-discrepancy fractional
    factor in a blowup of ``frame``; None when no such factor exists.

    Returns ``(largest ratio, ratios, weighted homomorphisms, part sizes)``."""
    columns = hom_columns(h, frame)
    if not columns:
        return None
    m, r = len(columns), frame.n
    nv = m + r + 1                    # x_f, a_i, t
    rows = []
    for i in range(r):
        row = [c.loads[i] for c in columns] + [0] * (r + 1)
        row[m + i] = -1
        rows.append(row)
    rows.append([0] * m + [1] * r + [0])
    rows.append([c.g for c in columns] + [0] * (r + 1))
    rhs = [0] * r + [1, 0]
    le = []
    for i in range(r):
        row = [0] * nv
        row[m + i] = 1
        row[-1] = -1
        le.append(row)
    obj = [0] * (nv - 1) + [-1]
    out = solve_lp(LpProblem(obj, rows, rhs, le, [0] * r))
    if isinstance(out, Unbounded):
        raise ContractViolation("zero-discrepancy program reported unbounded")
    if not isinstance(out, Optimal):
        return None
    pt = out.point
    ratios = tuple(pt[m:m + r])
    t = -out.value
    ints = _smallest_integer_multiple(pt[:m + r])
    weights = tuple((c.hom, w) for c, w in zip(columns, ints[:m]) if w)
    sizes = tuple(ints[m:])
    return t, ratios, weights, sizes


def _delta0_for_mask(h: Graph, r: int, mask: int):
    return zero_disc_program(h, kr_coloring(r, mask))


def delta0(h: Graph) -> Delta0Result:
    r = chromatic_number(h)
    if r < 2:
        raise ContractViolation("H must have an edge")
    orbit = kr_orbits(r)
    reps = sorted(set(orbit.values()))
    tmpl = dict(zip(reps, parallel_map(_template_for_mask, [(h, r, m) for m in reps])))
    k_reps = [m for m in reps if not tmpl[m]]
    results = dict(zip(k_reps, parallel_map(_delta0_for_mask, [(h, r, m) for m in k_reps])))
    nontemplates = tuple(kr_coloring(r, m) for m in sorted(orbit) if not tmpl[orbit[m]])
    best = None
    for m in k_reps:
        res = results[m]
        if res is not None and (best is None or res[0] < results[best][0]):
            best = m
    if best is None:
        return Delta0Result(Fraction(0), None, nontemplates)
    t, ratios, weights, sizes = results[best]
    # relabel the classes of K_r so that the part ratios ascend
    order = sorted(range(r), key=lambda i: (ratios[i], i))
    new_label = {old: new for new, old in enumerate(order)}
    frame = kr_coloring(r, best).relabel(new_label)
    witness = Delta0Witness(
        coloring=frame,
        ratios=tuple(ratios[i] for i in order),
        factor=tuple((tuple(new_label[x] for x in phi), w) for phi, w in weights),
        part_sizes=tuple(sizes[i] for i in order),
    )
    return Delta0Result(1 - t, witness, nontemplates)


@dataclass(frozen=True)
class ButterflyStatus:
    decisions: dict[int, TemplateDecision]

    @property
    def some_nontemplate(self) -> bool:
        return any(not d.is_template for d in self.decisions.values())


def butterfly_status(h: Graph) -> ButterflyStatus:
    if chromatic_number(h) != 3:
        raise ContractViolation("butterfly status is defined for 3-chromatic graphs")
    return ButterflyStatus({k: is_template(butterfly(k), h) for k in (1, 2, 3)})
