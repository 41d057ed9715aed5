"""Exhaustive ground truth on small explicit hosts.

Two independent routes compute the discrepancies of perfect H-factors:

* an explicit exact cover over H-copies (a copy is a subgraph, i.e. an
  embedding up to automorphisms of H), choosing the most constrained
  uncovered vertex first;
* an exact count over twin classes of the host.  Twins are interchangeable,
  so the number of factors of each discrepancy depends only on how many
  vertices of each class are left; copies are counted as embeddings divided
  by ``|Aut(H)|`` and always cover the lowest uncovered class.

The second route makes hosts of a few dozen vertices cheap; tests check that
both routes agree wherever the explicit one finishes.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from math import prod

from .blowups import BlowupSpec, ExplicitFactor, blowup
from .coloring import automorphisms, enumerate_embeddings
from .errors import ContractViolation
from .graph import ColoredGraph, Graph
from .templates import as_frame

DEFAULT_BUDGET = 10 ** 6


class _BudgetExceeded(Exception):
    pass


@dataclass(frozen=True)
class FactorCheck:
    valid: bool
    discrepancy: int | None
    reason: str = ""

    def __iter__(self):
        return iter((self.valid, self.discrepancy))


def verify_factor(h: Graph, host: ColoredGraph, factor) -> FactorCheck:
    """Disjoint, spanning, edge-preserving; returns the discrepancy when valid."""
    copies = factor.copies if isinstance(factor, ExplicitFactor) else factor
    seen = set()
    disc = 0
    for i, emb in enumerate(copies):
        emb = tuple(emb)
        if len(emb) != h.n:
            return FactorCheck(False, None, f"copy {i} has {len(emb)} vertices, H has {h.n}")
        if any(not (0 <= v < host.n) for v in emb):
            return FactorCheck(False, None, f"copy {i} uses a vertex outside the host")
        if len(set(emb)) != h.n:
            return FactorCheck(False, None, f"copy {i} is not injective")
        if seen & set(emb):
            return FactorCheck(False, None, f"copy {i} overlaps an earlier copy")
        seen |= set(emb)
        for u, v in h.edges:
            if not host.has_edge(emb[u], emb[v]):
                return FactorCheck(False, None, f"copy {i} maps edge {u}-{v} to a non-edge")
            disc += host.color(emb[u], emb[v])
    if len(seen) != host.n:
        return FactorCheck(False, None, f"factor covers {len(seen)} of {host.n} vertices")
    return FactorCheck(True, disc)


def _require_divisible(h: Graph, host: Graph):
    if h.n == 0 or host.n % h.n:
        raise ContractViolation(f"host order {host.n} is not divisible by |H| = {h.n}")


# --------------------------------------------------------------------------
# explicit route

def host_copies(h: Graph, host: ColoredGraph) -> list[tuple[int, tuple[int, ...], int]]:
    """Distinct H-copies of ``host`` as (vertex mask, embedding, discrepancy)."""
    seen = set()
    out = []
    for emb in enumerate_embeddings(h, host):
        key = (frozenset(emb), frozenset(tuple(sorted((emb[u], emb[v]))) for u, v in h.edges))
        if key in seen:
            continue
        seen.add(key)
        mask = sum(1 << v for v in emb)
        out.append((mask, emb, sum(host.color(emb[u], emb[v]) for u, v in h.edges)))
    return out


class FactorStream:
    """Iterator over perfect H-factors of an explicit host.  After the
    iteration ends, ``truncated`` tells whether the node budget cut it short."""

    def __init__(self, h: Graph, host: ColoredGraph, budget: int = DEFAULT_BUDGET):
        _require_divisible(h, host)
        self.h, self.host, self.budget = h, host, budget
        self.truncated = False
        self.nodes = 0

    def __iter__(self):
        host = self.host
        copies = host_copies(self.h, host)
        by_vertex = [[] for _ in range(host.n)]
        for idx, (mask, _, _) in enumerate(copies):
            for v in range(host.n):
                if mask >> v & 1:
                    by_vertex[v].append(idx)
        full = (1 << host.n) - 1
        chosen: list[int] = []

        def rec(covered):
            self.nodes += 1
            if self.nodes > self.budget:
                raise _BudgetExceeded
            if covered == full:
                yield ExplicitFactor(tuple(copies[i][1] for i in chosen))
                return
            best, best_opts = None, None
            for v in range(host.n):
                if covered >> v & 1:
                    continue
                opts = [i for i in by_vertex[v] if not copies[i][0] & covered]
                if best_opts is None or len(opts) < len(best_opts):
                    best, best_opts = v, opts
                    if not opts:
                        return
            for i in best_opts:
                chosen.append(i)
                yield from rec(covered | copies[i][0])
                chosen.pop()

        try:
            yield from rec(0)
        except _BudgetExceeded:
            self.truncated = True


def enumerate_perfect_factors(h: Graph, host: ColoredGraph, budget: int = DEFAULT_BUDGET) -> FactorStream:
    return FactorStream(h, host, budget)


@dataclass(frozen=True)
class DiscrepancySummary:
    values: Counter
    factor_count: int
    truncated: bool
    method: str = "explicit"

    @property
    def distinct(self) -> list[int]:
        return sorted(self.values)


def _explicit_summary(h, host, budget) -> DiscrepancySummary:
    stream = FactorStream(h, host, budget)
    values: Counter = Counter()
    for f in stream:
        values[verify_factor(h, host, f).discrepancy] += 1
    return DiscrepancySummary(values, sum(values.values()), stream.truncated, "explicit")


# --------------------------------------------------------------------------
# twin-class route

def twin_classes(host: ColoredGraph) -> tuple[list[list[int]], list[bool]]:
    """Partition into classes of interchangeable vertices.  Returns the
    classes and, per class, whether it is a clique (true twins)."""
    n = host.n
    sig = [frozenset((w, host.color(v, w)) for w in host.adj[v]) for v in range(n)]
    groups: dict = {}
    for v in range(n):
        groups.setdefault(("open", sig[v]), []).append(v)
    classes, cliques = [], []
    singles = []
    for key, vs in groups.items():
        if len(vs) > 1:
            classes.append(vs)
            cliques.append(False)
        else:
            singles.extend(vs)
    for c in (1, -1):
        closed: dict = {}
        for v in singles:
            closed.setdefault(sig[v] | {(v, c)}, []).append(v)
        singles = []
        for vs in closed.values():
            if len(vs) > 1:
                classes.append(vs)
                cliques.append(True)
            else:
                singles.extend(vs)
    for v in singles:
        classes.append([v])
        cliques.append(False)
    order = sorted(range(len(classes)), key=lambda i: min(classes[i]))
    return [sorted(classes[i]) for i in order], [cliques[i] for i in order]


def _falling(n: int, k: int) -> int:
    out = 1
    for i in range(k):
        out *= n - i
    return out


class TwinCounter:
    """Exact discrepancy distribution of perfect H-factors as a function of
    the number of vertices left in each twin class of a fixed quotient."""

    def __init__(self, h: Graph, adjacent, color, n_classes: int, loops=None):
        self.h = h
        self.k = n_classes
        self.aut = len(automorphisms(h))
        self.memo: dict[tuple, Counter] = {}
        self.reps: dict[tuple, tuple[int, ...]] = {}
        loops = loops or [False] * n_classes
        groups: Counter = Counter()
        for psi in self._class_maps(adjacent, loops):
            loads = [0] * n_classes
            for c in psi:
                loads[c] += 1
            g = sum(color(psi[u], psi[v]) for u, v in h.edges)
            key = (tuple(loads), g)
            groups[key] += 1
            self.reps.setdefault(key, psi)
        self.groups = sorted(groups.items())
        self.states = 0

    def _class_maps(self, adjacent, loops):
        h, k = self.h, self.k
        order = sorted(range(h.n), key=lambda v: (-h.degree(v), v))
        psi = [-1] * h.n

        def ok(v, c):
            for w in h.adj[v]:
                d = psi[w]
                if d < 0:
                    continue
                if d == c:
                    if not loops[c]:
                        return False
                elif not adjacent(c, d):
                    return False
            return True

        def rec(i):
            if i == h.n:
                yield tuple(psi)
                return
            v = order[i]
            for c in range(k):
                if ok(v, c):
                    psi[v] = c
                    yield from rec(i + 1)
            psi[v] = -1

        yield from rec(0)

    def _moves(self, state):
        p = next(i for i, s in enumerate(state) if s)
        for (loads, g), nhom in self.groups:
            lp = loads[p]
            if not lp or any(l > s for l, s in zip(loads, state)):
                continue
            emb = nhom * lp * _falling(state[p] - 1, lp - 1)
            emb *= prod(_falling(state[c], loads[c]) for c in range(self.k) if c != p)
            copies, rem = divmod(emb, self.aut)
            if rem:
                raise ArithmeticError("embedding count not divisible by |Aut(H)|")
            yield (loads, g), copies, tuple(s - l for s, l in zip(state, loads))

    def count(self, state, budget: int = DEFAULT_BUDGET) -> Counter:
        state = tuple(state)
        if state in self.memo:
            return self.memo[state]
        if not any(state):
            return Counter({0: 1})
        self.states += 1
        if self.states > budget:
            raise _BudgetExceeded
        out: Counter = Counter()
        for (_, g), copies, rest in self._moves(state):
            for d, cnt in self.count(rest, budget).items():
                out[d + g] += copies * cnt
        self.memo[state] = out
        return out

    def reconstruct(self, state, target: int, pools: list[list[int]]) -> list[tuple[int, ...]]:
        """One explicit factor of discrepancy ``target``; ``pools`` lists the
        actual host vertices still free in each class (consumed in place)."""
        state = tuple(state)
        if not any(state):
            if target:
                raise ValueError("no factor with this discrepancy")
            return []
        p = next(i for i, s in enumerate(state) if s)
        for key, copies, rest in self._moves(state):
            if not copies:
                continue
            sub = self.count(rest) if any(rest) else Counter({0: 1})
            if sub.get(target - key[1], 0):
                psi = self.reps[key]
                # the pivot vertex is the lowest free vertex of class p
                emb = [0] * self.h.n
                taken = {c: 0 for c in range(self.k)}
                for u in sorted(range(self.h.n), key=lambda u: psi[u] != p):
                    c = psi[u]
                    emb[u] = pools[c][taken[c]]
                    taken[c] += 1
                for c, t in taken.items():
                    del pools[c][:t]
                return [tuple(emb)] + self.reconstruct(rest, target - key[1], pools)
        raise ValueError("no factor with this discrepancy")


def _host_counter(h: Graph, host: ColoredGraph):
    classes, cliques = twin_classes(host)
    rep = [c[0] for c in classes]

    def adjacent(a, b):
        return host.has_edge(rep[a], rep[b])

    def color(a, b):
        if a == b:
            return host.color(classes[a][0], classes[a][1])
        return host.color(rep[a], rep[b])

    return TwinCounter(h, adjacent, color, len(classes), cliques), classes


def discrepancy_multiset(h: Graph, host: ColoredGraph, budget: int = DEFAULT_BUDGET,
                         method: str = "auto") -> DiscrepancySummary:
    """Discrepancies of all perfect H-factors of ``host`` (with multiplicity)."""
    _require_divisible(h, host)
    if method not in ("auto", "twin", "explicit"):
        raise ContractViolation(f"unknown method {method!r}")
    if method in ("auto", "twin"):
        counter, classes = _host_counter(h, host)
        if method == "twin" or len(classes) < host.n:
            try:
                values = counter.count([len(c) for c in classes], budget)
            except _BudgetExceeded:
                if method == "twin":
                    return DiscrepancySummary(Counter(), 0, True, "twin")
            else:
                values = Counter({d: c for d, c in values.items() if c})
                return DiscrepancySummary(values, sum(values.values()), False, "twin")
    return _explicit_summary(h, host, budget)


def factor_with_discrepancy(h: Graph, host: ColoredGraph, target: int) -> ExplicitFactor:
    counter, classes = _host_counter(h, host)
    pools = [list(c) for c in classes]
    return ExplicitFactor(tuple(counter.reconstruct([len(c) for c in classes], target, pools)))


# --------------------------------------------------------------------------
# template search

@dataclass(frozen=True)
class TemplateFound:
    spec: BlowupSpec
    factor_a: ExplicitFactor
    factor_b: ExplicitFactor
    disc_a: int
    disc_b: int
    found = True


@dataclass(frozen=True)
class NoneUpToBound:
    max_total: int
    checked: int
    found = False


def size_vectors(p: int, max_total: int, step: int):
    """Size vectors (zeros allowed) ordered by total, then lexicographically."""
    for total in range(step, max_total + 1, step):
        yield from _compositions(total, p)


def _compositions(total, p):
    if p == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, p - 1):
            yield (first,) + rest


def bruteforce_is_template(frame, h: Graph, max_total: int, budget: int = DEFAULT_BUDGET):
    """First blowup (by total size, then sizes) with total at most
    ``max_total`` carrying perfect H-factors of two discrepancies."""
    frame = as_frame(frame)
    f = frame.colored
    counter = TwinCounter(h, f.has_edge, f.color, f.n)
    checked = 0
    for sizes in size_vectors(f.n, max_total, h.n):
        checked += 1
        values = counter.count(sizes, budget)
        ds = sorted(d for d, c in values.items() if c)
        if len(ds) < 2:
            continue
        spec = BlowupSpec(frame, sizes)
        factors = []
        for target in (ds[-1], ds[0]):
            pools = [list(spec.cluster(x)) for x in range(f.n)]
            factors.append(ExplicitFactor(tuple(counter.reconstruct(sizes, target, pools))))
        host = blowup(spec)
        for fac, target in zip(factors, (ds[-1], ds[0])):
            chk = verify_factor(h, host, fac)
            if not chk.valid or chk.discrepancy != target:
                raise ArithmeticError(f"reconstructed factor failed verification: {chk.reason}")
        return TemplateFound(spec, factors[0], factors[1], ds[-1], ds[0])
    return NoneUpToBound(max_total, checked)


@dataclass(frozen=True)
class Agreement:
    lp_template: bool
    oracle_template: bool
    bound: int
    oracle: object = field(repr=False, default=None)

    @property
    def agree(self) -> bool:
        return self.lp_template == self.oracle_template


def lp_oracle_agreement(frame, h: Graph, max_total: int) -> Agreement:
    """Compare the template program with the exhaustive search.  A template
    verdict must be confirmed within the larger of ``max_total`` and the
    certificate's blowup order."""
    from .errors import Contradiction
    from .templates import is_template

    dec = is_template(frame, h)
    bound = max_total
    if dec.is_template and dec.certificate is not None:
        bound = max(bound, sum(dec.certificate.part_sizes))
    res = bruteforce_is_template(frame, h, bound)
    out = Agreement(dec.is_template, res.found, bound, res)
    if not out.agree:
        raise Contradiction(f"template program says {dec.is_template}, exhaustive search says {res.found}")
    return out
