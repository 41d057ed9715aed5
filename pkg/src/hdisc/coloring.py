"""Proper colorings, homomorphisms and the per-coloring edge statistics.

All enumeration runs through a single backtracking search over bitmask
domains: the next vertex is the one with the fewest remaining candidates
(ties broken by higher degree, then lower index), and every assignment
immediately prunes the domains of its neighbors.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .graph import ColoredGraph, Graph

Coloring = tuple[int, ...]
Homomorphism = tuple[int, ...]


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _search(h: Graph, target_adj: Sequence[int], start: list[int],
            injective: bool = False, fresh_k: int | None = None) -> Iterator[tuple[int, ...]]:
    """Enumerate maps ``V(h) -> target`` respecting ``start`` domains and
    sending edges to target edges.

    With ``fresh_k`` set, the target is the complete graph on ``fresh_k``
    labels and only one labeling per unordered partition is produced: a
    vertex may use an already used label or the smallest unused one.
    """
    n = h.n
    adj = [sorted(h.adj[v]) for v in range(n)]
    deg = [len(a) for a in adj]
    image = [-1] * n

    def rec(domains, left, used):
        if left == 0:
            yield tuple(image)
            return
        best = -1
        best_key = None
        for v in range(n):
            if image[v] < 0:
                key = (domains[v].bit_count(), -deg[v], v)
                if best_key is None or key < best_key:
                    best_key = key
                    best = v
                    if key[0] <= 1:
                        break
        v = best
        cand = domains[v]
        if fresh_k is not None:
            nxt = used.bit_length()
            cand &= used | ((1 << nxt) if nxt < fresh_k else 0)
        for x in _bits(cand):
            nd = list(domains)
            ok = True
            allowed = target_adj[x]
            for w in adj[v]:
                if image[w] < 0:
                    nd[w] &= allowed
                    if not nd[w]:
                        ok = False
                        break
            if ok and injective:
                bit = ~(1 << x)
                for w in range(n):
                    if image[w] < 0 and w != v:
                        nd[w] &= bit
                        if not nd[w]:
                            ok = False
                            break
            if not ok:
                continue
            image[v] = x
            yield from rec(nd, left - 1, used | (1 << x))
            image[v] = -1

    yield from rec(list(start), n, 0)


def _target_masks(target: Graph) -> list[int]:
    return [sum(1 << w for w in target.adj[x]) for x in range(target.n)]


def _initial_domains(h: Graph, target: Graph) -> list[int]:
    everything = (1 << target.n) - 1
    nonisolated = sum(1 << x for x in range(target.n) if target.adj[x])
    return [nonisolated if h.adj[v] else everything for v in range(h.n)]


def enumerate_homomorphisms(h: Graph, target: Graph) -> Iterator[Homomorphism]:
    """Every edge-preserving map ``V(h) -> V(target)``, each once."""
    if h.n == 0:
        yield ()
        return
    yield from _search(h, _target_masks(target), _initial_domains(h, target))


def enumerate_embeddings(h: Graph, target: Graph,
                         domains: list[int] | None = None) -> Iterator[Homomorphism]:
    """Injective homomorphisms (not necessarily induced subgraph copies)."""
    if h.n > target.n:
        return
    if h.n == 0:
        yield ()
        return
    start = domains if domains is not None else _initial_domains(h, target)
    yield from _search(h, _target_masks(target), start, injective=True)


def _clique_masks(k: int) -> list[int]:
    full = (1 << k) - 1
    return [full ^ (1 << i) for i in range(k)]


def enumerate_labeled_colorings(h: Graph, k: int) -> Iterator[Coloring]:
    """Proper colorings ``V(h) -> {0..k-1}``; classes may be empty."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if h.n == 0:
        yield ()
        return
    if k == 0:
        return
    yield from _search(h, _clique_masks(k), [(1 << k) - 1] * h.n)


def enumerate_partitions(h: Graph, k: int) -> Iterator[Coloring]:
    """Partitions of ``V(h)`` into at most ``k`` independent sets, one labeled
    representative each (labels are consecutive from 0)."""
    if h.n == 0:
        yield ()
        return
    if k <= 0:
        return
    yield from _search(h, _clique_masks(k), [(1 << k) - 1] * h.n, fresh_k=k)


def is_proper(h: Graph, coloring: Sequence[int]) -> bool:
    return all(coloring[u] != coloring[v] for u, v in h.edges)


def chromatic_number(h: Graph) -> int:
    if h.n == 0:
        return 0
    k = 1
    while next(enumerate_partitions(h, k), None) is None:
        k += 1
    return k


def classes_of(coloring: Sequence[int], k: int) -> list[list[int]]:
    out = [[] for _ in range(k)]
    for v, c in enumerate(coloring):
        out[c].append(v)
    return out


@dataclass(frozen=True)
class ColoringStats:
    """Class sizes ``a``, edge counts ``e[i][j]`` between classes and
    ``x[i][j]``, the number of edges leaving ``A_i u A_j``."""

    sizes: tuple[int, ...]
    e: tuple[tuple[int, ...], ...]
    x: tuple[tuple[int, ...], ...]


def coloring_stats(h: Graph, coloring: Sequence[int], k: int | None = None) -> ColoringStats:
    if k is None:
        k = max(coloring, default=-1) + 1
    sizes = [0] * k
    for c in coloring:
        sizes[c] += 1
    e = [[0] * k for _ in range(k)]
    for u, v in h.edges:
        a, b = coloring[u], coloring[v]
        if a == b:
            raise ValueError("coloring is not proper")
        e[a][b] += 1
        e[b][a] += 1
    deg_out = [sum(row) for row in e]
    x = [[0] * k for _ in range(k)]
    for i in range(k):
        for j in range(k):
            if i != j:
                x[i][j] = deg_out[i] + deg_out[j] - 2 * e[i][j]
    return ColoringStats(tuple(sizes), tuple(map(tuple, e)), tuple(map(tuple, x)))


def sigma(h: Graph) -> int:
    """Smallest class size over all proper colorings with the minimum number of colors."""
    r = chromatic_number(h)
    if r == 0:
        return 0
    best = h.n
    for col in enumerate_partitions(h, r):
        sizes = [0] * r
        for c in col:
            sizes[c] += 1
        best = min(best, min(sizes))
    return best


def automorphisms(h: Graph) -> list[tuple[int, ...]]:
    """Automorphism group as a list of vertex permutations."""
    if h.n == 0:
        return [()]
    # an injective homomorphism of a finite graph into itself that also
    # preserves degrees is an automorphism
    deg = [h.degree(v) for v in range(h.n)]
    doms = [sum(1 << w for w in range(h.n) if deg[w] == deg[v]) for v in range(h.n)]
    return list(enumerate_embeddings(h, h, doms))


def colored_homomorphism_discrepancy(h: Graph, frame: ColoredGraph, phi: Sequence[int]) -> int:
    return sum(frame.color(phi[u], phi[v]) for u, v in h.edges)
