"""Named graphs used throughout the tests, the CLI and the documentation."""

from __future__ import annotations

from itertools import combinations

from .graph import Graph, complete_graph


def path(n: int) -> Graph:
    return Graph(n, ((i, i + 1) for i in range(n - 1)))


def cycle(n: int) -> Graph:
    return Graph(n, ((i, (i + 1) % n) for i in range(n)))


def complete_minus_edge(n: int) -> Graph:
    """K_n without the edge between the last two vertices."""
    return Graph(n, ((u, v) for u, v in combinations(range(n), 2) if (u, v) != (n - 2, n - 1)))


def complete_multipartite(sizes) -> Graph:
    part = [i for i, s in enumerate(sizes) for _ in range(s)]
    n = len(part)
    return Graph(n, ((u, v) for u, v in combinations(range(n), 2) if part[u] != part[v]))


def multipartite_minus_edge(sizes) -> Graph:
    g = complete_multipartite(sizes)
    drop = g.edges[-1]
    return Graph(g.n, (e for e in g.edges if e != drop))


def disjoint_union(*graphs: Graph) -> Graph:
    edges, off = [], 0
    for g in graphs:
        edges += [(u + off, v + off) for u, v in g.edges]
        off += g.n
    return Graph(off, edges)


def hub_partite(sizes, pair_counts) -> Graph:
    """r-partite graph whose part ``i`` contains a hub vertex adjacent to
    every vertex outside part ``i``.

    ``pair_counts[(i, j)]`` fixes the number of edges between parts i and j.
    Edges beyond those forced by the hubs are added between non-hub
    vertices in lexicographic order.  The hubs force every proper
    r-coloring to agree with the parts up to renaming colors.
    """
    r = len(sizes)
    offsets = [sum(sizes[:i]) for i in range(r)]
    parts = [list(range(offsets[i], offsets[i] + sizes[i])) for i in range(r)]
    edges = set()
    for i, j in combinations(range(r), 2):
        target = pair_counts[(i, j)] if (i, j) in pair_counts else pair_counts[(j, i)]
        hi, hj = parts[i][0], parts[j][0]
        forced = {(hi, w) for w in parts[j]} | {(w, hj) for w in parts[i]}
        if target < len(forced) or target > sizes[i] * sizes[j]:
            raise ValueError(f"edge count {target} impossible between parts {i} and {j}")
        extra = target - len(forced)
        pool = ((u, w) for u in parts[i][1:] for w in parts[j][1:])
        for _ in range(extra):
            forced.add(next(pool))
        edges |= forced
    return Graph(sum(sizes), edges)


def example_uniform() -> Graph:
    """Three parts of sizes 10, 11, 100 with 110 edges between every pair."""
    return hub_partite((10, 11, 100), {(0, 1): 110, (0, 2): 110, (1, 2): 110})


def example_structured_12() -> Graph:
    """Parts 5, 20, 21 with pair counts 28, 42, 252."""
    return hub_partite((5, 20, 21), {(0, 1): 28, (0, 2): 42, (1, 2): 252})


def example_structured_1m1() -> Graph:
    """Parts 5, 20, 21 with pair counts 67, 66, 51."""
    return hub_partite((5, 20, 21), {(0, 1): 67, (0, 2): 66, (1, 2): 51})


def regular_multipartite_minus_matchings(r: int, m: int) -> Graph:
    """Complete r-partite graph with a part of size (r-2)m+1 and r-1 parts of
    size (r-2)m, minus a matching of size m between every two of the smaller
    parts, chosen so each vertex of a smaller part loses exactly one edge.

    The result is regular of degree (r-1)(r-2)m.
    """
    if r < 3 or m < 1:
        raise ValueError("need r >= 3 and m >= 1")
    big = (r - 2) * m + 1
    small = (r - 2) * m
    sizes = [big] + [small] * (r - 1)
    offsets = [sum(sizes[:i]) for i in range(r)]
    g = complete_multipartite(sizes)
    # block t of each small part (m vertices) is matched to part partner(t)
    removed = set()
    others = list(range(1, r))
    for a_idx, a in enumerate(others):
        for b_idx in range(a_idx + 1, len(others)):
            b = others[b_idx]
            # part a uses block (b_idx - 1), part b uses block a_idx
            blk_a = b_idx - 1
            blk_b = a_idx
            for t in range(m):
                u = offsets[a] + blk_a * m + t
                w = offsets[b] + blk_b * m + t
                removed.add((u, w))
    return Graph(g.n, (e for e in g.edges if e not in removed))


NAMED = {
    "K2": lambda: complete_graph(2),
    "K3": lambda: complete_graph(3),
    "K4": lambda: complete_graph(4),
    "K5": lambda: complete_graph(5),
    "K6": lambda: complete_graph(6),
    "P3": lambda: path(3),
    "C4": lambda: cycle(4),
    "C5": lambda: cycle(5),
    "K4-e": lambda: complete_minus_edge(4),
    "K222-e": lambda: multipartite_minus_edge((2, 2, 2)),
    "P3+K2": lambda: disjoint_union(path(3), complete_graph(2)),
    "example-uniform": example_uniform,
    "example-structured-12": example_structured_12,
    "example-structured-1m1": example_structured_1m1,
    "example-regular-r4": lambda: regular_multipartite_minus_matchings(4, 1),
}
