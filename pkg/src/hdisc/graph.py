"""Simple graphs, edge-colored graphs and the edge-list text format."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd
from typing import Iterable, Mapping


class ParseError(ValueError):
    """Malformed edge-list input.  ``line`` is 1-based (0 when not tied to a line)."""

    def __init__(self, message: str, line: int = 0):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


def _edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


class Graph:
    """Undirected simple graph on vertices ``0..n-1``."""

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        es = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            es.add(_edge(u, v))
        self.n = n
        self.edges = tuple(sorted(es))
        adj = [set() for _ in range(n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        self.adj = tuple(frozenset(a) for a in adj)

    def __repr__(self):
        return f"Graph(n={self.n}, m={len(self.edges)})"

    def __eq__(self, other):
        return isinstance(other, Graph) and not isinstance(other, ColoredGraph) \
            and self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    @cached_property
    def edge_set(self) -> frozenset:
        return frozenset(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def relabel(self, perm: Mapping[int, int] | list[int]) -> "Graph":
        return Graph(self.n, ((perm[u], perm[v]) for u, v in self.edges))

    def induced(self, vertices: Iterable[int]) -> "Graph":
        vs = sorted(vertices)
        idx = {v: i for i, v in enumerate(vs)}
        return Graph(len(vs), ((idx[u], idx[v]) for u, v in self.edges
                               if u in idx and v in idx))

    def edges_between(self, a: Iterable[int], b: Iterable[int]) -> int:
        """Number of edges with one end in ``a`` and the other in ``b``
        (the sets are expected to be disjoint)."""
        bs = set(b)
        return sum(1 for u in a for w in self.adj[u] if w in bs)


class ColoredGraph(Graph):
    """Graph whose edges carry colors in {+1, -1}."""

    def __init__(self, n: int, colored_edges: Mapping[tuple[int, int], int] | Iterable):
        items = colored_edges.items() if isinstance(colored_edges, Mapping) else \
            (((u, v), c) for u, v, c in colored_edges)
        colors = {}
        for (u, v), c in items:
            if c not in (1, -1):
                raise ValueError(f"edge color must be +1 or -1, got {c!r}")
            key = _edge(u, v)
            if key in colors and colors[key] != c:
                raise ValueError(f"edge {key} given two colors")
            colors[key] = c
        super().__init__(n, colors)
        self.colors = {e: colors[e] for e in self.edges}

    def __repr__(self):
        return f"ColoredGraph(n={self.n}, m={len(self.edges)}, disc={self.discrepancy})"

    def __eq__(self, other):
        return isinstance(other, ColoredGraph) and self.n == other.n \
            and self.colors == other.colors

    def __hash__(self):
        return hash((self.n, tuple(sorted(self.colors.items()))))

    def color(self, u: int, v: int) -> int:
        return self.colors[_edge(u, v)]

    @property
    def discrepancy(self) -> int:
        return sum(self.colors.values())

    def relabel(self, perm) -> "ColoredGraph":
        return ColoredGraph(self.n, {(perm[u], perm[v]): c for (u, v), c in self.colors.items()})

    def swapped(self) -> "ColoredGraph":
        return ColoredGraph(self.n, {e: -c for e, c in self.colors.items()})

    def positive_degree(self, v: int) -> int:
        return sum(1 for w in self.adj[v] if self.colors[_edge(v, w)] == 1)

    def color_sum_at(self, v: int, among: Iterable[int] | None = None) -> int:
        ws = self.adj[v] if among is None else (w for w in among if w in self.adj[v])
        return sum(self.colors[_edge(v, w)] for w in ws)

    def subgraph_discrepancy(self, edges: Iterable[tuple[int, int]]) -> int:
        return sum(self.colors[_edge(u, v)] for u, v in edges)

    @property
    def underlying(self) -> Graph:
        return Graph(self.n, self.edges)


def complete_graph(n: int) -> Graph:
    return Graph(n, ((u, v) for u in range(n) for v in range(u + 1, n)))


def colored_complete(n: int, color) -> ColoredGraph:
    """Complete graph colored by ``color(u, v)`` for ``u < v``."""
    return ColoredGraph(n, {(u, v): color(u, v) for u in range(n) for v in range(u + 1, n)})


# --------------------------------------------------------------------------
# text format

def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _parse_header(lines) -> tuple[int, int]:
    try:
        lineno, head = next(lines)
    except StopIteration:
        raise ParseError("missing vertex count") from None
    try:
        n = int(head)
    except ValueError:
        raise ParseError(f"expected a vertex count, got {head!r}", lineno) from None
    if n < 0:
        raise ParseError("vertex count must be non-negative", lineno)
    return lineno, n


def _parse_endpoints(tok, n, lineno):
    try:
        u, v = int(tok[0]), int(tok[1])
    except ValueError:
        raise ParseError(f"non-integer endpoint in {' '.join(tok)!r}", lineno) from None
    if u == v:
        raise ParseError(f"loop at vertex {u}", lineno)
    for w in (u, v):
        if not 0 <= w < n:
            raise ParseError(f"endpoint {w} outside 0..{n - 1}", lineno)
    return u, v


def parse_edge_list(text: str) -> Graph:
    lines = _content_lines(text)
    _, n = _parse_header(lines)
    edges = set()
    for lineno, line in lines:
        tok = line.split()
        if len(tok) != 2:
            raise ParseError(f"expected 'u v', got {line!r}", lineno)
        edges.add(_edge(*_parse_endpoints(tok, n, lineno)))
    return Graph(n, edges)


_COLOR_TOKENS = {"+1": 1, "+": 1, "-1": -1, "-": -1}


def parse_colored_edge_list(text: str) -> ColoredGraph:
    lines = _content_lines(text)
    _, n = _parse_header(lines)
    colors: dict[tuple[int, int], int] = {}
    for lineno, line in lines:
        tok = line.split()
        if len(tok) != 3:
            raise ParseError(f"expected 'u v c', got {line!r}", lineno)
        u, v = _parse_endpoints(tok, n, lineno)
        if tok[2] not in _COLOR_TOKENS:
            raise ParseError(f"color must be one of +1, -1, +, -; got {tok[2]!r}", lineno)
        c = _COLOR_TOKENS[tok[2]]
        key = _edge(u, v)
        if colors.get(key, c) != c:
            raise ParseError(f"edge {key} given two colors", lineno)
        colors[key] = c
    return ColoredGraph(n, colors)


def format_edge_list(g: Graph) -> str:
    out = [str(g.n)]
    if isinstance(g, ColoredGraph):
        out += [f"{u} {v} {'+1' if c == 1 else '-1'}" for (u, v), c in sorted(g.colors.items())]
    else:
        out += [f"{u} {v}" for u, v in g.edges]
    return "\n".join(out) + "\n"


# --------------------------------------------------------------------------
# basic invariants

def components(g: Graph) -> list[tuple[int, ...]]:
    """Connected components, each sorted, ordered by smallest vertex."""
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        stack, comp = [s], [s]
        while stack:
            u = stack.pop()
            for w in g.adj[u]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
                    comp.append(w)
        comps.append(tuple(sorted(comp)))
    return comps


@dataclass(frozen=True)
class GraphBasics:
    n: int
    num_edges: int
    degrees: tuple[int, ...]
    components: tuple[tuple[int, ...], ...]
    is_regular: bool
    regular_degree: int | None
    hcf_c: int
    component_density: Fraction | None


def graph_basics(g: Graph) -> GraphBasics:
    degrees = tuple(g.degree(v) for v in range(g.n))
    comps = components(g)
    regular = len(set(degrees)) <= 1
    hcf_c = 0
    for c in comps:
        hcf_c = gcd(hcf_c, len(c))
    densities = set()
    for c in comps:
        cs = set(c)
        e = sum(1 for u, v in g.edges if u in cs)
        densities.add(Fraction(e, len(c)))
    density = densities.pop() if len(densities) == 1 else None
    return GraphBasics(
        n=g.n,
        num_edges=g.num_edges,
        degrees=degrees,
        components=tuple(comps),
        is_regular=regular,
        regular_degree=(degrees[0] if degrees else 0) if regular else None,
        hcf_c=hcf_c,
        component_density=density,
    )
