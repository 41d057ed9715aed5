"""Blowups of colored frames and explicit H-factors inside them."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ContractViolation
from .graph import ColoredGraph, Graph
from .templates import Frame, as_frame

Placement = tuple[int, ...]   # frame vertex for each vertex of H


@dataclass(frozen=True)
class BlowupSpec:
    """Each frame vertex becomes a cluster of ``sizes[x]`` vertices; each
    frame edge becomes a complete bipartite graph of the same color.

    Clusters of size zero are allowed and simply vanish."""

    frame: Frame
    sizes: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "frame", as_frame(self.frame))
        object.__setattr__(self, "sizes", tuple(int(s) for s in self.sizes))
        if len(self.sizes) != self.frame.n:
            raise ContractViolation("one size per frame vertex is required")
        if any(s < 0 for s in self.sizes):
            raise ContractViolation("cluster sizes must be non-negative")

    @property
    def total(self) -> int:
        return sum(self.sizes)

    @property
    def offsets(self) -> tuple[int, ...]:
        out, acc = [], 0
        for s in self.sizes:
            out.append(acc)
            acc += s
        return tuple(out)

    def cluster(self, x: int) -> range:
        off = self.offsets[x]
        return range(off, off + self.sizes[x])

    def owner(self) -> list[int]:
        """Frame vertex of every host vertex."""
        return [x for x, s in enumerate(self.sizes) for _ in range(s)]


def blowup(spec: BlowupSpec) -> ColoredGraph:
    f = spec.frame.colored
    colors = {}
    for (x, y), c in f.colors.items():
        for u in spec.cluster(x):
            for v in spec.cluster(y):
                colors[(u, v)] = c
    return ColoredGraph(spec.total, colors)


@dataclass(frozen=True)
class ExplicitFactor:
    """Copies of H given as injective maps ``V(H) -> V(host)``."""

    copies: tuple[tuple[int, ...], ...]

    def __len__(self):
        return len(self.copies)


def placement_loads(placements: Iterable[tuple[Placement, int]], n_frame: int) -> tuple[int, ...]:
    loads = [0] * n_frame
    for phi, count in placements:
        for x in phi:
            loads[x] += count
    return tuple(loads)


def placement_color_sum(h: Graph, frame: ColoredGraph, phi: Placement) -> int:
    return sum(frame.color(phi[u], phi[v]) for u, v in h.edges)


def is_placement(h: Graph, frame: ColoredGraph, phi: Placement) -> bool:
    return all(frame.has_edge(phi[u], phi[v]) for u, v in h.edges)


def realize(h: Graph, spec: BlowupSpec, placements: Sequence[tuple[Placement, int]]) -> ExplicitFactor:
    """Turn placements with multiplicities into vertex-disjoint copies by
    filling every cluster in order.  The loads must match the sizes exactly."""
    frame = spec.frame.colored
    for phi, _ in placements:
        if not is_placement(h, frame, phi):
            raise ContractViolation(f"placement {phi} does not map edges to frame edges")
    if placement_loads(placements, frame.n) != spec.sizes:
        raise ContractViolation("placement loads do not match the cluster sizes")
    nxt = list(spec.offsets)
    copies = []
    for phi, count in placements:
        for _ in range(count):
            emb = []
            for x in phi:
                emb.append(nxt[x])
                nxt[x] += 1
            copies.append(tuple(emb))
    return ExplicitFactor(tuple(copies))


def merge_placements(placements: Iterable[tuple[Placement, int]]) -> list[tuple[Placement, int]]:
    counts: Counter = Counter()
    order = []
    for phi, c in placements:
        if c <= 0:
            continue
        if phi not in counts:
            order.append(phi)
        counts[phi] += c
    return [(phi, counts[phi]) for phi in order]


def placement_discrepancy(h: Graph, frame: ColoredGraph, placements) -> int:
    return sum(placement_color_sum(h, frame, phi) * c for phi, c in placements)
