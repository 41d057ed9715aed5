"""Chromatic parameters: critical chromatic number, the class-gap gcd and
the effective chromatic value used by the threshold."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .coloring import chromatic_number, enumerate_partitions
from .errors import ContractViolation
from .graph import Graph, graph_basics


@dataclass(frozen=True)
class ChromaticProfile:
    r: int
    sigma: int
    chi_cr: Fraction
    d_set: frozenset[int]
    hcf_chi: int        # 0 encodes gcd of an empty or all-zero gap set
    hcf_c: int
    hcf_is_one: bool
    chi_star: Fraction


def gcd_all(values) -> int:
    g = 0
    for v in values:
        g = gcd(g, v)
    return g


def class_size_profiles(h: Graph, r: int) -> list[tuple[int, ...]]:
    """Sorted class-size vectors of all proper r-colorings (distinct)."""
    out = set()
    for col in enumerate_partitions(h, r):
        sizes = [0] * r
        for c in col:
            sizes[c] += 1
        out.add(tuple(sorted(sizes)))
    return sorted(out)


def gap_set(profiles) -> frozenset[int]:
    return frozenset(b - a for p in profiles for a, b in zip(p, p[1:]))


def chromatic_profile(h: Graph) -> ChromaticProfile:
    if h.num_edges == 0:
        raise ContractViolation("the graph must have at least one edge")
    r = chromatic_number(h)
    profiles = class_size_profiles(h, r)
    sig = min(p[0] for p in profiles)
    n = h.n
    chi_cr = Fraction((r - 1) * n, n - sig)
    d = gap_set(profiles)
    hcf_chi = gcd_all(d)
    hcf_c = graph_basics(h).hcf_c
    if r >= 3:
        one = hcf_chi == 1
    else:
        one = hcf_chi in (1, 2) and hcf_c == 1
    return ChromaticProfile(
        r=r,
        sigma=sig,
        chi_cr=chi_cr,
        d_set=d,
        hcf_chi=hcf_chi,
        hcf_c=hcf_c,
        hcf_is_one=one,
        chi_star=chi_cr if one else Fraction(r),
    )


def multipartite_profile(sizes) -> ChromaticProfile:
    """Profile of the complete multipartite graph with the given positive
    part sizes, read off the sizes (its only optimal coloring is the parts)."""
    sizes = sorted(int(s) for s in sizes)
    if len(sizes) < 2 or sizes[0] <= 0:
        raise ContractViolation("need at least two nonempty parts")
    r, n = len(sizes), sum(sizes)
    d = gap_set([tuple(sizes)])
    hcf_chi = gcd_all(d)
    one = hcf_chi == 1 if r >= 3 else (hcf_chi in (1, 2) and n == 1)
    chi_cr = Fraction((r - 1) * n, n - sizes[0])
    return ChromaticProfile(r, sizes[0], chi_cr, d, hcf_chi, n, one,
                            chi_cr if one else Fraction(r))
