from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hdisc.blowups import BlowupSpec, ExplicitFactor, blowup
from hdisc.constructions import (balanced_blowup_factor, blowup_min_degree_ratio, build_h_star,
                                 template_witness)
from hdisc.errors import ContractViolation
from hdisc.fixtures import NAMED
from hdisc.graph import ColoredGraph, complete_graph
from hdisc.oracle import (DiscrepancySummary, bruteforce_is_template, discrepancy_multiset,
                          enumerate_perfect_factors, factor_with_discrepancy, lp_oracle_agreement,
                          twin_classes, verify_factor)
from hdisc.templates import (Frame, butterfly, delta0, edge_pair, kr_coloring, mono_clique,
                             nontemplate_colorings_kr, star_clique)
import reference


def _host(frame, sizes):
    return blowup(BlowupSpec(frame, sizes))


def test_single_copy():
    assert len(list(enumerate_perfect_factors(NAMED["K3"](), _host(mono_clique(3), (1, 1, 1))))) == 1


@pytest.mark.parametrize("mask", range(8))
def test_four_triangle_factors(mask):
    host = _host(Frame(kr_coloring(3, mask)), (2, 2, 2))
    assert len(list(enumerate_perfect_factors(NAMED["K3"](), host))) == 4


def test_indivisible_host_refused():
    host = ColoredGraph(4, {(u, v): 1 for u in range(4) for v in range(u + 1, 4)})
    with pytest.raises(ContractViolation):
        enumerate_perfect_factors(NAMED["K3"](), host)
    with pytest.raises(ContractViolation):
        discrepancy_multiset(NAMED["K3"](), host)


def test_star_triangle_multiset():
    s = discrepancy_multiset(NAMED["K3"](), _host(star_clique(3, 1), (2, 2, 2)))
    assert s.values == Counter({2: 4}) and not s.truncated


def test_mono_triangle_multiset():
    s = discrepancy_multiset(NAMED["K3"](), _host(mono_clique(3, 1), (2, 2, 2)))
    assert s.values == Counter({6: 4})


def test_k4_star_multiset():
    s = discrepancy_multiset(NAMED["K4"](), _host(star_clique(4, 1), (2, 2, 2, 2)))
    assert set(s.values) == {0} and s.factor_count == 8


def test_budget_truncation_is_reported():
    host = _host(star_clique(4, 1), (3, 3, 3, 3))
    stream = enumerate_perfect_factors(NAMED["K3"](), host, budget=5)
    list(stream)
    assert stream.truncated
    s = discrepancy_multiset(NAMED["K3"](), host, budget=5, method="explicit")
    assert s.truncated


CASES = [
    ("K3", star_clique(4, 1), (3, 3, 3, 3)),
    ("K3", kr_coloring(3, 3), (2, 2, 2)),
    ("P3", butterfly(2), (2, 1, 1, 1, 1)),
    ("K4-e", star_clique(3, 1), (2, 3, 3)),
    ("K4-e", butterfly(1), (4, 1, 1, 1, 1)),
    ("P3", edge_pair(1, -1), (2, 1, 1, 2)),
    ("K2", mono_clique(3, -1), (2, 2, 2)),
]


@pytest.mark.parametrize("name,frame,sizes", CASES)
def test_routes_agree_with_naive_enumeration(name, frame, sizes):
    h = NAMED[name]()
    host = _host(frame, sizes)
    naive = Counter(reference.factor_discrepancies(h, host))
    assert discrepancy_multiset(h, host, method="twin").values == naive
    assert discrepancy_multiset(h, host, method="explicit").values == naive


def test_twin_route_on_clique_classes():
    h = NAMED["P3"]()
    half = 3
    cols = {}
    for off, sign in ((0, 1), (half, -1)):
        for u in range(off, off + half):
            for v in range(u + 1, off + half):
                cols[(u, v)] = sign
    host = ColoredGraph(6, cols)
    classes, cliques = twin_classes(host)
    assert classes == [[0, 1, 2], [3, 4, 5]] and cliques == [True, True]
    assert discrepancy_multiset(h, host).values == Counter(reference.factor_discrepancies(h, host))


@given(st.sampled_from(CASES), st.data())
def test_multiset_invariant_under_relabeling(case, data):
    name, frame, sizes = case
    h = NAMED[name]()
    host = _host(frame, sizes)
    perm = data.draw(st.permutations(list(range(host.n))))
    a = discrepancy_multiset(h, host, method="explicit").values
    assert discrepancy_multiset(h, host.relabel(perm), method="explicit").values == a


@pytest.mark.parametrize("name,frame,sizes", CASES)
def test_multiset_negates_under_color_swap(name, frame, sizes):
    h = NAMED[name]()
    host = _host(frame, sizes)
    a = discrepancy_multiset(h, host).values
    b = discrepancy_multiset(h, host.swapped()).values
    assert b == Counter({-d: c for d, c in a.items()})


def test_verify_balanced_factor_on_mono():
    h = NAMED["K3"]()
    spec, fac = balanced_blowup_factor(h, mono_clique(3, 1))
    valid, disc = verify_factor(h, blowup(spec), fac)
    assert valid and disc == 18


def test_verify_rejects_overlap():
    h = NAMED["K3"]()
    host = _host(mono_clique(3), (2, 2, 2))
    chk = verify_factor(h, host, ExplicitFactor(((0, 2, 4), (0, 3, 5))))
    assert not chk.valid and "overlap" in chk.reason


def test_verify_rejects_non_edge_and_partial():
    h = NAMED["K3"]()
    host = _host(mono_clique(3), (2, 2, 2))
    assert not verify_factor(h, host, ExplicitFactor(((0, 1, 2), (3, 4, 5)))).valid
    assert not verify_factor(h, host, ExplicitFactor(((0, 2, 4),))).valid


def test_verify_witness_pair():
    h = NAMED["P3"]()
    w = template_witness("sharing-much", h, Frame(ColoredGraph(3, {(0, 1): 1, (1, 2): -1})))
    host = blowup(w.spec)
    a, b = verify_factor(h, host, w.factor_a), verify_factor(h, host, w.factor_b)
    assert a.valid and b.valid and abs(a.discrepancy - b.discrepancy) == 2


def test_bruteforce_finds_edge_pair_template():
    res = bruteforce_is_template(edge_pair(1, -1), NAMED["P3+K2"](), 30)
    assert res.found and res.disc_a != res.disc_b
    host = blowup(res.spec)
    assert verify_factor(NAMED["P3+K2"](), host, res.factor_a).discrepancy == res.disc_a


def test_bruteforce_star_triangle_none():
    res = bruteforce_is_template(star_clique(3, 1), NAMED["K4-e"](), 24)
    assert not res.found and res.max_total == 24


@pytest.mark.parametrize("name", ["P3", "C4", "P3+K2"])
def test_bruteforce_mono_edge_none(name):
    res = bruteforce_is_template(Frame(ColoredGraph(2, {(0, 1): 1})), NAMED[name](), 20)
    assert not res.found


def test_factor_with_discrepancy_reconstructs():
    h = NAMED["P3"]()
    host = _host(edge_pair(1, -1), (2, 1, 1, 2))
    for d in discrepancy_multiset(h, host).values:
        chk = verify_factor(h, host, factor_with_discrepancy(h, host, d))
        assert chk.valid and chk.discrepancy == d


FRAMES = [Frame(kr_coloring(3, m), f"k3:{m}") for m in range(8)] + \
    [butterfly(1), butterfly(2), butterfly(3), edge_pair(1, -1), star_clique(4, 1)]


@pytest.mark.parametrize("frame", FRAMES, ids=lambda f: f.name)
@pytest.mark.parametrize("name", ["K3", "P3", "K4-e", "P3+K2"])
def test_lp_and_search_agree(frame, name):
    assert lp_oracle_agreement(frame, NAMED[name](), 16).agree


@pytest.mark.parametrize("name", ["K3", "K4-e", "C5"])
def test_positive_nontemplates_force_positive_factors(name):
    h = NAMED[name]()
    d0 = delta0(h).value
    for c in nontemplate_colorings_kr(h):
        if c.discrepancy <= 0:
            continue
        for sizes in [(1, 1, 1), (2, 2, 2), (1, 2, 2), (2, 3, 3), (3, 3, 3), (3, 3, 4), (4, 3, 3)]:
            spec = BlowupSpec(Frame(c), sizes)
            if sum(sizes) % h.n or blowup_min_degree_ratio(spec) <= d0:
                continue
            s = discrepancy_multiset(h, _host(Frame(c), sizes))
            assert all(d > 0 for d in s.values)


@pytest.mark.parametrize("name", ["K3", "K4-e"])
def test_h_star_blowups_force_positive_factors(name):
    h = NAMED[name]()
    res = build_h_star(h, Fraction(1, 10))
    for c in nontemplate_colorings_kr(h):
        if c.discrepancy <= 0:
            continue
        s = discrepancy_multiset(h, _host(Frame(c), res.part_sizes))
        assert all(d > 0 for d in s.values)
