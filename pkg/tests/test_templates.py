from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hdisc.blowups import (BlowupSpec, blowup, is_placement, placement_discrepancy,
                           placement_loads, realize)
from hdisc.coloring import chromatic_number
from hdisc.errors import ContractViolation
from hdisc.fixtures import NAMED
from hdisc.graph import ColoredGraph
from hdisc.oracle import discrepancy_multiset, verify_factor
from hdisc.templates import (Frame, butterfly, butterfly_status, clique_pair, delta0, edge_pair,
                             hom_columns, is_template, kr_coloring, kr_mask, mono_clique,
                             nontemplate_colorings_kr, parse_frame_spec, star_clique)
from conftest import colored_graphs

STAR_COLORS = {kr_mask(star_clique(3, 1).colored), kr_mask(star_clique(3, -1).colored)}


def test_edge_pair_is_template_for_path_plus_edge():
    assert is_template(edge_pair(1, -1), NAMED["P3+K2"]()).is_template


def test_mono_triangle_not_template_for_triangle():
    assert not is_template(mono_clique(3, 1), NAMED["K3"]()).is_template


def test_k4_star_not_template_for_k4():
    assert not is_template(star_clique(4, 1), NAMED["K4"]()).is_template


def test_star_triangle_not_template_for_k4_minus_edge():
    dec = is_template(star_clique(3, 1), NAMED["K4-e"]())
    assert not dec.is_template and dec.optimum == 0


def test_all_triangle_colorings_are_nontemplates_for_k3():
    assert len(nontemplate_colorings_kr(NAMED["K3"]())) == 8


def test_star_colorings_are_nontemplates_for_k4_minus_edge():
    masks = {kr_mask(c) for c in nontemplate_colorings_kr(NAMED["K4-e"]())}
    assert STAR_COLORS <= masks


def test_star_colorings_are_nontemplates_for_structured_example():
    masks = {kr_mask(c) for c in nontemplate_colorings_kr(NAMED["example-structured-12"]())}
    assert STAR_COLORS <= masks


def test_delta0_values():
    assert delta0(NAMED["K3"]()).value == 0
    assert delta0(NAMED["K4"]()).value == Fraction(3, 4)
    assert delta0(NAMED["example-structured-12"]()).value == Fraction(5, 8)


def test_k4_minus_edge_copies_have_one_sign_on_every_nontemplate_coloring():
    # so no blowup of a non-template triangle coloring has a zero-discrepancy factor
    h = NAMED["K4-e"]()
    for c in nontemplate_colorings_kr(h):
        signs = {(col.g > 0) - (col.g < 0) for col in hom_columns(h, c)}
        assert signs in ({1}, {-1})
    assert delta0(h).value == 0


def test_k4_minus_edge_star_blowups_have_positive_factors():
    h = NAMED["K4-e"]()
    for sizes in [(2, 3, 3), (4, 6, 6), (1, 1, 2), (2, 1, 1)]:
        summary = discrepancy_multiset(h, blowup(BlowupSpec(star_clique(3, 1), sizes)))
        assert summary.factor_count and all(d > 0 for d in summary.values)


@pytest.mark.parametrize("name", ["P3", "C4", "K2", "P3+K2"])
def test_delta0_zero_for_bipartite(name):
    assert delta0(NAMED[name]()).value == 0


@pytest.mark.parametrize("name", ["K3", "K4", "K5", "K4-e", "K222-e", "C5", "P3", "example-regular-r4"])
def test_delta0_range(name):
    h = NAMED[name]()
    r = chromatic_number(h)
    v = delta0(h).value
    assert isinstance(v, Fraction) and 0 <= v <= 1 - Fraction(1, r)


@pytest.mark.parametrize("name", ["K4", "K5", "example-regular-r4", "K222-e"])
def test_zero_sum_nontemplate_forces_top_value(name):
    h = NAMED[name]()
    r = chromatic_number(h)
    if any(c.discrepancy == 0 for c in nontemplate_colorings_kr(h)):
        assert delta0(h).value == 1 - Fraction(1, r)


@pytest.mark.parametrize("name", ["K4", "K5", "example-structured-12", "example-regular-r4"])
def test_delta0_witness_is_a_zero_discrepancy_factor(name):
    h = NAMED[name]()
    res = delta0(h)
    w = res.witness
    spec = BlowupSpec(Frame(w.coloring), w.part_sizes)
    assert placement_loads(w.factor, spec.frame.n) == spec.sizes
    assert all(is_placement(h, w.coloring, phi) for phi, _ in w.factor)
    assert placement_discrepancy(h, w.coloring, w.factor) == 0
    if spec.total <= 2000:
        chk = verify_factor(h, blowup(spec), realize(h, spec, w.factor))
        assert chk.valid and chk.discrepancy == 0
    assert 1 - Fraction(max(w.part_sizes), sum(w.part_sizes)) == res.value
    assert list(w.ratios) == sorted(w.ratios)


FRAMES = [edge_pair(1, -1), butterfly(1), butterfly(2), butterfly(3), clique_pair(3, 1, 1, -1),
          clique_pair(3, 2, 1, -1)] + [Frame(kr_coloring(3, m)) for m in range(8)]


@pytest.mark.parametrize("frame", FRAMES, ids=lambda f: f.name or "k3")
@pytest.mark.parametrize("name", ["K3", "P3", "P3+K2", "K4-e", "K222-e"])
def test_certificates_realize_as_explicit_factors(frame, name):
    h = NAMED[name]()
    dec = is_template(frame, h)
    if not dec.is_template:
        return
    cert = dec.certificate
    spec = BlowupSpec(frame, cert.part_sizes)
    host = blowup(spec)
    a = verify_factor(h, host, realize(h, spec, cert.factor_a))
    b = verify_factor(h, host, realize(h, spec, cert.factor_b))
    assert a.valid and b.valid
    assert (a.discrepancy, b.discrepancy) == (cert.disc_a, cert.disc_b)
    assert a.discrepancy != b.discrepancy


@given(colored_graphs(max_n=5), st.sampled_from(["K3", "P3", "K4-e", "P3+K2"]))
def test_color_swap_symmetry(frame, name):
    h = NAMED[name]()
    a, b = is_template(frame, h), is_template(frame.swapped(), h)
    assert a.is_template == b.is_template and a.optimum == b.optimum


def test_butterfly_status_triangle():
    assert all(not d.is_template for d in butterfly_status(NAMED["K3"]()).decisions.values())


def test_butterfly_status_structured_example():
    # star wings at the shared vertex: the configuration singled out for this graph
    assert not butterfly_status(NAMED["example-structured-1m1"]()).decisions[2].is_template


def test_butterfly_status_uniform_example():
    assert all(d.is_template for d in butterfly_status(NAMED["example-uniform"]()).decisions.values())


def test_butterfly_status_needs_three_chromatic():
    with pytest.raises(ContractViolation):
        butterfly_status(NAMED["K4"]())


def test_catalog_star():
    f = star_clique(4, 1).colored
    plus = {e for e, c in f.colors.items() if c == 1}
    assert plus == {(0, 1), (0, 2), (0, 3)} and f.num_edges == 6


def test_catalog_mono_butterfly():
    f = butterfly(1).colored
    assert {f.color(0, 1), f.color(0, 2), f.color(1, 2)} == {1}
    assert {f.color(0, 3), f.color(0, 4), f.color(3, 4)} == {-1}


@pytest.mark.parametrize("kind", [1, 2, 3])
def test_butterfly_antisymmetry(kind):
    c = butterfly(kind).colored.color
    assert c(0, 1) == -c(0, 3) and c(0, 2) == -c(0, 4) and c(1, 2) == -c(3, 4)


def test_catalog_clique_pair_mono_wings():
    f = clique_pair(3, 1, 1, -1).colored
    assert f.n == 5
    assert {f.color(0, 1), f.color(0, 2), f.color(1, 2)} == {1}
    assert {f.color(2, 3), f.color(2, 4), f.color(3, 4)} == {-1}


def test_parse_frame_spec():
    assert parse_frame_spec("butterfly:3") == butterfly(3)
    assert parse_frame_spec("star_clique:4,-").colored == star_clique(4, -1).colored
    with pytest.raises(ContractViolation):
        parse_frame_spec("nonsense")


def test_edgeless_h_rejected():
    from hdisc.graph import Graph
    with pytest.raises(ContractViolation):
        is_template(mono_clique(3), Graph(2))
