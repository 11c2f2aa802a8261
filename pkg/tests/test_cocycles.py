from fractions import Fraction

import pytest

from knotgraph.algebra import shuffle_product
from knotgraph.cocycles import (
    build_gamma_l,
    build_psi,
    coefficient_of,
    gamma_chain,
    gamma_coefficient,
    gamma_contributions,
    phi,
    placement_classes,
    prop4_report,
    psi_power,
    term_provenance,
    tripods_raw,
)
from knotgraph.complex import Chain, delta
from knotgraph.graph import RawGraph, canonicalize, unit


def test_psi_is_closed_and_graded():
    psi = build_psi()
    assert delta(psi) == 0
    assert psi.gradings() == {(2, 0)}
    assert len(psi) == 2


def test_psi_coefficients():
    psi = build_psi()
    assert coefficient_of(psi, tripods_raw(1)) == Fraction(-1, 3)
    assert coefficient_of(psi, canonicalize(RawGraph("circle", "even", 4, 0, ((2, 4), (1, 3))))) == Fraction(1, 4)
    assert coefficient_of(psi, unit("circle", "even")) == 0


def test_naturally_labeled_combination_is_not_closed():
    """With both chords in backbone order the minus sign would break closedness."""
    natural_phi = canonicalize(RawGraph("circle", "even", 4, 0, ((1, 3), (2, 4))))
    assert natural_phi.sign == -phi().coefficient(natural_phi.graph)
    wrong = Fraction(1, 4) * Chain.of(natural_phi) - Fraction(1, 3) * gamma_chain(1)
    assert delta(wrong) != 0


def test_gamma_l_shapes():
    g1 = build_gamma_l(1)
    assert g1 == canonicalize(RawGraph("circle", "even", 3, 1, ((1, 4), (2, 4), (3, 4)))).graph
    assert (g1.grading.k, g1.grading.m) == (2, 0)
    g2 = build_gamma_l(2)
    assert (g2.grading.k, g2.grading.m) == (4, 0)
    g3 = build_gamma_l(3)
    assert (g3.n_ext, g3.n_int, g3.n_edges) == (9, 3, 9)
    with pytest.raises(ValueError):
        build_gamma_l(0)


def test_psi_power_one_and_two():
    psi = build_psi()
    assert psi_power(1) == psi
    ph, ga = phi(), gamma_chain(1)
    expansion = (
        Fraction(1, 16) * shuffle_product(ph, ph)
        - Fraction(1, 6) * shuffle_product(ph, ga)
        + Fraction(1, 9) * shuffle_product(ga, ga)
    )
    assert psi_power(2) == expansion
    assert psi_power(2).gradings() == {(4, 0)}


@pytest.mark.parametrize("l", [2, 3])
def test_powers_are_closed(l):
    assert delta(psi_power(l)) == 0


def test_gamma_two_coefficient_by_brute_force():
    contrib = gamma_contributions(2)
    # nine cyclic shuffles in three placements of the two tripod blocks
    assert len(contrib) == 9
    assert len(placement_classes(a for a, _ in contrib)) == 3
    assert {s for _, s in contrib} == {-1}
    assert gamma_coefficient(psi_power(2), 2) == Fraction(1, 9) * sum(s for _, s in contrib) == -1


def test_gamma_three_contributions_agree():
    contrib = gamma_contributions(3)
    assert len({s for _, s in contrib}) == 1
    assert gamma_coefficient(psi_power(3), 3) != 0


@pytest.mark.parametrize("l", [2, 3])
def test_gamma_l_only_comes_from_tripod_powers(l):
    prov = term_provenance(l)
    assert all(v == 0 for (a, b), v in prov.items() if a > 0)
    assert prov[(0, l)] != 0
    assert Fraction(-1, 3) ** l * prov[(0, l)] == gamma_coefficient(psi_power(l), l)


def test_nontriviality_report():
    report = prop4_report(2)
    rows = report["rows"]
    assert rows[0]["gamma_coefficient"] == "-1/3"
    assert rows[1]["closed"] and rows[1]["nonexact"]
    assert rows[1]["contributing_placements"] == 3
    assert rows[1]["gamma_coefficient"] != "0"
    with pytest.raises(ValueError):
        prop4_report(0)
