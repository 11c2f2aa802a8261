"""Acceptance suite: one test per headline criterion, each printing a PASS/FAIL line.

Every check is exact (Fraction arithmetic, integer ranks); the runtime budget of
each criterion is asserted alongside its mathematical content.
"""
import time
from fractions import Fraction

import pytest

from knotgraph import axioms
from knotgraph.cocycles import (
    build_gamma_l,
    build_psi,
    coefficient_of,
    gamma_contributions,
    placement_classes,
    psi_power,
)
from knotgraph.cohomology import basis, cocycle_representatives, cohomology_dim, in_span
from knotgraph.complex import delta


@pytest.fixture
def verdict(capsys):
    """Print one line for the criterion, outside pytest's output capture."""
    start = time.perf_counter()

    def emit(name, ok, detail, budget):
        elapsed = time.perf_counter() - start
        ok = ok and elapsed < budget
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} {name}: {detail} [{elapsed:.1f}s / budget {budget}s]")
        return ok

    return emit


def _axiom_summary(results):
    return ", ".join(f"{r.name} {r.checked - r.failures}/{r.checked}" for r in results)


def test_delta_squared_vanishes(verdict):
    res = axioms.check_delta_squared(kmax=3, mmax=2)
    assert verdict("delta-squared", res.passed and res.checked > 0, _axiom_summary([res]), 120)


def test_leibniz_rule(verdict):
    res = axioms.check_leibniz(kmax=3)
    assert verdict("leibniz", res.passed and res.checked > 0, _axiom_summary([res]), 300)


def test_hopf_identities(verdict):
    results = axioms.check_hopf(kmax=3, max_factors=3)
    ok = all(r.passed and r.checked > 0 for r in results)
    assert verdict("hopf", ok, _axiom_summary(results), 300)


def test_psi_is_closed(verdict):
    d = delta(build_psi())
    assert verdict("psi-closed", d == 0, f"delta(psi) has {len(d)} terms", 1)


def test_gamma_two_in_psi_squared(verdict):
    coeff = coefficient_of(psi_power(2), build_gamma_l(2))
    contrib = gamma_contributions(2)
    placements = len(placement_classes(a for a, _ in contrib))
    ok = coeff != 0 and len(contrib) == 3 and abs(coeff) == Fraction(1, 3)
    detail = (
        f"coefficient {coeff}, {len(contrib)} contributing shuffles "
        f"in {placements} placements (wanted 3 shuffles, magnitude 1/3)"
    )
    assert verdict("gamma2-coefficient", ok, detail, 10)


def test_gamma_three_in_psi_cubed(verdict):
    coeff = coefficient_of(psi_power(3), build_gamma_l(3))
    signs = {s for _, s in gamma_contributions(3)}
    ok = coeff != 0 and len(signs) == 1
    detail = f"coefficient {coeff}, contribution signs {sorted(signs)}"
    assert verdict("gamma3-coefficient", ok, detail, 120)


def test_psi_spans_degree_zero_cohomology(verdict):
    dim = cohomology_dim("circle", "even", 2, 0)
    reps = cocycle_representatives("circle", "even", 2, 0)
    inside = in_span(build_psi(), reps, basis("circle", "even", 2, 0))
    assert verdict("psi-in-kernel", dim >= 1 and inside, f"dim H^(2,0) = {dim}, psi in span: {inside}", 30)


def test_canonical_form_coherence(verdict):
    coherence = axioms.check_canonical_coherence(kmax=3, samples=100, seed=20240)
    zeros = axioms.check_zero_detection(max_vertices=8, kmax=3)
    ok = coherence.passed and zeros.passed and coherence.checked > 0 and zeros.checked > 0
    assert verdict("canonical-coherence", ok, _axiom_summary([coherence, zeros]), 120)


def test_rank_self_consistency(verdict):
    res = axioms.check_rank_consistency(kmax=3, mmax=2, seeds=10)
    assert verdict("rank-consistency", res.passed and res.checked > 0, _axiom_summary([res]), 300)
