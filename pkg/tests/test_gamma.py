"""Tests for the gcd of multiplicities and the multiplicity laws."""

import pytest

from src.algebra.parser import parse_poly
from src.errors import (
    ComponentMismatch,
    DecompositionInconsistent,
    DimensionMismatch,
    NoConvergence,
    ScanTooLarge,
)
from src.invariants.gamma import (
    check_additivity,
    check_associativity,
    derive_seed,
    gamma_estimate,
    principal_multiplicity_scan,
    sample_parameter_ideal,
)
from src.local.hilbert import LocalRingSpec, PrimaryIdealSpec

XY = ("x", "y")
XYZ = ("x", "y", "z")


def germ(field, text, vars=XY):
    return LocalRingSpec(field=field, vars=vars, ideal_generators=[parse_poly(text, field, vars)])


def ideal(field, *texts, vars=XY):
    return PrimaryIdealSpec(generators=[parse_poly(t, field, vars) for t in texts])


@pytest.fixture
def three_lines(F2):
    return germ(F2, "x*y*(x+y)")


class TestSeeds:
    def test_derived_seeds_are_stable(self):
        assert derive_seed(1, 0) == derive_seed(1, 0)
        assert derive_seed(1, 0) != derive_seed(1, 1)
        assert 0 <= derive_seed(2**64 - 1, 5) < 2**64


class TestGammaEstimate:
    def test_curated_ideals_reach_one(self, F2, three_lines):
        curated = [ideal(F2, "x^2+x*y+y^2"), ideal(F2, "x^2+y^3")]
        report = gamma_estimate(three_lines, trials=0, curated=curated)
        assert report.e_of_m == 3
        assert [s.e for s in report.samples] == [6, 7]
        assert report.gcd_history == [3, 3, 1]
        assert report.running_gcd == 1

    def test_samples_respect_the_conjugate_pair(self, F2):
        report = gamma_estimate(germ(F2, "x^2+x*y+y^2"), trials=4, seed=11)
        assert report.e_of_m == 2
        assert all(s.e % 2 == 0 for s in report.samples)
        assert report.running_gcd == 2

    def test_same_seed_same_report(self, three_lines):
        first = gamma_estimate(three_lines, trials=3, seed=7)
        second = gamma_estimate(three_lines, trials=3, seed=7)
        assert first.model_dump() == second.model_dump()
        assert [s.seed for s in first.samples] == [derive_seed(7, i) for i in range(3)]

    def test_running_gcd_only_shrinks(self, three_lines):
        report = gamma_estimate(three_lines, trials=4, seed=3)
        history = report.gcd_history
        assert len(history) == len(report.samples) + 1
        assert all(prev % nxt == 0 for prev, nxt in zip(history, history[1:]))
        assert all(s.e % report.running_gcd == 0 for s in report.samples)
        assert report.e_of_m % report.running_gcd == 0

    def test_no_ideal_beats_the_maximal_ideal(self, F2, three_lines):
        curated = [ideal(F2, "x^2+x*y+y^2"), ideal(F2, "x^2+y^3")]
        report = gamma_estimate(three_lines, trials=4, seed=9, curated=curated)
        assert all(s.e >= report.e_of_m for s in report.samples)

    def test_artinian_ring_needs_no_samples(self, F2):
        spec = LocalRingSpec(
            field=F2, vars=XY, ideal_generators=[parse_poly("x^2", F2, XY), parse_poly("y", F2, XY)]
        )
        report = gamma_estimate(spec, trials=4)
        assert report.dimension == 0
        assert report.samples == []
        assert report.running_gcd == report.e_of_m == 2

    def test_row_limit_reaches_the_estimate(self, three_lines):
        with pytest.raises(NoConvergence):
            gamma_estimate(three_lines, trials=0, n_max=4)

    def test_sampled_ideal_is_certified(self, three_lines):
        Q = sample_parameter_ideal(three_lines, seed=5)
        assert Q.certified
        assert len(Q.generators) == 1
        assert Q.multiplicity >= 3

    def test_sampling_needs_positive_dimension(self, F2):
        spec = LocalRingSpec(
            field=F2, vars=XY, ideal_generators=[parse_poly("x", F2, XY), parse_poly("y", F2, XY)]
        )
        with pytest.raises(DimensionMismatch):
            sample_parameter_ideal(spec, seed=1)


class TestPrincipalScan:
    def test_three_lines_over_f2(self, three_lines):
        report = principal_multiplicity_scan(three_lines, 3)
        assert {6, 7} <= set(report.attained)
        assert 3 not in report.attained
        assert report.skipped > 0
        assert report.scanned == 511

    def test_three_lines_over_f4(self, F4):
        report = principal_multiplicity_scan(germ(F4, "x*y*(x+y)"), 1)
        assert 3 in report.attained
        assert report.witnesses[3] == "x+a*y"

    def test_truncation_reaches_the_scan(self, F4):
        spec = germ(F4, "x*y*(x+y)")
        assert principal_multiplicity_scan(spec, 1).attained == [3]
        report = principal_multiplicity_scan(spec, 1, m_max=4)
        assert report.attained == []
        assert report.skipped == report.scanned == 5

    def test_large_fields_refused(self, F5):
        with pytest.raises(ScanTooLarge):
            principal_multiplicity_scan(germ(F5, "y^2-x^3"), 1)

    def test_limit(self, three_lines):
        with pytest.raises(ScanTooLarge):
            principal_multiplicity_scan(three_lines, 3, limit=100)


class TestAdditivity:
    def test_weighted_components(self, F2):
        spec = germ(F2, "x^2*y")
        components = [(parse_poly("x", F2, XY), 2), (parse_poly("y", F2, XY), 1)]
        report = check_additivity(spec, components)
        assert report.holds
        assert report.lhs == report.rhs == 3

    def test_row_limit_reaches_the_components(self, F2):
        spec = germ(F2, "x^2*y")
        components = [(parse_poly("x", F2, XY), 2), (parse_poly("y", F2, XY), 1)]
        with pytest.raises(NoConvergence):
            check_additivity(spec, components, n_max=3)

    def test_wrong_components(self, F2):
        spec = germ(F2, "x^2*y")
        with pytest.raises(ComponentMismatch):
            check_additivity(spec, [(parse_poly("x", F2, XY), 1)])


class TestAssociativity:
    def test_cone_along_a_line(self, F3):
        spec = germ(F3, "x^2+y^2+z^2", XYZ)
        prefix = [parse_poly("x-y", F3, XYZ)]
        suffix = [parse_poly("z-x+x^2", F3, XYZ)]
        decomposition = [(prefix[0], 1, 3)]
        report = check_associativity(spec, prefix, suffix, decomposition)
        assert report.holds
        assert report.lhs == report.rhs == 3

    def test_wrong_suffix_order(self, F3):
        spec = germ(F3, "x^2+y^2+z^2", XYZ)
        prefix = [parse_poly("x-y", F3, XYZ)]
        suffix = [parse_poly("z-x+x^2", F3, XYZ)]
        with pytest.raises(DecompositionInconsistent):
            check_associativity(spec, prefix, suffix, [(prefix[0], 1, 2)])
