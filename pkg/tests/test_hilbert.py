"""Tests for local lengths and Hilbert-Samuel multiplicities."""

from math import comb

import pytest

from src.algebra.fields import make_prime_field
from src.algebra.parser import parse_poly
from src.census.points import VarietyDescriptor
from src.errors import (
    DimensionMismatch,
    NoConvergence,
    NotFinite,
    NotPrimary,
    PointNotOnVariety,
    SchemaError,
)
from src.local.hilbert import (
    LocalRingSpec,
    PrimaryIdealSpec,
    hs_multiplicity,
    hs_table,
    local_length,
    local_ring_at,
    multiplicity_at_point,
    truncated_quotient_dim,
)

XY = ("x", "y")
XYZ = ("x", "y", "z")


def germ(field, text, vars=XY, **kwargs):
    return LocalRingSpec(field=field, vars=vars, ideal_generators=[parse_poly(text, field, vars)], **kwargs)


def ideal(field, *texts, vars=XY):
    return PrimaryIdealSpec(generators=[parse_poly(t, field, vars) for t in texts])


class TestLocalRingSpec:
    def test_must_vanish_at_origin(self, F2):
        with pytest.raises(ValueError):
            germ(F2, "x+1")

    def test_primary_ideal_rejects_units(self, F2):
        with pytest.raises(ValueError):
            ideal(F2, "x+1")

    def test_quotient_adds_generators(self, F3):
        spec = germ(F3, "x^2+y^2+z^2", XYZ)
        assert len(spec.quotient([parse_poly("x-y", F3, XYZ)]).generators) == 2


class TestLengths:
    def test_truncated_dimension_of_the_plane(self, F2):
        spec = LocalRingSpec(field=F2, vars=XY)
        assert truncated_quotient_dim(spec, [], 3) == 6

    def test_truncated_dimension_counts_monomials(self, F3):
        for r in (1, 2, 3):
            spec = LocalRingSpec(field=F3, vars=XYZ[:r])
            for n in range(1, 9):
                assert truncated_quotient_dim(spec, [], n) == comb(n - 1 + r, r)

    def test_intersection_with_three_lines(self, F2):
        spec = germ(F2, "x*y*(x+y)")
        assert local_length(spec, [parse_poly("x^2+x*y+y^2", F2, XY)]) == 6
        assert local_length(spec, [parse_poly("x^2+y^3", F2, XY)]) == 7

    def test_regular_parameter(self, F5):
        spec = germ(F5, "y^2-x^3")
        assert local_length(spec, [parse_poly("x", F5, XY)]) == 2
        assert local_length(spec, [parse_poly("y", F5, XY)]) == 3

    def test_zero_divisor_is_not_finite(self, F2):
        spec = germ(F2, "x*y*(x+y)")
        with pytest.raises(NotFinite):
            local_length(spec, [parse_poly("x", F2, XY)])


class TestHilbertSamuel:
    def test_three_lines_table(self, F2):
        table = hs_table(germ(F2, "x*y*(x+y)"))
        assert table.rows == [(1, 1), (2, 3), (3, 6), (4, 9), (5, 12)]
        assert table.dimension == 1
        assert table.multiplicity == 3
        assert table.stabilized

    def test_extended_rows_stay_stable(self, F2):
        table = hs_table(germ(F2, "x*y*(x+y)"), extend=2)
        assert len(table.rows) == 7
        assert table.stabilized

    def test_regular_plane(self, F2):
        spec = LocalRingSpec(field=F2, vars=XY)
        assert hs_multiplicity(spec) == (2, 1)

    def test_principal_parameter_ideals(self, F2):
        spec = germ(F2, "x*y*(x+y)")
        assert hs_multiplicity(spec, ideal(F2, "x^2+x*y+y^2")) == (1, 6)
        assert hs_multiplicity(spec, ideal(F2, "x^2+y^3")) == (1, 7)

    def test_hypersurface_order(self, F5):
        assert hs_multiplicity(germ(F5, "x^4+y^4+x^2*y"))[1] == 3

    def test_cone_vertex(self, F3):
        spec = germ(F3, "x^2+y^2+z^2", XYZ)
        assert hs_multiplicity(spec) == (2, 2)
        assert hs_multiplicity(spec, ideal(F3, "x-y", "z", vars=XYZ)) == (2, 2)
        assert hs_multiplicity(spec, ideal(F3, "x-y", "z-x+x^2", vars=XYZ)) == (2, 3)

    def test_not_primary(self, F2):
        spec = germ(F2, "x*y*(x+y)")
        with pytest.raises(NotPrimary):
            hs_multiplicity(spec, ideal(F2, "x"))

    def test_declared_dimension_checked(self, F2):
        spec = germ(F2, "x*y*(x+y)", declared_dimension=2)
        with pytest.raises(DimensionMismatch):
            hs_table(spec)


class TestHigherOrderGerms:
    def test_order_four_waits_for_the_ring_to_show(self, F5):
        table = hs_table(germ(F5, "x^4+y^4"))
        assert table.rows[:4] == [(1, 1), (2, 3), (3, 6), (4, 10)]
        assert (table.dimension, table.multiplicity) == (1, 4)
        assert table.stabilized

    def test_order_four_with_mixed_terms(self):
        F7 = make_prime_field(7)
        assert hs_multiplicity(germ(F7, "x^2*y^2+x^5+y^5")) == (1, 4)

    def test_order_five(self, F3):
        table = hs_table(germ(F3, "x^5+y^5+x^2*y^3"))
        assert (table.dimension, table.multiplicity) == (1, 5)
        assert [l for _, l in table.rows][-3:] == [15, 20, 25]

    def test_row_limit_is_honoured(self, F5):
        with pytest.raises(NoConvergence):
            hs_multiplicity(germ(F5, "x^4+y^4"), n_max=5)


class TestBranchOrders:
    def test_length_is_the_sum_over_branches(self, F2):
        spec = germ(F2, "x*y*(x+y)")
        branches = [germ(F2, g) for g in ("x", "y", "x+y")]
        for text in ("x^2+x*y+y^2", "x^2+y^3", "x+y^2"):
            h = [parse_poly(text, F2, XY)]
            assert local_length(spec, h) == sum(local_length(b, h) for b in branches)

    def test_branch_values(self, F2):
        h = [parse_poly("x^2+y^3", F2, XY)]
        assert [local_length(germ(F2, g), h) for g in ("x", "y", "x+y")] == [3, 2, 2]


class TestPointsOfVarieties:
    def test_cusp(self, F5):
        v = VarietyDescriptor(field=F5, vars=XY, ideal=[parse_poly("y^2-x^3", F5, XY)])
        assert multiplicity_at_point(v, [0, 0]) == 2
        assert multiplicity_at_point(v, [1, 1]) == 1

    def test_order_four_point(self, F5):
        v = VarietyDescriptor(field=F5, vars=XY, ideal=[parse_poly("x^4+y^4", F5, XY)])
        assert multiplicity_at_point(v, [0, 0]) == 4

    def test_wrong_number_of_coordinates(self, F5):
        v = VarietyDescriptor(field=F5, vars=XY, ideal=[parse_poly("y^2-x^3", F5, XY)])
        with pytest.raises(SchemaError):
            local_ring_at(v, [0])

    def test_off_the_variety(self, F5):
        v = VarietyDescriptor(field=F5, vars=XY, ideal=[parse_poly("y^2-x^3", F5, XY)])
        with pytest.raises(PointNotOnVariety):
            local_ring_at(v, [1, 0])

    def test_projective_chart(self, F3):
        v = VarietyDescriptor(
            field=F3, ambient="projective", vars=XYZ, ideal=[parse_poly("x^2+y^2+z^2", F3, XYZ)]
        )
        spec = local_ring_at(v, [1, 1, 1])
        assert spec.vars == ("y", "z")
        assert multiplicity_at_point(v, [1, 1, 1]) == 1

    def test_extension_point(self, F2, F4):
        v = VarietyDescriptor(field=F2, vars=XY, ideal=[parse_poly("x^2+x*y+y^2", F2, XY)])
        spec = local_ring_at(v, [F4.generator(), 1])
        assert spec.field == F4
        assert multiplicity_at_point(v, [F4.generator(), 1]) == 1
