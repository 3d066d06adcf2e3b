"""Tests for regular models over a DVR and their closed fibers."""

import pytest

from src.algebra.parser import parse_poly
from src.errors import (
    ComponentProductMismatch,
    ComponentReducible,
    ComponentsNotCoprime,
    NotFlat,
    NotRegularPoint,
    NotTransversal,
    PointNotOnFiber,
)
from src.models.dvr import (
    ModelComponent,
    ModelDescriptor,
    fiber_cycle_counts,
    lift_degree,
    model_fiber_decomposition,
    model_point_report,
    model_regularity_at,
    point_degree,
)

XY = ("x", "y")
XYT = ("x", "y", "t")


def model(field, f, *components):
    return ModelDescriptor(
        field=field,
        f=parse_poly(f, field, XYT),
        components=[ModelComponent(g=parse_poly(g, field, XY), r=r) for g, r in components],
    )


@pytest.fixture
def conic_fiber(F3):
    return model(F3, "x^2+y^2+t", ("x^2+y^2", 1))


@pytest.fixture
def double_conic(F3):
    return model(F3, "t-(x^2+y^2+1)^2", ("x^2+y^2+1", 2))


@pytest.fixture
def crossing(F2):
    return model(F2, "x*y-t", ("x", 1), ("y", 1))


class TestVerify:
    def test_examples_verify(self, conic_fiber, double_conic, crossing):
        for m in (conic_fiber, double_conic, crossing):
            m.verify()

    def test_fiber(self, F3, conic_fiber):
        assert conic_fiber.fiber() == parse_poly("x^2+y^2", F3, XY)

    def test_not_flat(self, F2):
        with pytest.raises(NotFlat):
            model(F2, "t*x", ("x", 1)).verify()

    def test_product_mismatch(self, F3):
        with pytest.raises(ComponentProductMismatch):
            model(F3, "x^2+y^2+t", ("x", 1)).verify()

    def test_components_must_be_coprime(self, F3):
        with pytest.raises(ComponentsNotCoprime):
            model(F3, "x^2+t", ("x", 1), ("x", 1)).verify()

    def test_uniformizer_distinct(self, F3):
        with pytest.raises(ValueError):
            ModelDescriptor(
                field=F3,
                vars=("x", "t"),
                f=parse_poly("x+t", F3, ("x", "t", "t2")),
                components=[ModelComponent(g=parse_poly("x", F3, ("x", "t")), r=1)],
            )


class TestFiberDecomposition:
    def test_gcd_of_fiber(self, conic_fiber, double_conic, crossing):
        assert model_fiber_decomposition(conic_fiber, 2).gcd_Xk == 2
        assert model_fiber_decomposition(double_conic, 2).gcd_Xk == 2
        assert model_fiber_decomposition(crossing, 1).gcd_Xk == 1

    def test_component_rows(self, double_conic):
        report = model_fiber_decomposition(double_conic, 2)
        (row,) = report.components
        assert (row.r, row.delta_reg, row.irreducibility) == (2, 1, "verified")
        assert report.warnings == []

    def test_reducible_component(self, F3):
        with pytest.raises(ComponentReducible):
            model_fiber_decomposition(model(F3, "x^2-y^2+t", ("x^2-y^2", 1)), 1)


class TestPoints:
    def test_point_degree(self, F3, F9):
        assert point_degree([F9.generator(), 1], F3) == 2
        assert point_degree([1, 2], F3) == 1

    def test_regularity(self, F3, conic_fiber):
        assert model_regularity_at(conic_fiber, [0, 0])
        squared = model(F3, "x^2+y^2+t^2", ("x^2+y^2", 1))
        assert not model_regularity_at(squared, [0, 0])

    def test_point_off_the_fiber(self, conic_fiber):
        with pytest.raises(PointNotOnFiber):
            model_regularity_at(conic_fiber, [1, 0])

    def test_singular_point_of_the_fiber(self, conic_fiber):
        report = model_point_report(conic_fiber, [0, 0])
        assert report.regular_on_model
        assert report.components_through == [(0, 2)]
        assert report.e_fiber == 2
        assert report.min_degree_bound == 2

    def test_crossing_point(self, crossing):
        report = model_point_report(crossing, [0, 0])
        assert report.components_through == [(0, 1), (1, 1)]
        assert report.e_fiber == 2


class TestLift:
    def test_conjugate_point(self, F3, F9, conic_fiber):
        report = lift_degree(conic_fiber, [F9.generator(), 1], parse_poly("y-1", F3, XY))
        assert report.computed_degree == report.predicted_degree == 2
        assert report.point == ["a", "1"]
        assert report.solved_variable == "x"
        assert report.series_witness is not None

    def test_double_component(self, F3, double_conic):
        report = lift_degree(double_conic, [1, 1], parse_poly("x-1", F3, XY))
        assert report.computed_degree == report.predicted_degree == 2
        assert report.series_witness is None

    def test_series_witness(self, F2, crossing):
        report = lift_degree(crossing, [1, 0], parse_poly("x-1", F2, XY))
        assert report.computed_degree == report.predicted_degree == 1
        assert report.series_witness == "t"
        assert report.solved_variable == "y"

    def test_crossing_point_rejected(self, F2, crossing):
        with pytest.raises(NotRegularPoint):
            lift_degree(crossing, [0, 0], parse_poly("x+y", F2, XY))

    def test_tangent_cut_rejected(self, F3, double_conic):
        with pytest.raises(NotTransversal):
            lift_degree(double_conic, [1, 1], parse_poly("x+y+1", F3, XY))


class TestFiberCycle:
    def test_counts_agree(self, crossing):
        rows = fiber_cycle_counts(crossing, 2)
        assert [(r.weighted_points, r.component_sum, r.uncovered) for r in rows] == [(4, 4, 0), (8, 8, 0)]
