"""Tests for plane-curve resolution and the cone comparison."""

import pytest

from src.algebra.parser import parse_poly
from src.algebra.poly import MultiPoly
from src.census.points import VarietyDescriptor
from src.errors import (
    BlowupBudgetExceeded,
    ComponentMismatch,
    NoConvergence,
    NotHomogeneous,
    PointNotOnVariety,
    VarietyNotRegular,
    ZeroGerm,
)
from src.local.hilbert import PrimaryIdealSpec
from src.resolution.blowup import blowup_step, check_component_n, resolve_germ
from src.resolution.cone import build_affine_cone, cone_theorem_check

XY = ("x", "y")
XYZ = ("x", "y", "z")


def p(text, field, vars=XY):
    return parse_poly(text, field, vars)


class TestBlowupStep:
    def test_cusp(self, F5):
        step = blowup_step(p("y^2-x^3", F5))
        assert step.mult == 2
        assert step.charts[0] == p("y^2-x", F5)
        assert [(e.chart, str(e.factor), e.degree) for e in step.exceptional_points] == [(1, "y", 1)]

    def test_tangent_cone_with_conjugate_roots(self, F2):
        step = blowup_step(p("x^2+x*y+y^2", F2))
        assert [(e.chart, e.degree) for e in step.exceptional_points] == [(1, 2)]

    def test_chart_two_origin(self, F2):
        step = blowup_step(p("x*y*(x+y)", F2))
        assert sorted(e.chart for e in step.exceptional_points) == [1, 1, 2]

    def test_zero_germ(self, F2):
        with pytest.raises(ZeroGerm):
            blowup_step(MultiPoly.zero(F2, XY))


class TestResolveGerm:
    def test_cusp_has_one_rational_place(self, F5):
        report = resolve_germ(p("y^2-x^3", F5))
        assert report.n_value == 1
        assert report.blowup_count == 2
        assert [pl.residue_degree for pl in report.places] == [1]

    def test_conjugate_pair(self, F2):
        report = resolve_germ(p("x^2+x*y+y^2", F2))
        assert report.n_value == 2
        assert [pl.residue_degree for pl in report.places] == [2]
        assert report.places[0].encoded == "(chart:1, root:a)"

    def test_other_conjugate_root_gives_same_n(self, F2):
        report = resolve_germ(p("x^2+x*y+y^2", F2), root_choice=1)
        assert report.n_value == 2
        assert report.places[0].encoded == "(chart:1, root:a+1)"

    def test_three_lines(self, F2):
        report = resolve_germ(p("x*y*(x+y)", F2))
        assert report.n_value == 1
        assert len(report.places) == 3
        assert report.blowup_count == 1

    def test_node_with_irrational_tangents(self, F3):
        assert resolve_germ(p("y^2+x^2+x^3", F3)).n_value == 2

    def test_mixed_degrees(self, F2):
        report = resolve_germ(p("x*(x^2+x*y+y^2)", F2))
        assert sorted(pl.residue_degree for pl in report.places) == [1, 2]
        assert report.n_value == 1

    def test_smooth_germ_needs_no_blowup(self, F3):
        report = resolve_germ(p("x+y^2", F3))
        assert report.blowup_count == 0
        assert report.n_value == 1

    def test_input_is_reduced_first(self, F3):
        report = resolve_germ(p("x^2", F3))
        assert report.reduced_input == p("x", F3)
        assert report.n_value == 1

    def test_errors(self, F2):
        with pytest.raises(ZeroGerm):
            resolve_germ(MultiPoly.zero(F2, XY))
        with pytest.raises(PointNotOnVariety):
            resolve_germ(p("x+1", F2))

    def test_budget(self, F5):
        with pytest.raises(BlowupBudgetExceeded):
            resolve_germ(p("y^2-x^3", F5), budget=1)


class TestComponentN:
    def test_three_lines(self, F2):
        components = [p("x", F2), p("y", F2), p("x+y", F2)]
        report = check_component_n(p("x*y*(x+y)", F2), components)
        assert report.holds
        assert report.component_n == [1, 1, 1]

    def test_components_must_multiply_out(self, F2):
        with pytest.raises(ComponentMismatch):
            check_component_n(p("x*y*(x+y)", F2), [p("x", F2), p("y", F2)])


class TestCone:
    def test_cone_needs_projective_variety(self, F2):
        v = VarietyDescriptor(field=F2, vars=XY, ideal=[p("x^2+x*y+y^2", F2)])
        with pytest.raises(NotHomogeneous):
            build_affine_cone(v)

    def test_conjugate_pair(self, F2):
        v = VarietyDescriptor(field=F2, ambient="projective", vars=XY, ideal=[p("x^2+x*y+y^2", F2)])
        curated = [PrimaryIdealSpec(generators=[p("x", F2)]), PrimaryIdealSpec(generators=[p("y", F2)])]
        report = cone_theorem_check(v, D=4, trials=0, curated=curated, degree=2)
        assert report.delta == 2
        assert report.e_vertex == 2
        assert report.degree_matches
        assert report.divides_all
        assert report.status == "EQUALITY_WITNESSED"

    def test_row_limit_reaches_the_vertex(self, F2):
        v = VarietyDescriptor(field=F2, ambient="projective", vars=XY, ideal=[p("x^2+x*y+y^2", F2)])
        assert cone_theorem_check(v, D=2, trials=0, n_max=4).e_vertex == 2
        with pytest.raises(NoConvergence):
            cone_theorem_check(v, D=2, trials=0, n_max=3)

    def test_conic(self, F3):
        v = VarietyDescriptor(field=F3, ambient="projective", vars=XYZ, ideal=[p("x^2+y^2+z^2", F3, XYZ)])
        curated = [
            PrimaryIdealSpec(generators=[p("x-y", F3, XYZ), p("z", F3, XYZ)]),
            PrimaryIdealSpec(generators=[p("x-y", F3, XYZ), p("z-x+x^2", F3, XYZ)]),
        ]
        report = cone_theorem_check(v, D=2, trials=0, curated=curated)
        assert report.delta == 1
        assert report.e_vertex == 2
        assert [s.e for s in report.gamma.samples] == [2, 3]
        assert report.status == "EQUALITY_WITNESSED"

    def test_singular_variety_rejected(self, F2):
        v = VarietyDescriptor(field=F2, ambient="projective", vars=XYZ, ideal=[p("x*y", F2, XYZ)])
        with pytest.raises(VarietyNotRegular):
            cone_theorem_check(v, D=1, trials=0)
