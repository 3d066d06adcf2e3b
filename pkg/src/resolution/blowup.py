"""
Plane-curve germs resolved by quadratic transforms.

n(A) of a reduced curve germ is the gcd of the residue degrees of the
places over the singular point. Each blow-up at the origin is read in two
charts; the exceptional points of chart 1 are the roots of the strict
transform on x = 0, chart 2 only adds its origin. A non-rational
exceptional point of degree e is handled by moving to F_{q^e} and following
one conjugate root, with the residue degrees of everything below it
multiplied by e.
"""

import logging
from typing import List, Literal, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, field_serializer

from src.algebra.factor import factor_coeffs, find_roots, radical
from src.algebra.fields import embed_value, extension_of, gcd_of_list
from src.algebra.poly import MultiPoly
from src.config.settings import settings
from src.errors import (
    BlowupBudgetExceeded,
    ComponentMismatch,
    NotDivisible,
    PointNotOnVariety,
    SchemaError,
    ZeroGerm,
)

logger = logging.getLogger(__name__)


class ExceptionalPoint(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    chart: Literal[1, 2]
    factor: MultiPoly
    degree: int

    @field_serializer("factor")
    def _poly(self, f: MultiPoly) -> str:
        return str(f)


class BlowupStep(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    mult: int
    charts: Tuple[MultiPoly, MultiPoly]
    exceptional_points: List[ExceptionalPoint]

    @field_serializer("charts")
    def _polys(self, charts: Tuple[MultiPoly, MultiPoly]) -> List[str]:
        return [str(c) for c in charts]


class ResolutionPlace(BaseModel):
    residue_degree: int
    chart_path: List[Tuple[int, str]]

    @property
    def encoded(self) -> str:
        return "".join(f"(chart:{c}, root:{r})" for c, r in self.chart_path)


class ResolutionReport(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    places: List[ResolutionPlace]
    n_value: int
    blowup_count: int
    reduced_input: MultiPoly

    @field_serializer("reduced_input")
    def _poly(self, f: MultiPoly) -> str:
        return str(f)


class ComponentNReport(BaseModel):
    n_total: int
    component_n: List[int]
    holds: bool


def blowup_step(germ: MultiPoly) -> BlowupStep:
    if germ.is_zero:
        raise ZeroGerm("cannot blow up the zero germ")
    if germ.nvars != 2:
        raise SchemaError("blow-ups are implemented for plane germs only")
    m, form = germ.lowest_form()
    if m == 0:
        raise PointNotOnVariety(f"{germ} does not vanish at the origin")
    F, vars = germ.field, germ.vars
    chart1 = MultiPoly(F, vars, {(i + j - m, j): c for (i, j), c in germ.terms.items()})
    chart2 = MultiPoly(F, vars, {(i, i + j - m): c for (i, j), c in germ.terms.items()})
    points: List[ExceptionalPoint] = []
    on_axis = [form.terms.get((m - j, j), F.zero) for j in range(m + 1)]
    while on_axis and F.is_zero(on_axis[-1]):
        on_axis.pop()
    if len(on_axis) > 1:
        for h, _ in factor_coeffs(F, on_axis, settings.seed):
            factor = MultiPoly.from_univariate(F, vars, vars[1], h)
            points.append(ExceptionalPoint(chart=1, factor=factor, degree=len(h) - 1))
    if F.is_zero(form.terms.get((0, m), F.zero)):
        points.append(ExceptionalPoint(chart=2, factor=MultiPoly.var(F, vars, vars[0]), degree=1))
    return BlowupStep(mult=m, charts=(chart1, chart2), exceptional_points=points)


class _Resolver:
    def __init__(self, budget: int, root_choice: int):
        self.budget = budget
        self.root_choice = root_choice
        self.count = 0
        self.places: List[ResolutionPlace] = []

    def run(self, g: MultiPoly, scale: int, path: List[Tuple[int, str]], axis: Optional[int]):
        m, form = g.lowest_form()
        if m == 1 and _transverse(form, axis):
            self.places.append(ResolutionPlace(residue_degree=scale, chart_path=path))
            return
        self.count += 1
        if self.count > self.budget:
            raise BlowupBudgetExceeded(f"more than {self.budget} blow-ups")
        step = blowup_step(g)
        logger.debug("[Resolve] blow-up %d: mult %d, %d points", self.count, step.mult, len(step.exceptional_points))
        for point in step.exceptional_points:
            chart = step.charts[point.chart - 1]
            if point.chart == 2:
                self.run(chart, scale, path + [(2, "0")], axis=1)
                continue
            F = g.field
            coeffs = point.factor.univariate_coeffs(g.vars[1])
            L = extension_of(F, point.degree)
            roots = find_roots(L, [embed_value(F, L, c) for c in coeffs])
            root = roots[self.root_choice % len(roots)] if point.degree > 1 else roots[0]
            moved = chart.base_change(L).shift([L.zero, root])
            self.run(moved, scale * point.degree, path + [(1, L.format(root))], axis=0)


def _transverse(form: MultiPoly, axis: Optional[int]) -> bool:
    """A smooth branch with linear form `form` crosses the exceptional axis transversally."""
    if axis is None:
        return True
    key = (0, 1) if axis == 0 else (1, 0)
    return key in form.terms


def resolve_germ(
    germ: MultiPoly,
    budget: Optional[int] = None,
    root_choice: int = 0,
) -> ResolutionReport:
    if germ.is_zero:
        raise ZeroGerm("the zero germ has no places")
    if germ.nvars != 2:
        raise SchemaError("resolution is implemented for plane germs only")
    if not germ.field.is_zero(germ.constant_term()):
        raise PointNotOnVariety(f"{germ} does not vanish at the origin")
    reduced = radical(germ)
    resolver = _Resolver(budget or settings.blowup_budget, root_choice)
    resolver.run(reduced, 1, [], None)
    places = sorted(resolver.places, key=lambda p: p.chart_path)
    n = gcd_of_list(p.residue_degree for p in places)
    logger.info("[Resolve] %s: %d places, n=%d", germ, len(places), n)
    return ResolutionReport(
        places=places,
        n_value=n,
        blowup_count=resolver.count,
        reduced_input=reduced,
    )


def check_component_n(germ: MultiPoly, components: Sequence[MultiPoly]) -> ComponentNReport:
    """n of a germ is the gcd of n over its branches through the point."""
    product = MultiPoly.constant(germ.field, germ.vars, germ.field.one)
    for c in components:
        product = product * c
    try:
        unit = germ.exact_div(product)
    except NotDivisible as exc:
        raise ComponentMismatch(f"{germ} is not the product of its components") from exc
    if not unit.is_constant:
        raise ComponentMismatch(f"{germ} = ({unit}) * product, not a unit multiple")
    total = resolve_germ(germ).n_value
    through = [c for c in components if germ.field.is_zero(c.constant_term())]
    parts = [resolve_germ(c).n_value for c in through]
    return ComponentNReport(n_total=total, component_n=parts, holds=total == gcd_of_list(parts))
