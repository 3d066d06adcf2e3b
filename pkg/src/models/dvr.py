"""
Plane models X = V(f) ⊂ A^2 over F_q[[t]].

The special fiber is f mod t = unit · ∏ g_i^r_i. Every length lives on the
closed fiber, so exact polynomial arithmetic in (x, y, t) is enough; power
series in t appear only as truncated Newton witnesses for lifted points.
"""

import logging
from typing import List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_serializer, model_validator

from src.algebra.factor import bivariate_gcd, is_irreducible_bivariate
from src.algebra.fields import FieldDescriptor, element_degree, gcd_of_list
from src.algebra.poly import MultiPoly, jacobian_rank_at, resolve_point
from src.census.points import VarietyDescriptor, enumerate_points, regular_filter
from src.config.settings import settings
from src.errors import (
    ComponentProductMismatch,
    ComponentsNotCoprime,
    ComponentReducible,
    NoConvergence,
    NotDivisible,
    NotFinite,
    NotFlat,
    NotRegularPoint,
    NotTransversal,
    PointNotOnFiber,
    PointNotOnVariety,
    SchemaError,
)
from src.local.hilbert import LocalRingSpec, local_length, multiplicity_at_point

logger = logging.getLogger(__name__)

IRREDUCIBILITY_MAX_DEGREE = 4
IRREDUCIBILITY_MAX_FIELD = 4


class ModelComponent(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    g: MultiPoly
    r: int = Field(..., ge=1)

    @field_serializer("g")
    def _poly(self, g: MultiPoly) -> str:
        return str(g)


class ModelDescriptor(BaseModel):
    """X = V(f) over F_q[[t]] with its special-fiber components Γ_i = V(g_i), mult r_i."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    field: FieldDescriptor
    vars: Tuple[str, str] = ("x", "y")
    uniformizer: str = "t"
    f: MultiPoly
    components: List[ModelComponent]
    t_truncation: int = Field(default_factory=lambda: settings.t_truncation, ge=1)

    @model_validator(mode="after")
    def _check_rings(self) -> "ModelDescriptor":
        if self.uniformizer in self.vars:
            raise ValueError("the uniformizer must differ from the fiber coordinates")
        if self.f.field != self.field or self.f.vars != self.ring_vars:
            raise ValueError(f"f must live in {self.field!r}[{','.join(self.ring_vars)}]")
        if not self.components:
            raise ValueError("list at least one fiber component")
        for c in self.components:
            if c.g.field != self.field or c.g.vars != self.vars:
                raise ValueError(f"{c.g} must live in {self.field!r}[{','.join(self.vars)}]")
        return self

    @property
    def ring_vars(self) -> Tuple[str, str, str]:
        return (self.vars[0], self.vars[1], self.uniformizer)

    def fiber(self) -> MultiPoly:
        """f mod t, in (x, y)."""
        return self.f.set_var(self.uniformizer, self.field.zero)

    def verify(self) -> None:
        fiber = self.fiber()
        if fiber.is_zero:
            raise NotFlat(f"t divides {self.f}")
        product = MultiPoly.constant(self.field, self.vars, self.field.one)
        for c in self.components:
            product = product * c.g**c.r
        try:
            unit = fiber.exact_div(product)
        except NotDivisible as exc:
            raise ComponentProductMismatch(f"f mod t = {fiber} is not a unit times ∏ g_i^r_i") from exc
        if not unit.is_constant:
            raise ComponentProductMismatch(f"f mod t = ({unit}) · ∏ g_i^r_i")
        for i, a in enumerate(self.components):
            for b in self.components[i + 1 :]:
                if not bivariate_gcd(a.g, b.g).is_constant:
                    raise ComponentsNotCoprime(f"{a.g} and {b.g} share a factor")

    def component_variety(self, index: int) -> VarietyDescriptor:
        return VarietyDescriptor(field=self.field, vars=self.vars, ideal=[self.components[index].g])

    def fiber_variety(self) -> VarietyDescriptor:
        return VarietyDescriptor(field=self.field, vars=self.vars, ideal=[self.fiber()])


class ComponentReport(BaseModel):
    g: str
    r: int
    delta_reg: int
    D: int
    irreducibility: str


class FiberReport(BaseModel):
    gcd_Xk: int
    components: List[ComponentReport]
    warnings: List[str] = Field(default_factory=list)


class ModelPointReport(BaseModel):
    point: List[str]
    degree: int
    regular_on_model: bool
    components_through: List[Tuple[int, int]] = Field(..., description="(component index, e_i)")
    e_fiber: int
    min_degree_bound: int


class LiftReport(BaseModel):
    point: List[str]
    cutting_germ: str
    computed_degree: int
    predicted_degree: int
    series_witness: Optional[str] = None
    solved_variable: Optional[str] = None


class FiberCycleRow(BaseModel):
    d: int
    weighted_points: int
    component_sum: int
    uncovered: int


# ── fiber decomposition ─────────────────────────────────────────────────


def _irreducibility(g: MultiPoly) -> str:
    if g.total_degree <= IRREDUCIBILITY_MAX_DEGREE and g.field.order <= IRREDUCIBILITY_MAX_FIELD:
        if not is_irreducible_bivariate(g):
            raise ComponentReducible(f"{g} has a proper factor")
        return "verified"
    return "trusted"


def model_fiber_decomposition(m: ModelDescriptor, D: Optional[int] = None) -> FiberReport:
    """gcd(X_k) = gcd_i r_i · δ(Γ_i^reg)."""
    m.verify()
    rows, warnings = [], []
    for i, c in enumerate(m.components):
        status = _irreducibility(c.g)
        if status == "trusted":
            warnings.append(f"irreducibility of {c.g} not verified")
            logger.warning("[Model] irreducibility of %s trusted, not verified", c.g)
        census = regular_filter(m.component_variety(i), D)
        if census.gcd_estimate == 0:
            warnings.append(f"no regular closed point of degree <= {census.max_degree} on {c.g}")
        rows.append(
            ComponentReport(
                g=str(c.g),
                r=c.r,
                delta_reg=census.gcd_estimate,
                D=census.max_degree,
                irreducibility=status,
            )
        )
    gcd_xk = gcd_of_list(row.r * row.delta_reg for row in rows)
    return FiberReport(gcd_Xk=gcd_xk, components=rows, warnings=warnings)


# ── points ──────────────────────────────────────────────────────────────


def point_degree(point: Sequence, field: FieldDescriptor) -> int:
    """Degree over `field` of the smallest extension holding every coordinate."""
    target, values = resolve_point(field, point)
    degree = 1
    for v in values:
        d = element_degree(field, target, v)
        degree = degree * d // gcd_of_list([degree, d])
    return degree


def _on_fiber(m: ModelDescriptor, point: Sequence) -> Tuple[FieldDescriptor, list]:
    if len(point) != 2:
        raise SchemaError("fiber points have two coordinates")
    target, values = resolve_point(m.field, point)
    if not target.is_zero(m.fiber().evaluate_raw(target, values)):
        raise PointNotOnFiber("f mod t does not vanish at the point")
    return target, values


def model_regularity_at(m: ModelDescriptor, point: Sequence) -> bool:
    """X is regular at (P, t=0) iff f ∉ m^2 there."""
    target, values = _on_fiber(m, point)
    moved = m.f.base_change(target).shift(values + [target.zero])
    return moved.order == 1


def model_point_report(m: ModelDescriptor, point: Sequence) -> ModelPointReport:
    target, values = _on_fiber(m, point)
    through = []
    for i, c in enumerate(m.components):
        if target.is_zero(c.g.evaluate_raw(target, values)):
            through.append((i, multiplicity_at_point(m.component_variety(i), point)))
    e_fiber = sum(m.components[i].r * e for i, e in through)
    degree = point_degree(point, m.field)
    return ModelPointReport(
        point=[target.format(v) for v in values],
        degree=degree,
        regular_on_model=model_regularity_at(m, point),
        components_through=through,
        e_fiber=e_fiber,
        min_degree_bound=e_fiber * degree,
    )


# ── lifted points ───────────────────────────────────────────────────────


def lift_degree(m: ModelDescriptor, point: Sequence, g: MultiPoly) -> LiftReport:
    """Degree over F_q[[t]] of V(g) ∩ X through a regular fiber point.

    The degree is read on the closed fiber as m · ℓ(F_{q^m}[x,y]/(f mod t, g))
    at the point; it should equal r_i · e_i · m.
    """
    report = model_point_report(m, point)
    if not report.regular_on_model:
        raise NotRegularPoint("X is not regular at the point")
    if len(report.components_through) != 1:
        raise NotRegularPoint("the point lies on several fiber components")
    index, e_i = report.components_through[0]
    component = m.components[index]
    target, values = resolve_point(m.field, point)
    if jacobian_rank_at([component.g], point) != 1:
        raise NotRegularPoint(f"the point is singular on {component.g}")
    if g.vars != m.vars:
        g = g.with_vars(m.vars)
    if not target.is_zero(g.evaluate_raw(target, values)):
        raise PointNotOnVariety(f"{g} does not vanish at the point")
    cut = g.base_change(target).shift(values)
    on_component = _local_spec(target, m.vars, component.g.base_change(target).shift(values))
    try:
        transversal = local_length(on_component, [cut]) == 1
    except NotFinite:
        transversal = False
    if not transversal:
        raise NotTransversal(f"{g} does not cut {component.g} with order 1")
    fiber = m.fiber().base_change(target).shift(values)
    length = local_length(_local_spec(target, m.vars, fiber), [cut])
    computed = report.degree * length
    predicted = component.r * e_i * report.degree
    witness, solved = None, None
    if fiber.order == 1:
        witness, solved = _newton_witness(m, target, values, cut)
    logger.info("[Lift] computed %d, predicted %d", computed, predicted)
    return LiftReport(
        point=report.point,
        cutting_germ=str(g),
        computed_degree=computed,
        predicted_degree=predicted,
        series_witness=witness,
        solved_variable=solved,
    )


def _local_spec(field: FieldDescriptor, vars: Sequence[str], germ: MultiPoly) -> LocalRingSpec:
    return LocalRingSpec(field=field, vars=tuple(vars), ideal_generators=[germ])


def _newton_witness(
    m: ModelDescriptor, target: FieldDescriptor, values: list, cut: MultiPoly
) -> Tuple[Optional[str], Optional[str]]:
    """Solve f(x0, y(t), t) = 0 (or in x) mod t^N when g is a coordinate line."""
    linear = cut.lowest_form()[1] if cut.total_degree == 1 else None
    if linear is None or len(linear.terms) != 1 or len(cut.terms) != 1:
        return None, None
    (exps,) = linear.terms
    fixed, free = (0, 1) if exps == (1, 0) else (1, 0)
    f = m.f.base_change(target).set_var(m.vars[fixed], values[fixed])
    # f is now a polynomial in (free, t)
    n = m.t_truncation
    series = _newton_solve(target, f, values[free], n)
    if series is None:
        raise NoConvergence("Newton iteration did not converge in t")
    witness = MultiPoly(target, (m.uniformizer,), {(i,): c for i, c in enumerate(series)})
    return str(witness), m.vars[free]


def _series_mul(F: FieldDescriptor, a: List[int], b: List[int], n: int) -> List[int]:
    out = [0] * n
    for i, u in enumerate(a[:n]):
        if u:
            for j, v in enumerate(b[: n - i]):
                if v:
                    out[i + j] = F.add(out[i + j], F.mul(u, v))
    return out


def _series_eval(F: FieldDescriptor, f: MultiPoly, z: List[int], n: int) -> List[int]:
    """f(z(t), t) mod t^n for f in (z, t)."""
    powers = [[F.one] + [0] * (n - 1)]
    top = max((e[0] for e in f.terms), default=0)
    for _ in range(top):
        powers.append(_series_mul(F, powers[-1], z, n))
    out = [0] * n
    for (i, j), c in f.terms.items():
        for k in range(n - j):
            v = powers[i][k]
            if v:
                out[k + j] = F.add(out[k + j], F.mul(c, v))
    return out


def _series_inverse(F: FieldDescriptor, a: List[int], n: int) -> List[int]:
    inv0 = F.inv(a[0])
    out = [inv0] + [0] * (n - 1)
    for k in range(1, n):
        acc = 0
        for i in range(1, k + 1):
            if i < len(a) and a[i]:
                acc = F.add(acc, F.mul(a[i], out[k - i]))
        out[k] = F.neg(F.mul(inv0, acc))
    return out


def _newton_solve(F: FieldDescriptor, f: MultiPoly, z0: int, n: int) -> Optional[List[int]]:
    z = [z0] + [0] * (n - 1)
    df = f.derivative(f.vars[0])
    for _ in range(n.bit_length() + 2):
        residual = _series_eval(F, f, z, n)
        if not any(residual):
            return z
        slope = _series_eval(F, df, z, n)
        if F.is_zero(slope[0]):
            return None
        step = _series_mul(F, residual, _series_inverse(F, slope, n), n)
        z = [F.sub(a, b) for a, b in zip(z, step)]
    return z if not any(_series_eval(F, f, z, n)) else None


# ── fiber cycle ─────────────────────────────────────────────────────────


def fiber_cycle_counts(m: ModelDescriptor, D: int) -> List[FiberCycleRow]:
    """Per d: Σ_P Σ_{i: P ∈ Γ_i} r_i over F_{q^d}-points of V(f mod t) versus Σ_i r_i·N_d(Γ_i)."""
    m.verify()
    rows = []
    for d in range(1, D + 1):
        points = enumerate_points(m.fiber_variety(), d)
        weighted = uncovered = 0
        for pt in points:
            target, values = resolve_point(m.field, pt)
            hits = [
                c.r for c in m.components if target.is_zero(c.g.evaluate_raw(target, values))
            ]
            weighted += sum(hits)
            uncovered += not hits
        component_sum = sum(
            c.r * len(enumerate_points(m.component_variety(i), d)) for i, c in enumerate(m.components)
        )
        rows.append(
            FiberCycleRow(d=d, weighted_points=weighted, component_sum=component_sum, uncovered=uncovered)
        )
    return rows
