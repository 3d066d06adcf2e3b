"""
Closed points of affine and projective varieties over finite fields.

A closed point of degree d over F_q is a Frobenius orbit of length d among
the F_{q^d}-rational points, so one enumeration per degree is enough: count
points whose orbit under x -> x^q has exact length d and divide by d.
"""

import itertools
import logging
from typing import Callable, List, Literal, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.algebra.fields import (
    FieldDescriptor,
    FieldElement,
    extension_of,
    gcd_of_list,
)
from src.algebra.poly import MultiPoly, jacobian_rank_at
from src.config.settings import settings
from src.errors import CodimUnknown, EnumerationTooLarge, NotHomogeneous, SchemaError

logger = logging.getLogger(__name__)

Point = Tuple[FieldElement, ...]


class VarietyDescriptor(BaseModel):
    """A closed subscheme of A^n or P^(n-1) over F_q, minus an optional closed set."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    field: FieldDescriptor
    ambient: Literal["affine", "projective"] = "affine"
    vars: Tuple[str, ...]
    ideal: List[MultiPoly] = Field(default_factory=list, description="Empty list = zero ideal")
    declared_codim: Optional[int] = Field(None, ge=0)
    excluded: List[MultiPoly] = Field(
        default_factory=list,
        description="The open subset where not all of these vanish is described",
    )

    @model_validator(mode="after")
    def _check_ring(self) -> "VarietyDescriptor":
        if not self.vars:
            raise ValueError("a variety needs at least one coordinate")
        for g in list(self.ideal) + list(self.excluded):
            if g.field != self.field or g.vars != self.vars:
                raise ValueError(f"{g} does not live in {self.field!r}[{','.join(self.vars)}]")
        if self.ambient == "projective":
            for g in list(self.ideal) + list(self.excluded):
                if not g.is_homogeneous():
                    raise NotHomogeneous(f"{g} is not homogeneous")
        return self

    @property
    def generators(self) -> List[MultiPoly]:
        return [g for g in self.ideal if not g.is_zero]

    def codimension(self) -> int:
        if self.declared_codim is not None:
            return self.declared_codim
        if len(self.generators) == 1:
            return 1
        raise CodimUnknown("declare the codimension of a non-principal ideal")


class ClosedPointCensus(BaseModel):
    max_degree: int
    rational_counts: List[int] = Field(..., description="N_d for d = 1..D")
    closed_counts: List[int] = Field(..., description="a_d for d = 1..D")
    degree_set: List[int]
    gcd_estimate: int = Field(..., description="δ_{≤D}; a multiple of δ, 0 if no point")
    min_degree: Optional[int] = None
    regular_only: bool = False
    upper_estimate: bool = True

    def orbit_identity_holds(self) -> bool:
        """Σ_{e | d} e·a_e = N_d for every d ≤ D."""
        for d in range(1, self.max_degree + 1):
            total = sum(e * self.closed_counts[e - 1] for e in range(1, d + 1) if d % e == 0)
            if total != self.rational_counts[d - 1]:
                return False
        return True


# ── enumeration ─────────────────────────────────────────────────────────


def _compile(g: MultiPoly, target: FieldDescriptor) -> List[Tuple[int, Tuple[int, ...]]]:
    return [(c, e) for e, c in g.base_change(target).terms.items()]


def _value(target: FieldDescriptor, compiled, values: Sequence[int]) -> int:
    acc = 0
    for c, exps in compiled:
        term = c
        for v, x in zip(values, exps):
            if x:
                term = target.mul(term, target.pow(v, x))
                if term == 0:
                    break
        acc = target.add(acc, term)
    return acc


def _candidates(n: int, q: int, projective: bool):
    if not projective:
        yield from itertools.product(range(q), repeat=n)
        return
    for lead in range(n):
        for rest in itertools.product(range(q), repeat=n - lead - 1):
            yield (0,) * lead + (1,) + rest


def _raw_points(v: VarietyDescriptor, d: int, limit: Optional[int]) -> Tuple[FieldDescriptor, List[Tuple[int, ...]]]:
    limit = settings.enumeration_limit if limit is None else limit
    n = len(v.vars)
    size = v.field.order ** (d * n)
    if size > limit:
        raise EnumerationTooLarge(f"{size} candidates over F_{v.field.order}^{d} exceed {limit}")
    target = extension_of(v.field, d)
    gens = [_compile(g, target) for g in v.generators]
    excluded = [_compile(g, target) for g in v.excluded]
    points = []
    for values in _candidates(n, target.order, v.ambient == "projective"):
        if any(_value(target, g, values) for g in gens):
            continue
        if excluded and not any(_value(target, g, values) for g in excluded):
            continue
        points.append(values)
    return target, points


def enumerate_points(v: VarietyDescriptor, d: int, limit: Optional[int] = None) -> List[Point]:
    """All F_{q^d}-points; projective ones normalized to first nonzero coordinate 1."""
    target, points = _raw_points(v, d, limit)
    return [tuple(FieldElement(target, x) for x in pt) for pt in points]


def _orbit_length(target: FieldDescriptor, q: int, values: Sequence[int]) -> int:
    current = tuple(values)
    length = 1
    while True:
        current = tuple(target.pow(x, q) for x in current)
        if current == tuple(values):
            return length
        length += 1


def auto_degree(v: VarietyDescriptor) -> int:
    """Largest D with q^(D·n) within the automatic census budget (at least 1)."""
    n = len(v.vars)
    d = 1
    while v.field.order ** ((d + 1) * n) <= settings.census_auto_budget:
        d += 1
    return d


def _census(
    v: VarietyDescriptor,
    D: Optional[int],
    keep: Optional[Callable[[FieldDescriptor, Tuple[int, ...]], bool]] = None,
) -> ClosedPointCensus:
    D = D if D is not None else (settings.max_degree or auto_degree(v))
    q = v.field.order
    rational, closed = [], []
    for d in range(1, D + 1):
        target, points = _raw_points(v, d, None)
        if keep is not None:
            points = [pt for pt in points if keep(target, pt)]
        exact = sum(1 for pt in points if _orbit_length(target, q, pt) == d)
        rational.append(len(points))
        closed.append(exact // d)
        logger.debug("[Census] d=%d N_d=%d a_d=%d", d, len(points), exact // d)
    degrees = [d for d, a in enumerate(closed, start=1) if a > 0]
    return ClosedPointCensus(
        max_degree=D,
        rational_counts=rational,
        closed_counts=closed,
        degree_set=degrees,
        gcd_estimate=gcd_of_list(degrees),
        min_degree=min(degrees) if degrees else None,
        regular_only=keep is not None,
    )


def closed_point_census(v: VarietyDescriptor, D: Optional[int] = None) -> ClosedPointCensus:
    return _census(v, D)


def index_estimate(v: VarietyDescriptor, D: Optional[int] = None) -> int:
    return closed_point_census(v, D).gcd_estimate


def regular_filter(v: VarietyDescriptor, D: Optional[int] = None) -> ClosedPointCensus:
    """Census of the points where the Jacobian has full rank.

    Over the finite (hence perfect) fields used here, regular and smooth
    agree for reduced schemes, so the Jacobian criterion decides regularity.
    """
    codim = v.codimension()
    gens = v.generators

    def keep(target: FieldDescriptor, values: Tuple[int, ...]) -> bool:
        point = [FieldElement(target, x) for x in values]
        return jacobian_rank_at(gens, point) == codim

    return _census(v, D, keep)


def curve_index_bound(genus: int) -> int:
    """Beyond this D, δ_{≤D} of a smooth projective curve of genus g no longer moves."""
    if genus < 0:
        raise SchemaError("genus must be nonnegative")
    return max(1, 3 * genus - 2)
