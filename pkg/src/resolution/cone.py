"""Affine cones over projective varieties, and δ(V) against γ at the vertex."""

import logging
from typing import Literal, Optional, Sequence

from pydantic import BaseModel

from src.census.points import (
    ClosedPointCensus,
    VarietyDescriptor,
    closed_point_census,
    regular_filter,
)
from src.errors import NotHomogeneous, VarietyNotRegular
from src.invariants.gamma import GammaReport, gamma_estimate
from src.local.hilbert import LocalRingSpec, PrimaryIdealSpec

logger = logging.getLogger(__name__)


class ConeReport(BaseModel):
    delta: int
    census: ClosedPointCensus
    e_vertex: int
    degree: Optional[int] = None
    degree_matches: Optional[bool] = None
    gamma: GammaReport
    divides_all: bool
    status: Literal["EQUALITY_WITNESSED", "DIVISIBILITY_ONLY"]


def build_affine_cone(v: VarietyDescriptor) -> LocalRingSpec:
    if v.ambient != "projective":
        raise NotHomogeneous("the affine cone is taken over a projective variety")
    for g in v.generators:
        if not g.is_homogeneous() or g.is_constant:
            raise NotHomogeneous(f"{g} is not a homogeneous form of positive degree")
    return LocalRingSpec(field=v.field, vars=v.vars, ideal_generators=v.generators)


def cone_theorem_check(
    v: VarietyDescriptor,
    D: Optional[int] = None,
    trials: Optional[int] = None,
    curated: Optional[Sequence[PrimaryIdealSpec]] = None,
    seed: Optional[int] = None,
    degree: Optional[int] = None,
    m_max: Optional[int] = None,
    n_max: Optional[int] = None,
) -> ConeReport:
    """δ_{≤D}(V) next to e(m) and the sampled gcd at the vertex of its cone."""
    spec = build_affine_cone(v)
    census = closed_point_census(v, D)
    regular = regular_filter(v, census.max_degree)
    if regular.rational_counts != census.rational_counts:
        raise VarietyNotRegular("V has singular points of degree <= D")
    gamma = gamma_estimate(spec, trials=trials, seed=seed, curated=curated, m_max=m_max, n_max=n_max)
    delta = census.gcd_estimate
    values = [gamma.e_of_m] + [s.e for s in gamma.samples]
    divides_all = delta > 0 and all(e % delta == 0 for e in values)
    status = "EQUALITY_WITNESSED" if gamma.running_gcd == delta else "DIVISIBILITY_ONLY"
    logger.info("[Cone] δ=%d e(m)=%d gcd=%d -> %s", delta, gamma.e_of_m, gamma.running_gcd, status)
    return ConeReport(
        delta=delta,
        census=census,
        e_vertex=gamma.e_of_m,
        degree=degree,
        degree_matches=None if degree is None else gamma.e_of_m == degree,
        gamma=gamma,
        divides_all=divides_all,
        status=status,
    )
