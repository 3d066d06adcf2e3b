"""
γ(A): the gcd of e(Q, A) over m-primary ideals Q, estimated from witnesses.

A gcd over a finite family of multiplicities is always a multiple of γ(A),
so every report here is an upper estimate in the divisibility order. The
sampler, the exhaustive principal scan and the two multiplicity laws
(additivity over minimal primes, associativity along a prefix) all reduce to
the length engine in src.local.hilbert.
"""

import itertools
import logging
import math
import random
from typing import Dict, List, Literal, Optional, Sequence, Tuple, Union

from pydantic import BaseModel, Field

from src.algebra.poly import MultiPoly, variable_monomials
from src.config.settings import settings
from src.errors import (
    ComponentMismatch,
    DecompositionInconsistent,
    DimensionMismatch,
    GeneratorBlowup,
    NoConvergence,
    NotDivisible,
    NotFinite,
    NotPrimary,
    SamplingExhausted,
    ScanTooLarge,
)
from src.local.hilbert import (
    LocalRingSpec,
    PrimaryIdealSpec,
    hs_multiplicity,
    local_length,
)

logger = logging.getLogger(__name__)

_SEED_STRIDE = 0x9E3779B97F4A7C15


def derive_seed(seed: int, index: int) -> int:
    """Independent sub-seed for trial `index`, stable across runs."""
    return (seed + (index + 1) * _SEED_STRIDE) % 2**64


class GammaSample(BaseModel):
    index: int
    source: Literal["curated", "sampled"]
    generators: List[str]
    e: int
    seed: Optional[int] = None


class GammaReport(BaseModel):
    samples: List[GammaSample]
    running_gcd: int
    e_of_m: int
    dimension: int
    seed: int
    gcd_history: List[int] = Field(
        default_factory=list, description="running gcd after e(m) and after each sample"
    )


class ScanReport(BaseModel):
    attained: List[int]
    witnesses: Dict[int, str] = Field(..., description="first scanned f reaching each length")
    scanned: int
    skipped: int = Field(..., description="zero divisors (length not finite)")


class AdditivityTerm(BaseModel):
    component: str
    weight: int
    e: int


class AdditivityReport(BaseModel):
    lhs: int
    rhs: int
    holds: bool
    terms: List[AdditivityTerm]


class AssociativityTerm(BaseModel):
    component: List[str]
    local_multiplicity: int
    suffix_order: int


class AssociativityReport(BaseModel):
    lhs: int
    rhs: int
    holds: bool
    terms: List[AssociativityTerm]


# ── sampling ────────────────────────────────────────────────────────────


def _parameter_multiplicity(
    spec: LocalRingSpec,
    Q: PrimaryIdealSpec,
    dimension: int,
    m_max: Optional[int] = None,
    n_max: Optional[int] = None,
) -> int:
    """e(Q) for a sampled ideal; e = ℓ(A/Q) for parameter ideals of a hypersurface germ."""
    m_max = m_max or settings.sampling_truncation
    if (
        settings.cohen_macaulay_shortcut
        and len(spec.generators) <= 1
        and len(Q.generators) == dimension
    ):
        try:
            return local_length(spec, Q.generators, m_max)
        except NotFinite as exc:
            raise NotPrimary(f"({', '.join(Q.describe())}) is not m-primary") from exc
    return hs_multiplicity(spec, Q, n_max=n_max, m_max=m_max)[1]


def sample_parameter_ideal(
    spec: LocalRingSpec,
    degree_bound: Optional[int] = None,
    seed: Optional[int] = None,
    dimension: Optional[int] = None,
    m_max: Optional[int] = None,
    n_max: Optional[int] = None,
) -> PrimaryIdealSpec:
    """d random polynomials without constant term, redrawn until m-primary."""
    degree_bound = degree_bound or settings.degree_bound
    seed = settings.seed if seed is None else seed
    d = hs_multiplicity(spec, n_max=n_max, m_max=m_max)[0] if dimension is None else dimension
    if d < 1:
        raise DimensionMismatch("sampling parameter ideals needs dim A >= 1")
    rng = random.Random(seed)
    monomials = variable_monomials(len(spec.vars), 1, degree_bound)
    q = spec.field.order
    for attempt in range(settings.sampling_retries):
        gens = [
            MultiPoly(spec.field, spec.vars, {m: rng.randrange(q) for m in monomials})
            for _ in range(d)
        ]
        if any(g.is_zero for g in gens):
            continue
        Q = PrimaryIdealSpec(generators=gens)
        try:
            e = _parameter_multiplicity(spec, Q, d, m_max, n_max)
        except (NotPrimary, NoConvergence, GeneratorBlowup) as exc:
            logger.debug("[Gamma] attempt %d rejected: %s", attempt, exc)
            continue
        return Q.model_copy(update={"certified": True, "multiplicity": e})
    raise SamplingExhausted(f"no m-primary sample in {settings.sampling_retries} attempts")


def gamma_estimate(
    spec: LocalRingSpec,
    trials: Optional[int] = None,
    degree_bound: Optional[int] = None,
    seed: Optional[int] = None,
    curated: Optional[Sequence[PrimaryIdealSpec]] = None,
    m_max: Optional[int] = None,
    n_max: Optional[int] = None,
) -> GammaReport:
    trials = settings.trials if trials is None else trials
    seed = settings.seed if seed is None else seed
    d, e_m = hs_multiplicity(spec, n_max=n_max, m_max=m_max)
    if d == 0 and trials:
        # dim 0: e(Q, A) = l(A) for every Q
        logger.info("[Gamma] dim A = 0, no sampling needed")
        trials = 0
    samples: List[GammaSample] = []
    for Q in curated or []:
        _, e = hs_multiplicity(spec, Q, n_max=n_max, m_max=m_max)
        samples.append(GammaSample(index=len(samples), source="curated", generators=Q.describe(), e=e))
    for i in range(trials):
        sub = derive_seed(seed, i)
        Q = sample_parameter_ideal(spec, degree_bound, sub, dimension=d, m_max=m_max, n_max=n_max)
        samples.append(
            GammaSample(index=len(samples), source="sampled", generators=Q.describe(), e=Q.multiplicity, seed=sub)
        )
    history = [e_m]
    for s in samples:
        history.append(math.gcd(history[-1], s.e))
    logger.info("[Gamma] e(m)=%d, gcd over %d samples = %d", e_m, len(samples), history[-1])
    return GammaReport(
        samples=samples,
        running_gcd=history[-1],
        e_of_m=e_m,
        dimension=d,
        seed=seed,
        gcd_history=history,
    )


# ── exhaustive principal scan ───────────────────────────────────────────


def principal_multiplicity_scan(
    spec: LocalRingSpec,
    degree_bound: int,
    limit: Optional[int] = None,
    m_max: Optional[int] = None,
) -> ScanReport:
    """Every length ℓ(A/(f)) for f of degree <= bound, up to scaling."""
    limit = settings.scan_limit if limit is None else limit
    q = spec.field.order
    r = len(spec.vars)
    if q > 4:
        raise ScanTooLarge(f"exhaustive scans need q <= 4, got {q}")
    if math.comb(degree_bound + r, r) > 20:
        raise ScanTooLarge(f"{math.comb(degree_bound + r, r)} monomials of degree <= {degree_bound}")
    monomials = variable_monomials(r, 1, degree_bound)
    count = (q ** len(monomials) - 1) // (q - 1)
    if count > limit:
        raise ScanTooLarge(f"{count} candidates exceed the scan limit {limit}")
    witnesses: Dict[int, str] = {}
    scanned = skipped = 0
    for coeffs in itertools.product(range(q), repeat=len(monomials)):
        lead = next((c for c in coeffs if c), None)
        if lead != 1:
            continue
        f = MultiPoly(spec.field, spec.vars, dict(zip(monomials, coeffs)))
        scanned += 1
        try:
            length = local_length(spec, [f], m_max)
        except NotFinite:
            skipped += 1
            continue
        witnesses.setdefault(length, str(f))
    logger.info("[Scan] %d candidates, %d zero divisors", scanned, skipped)
    return ScanReport(
        attained=sorted(witnesses),
        witnesses=witnesses,
        scanned=scanned,
        skipped=skipped,
    )


# ── multiplicity laws ───────────────────────────────────────────────────


def check_additivity(
    spec: LocalRingSpec,
    components: Sequence[Tuple[MultiPoly, int]],
    m_max: Optional[int] = None,
    n_max: Optional[int] = None,
) -> AdditivityReport:
    """e(m, A) = Σ a_i e(m, A/(g_i)) for A = k[x]/(∏ g_i^a_i) localized."""
    if not spec.is_hypersurface:
        raise ComponentMismatch("additivity needs a principal ideal")
    f = spec.generators[0]
    product = MultiPoly.constant(spec.field, spec.vars, spec.field.one)
    for g, a in components:
        if not spec.field.is_zero(g.constant_term()):
            raise ComponentMismatch(f"{g} does not pass through the origin")
        product = product * g**a
    try:
        unit = f.exact_div(product)
    except NotDivisible as exc:
        raise ComponentMismatch(f"{f} is not a unit times the component product") from exc
    if not unit.is_constant:
        raise ComponentMismatch(f"{f} = ({unit}) * product, not a unit multiple")
    _, lhs = hs_multiplicity(spec, n_max=n_max, m_max=m_max)
    terms = []
    for g, a in components:
        component = LocalRingSpec(field=spec.field, vars=spec.vars, ideal_generators=[g])
        _, e = hs_multiplicity(component, n_max=n_max, m_max=m_max)
        terms.append(AdditivityTerm(component=str(g), weight=a, e=e))
    rhs = sum(t.weight * t.e for t in terms)
    return AdditivityReport(lhs=lhs, rhs=rhs, holds=lhs == rhs, terms=terms)


Component = Union[MultiPoly, Sequence[MultiPoly]]


def check_associativity(
    spec: LocalRingSpec,
    prefix: Sequence[MultiPoly],
    suffix: Sequence[MultiPoly],
    decomposition: Sequence[Tuple[Component, int, int]],
    m_max: Optional[int] = None,
    n_max: Optional[int] = None,
) -> AssociativityReport:
    """e((prefix, suffix), A) = Σ ℓ(A_p)·e(suffix, A/p) over minimal primes p of (prefix).

    Each decomposition entry is (component generators, local multiplicity of
    (prefix) along it, claimed suffix order). Suffix orders are recomputed;
    local multiplicities are caller data, cross-checked when there is only
    one component.
    """
    Q = PrimaryIdealSpec(generators=list(prefix) + list(suffix))
    _, lhs = hs_multiplicity(spec, Q, n_max=n_max, m_max=m_max)
    suffix_ideal = PrimaryIdealSpec(generators=list(suffix))
    terms = []
    for component, multiplicity, order in decomposition:
        gens = [component] if isinstance(component, MultiPoly) else list(component)
        _, recomputed = hs_multiplicity(spec.quotient(gens), suffix_ideal, n_max=n_max, m_max=m_max)
        if recomputed != order:
            raise DecompositionInconsistent(
                f"suffix order on ({', '.join(map(str, gens))}) is {recomputed}, not {order}"
            )
        terms.append(
            AssociativityTerm(
                component=[str(g) for g in gens],
                local_multiplicity=multiplicity,
                suffix_order=order,
            )
        )
    if len(terms) == 1:
        only = terms[0]
        quotient, remainder = divmod(lhs, only.suffix_order)
        if remainder or quotient != only.local_multiplicity:
            raise DecompositionInconsistent(
                f"single component needs local multiplicity {lhs}/{only.suffix_order}"
            )
    rhs = sum(t.local_multiplicity * t.suffix_order for t in terms)
    return AssociativityReport(lhs=lhs, rhs=rhs, holds=lhs == rhs, terms=terms)
