"""
Lengths and Hilbert–Samuel multiplicities of A = (k[x_1..x_r]/I) localized at the origin.

Everything reduces to one linear-algebra primitive: the dimension of
k[x]/(I + J + m^M) for a cutoff M. Adding m^M is the unit ideal at every
point other than the origin, so for M large the truncated dimension equals
the local length ℓ(A/J) whenever J is m-primary in A.

Columns are the monomials of degree < M ordered by degree, and echelon
pivots sit at the lowest column, so a single elimination at cutoff M also
gives the truncated dimension for every smaller cutoff.
"""

import functools
import logging
from typing import Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.algebra.fields import Domain, FieldDescriptor
from src.algebra.linalg import EchelonReducer
from src.algebra.poly import MultiPoly, resolve_point, variable_monomials
from src.census.points import VarietyDescriptor
from src.config.settings import settings
from src.errors import (
    DimensionMismatch,
    GeneratorBlowup,
    MultiplicityMismatch,
    NoConvergence,
    NotFinite,
    NotPrimary,
    PointNotOnVariety,
    SchemaError,
)

logger = logging.getLogger(__name__)


class LocalRingSpec(BaseModel):
    """The local ring at the origin of V(ideal_generators) ⊂ A^r."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    field: FieldDescriptor
    vars: Tuple[str, ...]
    ideal_generators: List[MultiPoly] = Field(default_factory=list)
    declared_dimension: Optional[int] = Field(None, ge=0)

    @model_validator(mode="after")
    def _vanish_at_origin(self) -> "LocalRingSpec":
        if not self.vars:
            raise ValueError("a local ring needs at least one variable")
        for g in self.ideal_generators:
            if g.field != self.field or g.vars != self.vars:
                raise ValueError(f"{g} does not live in {self.field!r}[{','.join(self.vars)}]")
            if not self.field.is_zero(g.constant_term()):
                raise ValueError(f"{g} does not vanish at the origin")
        return self

    @property
    def generators(self) -> List[MultiPoly]:
        return [g for g in self.ideal_generators if not g.is_zero]

    @property
    def is_hypersurface(self) -> bool:
        return len(self.generators) == 1

    def variable(self, name: str) -> MultiPoly:
        return MultiPoly.var(self.field, self.vars, name)

    def maximal_ideal(self) -> "PrimaryIdealSpec":
        return PrimaryIdealSpec(generators=[self.variable(v) for v in self.vars], certified=True)

    def quotient(self, extra: Sequence[MultiPoly]) -> "LocalRingSpec":
        """A/(extra), as a local ring in the same variables."""
        return LocalRingSpec(
            field=self.field,
            vars=self.vars,
            ideal_generators=list(self.ideal_generators) + list(extra),
        )


class PrimaryIdealSpec(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    generators: List[MultiPoly]
    certified: bool = Field(False, description="m-primariness confirmed by a stable HS table")
    multiplicity: Optional[int] = None

    @model_validator(mode="after")
    def _no_constants(self) -> "PrimaryIdealSpec":
        if not self.generators:
            raise ValueError("an m-primary ideal needs generators")
        for g in self.generators:
            if not g.is_zero and not g.field.is_zero(g.constant_term()):
                raise ValueError(f"{g} is a unit at the origin")
        return self

    def describe(self) -> List[str]:
        return [str(g) for g in self.generators]


class HSTable(BaseModel):
    rows: List[Tuple[int, int]]
    dimension: int
    multiplicity: int
    truncation_used: int
    stabilized: bool


# ── truncated linear algebra ────────────────────────────────────────────


@functools.lru_cache(maxsize=64)
def _column_index(r: int, cutoff: int) -> Tuple[Dict[Tuple[int, ...], int], Tuple[int, ...]]:
    """Monomials of degree < cutoff, by degree; and the column count below each degree."""
    monomials = variable_monomials(r, 0, cutoff - 1)
    index = {m: i for i, m in enumerate(monomials)}
    below = tuple(sum(1 for m in monomials if sum(m) < n) for n in range(cutoff + 1))
    return index, below


def _reduce_at(field: Domain, r: int, generators: Sequence[MultiPoly], cutoff: int) -> EchelonReducer:
    index, _ = _column_index(r, cutoff)
    reducer = EchelonReducer(field)
    shifts = list(index)
    for g in generators:
        if g.is_zero:
            continue
        o = g.order
        terms = [(e, sum(e), c) for e, c in g.terms.items()]
        for m in shifts:
            dm = sum(m)
            if dm + o >= cutoff:
                break
            row = {}
            for e, de, c in terms:
                if de + dm < cutoff:
                    row[index[tuple(a + b for a, b in zip(e, m))]] = c
            reducer.add(row)
    return reducer


def _dimensions_up_to(spec: LocalRingSpec, extra: Sequence[MultiPoly], cutoff: int) -> List[int]:
    """[dim k[x]/(I + extra + m^n) for n = 0..cutoff]."""
    r = len(spec.vars)
    reducer = _reduce_at(spec.field, r, list(spec.ideal_generators) + list(extra), cutoff)
    _, below = _column_index(r, cutoff)
    pivots = reducer.pivots()
    out = []
    j = 0
    for n in range(cutoff + 1):
        while j < len(pivots) and pivots[j] < below[n]:
            j += 1
        out.append(below[n] - j)
    return out


def truncated_quotient_dim(spec: LocalRingSpec, extra: Sequence[MultiPoly], n: int) -> int:
    if n < 1:
        raise SchemaError("the cutoff must be at least 1")
    return _dimensions_up_to(spec, extra, n)[n]


def _cutoffs(generators: Sequence[MultiPoly], m_max: int) -> List[int]:
    orders = [g.order for g in generators if not g.is_zero]
    first = min(m_max, max(8, max(orders, default=0) + 6))
    return sorted({first, (first + m_max) // 2, m_max})


def _stable_length(
    spec: LocalRingSpec, extra: Sequence[MultiPoly], m_max: int
) -> Tuple[int, int]:
    """(length, first cutoff M at which it is reached, so that m^M ⊂ I + extra locally)."""
    for cutoff in _cutoffs(list(spec.ideal_generators) + list(extra), m_max):
        dims = _dimensions_up_to(spec, extra, cutoff)
        for m in range(1, cutoff - 3):
            if dims[m] == dims[m + 2] == dims[m + 4]:
                return dims[m], dims.index(dims[m])
        logger.debug("[Length] no plateau below cutoff %d, escalating", cutoff)
    raise NotFinite(
        f"length of A/({', '.join(str(g) for g in extra)}) did not stabilize below {m_max}"
    )


def local_length(
    spec: LocalRingSpec,
    extra: Sequence[MultiPoly],
    m_max: Optional[int] = None,
) -> int:
    """ℓ(A/(extra)) once the truncated dimension stops moving for two +2 steps."""
    return _stable_length(spec, extra, m_max or settings.truncation)[0]


# ── Hilbert–Samuel ──────────────────────────────────────────────────────


def _differences(values: Sequence[int], d: int) -> List[int]:
    seq = list(values)
    for _ in range(d):
        seq = [b - a for a, b in zip(seq, seq[1:])]
    return seq


def _constant_difference(lengths: Sequence[int], settle: int = 1) -> Optional[Tuple[int, int]]:
    """Smallest d whose d-th finite difference is constant over the last 3 values.

    lengths[i] is the row n = i + 1. A window counts only when every row it
    reads has n >= settle; below that the lengths can still agree with those
    of the ambient polynomial ring.
    """
    d = 0
    while len(lengths) - d - 2 >= max(settle, 1):
        seq = _differences(lengths, d)
        if seq[-1] == seq[-2] == seq[-3]:
            return d, seq[-1]
        d += 1
    return None


def _power_generators(previous: Sequence[MultiPoly], base: Sequence[MultiPoly]) -> List[MultiPoly]:
    seen = {}
    for g in previous:
        for h in base:
            prod = g * h
            if not prod.is_zero:
                seen.setdefault(prod, None)
    return list(seen)


def _power_length(
    spec: LocalRingSpec, generators: Sequence[MultiPoly], bound: int, m_max: int
) -> int:
    """ℓ(A/Q^n) given m^bound ⊂ Q^n locally; falls back to escalation past m_max."""
    if bound + 2 <= m_max:
        dims = _dimensions_up_to(spec, generators, bound + 2)
        if dims[bound] == dims[bound + 1] == dims[bound + 2]:
            return dims[bound]
        logger.debug("[HS] no plateau at the predicted cutoff %d", bound)
    return local_length(spec, generators, m_max)


def hs_table(
    spec: LocalRingSpec,
    Q: Optional[PrimaryIdealSpec] = None,
    n_max: Optional[int] = None,
    extend: int = 0,
    m_max: Optional[int] = None,
) -> HSTable:
    """Rows (n, ℓ(A/Q^n)) from n = 1 until a finite difference settles.

    If m^M ⊂ Q then m^(nM) ⊂ Q^n, so the cutoff found for Q bounds the
    one needed for every power.
    """
    Q = Q or spec.maximal_ideal()
    m_max = m_max or settings.truncation
    base = tuple(dict.fromkeys(g for g in Q.generators if not g.is_zero))
    rows, (d, e, found_at) = _table_rows(
        spec.field,
        spec.vars,
        tuple(spec.ideal_generators),
        base,
        n_max or settings.hs_max,
        extend,
        m_max,
    )
    if spec.declared_dimension is not None and spec.declared_dimension != d:
        raise DimensionMismatch(f"declared dimension {spec.declared_dimension}, detected {d}")
    lengths = [l for _, l in rows]
    tail = _differences(lengths, d)[-(3 + rows[-1][0] - found_at):]
    return HSTable(
        rows=list(rows),
        dimension=d,
        multiplicity=e,
        truncation_used=m_max,
        stabilized=set(tail) == {e},
    )


@functools.lru_cache(maxsize=256)
def _table_rows(
    field: FieldDescriptor,
    vars: Tuple[str, ...],
    ideal: Tuple[MultiPoly, ...],
    base: Tuple[MultiPoly, ...],
    n_max: int,
    extend: int,
    m_max: int,
) -> Tuple[Tuple[Tuple[int, int], ...], Tuple[int, int, int]]:
    spec = LocalRingSpec(field=field, vars=vars, ideal_generators=list(ideal))
    # a plane germ of order k has l(A/m^n) = C(n+1, 2) for n <= k, linear from n = k - 1 on
    settle = max((g.order for g in ideal if not g.is_zero), default=0) - 1
    rows: List[Tuple[int, int]] = []
    detected: Optional[Tuple[int, int, int]] = None
    power: List[MultiPoly] = []
    reach = 0
    for n in range(1, n_max + 1):
        power = list(base) if n == 1 else _power_generators(power, base)
        if len(power) > settings.generator_cap:
            raise GeneratorBlowup(f"Q^{n} needs {len(power)} generators")
        try:
            if n == 1:
                length, reach = _stable_length(spec, power, m_max)
            else:
                length = _power_length(spec, power, n * reach, m_max)
        except NotFinite as exc:
            raise NotPrimary(f"({', '.join(str(g) for g in base)}) is not m-primary") from exc
        rows.append((n, length))
        if detected is None:
            found = _constant_difference([l for _, l in rows], settle)
            if found is not None:
                detected = (found[0], found[1], n)
                logger.debug("[HS] d=%d e=%d after %d rows", found[0], found[1], n)
                if extend == 0:
                    break
        elif n >= detected[2] + extend:
            break
    if detected is None:
        raise NoConvergence(f"no constant finite difference within {n_max} rows")
    return tuple(rows), detected


def hs_multiplicity(
    spec: LocalRingSpec,
    Q: Optional[PrimaryIdealSpec] = None,
    n_max: Optional[int] = None,
    m_max: Optional[int] = None,
) -> Tuple[int, int]:
    table = hs_table(spec, Q, n_max, m_max=m_max)
    return table.dimension, table.multiplicity


# ── points of varieties ─────────────────────────────────────────────────


def local_ring_at(variety: VarietyDescriptor, point: Sequence) -> LocalRingSpec:
    """The local ring of the variety at a point, moved to the origin.

    Projective points are read in the affine chart of their first nonzero
    coordinate. The ring lives over the field of the point's coordinates.
    """
    if len(point) != len(variety.vars):
        raise SchemaError(f"point has {len(point)} coordinates, variety has {len(variety.vars)}")
    target, values = resolve_point(variety.field, point)
    gens = [g.base_change(target) for g in variety.generators]
    for g in gens:
        if not target.is_zero(g.evaluate_raw(target, values)):
            raise PointNotOnVariety(f"{g} does not vanish at the point")
    vars = variety.vars
    if variety.ambient == "projective":
        chart = next((i for i, v in enumerate(values) if not target.is_zero(v)), None)
        if chart is None:
            raise PointNotOnVariety("(0, ..., 0) is not a projective point")
        scale = target.inv(values[chart])
        values = [target.mul(v, scale) for v in values]
        gens = [g.set_var(vars[chart], target.one) for g in gens]
        vars = vars[:chart] + vars[chart + 1 :]
        values = values[:chart] + values[chart + 1 :]
    translated = [g.shift(values) for g in gens]
    return LocalRingSpec(field=target, vars=vars, ideal_generators=[g for g in translated if not g.is_zero])


def multiplicity_at_point(
    variety: VarietyDescriptor,
    point: Sequence,
    n_max: Optional[int] = None,
    m_max: Optional[int] = None,
) -> int:
    spec = local_ring_at(variety, point)
    _, e = hs_multiplicity(spec, n_max=n_max, m_max=m_max)
    if spec.is_hypersurface:
        order = spec.generators[0].order
        if order != e:
            raise MultiplicityMismatch(f"HS multiplicity {e} but lowest form has order {order}")
    return e
