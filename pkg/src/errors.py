"""
Exception hierarchy for idxlab.

Every failure a caller can act on is a subclass of IdxLabError, which is a
ValueError so that callers catching bad input the usual way keep working.
The CLI maps any IdxLabError to exit status 2.
"""

from typing import Optional


class IdxLabError(ValueError):
    """Base class for all domain errors."""


# ── algebra-core ────────────────────────────────────────────────────────


class NotPrime(IdxLabError):
    pass


class DegreeTooLarge(IdxLabError):
    pass


class NoEmbedding(IdxLabError):
    pass


class FieldMismatch(IdxLabError):
    pass


class ZeroPolynomial(IdxLabError):
    pass


class NotDivisible(IdxLabError):
    pass


class BadPrime(IdxLabError):
    pass


class PointNotOnVariety(IdxLabError):
    pass


# ── local-multiplicity ──────────────────────────────────────────────────


class NotFinite(IdxLabError):
    """Local length did not stabilize below the truncation cap."""


class NotPrimary(IdxLabError):
    pass


class NoConvergence(IdxLabError):
    pass


class GeneratorBlowup(IdxLabError):
    pass


class DimensionMismatch(IdxLabError):
    pass


class MultiplicityMismatch(IdxLabError):
    pass


# ── invariant-engine ────────────────────────────────────────────────────


class SamplingExhausted(IdxLabError):
    pass


class ScanTooLarge(IdxLabError):
    pass


class ComponentMismatch(IdxLabError):
    pass


class DecompositionInconsistent(IdxLabError):
    pass


# ── point-census ────────────────────────────────────────────────────────


class EnumerationTooLarge(IdxLabError):
    pass


class CodimUnknown(IdxLabError):
    pass


# ── cone-and-resolution ─────────────────────────────────────────────────


class NotHomogeneous(IdxLabError):
    pass


class VarietyNotRegular(IdxLabError):
    pass


class ZeroGerm(IdxLabError):
    pass


class BlowupBudgetExceeded(IdxLabError):
    pass


# ── dvr-models ──────────────────────────────────────────────────────────


class ComponentProductMismatch(IdxLabError):
    pass


class ComponentsNotCoprime(IdxLabError):
    pass


class ComponentReducible(IdxLabError):
    pass


class NotFlat(IdxLabError):
    pass


class PointNotOnFiber(IdxLabError):
    pass


class NotRegularPoint(IdxLabError):
    pass


class NotTransversal(IdxLabError):
    pass


# ── idx-cli ─────────────────────────────────────────────────────────────


class ParseError(IdxLabError):
    """Polynomial string rejected by the grammar; `offset` points at the culprit."""

    def __init__(self, message: str, offset: int, text: Optional[str] = None):
        self.offset = offset
        self.text = text
        super().__init__(f"{message} (at offset {offset})")


class SchemaError(IdxLabError):
    pass


class InvariantViolation(IdxLabError):
    pass
