"""
JSON descriptor documents and their translation into domain objects.

A document is a VarietyDescriptor when it has `ambient` or `ideal`, a
ModelDescriptor when it has `f`, and a LocalRingSpec (keyed by `generators`)
otherwise. Polynomial strings go through src.algebra.parser.
"""

from typing import Annotated, Any, Dict, List, Literal, Optional, Tuple, Union

from pydantic import (
    BaseModel,
    ConfigDict,
    Discriminator,
    Field,
    Tag,
    TypeAdapter,
    ValidationError,
)

from src.algebra.fields import FieldDescriptor, make_extension, make_prime_field
from src.algebra.parser import parse_poly
from src.census.points import VarietyDescriptor
from src.errors import IdxLabError, InvariantViolation, ParseError, SchemaError
from src.local.hilbert import LocalRingSpec
from src.models.dvr import ModelComponent, ModelDescriptor

SCHEMA = "idxlab/1"

Descriptor = Union[VarietyDescriptor, ModelDescriptor, LocalRingSpec]


class FieldDoc(BaseModel):
    model_config = ConfigDict(extra="forbid")

    p: int = Field(..., ge=2)
    k: int = Field(1, ge=1)

    def build(self) -> FieldDescriptor:
        base = make_prime_field(self.p)
        return base if self.k == 1 else make_extension(base, self.k)


class _Document(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    schema_: Optional[Literal["idxlab/1"]] = Field(None, alias="schema")
    field: FieldDoc


class VarietyDoc(_Document):
    ambient: Literal["affine", "projective"] = "affine"
    vars: List[str] = Field(..., min_length=1)
    ideal: List[str] = Field(default_factory=list)
    declared_codim: Optional[int] = None
    excluded: List[str] = Field(default_factory=list)


class ComponentDoc(BaseModel):
    model_config = ConfigDict(extra="forbid")

    g: str
    r: int


class ModelDoc(_Document):
    vars: Tuple[str, str] = ("x", "y")
    uniformizer: str = "t"
    f: str
    components: List[ComponentDoc] = Field(..., min_length=1)
    t_truncation: Optional[int] = None


class LocalDoc(_Document):
    vars: List[str] = Field(..., min_length=1)
    generators: List[str] = Field(default_factory=list)
    dimension: Optional[int] = None


def _document_kind(value: Any) -> Optional[str]:
    if not isinstance(value, dict):
        return None
    if "f" in value:
        return "model"
    if "ambient" in value or "ideal" in value:
        return "variety"
    return "local"


DocumentAdapter = TypeAdapter(
    Annotated[
        Union[
            Annotated[VarietyDoc, Tag("variety")],
            Annotated[ModelDoc, Tag("model")],
            Annotated[LocalDoc, Tag("local")],
        ],
        Discriminator(_document_kind),
    ]
)


def _build(doc: Union[VarietyDoc, ModelDoc, LocalDoc]) -> Descriptor:
    F = doc.field.build()
    if isinstance(doc, VarietyDoc):
        vars = tuple(doc.vars)
        return VarietyDescriptor(
            field=F,
            ambient=doc.ambient,
            vars=vars,
            ideal=[parse_poly(s, F, vars) for s in doc.ideal],
            declared_codim=doc.declared_codim,
            excluded=[parse_poly(s, F, vars) for s in doc.excluded],
        )
    if isinstance(doc, ModelDoc):
        ring = (doc.vars[0], doc.vars[1], doc.uniformizer)
        extra = {} if doc.t_truncation is None else {"t_truncation": doc.t_truncation}
        return ModelDescriptor(
            field=F,
            vars=doc.vars,
            uniformizer=doc.uniformizer,
            f=parse_poly(doc.f, F, ring),
            components=[ModelComponent(g=parse_poly(c.g, F, doc.vars), r=c.r) for c in doc.components],
            **extra,
        )
    vars = tuple(doc.vars)
    return LocalRingSpec(
        field=F,
        vars=vars,
        ideal_generators=[parse_poly(s, F, vars) for s in doc.generators],
        declared_dimension=doc.dimension,
    )


def parse_descriptor(text: Union[bytes, str]) -> Descriptor:
    """Validate a JSON descriptor document and build the domain object it names."""
    try:
        doc = DocumentAdapter.validate_json(text)
    except ValidationError as exc:
        raise SchemaError(f"descriptor does not match {SCHEMA}: {exc}") from exc
    return _finish(doc)


def descriptor_from_dict(data: Dict[str, Any]) -> Descriptor:
    try:
        doc = DocumentAdapter.validate_python(data)
    except ValidationError as exc:
        raise SchemaError(f"descriptor does not match {SCHEMA}: {exc}") from exc
    return _finish(doc)


def _finish(doc: Union[VarietyDoc, ModelDoc, LocalDoc]) -> Descriptor:
    try:
        descriptor = _build(doc)
        if isinstance(descriptor, ModelDescriptor):
            descriptor.verify()
        return descriptor
    except ParseError:
        raise
    except ValidationError as exc:
        raise InvariantViolation(str(exc)) from exc
    except IdxLabError as exc:
        raise InvariantViolation(f"{type(exc).__name__}: {exc}") from exc
