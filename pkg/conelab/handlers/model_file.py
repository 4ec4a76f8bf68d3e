"""
Model file format: JSON documents describing a SurfaceModel.

{
  "name": "ruled",
  "basis_names": ["e", "f", "k"],
  "gram": [[-1, 0, -1], [0, 0, -2], [-1, -2, -1]],
  "classes": {"e2": ["-1", "1", "0"], ...},
  "roles": {
    "canonical": "k",
    "reference": "r",
    "exceptional": ["e1", "e2"],
    "curves": [{"class": "c", "genus": 1, "label": "c"}],
    "sphere_sublattice": ["e1", "e2"]
  },
  "tags": {"kodaira_dim": "-inf", "p_g": 0, "minimal": false, "full_b2": 3, "note": ""}
}

Coefficients are strings "p/q" or "n"; plain JSON integers are accepted on
input. Basis names are implicitly defined classes.
"""

import json
import logging
from typing import Dict, List, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, StrictInt, ValidationError

from conelab.cone_engine import CurveRecord
from conelab.exceptions import DimensionError, ModelFileSyntaxError, ModelInvalidError
from conelab.lattice import ClassVector, Lattice, format_class
from conelab.shared.rational import format_fraction, to_fraction
from conelab.surface_models import ModelTags, SurfaceModel, validate_model

logger = logging.getLogger(__name__)


class CurveDocument(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    class_name: str = Field(alias="class")
    genus: StrictInt
    label: Optional[str] = None


class RolesDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    canonical: str
    reference: str
    exceptional: List[str] = Field(default_factory=list)
    curves: Optional[List[CurveDocument]] = None
    sphere_sublattice: Optional[List[str]] = None


class TagsDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kodaira_dim: str = "unknown"
    p_g: StrictInt = 0
    minimal: bool = False
    full_b2: Optional[StrictInt] = None
    note: str = ""


class ModelDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: str
    basis_names: List[str]
    gram: List[List[StrictInt]]
    classes: Dict[str, List[Union[StrictInt, str]]] = Field(default_factory=dict)
    roles: RolesDocument
    tags: TagsDocument = Field(default_factory=TagsDocument)


def parse_model(text: str) -> SurfaceModel:
    """
    Parse and validate a model file.

    Args:
        text: JSON document

    Returns:
        Validated SurfaceModel

    Raises:
        ModelFileSyntaxError: malformed JSON, with line and column
        ModelInvalidError: schema or model invariant violation, with field path
    """
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise ModelFileSyntaxError(e.msg, line=e.lineno, column=e.colno)

    try:
        doc = ModelDocument.model_validate(raw)
    except ValidationError as e:
        first = e.errors()[0]
        path = ".".join(str(part) for part in first["loc"])
        raise ModelInvalidError(first["msg"], field_path=path)

    try:
        lattice = Lattice(doc.gram, doc.basis_names)
    except DimensionError as e:
        raise ModelInvalidError(str(e), field_path="gram")

    named: Dict[str, ClassVector] = {name: lattice.basis_vector(name) for name in lattice.basis_names}
    named_classes = []
    for name, coeffs in doc.classes.items():
        path = f"classes.{name}"
        try:
            vector = lattice.vector([to_fraction(c) for c in coeffs])
        except (DimensionError, ValueError, ZeroDivisionError) as e:
            raise ModelInvalidError(str(e), field_path=path)
        if name in named and named[name] != vector:
            raise ModelInvalidError("redefines a basis class", field_path=path)
        if name not in lattice.basis_names:
            named[name] = vector
            named_classes.append((name, vector))

    def lookup(name: str, path: str) -> ClassVector:
        if name not in named:
            raise ModelInvalidError(f"named class {name!r} is missing", field_path=path)
        return named[name]

    roles = doc.roles
    curves = None
    if roles.curves is not None:
        curves = tuple(
            CurveRecord(
                cls=lookup(entry.class_name, f"roles.curves[{i}].class"),
                genus=entry.genus,
                label=entry.label or entry.class_name,
            )
            for i, entry in enumerate(roles.curves)
        )
    sphere = None
    if roles.sphere_sublattice is not None:
        sphere = tuple(
            lookup(name, f"roles.sphere_sublattice[{i}]")
            for i, name in enumerate(roles.sphere_sublattice)
        )

    model = SurfaceModel(
        lattice=lattice,
        K=lookup(roles.canonical, "roles.canonical"),
        reference=lookup(roles.reference, "roles.reference"),
        exceptional_set=tuple(
            lookup(name, f"roles.exceptional[{i}]") for i, name in enumerate(roles.exceptional)
        ),
        curves=curves,
        sphere_sublattice=sphere,
        tags=ModelTags(
            name=doc.name,
            kodaira_dim=doc.tags.kodaira_dim,
            p_g=doc.tags.p_g,
            minimal=doc.tags.minimal,
            full_b2=doc.tags.full_b2,
            note=doc.tags.note,
        ),
        named_classes=tuple(named_classes),
    )
    validate_model(model)
    logger.info(f"Parsed model {doc.name!r}: rank {lattice.rank}, {len(model.exceptional_set)} exceptional classes")
    return model


def serialize_model(model: SurfaceModel) -> str:
    """
    Write a model as a JSON document; parse_model inverts it exactly.
    """
    lattice = model.lattice
    classes: Dict[str, List[str]] = {
        name: [format_fraction(c) for c in x.coeffs] for name, x in model.named_classes
    }

    def name_for(x: ClassVector) -> str:
        name = model.name_of(x)
        if name is None:
            name = format_class(x)
            classes.setdefault(name, [format_fraction(c) for c in x.coeffs])
        return name

    roles: Dict[str, object] = {
        "canonical": name_for(model.K),
        "reference": name_for(model.reference),
        "exceptional": [name_for(E) for E in model.exceptional_set],
    }
    if model.curves is not None:
        roles["curves"] = [
            {"class": name_for(c.cls), "genus": c.genus, "label": c.label} for c in model.curves
        ]
    if model.sphere_sublattice is not None:
        roles["sphere_sublattice"] = [name_for(s) for s in model.sphere_sublattice]

    doc = {
        "name": model.tags.name,
        "basis_names": list(lattice.basis_names),
        "gram": [list(row) for row in lattice.gram],
        "classes": classes,
        "roles": roles,
        "tags": {
            "kodaira_dim": model.tags.kodaira_dim,
            "p_g": model.tags.p_g,
            "minimal": model.tags.minimal,
            "full_b2": model.tags.full_b2,
            "note": model.tags.note,
        },
    }
    return json.dumps(doc, indent=2) + "\n"
