"""
Command handlers

Each handler takes the parsed command arguments as a plain dict and returns
a response {"exitCode": ..., "body": ..., "error": ...}; app.py prints the
body to stdout and the error to stderr.

Exit codes:
- 0: success
- 1: verification failure (certificate could not be built, report item failed)
- 2: usage or parse error
"""

import io
import logging
import os
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from config.constants import EXIT_SUCCESS, EXIT_USAGE_ERROR, EXIT_VERIFICATION_FAILED
from conelab.cone_engine import (
    CurveRecord,
    ExceptionalQuery,
    certify_non_generic,
    enumerate_exceptional,
    in_full_symplectic_cone,
    in_kahler_cone,
    in_symplectic_cone,
    kahler_witness,
    negative_curves,
)
from conelab.exceptions import (
    CapabilityError,
    ConeLabError,
    DimensionError,
    ModelFileSyntaxError,
    ModelInvalidError,
    OutOfScopeError,
    UsageError,
)
from conelab.handlers.model_file import parse_model, serialize_model
from conelab.handlers.paper_report import run_paper_report
from conelab.handlers.slice_grid import classify_class, rows_to_csv, slice_grid
from conelab.lattice import ClassVector, format_class, pair, parse_class, self_int
from conelab.settings import load_config
from conelab.shared.rational import format_fraction, to_fraction
from conelab.surface_models import SurfaceModel, build_model

logger = logging.getLogger(__name__)

USAGE_ERRORS = (
    UsageError,
    ModelFileSyntaxError,
    ModelInvalidError,
    DimensionError,
    OutOfScopeError,
    CapabilityError,
)


def create_response(exit_code: int, body: str = "", error: Optional[str] = None) -> Dict[str, Any]:
    """
    Create a command response
    """
    return {
        "exitCode": exit_code,
        "body": body,
        "error": error,
    }


def error_response(e: ConeLabError) -> Dict[str, Any]:
    exit_code = EXIT_USAGE_ERROR if isinstance(e, USAGE_ERRORS) else EXIT_VERIFICATION_FAILED
    logger.error(f"{type(e).__name__}: {e}")
    return create_response(exit_code, error=f"{type(e).__name__}: {e}")


def load_model(source: str) -> SurfaceModel:
    """
    Load a model from a file path, or build it when source is a registry name.
    """
    if os.path.isfile(source):
        try:
            with open(source, "r", encoding="utf-8") as f:
                text = f.read()
        except OSError as e:
            raise UsageError(f"Cannot read model file {source}: {e}")
        return parse_model(text)
    return build_model(source)


def _parse_range(bounds: List[str], label: str) -> Tuple[Fraction, Fraction]:
    if len(bounds) != 2:
        raise UsageError(f"--{label}-range needs two values LO HI")
    try:
        return to_fraction(bounds[0]), to_fraction(bounds[1])
    except (ValueError, ZeroDivisionError) as e:
        raise UsageError(f"Bad --{label}-range value: {e}")


def _class_arg(text: str, model: SurfaceModel) -> ClassVector:
    return parse_class(text, model.lattice, model.named)


def handle_model(event: Dict[str, Any]) -> Dict[str, Any]:
    """
    Emit a model file.

    Expected input:
    {"source": "ruled"}   (registry name or path to a model file)
    """
    try:
        model = load_model(event["source"])
        return create_response(EXIT_SUCCESS, serialize_model(model))
    except ConeLabError as e:
        return error_response(e)


def handle_check_cone(event: Dict[str, Any]) -> Dict[str, Any]:
    """
    Cone membership for one class.

    Expected input:
    {"source": "ruled", "cls": "4,1,-9", "kahler": true}
    """
    try:
        model = load_model(event["source"])
        x = _class_arg(event["cls"], model)
        lattice = model.lattice

        lines = [
            f"class: {format_class(x)}",
            f"square: {format_fraction(self_int(x, lattice))}",
            f"pairing with reference: {format_fraction(pair(x, model.reference, lattice))}",
            f"symplectic (K = {model.label(model.K)}): {str(in_symplectic_cone(x, model)).lower()}",
            f"symplectic (any K): {str(in_full_symplectic_cone(x, model)).lower()}",
        ]
        if event.get("kahler"):
            kahler = in_kahler_cone(x, model)
            line = f"kahler: {str(kahler).lower()}"
            witness = kahler_witness(x, model)
            if witness is not None:
                line += f" (witness {witness.label}, pairing {format_fraction(pair(x, witness.cls, lattice))})"
            lines.append(line)
            lines.append(f"verdict: {classify_class(x, model)}")
        return create_response(EXIT_SUCCESS, "\n".join(lines) + "\n")
    except ConeLabError as e:
        return error_response(e)


def handle_enumerate_exceptional(event: Dict[str, Any]) -> Dict[str, Any]:
    """
    List exceptional classes of the model's canonical class.

    Expected input:
    {"source": "ruled", "bound": 5, "sphere_sublattice": true}
    """
    try:
        model = load_model(event["source"])
        sublattice = None
        if event.get("sphere_sublattice"):
            if model.sphere_sublattice is None:
                raise CapabilityError(f"Model {model.tags.name!r} declares no sphere sublattice")
            sublattice = model.sphere_sublattice
        query = ExceptionalQuery(K=model.K, sublattice_basis=sublattice, bound=event["bound"])
        found = enumerate_exceptional(query, model.lattice)
        lines = [f"{model.label(x)}\t{format_class(x)}" for x in found]
        lines.append(f"# {len(found)} classes with x^2 = -1, x.K = -1 at bound {event['bound']}")
        return create_response(EXIT_SUCCESS, "\n".join(lines) + "\n")
    except ConeLabError as e:
        return error_response(e)


def _curve_record(x: ClassVector, model: SurfaceModel) -> CurveRecord:
    for curve in negative_curves(model):
        if curve.cls == x:
            return curve
    declared = ", ".join(curve.label for curve in negative_curves(model)) or "none"
    raise UsageError(
        f"{format_class(x)} is not a declared negative curve of {model.tags.name} (declared: {declared})"
    )


def handle_certify(event: Dict[str, Any]) -> Dict[str, Any]:
    """
    Certify that start + T curve is symplectic but not Kähler.

    Expected input:
    {"source": "ruled", "start": "r", "curve": "c"}
    """
    try:
        model = load_model(event["source"])
        w = _class_arg(event["start"], model)
        curve = _curve_record(_class_arg(event["curve"], model), model)
        certificate = certify_non_generic(w, curve, model)

        lines = [
            f"w = {format_class(certificate.w)}",
            f"C = {format_class(certificate.C)} ({certificate.curve_label}, genus {curve.genus})",
            f"v = {format_fraction(certificate.v)}",
            f"m = {format_fraction(certificate.m)}",
            f"interval = {certificate.interval}",
            f"T = {format_fraction(certificate.T)}",
            f"aT = {format_class(certificate.aT)}",
        ]
        lines += [f"check {check}" for check in certificate.checks]
        lines.append(f"verified: {str(certificate.verify(model)).lower()}")
        return create_response(EXIT_SUCCESS, "\n".join(lines) + "\n")
    except ConeLabError as e:
        return error_response(e)


def handle_slice(event: Dict[str, Any]) -> Dict[str, Any]:
    """
    CSV slice s u + t v.

    Expected input:
    {"source": "ruled", "u": "r", "v": "c", "s_range": ["0", "2"], "t_range": ["0", "6"], "steps": 7}
    """
    try:
        model = load_model(event["source"])
        steps = event.get("steps") or load_config(event.get("env"))["slice"]["default_steps"]
        rows = slice_grid(
            model,
            _class_arg(event["u"], model),
            _class_arg(event["v"], model),
            _parse_range(event["s_range"], "s"),
            _parse_range(event["t_range"], "t"),
            steps,
        )
        return create_response(EXIT_SUCCESS, rows_to_csv(rows))
    except ConeLabError as e:
        return error_response(e)


def handle_verify_paper(event: Dict[str, Any]) -> Dict[str, Any]:
    """
    Run the verification report.

    Expected input:
    {"env": "dev"}   (optional config environment)
    """
    try:
        out = io.StringIO()
        report = run_paper_report(out, load_config(event.get("env")))
        failure = report.first_failure
        error = None if failure is None else f"Report item {failure.name} failed"
        return create_response(report.exit_code, out.getvalue(), error)
    except ConeLabError as e:
        return error_response(e)
