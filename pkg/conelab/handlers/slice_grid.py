"""
Two-parameter slices s*u + t*v through the cone picture, as CSV.

Every grid point is classified by exact arithmetic; coordinates are
rationals, never floats.
"""

import csv
import io
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple, Union

from config.constants import (
    SLICE_CSV_HEADER,
    VERDICT_KAHLER,
    VERDICT_NON_SYMPLECTIC,
    VERDICT_ON_WALL,
    VERDICT_OUTSIDE_P,
    VERDICT_SYMPLECTIC_NOT_KAHLER,
    VERDICT_WRONG_COMPONENT,
)
from conelab.cone_engine import negative_curves
from conelab.exceptions import UsageError
from conelab.lattice import ClassVector, pair, rank_of, self_int
from conelab.shared.rational import Rational, format_fraction
from conelab.surface_models import SurfaceModel

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SliceRow:
    s: Fraction
    t: Fraction
    cls: ClassVector
    square: Fraction
    verdict: str


def classify_class(x: ClassVector, model: SurfaceModel) -> str:
    """
    Verdict for a single class.

    Precedence: zero class, square, component, exceptional pairings, curve
    pairings; a zero value at any stage is ON_WALL.
    """
    lattice = model.lattice
    if x.is_zero:
        return VERDICT_OUTSIDE_P
    square = self_int(x, lattice)
    if square == 0:
        return VERDICT_ON_WALL
    if square < 0:
        return VERDICT_OUTSIDE_P

    component = pair(x, model.reference, lattice)
    if component == 0:
        return VERDICT_ON_WALL
    if component < 0:
        return VERDICT_WRONG_COMPONENT

    e_pairings = [pair(x, E, lattice) for E in model.exceptional_set]
    if any(p == 0 for p in e_pairings):
        return VERDICT_ON_WALL
    if any(p < 0 for p in e_pairings):
        return VERDICT_NON_SYMPLECTIC

    c_pairings = [pair(x, c.cls, lattice) for c in negative_curves(model)]
    if any(p == 0 for p in c_pairings):
        return VERDICT_ON_WALL
    if any(p < 0 for p in c_pairings):
        return VERDICT_SYMPLECTIC_NOT_KAHLER
    return VERDICT_KAHLER


def _axis(bounds: Tuple[Rational, Rational], steps: int, label: str) -> List[Fraction]:
    lo, hi = Fraction(bounds[0]), Fraction(bounds[1])
    if lo >= hi:
        raise UsageError(f"Degenerate {label} range [{format_fraction(lo)}, {format_fraction(hi)}]")
    if steps < 2:
        raise UsageError(f"Need at least 2 steps along {label}, got {steps}")
    step = (hi - lo) / (steps - 1)
    return [lo + i * step for i in range(steps)]


def slice_grid(
    model: SurfaceModel,
    u: ClassVector,
    v: ClassVector,
    s_range: Tuple[Rational, Rational],
    t_range: Tuple[Rational, Rational],
    steps: Union[int, Tuple[int, int]],
) -> List[SliceRow]:
    """
    Classify s*u + t*v over a rational grid.

    Args:
        model: Surface model (needs a curve list)
        u, v: Independent direction classes
        s_range, t_range: Closed ranges (lo, hi) with lo < hi
        steps: Grid points per axis, or (s_steps, t_steps)

    Returns:
        Rows in row-major order (s outer, t inner)
    """
    if rank_of([u, v]) != 2:
        raise UsageError("Slice directions u and v must be linearly independent")
    s_steps, t_steps = (steps, steps) if isinstance(steps, int) else steps
    s_axis = _axis(s_range, s_steps, "s")
    t_axis = _axis(t_range, t_steps, "t")

    logger.info(f"Slicing {len(s_axis)}x{len(t_axis)} grid in model {model.tags.name!r}")
    rows = []
    for s in s_axis:
        for t in t_axis:
            x = s * u + t * v
            rows.append(
                SliceRow(s=s, t=t, cls=x, square=self_int(x, model.lattice), verdict=classify_class(x, model))
            )
    return rows


def rows_to_csv(rows: Sequence[SliceRow]) -> str:
    """CSV text with header s,t,square,verdict and LF line endings."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(SLICE_CSV_HEADER)
    for row in rows:
        writer.writerow([format_fraction(row.s), format_fraction(row.t), format_fraction(row.square), row.verdict])
    return buffer.getvalue()
