"""
Built-in surface models.

Each constructor writes down a lattice together with its canonical class,
a reference class marking the positive-cone component that contains the
Kähler classes, the declared exceptional set E_(X,K) and the declared
curves of negative self-intersection. Constructors re-derive their class
identities and abort on any mismatch.
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Optional, Tuple

from config.constants import (
    BIDISK_BASIS,
    BIDISK_GRAM,
    BURNIAT_BASIS,
    BURNIAT_GRAM,
    BUILTIN_MODEL_NAMES,
    CHI_O_GENERAL_TYPE,
    MAX_RATIONAL_BLOWUPS,
    MODEL_BALL_QUOTIENT,
    MODEL_BIDISK,
    MODEL_BURNIAT,
    MODEL_RATIONAL_PREFIX,
    MODEL_RULED,
    RULED_BASIS,
    RULED_GRAM,
)
from conelab.cone_engine import (
    CurveRecord,
    ExceptionalQuery,
    adjunction_genus,
    enumerate_exceptional,
    in_kahler_cone,
    in_symplectic_cone,
    noether_b2,
)
from conelab.exceptions import (
    DomainError,
    ModelInvalidError,
    OutOfScopeError,
    SelfCheckError,
    UsageError,
)
from conelab.lattice import (
    PARITY_ODD,
    ClassVector,
    Lattice,
    SignatureReport,
    format_class,
    pair,
    parity,
    rank_of,
    self_int,
    signature,
    solve_from_pairings,
)
from conelab.shared.rational import format_fraction

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ModelTags:
    """
    Descriptive metadata; not used by any cone computation.
    """
    name: str
    kodaira_dim: str
    p_g: int
    minimal: bool
    full_b2: Optional[int] = None
    note: str = ""


@dataclass(frozen=True)
class SurfaceModel:
    """
    A lattice with the distinguished classes cone queries need.

    Attributes:
        lattice: Intersection lattice
        K: Canonical class
        reference: Positive-square class marking the Kähler component
        exceptional_set: Declared E_(X,K), taken as complete
        curves: Declared curves, taken as complete; None when unknown
        sphere_sublattice: Optional basis of the sublattice holding every (-1)-sphere
        tags: Metadata
        named_classes: (name, class) pairs, basis classes excluded
    """
    lattice: Lattice
    K: ClassVector
    reference: ClassVector
    exceptional_set: Tuple[ClassVector, ...]
    curves: Optional[Tuple[CurveRecord, ...]]
    sphere_sublattice: Optional[Tuple[ClassVector, ...]]
    tags: ModelTags
    named_classes: Tuple[Tuple[str, ClassVector], ...] = ()

    @cached_property
    def signature_report(self) -> SignatureReport:
        return signature(self.lattice)

    @property
    def named(self) -> Dict[str, ClassVector]:
        """Basis classes plus the model's named classes."""
        names = {name: self.lattice.basis_vector(name) for name in self.lattice.basis_names}
        names.update(dict(self.named_classes))
        return names

    def name_of(self, x: ClassVector) -> Optional[str]:
        """Name of a class; model names take precedence over basis names."""
        for name, value in self.named_classes:
            if value == x:
                return name
        for name, value in zip(self.lattice.basis_names, self.lattice.basis()):
            if value == x:
                return name
        return None

    def label(self, x: ClassVector) -> str:
        return self.name_of(x) or format_class(x)


def validate_model(model: SurfaceModel) -> None:
    """
    Check every SurfaceModel invariant.

    Raises:
        ModelInvalidError: with the offending field path
    """
    lattice = model.lattice

    report = model.signature_report
    expected = (1, lattice.rank - 1, 0)
    if report.as_tuple() != expected:
        raise ModelInvalidError(
            f"signature is {report.as_tuple()}, expected {expected}", field_path="gram"
        )

    members = [("roles.canonical", model.K), ("roles.reference", model.reference)]
    members += [(f"roles.exceptional[{i}]", E) for i, E in enumerate(model.exceptional_set)]
    members += [(f"roles.curves[{i}]", c.cls) for i, c in enumerate(model.curves or ())]
    members += [(f"roles.sphere_sublattice[{i}]", s) for i, s in enumerate(model.sphere_sublattice or ())]
    for path, x in members:
        if x.lattice != lattice:
            raise ModelInvalidError("class does not belong to the model lattice", field_path=path)

    ref_sq = self_int(model.reference, lattice)
    if ref_sq <= 0:
        raise ModelInvalidError(
            f"reference has square {format_fraction(ref_sq)}, must be positive",
            field_path="roles.reference",
        )

    for i, E in enumerate(model.exceptional_set):
        path = f"roles.exceptional[{i}]"
        e_sq = self_int(E, lattice)
        e_k = pair(E, model.K, lattice)
        if e_sq != -1 or e_k != -1:
            raise ModelInvalidError(
                f"{format_class(E)} has E^2 = {format_fraction(e_sq)} and E.K = "
                f"{format_fraction(e_k)}, expected -1 and -1",
                field_path=path,
            )
        if pair(model.reference, E, lattice) <= 0:
            raise ModelInvalidError(
                f"reference does not pair positively with {format_class(E)}", field_path=path
            )

    for i, curve in enumerate(model.curves or ()):
        expected_genus = adjunction_genus(curve.cls, model.K, lattice)
        if curve.genus < 0 or expected_genus != curve.genus:
            raise ModelInvalidError(
                f"curve {curve.label} = {format_class(curve.cls)} claims genus {curve.genus} "
                f"but adjunction gives genus {format_fraction(expected_genus)}",
                field_path=f"roles.curves[{i}]",
            )

    if model.sphere_sublattice is not None:
        if rank_of(model.sphere_sublattice) != len(model.sphere_sublattice):
            raise ModelInvalidError(
                "sphere sublattice basis is linearly dependent", field_path="roles.sphere_sublattice"
            )


def _self_check(condition: bool, message: str) -> None:
    if not condition:
        raise SelfCheckError(message)


# ---------------------------------------------------------------------------
# Ruled blow-up over an elliptic curve
# ---------------------------------------------------------------------------

def _ruled_lattice() -> Lattice:
    return Lattice(RULED_GRAM, RULED_BASIS)


def delta_class(model: SurfaceModel) -> ClassVector:
    """
    The class of the elliptic curves C_t, recovered from its pairings
    delta.e = 0, delta.f = 4, delta.k = 0 (the last by adjunction).

    Returns:
        2e - 2k
    """
    lattice = model.lattice
    if list(lattice.basis_names) != RULED_BASIS or lattice.gram != _ruled_lattice().gram:
        raise DomainError("delta_class needs the ruled blow-up model")
    e, f, k = lattice.basis()
    delta = solve_from_pairings([(e, 0), (f, 4), (k, 0)], lattice)

    _self_check(delta == 2 * e - 2 * k, f"delta solved to {format_class(delta)}, expected 2e-2k")
    _self_check(self_int(delta, lattice) == 0, "delta^2 != 0")
    _self_check(adjunction_genus(delta, k, lattice) == 1, "delta is not of genus 1")
    return delta


def xi_class(m: int) -> ClassVector:
    """
    Class of the pulled-back section of the decomposable ruled surface,
    2 xi = e + m f - k.
    """
    e, f, k = _ruled_lattice().basis()
    return (e + m * f - k) / 2


def decomposable_identity_check(m: int) -> bool:
    """
    Verify 4 xi + (-2m f - e) = e - 2k for the decomposable case.

    Args:
        m: Negative odd degree of the line bundle

    Returns:
        True when the identity holds coefficientwise
    """
    if m >= 0 or m % 2 == 0:
        raise DomainError(f"Degree must be negative and odd, got {m}")
    e, f, k = _ruled_lattice().basis()
    xi = xi_class(m)
    return 4 * xi + (-2 * m * f - e) == e - 2 * k


def ruled_blowup_model() -> SurfaceModel:
    """
    One-point blow-up of a minimal ruled surface over an elliptic curve.

    Basis (e, f, k): exceptional divisor, fiber, canonical class. The two
    (-1)-spheres are e1 = e and e2 = f - e, and e - 2k carries an elliptic
    curve of self-intersection -1.
    """
    lattice = _ruled_lattice()
    e, f, k = lattice.basis()
    e1 = e
    e2 = f - e
    c = e - 2 * k
    reference = f - k

    model = SurfaceModel(
        lattice=lattice,
        K=k,
        reference=reference,
        exceptional_set=(e1, e2),
        curves=(
            CurveRecord(e1, 0, "e1"),
            CurveRecord(e2, 0, "e2"),
            CurveRecord(c, 1, "c"),
        ),
        sphere_sublattice=(e1, e2),
        tags=ModelTags(
            name=MODEL_RULED,
            kodaira_dim="-inf",
            p_g=0,
            minimal=False,
            full_b2=3,
            note="basis {e, f, k} spans H^2(X, Q) only; Gram determinant 4",
        ),
        named_classes=(
            ("e1", e1),
            ("e2", e2),
            ("c", c),
            ("delta", 2 * e - 2 * k),
            ("r", reference),
        ),
    )
    validate_model(model)

    _self_check(pair(e1, e2, lattice) == 1, "e1.e2 != 1")
    _self_check(f == e1 + e2, "f != e1 + e2")
    _self_check(self_int(f, lattice) == 0, "f^2 != 0")
    _self_check(self_int(k, lattice) == -1, "k^2 != -1")
    _self_check(parity(lattice) == PARITY_ODD, "ruled lattice is not odd")
    delta_class(model)

    logger.debug("Built ruled blow-up model")
    return model


# ---------------------------------------------------------------------------
# Surfaces of general type with p_g = 0
# ---------------------------------------------------------------------------

def burniat_model() -> SurfaceModel:
    """
    Rank-2 shadow span{k, c} of a Burniat surface (K^2 = 6, p_g = 0).

    c is the elliptic curve of self-intersection -1; adjunction
    2*1 - 2 = c^2 + k.c with c^2 = -1 forces k.c = 1.
    """
    lattice = Lattice(BURNIAT_GRAM, BURNIAT_BASIS)
    k, c = lattice.basis()
    model = SurfaceModel(
        lattice=lattice,
        K=k,
        reference=k,
        exceptional_set=(),
        curves=(CurveRecord(c, 1, "c"),),
        sphere_sublattice=None,
        tags=ModelTags(
            name=MODEL_BURNIAT,
            kodaira_dim="2",
            p_g=0,
            minimal=True,
            full_b2=noether_b2(6, CHI_O_GENERAL_TYPE),
            note="rank-2 sublattice of the full b2 = 4 lattice",
        ),
    )
    validate_model(model)
    _self_check(adjunction_genus(c, k, lattice) == 1, "Burniat curve is not elliptic")
    return model


def bidisk_model() -> SurfaceModel:
    """
    Surface of general type with K^2 = 8 and bidisk universal cover.

    w1, w2 descend from the Poincaré metrics of the two factors; every
    a w1 + b w2 with a, b > 0 is Kähler and there are no negative curves.
    """
    lattice = Lattice(BIDISK_GRAM, BIDISK_BASIS)
    w1, w2 = lattice.basis()
    K = w1 + w2
    model = SurfaceModel(
        lattice=lattice,
        K=K,
        reference=K,
        exceptional_set=(),
        curves=(),
        sphere_sublattice=None,
        tags=ModelTags(
            name=MODEL_BIDISK,
            kodaira_dim="2",
            p_g=0,
            minimal=True,
            full_b2=noether_b2(8, CHI_O_GENERAL_TYPE),
            note="Gram entry 4 chosen so that K = w1 + w2 is integral with K^2 = 8",
        ),
        named_classes=(("K", K),),
    )
    validate_model(model)

    _self_check(self_int(K, lattice) == 8, "bidisk K^2 != 8")
    for a in range(1, 4):
        for b in range(1, 4):
            x = a * w1 + b * w2
            _self_check(
                in_kahler_cone(x, model) == in_symplectic_cone(x, model),
                f"Kähler and symplectic membership differ at {format_class(x)}",
            )
    return model


def ball_quotient_model() -> SurfaceModel:
    """
    Surface of general type with K^2 = 9 and b2 = 1: H^2 has rank one, so
    every class of positive square is a multiple of an ample class.
    """
    lattice = Lattice([[1]], ["h"])
    (h,) = lattice.basis()
    K = 3 * h
    model = SurfaceModel(
        lattice=lattice,
        K=K,
        reference=h,
        exceptional_set=(),
        curves=(),
        sphere_sublattice=None,
        tags=ModelTags(
            name=MODEL_BALL_QUOTIENT,
            kodaira_dim="2",
            p_g=0,
            minimal=True,
            full_b2=noether_b2(9, CHI_O_GENERAL_TYPE),
        ),
        named_classes=(("K", K),),
    )
    validate_model(model)
    return model


# ---------------------------------------------------------------------------
# Rational surfaces
# ---------------------------------------------------------------------------

def rational_blowup_model(n: int) -> SurfaceModel:
    """
    CP^2 blown up at n points in general position, basis {h, e1, .., en}.

    The exceptional set is enumerated with box bound 3(n + 1); the reference
    class is the anticanonical class -K, which is positive on every
    exceptional class and has square 9 - n.

    Raises:
        OutOfScopeError: n > 8, where the exceptional set is infinite
    """
    if n < 0:
        raise UsageError(f"Number of blow-ups must be nonnegative, got {n}")
    if n > MAX_RATIONAL_BLOWUPS:
        raise OutOfScopeError(
            f"CP^2 blown up at {n} > {MAX_RATIONAL_BLOWUPS} points has infinitely many "
            f"exceptional classes; whether every negative curve at very general points is a "
            f"(-1)-curve is the Harbourne-Hirschowitz conjecture"
        )

    gram = [[(1 if i == 0 else -1) if i == j else 0 for j in range(n + 1)] for i in range(n + 1)]
    names = ["h"] + [f"e{i}" for i in range(1, n + 1)]
    lattice = Lattice(gram, names)
    basis = lattice.basis()
    h = basis[0]
    K = -3 * h
    for e in basis[1:]:
        K = K + e

    exceptional = tuple(enumerate_exceptional(ExceptionalQuery(K=K, bound=3 * (n + 1)), lattice))
    _self_check(n == 0 or len(exceptional) > 0, f"no exceptional classes found for n = {n}")

    named = [("K", K), ("r", -K)]
    for E in exceptional:
        label = format_class(E)
        if label not in names:
            named.append((label, E))

    model = SurfaceModel(
        lattice=lattice,
        K=K,
        reference=-K,
        exceptional_set=exceptional,
        curves=tuple(CurveRecord(E, 0, format_class(E)) for E in exceptional),
        sphere_sublattice=None,
        tags=ModelTags(
            name=f"{MODEL_RATIONAL_PREFIX}{n}",
            kodaira_dim="-inf",
            p_g=0,
            minimal=(n == 0),
            full_b2=n + 1,
        ),
        named_classes=tuple(named),
    )
    validate_model(model)
    logger.debug(f"Built rational model with {n} blow-ups and {len(exceptional)} exceptional classes")
    return model


def build_model(name: str) -> SurfaceModel:
    """
    Look up a built-in model by registry name.

    Names: ruled, burniat, bidisk, ball-quotient, rational:<n>
    """
    builders = {
        MODEL_RULED: ruled_blowup_model,
        MODEL_BURNIAT: burniat_model,
        MODEL_BIDISK: bidisk_model,
        MODEL_BALL_QUOTIENT: ball_quotient_model,
    }
    if name in builders:
        return builders[name]()
    if name.startswith(MODEL_RATIONAL_PREFIX):
        suffix = name[len(MODEL_RATIONAL_PREFIX):]
        try:
            n = int(suffix)
        except ValueError:
            raise UsageError(f"Bad blow-up count in {name!r}")
        return rational_blowup_model(n)
    raise UsageError(
        f"Unknown model {name!r}; known models: {BUILTIN_MODEL_NAMES + [MODEL_RATIONAL_PREFIX + '<n>']}"
    )
