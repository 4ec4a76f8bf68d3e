"""
Cone engine: exceptional classes, symplectic and Kähler cone membership,
and certificates for symplectic classes that are not Kähler.

Membership follows two criteria for b+ = 1:
- symplectic cone (fixed canonical class K): positive square, the component
  of the reference class, positive on every exceptional class E with E.K = -1
- Kähler cone: positive square, the same component, positive on every
  holomorphic curve of negative self-intersection
"""

import itertools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import TYPE_CHECKING, List, Optional, Sequence, Tuple

import numpy as np

from config.constants import DEFAULT_ROOT_PRECISION_BITS
from conelab.exceptions import (
    CapabilityError,
    CertificationError,
    CurveDoesNotObstructError,
    DimensionError,
    DomainError,
    ModelInvalidError,
    NotNegativeCurveError,
    UsageError,
)
from conelab.lattice import (
    ClassVector,
    Lattice,
    format_class,
    in_positive_cone,
    induced_gram,
    pair,
    rank_of,
    same_component,
    self_int,
    signature,
)
from conelab.shared import linear_algebra
from conelab.shared.rational import QuadraticRoot, Rational, format_fraction

if TYPE_CHECKING:
    from conelab.surface_models import SurfaceModel

logger = logging.getLogger(__name__)

# Above this many grid points the box scan is refused
MAX_BOX_POINTS = 5_000_000


@dataclass(frozen=True)
class CurveRecord:
    """
    A curve class with its claimed geometric genus.
    """
    cls: ClassVector
    genus: int
    label: str


@dataclass(frozen=True)
class ExceptionalQuery:
    """
    Search region for exceptional classes.

    Attributes:
        K: Canonical class
        sublattice_basis: Optional basis to search in (e.g. sphere classes)
        bound: Box bound on the search coefficients
    """
    K: ClassVector
    sublattice_basis: Optional[Tuple[ClassVector, ...]] = None
    bound: int = 1

    def __post_init__(self):
        if self.bound < 0:
            raise UsageError(f"Enumeration bound must be nonnegative, got {self.bound}")
        if self.sublattice_basis is not None:
            basis = tuple(self.sublattice_basis)
            object.__setattr__(self, "sublattice_basis", basis)
            if not basis:
                raise UsageError("Sublattice basis must not be empty")
            if rank_of(basis) != len(basis):
                raise UsageError("Sublattice basis vectors are linearly dependent")


def adjunction_genus(C: ClassVector, K: ClassVector, lattice: Lattice) -> Fraction:
    """
    Genus predicted by adjunction, 2g - 2 = C^2 + K.C.

    Non-integer or negative values are returned as they are; callers decide
    whether they invalidate a curve claim.
    """
    return (self_int(C, lattice) + pair(K, C, lattice)) / 2 + 1


def classify_trivial_K_negative_curve(c_sq: int, g: int) -> bool:
    """
    Whether (C^2, g) can be a negative curve when K is numerically trivial.

    Adjunction reduces to C^2 = 2g - 2, so the only admissible datum is (-2, 0).
    """
    return c_sq < 0 and g >= 0 and c_sq == 2 * g - 2


def noether_b2(K_sq: int, chi_O: int) -> int:
    """
    Second Betti number from Noether's formula when p_g = q = 0.

    Args:
        K_sq: Self-intersection of the canonical class
        chi_O: Holomorphic Euler characteristic

    Returns:
        12 chi(O) - K^2 - 2
    """
    return 12 * chi_O - K_sq - 2


# ---------------------------------------------------------------------------
# Exceptional class enumeration
# ---------------------------------------------------------------------------

def _short_vectors(
    d: List[Fraction], mu: List[List[Fraction]], limit: Fraction, bound: int
) -> List[Tuple[int, ...]]:
    """
    All integer x with |x_i| <= bound and sum_i d_i (x_i + sum_{j>i} mu_ij x_j)^2 <= limit.
    """
    n = len(d)
    x = [0] * n
    found: List[Tuple[int, ...]] = []

    def recurse(i: int, remaining: Fraction) -> None:
        center = -sum((mu[i][j] * x[j] for j in range(i + 1, n)), Fraction(0))
        base = math.floor(center)
        values = []
        v = base
        while d[i] * (v - center) ** 2 <= remaining:
            values.append(v)
            v -= 1
        v = base + 1
        while d[i] * (v - center) ** 2 <= remaining:
            values.append(v)
            v += 1
        for v in sorted(values):
            if abs(v) > bound:
                continue
            x[i] = v
            if i == 0:
                found.append(tuple(x))
            else:
                recurse(i - 1, remaining - d[i] * (v - center) ** 2)
        x[i] = 0

    recurse(n - 1, Fraction(limit))
    return found


def _box_scan(
    gram: List[List[Fraction]], kappa: List[Fraction], bound: int
) -> List[Tuple[int, ...]]:
    """
    Vectorized scan of the box [-bound, bound]^r for x^2 = -1 and x.K = -1.

    Entries are cleared of denominators so the whole grid is evaluated in
    integer arithmetic.
    """
    r = len(gram)
    points = (2 * bound + 1) ** r
    if points > MAX_BOX_POINTS:
        raise UsageError(
            f"Search box has {points} points (rank {r}, bound {bound}); "
            f"limit is {MAX_BOX_POINTS}"
        )

    scale = 1
    for entry in itertools.chain(itertools.chain.from_iterable(gram), kappa):
        scale = scale * entry.denominator // math.gcd(scale, entry.denominator)
    g_int = np.array([[int(x * scale) for x in row] for row in gram], dtype=np.int64)
    k_int = np.array([int(x * scale) for x in kappa], dtype=np.int64)

    axis = np.arange(-bound, bound + 1, dtype=np.int64)
    grid = np.array(np.meshgrid(*([axis] * r), indexing="ij")).reshape(r, -1).T
    squares = np.einsum("ni,ij,nj->n", grid, g_int, grid)
    linear = grid @ k_int
    mask = (squares == -scale) & (linear == -scale)
    return [tuple(int(c) for c in row) for row in grid[mask]]


def enumerate_exceptional(query: ExceptionalQuery, lattice: Lattice) -> List[ClassVector]:
    """
    All integral combinations x in the search box with x^2 = -1 and x.K = -1.

    The box is taken in the ambient basis, or in query.sublattice_basis when
    given. When K^2 > 0 the search is a short-vector enumeration for the
    positive definite form (x.K)^2 (1/K^2 + 1) - x^2, on which every solution
    has value 2 + 1/K^2; otherwise the box is scanned exhaustively.

    Returns:
        Solutions in lexicographic order of their ambient coefficients
    """
    report = signature(lattice)
    if not report.is_hyperbolic():
        raise DomainError(
            f"Exceptional enumeration needs signature (1, n, 0), got {report.as_tuple()}"
        )

    if query.sublattice_basis is not None:
        basis = list(query.sublattice_basis)
    else:
        basis = lattice.basis()

    gram = induced_gram(basis, lattice)
    kappa = [pair(b, query.K, lattice) for b in basis]
    k_sq = self_int(query.K, lattice)

    logger.info(
        f"Enumerating exceptional classes: rank={len(basis)}, bound={query.bound}, "
        f"sublattice={'yes' if query.sublattice_basis is not None else 'no'}"
    )

    coefficient_lists = None
    if k_sq > 0:
        weight = 1 / k_sq + 1
        form = [
            [kappa[i] * kappa[j] * weight - gram[i][j] for j in range(len(basis))]
            for i in range(len(basis))
        ]
        decomposition = linear_algebra.ldl_decomposition(form)
        if decomposition is not None:
            d, mu = decomposition
            coefficient_lists = _short_vectors(d, mu, 2 + 1 / k_sq, query.bound)
    if coefficient_lists is None:
        coefficient_lists = _box_scan(gram, kappa, query.bound)

    results = set()
    for coeffs in coefficient_lists:
        x = combine(coeffs, basis)
        if self_int(x, lattice) == -1 and pair(x, query.K, lattice) == -1:
            results.add(x)

    ordered = sorted(results, key=lambda x: x.coeffs)
    logger.info(f"Found {len(ordered)} exceptional classes")
    return ordered


# ---------------------------------------------------------------------------
# Cone membership
# ---------------------------------------------------------------------------

def _check_cone_model(model: "SurfaceModel") -> None:
    if not model.signature_report.is_hyperbolic():
        raise ModelInvalidError(
            f"Cone queries need b+ = 1 and a nondegenerate form, "
            f"got signature {model.signature_report.as_tuple()}",
            field_path="lattice.gram",
        )
    if self_int(model.reference, model.lattice) <= 0:
        raise ModelInvalidError("Reference class must have positive square", field_path="reference")


def _in_reference_component(a: ClassVector, model: "SurfaceModel") -> bool:
    lattice = model.lattice
    return in_positive_cone(a, lattice) and same_component(a, model.reference, lattice)


def in_symplectic_cone(a: ClassVector, model: "SurfaceModel") -> bool:
    """
    Membership in the symplectic cone of the model's canonical class.

    True iff a^2 > 0, a lies in the component of the reference class, and
    a.E > 0 for every declared exceptional class E.
    """
    _check_cone_model(model)
    if not _in_reference_component(a, model):
        return False
    return all(pair(a, E, model.lattice) > 0 for E in model.exceptional_set)


def in_full_symplectic_cone(a: ClassVector, model: "SurfaceModel") -> bool:
    """
    Membership in the union of symplectic cones over all canonical classes.

    True iff a^2 > 0 and a.E != 0 for every E in +/- the declared exceptional set.
    """
    _check_cone_model(model)
    if self_int(a, model.lattice) <= 0:
        return False
    return all(pair(a, E, model.lattice) != 0 for E in model.exceptional_set)


def negative_curves(model: "SurfaceModel") -> List[CurveRecord]:
    if model.curves is None:
        raise CapabilityError(
            f"Model {model.tags.name!r} declares no curve list; Kähler queries are unavailable"
        )
    return [c for c in model.curves if self_int(c.cls, model.lattice) < 0]


def kahler_witness(a: ClassVector, model: "SurfaceModel") -> Optional[CurveRecord]:
    """
    First declared negative curve on which a is not positive, or None.
    """
    for curve in negative_curves(model):
        if pair(a, curve.cls, model.lattice) <= 0:
            return curve
    return None


def in_kahler_cone(a: ClassVector, model: "SurfaceModel") -> bool:
    """
    Nakai-Moishezon membership: positive square, reference component, and
    positive on every declared curve of negative self-intersection.

    Raises:
        CapabilityError: the model carries no curve list
    """
    _check_cone_model(model)
    negative = negative_curves(model)
    if not _in_reference_component(a, model):
        return False
    return all(pair(a, curve.cls, model.lattice) > 0 for curve in negative)


# ---------------------------------------------------------------------------
# Deformation a(t) = w + t C and certificates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DeformationInterval:
    """
    Open interval of t where a(t) = w + tC has a(t)^2 > 0 and a(t).C < 0.
    """
    w_sq: Fraction
    v: Fraction
    m: Fraction
    t_low: Fraction
    t_high: QuadraticRoot

    def contains(self, t: Rational) -> bool:
        return Fraction(t) > self.t_low and self.t_high > t

    def rational_point(self, bits: int = DEFAULT_ROOT_PRECISION_BITS) -> Fraction:
        """
        A rational strictly inside the interval, near its midpoint.
        """
        while True:
            lower = self.t_high.lower_bound(bits)
            if lower > self.t_low:
                point = (self.t_low + lower) / 2
                if self.contains(point):
                    return point
            bits *= 2

    def __str__(self) -> str:
        return f"({format_fraction(self.t_low)}, {self.t_high})"


def deformation_interval(w: ClassVector, C: ClassVector, lattice: Lattice) -> DeformationInterval:
    """
    Interval of deformation parameters that make w + tC positive but negative on C.

    a(t)^2 = w^2 + 2tv - t^2 m, so a(t)^2 > 0 for t below (v + sqrt(v^2 + m w^2))/m,
    and a(t).C = v - tm < 0 for t above v/m.

    Args:
        w: Starting class, w^2 > 0
        C: Curve class, m = -C^2 > 0
        lattice: Ambient lattice

    Returns:
        DeformationInterval with exact endpoints

    Raises:
        DomainError: w^2 <= 0
        NotNegativeCurveError: C^2 >= 0
        CurveDoesNotObstructError: w.C <= 0
    """
    w_sq = self_int(w, lattice)
    if w_sq <= 0:
        raise DomainError(f"Starting class {format_class(w)} has square {format_fraction(w_sq)}, not positive")
    m = -self_int(C, lattice)
    if m <= 0:
        raise NotNegativeCurveError(
            f"Curve class {format_class(C)} has square {format_fraction(-m)}; not a negative curve"
        )
    v = pair(w, C, lattice)
    if v <= 0:
        raise CurveDoesNotObstructError(
            f"Curve {format_class(C)} does not obstruct: {format_class(w)} pairs to {format_fraction(v)}"
        )
    return DeformationInterval(
        w_sq=w_sq,
        v=v,
        m=m,
        t_low=v / m,
        t_high=QuadraticRoot(p=v, q=1, d=v * v + m * w_sq, den=m),
    )


@dataclass(frozen=True)
class InequalityCheck:
    """A verified strict inequality lhs (< or >) rhs."""
    name: str
    lhs: Fraction
    relation: str
    rhs: Fraction = Fraction(0)

    @property
    def passed(self) -> bool:
        if self.relation == ">":
            return self.lhs > self.rhs
        if self.relation == "<":
            return self.lhs < self.rhs
        raise ValueError(f"Unknown relation {self.relation!r}")

    def __str__(self) -> str:
        return f"{self.name} = {format_fraction(self.lhs)} {self.relation} {format_fraction(self.rhs)}"


@dataclass(frozen=True)
class NonKahlerCertificate:
    """
    Exact witness that a(T) = w + T C is symplectic but not Kähler.
    """
    w: ClassVector
    C: ClassVector
    curve_label: str
    v: Fraction
    m: Fraction
    T: Fraction
    aT: ClassVector
    interval: DeformationInterval
    checks: Tuple[InequalityCheck, ...] = field(default_factory=tuple)

    @property
    def aT_square(self) -> Fraction:
        return self_int(self.aT, self.aT.lattice)

    def verify(self, model: "SurfaceModel") -> bool:
        """
        Recompute every stored quantity and inequality from scratch, and
        check that C is a declared negative curve and a(T) is outside the
        Kähler cone.
        """
        lattice = model.lattice
        if not _is_declared_negative_curve(self.C, model):
            return False
        if self.v != pair(self.w, self.C, lattice) or self.m != -self_int(self.C, lattice):
            return False
        if self.aT != self.w + self.T * self.C:
            return False
        recomputed = _certificate_checks(self.w, self.C, self.T, model)
        if tuple(recomputed) != self.checks:
            return False
        if not all(check.passed for check in recomputed):
            return False
        if not in_symplectic_cone(self.aT, model) or pair(self.aT, self.C, lattice) >= 0:
            return False
        return kahler_witness(self.aT, model) is not None and not in_kahler_cone(self.aT, model)


def _is_declared_negative_curve(C: ClassVector, model: "SurfaceModel") -> bool:
    return any(curve.cls == C for curve in negative_curves(model))


def _certificate_checks(
    w: ClassVector, C: ClassVector, T: Fraction, model: "SurfaceModel"
) -> List[InequalityCheck]:
    lattice = model.lattice
    v = pair(w, C, lattice)
    m = -self_int(C, lattice)
    aT = w + T * C
    checks = [
        InequalityCheck("w^2", self_int(w, lattice), ">"),
        InequalityCheck("v", v, ">"),
        InequalityCheck("m", m, ">"),
        InequalityCheck("T", T, ">", v / m),
        InequalityCheck("aT^2", self_int(aT, lattice), ">"),
        InequalityCheck("aT.C", pair(aT, C, lattice), "<"),
    ]
    for E in model.exceptional_set:
        checks.append(InequalityCheck(f"aT.({format_class(E)})", pair(aT, E, lattice), ">"))
    checks.append(InequalityCheck("aT.r", pair(aT, model.reference, lattice), ">"))
    return checks


def _blocking_constraint(aT: ClassVector, model: "SurfaceModel") -> Optional[str]:
    lattice = model.lattice
    for E in model.exceptional_set:
        value = pair(aT, E, lattice)
        if value <= 0:
            return f"aT.({format_class(E)}) = {format_fraction(value)} <= 0"
    value = pair(aT, model.reference, lattice)
    if value <= 0:
        return f"aT.r = {format_fraction(value)} <= 0"
    return None


def certify_non_generic(w: ClassVector, C: CurveRecord, model: "SurfaceModel") -> NonKahlerCertificate:
    """
    Build a certificate that w + TC is symplectic but not Kähler.

    T is the smallest (v + j)/m, j = 1, 2, ..., inside the deformation
    interval with w + TC positive on every exceptional class and on the
    reference class; when the scan leaves the interval, a rational near the
    interval midpoint is tried instead.

    Raises:
        CapabilityError: the model carries no curve list
        DomainError: C is not one of the model's declared negative curves
        CertificationError: no admissible T; carries the blocking constraint
    """
    _check_cone_model(model)
    if not _is_declared_negative_curve(C.cls, model):
        raise DomainError(
            f"{format_class(C.cls)} is not a declared negative curve of model {model.tags.name!r}"
        )
    lattice = model.lattice
    interval = deformation_interval(w, C.cls, lattice)
    v, m = interval.v, interval.m

    T = None
    blocking = None
    j = 1
    while True:
        t = (v + j) / m
        if not interval.contains(t):
            break
        blocking = _blocking_constraint(w + t * C.cls, model)
        if blocking is None:
            T = t
            break
        j += 1

    if T is None:
        t = interval.rational_point()
        logger.info(f"Integer-step scan left the interval, trying T = {format_fraction(t)}")
        blocking = _blocking_constraint(w + t * C.cls, model)
        if blocking is None:
            T = t

    if T is None:
        raise CertificationError(
            f"No admissible T in {interval} for curve {C.label}: {blocking}",
            blocking_constraint=blocking,
        )

    checks = _certificate_checks(w, C.cls, T, model)
    certificate = NonKahlerCertificate(
        w=w,
        C=C.cls,
        curve_label=C.label,
        v=v,
        m=m,
        T=T,
        aT=w + T * C.cls,
        interval=interval,
        checks=tuple(checks),
    )
    if not certificate.verify(model):
        failed = [str(c) for c in checks if not c.passed]
        raise CertificationError(f"Certificate failed verification: {failed}")

    logger.info(
        f"Certified {format_class(certificate.aT)} (T = {format_fraction(T)}) "
        f"against curve {C.label}"
    )
    return certificate


# ---------------------------------------------------------------------------
# Genericity
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GenericityVerdict:
    generic: bool
    reason: str
    certificate: Optional[NonKahlerCertificate] = None


def symplectic_generic_verdict(model: "SurfaceModel") -> GenericityVerdict:
    """
    Decide whether the model's complex structure is symplectic generic.

    Generic when every declared curve of negative self-intersection is one of
    the exceptional classes (the Kähler and symplectic conditions then
    coincide). Otherwise the reference class, which must be Kähler, is
    deformed across an obstructing curve to produce a certificate.
    """
    negative = negative_curves(model)
    obstructing = [c for c in negative if c.cls not in model.exceptional_set]
    if not obstructing:
        return GenericityVerdict(
            generic=True,
            reason="every curve of negative self-intersection is an exceptional class",
        )

    start = model.reference
    if not in_kahler_cone(start, model):
        raise CapabilityError(
            f"Reference class {format_class(start)} is not Kähler; no starting class to deform"
        )

    failures = []
    for curve in obstructing:
        try:
            certificate = certify_non_generic(start, curve, model)
        except (CertificationError, DomainError) as e:
            failures.append(f"{curve.label}: {e}")
            continue
        return GenericityVerdict(
            generic=False,
            reason=f"curve {curve.label} obstructs {format_class(certificate.aT)}",
            certificate=certificate,
        )
    raise CertificationError(
        "No obstructing curve could be certified: " + "; ".join(failures),
        blocking_constraint=failures[0] if failures else None,
    )


def positive_classes_are_ample_multiples(model: "SurfaceModel") -> bool:
    """
    True when b2 = 1 and the reference class is Kähler: every class of the
    positive cone in the reference component is then a positive multiple of it.
    """
    if model.lattice.rank != 1:
        return False
    try:
        return in_kahler_cone(model.reference, model)
    except CapabilityError:
        return False


def combine(coeffs: Sequence[Rational], basis: Sequence[ClassVector]) -> ClassVector:
    """Linear combination of classes with rational coefficients."""
    if not basis:
        raise DimensionError("Empty basis")
    if len(coeffs) != len(basis):
        raise DimensionError(f"Expected {len(basis)} coefficients, got {len(coeffs)}")
    total = basis[0].lattice.zero()
    for c, b in zip(coeffs, basis):
        total = total + Fraction(c) * b
    return total
