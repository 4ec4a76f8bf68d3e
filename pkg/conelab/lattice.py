"""
Lattice core: integral lattices, rational class vectors and exact pairings.

A Lattice is the free part of H^2(X, Z) with its intersection form, written
in a chosen (possibly only rational) basis. ClassVectors carry rational
coefficients; integrality is a query, not a constraint.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from conelab.exceptions import (
    AmbiguousSolutionError,
    DimensionError,
    DomainError,
    NoSolutionError,
    UsageError,
)
from conelab.shared import linear_algebra
from conelab.shared.rational import Rational, format_fraction, to_fraction

logger = logging.getLogger(__name__)

PARITY_ODD = "odd"
PARITY_EVEN = "even"


def _gram_entry(x) -> int:
    # bool is an int subclass
    if isinstance(x, (bool, np.bool_, float, np.floating)):
        raise DimensionError(f"Gram entries must be integers, got {x!r}")
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    raise DimensionError(f"Gram entries must be integers, got {x!r}")


@dataclass(frozen=True)
class Lattice:
    """
    Integral symmetric bilinear form with named basis classes.

    Attributes:
        gram: rank x rank symmetric integer matrix
        basis_names: Distinct nonempty identifiers, one per basis class
    """
    gram: Tuple[Tuple[int, ...], ...]
    basis_names: Tuple[str, ...]

    def __post_init__(self):
        gram = tuple(tuple(_gram_entry(x) for x in row) for row in self.gram)
        names = tuple(self.basis_names)
        object.__setattr__(self, "gram", gram)
        object.__setattr__(self, "basis_names", names)

        n = len(gram)
        if n == 0:
            raise DimensionError("Lattice rank must be positive")
        if any(len(row) != n for row in gram):
            raise DimensionError(f"Gram matrix must be {n}x{n}")
        for i in range(n):
            for j in range(i + 1, n):
                if gram[i][j] != gram[j][i]:
                    raise DimensionError(
                        f"Gram matrix is not symmetric: gram[{i}][{j}]={gram[i][j]} "
                        f"but gram[{j}][{i}]={gram[j][i]}"
                    )
        if len(names) != n:
            raise DimensionError(f"Expected {n} basis names, got {len(names)}")
        if any(not name for name in names):
            raise DimensionError("Basis names must be nonempty")
        if len(set(names)) != n:
            raise DimensionError(f"Basis names must be distinct: {list(names)}")

    @property
    def rank(self) -> int:
        return len(self.gram)

    @cached_property
    def gram_array(self) -> np.ndarray:
        return np.array(self.gram, dtype=object)

    def vector(self, coeffs: Sequence[Union[int, str, Fraction]]) -> "ClassVector":
        return ClassVector(tuple(to_fraction(c) for c in coeffs), self)

    def zero(self) -> "ClassVector":
        return self.vector([0] * self.rank)

    def basis_vector(self, name: str) -> "ClassVector":
        if name not in self.basis_names:
            raise DimensionError(f"Unknown basis class {name!r}; basis is {list(self.basis_names)}")
        index = self.basis_names.index(name)
        return self.vector([1 if i == index else 0 for i in range(self.rank)])

    def basis(self) -> List["ClassVector"]:
        return [self.basis_vector(name) for name in self.basis_names]


@dataclass(frozen=True)
class ClassVector:
    """
    Rational coefficient vector over a lattice basis.
    """
    coeffs: Tuple[Fraction, ...]
    lattice: Lattice

    def __post_init__(self):
        coeffs = tuple(Fraction(c) for c in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        if len(coeffs) != self.lattice.rank:
            raise DimensionError(
                f"Vector has {len(coeffs)} coefficients but lattice rank is {self.lattice.rank}"
            )

    @property
    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def _check_same(self, other: "ClassVector") -> None:
        if other.lattice != self.lattice:
            raise DimensionError("Class vectors belong to different lattices")

    def __add__(self, other: "ClassVector") -> "ClassVector":
        self._check_same(other)
        return ClassVector(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.lattice)

    def __sub__(self, other: "ClassVector") -> "ClassVector":
        self._check_same(other)
        return ClassVector(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)), self.lattice)

    def __neg__(self) -> "ClassVector":
        return ClassVector(tuple(-a for a in self.coeffs), self.lattice)

    def __mul__(self, scalar: Rational) -> "ClassVector":
        if isinstance(scalar, ClassVector):
            return NotImplemented
        scalar = Fraction(scalar)
        return ClassVector(tuple(scalar * a for a in self.coeffs), self.lattice)

    __rmul__ = __mul__

    def __truediv__(self, scalar: Rational) -> "ClassVector":
        return self * (Fraction(1) / Fraction(scalar))

    def __str__(self) -> str:
        return format_class(self)


def _check_member(a: ClassVector, lattice: Lattice) -> None:
    if len(a.coeffs) != lattice.rank:
        raise DimensionError(
            f"Vector has {len(a.coeffs)} coefficients but lattice rank is {lattice.rank}"
        )
    if a.lattice != lattice:
        raise DimensionError("Class vector does not belong to this lattice")


def pair(a: ClassVector, b: ClassVector, lattice: Lattice) -> Fraction:
    """
    Intersection pairing a^T * gram * b.

    Args:
        a: First class
        b: Second class
        lattice: Lattice both classes belong to

    Returns:
        Exact rational pairing
    """
    _check_member(a, lattice)
    _check_member(b, lattice)
    left = np.array(a.coeffs, dtype=object)
    right = np.array(b.coeffs, dtype=object)
    return Fraction(left.dot(lattice.gram_array).dot(right))


def self_int(a: ClassVector, lattice: Lattice) -> Fraction:
    """Self-intersection a^2."""
    return pair(a, a, lattice)


@dataclass(frozen=True)
class SignatureReport:
    n_plus: int
    n_minus: int
    n_zero: int

    @property
    def b_plus(self) -> int:
        return self.n_plus

    def is_hyperbolic(self) -> bool:
        """True for signature (1, n, 0), the b+ = 1 nondegenerate case."""
        return self.b_plus == 1 and self.n_zero == 0

    def as_tuple(self) -> Tuple[int, int, int]:
        return (self.n_plus, self.n_minus, self.n_zero)


def signature(lattice: Lattice) -> SignatureReport:
    """
    Count positive, negative and zero directions of the form.

    Uses exact congruence diagonalization; by Sylvester's law the counts do
    not depend on the elimination order.
    """
    diagonal = linear_algebra.diagonalize_symmetric(lattice.gram)
    return SignatureReport(
        n_plus=sum(1 for x in diagonal if x > 0),
        n_minus=sum(1 for x in diagonal if x < 0),
        n_zero=sum(1 for x in diagonal if x == 0),
    )


def parity(lattice: Lattice) -> str:
    """
    Parity of the form: even iff every diagonal Gram entry is even.
    """
    if any(lattice.gram[i][i] % 2 for i in range(lattice.rank)):
        return PARITY_ODD
    return PARITY_EVEN


def in_positive_cone(a: ClassVector, lattice: Lattice) -> bool:
    """True iff a^2 > 0 (the zero class is excluded)."""
    return self_int(a, lattice) > 0


def same_component(a: ClassVector, b: ClassVector, lattice: Lattice) -> bool:
    """
    Whether two positive-square classes lie in the same sheet of the positive cone.

    For signature (1, n) this holds iff a . b > 0.

    Raises:
        DomainError: lattice is not of signature (1, n, 0), or a class has non-positive square
    """
    report = signature(lattice)
    if not report.is_hyperbolic():
        raise DomainError(f"Component test needs signature (1, n, 0), got {report.as_tuple()}")
    for label, x in (("first", a), ("second", b)):
        if not in_positive_cone(x, lattice):
            raise DomainError(
                f"The {label} class {format_class(x)} has square "
                f"{format_fraction(self_int(x, lattice))}, not positive"
            )
    return pair(a, b, lattice) > 0


def solve_from_pairings(
    targets: Sequence[Tuple[ClassVector, Rational]], lattice: Lattice
) -> ClassVector:
    """
    Recover the class x with prescribed pairings x . p_i = t_i.

    Args:
        targets: (class, target pairing) pairs
        lattice: Ambient lattice

    Returns:
        The unique solution

    Raises:
        NoSolutionError: the pairings are inconsistent
        AmbiguousSolutionError: the prescribed classes leave a kernel; carries its dimension
    """
    if not targets:
        raise AmbiguousSolutionError("No pairings given", kernel_dimension=lattice.rank)
    rows = []
    rhs = []
    for known, target in targets:
        _check_member(known, lattice)
        # x . p = (G p)^T x
        rows.append(list(lattice.gram_array.dot(np.array(known.coeffs, dtype=object))))
        rhs.append(Fraction(target))

    if not linear_algebra.is_consistent(rows, rhs):
        raise NoSolutionError("Prescribed pairings are inconsistent")
    solution, kernel_dimension = linear_algebra.solve(rows, rhs)
    if solution is None:
        raise AmbiguousSolutionError(
            f"Pairings leave a kernel of dimension {kernel_dimension}",
            kernel_dimension=kernel_dimension,
        )
    result = ClassVector(tuple(solution), lattice)
    logger.debug(f"Solved class from {len(targets)} pairings: {format_class(result)}")
    return result


def induced_gram(basis: Sequence[ClassVector], lattice: Lattice) -> List[List[Fraction]]:
    """Gram matrix of a list of classes."""
    return [[pair(a, b, lattice) for b in basis] for a in basis]


def rank_of(vectors: Sequence[ClassVector]) -> int:
    """Exact rank of the span of a list of classes."""
    return linear_algebra.rank([v.coeffs for v in vectors])


def format_class(a: ClassVector) -> str:
    """
    Write a class in its basis names, e.g. "4e+f-9k" or "1/2e-1/2f".
    """
    terms = []
    for coeff, name in zip(a.coeffs, a.lattice.basis_names):
        if coeff == 0:
            continue
        if coeff == 1:
            body = name
        elif coeff == -1:
            body = f"-{name}"
        else:
            body = f"{format_fraction(coeff)}{name}"
        if terms and not body.startswith("-"):
            body = "+" + body
        terms.append(body)
    return "".join(terms) if terms else "0"


def parse_class(
    text: str, lattice: Lattice, named: Optional[Dict[str, ClassVector]] = None
) -> ClassVector:
    """
    Parse a named class or a comma-separated coefficient list ("4,1,-9", "1/2,0,-1/2").
    """
    text = text.strip()
    named = named or {}
    if text in named:
        return named[text]
    if text in lattice.basis_names:
        return lattice.basis_vector(text)
    parts = [p for p in text.split(",")]
    if len(parts) != lattice.rank:
        raise UsageError(
            f"Cannot read class {text!r}: not a known name and not {lattice.rank} "
            f"comma-separated coefficients (known names: {sorted(named)})"
        )
    try:
        return lattice.vector(parts)
    except (ValueError, TypeError, ZeroDivisionError) as e:
        raise UsageError(f"Cannot read class {text!r}: {e}")
