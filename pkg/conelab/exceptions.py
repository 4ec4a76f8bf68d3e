"""
Exception hierarchy for ConeLab.

Everything raised on purpose derives from ConeLabError:

- ConeLabError

  - DimensionError          (vector/lattice shape mismatch, unknown basis name)
  - DomainError             (precondition of a cone predicate violated)

    - CurveDoesNotObstructError
    - NotNegativeCurveError

  - NoSolutionError         (inconsistent linear system)
  - AmbiguousSolutionError  (underdetermined linear system)
  - ModelInvalidError       (SurfaceModel invariant violated)
  - CapabilityError         (model lacks data a query needs)
  - CertificationError      (no admissible deformation parameter)
  - OutOfScopeError
  - ModelFileSyntaxError
  - UsageError
  - SelfCheckError          (built-in model failed its own identities)
"""

from typing import Optional


class ConeLabError(Exception):
    """
    The base for all ConeLab exceptions.
    """


class DimensionError(ConeLabError, ValueError):
    """
    A class vector does not fit the lattice it is used with.
    """


class DomainError(ConeLabError, ValueError):
    """
    An input lies outside the domain where a predicate is defined.
    """


class CurveDoesNotObstructError(DomainError):
    """
    The starting class already pairs non-positively with the curve.
    """


class NotNegativeCurveError(DomainError):
    """
    The curve class does not have negative self-intersection.
    """


class NoSolutionError(ConeLabError):
    """
    The prescribed pairings are inconsistent.
    """


class AmbiguousSolutionError(ConeLabError):
    """
    The prescribed pairings do not determine a unique class.
    """

    def __init__(self, message: str, kernel_dimension: int):
        super().__init__(message)
        self.kernel_dimension = kernel_dimension


class ModelInvalidError(ConeLabError):
    """
    A SurfaceModel violates one of its invariants.
    """

    def __init__(self, message: str, field_path: str = ""):
        super().__init__(f"{field_path}: {message}" if field_path else message)
        self.field_path = field_path


class CapabilityError(ConeLabError):
    """
    The model does not carry the data the query needs.
    """


class CertificationError(ConeLabError):
    """
    No admissible deformation parameter was found.
    """

    def __init__(self, message: str, blocking_constraint: Optional[str] = None):
        super().__init__(message)
        self.blocking_constraint = blocking_constraint


class OutOfScopeError(ConeLabError):
    """
    The request is outside the regime the toolkit handles.
    """


class ModelFileSyntaxError(ConeLabError):
    """
    The model file is not well-formed.
    """

    def __init__(self, message: str, line: int = 0, column: int = 0):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class UsageError(ConeLabError):
    """
    Bad command-line or function arguments.
    """


class SelfCheckError(ConeLabError, AssertionError):
    """
    A built-in model failed to reproduce one of its class identities.
    """
