"""
Unit tests for the lattice core
"""

import pytest
import numpy as np
import sys
import os
from fractions import Fraction

# Add repository root to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '../..'))

from config.constants import BIDISK_BASIS, BIDISK_GRAM, BURNIAT_BASIS, BURNIAT_GRAM, RULED_BASIS, RULED_GRAM
from conelab.exceptions import (
    AmbiguousSolutionError,
    DimensionError,
    DomainError,
    NoSolutionError,
    UsageError,
)
from conelab.lattice import (
    PARITY_EVEN,
    PARITY_ODD,
    Lattice,
    format_class,
    in_positive_cone,
    induced_gram,
    pair,
    parity,
    parse_class,
    rank_of,
    same_component,
    self_int,
    signature,
    solve_from_pairings,
)


@pytest.fixture
def ruled():
    return Lattice(RULED_GRAM, RULED_BASIS)


def random_unimodular(rng, n, steps=6):
    """Product of random elementary integer matrices"""
    u = np.identity(n, dtype=object)
    for _ in range(steps):
        i, j = rng.choice(n, size=2, replace=False) if n > 1 else (0, 0)
        op = np.identity(n, dtype=object)
        kind = rng.integers(0, 3)
        if n == 1 or kind == 0:
            op[i][i] = -1
        elif kind == 1:
            op[i][j] = int(rng.integers(-2, 3))
        else:
            op[[i, j]] = op[[j, i]]
        u = u.dot(op)
    return u


class TestLattice:
    """Tests for Lattice construction"""

    def test_valid(self, ruled):
        """Test the ruled lattice"""
        assert ruled.rank == 3
        assert ruled.basis_names == ("e", "f", "k")

    def test_rejects_asymmetric(self):
        """Test gram[0][1] != gram[1][0]"""
        with pytest.raises(DimensionError, match="not symmetric"):
            Lattice([[1, 2], [3, -1]], ["a", "b"])

    def test_rejects_non_square(self):
        """Test a ragged Gram matrix"""
        with pytest.raises(DimensionError):
            Lattice([[1, 0], [0]], ["a", "b"])

    def test_rejects_bad_names(self):
        """Test duplicate, empty and miscounted basis names"""
        with pytest.raises(DimensionError):
            Lattice([[1, 0], [0, -1]], ["a", "a"])
        with pytest.raises(DimensionError):
            Lattice([[1, 0], [0, -1]], ["a", ""])
        with pytest.raises(DimensionError):
            Lattice([[1, 0], [0, -1]], ["a"])

    def test_rejects_non_integral_entries(self):
        """Test fractional, float and bool Gram entries are refused, not truncated"""
        for bad in (Fraction(3, 2), 1.5, 1.0, True):
            with pytest.raises(DimensionError, match="must be integers"):
                Lattice([[bad, 0], [0, -1]], ["a", "b"])

    def test_accepts_integral_entries(self):
        """Test Fractions with denominator 1 and numpy integers are kept exactly"""
        lattice = Lattice([[Fraction(3), np.int64(0)], [0, -1]], ["a", "b"])
        assert lattice.gram == ((3, 0), (0, -1))
        assert all(type(x) is int for row in lattice.gram for x in row)

    def test_unknown_basis_name(self, ruled):
        """Test basis_vector with an unknown name"""
        with pytest.raises(DimensionError):
            ruled.basis_vector("h")


class TestClassVector:
    """Tests for ClassVector arithmetic"""

    def test_arithmetic(self, ruled):
        """Test sums, scalars and division"""
        e, f, k = ruled.basis()
        x = 4 * e + f - 9 * k
        assert x.coeffs == (4, 1, -9)
        assert (x / 2).coeffs == (2, Fraction(1, 2), Fraction(-9, 2))
        assert -(e - k) == k - e
        assert (e - e).is_zero

    def test_integrality(self, ruled):
        """Test is_integral"""
        e, f, k = ruled.basis()
        assert (e + f).is_integral
        assert not ((e + f) / 2).is_integral

    def test_wrong_length(self, ruled):
        """Test a coefficient vector of the wrong length"""
        with pytest.raises(DimensionError):
            ruled.vector([1, 2])

    def test_mixing_lattices(self, ruled):
        """Test classes from different lattices cannot be added or paired"""
        other = Lattice([[1, 0, 0], [0, -1, 0], [0, 0, -1]], ["h", "e1", "e2"])
        with pytest.raises(DimensionError):
            ruled.basis_vector("e") + other.basis_vector("h")
        with pytest.raises(DimensionError):
            pair(ruled.basis_vector("e"), other.basis_vector("h"), ruled)


class TestPairing:
    """Tests for pair and self_int"""

    def test_ruled_values(self, ruled):
        """Test the pairings the ruled model is built on"""
        e, f, k = ruled.basis()
        e1, e2 = e, f - e
        r = f - k
        assert pair(e1, e2, ruled) == 1
        assert self_int(f, ruled) == 0
        assert self_int(k, ruled) == -1
        assert self_int(r, ruled) == 3
        assert pair(r, e1, ruled) == 1
        assert pair(r, e2, ruled) == 1
        assert pair(r, e - 2 * k, ruled) == 3

    def test_main_class(self, ruled):
        """Test a = 4e + f - 9k"""
        e, f, k = ruled.basis()
        a = 4 * e + f - 9 * k
        assert self_int(a, ruled) == 11
        assert pair(a, e, ruled) == 5
        assert pair(a, f - e, ruled) == 13
        assert pair(a, e - 2 * k, ruled) == -1

    def test_symmetry_and_bilinearity(self, ruled):
        """Test pair is symmetric and bilinear on random rational classes"""
        rng = np.random.default_rng(7)
        for _ in range(50):
            a, b, c = (
                ruled.vector([Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 5))) for _ in range(3)])
                for _ in range(3)
            )
            lam = Fraction(int(rng.integers(-5, 6)), int(rng.integers(1, 4)))
            assert pair(a, b, ruled) == pair(b, a, ruled)
            assert pair(a + lam * b, c, ruled) == pair(a, c, ruled) + lam * pair(b, c, ruled)

    def test_induced_gram(self, ruled):
        """Test the Gram matrix of the sphere classes"""
        e, f, k = ruled.basis()
        assert induced_gram([e, f - e], ruled) == [[-1, 1], [1, -1]]


class TestSignatureParity:
    """Tests for signature and parity"""

    def test_signatures(self, ruled):
        """Test the built-in Gram matrices are hyperbolic"""
        assert signature(ruled).as_tuple() == (1, 2, 0)
        assert signature(Lattice(BURNIAT_GRAM, BURNIAT_BASIS)).as_tuple() == (1, 1, 0)
        assert signature(Lattice(BIDISK_GRAM, BIDISK_BASIS)).as_tuple() == (1, 1, 0)
        assert signature(ruled).b_plus == 1

    def test_degenerate_signature(self):
        """Test a degenerate form reports its radical"""
        report = signature(Lattice([[0, 0], [0, 1]], ["a", "b"]))
        assert report.as_tuple() == (1, 0, 1)
        assert not report.is_hyperbolic()

    def test_parity(self, ruled):
        """Test odd and even forms"""
        assert parity(ruled) == PARITY_ODD
        assert parity(Lattice(BIDISK_GRAM, BIDISK_BASIS)) == PARITY_EVEN
        assert parity(Lattice([[0, 1], [1, 0]], ["a", "b"])) == PARITY_EVEN

    @pytest.mark.property
    def test_invariant_under_unimodular_change(self):
        """Test signature and parity survive random unimodular basis changes"""
        rng = np.random.default_rng(20100611)
        grams = [
            RULED_GRAM,
            BURNIAT_GRAM,
            BIDISK_GRAM,
            [[1]],
            [[1, 0, 0], [0, -1, 0], [0, 0, -1]],
        ]
        for gram in grams:
            n = len(gram)
            names = [f"b{i}" for i in range(n)]
            original = Lattice(gram, names)
            g = np.array(gram, dtype=object)
            for _ in range(100):
                u = random_unimodular(rng, n)
                changed = Lattice(u.T.dot(g).dot(u).tolist(), names)
                assert signature(changed) == signature(original)
                assert parity(changed) == parity(original)


class TestCones:
    """Tests for in_positive_cone and same_component"""

    def test_positive_cone(self, ruled):
        """Test positive cone membership"""
        e, f, k = ruled.basis()
        assert in_positive_cone(f - k, ruled)
        assert not in_positive_cone(f, ruled)
        assert not in_positive_cone(ruled.zero(), ruled)

    def test_same_component(self, ruled):
        """Test component comparison"""
        e, f, k = ruled.basis()
        r = f - k
        assert same_component(4 * e + f - 9 * k, r, ruled)
        assert not same_component(-r, r, ruled)

    def test_same_component_domain(self, ruled):
        """Test non-positive squares are refused"""
        e, f, k = ruled.basis()
        with pytest.raises(DomainError):
            same_component(f, f - k, ruled)

    def test_same_component_needs_hyperbolic(self):
        """Test lattices with b+ != 1 are refused"""
        lattice = Lattice([[1, 0], [0, 1]], ["a", "b"])
        a, b = lattice.basis()
        with pytest.raises(DomainError):
            same_component(a, b, lattice)


class TestSolveFromPairings:
    """Tests for solve_from_pairings"""

    def test_delta(self, ruled):
        """Test delta.e = 0, delta.f = 4, delta.k = 0 gives 2e - 2k"""
        e, f, k = ruled.basis()
        delta = solve_from_pairings([(e, 0), (f, 4), (k, 0)], ruled)
        assert delta == 2 * e - 2 * k
        assert self_int(delta, ruled) == 0

    def test_ambiguous(self, ruled):
        """Test two pairings leave a one-dimensional kernel"""
        e, f, k = ruled.basis()
        with pytest.raises(AmbiguousSolutionError) as exc:
            solve_from_pairings([(e, 0), (f, 4)], ruled)
        assert exc.value.kernel_dimension == 1

    def test_inconsistent(self, ruled):
        """Test contradictory pairings"""
        e, f, k = ruled.basis()
        with pytest.raises(NoSolutionError):
            solve_from_pairings([(e, 0), (e, 1), (f, 4), (k, 0)], ruled)

    @pytest.mark.property
    def test_round_trip(self, ruled):
        """Test solve_from_pairings recovers 500 random rational classes"""
        rng = np.random.default_rng(11)
        basis = ruled.basis()
        for _ in range(500):
            x = ruled.vector(
                [Fraction(int(rng.integers(-50, 51)), int(rng.integers(1, 13))) for _ in range(3)]
            )
            targets = [(b, pair(x, b, ruled)) for b in basis]
            assert solve_from_pairings(targets, ruled) == x


class TestFormatParse:
    """Tests for format_class, parse_class and rank_of"""

    def test_format(self, ruled):
        """Test class rendering"""
        e, f, k = ruled.basis()
        assert format_class(4 * e + f - 9 * k) == "4e+f-9k"
        assert format_class(2 * e - 2 * k) == "2e-2k"
        assert format_class((e - f) / 2) == "1/2e-1/2f"
        assert format_class(ruled.zero()) == "0"

    def test_parse(self, ruled):
        """Test names and coefficient lists"""
        e, f, k = ruled.basis()
        assert parse_class("k", ruled) == k
        assert parse_class("4,1,-9", ruled) == 4 * e + f - 9 * k
        assert parse_class("1/2, 0, -1/2", ruled) == (e - k) / 2
        assert parse_class("r", ruled, {"r": f - k}) == f - k

    def test_parse_errors(self, ruled):
        """Test unreadable classes are usage errors"""
        with pytest.raises(UsageError):
            parse_class("q", ruled)
        with pytest.raises(UsageError):
            parse_class("1,2", ruled)
        with pytest.raises(UsageError):
            parse_class("1,x,2", ruled)

    def test_rank_of(self, ruled):
        """Test rank of class lists"""
        e, f, k = ruled.basis()
        assert rank_of([e, f - e]) == 2
        assert rank_of([e, 2 * e]) == 1
