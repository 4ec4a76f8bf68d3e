"""
Unit tests for exact rationals and quadratic roots
"""

import pytest
import sys
import os
from fractions import Fraction

# Add repository root to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '../..'))

from conelab.shared.rational import QuadraticRoot, format_fraction, sign, to_fraction


class TestToFraction:
    """Tests for to_fraction"""

    def test_accepts_integers_strings_and_fractions(self):
        """Test the accepted input kinds"""
        assert to_fraction(3) == 3
        assert to_fraction("-1/2") == Fraction(-1, 2)
        assert to_fraction(" 7 ") == 7
        assert to_fraction(Fraction(2, 3)) == Fraction(2, 3)

    def test_refuses_floats(self):
        """Test that inexact inputs are refused"""
        with pytest.raises(TypeError):
            to_fraction(0.5)
        with pytest.raises(TypeError):
            to_fraction(True)

    def test_refuses_decimal_strings(self):
        """Test that decimal notation is not a rational literal"""
        with pytest.raises(ValueError):
            to_fraction("0.5")
        with pytest.raises(ValueError):
            to_fraction("1e3")
        with pytest.raises(ValueError):
            to_fraction("")


class TestFormatFraction:
    """Tests for format_fraction and sign"""

    def test_formats(self):
        """Test integer and p/q output"""
        assert format_fraction(Fraction(4)) == "4"
        assert format_fraction(Fraction(-3, 6)) == "-1/2"
        assert format_fraction(0) == "0"

    def test_sign(self):
        """Test sign of rationals"""
        assert sign(Fraction(-1, 7)) == -1
        assert sign(0) == 0
        assert sign(5) == 1


class TestQuadraticRoot:
    """Tests for QuadraticRoot"""

    def test_ruled_interval_end(self):
        """Test 3 + sqrt(12) lies strictly between 6 and 7"""
        root = QuadraticRoot(p=3, q=1, d=12, den=1)
        assert root > 6
        assert root.compare(7) == -1
        assert root.compare(Fraction(6464, 1000)) == 1
        assert root.compare(Fraction(6465, 1000)) == -1

    def test_burniat_interval_end(self):
        """Test 1 + sqrt(7) against nearby rationals"""
        root = QuadraticRoot(p=1, q=1, d=7, den=1)
        assert root.compare(Fraction(3645, 1000)) == 1
        assert root.compare(Fraction(3646, 1000)) == -1

    def test_exact_equality_for_square_radicand(self):
        """Test compare returns 0 when the root is rational"""
        root = QuadraticRoot(p=1, q=2, d=Fraction(9, 4), den=2)
        assert root.compare(2) == 0

    def test_negative_q(self):
        """Test roots with a negative square-root coefficient"""
        root = QuadraticRoot(p=3, q=-1, d=2, den=1)
        assert root > Fraction(158, 100)
        assert root.compare(Fraction(159, 100)) == -1

    def test_lower_bound_is_below_and_close(self):
        """Test lower_bound never exceeds the root and converges"""
        root = QuadraticRoot(p=3, q=1, d=12, den=1)
        for bits in (1, 8, 32, 64):
            lower = root.lower_bound(bits)
            assert root.compare(lower) >= 0
            assert root.compare(lower + Fraction(4, 1 << bits)) < 0

    def test_lower_bound_negative_q(self):
        """Test lower_bound with q < 0 rounds the right way"""
        root = QuadraticRoot(p=3, q=-1, d=2, den=1)
        lower = root.lower_bound(16)
        assert root.compare(lower) >= 0

    def test_rejects_bad_parameters(self):
        """Test negative radicand and non-positive denominator"""
        with pytest.raises(ValueError):
            QuadraticRoot(p=0, q=1, d=-1, den=1)
        with pytest.raises(ValueError):
            QuadraticRoot(p=0, q=1, d=2, den=0)

    def test_str(self):
        """Test the symbolic rendering"""
        assert str(QuadraticRoot(p=3, q=1, d=12, den=1)) == "(3 + 1*sqrt(12))"
        assert str(QuadraticRoot(p=1, q=1, d=2, den=3)) == "(1 + 1*sqrt(2))/3"
