"""Tests for the combinatorial helpers."""

import math
import unittest

from hypothesis import given
from hypothesis import strategies as st

from blockreg.errors import ValidationError
from blockreg.utils import binomial, compositions, convolve, lattice_box, parse_int_vector


class TestBinomial(unittest.TestCase):
    """Test the polynomial binomial coefficient."""

    def test_non_negative_top(self):
        """Test agreement with the usual coefficient."""
        self.assertEqual(binomial(5, 2), 10)
        self.assertEqual(binomial(2, 5), 0)
        self.assertEqual(binomial(0, 0), 1)

    def test_negative_top(self):
        """Test the polynomial extension to negative x."""
        self.assertEqual(binomial(-1, 1), -1)
        self.assertEqual(binomial(-1, 2), 1)
        self.assertEqual(binomial(-3, 2), 6)

    def test_negative_bottom_is_zero(self):
        """Test that k < 0 gives zero."""
        self.assertEqual(binomial(3, -1), 0)
        self.assertEqual(binomial(-3, -1), 0)

    def test_rejects_non_integers(self):
        """Test that floats and bools are refused."""
        with self.assertRaises(TypeError):
            binomial(2.0, 1)
        with self.assertRaises(TypeError):
            binomial(3, True)

    @given(st.integers(-30, 30), st.integers(0, 8))
    def test_pascal_rule(self, x, k):
        """Test Pascal's rule, which holds for every integer x."""
        self.assertEqual(binomial(x + 1, k + 1), binomial(x, k) + binomial(x, k + 1))


class TestConvolve(unittest.TestCase):
    """Test polynomial multiplication."""

    def test_square(self):
        """Test (1 + t)^2."""
        self.assertEqual(convolve((1, 1), (1, 1)), (1, 2, 1))

    def test_empty(self):
        """Test that an empty factor gives an empty product."""
        self.assertEqual(convolve((), (1, 2)), ())


class TestCompositions(unittest.TestCase):
    """Test the weak compositions generator."""

    def test_order(self):
        """Test lexicographic order."""
        self.assertEqual(list(compositions(2, 2)), [(0, 2), (1, 1), (2, 0)])

    def test_single_part(self):
        """Test one part."""
        self.assertEqual(list(compositions(3, 1)), [(3,)])

    def test_negative_total(self):
        """Test that a negative total yields nothing."""
        self.assertEqual(list(compositions(-1, 2)), [])

    @given(st.integers(0, 8), st.integers(1, 4))
    def test_count_and_sums(self, total, parts):
        """Test the stars and bars count and that every tuple sums correctly."""
        result = list(compositions(total, parts))
        self.assertEqual(len(result), math.comb(total + parts - 1, parts - 1))
        self.assertEqual(len(set(result)), len(result))
        for values in result:
            self.assertEqual(len(values), parts)
            self.assertEqual(sum(values), total)
            self.assertTrue(all(v >= 0 for v in values))


class TestLatticeBox(unittest.TestCase):
    """Test integer box enumeration."""

    def test_box(self):
        """Test a 2 by 2 box."""
        self.assertEqual(
            list(lattice_box((-1, -1), (0, 0))),
            [(-1, -1), (-1, 0), (0, -1), (0, 0)],
        )


class TestParseIntVector(unittest.TestCase):
    """Test integer vector parsing for command-line options."""

    def test_forms(self):
        """Test the accepted spellings."""
        self.assertEqual(parse_int_vector("1,-2", 2), (1, -2))
        self.assertEqual(parse_int_vector("(1, -2)", 2), (1, -2))
        self.assertEqual(parse_int_vector("O(-1,0)", 2), (-1, 0))
        self.assertEqual(parse_int_vector(" 3 ", 1), (3,))

    def test_unbalanced_parenthesis(self):
        """Test that a missing parenthesis is refused."""
        with self.assertRaises(ValidationError):
            parse_int_vector("(1,2", 2)

    def test_wrong_length(self):
        """Test that the length must match."""
        with self.assertRaises(ValidationError):
            parse_int_vector("1,2", 3)

    def test_garbage(self):
        """Test that non-numeric text is refused."""
        with self.assertRaises(ValidationError):
            parse_int_vector("a,b", 2)


if __name__ == '__main__':
    unittest.main()
