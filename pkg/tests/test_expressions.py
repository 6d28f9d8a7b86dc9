"""Tests for the space and sheaf expression language."""

import unittest

from hypothesis import given
from hypothesis import strategies as st

from blockreg.errors import ExpressionParseError, ValidationError
from blockreg.expressions import (
    format_box,
    format_sheaf,
    parse_box,
    parse_expression,
    parse_sheaf,
    parse_space,
)
from blockreg.factor_cohomology import FactorSheaf
from blockreg.product_sheaves import BoxProduct, SplitSheaf, Space
from blockreg.validation import MAX_EXPRESSION_LENGTH

P2 = Space((2,))
P1xP1 = Space((1, 1))
P2xP1 = Space((2, 1))


class TestParseSpace(unittest.TestCase):
    """Test space parsing."""

    def test_products(self):
        """Test single factors and products."""
        self.assertEqual(parse_space("P2"), P2)
        self.assertEqual(parse_space("P2xP1"), P2xP1)
        self.assertEqual(parse_space("P1xP1xP3").dims, (1, 1, 3))

    def test_zero_dimension(self):
        """Test that a P0 factor is located."""
        with self.assertRaises(ExpressionParseError) as ctx:
            parse_space("P2xP0")
        self.assertEqual(ctx.exception.column, 4)
        self.assertEqual(ctx.exception.token, "P0")
        self.assertIn("projective factor 'P0'", str(ctx.exception))

    def test_garbage(self):
        """Test that a bad first character is reported at column 1."""
        with self.assertRaises(ExpressionParseError) as ctx:
            parse_space("Q2")
        self.assertEqual(ctx.exception.column, 1)

    def test_trailing_separator(self):
        """Test that a dangling 'x' is refused."""
        with self.assertRaises(ExpressionParseError):
            parse_space("P2x")


class TestParseSheaf(unittest.TestCase):
    """Test sheaf parsing and normalization."""

    def test_line_bundle_sum(self):
        """Test shorthand line bundles with multiplicities."""
        F = parse_sheaf("O(-1,0) + 2*O(2,-1)", P1xP1)
        self.assertEqual(
            F, SplitSheaf.from_terms([
                (1, BoxProduct.line_bundle(P1xP1, (-1, 0))),
                (2, BoxProduct.line_bundle(P1xP1, (2, -1))),
            ])
        )
        self.assertEqual(format_sheaf(F), "O(-1,0) + 2*O(2,-1)")

    def test_box_product(self):
        """Test factor-wise box products."""
        F = parse_sheaf("Om(1,1)#O(0)", P2xP1)
        box = BoxProduct((FactorSheaf(2, 1, 1), FactorSheaf.line(1, 0)))
        self.assertEqual(F, SplitSheaf.of(box))
        self.assertEqual(format_sheaf(F), "Om(1,1)#O(0)")

    def test_normalization(self):
        """Test that top powers and wedge powers of T are rewritten."""
        self.assertEqual(format_sheaf(parse_sheaf("LT(1,0)#O(0)", P1xP1)), "O(2,0)")
        self.assertEqual(format_sheaf(parse_sheaf("Om(2,0)", P2)), "O(-3)")
        self.assertEqual(format_sheaf(parse_sheaf("LT(1,0)", P2)), "Om(1,3)")

    def test_zero(self):
        """Test the zero sheaf literal."""
        self.assertTrue(parse_sheaf("0", P1xP1).is_zero)
        self.assertEqual(parse_expression("0").terms, ())

    def test_repeated_terms_merge(self):
        """Test that equal summands merge."""
        self.assertEqual(format_sheaf(parse_sheaf("O(1,1) + O(1,1)", P1xP1)), "2*O(1,1)")

    def test_syntax_error(self):
        """Test that a dangling '+' is a parse error."""
        with self.assertRaises(ExpressionParseError) as ctx:
            parse_sheaf("O(1,0) +", P1xP1)
        self.assertEqual(ctx.exception.line, 1)

    def test_unknown_atom(self):
        """Test that an unknown constructor is reported at its column."""
        with self.assertRaises(ExpressionParseError) as ctx:
            parse_sheaf("X(1,0)", P1xP1)
        self.assertEqual(ctx.exception.column, 1)
        self.assertIn("unexpected token", str(ctx.exception))

    def test_arity_mismatch(self):
        """Test shorthand with the wrong number of entries."""
        with self.assertRaises(ExpressionParseError) as ctx:
            parse_sheaf("O(1,0,2)", P1xP1)
        self.assertIn("Expected 2 factor(s)", str(ctx.exception))

    def test_factor_with_two_entries(self):
        """Test that a factor of a box product takes one twist."""
        with self.assertRaises(ExpressionParseError) as ctx:
            parse_sheaf("O(1)#O(2,3)", P1xP1)
        self.assertEqual(ctx.exception.column, 6)

    def test_zero_multiplicity(self):
        """Test that multiplicities must be positive."""
        with self.assertRaises(ExpressionParseError) as ctx:
            parse_sheaf("0*O(1,1)", P1xP1)
        self.assertIn("Multiplicity must be positive, got 0", str(ctx.exception))
        self.assertEqual(ctx.exception.column, 1)

    def test_exterior_power_range(self):
        """Test that Om(p,k) needs p <= n at the right column."""
        with self.assertRaises(ExpressionParseError) as ctx:
            parse_sheaf("O(1,1) + Om(3,0)#O(0)", P2xP1)
        self.assertEqual(ctx.exception.column, 10)
        self.assertIn("p=3 is outside [0, 2]", str(ctx.exception))

    def test_too_long(self):
        """Test the expression length limit."""
        with self.assertRaises(ValidationError):
            parse_sheaf("O(0,0) + " * MAX_EXPRESSION_LENGTH + "O(0,0)", P1xP1)

    @given(st.lists(st.tuples(st.integers(-9, 9), st.integers(-9, 9)), min_size=1, max_size=4))
    def test_format_parses_back(self, degrees):
        """Test that the rendering of a sheaf parses to the same sheaf."""
        F = SplitSheaf.line_bundles(P1xP1, degrees)
        self.assertEqual(parse_sheaf(format_sheaf(F), P1xP1), F)


class TestParseBox(unittest.TestCase):
    """Test single box product parsing."""

    def test_single_box(self):
        """Test a box product without multiplicity."""
        self.assertEqual(parse_box("O(1,1)", P1xP1), BoxProduct.line_bundle(P1xP1, (1, 1)))

    def test_rejects_sums(self):
        """Test that sums and multiplicities are refused."""
        with self.assertRaises(ExpressionParseError):
            parse_box("2*O(1,1)", P1xP1)
        with self.assertRaises(ExpressionParseError):
            parse_box("O(1,1) + O(0,0)", P1xP1)

    def test_format_box_parses_back(self):
        """Test that a rendered box product parses to the same box."""
        box = BoxProduct((FactorSheaf(2, 1, 1), FactorSheaf.line(1, -2)))
        self.assertEqual(format_box(box), "Om(1,1)#O(-2)")
        self.assertEqual(parse_box(format_box(box), P2xP1), box)


if __name__ == '__main__':
    unittest.main()
