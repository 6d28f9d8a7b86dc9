"""Custom exceptions for the blockreg project."""

from typing import List, Optional


class BlockregError(Exception):
    """Base exception class for blockreg."""
    def __init__(self, message: str, suggestions: Optional[List[str]] = None) -> None:
        super().__init__(message)
        self.message = message
        self.suggestions = suggestions or []

    def __str__(self) -> str:
        """Format error message with suggestions."""
        msg = self.message
        if self.suggestions:
            msg += "\n\nSuggestions:"
            for i, suggestion in enumerate(self.suggestions, 1):
                msg += f"\n  {i}. {suggestion}"
        return msg


class ExpressionParseError(BlockregError):
    """Raised when a space or sheaf expression cannot be parsed."""

    def __init__(
        self,
        message: str,
        line: int = 1,
        column: int = 1,
        token: str = "",
        suggestions: Optional[List[str]] = None,
    ) -> None:
        super().__init__(f"line {line}, column {column}: {message}", suggestions)
        self.detail = message
        self.line = line
        self.column = column
        self.token = token

    def at_line(self, line: int) -> "ExpressionParseError":
        """The same error reported at another line, e.g. of a manifest file."""
        return ExpressionParseError(self.detail, line, self.column, self.token, self.suggestions)

    @staticmethod
    def unexpected_token(token: str, line: int, column: int) -> "ExpressionParseError":
        """Create error for a token the grammar does not accept here."""
        return ExpressionParseError(
            f"unexpected token '{token}'",
            line=line,
            column=column,
            token=token,
            suggestions=[
                "Terms look like 'O(-1,0)', '2*O(1,1)' or 'Om(1,1)#O(0)'",
                "Separate box-product factors with '#' and summands with '+'",
                "Multiplicities are written before the term followed by '*'",
            ]
        )

    @staticmethod
    def unexpected_end(line: int, column: int) -> "ExpressionParseError":
        """Create error for an expression that stops too early."""
        return ExpressionParseError(
            "unexpected end of expression",
            line=line,
            column=column,
            suggestions=[
                "Check for a missing closing parenthesis",
                "Check for a trailing '+', '*' or '#'",
            ]
        )

    @staticmethod
    def bad_dimension(token: str, column: int) -> "ExpressionParseError":
        """Create error for a projective factor of dimension below one."""
        return ExpressionParseError(
            f"projective factor '{token}' must have dimension at least 1",
            column=column,
            token=token,
            suggestions=[
                "Spaces are written as factors 'P<n>' joined by 'x', e.g. 'P2xP1'",
                "Every factor dimension n must satisfy n >= 1",
            ]
        )


class SheafError(BlockregError):
    """Raised when sheaf data is malformed or outside the representable class."""

    @staticmethod
    def exterior_power_out_of_range(n: int, p: int) -> "SheafError":
        """Create error for an exterior power outside [0, n]."""
        return SheafError(
            f"Exterior power p={p} is outside [0, {n}] on P^{n}",
            suggestions=[
                "Omega^p and wedge^p T only exist for 0 <= p <= n",
                "Use the zero sheaf '0' if a formally vanishing term is intended",
            ]
        )

    @staticmethod
    def arity_mismatch(expected: int, got: int, where: str = "") -> "SheafError":
        """Create error for a term whose factor count differs from the space."""
        location = f" in {where}" if where else ""
        return SheafError(
            f"Expected {expected} factor(s){location}, got {got}",
            suggestions=[
                "Every box product needs exactly one factor per projective factor",
                "Line bundles may be abbreviated as O(a1,...,ar) with r entries",
            ]
        )

    @staticmethod
    def non_positive_multiplicity(multiplicity: int) -> "SheafError":
        """Create error for a zero or negative multiplicity."""
        return SheafError(
            f"Multiplicity must be positive, got {multiplicity}",
            suggestions=[
                "Drop the term instead of writing a zero multiplicity",
                "Split sheaves are direct sums; negative multiplicities are K0 classes",
            ]
        )

    @staticmethod
    def not_line_bundle_sum(description: str) -> "SheafError":
        """Create error for a sheaf argument that is not a sum of line bundles."""
        return SheafError(
            f"Expected a direct sum of line bundles, got {description}",
            suggestions=[
                "Regularity and Ext computations accept sums of O(a1,...,ar) only",
                "Omega and wedge-T factors are allowed as test objects, not as F",
            ]
        )


class ComputationError(BlockregError):
    """Raised when an exact computation cannot be carried out."""

    @staticmethod
    def singular_system(context: str) -> "ComputationError":
        """Create error for a linear system without a unique solution."""
        return ComputationError(
            f"Singular linear system while computing {context}",
            suggestions=[
                "The collection involved is not a full exceptional collection",
            ]
        )

    @staticmethod
    def non_integral_solution(context: str) -> "ComputationError":
        """Create error for a K0 solve that left the integer lattice."""
        return ComputationError(
            f"Non-integral solution while computing {context}",
            suggestions=[
                "The window is not unimodular with respect to the fundamental basis",
            ]
        )

    @staticmethod
    def not_regular(m: int, witness: str) -> "ComputationError":
        """Create error for a resolution requested below the regularity."""
        return ComputationError(
            f"Sheaf is not {m}-regular ({witness}); the resolution formula does not apply",
            suggestions=[
                "Compute the block regularity first with 'reg --kind block'",
                "Any m at or above the regularity is accepted",
            ]
        )


class SearchCapExceeded(ComputationError):
    """Raised when a least-m search leaves its configured bracket."""

    def __init__(self, what: str, cap: int) -> None:
        super().__init__(
            f"Search for {what} exceeded the cap of {cap} steps",
            suggestions=[
                "Raise the cap with --search-cap",
                "Check the input; split sheaves always have finite regularity",
            ]
        )
        self.cap = cap


class ValidationError(BlockregError):
    """Raised when an option value is invalid."""

    @staticmethod
    def not_aligned(m: int, d: int) -> "ValidationError":
        """Create error for a non-aligned m on a product space."""
        return ValidationError(
            f"m={m} is not aligned: products accept m = k*{d + 1} - {d} only",
            suggestions=[
                f"Aligned values near m are {((m + d) // (d + 1)) * (d + 1) - d} "
                f"and {((m + d) // (d + 1) + 1) * (d + 1) - d}",
                "Non-aligned windows have no closed-form dual collection",
            ]
        )

    @staticmethod
    def invalid_vector(text: str, expected: int) -> "ValidationError":
        """Create error for a malformed integer vector."""
        return ValidationError(
            f"Invalid integer vector: '{text}'",
            suggestions=[
                f"Write {expected} comma-separated integers, e.g. "
                f"'{','.join(['0'] * expected)}'",
                "Vectors starting with '-' must be passed as --base=-1,0",
            ]
        )


class FileOperationError(BlockregError):
    """Raised when there's an error with file operations."""

    @staticmethod
    def file_not_found(file_path: str) -> "FileOperationError":
        """Create error for missing file."""
        return FileOperationError(
            f"File not found: '{file_path}'",
            suggestions=[
                "Check if the file path is correct",
                "Verify the file exists in the specified location",
                "Use an absolute path instead of a relative path",
                "Check file permissions (readable by current user)"
            ]
        )

    @staticmethod
    def cannot_read(file_path: str, reason: str) -> "FileOperationError":
        """Create error for file read failure."""
        return FileOperationError(
            f"Cannot read from '{file_path}': {reason}",
            suggestions=[
                "Check if you have read permissions for the file",
                "Verify the file exists and is not corrupted",
                "Ensure the file is UTF-8 text with one expression per line"
            ]
        )
