"""
Input validation for blockreg.

Guards the only file input (the `--manifest` batch file) and every user string
that ends up in an error message.
"""

from pathlib import Path
from typing import Any, List, Tuple

from blockreg.errors import FileOperationError, ValidationError
from blockreg.logging_config import get_logger

logger = get_logger(__name__)


# Input limits
MAX_PATH_LENGTH = 4096
MAX_MANIFEST_BYTES = 1024 * 1024
MAX_MANIFEST_LINES = 10000
MAX_EXPRESSION_LENGTH = 2000

COMMENT_PREFIX = ";"


class PathValidator:
    """Validates file paths before they are opened."""

    @staticmethod
    def validate_input_path(file_path: str) -> Path:
        """
        Validate a manifest path for accessibility and size.

        Args:
            file_path: The file path to validate

        Returns:
            Path: Validated and resolved Path object

        Raises:
            FileOperationError: If the path is invalid, missing, a directory,
                too large or empty
        """
        if len(file_path) > MAX_PATH_LENGTH:
            raise FileOperationError(
                f"Path too long (max {MAX_PATH_LENGTH} characters): {file_path[:100]}..."
            )

        try:
            path = Path(file_path).resolve()
        except (ValueError, OSError) as e:
            raise FileOperationError(f"Invalid path '{file_path}': {str(e)}")

        if not path.exists():
            raise FileOperationError.file_not_found(str(path))

        if not path.is_file():
            raise FileOperationError(f"Path is not a file: {path}")

        file_size = path.stat().st_size
        if file_size > MAX_MANIFEST_BYTES:
            raise FileOperationError(
                f"Manifest too large: {file_size} bytes (max {MAX_MANIFEST_BYTES})"
            )
        if file_size == 0:
            raise FileOperationError(f"File is empty: {path}")

        return path


class ManifestReader:
    """Reads batch files holding one sheaf expression per line."""

    @staticmethod
    def read_expressions(file_path: str) -> List[Tuple[int, str]]:
        """
        Return (line number, expression) for every non-blank, non-comment line.

        Comments start with ';' since '#' separates box-product factors.

        Raises:
            FileOperationError: If the file cannot be read or has too many lines
        """
        path = PathValidator.validate_input_path(file_path)
        try:
            text = path.read_text(encoding="utf-8")
        except UnicodeDecodeError as e:
            raise FileOperationError.cannot_read(str(path), f"not UTF-8 ({e.reason})")
        except OSError as e:
            raise FileOperationError.cannot_read(str(path), str(e))

        lines = text.splitlines()
        if len(lines) > MAX_MANIFEST_LINES:
            raise FileOperationError(
                f"Manifest has {len(lines)} lines (max {MAX_MANIFEST_LINES}): {path}"
            )

        expressions = []
        for number, line in enumerate(lines, 1):
            stripped = line.strip()
            if not stripped or stripped.startswith(COMMENT_PREFIX):
                continue
            expressions.append((number, stripped))
        logger.debug(f"Read {len(expressions)} expression(s) from {path}")
        return expressions


class InputSanitizer:
    """Makes user input safe to echo back."""

    @staticmethod
    def sanitize_for_display(value: Any, max_length: int = 200) -> str:
        """
        Sanitize any value for safe display in output.

        Args:
            value: The value to sanitize
            max_length: Maximum length for display

        Returns:
            str: Sanitized string safe for display
        """
        if value is None:
            return "None"

        sanitized = ''.join(
            char for char in str(value)
            if ord(char) >= 32 or char == '\t'
        )

        if len(sanitized) > max_length:
            sanitized = sanitized[:max_length] + "..."

        return sanitized

    @staticmethod
    def check_expression_length(text: str) -> str:
        """
        Reject expressions longer than MAX_EXPRESSION_LENGTH.

        Raises:
            ValidationError: If the expression is too long
        """
        if len(text) > MAX_EXPRESSION_LENGTH:
            raise ValidationError(
                f"Expression too long ({len(text)} characters, max {MAX_EXPRESSION_LENGTH}): "
                f"{InputSanitizer.sanitize_for_display(text, 60)}"
            )
        return text
