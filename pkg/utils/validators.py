"""
Input validation utilities
"""
import math
import numbers

from utils.errors import InvalidArgumentError


def _is_number(value):
    return isinstance(value, numbers.Real) and not isinstance(value, bool)


def validate_positive(value, field_name):
    """
    Validate a strictly positive, finite real number

    Args:
        value: Value to validate
        field_name (str): Name used in the error message

    Returns:
        tuple: (bool, str) - (is_valid, error_message)
    """
    if not _is_number(value):
        return False, f"{field_name} must be a number"

    if not math.isfinite(value):
        return False, f"{field_name} must be finite"

    if value <= 0:
        return False, f"{field_name} must be greater than 0"

    return True, ""


def validate_non_negative(value, field_name):
    """
    Validate a finite real number >= 0

    Returns:
        tuple: (bool, str) - (is_valid, error_message)
    """
    if not _is_number(value) or not math.isfinite(value):
        return False, f"{field_name} must be a finite number"

    if value < 0:
        return False, f"{field_name} must not be negative"

    return True, ""


def validate_confidence(value, field_name="confidence"):
    """Validate a detector confidence in [0, 1]"""
    if not _is_number(value) or not math.isfinite(value):
        return False, f"{field_name} must be a finite number"

    if value < 0 or value > 1:
        return False, f"{field_name} must be between 0 and 1"

    return True, ""


def validate_timestamp(value, field_name="timestamp_ms"):
    """Validate a non-negative integer millisecond timestamp"""
    if not isinstance(value, int) or isinstance(value, bool):
        return False, f"{field_name} must be an integer"

    if value < 0:
        return False, f"{field_name} must not be negative"

    return True, ""


def require(check, value, field_name):
    """
    Run a validator and raise InvalidArgumentError on failure

    Args:
        check: One of the validate_* functions above
        value: Value to validate
        field_name (str): Parameter name reported in the error

    Returns:
        The value, unchanged
    """
    is_valid, error = check(value, field_name)
    if not is_valid:
        raise InvalidArgumentError(field_name, error.removeprefix(f"{field_name} "))
    return value


def parse_decimal(text):
    """
    Parse one decimal number from a text line ('.' separator, no thousands)

    Args:
        text (str): Raw line

    Returns:
        tuple: (float or None, str) - (value, error_message)
    """
    if text is None or not text.strip():
        return None, "empty line"

    cleaned = text.strip()
    try:
        value = float(cleaned)
    except ValueError:
        return None, f"not a number: {cleaned!r}"

    is_valid, error = validate_positive(value, "distance")
    if not is_valid:
        return None, error

    return value, ""
