"""
Utility functions for the application
"""

from .errors import (
    EXIT_IO,
    EXIT_OK,
    EXIT_PARTIAL,
    EXIT_USAGE,
    EXIT_VALIDATION,
    InvalidArgumentError,
    OrderingError,
    ValidationError,
)

from .validators import (
    parse_decimal,
    require,
    validate_confidence,
    validate_non_negative,
    validate_positive,
    validate_timestamp,
)

# file_utils depends on sensing.models; import it directly to avoid a cycle

__all__ = [
    # Errors
    'EXIT_IO',
    'EXIT_OK',
    'EXIT_PARTIAL',
    'EXIT_USAGE',
    'EXIT_VALIDATION',
    'InvalidArgumentError',
    'OrderingError',
    'ValidationError',

    # Validators
    'parse_decimal',
    'require',
    'validate_confidence',
    'validate_non_negative',
    'validate_positive',
    'validate_timestamp',
]
