"""
Accuracy evaluation: percent error and reports
"""

from .report import (
    PercentErrorReport,
    PercentErrorRow,
    format_table,
    percent_error,
    read_pairs_csv,
    summarize,
    write_csv,
)

__all__ = [
    'PercentErrorReport',
    'PercentErrorRow',
    'format_table',
    'percent_error',
    'read_pairs_csv',
    'summarize',
    'write_csv',
]
