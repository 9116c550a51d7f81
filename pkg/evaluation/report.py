"""
Percent-error metrics and detected-vs-actual reports
"""
import logging
from dataclasses import dataclass, field

import pandas as pd

from utils.errors import InvalidArgumentError, ValidationError
from utils.validators import require, validate_positive

CSV_COLUMNS = ['label', 'detected_m', 'actual_m', 'difference_m', 'percent_error']

# Internal precision; display uses 2 decimals
REPORT_DECIMALS = 4
DISPLAY_DECIMALS = 2


def percent_error(detected, actual, denominator='detected'):
    """
    |detected - actual| / detected x 100

    Args:
        detected (float): Measured (experimental) value, > 0
        actual (float): Reference (true) value, > 0
        denominator (str): 'detected' (default) or 'actual' for the
            textbook true-value form

    Returns:
        float: Percent error, >= 0
    """
    require(validate_positive, detected, 'detected')
    require(validate_positive, actual, 'actual')

    if denominator == 'detected':
        base = detected
    elif denominator == 'actual':
        base = actual
    else:
        raise InvalidArgumentError('denominator', "must be 'detected' or 'actual'")

    return abs(detected - actual) / base * 100


@dataclass(frozen=True)
class PercentErrorRow:
    label: str
    detected: float
    actual: float
    difference: float
    percent_error: float


@dataclass
class PercentErrorReport:
    rows: list = field(default_factory=list)
    denominator: str = 'detected'

    @property
    def count(self):
        return len(self.rows)

    @property
    def mean_percent_error(self):
        if not self.rows:
            return 0.0
        return sum(row.percent_error for row in self.rows) / len(self.rows)

    @property
    def max_percent_error(self):
        if not self.rows:
            return 0.0
        return max(row.percent_error for row in self.rows)

    def to_frame(self, decimals=REPORT_DECIMALS):
        frame = pd.DataFrame(
            [
                (row.label, row.detected, row.actual, row.difference, row.percent_error)
                for row in self.rows
            ],
            columns=CSV_COLUMNS,
        )
        return frame.round({column: decimals for column in CSV_COLUMNS[1:]})

    def summary(self):
        return {
            'count': self.count,
            'mean_percent_error': round(self.mean_percent_error, REPORT_DECIMALS),
            'max_percent_error': round(self.max_percent_error, REPORT_DECIMALS),
            'denominator': self.denominator,
        }


def summarize(rows, denominator='detected'):
    """
    Build a report from (label, detected, actual) rows, preserving order

    Args:
        rows: Iterable of (label, detected, actual) tuples
        denominator (str): See percent_error

    Returns:
        PercentErrorReport
    """
    report = PercentErrorReport(denominator=denominator)
    for label, detected, actual in rows:
        report.rows.append(PercentErrorRow(
            label=str(label),
            detected=detected,
            actual=actual,
            difference=detected - actual,
            percent_error=percent_error(detected, actual, denominator),
        ))

    logging.debug(f"Summarized {report.count} rows, mean PE {report.mean_percent_error:.4f}%")
    return report


# ============== OUTPUT ==============

def format_table(report, decimals=DISPLAY_DECIMALS):
    """Aligned plain-text table with a summary footer"""
    headers = ['Label', 'Detected (m)', 'Actual (m)', 'Difference (m)', 'Percent Error (%)']
    body = [
        [
            row.label,
            f"{row.detected:.{decimals}f}",
            f"{row.actual:.{decimals}f}",
            f"{row.difference:.{decimals}f}",
            f"{row.percent_error:.{decimals}f}",
        ]
        for row in report.rows
    ]

    widths = [len(header) for header in headers]
    for line in body:
        widths = [max(width, len(cell)) for width, cell in zip(widths, line)]

    def _line(cells):
        first = cells[0].ljust(widths[0])
        rest = [cell.rjust(width) for cell, width in zip(cells[1:], widths[1:])]
        return "  ".join([first] + rest).rstrip()

    lines = [_line(headers), _line(['-' * width for width in widths])]
    lines.extend(_line(line) for line in body)
    lines.append("")
    lines.append(
        f"count={report.count}  "
        f"mean={report.mean_percent_error:.{decimals}f}%  "
        f"max={report.max_percent_error:.{decimals}f}%"
    )
    if report.denominator == 'actual':
        lines.append("denominator=actual (textbook form, not the detected-value form)")
    return "\n".join(lines) + "\n"


def write_csv(report, path, decimals=REPORT_DECIMALS):
    report.to_frame(decimals).to_csv(path, index=False, lineterminator='\n')
    logging.info(f"Report CSV written to {path}")
    return path


def read_pairs_csv(path):
    """
    Load detected,actual pairs (optional label column)

    Returns:
        list: (label, detected, actual) tuples

    Raises:
        ValidationError: missing columns or non-numeric / non-positive values
    """
    try:
        frame = pd.read_csv(path)
    except pd.errors.EmptyDataError:
        return []

    missing = [column for column in ('detected', 'actual') if column not in frame.columns]
    if missing:
        raise ValidationError([f"missing column {column}" for column in missing], path)

    violations = []
    rows = []
    for index, record in enumerate(frame.to_dict('records'), start=1):
        label = record.get('label')
        if label is None or pd.isna(label):
            label = f"row{index}"
        try:
            detected = float(record['detected'])
            actual = float(record['actual'])
        except (TypeError, ValueError):
            violations.append(f"row {index}: detected/actual must be numbers")
            continue
        for name, value in (('detected', detected), ('actual', actual)):
            is_valid, error = validate_positive(value, name)
            if not is_valid:
                violations.append(f"row {index}: {error}")
        rows.append((label, detected, actual))

    if violations:
        raise ValidationError(violations, path)
    return rows
