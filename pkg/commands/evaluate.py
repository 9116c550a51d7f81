"""
Percent-error report from a detected,actual CSV
"""
import click
from flask import Blueprint

from commands.helpers import config_option, fail, get_settings, report_validation
from evaluation.report import format_table, read_pairs_csv, summarize, write_csv
from utils.errors import EXIT_IO, ValidationError

evaluate_bp = Blueprint('evaluate', __name__, cli_group=None)


@evaluate_bp.cli.command('evaluate')
@click.argument('pairs_csv', type=click.Path(dir_okay=False))
@click.option('--csv-out', type=click.Path(dir_okay=False), default=None,
              help='Also write the report as CSV')
@click.option('--denominator', type=click.Choice(['detected', 'actual']), default=None,
              help='Override eval.denominator')
@config_option
def evaluate(pairs_csv, csv_out, denominator, config_path):
    """Print detected vs actual differences and percent errors"""
    settings = get_settings(config_path)

    try:
        rows = read_pairs_csv(pairs_csv)
    except ValidationError as e:
        report_validation(e)
    except OSError as e:
        fail(EXIT_IO, f"cannot read {pairs_csv}: {e.strerror}")

    report = summarize(rows, denominator=denominator or settings.denominator)
    click.echo(format_table(report), nl=False)

    if csv_out:
        try:
            write_csv(report, csv_out)
        except OSError as e:
            fail(EXIT_IO, f"cannot write {csv_out}: {e.strerror}")
