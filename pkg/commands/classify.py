"""
Stream classification: one distance per line in, distance/tag/color out
"""
import logging

import click
from flask import Blueprint

from commands.helpers import config_option, fail, get_settings
from sensing.zones import classify
from utils.errors import EXIT_IO, EXIT_OK, EXIT_PARTIAL
from utils.validators import parse_decimal

classify_bp = Blueprint('classify', __name__, cli_group=None)


@classify_bp.cli.command('classify')
@click.argument('source', type=click.Path(dir_okay=False, allow_dash=True), default='-')
@config_option
@click.pass_context
def classify_stream(ctx, source, config_path):
    """Tag each distance (meters) read from SOURCE or standard input"""
    settings = get_settings(config_path)
    thresholds = settings.thresholds
    scheme = settings.color_scheme
    skipped = 0

    if source == '-':
        lines = click.get_text_stream('stdin')
    else:
        try:
            with open(source, encoding='utf-8') as fh:
                lines = fh.readlines()
        except (OSError, UnicodeDecodeError) as e:
            fail(EXIT_IO, f"cannot read {source}: {getattr(e, 'strerror', None) or e}")

    for line_no, line in enumerate(lines, start=1):
        if not line.strip():
            continue

        distance, error = parse_decimal(line)
        if distance is None:
            skipped += 1
            click.echo(f"line {line_no}: skipped ({error})", err=True)
            continue

        tag, color = classify(distance, thresholds, scheme)
        click.echo(f"{line.strip()}\t{tag.label}\t{color.name}")

    if skipped:
        logging.warning(f"classify skipped {skipped} lines")
    ctx.exit(EXIT_PARTIAL if skipped else EXIT_OK)
