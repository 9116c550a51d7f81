"""
Shared helpers for command blueprints
"""
import logging
import os
import re

import click
from flask import current_app

from config import load_settings
from sensing.optics import feet_inches_to_m
from utils.errors import EXIT_IO, EXIT_VALIDATION, ValidationError

config_option = click.option(
    '--config', 'config_path',
    type=click.Path(dir_okay=False),
    default=None,
    help='key=value settings file (overrides SFS_CONFIG)',
)


def fail(code, message):
    """Print a diagnostic to standard error and exit with code"""
    click.echo(f"error: {message}", err=True)
    raise click.exceptions.Exit(code)


def report_validation(error):
    """Print every violation of a ValidationError and exit 3"""
    source = f" in {error.source}" if error.source else ""
    click.echo(f"error: validation failed{source}", err=True)
    for violation in error.violations:
        click.echo(f"  - {violation}", err=True)
    raise click.exceptions.Exit(EXIT_VALIDATION)


def get_settings(config_path=None):
    """Settings from --config, else SFS_CONFIG, else defaults"""
    path = config_path or current_app.config.get('SETTINGS_PATH')
    try:
        settings = load_settings(path)
    except ValidationError as e:
        report_validation(e)
    except OSError as e:
        fail(EXIT_IO, f"cannot read config {path}: {e.strerror}")

    if path:
        logging.debug(f"Settings loaded from {path}")
    return settings


def resolve_scenario_path(value):
    """A file path, or the name of a bundled scenario"""
    if os.path.exists(value):
        return value

    bundled = os.path.join(current_app.config['SCENARIO_DIR'], f"{value}.json")
    if os.path.exists(bundled):
        return bundled
    return value


def ensure_dir(path):
    try:
        os.makedirs(path, exist_ok=True)
    except OSError as e:
        fail(EXIT_IO, f"cannot create directory {path}: {e.strerror}")
    return path


_FEET_INCHES = re.compile(r"""^\s*(\d+(?:\.\d+)?)\s*'\s*(?:(\d+(?:\.\d+)?)\s*(?:"|''|in)?)?\s*$""")


class ExtentType(click.ParamType):
    """Meters as a decimal, or feet-inches such as 5'4\""""
    name = 'extent'

    def convert(self, value, param, ctx):
        if isinstance(value, float):
            return value

        text = str(value)
        match = _FEET_INCHES.match(text)
        if match:
            meters = feet_inches_to_m(float(match.group(1)), float(match.group(2) or 0))
        else:
            try:
                meters = float(text)
            except ValueError:
                self.fail(f"{text!r} is neither meters nor feet-inches", param, ctx)

        if not meters > 0 or meters == float('inf'):
            self.fail(f"{text!r} must be a positive length", param, ctx)
        return meters


POSITIVE = click.FloatRange(min=0, min_open=True)
EXTENT = ExtentType()
