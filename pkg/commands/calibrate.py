"""
Calibration commands: focal length from a reference shot, subject height
"""
import logging

import click
from flask import Blueprint

from commands.helpers import EXTENT, POSITIVE, config_option, fail, get_settings, report_validation
from evaluation.report import percent_error
from sensing.models import CalibrationProfile
from sensing.optics import calibrate_focal_length, estimate_subject_extent, m_to_inches
from utils.errors import EXIT_IO, InvalidArgumentError, ValidationError
from utils.file_utils import load_profile, save_profile

calibrate_bp = Blueprint('calibrate', __name__, cli_group=None)


@calibrate_bp.cli.command('calibrate')
@click.argument('pixel_extent', type=POSITIVE)
@click.argument('known_distance', type=POSITIVE)
@click.argument('known_extent', type=EXTENT)
@click.argument('out_path', type=click.Path(dir_okay=False))
@click.option('--camera-id', default='cam0', show_default=True)
@click.option('--assumed-extent', type=EXTENT, default=None,
              help='Subject height used for ranging (meters or 5\'4"); defaults to settings')
@config_option
def calibrate(pixel_extent, known_distance, known_extent, out_path, camera_id, assumed_extent, config_path):
    """Compute the focal length F = P x D / W and write a profile"""
    settings = get_settings(config_path)

    try:
        focal = calibrate_focal_length(pixel_extent, known_distance, known_extent)
        profile = CalibrationProfile(
            focal_length_px=focal,
            assumed_subject_extent_m=assumed_extent or settings.assumed_subject_extent_m,
            camera_id=camera_id,
        )
    except InvalidArgumentError as e:
        raise click.BadParameter(str(e))

    try:
        save_profile(profile, out_path)
    except OSError as e:
        fail(EXIT_IO, f"cannot write {out_path}: {e.strerror}")

    click.echo(f"focal_length_px={focal!r}")


@calibrate_bp.cli.command('height')
@click.argument('known_distance', type=POSITIVE)
@click.argument('bbox_height', type=POSITIVE)
@click.option('--profile', 'profile_path', type=click.Path(dir_okay=False), default=None,
              help='Profile supplying the focal length')
@click.option('--focal', type=POSITIVE, default=None, help='Focal length in pixels')
@click.option('--measured', type=EXTENT, default=None,
              help='Tape-measured height (meters or 5\'4") to compare against')
@config_option
def height(known_distance, bbox_height, profile_path, focal, measured, config_path):
    """Estimate a subject's height W = D x P / F at a known distance"""
    settings = get_settings(config_path)

    if focal is None:
        if profile_path is None:
            raise click.UsageError("give --profile or --focal")
        try:
            focal = load_profile(profile_path).focal_length_px
        except ValidationError as e:
            report_validation(e)
        except OSError as e:
            fail(EXIT_IO, f"cannot read {profile_path}: {e.strerror}")

    try:
        extent = estimate_subject_extent(known_distance, bbox_height, focal)
    except InvalidArgumentError as e:
        raise click.BadParameter(str(e))

    click.echo(f"height_m={extent:.4f}")
    click.echo(f"height_in={m_to_inches(extent):.2f}")

    if measured is not None:
        error = percent_error(extent, measured, settings.denominator)
        click.echo(f"measured_in={m_to_inches(measured):.2f}")
        click.echo(f"percent_error={error:.2f}")
        logging.info(f"Height check: detected {extent:.4f} m vs measured {measured:.4f} m")
