"""
Replay recorded detection / motion / range streams through sensor fusion
"""
import logging

import click
from flask import Blueprint

from commands.helpers import config_option, fail, get_settings, report_validation
from sensing.fusion import SensorFusion, merge_events
from utils.errors import EXIT_IO, EXIT_OK, EXIT_PARTIAL, ValidationError
from utils.file_utils import load_detections, load_motions, load_profile, load_ranges, write_jsonl

replay_bp = Blueprint('replay', __name__, cli_group=None)

_stream = click.Path(dir_okay=False, exists=True)


@replay_bp.cli.command('replay')
@click.option('--profile', 'profile_path', type=click.Path(dir_okay=False), required=True)
@click.option('--detections', type=_stream, default=None, help='detections.jsonl')
@click.option('--motions', type=_stream, default=None, help='motions.jsonl')
@click.option('--ranges', type=_stream, default=None, help='ranges.jsonl')
@click.option('--out', 'out_path', type=click.Path(dir_okay=False), required=True, help='events.jsonl to write')
@config_option
@click.pass_context
def replay(ctx, profile_path, detections, motions, ranges, out_path, config_path):
    """Merge the streams in timestamp order and write zone assessments"""
    settings = get_settings(config_path)

    try:
        profile = load_profile(profile_path)
    except ValidationError as e:
        report_validation(e)
    except OSError as e:
        fail(EXIT_IO, f"cannot read {profile_path}: {e.strerror}")

    streams = []
    skipped = []
    if detections:
        frames, frame_skips, _ = load_detections(detections, settings.min_confidence)
        streams.append(frames)
        skipped.extend(frame_skips)
    if motions:
        events, motion_skips = load_motions(motions)
        streams.append(events)
        skipped.extend(motion_skips)
    if ranges:
        readings, range_skips = load_ranges(ranges)
        streams.append(readings)
        skipped.extend(range_skips)

    for message in skipped:
        logging.warning(f"Skipped {message}")
        click.echo(f"skipped {message}", err=True)

    fusion = SensorFusion.from_settings(settings)
    records = []
    for _, result in fusion.replay(merge_events(*streams), profile):
        records.extend(assessment.to_dict() for assessment in result.assessments)

    try:
        count = write_jsonl(records, out_path)
    except OSError as e:
        fail(EXIT_IO, f"cannot write {out_path}: {e.strerror}")

    stats = fusion.stats
    if stats.unrangeable:
        click.echo(f"skipped {stats.unrangeable} boxes too small to range", err=True)
    click.echo(
        f"assessments={count} dropped_unarmed={stats.dropped_unarmed} "
        f"out_of_range={stats.out_of_range} unrangeable={stats.unrangeable} "
        f"skipped_lines={len(skipped)}"
    )
    ctx.exit(EXIT_PARTIAL if skipped or stats.unrangeable else EXIT_OK)
