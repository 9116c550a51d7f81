"""
Scenario simulation: events.jsonl, ground-truth sidecar, percent-error report
"""
import json
import logging
import os

import click
from flask import Blueprint, render_template

from commands.helpers import (
    config_option,
    ensure_dir,
    fail,
    get_settings,
    report_validation,
    resolve_scenario_path,
)
from evaluation.report import format_table, summarize, write_csv
from simulation.runner import run_replications, run_scenario
from simulation.scenario import load_scenario
from utils.errors import EXIT_IO, ValidationError
from utils.file_utils import write_jsonl

simulate_bp = Blueprint('simulate', __name__, cli_group=None)

SVG_SIZE = 320

# Top-down wedges around the wearer; front is up
_HALF = SVG_SIZE // 2
SVG_WEDGES = {
    'front': {'path': f"M0,0 L{SVG_SIZE},0 L{_HALF},{_HALF} Z", 'x': _HALF, 'y': 40},
    'right': {'path': f"M{SVG_SIZE},0 L{SVG_SIZE},{SVG_SIZE} L{_HALF},{_HALF} Z", 'x': SVG_SIZE - 60, 'y': _HALF},
    'back': {'path': f"M{SVG_SIZE},{SVG_SIZE} L0,{SVG_SIZE} L{_HALF},{_HALF} Z", 'x': _HALF, 'y': SVG_SIZE - 34},
    'left': {'path': f"M0,{SVG_SIZE} L0,0 L{_HALF},{_HALF} Z", 'x': 60, 'y': _HALF},
}


def render_overlay_svg(frame, scheme, camera_id):
    return render_template(
        'overlay.svg',
        frame=frame,
        headline=scheme[frame.headline],
        wedges=SVG_WEDGES,
        size=SVG_SIZE,
        camera_id=camera_id,
    )


def write_outputs(log, scenario, settings, out_dir, overlays=False, svg_dir=None):
    """
    Persist one simulation run

    Returns:
        PercentErrorReport
    """
    ensure_dir(out_dir)
    report = summarize(log.percent_error_rows(scenario), denominator=settings.denominator)

    write_jsonl(log.event_records(), os.path.join(out_dir, 'events.jsonl'))
    write_jsonl(log.ground_truth_records(), os.path.join(out_dir, 'ground_truth.jsonl'))
    write_csv(report, os.path.join(out_dir, 'report.csv'))
    with open(os.path.join(out_dir, 'report.txt'), 'w', encoding='utf-8', newline='\n') as fh:
        fh.write(format_table(report))

    summary = {
        'scenario': log.scenario,
        'seed': log.seed,
        'events': len(log.entries),
        'fusion': log.stats,
        'report': report.summary(),
    }
    with open(os.path.join(out_dir, 'summary.json'), 'w', encoding='utf-8', newline='\n') as fh:
        fh.write(json.dumps(summary, indent=2, sort_keys=True) + '\n')

    if overlays:
        write_jsonl([frame.to_dict() for frame in log.overlays], os.path.join(out_dir, 'overlays.jsonl'))

    if svg_dir:
        ensure_dir(svg_dir)
        scheme = settings.color_scheme
        for frame in log.overlays:
            path = os.path.join(svg_dir, f"frame_{frame.timestamp_ms:08d}.svg")
            with open(path, 'w', encoding='utf-8', newline='\n') as fh:
                fh.write(render_overlay_svg(frame, scheme, scenario.camera.camera_id))

    logging.info(f"Simulation outputs written to {out_dir}")
    return report


@simulate_bp.cli.command('simulate')
@click.argument('scenario_path')
@click.option('--out-dir', type=click.Path(file_okay=False), required=True)
@click.option('--seed', type=click.IntRange(min=0), default=None, help='Override the scenario seed')
@click.option('--overlays', is_flag=True, help='Also write overlays.jsonl')
@click.option('--svg-dir', type=click.Path(file_okay=False), default=None,
              help='Write one SVG zone diagram per overlay frame')
@click.option('--replications', type=click.IntRange(min=1), default=1, show_default=True,
              help='Runs with seeds seed, seed+1, ... into rep_NNN subdirectories')
@config_option
def simulate(scenario_path, out_dir, seed, overlays, svg_dir, replications, config_path):
    """Run SCENARIO_PATH (file or bundled name) through the sensing pipeline"""
    settings = get_settings(config_path)
    path = resolve_scenario_path(scenario_path)

    try:
        scenario = load_scenario(path, default_extent=settings.assumed_subject_extent_m)
    except ValidationError as e:
        report_validation(e)
    except OSError as e:
        fail(EXIT_IO, f"cannot read scenario {path}: {e.strerror}")

    if seed is not None:
        scenario = scenario.with_seed(seed)

    record_overlays = overlays or bool(svg_dir)

    try:
        if replications == 1:
            log = run_scenario(scenario, settings, record_overlays)
            report = write_outputs(log, scenario, settings, out_dir, overlays, svg_dir)
            click.echo(format_table(report), nl=False)
            return

        seeds = [scenario.seed + index for index in range(replications)]
        logs = run_replications(scenario, seeds, settings, record_overlays)
        for index, log in enumerate(logs):
            rep_dir = os.path.join(out_dir, f"rep_{index:03d}")
            rep_svg = os.path.join(svg_dir, f"rep_{index:03d}") if svg_dir else None
            report = write_outputs(log, scenario.with_seed(log.seed), settings, rep_dir, overlays, rep_svg)
            click.echo(f"rep_{index:03d} seed={log.seed} count={report.count} "
                       f"mean={report.mean_percent_error:.2f}% max={report.max_percent_error:.2f}%")
    except OSError as e:
        fail(EXIT_IO, f"cannot write outputs under {out_dir}: {e.strerror}")
