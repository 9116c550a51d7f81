"""
Scenario simulator
"""

from .runner import (
    replicate_marker_comparison,
    run_replications,
    run_scenario,
    synth_bbox_height,
    synth_range,
)
from .scenario import Scenario, load_scenario, parse_scenario

__all__ = [
    'Scenario',
    'load_scenario',
    'parse_scenario',
    'replicate_marker_comparison',
    'run_replications',
    'run_scenario',
    'synth_bbox_height',
    'synth_range',
]
