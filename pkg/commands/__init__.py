"""
Command blueprints - all subcommands of the sfs CLI
"""

from .calibrate import calibrate_bp
from .classify import classify_bp
from .evaluate import evaluate_bp
from .replay import replay_bp
from .simulate import simulate_bp

__all__ = ['calibrate_bp', 'classify_bp', 'evaluate_bp', 'replay_bp', 'simulate_bp']
