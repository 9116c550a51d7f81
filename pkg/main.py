"""
Main application - Entry point
All commands are in separate blueprint modules
"""
import logging
import os

from flask import Flask
from flask.cli import ScriptInfo

from config import get_config

# Import blueprints
from commands import calibrate_bp, classify_bp, evaluate_bp, replay_bp, simulate_bp


def create_app(config_class=None):
    """
    Application factory

    Args:
        config_class: Config class; defaults to the one selected by SFS_ENV

    Returns:
        Flask: App carrying the CLI commands (no routes are served)
    """
    app = Flask(__name__)
    app.config.from_object(config_class or get_config())

    # SFS_CONFIG set at run time wins over the class default
    if os.getenv('SFS_CONFIG'):
        app.config['SETTINGS_PATH'] = os.getenv('SFS_CONFIG')

    # --- Logging (never to standard output) ---
    log_kwargs = {'filename': app.config['LOG_FILE']} if app.config.get('LOG_FILE') else {}
    logging.basicConfig(
        level=app.config['LOG_LEVEL'],
        format="%(asctime)s - %(levelname)s - %(message)s",
        **log_kwargs
    )

    # --- Register Blueprints ---
    app.register_blueprint(calibrate_bp)
    app.register_blueprint(classify_bp)
    app.register_blueprint(evaluate_bp)
    app.register_blueprint(replay_bp)
    app.register_blueprint(simulate_bp)

    return app


def main():
    app = create_app()
    app.cli.main(prog_name='sfs', obj=ScriptInfo(create_app=lambda: app))


# --- Run Application ---
if __name__ == '__main__':
    main()
