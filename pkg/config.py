"""
Application configuration
"""
import os
from dataclasses import dataclass

import numpy as np
from dotenv import load_dotenv

from sensing.models import DEFAULT_COLOR_SCHEME, DEFAULT_SUBJECT_EXTENT_M, Color, ZoneTag
from sensing.zones import ZoneThresholds
from utils.errors import ValidationError
from utils.file_utils import parse_key_value
from utils.validators import validate_confidence, validate_positive

load_dotenv()

BASE_DIR = os.path.dirname(os.path.abspath(__file__))


class Config:
    """Base configuration"""

    # Logging (None -> standard error; standard output carries data)
    LOG_FILE = os.getenv('SFS_LOG_FILE')
    LOG_LEVEL = os.getenv('SFS_LOG_LEVEL', 'WARNING')

    # Flat key=value domain settings
    SETTINGS_PATH = os.getenv('SFS_CONFIG')

    # Bundled acceptance scenarios
    SCENARIO_DIR = os.path.join(BASE_DIR, 'scenarios')


class DevelopmentConfig(Config):
    """Development configuration"""
    DEBUG = True
    LOG_LEVEL = 'DEBUG'


class TestingConfig(Config):
    """Testing configuration"""
    TESTING = True
    LOG_LEVEL = 'DEBUG'
    LOG_FILE = None
    SETTINGS_PATH = None


config = {
    'development': DevelopmentConfig,
    'testing': TestingConfig,
    'default': Config
}


def get_config():
    """Get configuration based on environment"""
    env = os.getenv('SFS_ENV', 'default')
    return config.get(env, config['default'])


# ============== DOMAIN SETTINGS ==============

DENOMINATORS = ('detected', 'actual')


@dataclass(frozen=True)
class Settings:
    """Tunable constants of the sensing pipeline"""
    safe_min_m: float = 1.0
    unsafe_max_m: float = 0.5
    assumed_subject_extent_m: float = DEFAULT_SUBJECT_EXTENT_M
    hold_ms: int = 2000
    max_range_m: float = 4.0
    min_confidence: float = 0.5
    denominator: str = 'detected'
    rng: str = 'PCG64'
    colors: tuple = ()

    @property
    def thresholds(self):
        return ZoneThresholds(unsafe_max_m=self.unsafe_max_m, safe_min_m=self.safe_min_m)

    @property
    def color_scheme(self):
        scheme = dict(DEFAULT_COLOR_SCHEME)
        scheme.update(dict(self.colors))
        return scheme

    def make_rng(self, seed):
        """Seeded numpy Generator on the configured bit generator"""
        return np.random.Generator(getattr(np.random, self.rng)(seed))


def _parse_float(raw):
    return float(raw)


def _parse_int(raw):
    return int(raw)


def _parse_color(raw):
    name, _, rgb = raw.partition(':')
    channels = tuple(int(part) for part in rgb.split(','))
    if not name.strip() or len(channels) != 3 or any(c < 0 or c > 255 for c in channels):
        raise ValueError("expected Name:R,G,B with channels 0-255")
    return Color(name.strip(), channels)


SETTINGS_KEYS = {
    'zone.safe_min_m': ('safe_min_m', _parse_float),
    'zone.unsafe_max_m': ('unsafe_max_m', _parse_float),
    'optics.assumed_subject_extent_m': ('assumed_subject_extent_m', _parse_float),
    'fusion.hold_ms': ('hold_ms', _parse_int),
    'sensor.max_range_m': ('max_range_m', _parse_float),
    'detector.min_confidence': ('min_confidence', _parse_float),
    'eval.denominator': ('denominator', str),
    'sim.rng': ('rng', str),
}

COLOR_KEYS = {
    'color.safe': ZoneTag.SAFE,
    'color.warning': ZoneTag.WARNING,
    'color.unsafe': ZoneTag.UNSAFE,
}


def validate_settings(settings):
    """
    Check cross-field rules

    Returns:
        list: Violation messages (empty when valid)
    """
    violations = []

    for field_name in ('safe_min_m', 'unsafe_max_m', 'assumed_subject_extent_m', 'max_range_m'):
        is_valid, error = validate_positive(getattr(settings, field_name), field_name)
        if not is_valid:
            violations.append(error)

    if settings.hold_ms <= 0:
        violations.append("hold_ms must be greater than 0")

    if settings.unsafe_max_m >= settings.safe_min_m:
        violations.append("unsafe_max_m must be below safe_min_m")

    is_valid, error = validate_confidence(settings.min_confidence, 'min_confidence')
    if not is_valid:
        violations.append(error)

    if settings.denominator not in DENOMINATORS:
        violations.append(f"denominator must be one of {', '.join(DENOMINATORS)}")

    bit_generator = getattr(np.random, settings.rng, None)
    if not (isinstance(bit_generator, type) and issubclass(bit_generator, np.random.BitGenerator)):
        violations.append(f"rng {settings.rng!r} is not a numpy bit generator")
    elif bit_generator is np.random.BitGenerator:
        violations.append(f"rng {settings.rng!r} cannot be seeded: abstract base")
    else:
        # a usable generator exposes its state once seeded
        try:
            bit_generator(0).state
        except (TypeError, ValueError, NotImplementedError) as e:
            violations.append(f"rng {settings.rng!r} cannot be seeded: {e}")

    return violations


def parse_settings(text, source=None):
    """
    Build Settings from key=value text

    Raises:
        ValidationError: unknown keys, unparseable values or rule violations
    """
    values = parse_key_value(text, source)
    fields = {}
    colors = []
    violations = []

    for key, raw in values.items():
        if key in COLOR_KEYS:
            try:
                colors.append((COLOR_KEYS[key], _parse_color(raw)))
            except ValueError as e:
                violations.append(f"{key}: {e}")
            continue

        if key not in SETTINGS_KEYS:
            violations.append(f"{key}: unknown key")
            continue

        field_name, parser = SETTINGS_KEYS[key]
        try:
            fields[field_name] = parser(raw)
        except ValueError:
            violations.append(f"{key}: invalid value {raw!r}")

    if violations:
        raise ValidationError(violations, source)

    settings = Settings(colors=tuple(colors), **fields)
    violations = validate_settings(settings)
    if violations:
        raise ValidationError(violations, source)
    return settings


def load_settings(path=None):
    """
    Load Settings from a key=value file; a missing file means all defaults

    Args:
        path (str, optional): Config file path

    Returns:
        Settings
    """
    if not path or not os.path.exists(path):
        return Settings()

    with open(path, encoding='utf-8') as fh:
        return parse_settings(fh.read(), source=path)
