"""
Sensing core: ranging, zone classification and sensor fusion
"""

from .models import (
    ActivateUltrasonic,
    BoundingBox,
    CalibrationProfile,
    Color,
    DEFAULT_COLOR_SCHEME,
    DEFAULT_SUBJECT_EXTENT_M,
    DetectionFrame,
    MotionEvent,
    OverlayFrame,
    RangeReading,
    Sector,
    ZoneAssessment,
    ZoneTag,
)

from .optics import (
    calibrate_focal_length,
    estimate_distance,
    estimate_subject_extent,
)

from .zones import (
    ZoneThresholds,
    classify,
    most_severe,
    render_overlay,
)

from .fusion import (
    SensorFusion,
    merge_events,
)

__all__ = [
    # Models
    'ActivateUltrasonic',
    'BoundingBox',
    'CalibrationProfile',
    'Color',
    'DEFAULT_COLOR_SCHEME',
    'DEFAULT_SUBJECT_EXTENT_M',
    'DetectionFrame',
    'MotionEvent',
    'OverlayFrame',
    'RangeReading',
    'Sector',
    'ZoneAssessment',
    'ZoneTag',

    # Optics
    'calibrate_focal_length',
    'estimate_distance',
    'estimate_subject_extent',

    # Zones
    'ZoneThresholds',
    'classify',
    'most_severe',
    'render_overlay',

    # Fusion
    'SensorFusion',
    'merge_events',
]
