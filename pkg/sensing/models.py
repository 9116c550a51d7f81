"""
Domain models: camera profile, detections, sensor events, zone verdicts
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from utils.errors import InvalidArgumentError
from utils.validators import (
    require,
    validate_confidence,
    validate_positive,
    validate_timestamp,
)

# 5'4" in meters
DEFAULT_SUBJECT_EXTENT_M = 1.6256


class Sector(str, Enum):
    """Direction around the wearer"""
    FRONT = "front"
    LEFT = "left"
    RIGHT = "right"
    BACK = "back"

    @property
    def order(self):
        return _SECTOR_ORDER[self]

    @property
    def is_ultrasonic(self):
        return self is not Sector.FRONT

    @property
    def label(self):
        return self.value.capitalize()


_SECTOR_ORDER = {sector: index for index, sector in enumerate(Sector)}
ULTRASONIC_SECTORS = (Sector.LEFT, Sector.RIGHT, Sector.BACK)


class ZoneTag(str, Enum):
    """Tag reference, ordered by severity"""
    SAFE = "safe"
    WARNING = "warning"
    UNSAFE = "unsafe"

    @property
    def severity(self):
        return _SEVERITY[self]

    @property
    def label(self):
        return self.value.capitalize()


_SEVERITY = {ZoneTag.SAFE: 0, ZoneTag.WARNING: 1, ZoneTag.UNSAFE: 2}


@dataclass(frozen=True)
class Color:
    name: str
    rgb: tuple

    @property
    def hex(self):
        return "#{:02x}{:02x}{:02x}".format(*self.rgb)


DEFAULT_COLOR_SCHEME = {
    ZoneTag.SAFE: Color("Green", (0, 128, 0)),
    ZoneTag.WARNING: Color("Orange", (255, 165, 0)),
    ZoneTag.UNSAFE: Color("Red", (255, 0, 0)),
}


# ============== OPTICS ==============

@dataclass(frozen=True)
class CalibrationProfile:
    """Camera constant F and the assumed real-world subject extent W"""
    focal_length_px: float
    assumed_subject_extent_m: float = DEFAULT_SUBJECT_EXTENT_M
    camera_id: str = "cam0"

    def __post_init__(self):
        require(validate_positive, self.focal_length_px, "focal_length_px")
        require(validate_positive, self.assumed_subject_extent_m, "assumed_subject_extent_m")
        if not self.camera_id or any(ch.isspace() for ch in self.camera_id):
            raise InvalidArgumentError("camera_id", "must be a non-empty label without whitespace")


@dataclass(frozen=True)
class BoundingBox:
    """Detector box in pixel space; height_px is the P of the ranging formula"""
    x: float
    y: float
    width_px: float
    height_px: float
    confidence: float
    subject_id: str

    def __post_init__(self):
        require(validate_positive, self.width_px, "width_px")
        require(validate_positive, self.height_px, "height_px")
        require(validate_confidence, self.confidence, "confidence")


@dataclass(frozen=True)
class DetectionFrame:
    timestamp_ms: int
    boxes: tuple = ()

    def __post_init__(self):
        require(validate_timestamp, self.timestamp_ms, "timestamp_ms")
        object.__setattr__(self, "boxes", tuple(self.boxes))
        ids = [box.subject_id for box in self.boxes]
        if len(ids) != len(set(ids)):
            raise InvalidArgumentError("boxes", "subject_id must be unique within a frame")


# ============== SENSOR EVENTS ==============

@dataclass(frozen=True)
class MotionEvent:
    """Passive infrared trigger on a side or back sector"""
    timestamp_ms: int
    sector: Sector

    def __post_init__(self):
        require(validate_timestamp, self.timestamp_ms, "timestamp_ms")
        if Sector(self.sector) is Sector.FRONT:
            raise InvalidArgumentError("sector", "front is camera-ranged, motion events are side/back only")
        object.__setattr__(self, "sector", Sector(self.sector))


@dataclass(frozen=True)
class RangeReading:
    """Ultrasonic reading; distance_m None means OutOfRange"""
    timestamp_ms: int
    sector: Sector
    distance_m: Optional[float] = None

    def __post_init__(self):
        require(validate_timestamp, self.timestamp_ms, "timestamp_ms")
        if Sector(self.sector) is Sector.FRONT:
            raise InvalidArgumentError("sector", "front is camera-ranged, range readings are side/back only")
        object.__setattr__(self, "sector", Sector(self.sector))
        if self.distance_m is not None:
            require(validate_positive, self.distance_m, "distance_m")

    @property
    def out_of_range(self):
        return self.distance_m is None


@dataclass(frozen=True)
class ActivateUltrasonic:
    """Command for the sensor layer to take one measurement on a sector"""
    timestamp_ms: int
    sector: Sector


# ============== ZONE VERDICTS ==============

@dataclass(frozen=True)
class ZoneAssessment:
    timestamp_ms: int
    sector: Sector
    tag: ZoneTag
    color: Color
    distance_m: Optional[float] = None
    subject_id: Optional[str] = None
    out_of_range: bool = False

    def to_dict(self):
        """Serialize to the events.jsonl schema"""
        data = {"t_ms": self.timestamp_ms, "sector": self.sector.value}
        if self.subject_id is not None:
            data["subject_id"] = self.subject_id
        if self.distance_m is not None:
            data["distance_m"] = self.distance_m
        data["tag"] = self.tag.value
        data["color"] = self.color.name
        if self.out_of_range:
            data["out_of_range"] = True
        return data


@dataclass(frozen=True)
class SectorEntry:
    sector: Sector
    tag: ZoneTag
    color: Color
    distance_m: Optional[float] = None
    out_of_range: bool = False


@dataclass(frozen=True)
class SubjectEntry:
    subject_id: str
    tag: ZoneTag
    color: Color
    distance_m: float
    bbox: Optional[BoundingBox] = None


@dataclass(frozen=True)
class OverlayFrame:
    """Declarative snapshot of what the shield display shows"""
    timestamp_ms: int
    sectors: tuple = ()
    subjects: tuple = ()
    headline: ZoneTag = ZoneTag.SAFE

    def to_dict(self):
        subjects = []
        for entry in self.subjects:
            item = {
                "subject_id": entry.subject_id,
                "distance_m": entry.distance_m,
                "tag": entry.tag.value,
                "color": entry.color.name,
            }
            if entry.bbox is not None:
                item["bbox"] = {
                    "x": entry.bbox.x,
                    "y": entry.bbox.y,
                    "w": entry.bbox.width_px,
                    "h": entry.bbox.height_px,
                }
            subjects.append(item)

        return {
            "t_ms": self.timestamp_ms,
            "headline": self.headline.value,
            "sectors": [
                {
                    "sector": entry.sector.value,
                    "tag": entry.tag.value,
                    "color": entry.color.name,
                    "distance_m": entry.distance_m,
                    "out_of_range": entry.out_of_range,
                }
                for entry in self.sectors
            ],
            "subjects": subjects,
        }


@dataclass
class FusionStats:
    emitted: int = 0
    dropped_unarmed: int = 0
    out_of_range: int = 0
    low_confidence: int = 0
    unrangeable: int = 0

    def to_dict(self):
        return {
            "emitted": self.emitted,
            "dropped_unarmed": self.dropped_unarmed,
            "out_of_range": self.out_of_range,
            "low_confidence": self.low_confidence,
            "unrangeable": self.unrangeable,
        }


@dataclass
class ActiveAssessment:
    assessment: ZoneAssessment
    expires_at_ms: int
    bbox: Optional[BoundingBox] = None


@dataclass
class FusionState:
    """Mutable state owned by one SensorFusion instance"""
    armed: dict = field(default_factory=dict)
    sectors: dict = field(default_factory=dict)
    front_subjects: dict = field(default_factory=dict)
    last_seen_ms: int = 0
    stats: FusionStats = field(default_factory=FusionStats)
