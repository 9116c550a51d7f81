"""
Tag reference: distance -> Safe / Warning / Unsafe with color schemes

Unsafe (0, unsafe_max], Warning (unsafe_max, safe_min), Safe [safe_min, inf)
"""
from dataclasses import dataclass

from sensing.models import (
    DEFAULT_COLOR_SCHEME,
    OverlayFrame,
    Sector,
    SectorEntry,
    SubjectEntry,
    ZoneTag,
)
from utils.errors import InvalidArgumentError
from utils.validators import require, validate_positive


@dataclass(frozen=True)
class ZoneThresholds:
    unsafe_max_m: float = 0.5
    safe_min_m: float = 1.0

    def __post_init__(self):
        require(validate_positive, self.unsafe_max_m, "unsafe_max_m")
        require(validate_positive, self.safe_min_m, "safe_min_m")
        if self.unsafe_max_m >= self.safe_min_m:
            raise InvalidArgumentError("unsafe_max_m", "must be below safe_min_m")


DEFAULT_THRESHOLDS = ZoneThresholds()


def classify(distance_m, thresholds=DEFAULT_THRESHOLDS, scheme=None):
    """
    Classify a distance into a zone tag

    Args:
        distance_m (float): Distance in meters, > 0
        thresholds (ZoneThresholds): Zone boundaries
        scheme (dict, optional): ZoneTag -> Color override

    Returns:
        tuple: (ZoneTag, Color)
    """
    require(validate_positive, distance_m, "distance_m")
    scheme = scheme or DEFAULT_COLOR_SCHEME

    if distance_m <= thresholds.unsafe_max_m:
        tag = ZoneTag.UNSAFE
    elif distance_m < thresholds.safe_min_m:
        tag = ZoneTag.WARNING
    else:
        tag = ZoneTag.SAFE

    return tag, scheme[tag]


def most_severe(assessments):
    """Highest-severity tag among assessments; Safe when there are none"""
    tags = [assessment.tag for assessment in assessments]
    if not tags:
        return ZoneTag.SAFE
    return max(tags, key=lambda tag: tag.severity)


def _subject_key(assessment):
    return assessment.subject_id or ""


def render_overlay(timestamp_ms, sector_assessments, front_subject_assessments,
                   scheme=None, boxes=None):
    """
    Build the display snapshot: one entry per sector, one per front subject

    Args:
        timestamp_ms (int): Frame time
        sector_assessments (list): At most one ZoneAssessment per sector
        front_subject_assessments (list): Per-subject front ZoneAssessments
        scheme (dict, optional): ZoneTag -> Color override
        boxes (dict, optional): subject_id -> BoundingBox for the overlay

    Returns:
        OverlayFrame
    """
    scheme = scheme or DEFAULT_COLOR_SCHEME
    boxes = boxes or {}

    by_sector = {}
    for assessment in sector_assessments:
        if assessment.sector in by_sector:
            raise InvalidArgumentError("sector_assessments", f"duplicate sector {assessment.sector.value}")
        by_sector[assessment.sector] = assessment

    subjects = sorted(front_subject_assessments, key=_subject_key)
    seen = set()
    for assessment in subjects:
        if assessment.subject_id in seen:
            raise InvalidArgumentError("front_subject_assessments", f"duplicate subject {assessment.subject_id}")
        seen.add(assessment.subject_id)

    # Front headline follows the nearest subject when no explicit entry is given
    if Sector.FRONT not in by_sector and subjects:
        by_sector[Sector.FRONT] = min(subjects, key=lambda a: (a.distance_m, _subject_key(a)))

    sector_entries = []
    for sector in Sector:
        assessment = by_sector.get(sector)
        if assessment is None:
            sector_entries.append(SectorEntry(sector, ZoneTag.SAFE, scheme[ZoneTag.SAFE]))
            continue
        sector_entries.append(SectorEntry(
            sector,
            assessment.tag,
            scheme[assessment.tag],
            assessment.distance_m,
            assessment.out_of_range,
        ))

    subject_entries = tuple(
        SubjectEntry(
            a.subject_id,
            a.tag,
            scheme[a.tag],
            a.distance_m,
            boxes.get(a.subject_id),
        )
        for a in subjects
    )

    return OverlayFrame(
        timestamp_ms=timestamp_ms,
        sectors=tuple(sector_entries),
        subjects=subject_entries,
        headline=most_severe(list(by_sector.values()) + subjects),
    )
