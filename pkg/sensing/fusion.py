"""
Sensor fusion state machine

Motion on a side/back sector arms the ultrasonic ranger; the next range
reading on that sector is classified and consumes the arm. Front camera
frames are ranged by triangle similarity. Every verdict is held on the
display for hold_ms and then reverts to idle.
"""
import logging
from dataclasses import dataclass, field
from typing import Optional

from sensing.models import (
    ActivateUltrasonic,
    ActiveAssessment,
    DEFAULT_COLOR_SCHEME,
    DetectionFrame,
    FusionState,
    MotionEvent,
    RangeReading,
    Sector,
    ZoneAssessment,
    ZoneTag,
)
from sensing.optics import estimate_distance
from sensing.zones import DEFAULT_THRESHOLDS, classify, most_severe, render_overlay
from utils.errors import InvalidArgumentError, OrderingError

DEFAULT_HOLD_MS = 2000
DEFAULT_MAX_RANGE_M = 4.0
DEFAULT_MIN_CONFIDENCE = 0.5

# Tie-break for events sharing a timestamp
_KIND_RANK = {MotionEvent: 0, RangeReading: 1, DetectionFrame: 2}


def event_sort_key(event):
    """(timestamp, motion < range < frame, sector order)"""
    sector = getattr(event, "sector", Sector.FRONT)
    return event.timestamp_ms, _KIND_RANK[type(event)], sector.order


def merge_events(*streams):
    """Merge event streams into replay order; equal keys keep input order"""
    merged = []
    for stream in streams:
        merged.extend(stream)
    return sorted(merged, key=event_sort_key)


@dataclass
class StepResult:
    assessments: list = field(default_factory=list)
    command: Optional[ActivateUltrasonic] = None
    expired: list = field(default_factory=list)


class SensorFusion:
    """Single-writer owner of FusionState; apply events in timestamp order"""

    def __init__(self, thresholds=DEFAULT_THRESHOLDS, hold_ms=DEFAULT_HOLD_MS,
                 max_range_m=DEFAULT_MAX_RANGE_M, min_confidence=DEFAULT_MIN_CONFIDENCE,
                 scheme=None):
        if hold_ms <= 0:
            raise InvalidArgumentError("hold_ms", "must be greater than 0")
        self.thresholds = thresholds
        self.hold_ms = hold_ms
        self.max_range_m = max_range_m
        self.min_confidence = min_confidence
        self.scheme = scheme or DEFAULT_COLOR_SCHEME
        self.state = FusionState()

    @classmethod
    def from_settings(cls, settings):
        return cls(
            thresholds=settings.thresholds,
            hold_ms=settings.hold_ms,
            max_range_m=settings.max_range_m,
            min_confidence=settings.min_confidence,
            scheme=settings.color_scheme,
        )

    @property
    def stats(self):
        return self.state.stats

    def _advance(self, timestamp_ms):
        if timestamp_ms < self.state.last_seen_ms:
            raise OrderingError(timestamp_ms, self.state.last_seen_ms)
        self.state.last_seen_ms = timestamp_ms

    def is_armed(self, sector):
        return Sector(sector) in self.state.armed

    # ============== EVENT HANDLERS ==============

    def on_motion(self, event: MotionEvent):
        """Arm the sector's ranger; re-arming refreshes the arm timestamp"""
        if event.sector is Sector.FRONT:
            raise InvalidArgumentError("sector", "front is camera-ranged")
        self._advance(event.timestamp_ms)

        self.state.armed[event.sector] = event.timestamp_ms
        logging.debug(f"Armed {event.sector.value} at {event.timestamp_ms} ms")
        return ActivateUltrasonic(event.timestamp_ms, event.sector)

    def on_range(self, reading: RangeReading):
        """
        Classify a reading on an armed sector

        Returns:
            ZoneAssessment or None when the sector was not armed
        """
        self._advance(reading.timestamp_ms)

        if reading.sector not in self.state.armed:
            self.state.stats.dropped_unarmed += 1
            logging.debug(f"Dropped reading on unarmed {reading.sector.value} at {reading.timestamp_ms} ms")
            return None

        del self.state.armed[reading.sector]

        distance = reading.distance_m
        if distance is None or distance > self.max_range_m:
            self.state.stats.out_of_range += 1
            assessment = ZoneAssessment(
                timestamp_ms=reading.timestamp_ms,
                sector=reading.sector,
                tag=ZoneTag.SAFE,
                color=self.scheme[ZoneTag.SAFE],
                out_of_range=True,
            )
        else:
            tag, color = classify(distance, self.thresholds, self.scheme)
            assessment = ZoneAssessment(
                timestamp_ms=reading.timestamp_ms,
                sector=reading.sector,
                tag=tag,
                color=color,
                distance_m=distance,
            )

        self.state.sectors[reading.sector] = ActiveAssessment(
            assessment, reading.timestamp_ms + self.hold_ms
        )
        self.state.stats.emitted += 1
        return assessment

    def on_detection_frame(self, frame: DetectionFrame, profile):
        """One front assessment per box at or above min_confidence"""
        self._advance(frame.timestamp_ms)

        assessments = []
        for box in frame.boxes:
            if box.confidence < self.min_confidence:
                self.state.stats.low_confidence += 1
                continue

            try:
                distance = estimate_distance(profile, box.height_px)
            except InvalidArgumentError as e:
                self.state.stats.unrangeable += 1
                logging.warning(f"Skipped box {box.subject_id} at {frame.timestamp_ms} ms: {e}")
                continue
            tag, color = classify(distance, self.thresholds, self.scheme)
            assessment = ZoneAssessment(
                timestamp_ms=frame.timestamp_ms,
                sector=Sector.FRONT,
                tag=tag,
                color=color,
                distance_m=distance,
                subject_id=box.subject_id,
            )
            self.state.front_subjects[box.subject_id] = ActiveAssessment(
                assessment, frame.timestamp_ms + self.hold_ms, box
            )
            assessments.append(assessment)

        self.state.stats.emitted += len(assessments)
        return assessments

    def tick(self, now_ms):
        """
        Drop assessments whose expiry is at or before now_ms

        Returns:
            list: Sectors reverted to idle, in sector order
        """
        self._advance(now_ms)
        expired = []

        for sector in list(self.state.sectors):
            if self.state.sectors[sector].expires_at_ms <= now_ms:
                del self.state.sectors[sector]
                expired.append(sector)

        had_front = bool(self.state.front_subjects)
        for subject_id in list(self.state.front_subjects):
            if self.state.front_subjects[subject_id].expires_at_ms <= now_ms:
                del self.state.front_subjects[subject_id]
        if had_front and not self.state.front_subjects:
            expired.append(Sector.FRONT)

        return sorted(expired, key=lambda sector: sector.order)

    # ============== QUERIES ==============

    def front_assessments(self, now_ms=None):
        now_ms = self.state.last_seen_ms if now_ms is None else now_ms
        live = [
            active.assessment
            for active in self.state.front_subjects.values()
            if active.expires_at_ms > now_ms
        ]
        return sorted(live, key=lambda a: a.subject_id)

    def sector_assessments(self, now_ms=None):
        now_ms = self.state.last_seen_ms if now_ms is None else now_ms
        live = [
            active.assessment
            for active in self.state.sectors.values()
            if active.expires_at_ms > now_ms
        ]
        return sorted(live, key=lambda a: a.sector.order)

    def front_headline(self, now_ms=None):
        return most_severe(self.front_assessments(now_ms))

    def overlay(self, now_ms=None):
        now_ms = self.state.last_seen_ms if now_ms is None else now_ms
        boxes = {
            subject_id: active.bbox
            for subject_id, active in self.state.front_subjects.items()
        }
        return render_overlay(
            now_ms,
            self.sector_assessments(now_ms),
            self.front_assessments(now_ms),
            scheme=self.scheme,
            boxes=boxes,
        )

    # ============== REPLAY ==============

    def process(self, event, profile=None):
        """Expire stale verdicts at the event's time, then apply the event"""
        result = StepResult(expired=self.tick(event.timestamp_ms))

        if isinstance(event, MotionEvent):
            result.command = self.on_motion(event)
        elif isinstance(event, RangeReading):
            assessment = self.on_range(event)
            if assessment is not None:
                result.assessments.append(assessment)
        elif isinstance(event, DetectionFrame):
            if profile is None:
                raise InvalidArgumentError("profile", "required for detection frames")
            result.assessments.extend(self.on_detection_frame(event, profile))
        else:
            raise InvalidArgumentError("event", f"unsupported event type {type(event).__name__}")

        return result

    def replay(self, events, profile=None):
        """Apply an iterable of events; yields (event, StepResult)"""
        for event in events:
            yield event, self.process(event, profile)
