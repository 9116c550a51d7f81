"""
File handling utilities: key=value files, JSONL streams, profile persistence
"""
import json
import logging
import os

from sensing.models import (
    BoundingBox,
    CalibrationProfile,
    Color,
    DEFAULT_COLOR_SCHEME,
    DetectionFrame,
    MotionEvent,
    RangeReading,
    Sector,
    ZoneAssessment,
    ZoneTag,
)
from utils.errors import ValidationError


# ============== KEY=VALUE FILES ==============

def parse_key_value(text, source=None):
    """
    Parse flat key=value text ('#' comments and blank lines ignored)

    Args:
        text (str): File contents
        source (str, optional): Name used in error messages

    Returns:
        dict: key -> raw string value

    Raises:
        ValidationError: malformed or duplicate lines
    """
    values = {}
    violations = []

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue

        if "=" not in line:
            violations.append(f"line {line_no}: expected key=value")
            continue

        key, value = (part.strip() for part in line.split("=", 1))
        if not key:
            violations.append(f"line {line_no}: empty key")
            continue
        if key in values:
            violations.append(f"line {line_no}: duplicate key {key}")
            continue
        values[key] = value

    if violations:
        raise ValidationError(violations, source)
    return values


def format_key_value(values):
    return "".join(f"{key}={value}\n" for key, value in values.items())


def save_profile(profile, path):
    """
    Write a CalibrationProfile as key=value text

    Args:
        profile (CalibrationProfile): Profile to persist
        path (str): Target file

    Returns:
        str: Path written
    """
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)

    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_key_value({
            "camera_id": profile.camera_id,
            "focal_length_px": repr(float(profile.focal_length_px)),
            "assumed_subject_extent_m": repr(float(profile.assumed_subject_extent_m)),
        }))

    logging.info(f"Calibration profile written to {path}")
    return path


def load_profile(path):
    """Read a CalibrationProfile written by save_profile"""
    with open(path, encoding="utf-8") as fh:
        values = parse_key_value(fh.read(), source=path)

    violations = []
    for key in ("camera_id", "focal_length_px", "assumed_subject_extent_m"):
        if key not in values:
            violations.append(f"missing key {key}")
    if violations:
        raise ValidationError(violations, path)

    try:
        return CalibrationProfile(
            focal_length_px=float(values["focal_length_px"]),
            assumed_subject_extent_m=float(values["assumed_subject_extent_m"]),
            camera_id=values["camera_id"],
        )
    except ValueError as e:
        raise ValidationError([str(e)], path) from e


# ============== JSONL ==============

def write_jsonl(records, path):
    """
    Write dicts as UTF-8 JSON lines with '\\n' terminators

    Returns:
        int: Number of lines written
    """
    count = 0
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for record in records:
            fh.write(json.dumps(record, ensure_ascii=False, sort_keys=True) + "\n")
            count += 1
    return count


def read_jsonl(path):
    """
    Read a JSONL file

    Returns:
        tuple: (list of (line_no, dict), list of skipped-line messages)
    """
    rows = []
    skipped = []
    with open(path, encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            try:
                data = json.loads(line)
            except json.JSONDecodeError as e:
                skipped.append(f"{path}:{line_no}: invalid JSON ({e.msg})")
                continue
            if not isinstance(data, dict):
                skipped.append(f"{path}:{line_no}: expected a JSON object")
                continue
            rows.append((line_no, data))
    return rows, skipped


# ============== STREAM INGESTION ==============

def _side_sector(value):
    sector = Sector(value)
    if sector is Sector.FRONT:
        raise ValueError("front is not a side/back sector")
    return sector


def parse_motion(data):
    return MotionEvent(timestamp_ms=data["t_ms"], sector=_side_sector(data["sector"]))


def parse_range(data):
    distance = data["distance_m"]
    if distance is not None:
        distance = float(distance)
    return RangeReading(timestamp_ms=data["t_ms"], sector=_side_sector(data["sector"]), distance_m=distance)


def parse_detection(data):
    """One detections.jsonl row -> (timestamp_ms, BoundingBox)"""
    bbox = data["bbox"]
    box = BoundingBox(
        x=bbox["x"],
        y=bbox["y"],
        width_px=bbox["w"],
        height_px=bbox["h"],
        confidence=float(data["confidence"]),
        subject_id=str(data["subject_id"]),
    )
    return data["t_ms"], box


def _read_records(path, parser):
    rows, skipped = read_jsonl(path)
    parsed = []
    for line_no, data in rows:
        try:
            parsed.append(parser(data))
        except (KeyError, TypeError, ValueError) as e:
            skipped.append(f"{path}:{line_no}: {e.__class__.__name__}: {e}")
    return parsed, skipped


def load_motions(path):
    """Returns (list of MotionEvent, skipped messages)"""
    return _read_records(path, parse_motion)


def load_ranges(path):
    """Returns (list of RangeReading, skipped messages)"""
    return _read_records(path, parse_range)


def load_detections(path, min_confidence=0.0):
    """
    Group detection rows sharing a timestamp into DetectionFrames

    Args:
        path (str): detections.jsonl
        min_confidence (float): Boxes below this are dropped

    Returns:
        tuple: (list of DetectionFrame, skipped messages, dropped count)
    """
    rows, skipped = _read_records(path, parse_detection)

    grouped = {}
    dropped = 0
    for timestamp_ms, box in rows:
        if box.confidence < min_confidence:
            dropped += 1
            continue
        boxes = grouped.setdefault(timestamp_ms, {})
        if box.subject_id in boxes:
            skipped.append(f"{path}: duplicate subject {box.subject_id} at {timestamp_ms} ms")
            continue
        boxes[box.subject_id] = box

    frames = []
    for timestamp_ms in sorted(grouped):
        try:
            frames.append(DetectionFrame(timestamp_ms, tuple(grouped[timestamp_ms].values())))
        except ValueError as e:
            skipped.append(f"{path}: frame at {timestamp_ms} ms: {e}")

    if dropped:
        logging.info(f"Dropped {dropped} low-confidence boxes from {path}")
    return frames, skipped, dropped


def parse_assessment_event(data):
    """events.jsonl row -> ZoneAssessment (inverse of ZoneAssessment.to_dict)"""
    tag = ZoneTag(data["tag"])
    color = DEFAULT_COLOR_SCHEME[tag]
    if data["color"] != color.name:
        color = Color(data["color"], color.rgb)
    return ZoneAssessment(
        timestamp_ms=data["t_ms"],
        sector=Sector(data["sector"]),
        tag=tag,
        color=color,
        distance_m=data.get("distance_m"),
        subject_id=data.get("subject_id"),
        out_of_range=bool(data.get("out_of_range", False)),
    )


def load_events(path):
    """Returns (list of ZoneAssessment, skipped messages)"""
    return _read_records(path, parse_assessment_event)
