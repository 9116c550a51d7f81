"""
Scenario model and JSON loader

A scenario is ground truth: subjects moving around the wearer, floor
markers, and the noise the simulated sensors add on top.
"""
import json
import logging
import os
from dataclasses import dataclass, replace

from sensing.models import DEFAULT_SUBJECT_EXTENT_M, CalibrationProfile, Sector
from utils.errors import ValidationError
from utils.validators import (
    validate_non_negative,
    validate_positive,
    validate_timestamp,
)

TOP_LEVEL_KEYS = ('camera', 'subjects', 'markers', 'noise', 'seed')


@dataclass(frozen=True)
class TrajectoryPoint:
    timestamp_ms: int
    sector: Sector
    true_distance_m: float


@dataclass(frozen=True)
class Subject:
    subject_id: str
    true_height_m: float
    trajectory: tuple = ()


@dataclass(frozen=True)
class Marker:
    label: str
    distance_m: float


@dataclass(frozen=True)
class Scenario:
    camera: CalibrationProfile
    true_focal_length_px: float
    subjects: tuple = ()
    markers: tuple = ()
    noise_sigma_px: float = 0.0
    noise_sigma_m: float = 0.0
    seed: int = 0
    name: str = "scenario"

    def with_seed(self, seed):
        return replace(self, seed=seed)

    def marker_label(self, distance_m, tolerance=1e-9):
        """Label of the marker at distance_m, if one is drawn there"""
        for marker in self.markers:
            if abs(marker.distance_m - distance_m) <= tolerance:
                return marker.label
        return None


# ============== PARSING ==============

def _check(violations, check, value, path):
    is_valid, error = check(value, path)
    if not is_valid:
        violations.append(error)
    return is_valid


def _as_dict(value, path, violations):
    if not isinstance(value, dict):
        violations.append(f"{path} must be an object")
        return {}
    return value


def _as_list(value, path, violations):
    if not isinstance(value, list):
        violations.append(f"{path} must be a list")
        return []
    return value


def _parse_camera(data, violations, default_extent):
    camera = _as_dict(data.get('camera'), 'camera', violations)

    focal = camera.get('focal_length_px')
    extent = camera.get('assumed_subject_extent_m', default_extent)
    true_focal = camera.get('true_focal_length_px', focal)
    camera_id = camera.get('camera_id', 'cam0')

    ok = _check(violations, validate_positive, focal, 'camera.focal_length_px')
    ok &= _check(violations, validate_positive, extent, 'camera.assumed_subject_extent_m')
    ok &= _check(violations, validate_positive, true_focal, 'camera.true_focal_length_px')
    if not isinstance(camera_id, str) or not camera_id.strip() or any(ch.isspace() for ch in camera_id):
        violations.append("camera.camera_id must be a label without whitespace")
        ok = False

    if not ok:
        return None, None
    return CalibrationProfile(focal, extent, camera_id), true_focal


def _parse_point(point, path, violations):
    point = _as_dict(point, path, violations)
    timestamp_ms = point.get('timestamp_ms')
    distance = point.get('true_distance_m')

    ok = _check(violations, validate_timestamp, timestamp_ms, f"{path}.timestamp_ms")
    ok &= _check(violations, validate_positive, distance, f"{path}.true_distance_m")
    try:
        sector = Sector(point.get('sector'))
    except ValueError:
        violations.append(f"{path}.sector must be one of front, left, right, back")
        ok = False

    if not ok:
        return None
    return TrajectoryPoint(timestamp_ms, sector, float(distance))


def _parse_subject(subject, path, violations):
    subject = _as_dict(subject, path, violations)
    subject_id = subject.get('subject_id')
    height = subject.get('true_height_m')

    ok = True
    if not isinstance(subject_id, str) or not subject_id:
        violations.append(f"{path}.subject_id must be a non-empty string")
        ok = False
    ok &= _check(violations, validate_positive, height, f"{path}.true_height_m")

    points = []
    raw_points = _as_list(subject.get('trajectory', []), f"{path}.trajectory", violations)
    for index, raw in enumerate(raw_points):
        point = _parse_point(raw, f"{path}.trajectory[{index}]", violations)
        if point is None:
            ok = False
            continue
        if points and point.timestamp_ms <= points[-1].timestamp_ms:
            violations.append(f"{path}.trajectory[{index}].timestamp_ms must increase")
            ok = False
        points.append(point)

    if not ok:
        return None
    return Subject(subject_id, float(height), tuple(points))


def _parse_marker(marker, path, violations):
    marker = _as_dict(marker, path, violations)
    label = marker.get('label')
    distance = marker.get('distance_m')

    ok = _check(violations, validate_positive, distance, f"{path}.distance_m")
    if not isinstance(label, str) or not label:
        violations.append(f"{path}.label must be a non-empty string")
        ok = False

    if not ok:
        return None
    return Marker(label, float(distance))


def parse_scenario(data, name="scenario", default_extent=DEFAULT_SUBJECT_EXTENT_M):
    """
    Validate a decoded scenario document

    Args:
        data (dict): Decoded JSON
        name (str): Scenario name used in logs
        default_extent (float): Assumed extent when the camera omits one

    Returns:
        Scenario

    Raises:
        ValidationError: every violation found, as field paths
    """
    violations = []
    data = _as_dict(data, '$', violations)

    unknown = sorted(set(data) - set(TOP_LEVEL_KEYS))
    violations.extend(f"{key}: unknown key" for key in unknown)

    camera, true_focal = _parse_camera(data, violations, default_extent)

    subjects = []
    seen = set()
    # One ranger per side/back sector: one subject per (sector, timestamp)
    ranged = {}
    for index, raw in enumerate(_as_list(data.get('subjects', []), 'subjects', violations)):
        subject = _parse_subject(raw, f"subjects[{index}]", violations)
        if subject is None:
            continue
        if subject.subject_id in seen:
            violations.append(f"subjects[{index}].subject_id duplicates {subject.subject_id!r}")
        seen.add(subject.subject_id)
        for point_index, point in enumerate(subject.trajectory):
            if not point.sector.is_ultrasonic:
                continue
            key = (point.sector, point.timestamp_ms)
            if key in ranged:
                violations.append(
                    f"subjects[{index}].trajectory[{point_index}] shares {point.sector.value} "
                    f"at {point.timestamp_ms} ms with {ranged[key]!r}"
                )
            else:
                ranged[key] = subject.subject_id
        subjects.append(subject)

    markers = []
    for index, raw in enumerate(_as_list(data.get('markers', []), 'markers', violations)):
        marker = _parse_marker(raw, f"markers[{index}]", violations)
        if marker is not None:
            markers.append(marker)

    noise = _as_dict(data.get('noise', {}), 'noise', violations)
    sigma_px = noise.get('noise_sigma_px', 0.0)
    sigma_m = noise.get('noise_sigma_m', 0.0)
    _check(violations, validate_non_negative, sigma_px, 'noise.noise_sigma_px')
    _check(violations, validate_non_negative, sigma_m, 'noise.noise_sigma_m')

    seed = data.get('seed', 0)
    if not isinstance(seed, int) or isinstance(seed, bool) or seed < 0:
        violations.append("seed must be a non-negative integer")

    if violations:
        raise ValidationError(violations, name)

    return Scenario(
        camera=camera,
        true_focal_length_px=float(true_focal),
        subjects=tuple(subjects),
        markers=tuple(markers),
        noise_sigma_px=float(sigma_px),
        noise_sigma_m=float(sigma_m),
        seed=seed,
        name=name,
    )


def load_scenario(path, default_extent=DEFAULT_SUBJECT_EXTENT_M):
    """Read and validate a scenario JSON file"""
    name = os.path.splitext(os.path.basename(path))[0]
    with open(path, encoding='utf-8') as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as e:
            raise ValidationError([f"invalid JSON at line {e.lineno}: {e.msg}"], path) from e

    scenario = parse_scenario(data, name=name, default_extent=default_extent)
    logging.info(
        f"Loaded scenario {name}: {len(scenario.subjects)} subjects, "
        f"{len(scenario.markers)} markers, seed {scenario.seed}"
    )
    return scenario
