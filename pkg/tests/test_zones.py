"""
Tag reference classification and overlay frames
"""
import random

import numpy as np
import pytest

from sensing.models import Color, Sector, ZoneAssessment, ZoneTag
from sensing.zones import ZoneThresholds, classify, most_severe, render_overlay
from utils.errors import InvalidArgumentError

GREEN, ORANGE, RED = "Green", "Orange", "Red"


def _assessment(tag, sector=Sector.LEFT, distance=None, subject_id=None, t=0):
    _, color = classify(distance) if distance else (tag, Color("x", (0, 0, 0)))
    return ZoneAssessment(t, sector, tag, color, distance_m=distance, subject_id=subject_id)


@pytest.mark.parametrize("distance, tag, color", [
    (1.0, ZoneTag.SAFE, GREEN),
    (0.5, ZoneTag.UNSAFE, RED),
    (0.75, ZoneTag.WARNING, ORANGE),
    (0.9995, ZoneTag.WARNING, ORANGE),
])
def test_classify_reference_points(distance, tag, color):
    assert classify(distance)[0] is tag
    assert classify(distance)[1].name == color


@pytest.mark.parametrize("distance, tag, color", [
    (0.4999, ZoneTag.UNSAFE, RED),
    (0.5, ZoneTag.UNSAFE, RED),
    (0.5001, ZoneTag.WARNING, ORANGE),
    (0.75, ZoneTag.WARNING, ORANGE),
    (0.999, ZoneTag.WARNING, ORANGE),
    (0.9999, ZoneTag.WARNING, ORANGE),
    (1.0, ZoneTag.SAFE, GREEN),
    (1.0001, ZoneTag.SAFE, GREEN),
    (2.0, ZoneTag.SAFE, GREEN),
])
def test_boundary_sweep(distance, tag, color):
    got_tag, got_color = classify(distance)
    assert (got_tag, got_color.name) == (tag, color)


def test_boundary_exactness():
    eps = 1e-9
    assert classify(0.5)[0] is ZoneTag.UNSAFE
    assert classify(1.0)[0] is ZoneTag.SAFE
    assert classify(0.5 + eps)[0] is ZoneTag.WARNING
    assert classify(1.0 - eps)[0] is ZoneTag.WARNING


def test_default_rgb():
    assert classify(2.0)[1].rgb == (0, 128, 0)
    assert classify(0.8)[1].rgb == (255, 165, 0)
    assert classify(0.1)[1].rgb == (255, 0, 0)


@pytest.mark.parametrize("bad", [0, -0.1, float("nan"), float("inf")])
def test_classify_rejects(bad):
    with pytest.raises(InvalidArgumentError):
        classify(bad)


def test_severity_monotone_over_sweep():
    distances = np.sort(np.random.default_rng(5).uniform(1e-6, 10, 5000))
    severities = [classify(float(d))[0].severity for d in distances]
    assert all(a >= b for a, b in zip(severities, severities[1:]))


def test_custom_thresholds_and_scheme():
    thresholds = ZoneThresholds(unsafe_max_m=1.0, safe_min_m=2.0)
    scheme = {
        ZoneTag.SAFE: Color("Blue", (0, 0, 255)),
        ZoneTag.WARNING: Color("Yellow", (255, 255, 0)),
        ZoneTag.UNSAFE: Color("Magenta", (255, 0, 255)),
    }
    assert classify(1.5, thresholds, scheme) == (ZoneTag.WARNING, scheme[ZoneTag.WARNING])


def test_thresholds_must_be_ordered():
    with pytest.raises(InvalidArgumentError):
        ZoneThresholds(unsafe_max_m=1.0, safe_min_m=1.0)


def test_most_severe_empty_is_safe():
    assert most_severe([]) is ZoneTag.SAFE


def test_most_severe_order():
    assert most_severe([_assessment(ZoneTag.SAFE), _assessment(ZoneTag.WARNING)]) is ZoneTag.WARNING
    assert most_severe([
        _assessment(ZoneTag.WARNING), _assessment(ZoneTag.UNSAFE), _assessment(ZoneTag.SAFE),
    ]) is ZoneTag.UNSAFE


def test_overlay_idle():
    frame = render_overlay(0, [], [])
    assert [entry.sector for entry in frame.sectors] == list(Sector)
    for entry in frame.sectors:
        assert entry.tag is ZoneTag.SAFE
        assert entry.color.name == GREEN
        assert entry.distance_m is None
    assert frame.subjects == ()


def test_overlay_left_warning():
    tag, color = classify(0.8)
    left = ZoneAssessment(10, Sector.LEFT, tag, color, distance_m=0.8)
    frame = render_overlay(10, [left], [])
    entry = next(e for e in frame.sectors if e.sector is Sector.LEFT)
    assert (entry.tag, entry.color.name, entry.distance_m) == (ZoneTag.WARNING, ORANGE, 0.8)
    assert frame.headline is ZoneTag.WARNING


def test_overlay_two_front_subjects():
    near = _assessment(ZoneTag.UNSAFE, Sector.FRONT, 0.4, "a")
    far = _assessment(ZoneTag.SAFE, Sector.FRONT, 1.2, "b")
    frame = render_overlay(0, [], [far, near])
    assert [(s.subject_id, s.tag, s.color.name) for s in frame.subjects] == [
        ("a", ZoneTag.UNSAFE, RED),
        ("b", ZoneTag.SAFE, GREEN),
    ]
    front = next(e for e in frame.sectors if e.sector is Sector.FRONT)
    assert front.tag is ZoneTag.UNSAFE
    assert front.distance_m == 0.4


def test_overlay_independent_of_input_order():
    sectors = [
        _assessment(ZoneTag.WARNING, Sector.LEFT, 0.8),
        _assessment(ZoneTag.SAFE, Sector.BACK, 3.0),
        _assessment(ZoneTag.UNSAFE, Sector.RIGHT, 0.3),
    ]
    subjects = [_assessment(ZoneTag.SAFE, Sector.FRONT, 1.0 + i, f"s{i}") for i in range(5)]
    expected = render_overlay(5, sectors, subjects)

    shuffler = random.Random(3)
    for _ in range(10):
        shuffler.shuffle(sectors)
        shuffler.shuffle(subjects)
        assert render_overlay(5, sectors, subjects) == expected


def test_overlay_duplicate_sector_rejected():
    left = _assessment(ZoneTag.SAFE, Sector.LEFT, 2.0)
    with pytest.raises(InvalidArgumentError):
        render_overlay(0, [left, left], [])


def test_overlay_to_dict_shape():
    data = render_overlay(7, [], [_assessment(ZoneTag.SAFE, Sector.FRONT, 1.5, "p")]).to_dict()
    assert data["t_ms"] == 7
    assert len(data["sectors"]) == 4
    assert data["subjects"][0]["subject_id"] == "p"
