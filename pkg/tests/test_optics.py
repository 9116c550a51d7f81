"""
Triangle-similarity ranging
"""
import numpy as np
import pytest

from sensing.models import CalibrationProfile
from sensing.optics import (
    calibrate_focal_length,
    estimate_distance,
    estimate_subject_extent,
    feet_inches_to_m,
    m_to_inches,
)
from simulation.runner import MIN_BBOX_PX, synth_bbox_height
from utils.errors import InvalidArgumentError


def test_calibrate_identity():
    assert calibrate_focal_length(1, 1, 1) == 1


def test_calibrate_hand_evaluated():
    assert calibrate_focal_length(100, 2.0, 1.0) == 200.0


@pytest.mark.parametrize("args, name", [
    ((0, 1, 1), "pixel_extent_px"),
    ((1, -2, 1), "known_distance_m"),
    ((1, 1, float("inf")), "known_extent_m"),
    ((float("nan"), 1, 1), "pixel_extent_px"),
])
def test_calibrate_rejects_bad_input(args, name):
    with pytest.raises(InvalidArgumentError) as exc:
        calibrate_focal_length(*args)
    assert exc.value.parameter == name
    assert name in str(exc.value)


def test_calibrate_then_estimate_recovers_distance():
    focal = calibrate_focal_length(240.0, 3.5, 1.7)
    profile = CalibrationProfile(focal, 1.7)
    assert estimate_distance(profile, 240.0) == pytest.approx(3.5, rel=1e-12)


def test_estimate_hand_evaluated():
    assert estimate_distance(CalibrationProfile(200, 1.0), 100) == 2.0


@pytest.mark.parametrize("k", [0.5, 1, 37, 1000.25])
def test_estimate_focal_equals_pixels_gives_one_meter(k):
    assert estimate_distance(CalibrationProfile(k, 1.0), k) == pytest.approx(1.0, rel=1e-12)


def test_estimate_default_height_two_meters(profile):
    pixels = 600 * 1.6256 / 2.0
    assert pixels == pytest.approx(487.68)
    assert estimate_distance(profile, pixels) == pytest.approx(2.0, rel=1e-12)


def test_estimate_rejects_non_positive_height(profile):
    with pytest.raises(InvalidArgumentError):
        estimate_distance(profile, 0)


def test_estimate_rejects_height_too_small_to_range(profile):
    with pytest.raises(InvalidArgumentError) as exc:
        estimate_distance(profile, 1e-320)
    assert exc.value.parameter == "bbox_height_px"


def _unclamped_triples(rng, count):
    """(F, W, D) in [1, 1000] whose projection is at least 1 px"""
    triples = []
    while len(triples) < count:
        focal, extent, distance = rng.uniform(1, 1000, size=3)
        if extent * focal >= distance * MIN_BBOX_PX:
            triples.append((focal, extent, distance))
    return triples


def test_round_trip_random_triples():
    rng = np.random.default_rng(2021)
    for focal, extent, distance in _unclamped_triples(rng, 1000):
        pixels = synth_bbox_height(distance, extent, focal)
        estimate = estimate_distance(CalibrationProfile(focal, extent), pixels)
        assert estimate == pytest.approx(distance, rel=1e-9)


def test_sub_pixel_projection_hits_detector_floor():
    # F=1.857, W=10.43, D=989.3 projects to about 0.02 px
    pixels = synth_bbox_height(989.3, 10.43, 1.857)
    assert pixels == MIN_BBOX_PX
    assert estimate_distance(CalibrationProfile(1.857, 10.43), pixels) < 989.3


def test_scale_invariance(profile):
    base = estimate_distance(profile, 321.0)
    for k in (0.01, 0.5, 3.0, 250.0):
        scaled = CalibrationProfile(profile.focal_length_px * k, profile.assumed_subject_extent_m)
        assert estimate_distance(scaled, 321.0 * k) == pytest.approx(base, rel=1e-12)


def test_height_mismatch_matches_brute_force_oracle():
    heights = [1.4 + 0.1 * i for i in range(7)]
    distances = [0.5 * i for i in range(1, 9)]
    focal = 600.0

    for true_height in heights:
        for assumed in heights:
            profile = CalibrationProfile(focal, assumed)
            for true_distance in distances:
                pixels = synth_bbox_height(true_distance, true_height, focal)
                # oracle: box height ratio scales distance by assumed / true
                oracle = true_distance
                oracle *= assumed
                oracle /= true_height
                assert estimate_distance(profile, pixels) == pytest.approx(oracle, rel=1e-9)


def test_estimate_strictly_decreasing(profile):
    heights = np.linspace(1, 2000, 500)
    estimates = [estimate_distance(profile, h) for h in heights]
    assert all(a > b for a, b in zip(estimates, estimates[1:]))


def test_subject_extent_hand_evaluated():
    assert estimate_subject_extent(2.0, 200, 200) == 2.0


def test_subject_extent_inverts_estimate(profile):
    pixels = 412.5
    distance = estimate_distance(profile, pixels)
    extent = estimate_subject_extent(distance, pixels, profile.focal_length_px)
    assert extent == pytest.approx(profile.assumed_subject_extent_m, rel=1e-12)


def test_subject_extent_self_consistency_with_tape():
    # a tape-measured extent, projected and re-measured, reads back unchanged
    tape = 141.00 * 0.0254
    focal = 600.0
    distance = 5.0
    pixels = tape * focal / distance
    assert m_to_inches(estimate_subject_extent(distance, pixels, focal)) == pytest.approx(141.00)


def test_subject_extent_rejects_zero():
    with pytest.raises(InvalidArgumentError):
        estimate_subject_extent(2.0, 0, 600)


def test_feet_inches_default_height():
    assert feet_inches_to_m(5, 4) == pytest.approx(1.6256)


def test_profile_invariants():
    with pytest.raises(InvalidArgumentError):
        CalibrationProfile(0)
    with pytest.raises(InvalidArgumentError):
        CalibrationProfile(600, -1.0)
    assert CalibrationProfile(600).assumed_subject_extent_m == 1.6256
