"""
Scenario loading and deterministic simulation
"""
import json
import os

import numpy as np
import pytest

from config import Settings
from sensing.models import CalibrationProfile, Sector, ZoneTag
from sensing.optics import estimate_distance
from simulation.runner import (
    MIN_BBOX_PX,
    NoiseContext,
    replicate_marker_comparison,
    run_replications,
    run_scenario,
    synth_bbox_height,
    synth_range,
)
from simulation.scenario import load_scenario, parse_scenario
from utils.errors import InvalidArgumentError, ValidationError


def _scenario(subjects, seed=0, noise=None, markers=None, camera=None):
    data = {
        "camera": camera or {"focal_length_px": 600.0, "assumed_subject_extent_m": 1.6256},
        "subjects": subjects,
        "seed": seed,
    }
    if noise:
        data["noise"] = noise
    if markers:
        data["markers"] = markers
    return parse_scenario(data, name="t")


def _subject(subject_id, sector, distances, height=1.6256, step_ms=3000):
    return {
        "subject_id": subject_id,
        "true_height_m": height,
        "trajectory": [
            {"timestamp_ms": i * step_ms, "sector": sector, "true_distance_m": d}
            for i, d in enumerate(distances)
        ],
    }


# ============== SYNTHESIS ==============

def test_synth_bbox_two_meters():
    assert synth_bbox_height(2.0, 1.6256, 600) == pytest.approx(487.68)


def test_synth_bbox_clamped_to_one_pixel():
    assert synth_bbox_height(1000.0, 0.1, 1.0) == MIN_BBOX_PX


def test_synth_range_ceiling():
    assert synth_range(5.0, max_range_m=4.0) is None
    assert synth_range(3.9, max_range_m=4.0) == 3.9


def test_synth_rejects_bad_distance():
    with pytest.raises(InvalidArgumentError):
        synth_bbox_height(0, 1.6, 600)
    with pytest.raises(InvalidArgumentError):
        synth_range(-1.0)


def test_zero_sigma_draws_nothing():
    rng = np.random.default_rng(1)
    state = rng.bit_generator.state
    noise = NoiseContext(rng, 0.0, 0.0)
    synth_range(1.0, noise)
    synth_bbox_height(1.0, 1.6, 600, noise)
    assert rng.bit_generator.state == state


def test_range_noise_statistics():
    noise = NoiseContext(Settings().make_rng(99), sigma_m=0.02)
    readings = np.array([synth_range(2.0, noise) for _ in range(10000)])
    assert readings.mean() == pytest.approx(2.0, abs=0.002)
    assert readings.std() == pytest.approx(0.02, rel=0.05)


# ============== RUNS ==============

def test_walkthrough_left_escalates(scenario_dir):
    log = run_scenario(load_scenario(os.path.join(scenario_dir, "zone_walkthrough.json")))
    left = [a for a in log.assessments() if a.sector is Sector.LEFT]
    assert [a.tag for a in left] == [ZoneTag.SAFE, ZoneTag.WARNING, ZoneTag.UNSAFE]
    assert [a.color.name for a in left] == ["Green", "Orange", "Red"]
    right = [a for a in log.assessments() if a.sector is Sector.RIGHT]
    assert {a.tag for a in right} == {ZoneTag.SAFE}


def test_every_range_is_preceded_by_motion(scenario_dir):
    log = run_scenario(load_scenario(os.path.join(scenario_dir, "zone_walkthrough.json")))
    armed = set()
    for entry in log.entries:
        if entry.kind == "motion":
            armed.add(entry.sector)
        elif entry.kind == "range" and entry.assessment is not None:
            assert entry.sector in armed
            armed.discard(entry.sector)
    assert log.stats["dropped_unarmed"] == 0


def test_beyond_ceiling_reports_out_of_range():
    scenario = _scenario([_subject("far", "back", [5.0]), _subject("near", "left", [3.9])],
                         noise={"noise_sigma_m": 0.0})
    log = run_scenario(scenario)
    by_sector = {a.sector: a for a in log.assessments()}
    assert by_sector[Sector.BACK].out_of_range
    assert by_sector[Sector.BACK].tag is ZoneTag.SAFE
    assert by_sector[Sector.LEFT].distance_m <= 4.0
    assert log.stats["out_of_range"] == 1


def test_noiseless_front_recovers_truth():
    distances = [0.3, 0.75, 1.0, 2.0, 3.0, 4.0]
    scenario = _scenario([_subject("s", "front", distances)])
    log = run_scenario(scenario)
    for assessment, truth in zip(log.assessments(), distances):
        assert assessment.distance_m == pytest.approx(truth, rel=1e-9)


def test_height_mismatch_scales_estimate():
    scenario = _scenario([_subject("tall", "front", [2.0], height=1.6256 * 1.1)])
    [assessment] = run_scenario(scenario).assessments()
    assert assessment.distance_m == pytest.approx(2.0 / 1.1, rel=1e-9)


def test_two_subjects_same_frame():
    scenario = _scenario([
        {"subject_id": "b", "true_height_m": 1.6256,
         "trajectory": [{"timestamp_ms": 0, "sector": "front", "true_distance_m": 0.4}]},
        {"subject_id": "a", "true_height_m": 1.6256,
         "trajectory": [{"timestamp_ms": 0, "sector": "front", "true_distance_m": 1.2}]},
    ])
    log = run_scenario(scenario, record_overlays=True)
    assert [a.subject_id for a in log.assessments()] == ["a", "b"]
    assert log.overlays[-1].headline is ZoneTag.UNSAFE


def test_same_seed_is_identical():
    scenario = _scenario(
        [_subject("s", "front", [1.0, 2.0, 3.0]), _subject("l", "left", [0.6, 0.9])],
        seed=7, noise={"noise_sigma_px": 3.0, "noise_sigma_m": 0.05},
    )
    first = json.dumps(run_scenario(scenario).event_records(), sort_keys=True)
    second = json.dumps(run_scenario(scenario).event_records(), sort_keys=True)
    assert first == second


def test_different_seeds_differ():
    scenario = _scenario([_subject("s", "front", [1.0, 2.0, 3.0])], noise={"noise_sigma_px": 3.0})
    runs = run_replications(scenario, [1, 2])
    assert runs[0].seed == 1 and runs[1].seed == 2
    assert runs[0].event_records() != runs[1].event_records()


def test_replications_match_single_runs():
    scenario = _scenario([_subject("s", "front", [1.0, 2.0])], noise={"noise_sigma_px": 2.0})
    logs = run_replications(scenario, [3, 4, 5])
    for log in logs:
        assert log.event_records() == run_scenario(scenario.with_seed(log.seed)).event_records()


def test_empty_scenario_runs_clean(scenario_dir):
    log = run_scenario(load_scenario(os.path.join(scenario_dir, "empty.json")))
    assert log.entries == []
    assert log.assessments() == []


def test_ground_truth_sidecar(scenario_dir):
    log = run_scenario(load_scenario(os.path.join(scenario_dir, "zone_walkthrough.json")))
    records = log.ground_truth_records()
    assert len(records) == len(log.entries)
    assert {r["event"] for r in records} == {"motion", "range"}
    assert all("true_distance_m" in r for r in records)


# ============== MARKER COMPARISON ==============

def test_marker_comparison_from_field_values():
    report = replicate_marker_comparison()
    assert [round(r.percent_error, 4) for r in report.rows] == [0.9901, 1.6949, 1.4778]


def test_marker_comparison_by_simulation(scenario_dir):
    scenario = load_scenario(os.path.join(scenario_dir, "marker_comparison.json"))
    report = replicate_marker_comparison(scenario=scenario)
    rows = sorted(report.rows, key=lambda r: r.actual)
    assert [round(r.detected, 2) for r in rows] == [2.02, 2.95, 4.06]
    assert [r.actual for r in rows] == [2.0, 3.0, 4.0]
    assert [round(r.percent_error, 2) for r in rows] == [0.99, 1.69, 1.48]
    assert all("marker" in r.label for r in report.rows)


# ============== VALIDATION ==============

def test_scenario_violations_are_collected():
    with pytest.raises(ValidationError) as exc:
        parse_scenario({
            "camera": {"focal_length_px": -1},
            "subjects": [
                {"subject_id": "x", "true_height_m": 0, "trajectory": [
                    {"timestamp_ms": 10, "sector": "up", "true_distance_m": 1.0},
                ]},
            ],
            "noise": {"noise_sigma_px": -2},
            "extra": 1,
        })
    joined = "\n".join(exc.value.violations)
    assert "camera.focal_length_px" in joined
    assert "subjects[0].true_height_m" in joined
    assert "subjects[0].trajectory[0].sector" in joined
    assert "noise.noise_sigma_px" in joined
    assert "extra: unknown key" in joined


def test_scenario_timestamps_must_increase():
    with pytest.raises(ValidationError) as exc:
        _scenario([_subject("s", "left", [1.0, 1.0], step_ms=0)])
    assert any("must increase" in v for v in exc.value.violations)


def test_scenario_duplicate_subject():
    with pytest.raises(ValidationError):
        _scenario([_subject("s", "left", [1.0]), _subject("s", "right", [1.0])])


def test_scenario_rejects_two_subjects_on_one_ranger():
    with pytest.raises(ValidationError) as exc:
        _scenario([_subject("far", "left", [2.0]), _subject("near", "left", [0.4])])
    assert exc.value.violations == [
        "subjects[1].trajectory[0] shares left at 0 ms with 'far'",
    ]


def test_two_subjects_on_one_side_at_different_times_both_assessed():
    scenario = _scenario([
        _subject("far", "left", [2.0]),
        {"subject_id": "near", "true_height_m": 1.6256,
         "trajectory": [{"timestamp_ms": 10, "sector": "left", "true_distance_m": 0.4}]},
    ])
    log = run_scenario(scenario)
    assert [(a.tag, a.distance_m) for a in log.assessments()] == [
        (ZoneTag.SAFE, 2.0), (ZoneTag.UNSAFE, 0.4),
    ]
    assert log.stats["dropped_unarmed"] == 0


def test_front_subjects_may_share_a_timestamp():
    scenario = _scenario([_subject("a", "front", [1.0]), _subject("b", "front", [2.0])])
    assert len(run_scenario(scenario).assessments()) == 2


def test_invalid_json_file(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json", encoding="utf-8")
    with pytest.raises(ValidationError):
        load_scenario(str(path))


def test_default_extent_applies():
    scenario = parse_scenario({"camera": {"focal_length_px": 500.0}}, default_extent=1.7)
    assert scenario.camera == CalibrationProfile(500.0, 1.7)
    assert scenario.true_focal_length_px == 500.0
    assert estimate_distance(scenario.camera, 500.0) == pytest.approx(1.7)
