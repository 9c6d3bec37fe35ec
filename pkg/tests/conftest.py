from __future__ import annotations

from dataclasses import replace
from pathlib import Path

import numpy as np
import pytest

from poseguard import (
    BBox,
    Detection,
    Frame,
    Keypoint,
    PersonSpec,
    Pose,
    ScenarioSpec,
    gen_scenario,
    init_test_weights,
)

GOLDEN_DIR = Path(__file__).parent / "golden"


@pytest.hookimpl(tryfirst=True, hookwrapper=True)
def pytest_runtest_makereport(item, call):
    # expose each phase's outcome on the item so fixtures can see whether
    # the test body passed (used by the acceptance announcer)
    outcome = yield
    report = outcome.get_result()
    setattr(item, "rep_" + report.when, report)

# Canonical two-person confrontation used by determinism and engine tests.
FIGHT_SPEC = ScenarioSpec(
    persons=(
        PersonSpec(
            start=(200.0, 300.0),
            velocity=(40.0, 0.0),
            template="arm_swing",
            swing_amplitude=30.0,
            swing_frequency=2.0,
        ),
        PersonSpec(
            start=(500.0, 300.0),
            velocity=(-40.0, 0.0),
            template="arm_swing",
            swing_amplitude=30.0,
            swing_frequency=2.0,
        ),
    ),
    seed=7,
    duration_s=4.0,
    fps=30.0,
    noise_std=1.5,
    stream_id="fight",
)


def pose_from_points(points, conf=0.95) -> Pose:
    return Pose(tuple(Keypoint(float(x), float(y), conf) for x, y in points))


def det_from_points(points, conf=0.95, score=0.9) -> Detection:
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    margin_x = 0.05 * (max(xs) - min(xs))
    margin_y = 0.05 * (max(ys) - min(ys))
    bbox = BBox(
        min(xs) - margin_x,
        min(ys) - margin_y,
        (max(xs) - min(xs)) + 2 * margin_x,
        (max(ys) - min(ys)) + 2 * margin_y,
    )
    return Detection(bbox=bbox, pose=pose_from_points(points, conf), score=score)


def random_points(rng: np.random.Generator, spread=120.0):
    center = rng.uniform(150.0, 400.0, size=2)
    return center + rng.uniform(-spread, spread, size=(17, 2))


def frame_with(detections, index=0, stream_id="test", fps=30.0) -> Frame:
    return Frame(
        stream_id=stream_id,
        frame_index=index,
        timestamp_ms=round(1000.0 * index / fps),
        detections=tuple(detections),
    )


@pytest.fixture(scope="session")
def tiny_weights():
    """Small but non-trivial dims; fast enough for per-frame forward passes."""
    return init_test_weights(42, (10, 24, 16, 8))


@pytest.fixture(scope="session")
def default_weights():
    """Production-sized dims used by the throughput and golden criteria."""
    return init_test_weights(42, (10, 24, 64, 32))


@pytest.fixture(scope="session")
def alerting_weights(tiny_weights):
    """Seed-42 weights with the aggressor logit biased hard positive, so the
    debounce/alert path actually fires in synthetic runs."""
    return replace(tiny_weights, dense_b=np.array([0.0, 4.0, 0.0]))


@pytest.fixture(scope="session")
def fight_frames():
    return gen_scenario(FIGHT_SPEC)
