import math
import random

import pytest

from head_mouse.core.device_model import PhysicalSample
from head_mouse.core.orientation import (
    FusionState,
    SmootherState,
    TiltAngles,
    complementary_update,
    smooth_ema,
    tilt_from_accel,
    wrap_degrees,
)
from head_mouse.core.types import FreefallAmbiguousError


def _reference_tilt(ax, ay, az):
    pitch = math.degrees(math.atan2(-ax, math.sqrt(ay * ay + az * az)))
    roll = math.degrees(math.atan2(ay, az))
    return pitch, roll


def _angle_gap(a, b):
    return abs(wrap_degrees(a - b))


@pytest.fixture
def level():
    return TiltAngles(pitch=0.0, roll=0.0)


class TestWrapDegrees:
    """Test cases for angle wrapping into (-180, 180]"""

    @pytest.mark.parametrize("angle, expected", [
        (0.0, 0.0),
        (190.0, -170.0),
        (-190.0, 170.0),
        (180.0, 180.0),
        (-180.0, 180.0),
        (540.0, 180.0),
        (360.0, 0.0),
    ])
    def test_examples(self, angle, expected):
        assert wrap_degrees(angle) == pytest.approx(expected)

    def test_range(self):
        rng = random.Random(3)
        for _ in range(10_000):
            wrapped = wrap_degrees(rng.uniform(-2000.0, 2000.0))
            assert -180.0 < wrapped <= 180.0


class TestTiltFromAccel:
    """Test cases for accelerometer-only tilt"""

    def test_level(self):
        tilt = tilt_from_accel(PhysicalSample(accel=(0.0, 0.0, 1.0)))
        assert tilt.pitch == 0.0
        assert tilt.roll == 0.0

    def test_nose_down(self):
        tilt = tilt_from_accel(PhysicalSample(accel=(-1.0, 0.0, 0.0)))
        assert tilt.pitch == pytest.approx(90.0)

    def test_side(self):
        tilt = tilt_from_accel(PhysicalSample(accel=(0.0, 1.0, 0.0)))
        assert tilt.pitch == pytest.approx(0.0)
        assert tilt.roll == pytest.approx(90.0)

    def test_upside_down_roll_is_180(self):
        tilt = tilt_from_accel(PhysicalSample(accel=(0.0, 0.0, -1.0)))
        assert tilt.roll == 180.0

    def test_freefall(self):
        with pytest.raises(FreefallAmbiguousError):
            tilt_from_accel(PhysicalSample(accel=(0.01, 0.01, 0.01)))

    def test_matches_reference_over_many_directions(self):
        """Unit gravity directions against a direct two-argument arctangent computation"""
        rng = random.Random(11)
        for _ in range(2000):
            v = [rng.gauss(0.0, 1.0) for _ in range(3)]
            norm = math.sqrt(sum(c * c for c in v))
            ax, ay, az = (c / norm for c in v)
            tilt = tilt_from_accel(PhysicalSample(accel=(ax, ay, az)))
            pitch, roll = _reference_tilt(ax, ay, az)
            assert abs(tilt.pitch - pitch) < 1e-9
            assert _angle_gap(tilt.roll, roll) < 1e-9

    def test_invariant_to_positive_scaling(self):
        rng = random.Random(12)
        for _ in range(2000):
            v = tuple(rng.uniform(-1.0, 1.0) for _ in range(3))
            if math.sqrt(sum(c * c for c in v)) <= 0.1:
                continue
            scale = rng.uniform(0.5, 4.0)
            base = tilt_from_accel(PhysicalSample(accel=v))
            scaled = tilt_from_accel(PhysicalSample(accel=tuple(scale * c for c in v)))
            assert abs(base.pitch - scaled.pitch) < 1e-9
            assert _angle_gap(base.roll, scaled.roll) < 1e-9

    def test_angles_in_range(self):
        rng = random.Random(13)
        for _ in range(2000):
            v = tuple(rng.uniform(-2.0, 2.0) for _ in range(3))
            if math.sqrt(sum(c * c for c in v)) <= 0.05:
                continue
            tilt = tilt_from_accel(PhysicalSample(accel=v))
            assert -90.0 <= tilt.pitch <= 90.0
            assert -180.0 < tilt.roll <= 180.0


class TestSmoothEma:
    """Test cases for exponential smoothing"""

    def test_alpha_one_passes_through(self, level):
        new = TiltAngles(pitch=12.5, roll=-40.0)
        assert smooth_ema(SmootherState(current=level, alpha=1.0), new).current == new

    def test_half_step(self, level):
        st = smooth_ema(SmootherState(current=level, alpha=0.5), TiltAngles(pitch=10.0, roll=-20.0))
        assert st.current.pitch == pytest.approx(5.0)
        assert st.current.roll == pytest.approx(-10.0)

    def test_wrap_aware_roll(self):
        """Averaging across the +-180 seam goes the short way round"""
        st = SmootherState(current=TiltAngles(pitch=0.0, roll=170.0), alpha=0.5)
        st = smooth_ema(st, TiltAngles(pitch=0.0, roll=-170.0))
        assert st.current.roll == pytest.approx(180.0)

    def test_contraction_and_convergence(self, level):
        target = TiltAngles(pitch=30.0, roll=-60.0)
        st = SmootherState(current=level, alpha=0.2)
        gap = _angle_gap(st.current.roll, target.roll) + abs(st.current.pitch - target.pitch)
        for _ in range(200):
            st = smooth_ema(st, target)
            new_gap = _angle_gap(st.current.roll, target.roll) + abs(st.current.pitch - target.pitch)
            assert new_gap <= gap
            gap = new_gap
        assert gap < 1e-6

    def test_invalid_alpha(self, level):
        with pytest.raises(ValueError):
            SmootherState(current=level, alpha=0.0)


class TestComplementaryUpdate:
    """Test cases for the complementary filter"""

    def test_pure_integration(self, level):
        fs = FusionState(angles=level, k=1.0)
        sample = PhysicalSample(accel=(0.0, 0.0, 0.0), gyro=(50.0, 100.0, 0.0))
        out = complementary_update(fs, sample, 0.01)
        assert out.angles.pitch == pytest.approx(1.0)
        assert out.angles.roll == pytest.approx(0.5)

    def test_k_zero_is_accel_tilt(self, level):
        sample = PhysicalSample(accel=(-0.2, 0.3, 0.9), gyro=(500.0, -500.0, 0.0))
        out = complementary_update(FusionState(angles=level, k=0.0), sample, 0.01)
        assert out.angles == tilt_from_accel(sample)

    def test_identity_at_rest(self, level):
        sample = PhysicalSample(accel=(0.0, 0.0, 1.0))
        out = complementary_update(FusionState(angles=level, k=0.98), sample, 0.01)
        assert out.angles.pitch == pytest.approx(0.0)
        assert out.angles.roll == pytest.approx(0.0)

    def test_blend(self, level):
        """1 deg from the gyro, 5 deg from the accelerometer, 2% accelerometer weight"""
        p = math.radians(5.0)
        sample = PhysicalSample(accel=(-math.sin(p), 0.0, math.cos(p)), gyro=(0.0, 100.0, 0.0))
        out = complementary_update(FusionState(angles=level, k=0.98), sample, 0.01)
        assert out.angles.pitch == pytest.approx(1.08, abs=1e-9)
        assert out.angles.roll == pytest.approx(0.0, abs=1e-9)

    @pytest.mark.parametrize("dt", [0.0, -0.01])
    def test_rejects_non_positive_dt(self, level, dt):
        with pytest.raises(ValueError):
            complementary_update(FusionState(angles=level), PhysicalSample(accel=(0.0, 0.0, 1.0)), dt)
