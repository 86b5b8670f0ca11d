import math

import pytest

from head_mouse.simulation.noise import (
    SplitMix64,
    field_streams,
    inject_noise,
    noise_sample,
    round_half_away,
)
from head_mouse.simulation.scenarios import static_trace
from head_mouse.simulation.trace import COUNT_FIELDS, Trace, TraceRow


@pytest.fixture
def trace():
    """One second of a level, motionless head"""
    return static_trace(duration_ms=1000)


class TestSplitMix64:
    """Test cases for the generator"""

    def test_known_outputs(self):
        assert SplitMix64(0).next() == 0xE220A8397B1DCDAF
        assert SplitMix64(1234567).next() == 6457827717110365317

    def test_seed_is_reduced_to_64_bits(self):
        assert SplitMix64(1 << 64).next() == SplitMix64(0).next()

    def test_uniform_range(self):
        rng = SplitMix64(42)
        for _ in range(10_000):
            u = rng.uniform()
            assert 0.0 <= u < 1.0

    def test_gaussian_moments(self):
        rng = SplitMix64(7)
        draws = [rng.gaussian() for _ in range(20_000)]
        mean = sum(draws) / len(draws)
        var = sum((d - mean) ** 2 for d in draws) / len(draws)
        assert abs(mean) < 0.05
        assert abs(var - 1.0) < 0.05


class TestRounding:
    @pytest.mark.parametrize("x, expected", [(0.5, 1), (-0.5, -1), (1.49, 1), (-2.5, -3), (0.0, 0)])
    def test_half_away_from_zero(self, x, expected):
        assert round_half_away(x) == expected


class TestInjectNoise:
    """Test cases for reproducible sensor noise"""

    def test_zero_sigma_is_identity(self, trace):
        assert inject_noise(trace, 1, 0.0) is trace

    def test_negative_sigma(self, trace):
        with pytest.raises(ValueError):
            inject_noise(trace, 1, -1.0)

    def test_same_seed_same_trace(self, trace):
        assert inject_noise(trace, 123, 50.0) == inject_noise(trace, 123, 50.0)

    def test_different_seed_different_trace(self, trace):
        assert inject_noise(trace, 123, 50.0) != inject_noise(trace, 124, 50.0)

    def test_only_counts_change(self, trace):
        noisy = inject_noise(trace, 5, 50.0)
        for before, after in zip(trace, noisy):
            assert after.t_ms == before.t_ms
            assert (after.pedal_l, after.pedal_r, after.a_attached, after.b_attached) == \
                (before.pedal_l, before.pedal_r, before.a_attached, before.b_attached)

    def test_bounded_by_three_sigma(self, trace):
        sigma = 50.0
        noisy = inject_noise(trace, 9, sigma)
        for before, after in zip(trace, noisy):
            for name in COUNT_FIELDS:
                assert abs(getattr(after, name) - getattr(before, name)) <= round_half_away(3 * sigma)

    def test_clamped_to_int16(self):
        trace = Trace((TraceRow(t_ms=0, ax=32767, ay=-32768),))
        noisy = inject_noise(trace, 3, 10_000.0)
        assert -32768 <= noisy[0].ax <= 32767
        assert -32768 <= noisy[0].ay <= 32767

    def test_matches_stream_layout(self, trace):
        """Root stream seeds one stream per field, in column order; each row draws once per field"""
        seed, sigma = 2024, 40.0
        root = SplitMix64(seed)
        streams = {name: SplitMix64(root.next()) for name in ("ax", "ay", "az", "gx", "gy", "gz")}

        def draw(stream):
            u1 = 1.0 - (stream.next() >> 11) * 2.0 ** -53
            u2 = (stream.next() >> 11) * 2.0 ** -53
            z = math.sqrt(-2.0 * math.log(u1)) * math.cos(2.0 * math.pi * u2)
            z = max(-3.0, min(3.0, z))
            return int(math.copysign(math.floor(abs(sigma * z) + 0.5), sigma * z))

        noisy = inject_noise(trace, seed, sigma)
        for before, after in zip(trace, noisy):
            for name in COUNT_FIELDS:
                assert getattr(after, name) == getattr(before, name) + draw(streams[name])

    def test_golden_first_row(self):
        """Seed 1, sigma 50: first draws of the ax and ay streams"""
        noisy = inject_noise(Trace((TraceRow(t_ms=0, az=16384),)), 1, 50.0)
        assert noisy[0].ax == 45
        assert noisy[0].ay == 55

    def test_golden_stream_state(self):
        streams = field_streams(1)
        assert streams["ax"].state == 10451216379200822465
        ax = streams["ax"]
        assert ax.next() >> 11 == 3316356330981164
        assert ax.next() >> 11 == 8498871037046174

    def test_field_streams_are_independent_of_trace(self):
        a, b = field_streams(77), field_streams(77)
        assert [a[n].next() for n in COUNT_FIELDS] == [b[n].next() for n in COUNT_FIELDS]
        assert noise_sample(SplitMix64(1), 0.0) == 0
