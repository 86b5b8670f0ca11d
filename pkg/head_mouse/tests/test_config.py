from pathlib import Path

import pytest

from head_mouse.core.config import (
    AxisMap,
    ControllerConfig,
    HeadMouseSettings,
    MountConfig,
    build_settings,
    load_config,
    parse_config_text,
)
from head_mouse.core.types import ConfigurationError, Mode


@pytest.fixture
def config_file(tmp_path):
    path = tmp_path / "head_mouse.conf"
    path.write_text(
        "# bench setup\n"
        "mode = improved\n"
        "\n"
        "dead_zone_deg = 1.5   # tighter than default\n"
        "gain=4\n"
        "sign_y = -1\n"
        "fusion_enabled = true\n",
        encoding="utf-8",
    )
    return path


class TestParseConfigText:
    """Test cases for the key = value format"""

    def test_comments_and_blanks(self):
        assert parse_config_text("# c\n\n a = 1 # x\nb= two\n") == {"a": "1", "b": "two"}

    def test_missing_equals(self):
        with pytest.raises(ConfigurationError):
            parse_config_text("mode improved\n")

    def test_empty_key(self):
        with pytest.raises(ConfigurationError):
            parse_config_text("= 3\n")

    def test_duplicate_key(self):
        with pytest.raises(ConfigurationError):
            parse_config_text("gain = 1\ngain = 2\n")


class TestLoadConfig:
    """Test cases for configuration loading and validation"""

    def test_defaults(self):
        settings = load_config()
        assert settings == HeadMouseSettings()
        cfg = settings.controller
        assert cfg.tick_hz == 100
        assert cfg.mode == Mode.FAITHFUL
        assert not cfg.fusion_enabled
        assert cfg.alpha == 0.2
        assert cfg.k == 0.98
        assert cfg.debounce_ms == 20
        assert cfg.mapping.dead_zone == 2.0
        assert cfg.mapping.gain == 3.0
        assert cfg.mapping.max_count == 127
        assert cfg.scale.accel_sensitivity == 16384.0
        assert cfg.scale.gyro_sensitivity == 131.0
        assert cfg.mount.axis_map == AxisMap.PITCH_VERTICAL
        assert settings.screen.center == (960, 540)

    def test_from_file(self, config_file):
        settings = load_config(config_file)
        cfg = settings.controller
        assert cfg.mode == Mode.IMPROVED
        assert cfg.mapping.dead_zone == 1.5
        assert cfg.mapping.gain == 4.0
        assert cfg.mount.sign_y == -1
        assert cfg.fusion_enabled

    def test_overrides_win(self, config_file):
        settings = load_config(config_file, overrides={"mode": "faithful", "gain": None})
        assert settings.mode == Mode.FAITHFUL
        assert settings.gain == 4.0

    def test_unknown_key(self, tmp_path):
        path = tmp_path / "bad.conf"
        path.write_text("wheel = 1\n", encoding="utf-8")
        with pytest.raises(ConfigurationError) as exc_info:
            load_config(path)
        assert "wheel" in str(exc_info.value)

    @pytest.mark.parametrize("key, value", [
        ("alpha", "0"),
        ("alpha", "1.5"),
        ("k", "-0.1"),
        ("tick_hz", "0"),
        ("sign_x", "2"),
        ("debounce_ms", "0"),
        ("mode", "turbo"),
        ("gain", "fast"),
    ])
    def test_invalid_values(self, key, value):
        with pytest.raises(ConfigurationError):
            build_settings({key: value})

    def test_shipped_example_matches_defaults(self):
        example = Path(__file__).resolve().parents[2] / "head_mouse.conf.example"
        assert load_config(example) == HeadMouseSettings()

    def test_missing_file(self, tmp_path):
        with pytest.raises(OSError):
            load_config(tmp_path / "absent.conf")


class TestControllerConfig:
    @pytest.mark.parametrize("tick_hz, period", [(100, 10), (50, 20), (300, 3), (2000, 1)])
    def test_tick_period(self, tick_hz, period):
        assert ControllerConfig(tick_hz=tick_hz).tick_period_ms == period

    def test_mount_sign_validation(self):
        with pytest.raises(ValueError):
            MountConfig(sign_x=0)

    def test_frozen(self):
        with pytest.raises(Exception):
            ControllerConfig().tick_hz = 50
