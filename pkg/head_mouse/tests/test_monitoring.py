import io
import json
import logging

import pytest
import structlog

from head_mouse.infrastructure.monitoring import LoggingManager, ReplayMetrics, configure_logging


@pytest.fixture
def log_stream():
    """Route logging into a buffer, restore the default setup afterwards"""
    stream = io.StringIO()
    yield stream
    configure_logging()


class TestLoggingManager:
    """Test cases for logging setup"""

    def test_console_logs_go_to_stream(self, log_stream):
        LoggingManager({'log_level': 'info', 'stream': log_stream})
        structlog.get_logger('head_mouse.tests').info("Replay started", rows=3)
        assert "Replay started" in log_stream.getvalue()
        assert "rows=3" in log_stream.getvalue()

    def test_level_filters(self, log_stream):
        LoggingManager({'log_level': 'WARNING', 'stream': log_stream})
        structlog.get_logger('head_mouse.tests').info("quiet")
        assert log_stream.getvalue() == ""
        assert logging.getLogger('head_mouse').level == logging.WARNING

    def test_json_format(self, log_stream):
        LoggingManager({'log_level': 'DEBUG', 'log_format': 'json', 'stream': log_stream})
        structlog.get_logger('head_mouse.tests').debug("LED changed", led="ok")
        line = log_stream.getvalue().strip().splitlines()[-1]
        payload = json.loads(line[line.index('{'):line.rindex('}') + 1])
        assert payload['event'] == "LED changed"
        assert payload['led'] == "ok"


class TestReplayMetrics:
    """Test cases for per-replay Prometheus metrics"""

    def test_counters(self):
        metrics = ReplayMetrics()
        metrics.record_report()
        metrics.record_report()
        metrics.record_event('L', 'press')
        metrics.record_unhealthy_tick('missing_b')
        metrics.set_cursor(12, 34)

        assert metrics.value('head_mouse_reports_total') == 2
        assert metrics.value('head_mouse_button_events_total', {'pedal': 'L', 'kind': 'press'}) == 1
        assert metrics.value('head_mouse_button_events_total', {'pedal': 'R', 'kind': 'press'}) == 0
        assert metrics.value('head_mouse_unhealthy_ticks_total', {'led': 'missing_b'}) == 1
        assert metrics.value('head_mouse_cursor_position_px', {'axis': 'y'}) == 34

    def test_registries_are_separate(self):
        first, second = ReplayMetrics(), ReplayMetrics()
        first.record_report()
        assert second.value('head_mouse_reports_total') == 0

    def test_exposition_is_reproducible(self):
        def render():
            metrics = ReplayMetrics()
            metrics.record_report()
            metrics.set_cursor(1, 2)
            return metrics.get_metrics()

        text = render()
        assert "head_mouse_reports_total 1.0" in text
        assert "_created" not in text
        assert render() == text
