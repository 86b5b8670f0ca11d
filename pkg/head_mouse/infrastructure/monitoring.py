import logging
import sys
from typing import Any, Dict, Optional

import colorlog
import structlog
from prometheus_client import CollectorRegistry, Counter, Gauge, disable_created_metrics, generate_latest
from structlog.processors import JSONRenderer


class LoggingManager:
    """Logging configuration for the simulator and CLI"""

    def __init__(self, config: Dict[str, Any]):
        self.config = config
        self.log_level = config.get('log_level', 'WARNING').upper()
        self.log_format = config.get('log_format', 'console')
        self.stream = config.get('stream', sys.stderr)

        self.setup_logging()

    def setup_logging(self):
        """Configure structlog on top of a colorlog stderr handler"""
        structlog.configure(
            processors=[
                structlog.stdlib.filter_by_level,
                structlog.processors.TimeStamper(fmt="iso"),
                structlog.stdlib.add_logger_name,
                structlog.stdlib.add_log_level,
                structlog.stdlib.PositionalArgumentsFormatter(),
                structlog.processors.StackInfoRenderer(),
                structlog.processors.format_exc_info,
                structlog.processors.UnicodeDecoder(),
                JSONRenderer() if self.log_format == 'json' else structlog.dev.ConsoleRenderer(colors=False)
            ],
            context_class=dict,
            logger_factory=structlog.stdlib.LoggerFactory(),
            wrapper_class=structlog.stdlib.BoundLogger,
            cache_logger_on_first_use=False,
        )

        # stdout carries command output, so logs go to stderr
        console_handler = colorlog.StreamHandler(self.stream)
        console_handler.setFormatter(colorlog.ColoredFormatter(
            '%(log_color)s%(levelname)-8s%(reset)s %(blue)s%(name)s%(reset)s: %(message)s',
            reset=True,
            log_colors={
                'DEBUG': 'cyan',
                'INFO': 'green',
                'WARNING': 'yellow',
                'ERROR': 'red',
                'CRITICAL': 'red,bg_white',
            },
            style='%'
        ))
        console_handler.setLevel(self.log_level)

        root_logger = logging.getLogger()
        root_logger.setLevel(self.log_level)
        root_logger.handlers.clear()
        root_logger.addHandler(console_handler)

        logging.getLogger('head_mouse').setLevel(self.log_level)


def configure_logging(level: str = 'WARNING', log_format: str = 'console') -> LoggingManager:
    """Set up logging once per process entry point"""
    return LoggingManager({'log_level': level, 'log_format': log_format})


class ReplayMetrics:
    """Prometheus-compatible counters for one replay run"""

    def __init__(self, registry: Optional[CollectorRegistry] = None):
        # process-wide setting; _created series carry wall-clock time
        disable_created_metrics()
        self.registry = registry or CollectorRegistry()

        self.reports = Counter(
            'head_mouse_reports',
            'HID reports emitted',
            registry=self.registry
        )

        self.button_events = Counter(
            'head_mouse_button_events',
            'Debounced pedal transitions',
            ['pedal', 'kind'],
            registry=self.registry
        )

        self.unhealthy_ticks = Counter(
            'head_mouse_unhealthy_ticks',
            'Ticks with the diagnostic LED not OK',
            ['led'],
            registry=self.registry
        )

        self.cursor_position = Gauge(
            'head_mouse_cursor_position_px',
            'Final virtual cursor position',
            ['axis'],
            registry=self.registry
        )

    def record_report(self):
        self.reports.inc()

    def record_event(self, pedal: str, kind: str):
        self.button_events.labels(pedal=pedal, kind=kind).inc()

    def record_unhealthy_tick(self, led: str):
        self.unhealthy_ticks.labels(led=led).inc()

    def set_cursor(self, x: int, y: int):
        self.cursor_position.labels(axis='x').set(x)
        self.cursor_position.labels(axis='y').set(y)

    def value(self, name: str, labels: Optional[Dict[str, str]] = None) -> float:
        """Current sample value, 0.0 if the series has not been touched"""
        result = self.registry.get_sample_value(name, labels or {})
        return 0.0 if result is None else result

    def get_metrics(self) -> str:
        """Get Prometheus-formatted metrics"""
        return generate_latest(self.registry).decode('utf-8')
