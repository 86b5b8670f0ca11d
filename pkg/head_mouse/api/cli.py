#!/usr/bin/env python3
"""
Command-line interface for the head mouse simulator

Exit codes: 0 success, 1 validation or usage error, 2 I/O error.
"""

import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import click
import structlog

from ..core.config import HeadMouseSettings, load_config
from ..core.controller import init_controller
from ..core.device_model import (
    RegisterFile,
    decode_burst,
    load_sample,
    raw_to_physical,
    temperature_celsius,
)
from ..core.types import HeadMouseError, Mode
from ..infrastructure.monitoring import configure_logging
from ..simulation.features import feature_matrix
from ..simulation.noise import inject_noise
from ..simulation.replay import run_replay, static_jitter, write_path, write_report_stream
from ..simulation.scenarios import (
    accessory_toggle_trace,
    press_during_motion_trace,
    static_trace,
    target_acquisition_trace,
    tilt_hold_trace,
)
from ..simulation.trace import load_trace, save_trace

logger = structlog.get_logger(__name__)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_IO = 2

MODE_CHOICE = click.Choice([mode.value for mode in Mode])
CONFIG_OPTION = click.option('--config', 'config_file', default=None, help='Path to a key = value config file')
MODE_OPTION = click.option('--mode', default=None, type=MODE_CHOICE, help='Override the configured mode')


def _settings(config_file: Optional[str], mode: Optional[str]) -> HeadMouseSettings:
    return load_config(config_file, overrides={'mode': mode})


@click.group()
@click.option('--log-level', default='WARNING', type=click.Choice(['DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'],
              case_sensitive=False), help='Log level (logs go to stderr)')
@click.option('--log-format', default='console', type=click.Choice(['console', 'json']), help='Log renderer')
def cli(log_level: str, log_format: str):
    """Head mouse simulator: replay traces through the emulated firmware"""
    configure_logging(log_level, log_format)


@cli.command()
@click.argument('trace_file')
@CONFIG_OPTION
@MODE_OPTION
@click.option('--reports', 'reports_out', default=None, help='Write the report stream to this file')
@click.option('--path', 'path_out', default=None, help='Write the cursor path to this file')
@click.option('--metrics', 'metrics_out', default=None, help='Write Prometheus metrics to this file')
def simulate(trace_file: str, config_file: Optional[str], mode: Optional[str], reports_out: Optional[str],
             path_out: Optional[str], metrics_out: Optional[str]):
    """Replay a trace and print a summary"""
    settings = _settings(config_file, mode)
    trace = load_trace(trace_file)
    output = run_replay(trace, settings.controller, settings.screen)

    if reports_out:
        write_report_stream(reports_out, output.reports)
    if path_out:
        write_path(path_out, output.path)
    if metrics_out:
        Path(metrics_out).write_text(output.metrics.get_metrics(), encoding='utf-8', newline='\n')

    x, y = output.path.final
    click.echo(f"mode={settings.mode.value}")
    click.echo(f"rows={len(trace)}")
    click.echo(f"reports={len(output.reports)}")
    click.echo(f"events={len(output.events)}")
    for event in output.events:
        click.echo(f"event {event.t} {event.pedal.value} {event.kind.value}")
    for t_ms, diag in output.led_changes():
        click.echo(f"led {t_ms} {diag.led.value}")
    click.echo(f"cursor={x},{y}")


@cli.command()
@CONFIG_OPTION
@MODE_OPTION
def features(config_file: Optional[str], mode: Optional[str]):
    """Print the feature matrix"""
    settings = _settings(config_file, mode)
    for line in feature_matrix(settings.controller).lines():
        click.echo(line)


@cli.command()
@click.argument('trace_file')
@click.option('--from', 't_from', required=True, type=int, help='Window start (ms)')
@click.option('--to', 't_to', required=True, type=int, help='Window end (ms)')
@CONFIG_OPTION
@MODE_OPTION
def jitter(trace_file: str, t_from: int, t_to: int, config_file: Optional[str], mode: Optional[str]):
    """Replay a trace and print cursor jitter over a time window"""
    settings = _settings(config_file, mode)
    output = run_replay(load_trace(trace_file), settings.controller, settings.screen)
    stats = static_jitter(output.path, (t_from, t_to))
    click.echo(f"rms_px={stats.rms_px!r}")
    click.echo(f"peak_px={stats.peak_px!r}")


@cli.command()
@click.argument('hex_bytes', nargs=-1, required=True)
@CONFIG_OPTION
def decode(hex_bytes: Sequence[str], config_file: Optional[str]):
    """Decode a 14-byte sensor burst given as hex"""
    settings = _settings(config_file, None)
    text = "".join(hex_bytes).replace(" ", "")
    try:
        data = bytes.fromhex(text)
    except ValueError as e:
        raise click.BadParameter(f"not hex: {text!r}") from e

    raw = decode_burst(data)
    physical = raw_to_physical(raw, settings.controller.scale)
    for name in ('ax', 'ay', 'az', 'temp', 'gx', 'gy', 'gz'):
        click.echo(f"{name}_raw={getattr(raw, name)}")
    for name, value in zip(('ax', 'ay', 'az'), physical.accel):
        click.echo(f"{name}={value!r} g")
    for name, value in zip(('gx', 'gy', 'gz'), physical.gyro):
        click.echo(f"{name}={value!r} dps")
    click.echo(f"temp={temperature_celsius(raw.temp):.2f} C")


@cli.command()
@click.argument('trace_file')
@click.option('--seed', required=True, type=int, help='64-bit noise seed')
@click.option('--sigma', required=True, type=float, help='Noise standard deviation in counts')
@click.option('--out', 'out_file', required=True, help='Output trace file')
def noise(trace_file: str, seed: int, sigma: float, out_file: str):
    """Write a copy of a trace with reproducible Gaussian sensor noise"""
    if sigma < 0:
        raise click.BadParameter("sigma must be >= 0", param_hint='--sigma')
    save_trace(inject_noise(load_trace(trace_file), seed, sigma), out_file)
    click.echo(f"wrote {out_file}")


@cli.command()
@click.argument('trace_file')
@CONFIG_OPTION
def calibrate(trace_file: str, config_file: Optional[str]):
    """Print the neutral pose captured from row 0"""
    settings = _settings(config_file, None)
    trace = load_trace(trace_file)
    if len(trace) == 0:
        raise click.BadParameter("trace has no rows", param_hint='TRACE_FILE')

    rf = RegisterFile.gy521(present=bool(trace[0].a_attached))
    load_sample(rf, trace[0].raw_sample)
    sample = raw_to_physical(trace[0].raw_sample, settings.controller.scale)
    state = init_controller(settings.controller, rf, sample)
    click.echo(f"pitch0={state.neutral.pitch0:.6f}")
    click.echo(f"roll0={state.neutral.roll0:.6f}")


@cli.command()
@click.argument('name', type=click.Choice(['static', 'tilt-hold', 'press-during-motion', 'accessory-toggle', 'target']))
@click.option('--out', 'out_file', required=True, help='Output trace file')
@CONFIG_OPTION
@click.option('--duration-ms', default=10_000, type=int, help='static: trace length')
@click.option('--pitch', default=10.0, type=float, help='tilt-hold: pitch in degrees')
@click.option('--roll', default=0.0, type=float, help='tilt-hold: roll in degrees')
@click.option('--hold-ms', default=1000, type=int, help='tilt-hold: hold duration')
@click.option('--distance', default=600, type=int, help='target: distance in pixels')
@click.option('--axis', default='x', type=click.Choice(['x', 'y']), help='target: cursor axis')
def scenario(name: str, out_file: str, config_file: Optional[str], duration_ms: int, pitch: float, roll: float,
             hold_ms: int, distance: int, axis: str):
    """Generate a synthetic trace"""
    settings = _settings(config_file, None)
    cfg = settings.controller
    builders: Dict[str, Any] = {
        'static': lambda: static_trace(duration_ms, cfg),
        'tilt-hold': lambda: tilt_hold_trace(pitch, roll, hold_ms, cfg),
        'press-during-motion': lambda: press_during_motion_trace(cfg),
        'accessory-toggle': lambda: accessory_toggle_trace(cfg=cfg),
        'target': lambda: target_acquisition_trace(cfg, distance_px=distance, axis=axis, screen=settings.screen),
    }
    trace = builders[name]()
    save_trace(trace, out_file)
    click.echo(f"wrote {out_file} ({len(trace)} rows)")


def run_cli(args: Optional[List[str]] = None) -> int:
    """Run the CLI and map failures to exit codes"""
    try:
        cli.main(args=args, prog_name='head-mouse', standalone_mode=False)
    except click.exceptions.Exit as e:
        return e.exit_code
    except click.exceptions.Abort:
        click.echo("Aborted", err=True)
        return EXIT_VALIDATION
    except click.ClickException as e:
        e.show()
        return EXIT_VALIDATION
    except OSError as e:
        name = getattr(e, 'filename', None) or str(e)
        click.echo(f"I/O error: {name}: {e.strerror or e}", err=True)
        return EXIT_IO
    except (HeadMouseError, ValueError) as e:
        click.echo(f"Error: {e}", err=True)
        return EXIT_VALIDATION
    return EXIT_OK


def main():
    """Main entry point"""
    sys.exit(run_cli())


if __name__ == '__main__':
    main()
