"""
Trace files: timestamped sensor counts, pedal levels and accessory flags

Format (UTF-8, LF line endings):

    t_ms,ax,ay,az,gx,gy,gz,pedal_l,pedal_r,a_attached,b_attached

Counts are signed 16-bit integers; pedal levels and attachment flags are 0/1.
Timestamps are strictly increasing. Traces are immutable historical input to
the replay engine and never consult the wall clock.
"""
from __future__ import annotations

import errno
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, List, Sequence, Union

import pandas as pd
import structlog
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from ..core.device_model import RawImuSample
from ..core.input_buttons import PedalLevels
from ..core.types import INT16_MAX, INT16_MIN, Level, NonMonotonicTimeError, TraceParseError, TraceRangeError

logger = structlog.get_logger(__name__)

TRACE_COLUMNS = [
    't_ms', 'ax', 'ay', 'az', 'gx', 'gy', 'gz',
    'pedal_l', 'pedal_r', 'a_attached', 'b_attached',
]
COUNT_FIELDS = ('ax', 'ay', 'az', 'gx', 'gy', 'gz')

_RANGE_ERROR_TYPES = {'greater_than_equal', 'less_than_equal', 'greater_than', 'less_than'}


class TraceRow(BaseModel):
    """One sampled instant of the recorded session"""
    model_config = ConfigDict(frozen=True, extra='forbid')

    t_ms: int = Field(ge=0)
    ax: int = Field(default=0, ge=INT16_MIN, le=INT16_MAX)
    ay: int = Field(default=0, ge=INT16_MIN, le=INT16_MAX)
    az: int = Field(default=0, ge=INT16_MIN, le=INT16_MAX)
    gx: int = Field(default=0, ge=INT16_MIN, le=INT16_MAX)
    gy: int = Field(default=0, ge=INT16_MIN, le=INT16_MAX)
    gz: int = Field(default=0, ge=INT16_MIN, le=INT16_MAX)
    pedal_l: int = Field(default=0, ge=0, le=1)
    pedal_r: int = Field(default=0, ge=0, le=1)
    a_attached: int = Field(default=1, ge=0, le=1)
    b_attached: int = Field(default=1, ge=0, le=1)

    @property
    def pedal_levels(self) -> PedalLevels:
        return PedalLevels(l_level=Level(self.pedal_l), r_level=Level(self.pedal_r))

    @property
    def raw_sample(self) -> RawImuSample:
        """Sensor burst for this row; the trace does not record temperature"""
        return RawImuSample(ax=self.ax, ay=self.ay, az=self.az, temp=0, gx=self.gx, gy=self.gy, gz=self.gz)


@dataclass(frozen=True)
class Trace:
    """Ordered rows with strictly increasing timestamps"""
    rows: tuple[TraceRow, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, 'rows', tuple(self.rows))
        for index in range(1, len(self.rows)):
            if self.rows[index].t_ms <= self.rows[index - 1].t_ms:
                raise NonMonotonicTimeError(
                    f"row {index}: t_ms {self.rows[index].t_ms} does not follow {self.rows[index - 1].t_ms}"
                )

    def __len__(self) -> int:
        return len(self.rows)

    def __iter__(self) -> Iterator[TraceRow]:
        return iter(self.rows)

    def __getitem__(self, index: int) -> TraceRow:
        return self.rows[index]


def _row_error(index: int, error: ValidationError) -> Exception:
    details = "; ".join(
        f"{'.'.join(str(x) for x in err['loc'])}: {err['msg']}" for err in error.errors()
    )
    message = f"line {index + 2}: {details}"
    if all(err['type'] in _RANGE_ERROR_TYPES for err in error.errors()):
        return TraceRangeError(message)
    return TraceParseError(message)


def rows_from_records(records: Sequence[dict]) -> List[TraceRow]:
    rows: List[TraceRow] = []
    for index, record in enumerate(records):
        try:
            rows.append(TraceRow.model_validate(record))
        except ValidationError as e:
            raise _row_error(index, e) from e
    return rows


def load_trace(path: Union[str, Path]) -> Trace:
    """
    Read and validate a trace CSV

    Raises:
        FileNotFoundError: If the file does not exist
        TraceParseError: Bad header, malformed row or wrong column count
        NonMonotonicTimeError: If t_ms does not strictly increase
        TraceRangeError: If a value is outside its allowed range
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(errno.ENOENT, "Trace file not found", str(path))

    # header=None: the header line fixes the column count, so longer rows fail to parse
    try:
        df = pd.read_csv(path, header=None, dtype=str, keep_default_na=False, encoding='utf-8')
    except pd.errors.EmptyDataError as e:
        raise TraceParseError(f"{path}: empty trace file") from e
    except pd.errors.ParserError as e:
        raise TraceParseError(f"{path}: wrong column count ({e})") from e
    except UnicodeDecodeError as e:
        raise TraceParseError(f"{path}: not UTF-8 ({e})") from e

    header = [str(value).strip() for value in df.iloc[0].tolist()]
    if header != TRACE_COLUMNS:
        raise TraceParseError(f"{path}: expected header {','.join(TRACE_COLUMNS)}, got {','.join(header)}")

    body = df.iloc[1:].reset_index(drop=True)
    body.columns = TRACE_COLUMNS
    short_rows = body.index[body.isna().any(axis=1)]
    if len(short_rows):
        raise TraceParseError(f"{path}: line {int(short_rows[0]) + 2}: wrong column count")

    records = [{key: value.strip() for key, value in record.items()} for record in body.to_dict('records')]
    trace = Trace(tuple(rows_from_records(records)))
    logger.debug("Trace loaded", path=str(path), rows=len(trace))
    return trace


def save_trace(trace: Trace, path: Union[str, Path]) -> None:
    """Write a trace in the same CSV format load_trace reads"""
    frame = pd.DataFrame([row.model_dump() for row in trace], columns=TRACE_COLUMNS)
    frame.to_csv(path, index=False, lineterminator='\n', encoding='utf-8')
