"""Forecast input series and the time-index calendar shared by all stages.

A dataset holds one municipality's short-term forecast: twelve sky-state
codes and twelve wind codes (morning, afternoon and night for four days)
plus four daily maxima and minima.
"""
from __future__ import annotations

import datetime
import enum
from dataclasses import dataclass
from pathlib import Path

import yaml

from .errors import LengthError, ParseError, RangeError

N_INSTANTS = 12
N_DAYS = 4
SKY_RANGE = (101, 121)
WIND_RANGE = (299, 332)
TEMPERATURE_RANGE = (-60, 60)


class Part(enum.IntEnum):
    MORNING = 0
    AFTERNOON = 1
    NIGHT = 2

    def __str__(self):
        return self.name.lower()


@dataclass(frozen=True)
class TimePoint:
    index: int
    day: int
    part: Part


@dataclass(frozen=True)
class ForecastDataset:
    municipality_id: str
    issue_date: datetime.date
    sky: tuple[int, ...]
    wind: tuple[int, ...]
    tmax: tuple[int, ...]
    tmin: tuple[int, ...]

    @classmethod
    def from_mapping(cls, raw) -> "ForecastDataset":
        """Build an (unvalidated) dataset from a parsed document.

        Series must contain integers only; floats are rejected here rather
        than rounded.
        """
        missing = [k for k in ("municipality_id", "issue_date", "sky", "wind", "tmax", "tmin")
                   if k not in raw]
        if missing:
            raise ParseError(f"dataset is missing keys: {', '.join(missing)}")
        issue_date = raw["issue_date"]
        if isinstance(issue_date, str):
            try:
                issue_date = datetime.date.fromisoformat(issue_date)
            except ValueError as exc:
                raise ParseError(f"issue_date: {exc}") from None
        elif isinstance(issue_date, datetime.datetime) or not isinstance(issue_date, datetime.date):
            raise ParseError("issue_date must be an ISO-8601 date")
        series = {}
        for key in ("sky", "wind", "tmax", "tmin"):
            values = raw[key]
            if not isinstance(values, (list, tuple)):
                raise ParseError(f"{key} must be a list of integers")
            for i, v in enumerate(values):
                if isinstance(v, bool) or not isinstance(v, int):
                    raise ParseError(f"{key}[{i}] = {v!r} is not an integer")
            series[key] = tuple(values)
        return cls(municipality_id=str(raw["municipality_id"]), issue_date=issue_date, **series)

    def to_mapping(self) -> dict:
        return {
            "municipality_id": self.municipality_id,
            "issue_date": self.issue_date,
            "sky": list(self.sky),
            "wind": list(self.wind),
            "tmax": list(self.tmax),
            "tmin": list(self.tmin),
        }


def _check_series(name, values, length, bounds):
    if len(values) != length:
        raise LengthError(f"{name} has {len(values)} values, expected {length}", field=name)
    lo, hi = bounds
    for i, v in enumerate(values):
        if not lo <= v <= hi:
            raise RangeError(f"{name}[{i}] = {v} outside [{lo}, {hi}]", field=name, index=i)


def validate_dataset(raw: ForecastDataset) -> ForecastDataset:
    """Check lengths and code ranges; return the dataset unchanged.

    Raises
    ------
    LengthError
        A series has the wrong number of values.
    RangeError
        A code or temperature is out of range; ``index`` names the slot.
    """
    _check_series("sky", raw.sky, N_INSTANTS, SKY_RANGE)
    _check_series("wind", raw.wind, N_INSTANTS, WIND_RANGE)
    _check_series("tmax", raw.tmax, N_DAYS, TEMPERATURE_RANGE)
    _check_series("tmin", raw.tmin, N_DAYS, TEMPERATURE_RANGE)
    return raw


def index_to_timepoint(index: int) -> TimePoint:
    if isinstance(index, bool) or not isinstance(index, int) or not 0 <= index < N_INSTANTS:
        raise RangeError(f"time index {index!r} outside [0, {N_INSTANTS - 1}]", field="index")
    day, part = divmod(index, 3)
    return TimePoint(index=index, day=day, part=Part(part))


def load_dataset(path) -> ForecastDataset:
    """Read and validate one dataset document (YAML)."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        raw = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ParseError(f"{path}: {exc}") from None
    if not isinstance(raw, dict):
        raise ParseError(f"{path}: expected a mapping at top level")
    return validate_dataset(ForecastDataset.from_mapping(raw))


def dump_dataset(dataset: ForecastDataset) -> str:
    return yaml.safe_dump(dataset.to_mapping(), sort_keys=False, default_flow_style=None)
