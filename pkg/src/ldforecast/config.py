"""Expert-knowledge partitions: crisp code sets, fuzzy labels, interval bins.

Every breakpoint is held as a :class:`fractions.Fraction` (infinite shoulders
as ``float('inf')``), so memberships evaluated at integer time indices or at
proportions ``k/12`` are exact rationals.
"""
from __future__ import annotations

import csv
import functools
import re
from dataclasses import dataclass, field, replace
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Mapping

import yaml

from .data import N_INSTANTS, SKY_RANGE, WIND_RANGE
from .errors import InvariantError, ParseError

INF = float("inf")

DOMAIN_KINDS = ("time_index", "proportion", "temperature_delta")


def _number(value, what):
    if isinstance(value, bool):
        raise ParseError(f"{what}: expected a number, got {value!r}")
    if isinstance(value, float) and value in (INF, -INF):
        return value
    if isinstance(value, (int, float, str)):
        try:
            return Fraction(str(value))
        except ValueError:
            pass
    raise ParseError(f"{what}: expected a number, got {value!r}")


@dataclass(frozen=True)
class CrispCodeSet:
    label_id: str
    codes: frozenset
    kind: str | None = None

    def __contains__(self, code):
        return code in self.codes


@dataclass(frozen=True)
class TrapezoidFunction:
    a: object
    b: object
    c: object
    d: object
    domain_kind: str = "proportion"

    def __post_init__(self):
        if not self.a <= self.b <= self.c <= self.d:
            raise InvariantError(f"trapezoid breakpoints not ordered: {self.breakpoints()}")
        if self.domain_kind not in DOMAIN_KINDS:
            raise InvariantError(f"unknown domain kind {self.domain_kind!r}")

    def breakpoints(self):
        return (self.a, self.b, self.c, self.d)

    def __call__(self, x):
        return trapezoid_membership(x, self)


@dataclass(frozen=True)
class FuzzyLabel:
    label_id: str
    function: TrapezoidFunction
    name: str | None = None

    @property
    def display_name(self):
        return self.name or self.label_id


def _endpoint(token):
    if token.lstrip("+-") == "inf":
        return -INF if token.startswith("-") else INF
    return Fraction(token)


_INTERVAL_RE = re.compile(
    r"^\s*([\(\[])\s*([+-]?(?:inf|\d+(?:\.\d+)?))\s*,\s*([+-]?(?:inf|\d+(?:\.\d+)?))\s*([\)\]])\s*$"
)


@dataclass(frozen=True)
class Interval:
    lo: object
    hi: object
    closed_lo: bool
    closed_hi: bool

    @classmethod
    def parse(cls, text):
        """Parse interval notation such as ``"(-14, -10]"`` or ``"[6, inf)"``."""
        m = _INTERVAL_RE.match(str(text))
        if not m:
            raise ParseError(f"malformed interval {text!r}")
        left, lo, hi, right = m.groups()
        lo, hi = _endpoint(lo), _endpoint(hi)
        interval = cls(lo, hi, left == "[", right == "]")
        if (interval.closed_lo and lo in (INF, -INF)) or (interval.closed_hi and hi in (INF, -INF)):
            raise ParseError(f"infinite endpoint cannot be closed in {text!r}")
        if lo > hi or (lo == hi and not (interval.closed_lo and interval.closed_hi)):
            raise ParseError(f"empty interval {text!r}")
        return interval

    def __contains__(self, x):
        above = x >= self.lo if self.closed_lo else x > self.lo
        below = x <= self.hi if self.closed_hi else x < self.hi
        return above and below

    def __str__(self):
        def fmt(v):
            return "inf" if v == INF else "-inf" if v == -INF else str(v)

        return f"{'[' if self.closed_lo else '('}{fmt(self.lo)}, {fmt(self.hi)}{']' if self.closed_hi else ')'}"


@dataclass(frozen=True)
class IntervalLabel:
    label_id: str
    interval: Interval


@dataclass(frozen=True)
class ClimateMean:
    tmax: Fraction
    tmin: Fraction


def crisp_membership(code, code_set: CrispCodeSet) -> int:
    return 1 if code in code_set.codes else 0


def trapezoid_membership(x, f: TrapezoidFunction):
    """Piecewise-linear trapezoid; ``a == b`` / ``c == d`` (or infinite
    outer breakpoints) make a shoulder that stays at 1 beyond the plateau."""
    a, b, c, d = f.a, f.b, f.c, f.d
    if b <= x <= c:
        return Fraction(1)
    if x < b:
        if a == b or a == -INF:
            return Fraction(1)
        if x <= a:
            return Fraction(0)
        return (x - a) / (b - a)
    if c == d or d == INF:
        return Fraction(1)
    if x >= d:
        return Fraction(0)
    return (d - x) / (d - c)


def _lookup_interval(labels, x):
    for label in labels:
        if x in label.interval:
            return label.label_id
    raise InvariantError(f"value {x} falls in no interval")


@dataclass(frozen=True)
class PartitionConfig:
    cct: tuple
    ccl: tuple
    ccq: tuple
    pv: tuple
    aw: tuple
    tv: tuple
    tc_offsets: tuple
    relevance_threshold: Fraction = Fraction(3)
    climate_means: Mapping = field(default_factory=dict, compare=True)

    def __post_init__(self):
        check_invariants(self)

    # -- label id lists; order defines tie-breaking and severity --
    @property
    def cct_ids(self):
        return [lbl.label_id for lbl in self.cct]

    @property
    def ccl_ids(self):
        return [s.label_id for s in self.ccl]

    @property
    def ccq_ids(self):
        return [lbl.label_id for lbl in self.ccq]

    @property
    def pv_ids(self):
        return [s.label_id for s in self.pv]

    @property
    def tv_ids(self):
        return [lbl.label_id for lbl in self.tv]

    @property
    def tc_ids(self):
        return [lbl.label_id for lbl in self.tc_offsets]

    @functools.cached_property
    def temporal_weights(self):
        """``weights[j][i]`` = membership of time index ``i`` in temporal label ``j``."""
        return tuple(
            tuple(trapezoid_membership(i, lbl.function) for i in range(N_INSTANTS))
            for lbl in self.cct
        )

    @functools.cached_property
    def _coverage_of(self):
        return {code: k for k, s in enumerate(self.ccl) for code in s.codes}

    @functools.cached_property
    def _precipitation_of(self):
        return {code: s.label_id for s in self.pv for code in s.codes}

    def coverage_index(self, code):
        return self._coverage_of[code]

    def precipitation_label(self, code):
        """pv label id of a sky code, or None when it carries no precipitation."""
        return self._precipitation_of.get(code)

    def precipitation_kind(self, label_id):
        for s in self.pv:
            if s.label_id == label_id:
                return s.kind or s.label_id.lower()
        raise KeyError(label_id)

    def is_strong_wind(self, code):
        return self.aw[0] <= code <= self.aw[1]

    def variation_label(self, delta):
        return _lookup_interval(self.tv, delta)

    def climate_label(self, offset):
        return _lookup_interval(self.tc_offsets, offset)

    def with_climate_means(self, means):
        merged = dict(self.climate_means)
        merged.update(means)
        return replace(self, climate_means=merged)


# --------------------------------------------------------------------------
# invariants


def _check_code_sets(sets, name, bounds, cover):
    lo, hi = bounds
    owner = {}
    for s in sets:
        for code in sorted(s.codes):
            if not lo <= code <= hi:
                raise InvariantError(f"{name} set {s.label_id} has code {code} outside [{lo}, {hi}]")
            if code in owner:
                raise InvariantError(f"{name} sets overlap at code {code} ({owner[code]}, {s.label_id})")
            owner[code] = s.label_id
    if cover:
        for code in range(lo, hi + 1):
            if code not in owner:
                raise InvariantError(f"{name} sets do not cover code {code}")


def _check_unique_ids(ids, name):
    if not ids:
        raise InvariantError(f"{name} has no labels")
    seen = set()
    for i in ids:
        if i in seen:
            raise InvariantError(f"{name} label {i!r} defined twice")
        seen.add(i)


def _check_ruspini(labels, points, name):
    for x in points:
        total = sum(trapezoid_membership(x, lbl.function) for lbl in labels)
        if total != 1:
            raise InvariantError(f"{name} memberships sum to {total} at {x}, not 1")


def _proportion_checkpoints(labels):
    # The membership sum is piecewise linear between breakpoints, so checking
    # every breakpoint and every midpoint between them is exhaustive.
    pts = {Fraction(0), Fraction(1)}
    for lbl in labels:
        pts.update(p for p in lbl.function.breakpoints() if p not in (INF, -INF) and 0 <= p <= 1)
    pts = sorted(pts)
    mids = [(p + q) / 2 for p, q in zip(pts, pts[1:])]
    return sorted(pts + mids)


def _check_interval_partition(labels, name):
    ordered = sorted(labels, key=lambda lbl: (lbl.interval.lo, not lbl.interval.closed_lo))
    first, last = ordered[0].interval, ordered[-1].interval
    if first.lo != -INF:
        raise InvariantError(f"{name} intervals leave a gap below {first}")
    if last.hi != INF:
        raise InvariantError(f"{name} intervals leave a gap above {last}")
    for prev, nxt in zip(ordered, ordered[1:]):
        p, n = prev.interval, nxt.interval
        if p.hi < n.lo or (p.hi == n.lo and not p.closed_hi and not n.closed_lo):
            raise InvariantError(f"{name} intervals leave a gap between {prev.label_id} and {nxt.label_id}")
        if p.hi > n.lo or (p.hi == n.lo and p.closed_hi and n.closed_lo):
            raise InvariantError(f"{name} intervals {prev.label_id} and {nxt.label_id} overlap")


def check_invariants(config: PartitionConfig):
    _check_unique_ids(config.cct_ids, "cct")
    _check_unique_ids(config.ccl_ids, "ccl")
    _check_unique_ids(config.ccq_ids, "ccq")
    _check_unique_ids(config.pv_ids, "pv")
    _check_unique_ids(config.tv_ids, "tv")
    _check_unique_ids(config.tc_ids, "tc_offsets")
    _check_code_sets(config.ccl, "ccl", SKY_RANGE, cover=True)
    _check_code_sets(config.pv, "pv", SKY_RANGE, cover=False)
    _check_ruspini(config.cct, range(N_INSTANTS), "cct")
    _check_ruspini(config.ccq, _proportion_checkpoints(config.ccq), "ccq")
    _check_interval_partition(config.tv, "tv")
    _check_interval_partition(config.tc_offsets, "tc_offsets")
    aw_a, aw_b = config.aw
    if not WIND_RANGE[0] <= aw_a <= aw_b <= WIND_RANGE[1]:
        raise InvariantError(f"aw = [{aw_a}, {aw_b}] is not a sub-interval of {list(WIND_RANGE)}")
    if config.relevance_threshold < 0:
        raise InvariantError("relevance_threshold must be non-negative")


# --------------------------------------------------------------------------
# loading


def _codes(values, what):
    codes = set()
    if not isinstance(values, list):
        raise ParseError(f"{what}: codes must be a list")
    for v in values:
        if isinstance(v, bool):
            raise ParseError(f"{what}: bad code {v!r}")
        if isinstance(v, int):
            codes.add(v)
        elif isinstance(v, str) and re.fullmatch(r"\s*\d+\s*-\s*\d+\s*", v):
            lo, hi = (int(p) for p in v.split("-"))
            if lo > hi:
                raise ParseError(f"{what}: empty code range {v!r}")
            codes.update(range(lo, hi + 1))
        else:
            raise ParseError(f"{what}: bad code {v!r}")
    return frozenset(codes)


def _entries(raw, key):
    entries = raw.get(key)
    if not isinstance(entries, list) or not all(isinstance(e, dict) for e in entries):
        raise ParseError(f"{key}: expected a list of label entries")
    for e in entries:
        if "id" not in e:
            raise ParseError(f"{key}: entry without id: {e!r}")
    return entries


def _fuzzy_labels(raw, key, domain_kind):
    labels = []
    for e in _entries(raw, key):
        points = e.get("trapezoid")
        if not isinstance(points, list) or len(points) != 4:
            raise ParseError(f"{key}.{e['id']}: trapezoid needs four breakpoints")
        pts = [_number(p, f"{key}.{e['id']}") for p in points]
        labels.append(FuzzyLabel(str(e["id"]), TrapezoidFunction(*pts, domain_kind=domain_kind),
                                 e.get("name")))
    return tuple(labels)


def _interval_labels(raw, key):
    return tuple(IntervalLabel(str(e["id"]), Interval.parse(e.get("interval", "")))
                 for e in _entries(raw, key))


def _climate_means(raw):
    means = {}
    if not isinstance(raw, dict):
        raise ParseError("climate_means must be a mapping")
    for mid, entry in raw.items():
        if not isinstance(entry, dict) or "tmax" not in entry or "tmin" not in entry:
            raise ParseError(f"climate_means.{mid}: needs tmax and tmin")
        means[str(mid)] = ClimateMean(_number(entry["tmax"], f"climate_means.{mid}.tmax"),
                                      _number(entry["tmin"], f"climate_means.{mid}.tmin"))
    return means


def config_from_mapping(raw) -> PartitionConfig:
    if not isinstance(raw, dict):
        raise ParseError("config must be a mapping")
    aw = raw.get("aw")
    if (not isinstance(aw, list) or len(aw) != 2
            or not all(isinstance(v, int) and not isinstance(v, bool) for v in aw)):
        raise ParseError("aw must be a pair of integers [aw_a, aw_b]")
    try:
        return PartitionConfig(
            cct=_fuzzy_labels(raw, "cct", "time_index"),
            ccl=tuple(CrispCodeSet(str(e["id"]), _codes(e.get("codes"), f"ccl.{e['id']}"))
                      for e in _entries(raw, "ccl")),
            ccq=_fuzzy_labels(raw, "ccq", "proportion"),
            pv=tuple(CrispCodeSet(str(e["id"]), _codes(e.get("codes"), f"pv.{e['id']}"),
                                  e.get("kind"))
                     for e in _entries(raw, "pv")),
            aw=tuple(aw),
            tv=_interval_labels(raw, "tv"),
            tc_offsets=_interval_labels(raw, "tc_offsets"),
            relevance_threshold=_number(raw.get("relevance_threshold", 3), "relevance_threshold"),
            climate_means=_climate_means(raw.get("climate_means", {})),
        )
    except IndexError:
        raise InvariantError("label list must not be empty") from None


def load_climate_means(path) -> dict:
    """Read a CSV of ``municipality_id,mean_tmax,mean_tmin`` rows."""
    means = {}
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        needed = {"municipality_id", "mean_tmax", "mean_tmin"}
        if reader.fieldnames is None or not needed <= set(reader.fieldnames):
            raise ParseError(f"{path}: header must contain {', '.join(sorted(needed))}")
        for row in reader:
            means[row["municipality_id"]] = ClimateMean(
                _number(row["mean_tmax"], f"{path}: mean_tmax"),
                _number(row["mean_tmin"], f"{path}: mean_tmin"))
    return means


def load_config(path, climate_path=None) -> PartitionConfig:
    try:
        raw = yaml.safe_load(Path(path).read_text(encoding="utf-8"))
    except yaml.YAMLError as exc:
        raise ParseError(f"{path}: {exc}") from None
    config = config_from_mapping(raw)
    if climate_path is not None:
        config = config.with_climate_means(load_climate_means(climate_path))
    return config


def default_config_path():
    return resources.files("ldforecast") / "resources" / "default_config.yaml"


@functools.lru_cache(maxsize=None)
def default_config() -> PartitionConfig:
    with resources.as_file(default_config_path()) as path:
        return load_config(path)
