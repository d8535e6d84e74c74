"""Linguistic description operators for cloud, precipitation, wind and temperature."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .config import PartitionConfig
from .data import N_INSTANTS, ForecastDataset
from .errors import UnknownMunicipality

CHRONOLOGICAL = "chronological"
QUANTIFIED = "quantified"


@dataclass(frozen=True)
class QuantifiedEntry:
    quantifier: str
    coverage: str
    proportion: Fraction

    @property
    def present(self):
        """False for coverage labels that never occur; NLG suppresses those."""
        return self.proportion > 0


@dataclass(frozen=True)
class CloudDescription:
    kind: str
    rd_matrix: tuple
    chrono_pairs: tuple = ()
    quant_pairs: tuple = ()
    fd_matrix: tuple | None = None


@dataclass(frozen=True)
class Episode:
    start: int
    end: int
    labels: tuple

    def __post_init__(self):
        if not 0 <= self.start <= self.end < N_INSTANTS:
            raise ValueError(f"bad episode bounds {self.start}..{self.end}")
        if len(self.labels) != self.end - self.start + 1:
            raise ValueError("one label per instant is required")

    @property
    def label_set(self):
        return frozenset(self.labels)


@dataclass(frozen=True)
class TemperatureDescription:
    tminc: str
    tmaxc: str
    tminv: str
    tmaxv: str
    tmax_delta: Fraction
    tmin_delta: Fraction
    tmax_offset: Fraction
    tmin_offset: Fraction


@dataclass(frozen=True)
class LinguisticDescription:
    cloud: CloudDescription
    precipitation: tuple
    wind: tuple
    temperature: TemperatureDescription


# --------------------------------------------------------------------------
# cloud coverage


def relevance_matrix(sky, config: PartitionConfig):
    """RD[j][k]: mass of coverage label k inside temporal label j."""
    weights = config.temporal_weights
    m = len(config.ccl)
    rd = [[Fraction(0)] * m for _ in weights]
    for i, code in enumerate(sky):
        k = config.coverage_index(code)
        for j, row in enumerate(weights):
            rd[j][k] += row[i]
    return tuple(tuple(row) for row in rd)


def _argmax(values):
    # first maximum wins, i.e. lowest label index on ties
    best = 0
    for idx, v in enumerate(values):
        if v > values[best]:
            best = idx
    return best


def chronological_cloud(sky, config: PartitionConfig, rd=None):
    """Predominant coverage per temporal label, or None if any pair is weak.

    None means the chronological description is not applicable and the
    quantified description should be used instead.
    """
    if rd is None:
        rd = relevance_matrix(sky, config)
    pairs = []
    for j, row in enumerate(rd):
        k = _argmax(row)
        if row[k] < config.relevance_threshold:
            return None
        pairs.append((config.cct[j].label_id, config.ccl[k].label_id))
    return CloudDescription(CHRONOLOGICAL, rd, chrono_pairs=tuple(pairs))


def quantified_cloud(sky, config: PartitionConfig, rd=None):
    n = len(sky)
    counts = [0] * len(config.ccl)
    for code in sky:
        counts[config.coverage_index(code)] += 1
    proportions = [Fraction(c, n) for c in counts]
    fd = tuple(tuple(q.function(p) for p in proportions) for q in config.ccq)
    entries = []
    for k, p in enumerate(proportions):
        j = _argmax([fd[j][k] for j in range(len(config.ccq))])
        entries.append(QuantifiedEntry(config.ccq[j].label_id, config.ccl[k].label_id, p))
    if rd is None:
        rd = relevance_matrix(sky, config)
    return CloudDescription(QUANTIFIED, rd, quant_pairs=tuple(entries), fd_matrix=fd)


def describe_cloud(sky, config: PartitionConfig) -> CloudDescription:
    rd = relevance_matrix(sky, config)
    return chronological_cloud(sky, config, rd) or quantified_cloud(sky, config, rd)


# --------------------------------------------------------------------------
# episodes


def _runs(labels):
    """Maximal runs of non-None entries as (start, end, labels)."""
    episodes = []
    start = None
    for i, label in enumerate(labels):
        if label is not None and start is None:
            start = i
        elif label is None and start is not None:
            episodes.append(Episode(start, i - 1, tuple(labels[start:i])))
            start = None
    if start is not None:
        episodes.append(Episode(start, len(labels) - 1, tuple(labels[start:])))
    return episodes


def extract_precipitation_episodes(sky, config: PartitionConfig):
    return _runs([config.precipitation_label(code) for code in sky])


def extract_wind_episodes(wind, config: PartitionConfig):
    return _runs([code if config.is_strong_wind(code) else None for code in wind])


# --------------------------------------------------------------------------
# temperature


def describe_temperature(tmax, tmin, municipality_id, config: PartitionConfig):
    try:
        climate = config.climate_means[municipality_id]
    except KeyError:
        raise UnknownMunicipality(municipality_id) from None
    tmax_delta = Fraction(tmax[-1] - tmax[0])
    tmin_delta = Fraction(tmin[-1] - tmin[0])
    tmax_offset = Fraction(sum(tmax), len(tmax)) - climate.tmax
    tmin_offset = Fraction(sum(tmin), len(tmin)) - climate.tmin
    return TemperatureDescription(
        tminc=config.climate_label(tmin_offset),
        tmaxc=config.climate_label(tmax_offset),
        tminv=config.variation_label(tmin_delta),
        tmaxv=config.variation_label(tmax_delta),
        tmax_delta=tmax_delta,
        tmin_delta=tmin_delta,
        tmax_offset=tmax_offset,
        tmin_offset=tmin_offset,
    )


def describe(dataset: ForecastDataset, config: PartitionConfig) -> LinguisticDescription:
    """Run all four operators on a validated dataset."""
    return LinguisticDescription(
        cloud=describe_cloud(dataset.sky, config),
        precipitation=tuple(extract_precipitation_episodes(dataset.sky, config)),
        wind=tuple(extract_wind_episodes(dataset.wind, config)),
        temperature=describe_temperature(dataset.tmax, dataset.tmin, dataset.municipality_id, config),
    )
