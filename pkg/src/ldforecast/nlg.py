"""Natural-language realization of an intermediate document.

Cloud coverage, wind and temperature go through fixed templates.
Precipitation goes through message building, three aggregation strategies
(by episode, by day, whole term), lexicalization and realization. The
shortest candidate is kept.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .data import index_to_timepoint
from .intermediate import CHRONO, CloudRecord, IntermediateDocument, TemperatureRecord
from .templates import TemplateDocument

BASE_KINDS = ("intermittent", "persistent")
STRATEGIES = ("by_episode", "by_day", "whole_term")


def finish_sentence(text: str) -> str:
    text = text.strip()
    if not text:
        return ""
    text = text[0].upper() + text[1:]
    return text if text.endswith(".") else text + "."


def _unique(items):
    seen = []
    for item in items:
        if item not in seen:
            seen.append(item)
    return seen


def _span(templates, start, end):
    if start == end:
        return templates.render("span_instant", {"start": start})
    return templates.render("span_interval", {"start": start, "end": end})


# --------------------------------------------------------------------------
# template-based variables


def realize_cloud(record: CloudRecord, templates: TemplateDocument) -> str:
    if record.kind == CHRONO:
        groups = []
        for period, cover in record.items:
            if groups and groups[-1][0] == cover:
                groups[-1][1].append(period)
            else:
                groups.append((cover, [period]))
        if len(groups) == 1:
            text = templates.render("cloud_chrono_uniform", {"cover": groups[0][0]})
        else:
            clauses = [
                templates.render("cloud_chrono_clause", {
                    "cover": cover,
                    "periods": templates.join(templates.label("period", p) for p in periods),
                })
                for cover, periods in groups
            ]
            text = templates.render("cloud_chrono", {"clauses": templates.join(clauses)})
    else:
        items = [templates.render("cloud_quant_item", {"quant": q, "cover": c})
                 for q, c, p in record.items if p > 0]
        text = templates.render("cloud_quant", {"items": templates.join(items)})
    return finish_sentence(text)


def realize_wind(records, templates: TemplateDocument) -> str:
    if not records:
        return ""
    clauses = []
    for rec in records:
        phrases = templates.join(templates.label("wind", code) for code in _unique(rec.labels))
        clauses.append(templates.render("wind_episode", {
            "phrases": phrases, "span": _span(templates, rec.start, rec.end)}))
    return finish_sentence(templates.render("wind", {"episodes": templates.join(clauses)}))


def realize_temperature(record: TemperatureRecord, templates: TemplateDocument) -> str:
    ctx = {
        "tminc": record.tminc, "tmaxc": record.tmaxc,
        "tminv": record.tminv, "tmaxv": record.tmaxv,
        "same_climate": record.tminc == record.tmaxc,
        "same_variation": record.tminv == record.tmaxv,
    }
    return finish_sentence(templates.render("temperature", ctx))


def realize_template(variable, record, templates: TemplateDocument) -> str:
    """Realize the sentence for ``variable`` ("cloud", "wind" or "temperature").

    For wind, ``record`` is the (possibly empty) sequence of wind episodes.
    """
    realizers = {"cloud": realize_cloud, "wind": realize_wind, "temperature": realize_temperature}
    try:
        return realizers[variable](record, templates)
    except KeyError:
        raise ValueError(f"no template realizer for {variable!r}") from None


# --------------------------------------------------------------------------
# precipitation


@dataclass(frozen=True)
class Nuance:
    start: int
    end: int
    label: str
    kind: str


@dataclass(frozen=True)
class PrecipitationMessage:
    start: object
    end: object
    nuances: tuple
    intermittency: str
    has_rain: bool = True
    base_kind: str = "rain"

    def covers_whole(self, nuance):
        return nuance.start == self.start.index and nuance.end == self.end.index


def build_precipitation_messages(records, config):
    """Turn precipitation episode records into messages with nuance subintervals."""
    messages = []
    for rec in records:
        nuances = []
        base = set()
        run = None
        for offset, label in enumerate(rec.labels):
            i = rec.start + offset
            kind = config.precipitation_kind(label)
            if kind in BASE_KINDS:
                base.add(kind)
                label = None
            if run is not None and run[2] == label:
                run[1] = i
                continue
            if run is not None:
                nuances.append(Nuance(run[0], run[1], run[2], config.precipitation_kind(run[2])))
                run = None
            if label is not None:
                run = [i, i, label]
        if run is not None:
            nuances.append(Nuance(run[0], run[1], run[2], config.precipitation_kind(run[2])))
        if base == {"intermittent"}:
            intermittency = "intermittent"
        elif base == {"persistent"}:
            intermittency = "persistent"
        else:
            intermittency = "mixed"
        messages.append(PrecipitationMessage(
            start=index_to_timepoint(rec.start),
            end=index_to_timepoint(rec.end),
            nuances=tuple(nuances),
            intermittency=intermittency,
            has_rain=bool(base),
        ))
    return messages


def _base(templates, messages):
    return templates.label("precipitation_base", "rain" if any(m.has_rain for m in messages) else "other")


def _nuance_labels(templates, labels):
    return templates.join(templates.label("precipitation", lbl) for lbl in _unique(labels))


def _by_episode(messages, templates):
    clauses = []
    for m in messages:
        nuances = templates.join(
            templates.render("precip_nuance", {
                "label": n.label,
                "partial": not m.covers_whole(n),
                "span": _span(templates, n.start, n.end),
            })
            for n in m.nuances
        )
        clauses.append(templates.render("precip_episode", {
            "base": _base(templates, [m]),
            "span": _span(templates, m.start.index, m.end.index),
            "has_nuances": bool(m.nuances),
            "nuances": nuances,
        }))
    return templates.render("precip_by_episode", {"episodes": templates.join(clauses)})


def _day_fragments(messages):
    """day -> list of (first part, last part, nuance labels) in time order."""
    days = {}
    for m in messages:
        for day in range(m.start.day, m.end.day + 1):
            lo = m.start.index if day == m.start.day else day * 3
            hi = m.end.index if day == m.end.day else day * 3 + 2
            labels = [n.label for n in m.nuances if n.start <= hi and n.end >= lo]
            days.setdefault(day, []).append((lo % 3, hi % 3, labels))
    return days


def _by_day(messages, templates):
    clauses = []
    for day, fragments in sorted(_day_fragments(messages).items()):
        parts = templates.join(
            templates.label("day_span", "".join(str(p) for p in range(lo, hi + 1)))
            for lo, hi, _ in fragments
        )
        labels = [lbl for _, _, lbls in fragments for lbl in lbls]
        clauses.append(templates.render("precip_day", {
            "parts": parts,
            "day": day,
            "has_nuances": bool(labels),
            "nuances": _nuance_labels(templates, labels),
        }))
    return templates.render("precip_by_day", {
        "base": _base(templates, messages), "days": templates.join(clauses)})


def _whole_term(messages, templates):
    labels = [n.label for m in messages for n in m.nuances]
    return templates.render("precip_whole_term", {
        "base": _base(templates, messages),
        "span": _span(templates, messages[0].start.index, messages[-1].end.index),
        "has_nuances": bool(labels),
        "nuances": _nuance_labels(templates, labels),
    })


def precipitation_candidates(messages, templates: TemplateDocument) -> dict:
    """The three realized candidate sentences, keyed by strategy name."""
    if not messages:
        return {}
    builders = {"by_episode": _by_episode, "by_day": _by_day, "whole_term": _whole_term}
    return {name: finish_sentence(builders[name](messages, templates)) for name in STRATEGIES}


def choose_candidate(candidates: dict):
    """Shortest candidate by character count; ties go to the earlier strategy."""
    return min(STRATEGIES, key=lambda name: (len(candidates[name]), STRATEGIES.index(name)))


def realize_precipitation(messages, templates: TemplateDocument) -> str:
    if not messages:
        return finish_sentence(templates.render("precip_none", {}))
    candidates = precipitation_candidates(messages, templates)
    return candidates[choose_candidate(candidates)]


# --------------------------------------------------------------------------
# whole forecast


@dataclass(frozen=True)
class Realization:
    cloud: str
    precipitation: str
    wind: str
    temperature: str
    precipitation_candidates: dict = field(default_factory=dict)
    precipitation_strategy: str | None = None

    @property
    def sentences(self):
        return [s for s in (self.cloud, self.precipitation, self.wind, self.temperature) if s]

    @property
    def text(self):
        return " ".join(self.sentences)


def realize_document(document: IntermediateDocument, templates: TemplateDocument, config=None):
    """Realize every variable, keeping the precipitation candidates for inspection."""
    if config is None:
        from .config import default_config

        config = default_config()
    messages = build_precipitation_messages(document.precipitation, config)
    candidates = precipitation_candidates(messages, templates)
    strategy = choose_candidate(candidates) if candidates else None
    return Realization(
        cloud=realize_cloud(document.cloud, templates),
        precipitation=candidates[strategy] if strategy else realize_precipitation(messages, templates),
        wind=realize_wind(document.wind, templates),
        temperature=realize_temperature(document.temperature, templates),
        precipitation_candidates=candidates,
        precipitation_strategy=strategy,
    )


def generate_forecast(document: IntermediateDocument, templates: TemplateDocument, config=None) -> str:
    """Forecast paragraph: cloud, precipitation, wind and temperature sentences."""
    return realize_document(document, templates, config).text
