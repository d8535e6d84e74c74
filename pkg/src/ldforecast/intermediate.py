"""Line-oriented intermediate code between the description and NLG stages.

Grammar (one record per line, fields separated by single spaces)::

    document := "LDv1" NL record*
    record   := cloud | precip | wind | temp
    cloud    := "CC" "CHRONO" ("(" LABEL "," LABEL ")")+
              | "CC" "QUANT" ("(" LABEL "," LABEL "," DECIMAL ")")+
    precip   := "P" INT INT LABEL ("," LABEL)*
    wind     := "W" INT INT INT ("," INT)*
    temp     := "T" LABEL LABEL LABEL LABEL        # tminc tmaxc tminv tmaxv

Exactly one ``CC`` and one ``T`` record are required; ``P`` and ``W``
records must be sorted by start.  Proportions are written with four
decimals, rounded half-to-even.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Decimal

from .data import N_INSTANTS, WIND_RANGE
from .errors import DuplicateSection, LDSyntaxError, MissingSection, UnknownLabel
from .operators import CHRONOLOGICAL, LinguisticDescription

VERSION = "LDv1"
CHRONO = "CHRONO"
QUANT = "QUANT"
_PLACES = Decimal("0.0001")


@dataclass(frozen=True)
class CloudRecord:
    kind: str
    items: tuple


@dataclass(frozen=True)
class EpisodeRecord:
    start: int
    end: int
    labels: tuple


@dataclass(frozen=True)
class TemperatureRecord:
    tminc: str
    tmaxc: str
    tminv: str
    tmaxv: str


@dataclass(frozen=True)
class IntermediateDocument:
    cloud: CloudRecord
    precipitation: tuple
    wind: tuple
    temperature: TemperatureRecord


def quantize_proportion(p) -> Decimal:
    value = Decimal(p.numerator) / Decimal(p.denominator) if hasattr(p, "numerator") else Decimal(p)
    return value.quantize(_PLACES, rounding=ROUND_HALF_EVEN)


def to_document(ld: LinguisticDescription) -> IntermediateDocument:
    cloud = ld.cloud
    if cloud.kind == CHRONOLOGICAL:
        record = CloudRecord(CHRONO, tuple(cloud.chrono_pairs))
    else:
        record = CloudRecord(QUANT, tuple((e.quantifier, e.coverage, quantize_proportion(e.proportion))
                                          for e in cloud.quant_pairs))
    t = ld.temperature
    return IntermediateDocument(
        cloud=record,
        precipitation=tuple(EpisodeRecord(e.start, e.end, tuple(e.labels)) for e in ld.precipitation),
        wind=tuple(EpisodeRecord(e.start, e.end, tuple(e.labels)) for e in ld.wind),
        temperature=TemperatureRecord(t.tminc, t.tmaxc, t.tminv, t.tmaxv),
    )


def _format_cloud(record):
    if record.kind == CHRONO:
        body = "".join(f"({t},{c})" for t, c in record.items)
    else:
        body = "".join(f"({q},{c},{quantize_proportion(p)})" for q, c, p in record.items)
    return f"CC {record.kind} {body}"


def serialize(descriptions) -> str:
    """Render descriptions (or an already-built document) as intermediate code."""
    doc = descriptions if isinstance(descriptions, IntermediateDocument) else to_document(descriptions)
    lines = [VERSION, _format_cloud(doc.cloud)]
    lines += [f"P {e.start} {e.end} {','.join(e.labels)}" for e in doc.precipitation]
    lines += [f"W {e.start} {e.end} {','.join(str(c) for c in e.labels)}" for e in doc.wind]
    t = doc.temperature
    lines.append(f"T {t.tminc} {t.tmaxc} {t.tminv} {t.tmaxv}")
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# parser

_LABEL = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
_INT = re.compile(r"-?\d+")
_DECIMAL = re.compile(r"\d+\.\d+")


class _Cursor:
    """Character cursor over one line; columns are 1-based."""

    def __init__(self, text, lineno):
        self.text = text
        self.pos = 0
        self.lineno = lineno

    def error(self, message, pos=None):
        return LDSyntaxError(message, self.lineno, (self.pos if pos is None else pos) + 1)

    def at_end(self):
        return self.pos >= len(self.text)

    def peek(self):
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, literal):
        if not self.text.startswith(literal, self.pos):
            found = self.text[self.pos:self.pos + len(literal)] or "end of line"
            raise self.error(f"expected {literal!r}, found {found!r}")
        self.pos += len(literal)

    def match(self, pattern, what):
        m = pattern.match(self.text, self.pos)
        if not m:
            raise self.error(f"expected {what}")
        self.pos = m.end()
        return m.group(), m.start()

    def space(self):
        self.expect(" ")

    def end(self):
        if not self.at_end():
            raise self.error(f"unexpected {self.text[self.pos:]!r}")


class _Parser:
    def __init__(self, text, config=None):
        self.lines = text.split("\n")
        if self.lines and self.lines[-1] == "":
            self.lines.pop()
        self.config = config
        self.cloud = None
        self.temperature = None
        self.precipitation = []
        self.wind = []

    # label checks against the active config
    def _check(self, label, allowed, lineno):
        if allowed is not None and label not in allowed:
            raise UnknownLabel(label, lineno)
        return label

    def _allowed(self, attr):
        return None if self.config is None else set(getattr(self.config, attr))

    def parse(self):
        if not self.lines or self.lines[0] != VERSION:
            raise LDSyntaxError(f"expected version marker {VERSION!r}", 1, 1)
        for lineno, line in enumerate(self.lines[1:], start=2):
            if not line.strip():
                continue
            cur = _Cursor(line, lineno)
            keyword, _ = cur.match(re.compile(r"[A-Z]+"), "record keyword")
            if keyword == "CC":
                self.cloud_record(cur)
            elif keyword == "P":
                self.precipitation.append(self.episode_record(cur, self.precipitation, wind=False))
            elif keyword == "W":
                self.wind.append(self.episode_record(cur, self.wind, wind=True))
            elif keyword == "T":
                self.temperature_record(cur)
            elif keyword == VERSION[:2]:
                raise DuplicateSection(f"line {lineno}: repeated version marker")
            else:
                raise cur.error(f"unknown record type {keyword!r}", 0)
        if self.cloud is None:
            raise MissingSection("no CC record")
        if self.temperature is None:
            raise MissingSection("no T record")
        return IntermediateDocument(self.cloud, tuple(self.precipitation), tuple(self.wind),
                                    self.temperature)

    def cloud_record(self, cur):
        if self.cloud is not None:
            raise DuplicateSection(f"line {cur.lineno}: second CC record")
        cur.space()
        kind, _ = cur.match(re.compile(r"[A-Z]+"), "CHRONO or QUANT")
        if kind not in (CHRONO, QUANT):
            raise cur.error(f"unknown cloud description kind {kind!r}", cur.pos - len(kind))
        cur.space()
        items = []
        first = self._allowed("cct_ids" if kind == CHRONO else "ccq_ids")
        coverage = self._allowed("ccl_ids")
        while True:
            cur.expect("(")
            a, _ = cur.match(_LABEL, "label")
            cur.expect(",")
            b, _ = cur.match(_LABEL, "coverage label")
            item = (self._check(a, first, cur.lineno), self._check(b, coverage, cur.lineno))
            if kind == QUANT:
                cur.expect(",")
                text, pos = cur.match(_DECIMAL, "proportion")
                value = Decimal(text)
                if value > 1:
                    raise cur.error(f"proportion {text} above 1", pos)
                item += (value,)
            cur.expect(")")
            items.append(item)
            if cur.at_end():
                break
        self.cloud = CloudRecord(kind, tuple(items))

    def _index(self, cur):
        text, pos = cur.match(_INT, "time index")
        value = int(text)
        if not 0 <= value < N_INSTANTS:
            raise cur.error(f"time index {value} outside [0, {N_INSTANTS - 1}]", pos)
        return value, pos

    def episode_record(self, cur, previous, wind):
        cur.space()
        start, _ = self._index(cur)
        cur.space()
        end, end_pos = self._index(cur)
        if start > end:
            raise cur.error(f"start {start} after end {end}", end_pos)
        if previous and start <= previous[-1].end:
            raise cur.error("episodes must be sorted and disjoint", 0)
        cur.space()
        allowed = self._allowed("pv_ids")
        labels = []
        while True:
            if wind:
                text, pos = cur.match(_INT, "wind code")
                code = int(text)
                if not WIND_RANGE[0] <= code <= WIND_RANGE[1]:
                    raise cur.error(f"wind code {code} outside {list(WIND_RANGE)}", pos)
                if self.config is not None and not self.config.is_strong_wind(code):
                    raise UnknownLabel(text, cur.lineno)
                labels.append(code)
            else:
                label, _ = cur.match(_LABEL, "precipitation label")
                labels.append(self._check(label, allowed, cur.lineno))
            if cur.at_end():
                break
            cur.expect(",")
        if len(labels) != end - start + 1:
            raise cur.error(f"{len(labels)} labels for {end - start + 1} instants", 0)
        return EpisodeRecord(start, end, tuple(labels))

    def temperature_record(self, cur):
        if self.temperature is not None:
            raise DuplicateSection(f"line {cur.lineno}: second T record")
        fields = []
        for attr in ("tc_ids", "tc_ids", "tv_ids", "tv_ids"):
            cur.space()
            label, _ = cur.match(_LABEL, "temperature label")
            fields.append(self._check(label, self._allowed(attr), cur.lineno))
        cur.end()
        self.temperature = TemperatureRecord(*fields)


def parse(text: str, config=None) -> IntermediateDocument:
    """Parse intermediate code; with ``config``, labels are checked against it."""
    return _Parser(text, config).parse()
