"""Template documents: per-language sentence templates plus label sets.

A template string mixes three kinds of segments:

``{set:field}``
    label slot; the context value of ``field`` is looked up in label set ``set``.
``{field}``
    raw slot; the context value (already realized text) is inserted as is.
``[guard?body]`` / ``[!guard?body]``
    optional block, kept only when the boolean context feature ``guard`` is
    true (or false, with ``!``).  Blocks may nest.

Literal ``{``, ``}``, ``[`` and ``]`` are not allowed in static text.
"""
from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import yaml

from .data import N_DAYS, N_INSTANTS
from .errors import MissingLabel, ParseError, UnknownLanguage


@dataclass(frozen=True)
class Text:
    text: str


@dataclass(frozen=True)
class Slot:
    label_set: str
    field: str


@dataclass(frozen=True)
class Raw:
    field: str


@dataclass(frozen=True)
class OptionalBlock:
    guard: str
    negate: bool
    body: tuple


REQUIRED_TEMPLATES = (
    "cloud_chrono", "cloud_chrono_clause", "cloud_chrono_uniform",
    "cloud_quant", "cloud_quant_item",
    "precip_none", "precip_episode", "precip_nuance", "precip_by_episode",
    "precip_day", "precip_by_day", "precip_whole_term",
    "wind", "wind_episode",
    "temperature",
    "span_instant", "span_interval",
)

DAY_SPANS = ("0", "1", "2", "01", "12", "012")

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


def parse_template(source: str) -> tuple:
    """Parse a template string into a tuple of segments."""
    segments, pos = _parse_sequence(source, 0, nested=False)
    return segments


def _parse_sequence(src, pos, nested):
    segments = []
    buf = []

    def flush():
        if buf:
            segments.append(Text("".join(buf)))
            buf.clear()

    while pos < len(src):
        ch = src[pos]
        if ch == "{":
            flush()
            end = src.find("}", pos)
            if end < 0:
                raise ParseError(f"unclosed slot at offset {pos} in {src!r}")
            inner = src[pos + 1:end]
            if ":" in inner:
                label_set, field = inner.split(":", 1)
                if not (_NAME.fullmatch(label_set) and _NAME.fullmatch(field)):
                    raise ParseError(f"bad slot {{{inner}}} in {src!r}")
                segments.append(Slot(label_set, field))
            else:
                if not _NAME.fullmatch(inner):
                    raise ParseError(f"bad slot {{{inner}}} in {src!r}")
                segments.append(Raw(inner))
            pos = end + 1
        elif ch == "[":
            flush()
            q = src.find("?", pos)
            if q < 0:
                raise ParseError(f"optional block without guard at offset {pos} in {src!r}")
            guard = src[pos + 1:q]
            negate = guard.startswith("!")
            guard = guard[1:] if negate else guard
            if not _NAME.fullmatch(guard):
                raise ParseError(f"bad guard {guard!r} in {src!r}")
            body, pos = _parse_sequence(src, q + 1, nested=True)
            segments.append(OptionalBlock(guard, negate, body))
        elif ch == "]":
            if not nested:
                raise ParseError(f"unbalanced ']' at offset {pos} in {src!r}")
            flush()
            return tuple(segments), pos + 1
        elif ch == "}":
            raise ParseError(f"unbalanced '}}' at offset {pos} in {src!r}")
        else:
            buf.append(ch)
            pos += 1
    if nested:
        raise ParseError(f"unclosed optional block in {src!r}")
    flush()
    return tuple(segments), pos


def _walk(segments):
    for seg in segments:
        yield seg
        if isinstance(seg, OptionalBlock):
            yield from _walk(seg.body)


@dataclass(frozen=True)
class TemplateDocument:
    language: str
    variable_templates: dict
    label_sets: dict

    def label(self, label_set, key):
        try:
            return self.label_sets[label_set][str(key)]
        except KeyError:
            raise MissingLabel(str(key), label_set) from None

    def render(self, name, context) -> str:
        return self._render(self.variable_templates[name], context)

    def _render(self, segments, ctx):
        out = []
        for seg in segments:
            if isinstance(seg, Text):
                out.append(seg.text)
            elif isinstance(seg, Slot):
                out.append(self.label(seg.label_set, ctx[seg.field]))
            elif isinstance(seg, Raw):
                out.append(str(ctx[seg.field]))
            elif bool(ctx.get(seg.guard)) != seg.negate:
                out.append(self._render(seg.body, ctx))
        return "".join(out)

    def join(self, items):
        """Join phrases as an enumeration: ``a``, ``a and b``, ``a, b and c``."""
        items = list(items)
        if len(items) <= 1:
            return "".join(items)
        sep = self.label("syntax", "separator")
        conj = self.label("syntax", "and")
        return sep.join(items[:-1]) + f" {conj} " + items[-1]


def required_labels(config):
    """Label set -> keys every template document must provide for ``config``."""
    return {
        "coverage": config.ccl_ids,
        "period": config.cct_ids,
        "quantifier": config.ccq_ids,
        "precipitation": config.pv_ids,
        "precipitation_base": ["rain", "other"],
        "variation": config.tv_ids,
        "climate": config.tc_ids,
        "wind": [str(c) for c in range(config.aw[0], config.aw[1] + 1)],
        "time": [str(i) for i in range(N_INSTANTS)],
        "time_at": [str(i) for i in range(N_INSTANTS)],
        "day": [str(d) for d in range(N_DAYS)],
        "day_span": list(DAY_SPANS),
        "syntax": ["and", "separator"],
    }


def document_from_mapping(raw, config=None) -> TemplateDocument:
    if not isinstance(raw, dict):
        raise ParseError("template document must be a mapping")
    for key in ("language", "templates", "labels"):
        if key not in raw:
            raise ParseError(f"template document has no {key!r} section")
    if not isinstance(raw["templates"], dict) or not isinstance(raw["labels"], dict):
        raise ParseError("templates and labels must be mappings")
    label_sets = {}
    for set_id, entries in raw["labels"].items():
        if not isinstance(entries, dict):
            raise ParseError(f"label set {set_id!r} must be a mapping")
        label_sets[str(set_id)] = {str(k): str(v) for k, v in entries.items()}
    templates = {}
    for name, source in raw["templates"].items():
        if not isinstance(source, str):
            raise ParseError(f"template {name!r} must be a string")
        templates[str(name)] = parse_template(source)
    missing = [n for n in REQUIRED_TEMPLATES if n not in templates]
    if missing:
        raise ParseError(f"missing templates: {', '.join(missing)}")
    for name, segments in templates.items():
        for seg in _walk(segments):
            if isinstance(seg, Slot) and seg.label_set not in label_sets:
                raise ParseError(f"template {name!r} references unknown label set {seg.label_set!r}")
    doc = TemplateDocument(str(raw["language"]), templates, label_sets)
    if config is not None:
        check_labels(doc, config)
    return doc


def check_labels(doc: TemplateDocument, config):
    for set_id, keys in required_labels(config).items():
        if set_id not in doc.label_sets:
            raise ParseError(f"template document has no label set {set_id!r}")
        for key in keys:
            if key not in doc.label_sets[set_id]:
                raise MissingLabel(key, set_id)


def default_templates_dir():
    return resources.files("ldforecast") / "resources" / "templates"


def load_templates(path, language, config=None) -> TemplateDocument:
    """Load the template document for ``language``.

    ``path`` is either a directory holding ``<language>.yaml`` files or a
    single document whose ``language`` field must match.  When ``config`` is
    given, every label it defines must have a surface string.
    """
    path = Path(path)
    if path.is_dir():
        path = path / f"{language}.yaml"
        if not path.is_file():
            raise UnknownLanguage(f"no template document for language {language!r}")
    try:
        raw = yaml.safe_load(path.read_text(encoding="utf-8"))
    except yaml.YAMLError as exc:
        raise ParseError(f"{path}: {exc}") from None
    if isinstance(raw, dict) and str(raw.get("language")) != language:
        raise UnknownLanguage(f"{path} is for language {raw.get('language')!r}, not {language!r}")
    return document_from_mapping(raw, config)


@functools.lru_cache(maxsize=None)
def default_templates(language="en") -> TemplateDocument:
    from .config import default_config

    with resources.as_file(default_templates_dir()) as path:
        return load_templates(path, language, default_config())
