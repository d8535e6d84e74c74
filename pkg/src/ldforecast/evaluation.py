"""Questionnaire-based quality score for generated forecasts.

Each evaluated forecast has eleven answers on a 1-5 scale: four sub-answers
(sky, precipitation, wind, temperature) for questions 1 and 2, and one
answer each for questions 3-5.  Deviations in the report are population
standard deviations (divisor n).
"""
from __future__ import annotations

import csv
import statistics
from dataclasses import dataclass
from pathlib import Path

from .errors import EmptyInput, ParseError, RangeError

SCALE = (1.0, 5.0)
FIELDS = ("q1a", "q1b", "q1c", "q1d", "q2a", "q2b", "q2c", "q2d", "q3", "q4", "q5")


@dataclass(frozen=True)
class QuestionnaireAnswers:
    q1: tuple
    q2: tuple
    q3: float
    q4: float
    q5: float
    forecast_id: str = ""

    def values(self):
        return (*self.q1, *self.q2, self.q3, self.q4, self.q5)

    @classmethod
    def from_values(cls, values, forecast_id=""):
        if len(values) != len(FIELDS):
            raise ParseError(f"expected {len(FIELDS)} answers, got {len(values)}")
        v = [float(x) for x in values]
        return cls(tuple(v[0:4]), tuple(v[4:8]), v[8], v[9], v[10], forecast_id)


def check_answers(answers: QuestionnaireAnswers):
    if len(answers.q1) != 4 or len(answers.q2) != 4:
        raise ParseError("questions 1 and 2 need four sub-answers each")
    lo, hi = SCALE
    for name, value in zip(FIELDS, answers.values()):
        if not lo <= value <= hi:
            raise RangeError(f"{name} = {value} outside [{lo:g}, {hi:g}]", field=name)
    return answers


def forecast_quality(answers: QuestionnaireAnswers) -> float:
    """Mean of "what the text implicates" (questions 1-2) and "what the
    text says" (questions 3-5)."""
    check_answers(answers)
    implicates = (statistics.fmean(answers.q1) + statistics.fmean(answers.q2)) / 2
    says = (answers.q3 + answers.q4 + answers.q5) / 3
    return (implicates + says) / 2


def global_quality(scores) -> float:
    scores = list(scores)
    if not scores:
        raise EmptyInput("no quality scores to aggregate")
    lo, hi = SCALE
    for s in scores:
        if not lo <= s <= hi:
            raise RangeError(f"quality score {s} outside [{lo:g}, {hi:g}]")
    # fmean of n copies of x is exactly x; a plain sum/n is not
    if all(s == scores[0] for s in scores):
        return scores[0]
    return statistics.fmean(scores)


def load_answers(path) -> list:
    """Read an answers CSV: optional ``forecast_id`` column plus q1a..q5."""
    text = Path(path).read_text(encoding="utf-8")
    if not text.strip():
        raise EmptyInput(f"{path} contains no answers")
    reader = csv.DictReader(text.splitlines())
    missing = [f for f in FIELDS if f not in (reader.fieldnames or [])]
    if missing:
        raise ParseError(f"{path}: missing columns {', '.join(missing)}")
    records = []
    for lineno, row in enumerate(reader, start=2):
        try:
            values = [float(row[f]) for f in FIELDS]
        except (TypeError, ValueError):
            raise ParseError(f"{path}:{lineno}: answers must be numbers") from None
        records.append(check_answers(
            QuestionnaireAnswers.from_values(values, row.get("forecast_id") or str(lineno - 1))))
    if not records:
        raise EmptyInput(f"{path} contains no answers")
    return records


def _fmt(x):
    return f"{x:.2f}"


def score_table(records) -> str:
    """Plain-text table of per-question averages and deviations plus GQ."""
    records = list(records)
    if not records:
        raise EmptyInput("no answers")
    columns = list(zip(*(r.values() for r in records)))
    mean = [statistics.fmean(c) for c in columns]
    dev = [statistics.pstdev(c) for c in columns]
    scores = [forecast_quality(r) for r in records]
    rows = [
        ("Q. 1 (a-d)", "(" + " ".join(map(_fmt, mean[0:4])) + ")", "(" + " ".join(map(_fmt, dev[0:4])) + ")"),
        ("Q. 2 (a-d)", "(" + " ".join(map(_fmt, mean[4:8])) + ")", "(" + " ".join(map(_fmt, dev[4:8])) + ")"),
        ("Q. 3", _fmt(mean[8]), _fmt(dev[8])),
        ("Q. 4", _fmt(mean[9]), _fmt(dev[9])),
        ("Q. 5", _fmt(mean[10]), _fmt(dev[10])),
        ("GQ", _fmt(global_quality(scores)), _fmt(statistics.pstdev(scores))),
    ]
    header = ("Questions", "Average score", "Standard deviation")
    widths = [max(len(r[i]) for r in [header, *rows]) for i in range(3)]
    lines = []
    for r in [header, *rows]:
        lines.append("  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip())
    lines.insert(1, "  ".join("-" * w for w in widths))
    lines.append(f"n = {len(records)}")
    return "\n".join(lines) + "\n"
