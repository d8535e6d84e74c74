"""Command-line driver.

    ldforecast generate --input DATA... [--config C] [--climate CSV]
                        [--templates DIR] [--lang en] [--out DIR]
                        [--emit-intermediate] [--dump-precip-candidates]
    ldforecast eval --answers ANSWERS.csv

Diagnostics go to stderr; generated text goes to files (or stdout for eval).
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import config as config_mod
from .data import load_dataset
from .errors import ForecastError
from .evaluation import load_answers, score_table
from .intermediate import parse, serialize
from .nlg import realize_document
from .operators import describe
from .templates import default_templates_dir, load_templates

log = logging.getLogger("ldforecast")


def _expand_inputs(paths):
    files = []
    for p in map(Path, paths):
        if p.is_dir():
            files.extend(sorted(q for q in p.iterdir() if q.suffix in (".yaml", ".yml")))
        else:
            files.append(p)
    return files


def output_stem(dataset):
    return f"{dataset.municipality_id}_{dataset.issue_date.isoformat()}"


def generate_one(path, config, templates, out_dir, language, emit_intermediate=False,
                 dump_candidates=False):
    """Process one dataset file; returns the path of the written forecast."""
    dataset = load_dataset(path)
    code = serialize(describe(dataset, config))
    realization = realize_document(parse(code, config), templates, config)
    stem = output_stem(dataset)
    target = out_dir / f"{stem}.{language}.txt"
    target.write_text(realization.text + "\n", encoding="utf-8")
    if emit_intermediate:
        (out_dir / f"{stem}.ld").write_text(code, encoding="utf-8")
    if dump_candidates:
        for name, sentence in realization.precipitation_candidates.items():
            mark = "*" if name == realization.precipitation_strategy else " "
            print(f"{dataset.municipality_id} {mark} {name}: {sentence}", file=sys.stderr)
    return target


def cmd_generate(args):
    try:
        config = config_mod.load_config(args.config, args.climate)
        templates = load_templates(args.templates, args.lang, config)
    except (ForecastError, OSError) as exc:
        log.error("cannot load configuration: %s", exc)
        return 2
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    inputs = _expand_inputs(args.input)
    failed = 0
    for path in inputs:
        try:
            generate_one(path, config, templates, out_dir, args.lang,
                         args.emit_intermediate, args.dump_precip_candidates)
        except (ForecastError, OSError) as exc:
            failed += 1
            log.error("%s: %s", path, exc)
    log.info("generated %d of %d forecasts, %d failed", len(inputs) - failed, len(inputs), failed)
    return 1 if failed else 0


def cmd_eval(args):
    try:
        records = load_answers(args.answers)
    except (ForecastError, OSError) as exc:
        log.error("%s: %s", args.answers, exc)
        return 1
    sys.stdout.write(score_table(records))
    return 0


def build_parser():
    parser = argparse.ArgumentParser(prog="ldforecast", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="generate forecast texts from dataset files")
    gen.add_argument("--input", nargs="+", required=True,
                     help="dataset files or directories of *.yaml datasets")
    gen.add_argument("--config", default=str(config_mod.default_config_path()))
    gen.add_argument("--climate", default=None, help="CSV of per-municipality climate means")
    gen.add_argument("--templates", default=str(default_templates_dir()),
                     help="template directory or single template document")
    gen.add_argument("--lang", default="en")
    gen.add_argument("--out", default=".")
    gen.add_argument("--emit-intermediate", action="store_true",
                     help="also write the intermediate code as <id>_<date>.ld")
    gen.add_argument("--dump-precip-candidates", action="store_true",
                     help="print the three precipitation candidates to stderr")
    gen.set_defaults(func=cmd_generate)

    ev = sub.add_parser("eval", help="score an expert questionnaire answers file")
    ev.add_argument("--answers", required=True)
    ev.set_defaults(func=cmd_eval)
    return parser


def main(argv=None):
    logging.basicConfig(stream=sys.stderr, level=logging.INFO, format="%(levelname)s %(message)s")
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
