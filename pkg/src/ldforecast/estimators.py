"""scikit-learn style wrappers so the pipeline composes with ``sklearn.pipeline``.

Nothing is learned from data: ``fit`` only resolves and validates the
configuration and template documents, which then live on fitted attributes.

>>> pipe = make_forecast_pipeline()
>>> texts = pipe.fit_transform(datasets)            # doctest: +SKIP
"""
from __future__ import annotations

from collections.abc import Mapping
from pathlib import Path

from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.pipeline import Pipeline
from sklearn.utils.validation import check_is_fitted

from .config import PartitionConfig, default_config, load_climate_means, load_config
from .data import ForecastDataset, load_dataset, validate_dataset
from .intermediate import IntermediateDocument, parse, to_document
from .nlg import generate_forecast
from .operators import describe
from .templates import TemplateDocument, default_templates_dir, load_templates


def check_dataset(obj) -> ForecastDataset:
    """Coerce a dataset, a parsed mapping or a file path into a validated dataset."""
    if isinstance(obj, ForecastDataset):
        return validate_dataset(obj)
    if isinstance(obj, Mapping):
        return validate_dataset(ForecastDataset.from_mapping(obj))
    if isinstance(obj, (str, Path)):
        return load_dataset(obj)
    raise TypeError(f"cannot interpret {type(obj).__name__} as a forecast dataset")


def check_config(config, climate=None) -> PartitionConfig:
    if config is None:
        config = default_config()
    elif not isinstance(config, PartitionConfig):
        config = load_config(config)
    if climate is not None:
        means = climate if isinstance(climate, Mapping) else load_climate_means(climate)
        config = config.with_climate_means(means)
    return config


class LinguisticDescriber(TransformerMixin, BaseEstimator):
    """Datasets -> intermediate documents.

    Parameters
    ----------
    config : PartitionConfig, path or None
        Partition sets; the shipped defaults when None.
    climate : mapping, path or None
        Extra per-municipality climate means (CSV path or mapping).
    """

    def __init__(self, config=None, climate=None):
        self.config = config
        self.climate = climate

    def fit(self, X=None, y=None):
        self.config_ = check_config(self.config, self.climate)
        return self

    def transform(self, X):
        check_is_fitted(self, "config_")
        return [to_document(describe(check_dataset(x), self.config_)) for x in X]


class ForecastRealizer(TransformerMixin, BaseEstimator):
    """Intermediate documents (objects or code text) -> forecast paragraphs."""

    def __init__(self, templates=None, language="en", config=None):
        self.templates = templates
        self.language = language
        self.config = config

    def fit(self, X=None, y=None):
        self.config_ = check_config(self.config)
        if isinstance(self.templates, TemplateDocument):
            self.templates_ = self.templates
        else:
            self.templates_ = load_templates(self.templates or default_templates_dir(),
                                             self.language, self.config_)
        return self

    def transform(self, X):
        check_is_fitted(self, "templates_")
        out = []
        for doc in X:
            if not isinstance(doc, IntermediateDocument):
                doc = parse(doc, self.config_)
            out.append(generate_forecast(doc, self.templates_, self.config_))
        return out


def make_forecast_pipeline(config=None, templates=None, language="en", climate=None) -> Pipeline:
    config = check_config(config, climate)
    return Pipeline([
        ("describe", LinguisticDescriber(config=config)),
        ("realize", ForecastRealizer(templates=templates, language=language, config=config)),
    ])
