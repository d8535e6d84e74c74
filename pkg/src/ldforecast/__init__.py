"""Linguistic descriptions and natural-language texts for short-term weather forecasts."""
from .config import PartitionConfig, default_config, load_config
from .data import ForecastDataset, index_to_timepoint, load_dataset, validate_dataset
from .estimators import ForecastRealizer, LinguisticDescriber, make_forecast_pipeline
from .evaluation import QuestionnaireAnswers, forecast_quality, global_quality
from .intermediate import IntermediateDocument, parse, serialize, to_document
from .nlg import generate_forecast, realize_document
from .operators import describe
from .templates import default_templates, load_templates

__all__ = [
    "ForecastDataset", "ForecastRealizer", "IntermediateDocument", "LinguisticDescriber",
    "PartitionConfig", "QuestionnaireAnswers", "default_config", "default_templates",
    "describe", "forecast_quality", "generate_forecast", "global_quality",
    "index_to_timepoint", "load_config", "load_dataset", "load_templates",
    "make_forecast_pipeline", "parse", "realize_document", "serialize", "to_document",
    "validate_dataset",
]
