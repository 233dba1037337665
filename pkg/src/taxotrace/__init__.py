"""taxotrace: link natural-language requirements to taxonomy concepts."""

from .recommender import DEFAULT_WEIGHTS, RecommenderSettings, Suggestion, build_index, recommend
from .taxonomy import (
    Concept,
    Taxonomy,
    ValidationReport,
    ancestors,
    parse_taxonomy_csv,
    parse_taxonomy_turtle,
    search_concepts,
    serialize_taxonomy_csv,
)
from .textproc import LangConfig, Token, TraceUnit, import_json, import_plaintext, stem, tokenize
from .tracestore import TraceLink, TraceStore

__all__ = [
    "Concept",
    "Taxonomy",
    "ValidationReport",
    "ancestors",
    "parse_taxonomy_csv",
    "parse_taxonomy_turtle",
    "search_concepts",
    "serialize_taxonomy_csv",
    "LangConfig",
    "Token",
    "TraceUnit",
    "import_json",
    "import_plaintext",
    "stem",
    "tokenize",
    "DEFAULT_WEIGHTS",
    "RecommenderSettings",
    "Suggestion",
    "build_index",
    "recommend",
    "TraceLink",
    "TraceStore",
]

__version__ = "0.1.0"
