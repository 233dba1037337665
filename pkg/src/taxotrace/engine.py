"""Engine assembly: configuration file, loaded corpus, index, and store.

The config file is a single JSON document whose keys are the CLI flag names
(``taxonomy``, ``format``, ``docs``, ``lang``, ``threshold``, ``max-rejects``,
``top-k``, ``weights``, ``store``, ``listen``, ``stopwords``,
``noun-lexicon``). Flags override config values.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from pathlib import Path

from .errors import FormatError, InvalidArgumentError, NotFoundError
from .recommender import (
    DEFAULT_WEIGHTS,
    ConceptIndex,
    RecommenderSettings,
    Suggestion,
    build_index,
    recommend,
    validate_weights,
)
from .taxonomy import Taxonomy, ValidationReport, parse_taxonomy_csv, parse_taxonomy_turtle
from .textproc import LangConfig, TraceUnit, import_json, import_plaintext, load_wordlist
from .tracestore import TraceStore


@dataclass
class EngineConfig:
    taxonomy: Path | None = None
    format: str | None = None  # csv | ttl; inferred from extension when None
    docs: list[Path] = field(default_factory=list)
    lang: str = "en"
    stopwords: Path | None = None
    noun_lexicon: Path | None = None
    weights: tuple[float, float, float, float] = DEFAULT_WEIGHTS
    threshold: float = 0.5
    max_rejects: int = 3
    top_k: int = 5
    store: Path | None = None
    listen: str = "127.0.0.1:8000"
    config_path: Path | None = None

    @classmethod
    def from_file(cls, path: Path | str) -> "EngineConfig":
        path = Path(path)
        raw = json.loads(path.read_text("utf-8"))
        base = path.parent

        def as_path(key: str) -> Path | None:
            value = raw.get(key)
            return (base / value) if value else None

        return cls(
            taxonomy=as_path("taxonomy"),
            format=raw.get("format"),
            docs=[base / d for d in raw.get("docs", [])],
            lang=raw.get("lang", "en"),
            stopwords=as_path("stopwords"),
            noun_lexicon=as_path("noun-lexicon"),
            weights=tuple(raw["weights"]) if "weights" in raw else DEFAULT_WEIGHTS,
            threshold=raw.get("threshold", 0.5),
            max_rejects=raw.get("max-rejects", 3),
            top_k=raw.get("top-k", 5),
            store=as_path("store"),
            listen=raw.get("listen", "127.0.0.1:8000"),
            config_path=path,
        )

    def settings(self) -> RecommenderSettings:
        return RecommenderSettings(
            threshold=self.threshold, max_rejects=self.max_rejects, top_k=self.top_k
        )

    def save_settings(self, settings: RecommenderSettings) -> None:
        """Persist runtime settings changes back into the config file."""
        if self.config_path is None:
            return
        raw = json.loads(self.config_path.read_text("utf-8"))
        raw["threshold"] = settings.threshold
        raw["max-rejects"] = settings.max_rejects
        raw["top-k"] = settings.top_k
        self.config_path.write_text(json.dumps(raw, indent=2) + "\n", "utf-8")


def load_taxonomy(path: Path, fmt: str | None = None, lang: str = "en") -> Taxonomy | ValidationReport:
    fmt = fmt or ("ttl" if path.suffix.lower() in (".ttl", ".turtle") else "csv")
    data = path.read_bytes()
    if fmt == "csv":
        return parse_taxonomy_csv(data, source_name=path.name)
    if fmt == "ttl":
        return parse_taxonomy_turtle(data, lang=lang, source_name=path.name)
    raise InvalidArgumentError(f"unknown taxonomy format {fmt!r} (expected csv or ttl)")


def load_docs(paths: list[Path]) -> list[TraceUnit]:
    units: list[TraceUnit] = []
    for path in paths:
        data = path.read_bytes()
        if path.suffix.lower() == ".json":
            units.extend(import_json(data))
        else:
            units.extend(import_plaintext(data, doc_id=path.stem))
    return units


class Engine:
    """Loaded taxonomy + corpus + index + settings + store."""

    def __init__(
        self,
        taxonomy: Taxonomy,
        units: list[TraceUnit],
        index: ConceptIndex,
        settings: RecommenderSettings,
        store: TraceStore,
        config: EngineConfig | None = None,
    ):
        self.taxonomy = taxonomy
        self.units = {u.unit_id: u for u in units}
        self.index = index
        self.settings = settings
        self.store = store
        self.config = config

    @classmethod
    def from_config(cls, config: EngineConfig) -> "Engine":
        if config.taxonomy is None:
            raise FormatError("config does not name a taxonomy file")
        result = load_taxonomy(config.taxonomy, config.format, config.lang)
        if isinstance(result, ValidationReport):
            details = "; ".join(f"{i.kind}: {i.message}" for i in result.errors)
            raise FormatError(f"taxonomy failed validation: {details}")
        taxonomy = result

        stopwords = load_wordlist(config.stopwords.read_bytes()) if config.stopwords else None
        lexicon = load_wordlist(config.noun_lexicon.read_bytes()) if config.noun_lexicon else None
        cfg = LangConfig.for_language(config.lang, stopwords=stopwords, noun_lexicon=lexicon)

        units = load_docs(config.docs)
        index = build_index(taxonomy, cfg, validate_weights(config.weights))
        store = TraceStore(
            known_units={u.unit_id for u in units},
            known_concepts=set(taxonomy.concepts),
        )
        if config.store is not None:
            store = TraceStore.load(
                config.store,
                known_units={u.unit_id for u in units},
                known_concepts=set(taxonomy.concepts),
            )
        return cls(taxonomy, units, index, config.settings(), store, config)

    def suggestions_for(
        self, unit_id: str, threshold: float | None = None, top_k: int | None = None
    ) -> list[Suggestion]:
        unit = self.units.get(unit_id)
        if unit is None:
            raise NotFoundError(f"unknown unit: {unit_id}")
        settings = self.settings
        if threshold is not None or top_k is not None:
            settings = replace(
                settings,
                threshold=settings.threshold if threshold is None else threshold,
                top_k=settings.top_k if top_k is None else top_k,
            )
        return recommend(self.index, unit, settings, self.store.rejects)

    def update_settings(self, settings: RecommenderSettings) -> None:
        self.settings = settings
        if self.config is not None:
            self.config.save_settings(settings)
