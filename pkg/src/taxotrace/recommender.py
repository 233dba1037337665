"""Concept recommender: four lexical predictors combined into a confidence.

Predictors, each scored in [0, 1]:

* exact  — a label's normalized token sequence occurs contiguously in the unit
* stem   — stem-set containment of the best-matching label
* trigram — best character-trigram Dice between a noun-like unit token and a
  label token
* tfidf  — cosine between TF-IDF vectors of the unit and the concept document
  (labels + definition), with noun-like term frequencies doubled

Confidence is the convex combination of the four scores. Suggestions below
the threshold, or rejected max_rejects times, are dropped.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field

from .errors import InvalidArgumentError
from .taxonomy import Concept, Taxonomy
from .textproc import LangConfig, Token, TraceUnit, tokenize

DEFAULT_WEIGHTS = (0.4, 0.2, 0.2, 0.2)

PREDICTORS = ("exact", "stem", "trigram", "tfidf")


def validate_weights(w: tuple[float, float, float, float]) -> tuple[float, ...]:
    if len(w) != 4 or any(x < 0 for x in w):
        raise InvalidArgumentError("weights must be 4 non-negative values")
    if abs(sum(w) - 1.0) > 1e-9:
        raise InvalidArgumentError(f"weights must sum to 1, got {sum(w)}")
    return tuple(float(x) for x in w)


@dataclass(frozen=True)
class RecommenderSettings:
    threshold: float = 0.5
    max_rejects: int = 3
    top_k: int = 5

    def __post_init__(self):
        if not 0.0 <= self.threshold <= 1.0:
            raise InvalidArgumentError(f"threshold must be in [0,1], got {self.threshold}")
        if not isinstance(self.max_rejects, int) or self.max_rejects < 1:
            raise InvalidArgumentError(f"max_rejects must be an integer >= 1, got {self.max_rejects}")
        if not isinstance(self.top_k, int) or self.top_k < 1:
            raise InvalidArgumentError(f"top_k must be an integer >= 1, got {self.top_k}")


@dataclass(frozen=True)
class Evidence:
    start: int
    end: int
    label: str


@dataclass(frozen=True)
class Suggestion:
    unit_id: str
    concept_id: str
    confidence: float
    scores: dict[str, float]
    evidence: tuple[Evidence, ...] = ()


@dataclass(frozen=True)
class ConceptIndex:
    taxonomy: Taxonomy
    cfg: LangConfig
    weights: tuple[float, ...]
    vectors: dict[str, dict[str, float]]
    df: dict[str, int]
    n_concepts: int
    empty_concepts: tuple[str, ...] = field(default=())


def _content_stems(tokens: list[Token], cfg: LangConfig) -> list[Token]:
    return [t for t in tokens if t.stem not in cfg.stopwords and t.normalized not in cfg.stopwords]


def _concept_term_counts(concept: Concept, cfg: LangConfig) -> Counter:
    """Term frequencies of the concept document; noun-like definition terms
    count double."""
    counts: Counter = Counter()
    for label in concept.labels():
        for token in _content_stems(tokenize(label, cfg), cfg):
            counts[token.stem] += 1
    if concept.definition:
        for token in _content_stems(tokenize(concept.definition, cfg), cfg):
            counts[token.stem] += 2 if token.noun_like else 1
    return counts


def _idf(term: str, df: dict[str, int], n: int) -> float:
    return math.log((n + 1) / (df.get(term, 0) + 1)) + 1.0


def _normalize(vector: dict[str, float]) -> dict[str, float]:
    norm = math.sqrt(sum(w * w for w in vector.values()))
    if norm == 0.0:
        return {}
    return {term: w / norm for term, w in vector.items()}


def build_index(
    taxonomy: Taxonomy,
    cfg: LangConfig,
    weights: tuple[float, float, float, float] = DEFAULT_WEIGHTS,
) -> ConceptIndex:
    """TF-IDF index over concept documents; idf = ln((N+1)/(df+1)) + 1,
    vectors L2-normalized."""
    weights = validate_weights(weights)
    counts = {cid: _concept_term_counts(c, cfg) for cid, c in taxonomy.concepts.items()}
    df: Counter = Counter()
    for c in counts.values():
        df.update(c.keys())
    n = len(taxonomy.concepts)
    vectors = {}
    empty = []
    for cid, term_counts in counts.items():
        vector = {term: tf * _idf(term, df, n) for term, tf in term_counts.items()}
        vector = _normalize(vector)
        if not vector:
            empty.append(cid)
        vectors[cid] = vector
    return ConceptIndex(
        taxonomy=taxonomy,
        cfg=cfg,
        weights=weights,
        vectors=vectors,
        df=dict(df),
        n_concepts=n,
        empty_concepts=tuple(empty),
    )


def unit_vector(index: ConceptIndex, tokens: list[Token]) -> dict[str, float]:
    """TF-IDF vector of a unit under the index's df table; noun-like terms
    count double."""
    counts: Counter = Counter()
    for token in _content_stems(tokens, index.cfg):
        counts[token.stem] += 2 if token.noun_like else 1
    vector = {t: tf * _idf(t, index.df, index.n_concepts) for t, tf in counts.items()}
    return _normalize(vector)


# --- predictors --------------------------------------------------------------


def score_exact_label(
    tokens: list[Token], concept: Concept, cfg: LangConfig
) -> tuple[float, tuple[Evidence, ...]]:
    """1 iff some label's normalized token sequence appears contiguously in
    the unit's normalized token sequence."""
    unit_seq = [t.normalized for t in tokens]
    evidence = []
    for label in concept.labels():
        label_seq = [t.normalized for t in tokenize(label, cfg)]
        if not label_seq or len(label_seq) > len(unit_seq):
            continue
        for i in range(len(unit_seq) - len(label_seq) + 1):
            if unit_seq[i : i + len(label_seq)] == label_seq:
                evidence.append(
                    Evidence(start=tokens[i].start, end=tokens[i + len(label_seq) - 1].end, label=label)
                )
                break
    return (1.0 if evidence else 0.0), tuple(evidence)


def score_stem_overlap(tokens: list[Token], concept: Concept, cfg: LangConfig) -> float:
    """Best stem-set containment |label ∩ unit| / |label| over the labels."""
    unit_stems = {t.stem for t in _content_stems(tokens, cfg)}
    best = 0.0
    for label in concept.labels():
        label_stems = {t.stem for t in _content_stems(tokenize(label, cfg), cfg)}
        if not label_stems:
            continue
        best = max(best, len(label_stems & unit_stems) / len(label_stems))
    return best


def _trigrams(word: str) -> set[str]:
    return {word[i : i + 3] for i in range(len(word) - 2)}


def trigram_dice(a: str, b: str) -> float:
    """Dice coefficient on unpadded character trigrams; tokens shorter than
    3 chars compare by exact equality."""
    if len(a) < 3 or len(b) < 3:
        return 1.0 if a == b else 0.0
    ta, tb = _trigrams(a), _trigrams(b)
    return 2 * len(ta & tb) / (len(ta) + len(tb))


def score_trigram(tokens: list[Token], concept: Concept, cfg: LangConfig) -> float:
    """Best trigram Dice between any noun-like unit token and any label token."""
    unit_words = [t.normalized for t in tokens if t.noun_like]
    if not unit_words:
        return 0.0
    label_words = {t.normalized for label in concept.labels() for t in tokenize(label, cfg)}
    if not label_words:
        return 0.0
    return max(trigram_dice(u, l) for u in unit_words for l in label_words)


def score_tfidf_cosine(index: ConceptIndex, tokens: list[Token], concept_id: str) -> float:
    """Cosine of the L2-normalized unit and concept vectors (0 if either is
    the zero vector)."""
    index.taxonomy.get(concept_id)
    uvec = unit_vector(index, tokens)
    cvec = index.vectors[concept_id]
    if len(uvec) > len(cvec):
        uvec, cvec = cvec, uvec
    return min(1.0, sum(w * cvec.get(term, 0.0) for term, w in uvec.items()))


def combine_scores(scores: tuple[float, ...], weights: tuple[float, ...]) -> float:
    weights = validate_weights(tuple(weights))
    if len(scores) != 4 or any(not 0.0 <= s <= 1.0 for s in scores):
        raise InvalidArgumentError(f"predictor scores must be 4 values in [0,1], got {scores}")
    return sum(w * s for w, s in zip(weights, scores))


# --- ranking -----------------------------------------------------------------


def score_unit(index: ConceptIndex, unit: TraceUnit) -> list[Suggestion]:
    """Score every concept for one unit, unfiltered, best first."""
    tokens = tokenize(unit.text, index.cfg)
    uvec = unit_vector(index, tokens)
    suggestions = []
    for cid, concept in index.taxonomy.concepts.items():
        exact, evidence = score_exact_label(tokens, concept, index.cfg)
        scores = (
            exact,
            score_stem_overlap(tokens, concept, index.cfg),
            score_trigram(tokens, concept, index.cfg),
            min(1.0, sum(w * index.vectors[cid].get(t, 0.0) for t, w in uvec.items())),
        )
        suggestions.append(
            Suggestion(
                unit_id=unit.unit_id,
                concept_id=cid,
                confidence=combine_scores(scores, index.weights),
                scores=dict(zip(PREDICTORS, scores)),
                evidence=evidence,
            )
        )
    suggestions.sort(key=lambda s: (-s.confidence, s.concept_id))
    return suggestions


def recommend(
    index: ConceptIndex,
    unit: TraceUnit,
    settings: RecommenderSettings,
    reject_counts: dict[tuple[str, str], int] | None = None,
) -> list[Suggestion]:
    """Threshold, suppress, rank, and truncate suggestions for one unit."""
    reject_counts = reject_counts or {}
    result = [
        s
        for s in score_unit(index, unit)
        if s.confidence >= settings.threshold
        and reject_counts.get((unit.unit_id, s.concept_id), 0) < settings.max_rejects
    ]
    return result[: settings.top_k]
