"""Precision/recall/MAP evaluation of recommender output against a gold set.

Conventions: precision is 1.0 when nothing was proposed, recall is 1.0 when
the gold set is empty, and average precision is 0.0 for a unit without gold
concepts. MAP averages only over units that have at least one gold link.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass

from .errors import FormatError, InvalidArgumentError
from .recommender import ConceptIndex, RecommenderSettings, score_unit
from .textproc import TraceUnit

Pair = tuple[str, str]


@dataclass(frozen=True)
class GoldSet:
    pairs: frozenset[Pair]
    source: str = "gold"

    def concepts_for(self, unit_id: str) -> set[str]:
        return {c for u, c in self.pairs if u == unit_id}


@dataclass(frozen=True)
class MetricsReport:
    precision: float
    recall: float
    f1: float
    mean_average_precision: float
    curve: tuple[tuple[float, float, float], ...]  # (threshold, precision, recall)

    def to_json(self) -> str:
        return json.dumps(
            {
                "precision": self.precision,
                "recall": self.recall,
                "f1": self.f1,
                "map": self.mean_average_precision,
                "curve": [
                    {"threshold": t, "precision": p, "recall": r} for t, p, r in self.curve
                ],
            },
            indent=2,
        )

    def to_table(self) -> str:
        lines = [
            f"precision {self.precision:.4f}  recall {self.recall:.4f}  "
            f"f1 {self.f1:.4f}  map {self.mean_average_precision:.4f}",
            "",
            f"{'threshold':>9}  {'precision':>9}  {'recall':>9}",
        ]
        for t, p, r in self.curve:
            lines.append(f"{t:>9.2f}  {p:>9.4f}  {r:>9.4f}")
        return "\n".join(lines)


def load_gold_csv(data: bytes, source: str = "gold") -> GoldSet:
    reader = csv.DictReader(io.StringIO(data.decode("utf-8")))
    for column in ("unit_id", "concept_id"):
        if column not in (reader.fieldnames or []):
            raise FormatError(f"gold CSV header is missing column {column!r}")
    pairs = {(row["unit_id"], row["concept_id"]) for row in reader}
    return GoldSet(pairs=frozenset(pairs), source=source)


def precision_recall(proposed: set[Pair], gold: GoldSet) -> tuple[float, float, float]:
    hits = len(proposed & gold.pairs)
    precision = hits / len(proposed) if proposed else 1.0
    recall = hits / len(gold.pairs) if gold.pairs else 1.0
    f1 = 2 * precision * recall / (precision + recall) if precision + recall > 0 else 0.0
    return precision, recall, f1


def average_precision(ranked: list[str], gold_concepts: set[str]) -> float:
    """AP = mean of precision@r over the ranks r that hold a gold concept."""
    if len(set(ranked)) != len(ranked):
        raise InvalidArgumentError("ranked list contains duplicates")
    if not gold_concepts:
        return 0.0
    hits = 0
    total = 0.0
    for rank, concept_id in enumerate(ranked, start=1):
        if concept_id in gold_concepts:
            hits += 1
            total += hits / rank
    return total / len(gold_concepts)


def threshold_sweep(
    index: ConceptIndex,
    units: list[TraceUnit],
    gold: GoldSet,
    settings: RecommenderSettings,
    thresholds: list[float],
) -> MetricsReport:
    """P/R at each threshold (top_k unbounded, no suppression); headline P/R/F1
    at settings.threshold; MAP from the unthresholded rankings."""
    if any(not 0.0 <= t <= 1.0 for t in thresholds):
        raise InvalidArgumentError("thresholds must lie in [0,1]")
    if any(b <= a for a, b in zip(thresholds, thresholds[1:])):
        raise InvalidArgumentError("thresholds must be strictly increasing")

    rankings = {unit.unit_id: score_unit(index, unit) for unit in units}

    def proposed_at(threshold: float) -> set[Pair]:
        return {
            (uid, s.concept_id)
            for uid, ranked in rankings.items()
            for s in ranked
            if s.confidence >= threshold
        }

    curve = []
    for t in thresholds:
        p, r, _ = precision_recall(proposed_at(t), gold)
        curve.append((t, p, r))

    aps = []
    for uid, ranked in rankings.items():
        gold_concepts = gold.concepts_for(uid)
        if gold_concepts:
            aps.append(average_precision([s.concept_id for s in ranked], gold_concepts))
    mean_ap = sum(aps) / len(aps) if aps else 0.0

    precision, recall, f1 = precision_recall(proposed_at(settings.threshold), gold)
    return MetricsReport(
        precision=precision,
        recall=recall,
        f1=f1,
        mean_average_precision=mean_ap,
        curve=tuple(curve),
    )
