"""Event-sourced store for trace decisions.

State (active links, reject counts) is always derivable by replaying the
append-only decision log. The log persists as JSONL, one event per line:
``{"event": ..., "unit_id": ..., "concept_id": ..., "confidence": ..., "ts": ...}``.
Manual links are logged as accept events with confidence 0; replay restores
provenance from that convention.

Single-writer contract: callers serialize mutations; reads are safe against
the current snapshot.
"""

from __future__ import annotations

import csv
import io
import json
from collections import Counter
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

from .errors import ConflictError, InvalidArgumentError, LinkImportError, NotFoundError
from .taxonomy import Taxonomy

EVENTS = ("accept", "reject", "unlink")

EXPORT_COLUMNS = ["unit_id", "concept_id", "code", "label", "provenance", "confidence", "created_at"]


def _now() -> str:
    return datetime.now(timezone.utc).isoformat().replace("+00:00", "Z")


@dataclass(frozen=True)
class TraceLink:
    unit_id: str
    concept_id: str
    provenance: str  # manual | recommended
    confidence: float
    created_at: str


@dataclass(frozen=True)
class Event:
    event: str
    unit_id: str
    concept_id: str
    confidence: float
    ts: str

    def to_json(self) -> str:
        return json.dumps(
            {
                "event": self.event,
                "unit_id": self.unit_id,
                "concept_id": self.concept_id,
                "confidence": self.confidence,
                "ts": self.ts,
            }
        )


class TraceStore:
    """Active link set + reject counters, backed by an append-only event log.

    ``known_units`` / ``known_concepts``, when given, validate ids on every
    mutation. ``path`` enables JSONL persistence (each event appended on
    commit).
    """

    def __init__(
        self,
        known_units: set[str] | None = None,
        known_concepts: set[str] | None = None,
        path: Path | str | None = None,
    ):
        self.known_units = known_units
        self.known_concepts = known_concepts
        self.path = Path(path) if path is not None else None
        self.log: list[Event] = []
        self.links: dict[tuple[str, str], TraceLink] = {}
        self.rejects: Counter = Counter()

    # --- construction / persistence ------------------------------------

    @classmethod
    def replay(cls, events: list[Event], **kwargs) -> "TraceStore":
        store = cls(**kwargs)
        for event in events:
            store._apply(event)
            store.log.append(event)
        return store

    @classmethod
    def load(cls, path: Path | str, **kwargs) -> "TraceStore":
        path = Path(path)
        events = []
        if path.exists():
            for line in path.read_text("utf-8").splitlines():
                if not line.strip():
                    continue
                raw = json.loads(line)
                events.append(
                    Event(
                        event=raw["event"],
                        unit_id=raw["unit_id"],
                        concept_id=raw["concept_id"],
                        confidence=float(raw.get("confidence", 0.0)),
                        ts=raw["ts"],
                    )
                )
        store = cls.replay(events, **kwargs)
        store.path = path
        return store

    def _commit(self, event: Event) -> None:
        self._apply(event)
        self.log.append(event)
        if self.path is not None:
            with self.path.open("a", encoding="utf-8") as fh:
                fh.write(event.to_json() + "\n")

    def _apply(self, event: Event) -> None:
        pair = (event.unit_id, event.concept_id)
        if event.event == "accept":
            if pair not in self.links:
                provenance = "manual" if event.confidence == 0.0 else "recommended"
                self.links[pair] = TraceLink(
                    unit_id=event.unit_id,
                    concept_id=event.concept_id,
                    provenance=provenance,
                    confidence=event.confidence,
                    created_at=event.ts,
                )
        elif event.event == "reject":
            self.rejects[pair] += 1
        elif event.event == "unlink":
            self.links.pop(pair, None)

    def _check_known(self, unit_id: str, concept_id: str) -> None:
        if self.known_units is not None and unit_id not in self.known_units:
            raise NotFoundError(f"unknown unit: {unit_id}")
        if self.known_concepts is not None and concept_id not in self.known_concepts:
            raise NotFoundError(f"unknown concept: {concept_id}")

    # --- mutations ------------------------------------------------------

    def record_decision(
        self, unit_id: str, concept_id: str, decision: str, confidence: float = 0.0
    ) -> None:
        """Accept creates a recommended link (idempotent); reject bumps the
        suppression counter. Rejecting an actively linked pair is a conflict."""
        self._check_known(unit_id, concept_id)
        if decision not in ("accept", "reject"):
            raise InvalidArgumentError(f"unknown decision {decision!r}")
        pair = (unit_id, concept_id)
        if decision == "reject" and pair in self.links:
            raise ConflictError(f"pair {pair} is actively linked; unlink before rejecting")
        if decision == "accept" and not 0.0 < confidence <= 1.0:
            raise InvalidArgumentError("accepting a recommendation requires confidence in (0,1]")
        self._commit(Event(decision, unit_id, concept_id, confidence, _now()))

    def create_manual_link(self, unit_id: str, concept_id: str) -> TraceLink:
        """Manual links bypass reject suppression but not pair uniqueness."""
        self._check_known(unit_id, concept_id)
        pair = (unit_id, concept_id)
        if pair in self.links:
            raise ConflictError(f"pair {pair} is already linked")
        self._commit(Event("accept", unit_id, concept_id, 0.0, _now()))
        return self.links[pair]

    def unlink(self, unit_id: str, concept_id: str) -> None:
        pair = (unit_id, concept_id)
        if pair not in self.links:
            raise NotFoundError(f"pair {pair} is not linked")
        self._commit(Event("unlink", unit_id, concept_id, 0.0, _now()))

    # --- queries ----------------------------------------------------------

    def reject_count(self, unit_id: str, concept_id: str) -> int:
        return self.rejects[(unit_id, concept_id)]

    def active_links(self) -> list[TraceLink]:
        return [self.links[pair] for pair in sorted(self.links)]

    # --- import / export ---------------------------------------------------

    def export_links(self, fmt: str, taxonomy: Taxonomy | None = None) -> bytes:
        """Export active links sorted by (unit_id, concept_id) as CSV or JSONL."""
        rows = []
        for link in self.active_links():
            code = label = ""
            if taxonomy is not None and link.concept_id in taxonomy.concepts:
                concept = taxonomy.concepts[link.concept_id]
                code = concept.code or ""
                label = concept.pref_label
            rows.append(
                {
                    "unit_id": link.unit_id,
                    "concept_id": link.concept_id,
                    "code": code,
                    "label": label,
                    "provenance": link.provenance,
                    "confidence": link.confidence,
                    "created_at": link.created_at,
                }
            )
        if fmt == "jsonl":
            return ("".join(json.dumps(r) + "\n" for r in rows)).encode("utf-8")
        if fmt == "csv":
            out = io.StringIO()
            writer = csv.DictWriter(out, fieldnames=EXPORT_COLUMNS, lineterminator="\n")
            writer.writeheader()
            writer.writerows(rows)
            return out.getvalue().encode("utf-8")
        raise InvalidArgumentError(f"unknown export format {fmt!r}")

    def import_links(self, data: bytes, fmt: str) -> None:
        """All-or-nothing import of an exported link file."""
        text = data.decode("utf-8")
        records: list[tuple[int, dict]] = []
        issues: list[tuple[int, str]] = []
        if fmt == "jsonl":
            for lineno, line in enumerate(text.splitlines(), start=1):
                if not line.strip():
                    continue
                try:
                    records.append((lineno, json.loads(line)))
                except json.JSONDecodeError:
                    issues.append((lineno, "malformed JSON"))
        elif fmt == "csv":
            reader = csv.DictReader(io.StringIO(text))
            missing = [c for c in EXPORT_COLUMNS if c not in (reader.fieldnames or [])]
            if missing:
                raise LinkImportError([(1, f"header missing columns: {', '.join(missing)}")])
            for lineno, row in enumerate(reader, start=2):
                records.append((lineno, row))
        else:
            raise InvalidArgumentError(f"unknown import format {fmt!r}")

        seen: set[tuple[str, str]] = set()
        prepared: list[Event] = []
        for lineno, rec in records:
            unit_id = rec.get("unit_id")
            concept_id = rec.get("concept_id")
            if not unit_id or not concept_id:
                issues.append((lineno, "missing unit_id or concept_id"))
                continue
            pair = (unit_id, concept_id)
            if pair in seen or pair in self.links:
                issues.append((lineno, f"duplicate pair {pair}"))
                continue
            seen.add(pair)
            try:
                self._check_known(unit_id, concept_id)
            except NotFoundError as exc:
                issues.append((lineno, exc.message))
                continue
            try:
                confidence = float(rec.get("confidence") or 0.0)
            except ValueError:
                issues.append((lineno, "malformed confidence"))
                continue
            prepared.append(
                Event("accept", unit_id, concept_id, confidence, rec.get("created_at") or _now())
            )
        if issues:
            raise LinkImportError(sorted(issues))
        for event in prepared:
            self._commit(event)
