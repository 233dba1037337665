"""Hierarchical taxonomy model with CSV and SKOS-subset Turtle import.

The taxonomy is a forest: every concept has at most one parent and the
parent relation is acyclic. Construction goes through :func:`build_taxonomy`,
which either returns a validated :class:`Taxonomy` or a
:class:`ValidationReport` listing the problems.
"""

from __future__ import annotations

import csv
import io
import re
from dataclasses import dataclass, field

from .errors import FormatError, InvalidArgumentError, NotFoundError, TurtleParseError

SKOS_NS = "http://www.w3.org/2004/02/skos/core#"

CSV_COLUMNS = ["id", "code", "parent_id", "pref_label", "alt_labels", "definition"]


@dataclass(frozen=True)
class Concept:
    id: str
    pref_label: str
    code: str | None = None
    alt_labels: frozenset[str] = frozenset()
    definition: str | None = None
    parent: str | None = None

    def labels(self) -> list[str]:
        """pref_label first, then alt labels in sorted order."""
        return [self.pref_label] + sorted(self.alt_labels)


@dataclass(frozen=True)
class Issue:
    kind: str
    concept_id: str
    message: str


@dataclass
class ValidationReport:
    errors: list[Issue] = field(default_factory=list)
    warnings: list[Issue] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.errors


@dataclass(frozen=True)
class Taxonomy:
    concepts: dict[str, Concept]
    roots: tuple[str, ...]
    source_meta: tuple[str, str] = field(default=("unknown", ""), compare=False)

    def __len__(self) -> int:
        return len(self.concepts)

    def get(self, concept_id: str) -> Concept:
        try:
            return self.concepts[concept_id]
        except KeyError:
            raise NotFoundError(f"unknown concept: {concept_id}") from None


def build_taxonomy(
    concepts: list[Concept],
    source_meta: tuple[str, str],
    warnings: list[Issue] | None = None,
) -> Taxonomy | ValidationReport:
    """Validate a concept list and assemble the forest.

    Returns a ValidationReport instead of a Taxonomy when any error
    (duplicate id, empty label, dangling parent, parent cycle) is found.
    """
    report = ValidationReport(warnings=list(warnings or []))
    by_id: dict[str, Concept] = {}
    for c in concepts:
        if c.id in by_id:
            report.errors.append(Issue("duplicate-id", c.id, f"id {c.id!r} appears more than once"))
            continue
        by_id[c.id] = c

    for c in by_id.values():
        if not c.pref_label.strip():
            report.errors.append(Issue("empty-label", c.id, f"concept {c.id!r} has an empty pref_label"))
        if c.parent is not None and c.parent not in by_id:
            report.errors.append(
                Issue("dangling-parent", c.id, f"concept {c.id!r} refers to missing parent {c.parent!r}")
            )

    # Cycle detection over the parent relation, skipping dangling edges.
    state: dict[str, int] = {}  # 0=visiting, 1=done
    for start in by_id:
        if start in state:
            continue
        path: list[str] = []
        node: str | None = start
        while node is not None and node in by_id and node not in state:
            state[node] = 0
            path.append(node)
            node = by_id[node].parent
        if node is not None and node in by_id and state.get(node) == 0:
            cycle_start = path.index(node)
            members = sorted(path[cycle_start:])
            report.errors.append(
                Issue("cycle", members[0], "parent cycle through {" + ", ".join(members) + "}")
            )
        for n in path:
            state[n] = 1

    if report.errors:
        return report

    roots = tuple(sorted(cid for cid, c in by_id.items() if c.parent is None))
    return Taxonomy(concepts=by_id, roots=roots, source_meta=source_meta)


def _clean_alt_labels(raw: list[str], pref_label: str) -> frozenset[str]:
    """Drop duplicates and the pref_label itself (case-insensitive)."""
    seen: dict[str, str] = {}
    for label in raw:
        label = label.strip()
        if not label or label.lower() == pref_label.strip().lower():
            continue
        seen.setdefault(label.lower(), label)
    return frozenset(seen.values())


def parse_taxonomy_csv(data: bytes, source_name: str = "csv") -> Taxonomy | ValidationReport:
    """Parse the CSV interchange format (RFC-4180, ``|``-separated alt labels)."""
    text = data.decode("utf-8")
    reader = csv.DictReader(io.StringIO(text))
    header = reader.fieldnames or []
    for column in CSV_COLUMNS:
        if column not in header:
            raise FormatError(f"CSV header is missing column {column!r}")

    concepts = []
    for row in reader:
        pref = (row["pref_label"] or "").strip()
        alts = [a for a in (row["alt_labels"] or "").split("|") if a.strip()]
        concepts.append(
            Concept(
                id=(row["id"] or "").strip(),
                code=(row["code"] or "").strip() or None,
                parent=(row["parent_id"] or "").strip() or None,
                pref_label=pref,
                alt_labels=_clean_alt_labels(alts, pref),
                definition=(row["definition"] or "").strip() or None,
            )
        )
    return build_taxonomy(concepts, ("csv", source_name))


def serialize_taxonomy_csv(taxonomy: Taxonomy) -> bytes:
    """Canonical CSV: rows sorted by id, alt labels sorted."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for cid in sorted(taxonomy.concepts):
        c = taxonomy.concepts[cid]
        writer.writerow(
            [c.id, c.code or "", c.parent or "", c.pref_label, "|".join(sorted(c.alt_labels)), c.definition or ""]
        )
    return out.getvalue().encode("utf-8")


# --- Turtle subset -----------------------------------------------------------

_IRI_RE = re.compile(r"<([^<>\s]*)>")
_PNAME_RE = re.compile(r"([A-Za-z][\w.-]*)?:([\w.-]*)")
_STRING_RE = re.compile(r'"((?:[^"\\]|\\.)*)"(?:@([A-Za-z][A-Za-z0-9-]*))?')

_ESCAPES = {"n": "\n", "t": "\t", "r": "\r", '"': '"', "\\": "\\"}


def _unescape(raw: str) -> str:
    if "\\" not in raw:
        return raw

    def repl(m: re.Match) -> str:
        esc = m.group(1)
        if esc[0] in "uU":
            return chr(int(esc[1:], 16))
        return _ESCAPES.get(esc, esc)

    return re.sub(r"\\(u[0-9a-fA-F]{4}|U[0-9a-fA-F]{8}|.)", repl, raw)


class _TurtleScanner:
    """Token scanner for the supported Turtle subset."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.line = 1

    def _skip_ws(self) -> None:
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch == "#":
                while self.pos < len(self.text) and self.text[self.pos] != "\n":
                    self.pos += 1
            elif ch.isspace():
                if ch == "\n":
                    self.line += 1
                self.pos += 1
            else:
                return

    def at_end(self) -> bool:
        self._skip_ws()
        return self.pos >= len(self.text)

    def peek(self) -> str:
        self._skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take_punct(self, chars: str) -> str | None:
        if self.peek() in chars and self.peek():
            ch = self.text[self.pos]
            self.pos += 1
            return ch
        return None

    def expect_punct(self, chars: str) -> str:
        ch = self.take_punct(chars)
        if ch is None:
            raise TurtleParseError(f"expected one of {chars!r}", self.line)
        return ch

    def take_keyword(self, word: str) -> bool:
        self._skip_ws()
        end = self.pos + len(word)
        if self.text[self.pos : end] == word:
            if end >= len(self.text) or not (self.text[end].isalnum() or self.text[end] in ":_"):
                self.pos = end
                return True
        return False

    def term(self, prefixes: dict[str, str]) -> tuple[str, str, str | None]:
        """Read one term; returns (kind, value, langtag) with kind iri|literal."""
        self._skip_ws()
        m = _IRI_RE.match(self.text, self.pos)
        if m:
            self.pos = m.end()
            return ("iri", m.group(1), None)
        m = _STRING_RE.match(self.text, self.pos)
        if m:
            self.pos = m.end()
            return ("literal", _unescape(m.group(1)), m.group(2))
        m = _PNAME_RE.match(self.text, self.pos)
        if m:
            prefix = m.group(1) or ""
            if prefix not in prefixes:
                raise TurtleParseError(f"undeclared prefix {prefix!r}", self.line)
            self.pos = m.end()
            return ("iri", prefixes[prefix] + m.group(2), None)
        raise TurtleParseError("expected an IRI, prefixed name, or literal", self.line)


_SUPPORTED = {"prefLabel", "altLabel", "definition", "broader", "notation"}


def parse_taxonomy_turtle(
    data: bytes, lang: str = "en", source_name: str = "turtle"
) -> Taxonomy | ValidationReport:
    """Parse a SKOS-subset Turtle file into a Taxonomy.

    Supported predicates: skos:prefLabel, skos:altLabel, skos:definition,
    skos:broader, skos:notation. Other predicates produce a warning and are
    skipped. Labels prefer the ``lang`` tag, then the untagged literal, then
    the first literal seen.
    """
    text = data.decode("utf-8")
    scanner = _TurtleScanner(text)
    prefixes: dict[str, str] = {}
    # subject -> predicate local-name -> list of (value, langtag)
    triples: dict[str, dict[str, list[tuple[str, str | None]]]] = {}
    warnings: list[Issue] = []
    subject_order: list[str] = []

    def note(subject: str) -> dict[str, list[tuple[str, str | None]]]:
        if subject not in triples:
            triples[subject] = {}
            subject_order.append(subject)
        return triples[subject]

    while not scanner.at_end():
        if scanner.take_keyword("@prefix"):
            scanner._skip_ws()
            m = _PNAME_RE.match(scanner.text, scanner.pos)
            if not m or m.group(2):
                raise TurtleParseError("malformed @prefix declaration", scanner.line)
            scanner.pos = m.end()
            kind, iri, _ = scanner.term(prefixes)
            if kind != "iri":
                raise TurtleParseError("@prefix requires an IRI", scanner.line)
            prefixes[m.group(1) or ""] = iri
            scanner.expect_punct(".")
            continue

        kind, subject, _ = scanner.term(prefixes)
        if kind != "iri":
            raise TurtleParseError("subject must be an IRI", scanner.line)
        props = note(subject)
        while True:
            line = scanner.line
            if scanner.take_keyword("a"):
                predicate = "rdf:type"
            else:
                pkind, predicate, _ = scanner.term(prefixes)
                if pkind != "iri":
                    raise TurtleParseError("predicate must be an IRI", scanner.line)
            local = predicate.removeprefix(SKOS_NS) if predicate.startswith(SKOS_NS) else None
            supported = local in _SUPPORTED
            if not supported:
                warnings.append(
                    Issue("unsupported-predicate", subject, f"skipped predicate {predicate} (line {line})")
                )
            while True:
                okind, value, tag = scanner.term(prefixes)
                if supported and local is not None:
                    props.setdefault(local, []).append((value, tag))
                    if local == "broader" and okind == "iri":
                        note(value)
                if not scanner.take_punct(","):
                    break
            sep = scanner.expect_punct(";.")
            if sep == ".":
                break
            # trailing ';' before '.' is legal
            if scanner.take_punct("."):
                break

    def pick_literal(values: list[tuple[str, str | None]]) -> str | None:
        if not values:
            return None
        for value, tag in values:
            if tag == lang:
                return value
        for value, tag in values:
            if tag is None:
                return value
        return values[0][0]

    concepts = []
    report = ValidationReport()
    for subject in subject_order:
        props = triples[subject]
        broader = props.get("broader", [])
        if len(broader) > 1:
            report.errors.append(
                Issue("poly-hierarchy", subject, f"concept {subject!r} has {len(broader)} skos:broader parents")
            )
            continue
        pref = pick_literal(props.get("prefLabel", []))
        if pref is None:
            # Subject referenced without a prefLabel (e.g. only as a broader
            # target): fall back to the IRI local name so the forest stays whole.
            pref = re.split(r"[#/:]", subject.rstrip("#/"))[-1] or subject
            warnings.append(Issue("missing-preflabel", subject, f"no skos:prefLabel; using {pref!r}"))
        alts = [v for v, t in props.get("altLabel", []) if t is None or t == lang]
        concepts.append(
            Concept(
                id=subject,
                code=pick_literal(props.get("notation", [])),
                parent=broader[0][0] if broader else None,
                pref_label=pref.strip(),
                alt_labels=_clean_alt_labels(alts, pref),
                definition=pick_literal(props.get("definition", [])),
            )
        )
    if report.errors:
        report.warnings.extend(warnings)
        return report
    return build_taxonomy(concepts, ("turtle", source_name), warnings=warnings)


# --- queries -----------------------------------------------------------------


def ancestors(taxonomy: Taxonomy, concept_id: str) -> list[Concept]:
    """Parent chain from immediate parent to root; empty for roots."""
    concept = taxonomy.get(concept_id)
    chain = []
    while concept.parent is not None:
        concept = taxonomy.concepts[concept.parent]
        chain.append(concept)
    return chain


_MATCH_RANK = {"exact-label": 0, "prefix": 1, "substring": 2, "alt-label": 3}


def search_concepts(
    taxonomy: Taxonomy, query: str, limit: int = 10
) -> list[tuple[Concept, str]]:
    """Case-insensitive label search, ranked exact < prefix < substring < alt-label.

    Matches pref_label, alt_labels, and code; code and alt-label hits rank
    as alt-label. Ties break by pref_label.
    """
    q = query.strip().lower()
    if not q:
        raise InvalidArgumentError("search query must be non-empty")
    if limit < 1:
        raise InvalidArgumentError("limit must be positive")

    hits: list[tuple[int, str, Concept, str]] = []
    for concept in taxonomy.concepts.values():
        pref = concept.pref_label.lower()
        kind = None
        if pref == q:
            kind = "exact-label"
        elif pref.startswith(q):
            kind = "prefix"
        elif q in pref:
            kind = "substring"
        else:
            others = [a.lower() for a in concept.alt_labels]
            if concept.code:
                others.append(concept.code.lower())
            if any(q in label for label in others):
                kind = "alt-label"
        if kind is not None:
            hits.append((_MATCH_RANK[kind], concept.pref_label, concept, kind))

    hits.sort(key=lambda h: (h[0], h[1], h[2].id))
    return [(concept, kind) for _, _, concept, kind in hits[:limit]]
