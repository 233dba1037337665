"""Requirement ingestion and the tokenize/stem/noun pipeline.

Everything here is a pure function over immutable inputs. Requirements are
segmented one unit per non-blank line (plain text) or one per array element
(JSON).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass

from .errors import EncodingError, SchemaError

# English and Swedish function words; compared against token *stems*.
STOPWORDS = {
    "en": frozenset(
        """a an and are as at be by for from has have if in is it its must no
        not of on or shall should that the their this to was were which will
        with""".split()
    ),
    "sv": frozenset(
        """att av bör de den denna det dessa du eller en ett får för han hon
        i inte kan man med när och om på samt ska skall som till vara vid är
        över""".split()
    ),
}

# Suffix-strip rules, applied longest-match-first. An English word ending in
# "ss" keeps its "s"; a Swedish suffix only strips when >= 3 chars remain.
_EN_SUFFIXES = [("ies", "y"), ("es", ""), ("s", "")]
_SV_SUFFIXES = ["arna", "erna", "orna", "ar", "er", "or", "en", "et", "n", "t"]


@dataclass(frozen=True)
class LangConfig:
    lang: str = "en"
    stopwords: frozenset[str] = STOPWORDS["en"]
    stemmer: str = "en"
    noun_lexicon: frozenset[str] | None = None

    @staticmethod
    def for_language(
        lang: str,
        stopwords: frozenset[str] | None = None,
        noun_lexicon: frozenset[str] | None = None,
    ) -> "LangConfig":
        if lang not in STOPWORDS:
            raise SchemaError(f"unsupported language {lang!r} (expected en or sv)")
        return LangConfig(
            lang=lang,
            stopwords=stopwords if stopwords is not None else STOPWORDS[lang],
            stemmer=lang,
            noun_lexicon=noun_lexicon,
        )


@dataclass(frozen=True)
class TraceUnit:
    unit_id: str
    doc_id: str
    seq: int
    text: str


@dataclass(frozen=True)
class Token:
    surface: str
    normalized: str
    stem: str
    start: int
    end: int
    noun_like: bool


def import_plaintext(data: bytes, doc_id: str) -> list[TraceUnit]:
    """One TraceUnit per non-blank line; unit_id = doc_id + '#' + seq."""
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise EncodingError(f"invalid UTF-8 at byte {exc.start}", exc.start) from None
    units = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        seq = len(units)
        units.append(TraceUnit(unit_id=f"{doc_id}#{seq}", doc_id=doc_id, seq=seq, text=line))
    return units


def import_json(data: bytes) -> list[TraceUnit]:
    """Parse a JSON array of {id, text} objects, or a {doc_id, units} wrapper."""
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise EncodingError(f"invalid UTF-8 at byte {exc.start}", exc.start) from None
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from None

    doc_id = "imported"
    if isinstance(payload, dict):
        doc_id = payload.get("doc_id", doc_id)
        payload = payload.get("units")
    if not isinstance(payload, list):
        raise SchemaError("expected a JSON array of unit objects")

    units = []
    seen: set[str] = set()
    for i, element in enumerate(payload):
        if not isinstance(element, dict):
            raise SchemaError(f"element {i} is not an object")
        for field_name in ("id", "text"):
            if not isinstance(element.get(field_name), str):
                raise SchemaError(f"element {i} is missing string field {field_name!r}")
        unit_id = element["id"]
        if unit_id in seen:
            raise SchemaError(f"duplicate id {unit_id!r} at element {i}")
        seen.add(unit_id)
        if not element["text"].strip():
            raise SchemaError(f"element {i} has empty text")
        units.append(TraceUnit(unit_id=unit_id, doc_id=doc_id, seq=i, text=element["text"]))
    return units


def stem(normalized: str, cfg: LangConfig) -> str:
    """Rule-table suffix stripping; never empties the token."""
    word = normalized
    if cfg.stemmer == "en":
        if word.endswith("ies") and len(word) > 3:
            return word[:-3] + "y"
        if word.endswith("ss"):
            return word
        for suffix, repl in _EN_SUFFIXES[1:]:
            if word.endswith(suffix) and len(word) > len(suffix):
                return word[: -len(suffix)] + repl
        return word
    for suffix in _SV_SUFFIXES:
        if word.endswith(suffix) and len(word) - len(suffix) >= 3:
            return word[: -len(suffix)]
    return word


def _noun_like(normalized: str, stemmed: str, cfg: LangConfig) -> bool:
    if stemmed in cfg.stopwords:
        return False
    if cfg.noun_lexicon is not None:
        return stemmed in cfg.noun_lexicon
    return len(normalized) >= 3


def noun_like(token: Token, cfg: LangConfig) -> bool:
    """Stopword stems are never noun-like; otherwise use the lexicon if
    configured, else a length >= 3 heuristic."""
    return _noun_like(token.normalized, token.stem, cfg)


_WORD_RE = re.compile(r"[^\W_]+", re.UNICODE)


def tokenize(text: str, cfg: LangConfig) -> list[Token]:
    """Split on whitespace and punctuation (hyphens split); offsets index
    the original text."""
    tokens = []
    for m in _WORD_RE.finditer(text):
        surface = m.group(0)
        # Lowercasing can introduce combining marks (e.g. 'İ'); keep only
        # word characters so normalized forms re-tokenize to themselves.
        normalized = "".join(_WORD_RE.findall(surface.lower()))
        if not normalized:
            continue
        stemmed = stem(normalized, cfg)
        tokens.append(
            Token(
                surface=surface,
                normalized=normalized,
                stem=stemmed,
                start=m.start(),
                end=m.end(),
                noun_like=_noun_like(normalized, stemmed, cfg),
            )
        )
    return tokens


def load_wordlist(data: bytes) -> frozenset[str]:
    """Stopword / noun-lexicon file: UTF-8, one entry per line."""
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise EncodingError(f"invalid UTF-8 at byte {exc.start}", exc.start) from None
    return frozenset(line.strip().lower() for line in text.splitlines() if line.strip())
