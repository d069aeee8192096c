"""Subtitle and transcript ingestion.

Parses raw sources (OPUS-style one-sentence-per-line text, SubRip .srt
files, TED talk transcript JSONL) into a canonical stream of utterance
records.  Audience-response annotations such as ``[LAUGHTER]`` or
``(AUDIENCE APPLAUDING)`` are detected with character offsets, removed
from the spoken text, and re-attached to the utterance they follow as
``events_after``.  Remaining hearing-impaired notation (leading speaker
tags, music-note lyrics, non-event annotations) is stripped.

An annotation at the start of a line belongs to the event timeline
between the previous utterance and this one, so it attaches to the
previous record; annotations before the very first record of a document
have no carrier and are counted in ``Document.events_dropped``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, TextIO

from .errors import FormatError

RESPONSE_KINDS = (
    "clap",
    "applause",
    "cheer",
    "chuckle",
    "cry",
    "laugh",
    "scream",
    "shout",
    "sigh",
    "grunt",
    "sob",
)

# Case-insensitive surface-form prefixes seen inside annotations.  A prefix
# covers its inflections: LAUGH -> LAUGHS / LAUGHTER / LAUGHING.
DEFAULT_LEXICON = {
    "clap": "clap",
    "applau": "applause",
    "cheer": "cheer",
    "chuckl": "chuckle",
    "cry": "cry",
    "crie": "cry",
    "laugh": "laugh",
    "scream": "scream",
    "shout": "shout",
    "sigh": "sigh",
    "grunt": "grunt",
    "sob": "sob",
}

SOURCE_FORMATS = ("opus-lines", "srt", "ted")

# Non-nested [...] or (...) spans; nested/unclosed delimiters fail to match
# and are handled as malformed (plain text plus a warning).
ANNOTATION_RE = re.compile(r"\[[^\[\]()]*\]|\([^()\[\]]*\)")
ALPHA_RE = re.compile(r"[A-Za-z]+")
SPEAKER_TAG_RE = re.compile(r"^[A-Z][A-Z0-9 .,'&-]{0,39}:\s*")
SENTENCE_RE = re.compile(r"[^.!?]+[.!?]*")
TIMESTAMP_RE = re.compile(
    r"(\d{2}):(\d{2}):(\d{2}),(\d{3})\s*-->\s*(\d{2}):(\d{2}):(\d{2}),(\d{3})\s*$"
)
MUSIC_NOTES = "♪♫"
_DELIM_TABLE = str.maketrans("", "", "[]()")

CORPUS_KEYS = ("doc_id", "line_idx", "text", "events_after", "source_format")


@dataclass(frozen=True, slots=True)
class EventAnnotation:
    """A lexicon-matched annotation span within one raw line."""

    kind: str
    char_start: int
    char_end: int
    raw_text: str


@dataclass(slots=True)
class UtteranceRecord:
    """One clean uttered sentence plus the events that follow it."""

    doc_id: str
    line_idx: int
    text: str
    events_after: list[str]
    source_format: str


@dataclass(slots=True)
class Document:
    """Ordered utterances of one source document.

    The counters are per-parse diagnostics and do not take part in
    equality, so a document read back from disk compares equal to the
    one that was written.
    """

    doc_id: str
    utterances: list[UtteranceRecord] = field(default_factory=list)
    events_detected: int = field(default=0, compare=False)
    events_dropped: int = field(default=0, compare=False)
    warnings: int = field(default=0, compare=False)


def classify_annotation(content: str, lexicon: dict[str, str] = DEFAULT_LEXICON) -> str | None:
    """Map annotation text to a response kind, or None for non-events.

    The first alphabetic token that starts with a lexicon prefix decides
    the kind, so "(CHEERS AND APPLAUSE)" is a cheer.
    """
    for word in ALPHA_RE.findall(content):
        w = word.lower()
        for prefix, kind in lexicon.items():
            if w.startswith(prefix):
                return kind
    return None


def detect_events(raw_line: str, lexicon: dict[str, str] = DEFAULT_LEXICON) -> list[EventAnnotation]:
    """Find all lexicon annotations in a raw line, ordered by offset.

    Bracketed and parenthesized spans are both accepted.  Annotations
    whose content matches no lexicon prefix (speaker names, music cues)
    are not events and are not returned.
    """
    events = []
    for m in ANNOTATION_RE.finditer(raw_line):
        kind = classify_annotation(m.group(0), lexicon)
        if kind is not None:
            events.append(EventAnnotation(kind, m.start(), m.end(), m.group(0)))
    return events


def has_malformed_annotation(raw_line: str) -> bool:
    """True when delimiters remain after removing well-formed annotations."""
    leftover = ANNOTATION_RE.sub("", raw_line)
    return any(ch in leftover for ch in "[]()")


def split_line_at_event(raw_line: str, events: list[EventAnnotation]) -> list[str]:
    """Cut a raw line around its events into k+1 trimmed text segments.

    Segment i precedes event i; the final segment follows the last
    event.  Segments may be empty and are dropped downstream.
    """
    segments = []
    pos = 0
    for ev in events:
        segments.append(raw_line[pos : ev.char_start].strip())
        pos = ev.char_end
    segments.append(raw_line[pos:].strip())
    return segments


def _strip_music(text: str) -> str:
    # Lyrics between music notes are non-spoken; an unpaired note drops the tail.
    out = []
    i = 0
    while i < len(text):
        if text[i] in MUSIC_NOTES:
            j = i + 1
            while j < len(text) and text[j] not in MUSIC_NOTES:
                j += 1
            if j >= len(text):
                break
            out.append(" ")
            i = j + 1
            continue
        out.append(text[i])
        i += 1
    return "".join(out)


def strip_noise(raw_line: str) -> str:
    """Remove hearing-impaired notation and collapse whitespace.

    Applies a fixed rule table: well-formed annotations, music-note
    lyrics, a leading all-caps "NAME:" speaker tag, and any stray
    delimiter characters left behind by malformed nesting.  May return
    an empty string.
    """
    text = ANNOTATION_RE.sub(" ", raw_line)
    text = _strip_music(text)
    text = SPEAKER_TAG_RE.sub("", text.lstrip())
    text = text.translate(_DELIM_TABLE)
    return " ".join(text.split())


def _attach_event(doc: Document, kind: str) -> None:
    if doc.utterances:
        doc.utterances[-1].events_after.append(kind)
    else:
        doc.events_dropped += 1


def _emit(doc: Document, text: str, source_format: str) -> None:
    doc.utterances.append(
        UtteranceRecord(doc.doc_id, len(doc.utterances), text, [], source_format)
    )


def _ingest_line(doc: Document, raw_line: str, source_format: str, lexicon: dict[str, str]) -> None:
    """Process one raw line: detect events, split, strip, emit records."""
    if has_malformed_annotation(raw_line):
        doc.warnings += 1
    events = detect_events(raw_line, lexicon)
    doc.events_detected += len(events)
    segments = split_line_at_event(raw_line, events)
    for i, segment in enumerate(segments):
        clean = strip_noise(segment)
        if clean:
            _emit(doc, clean, source_format)
        if i < len(events):
            _attach_event(doc, events[i].kind)


def parse_opus_lines(
    stream: Iterable[str], doc_id: str, lexicon: dict[str, str] = DEFAULT_LEXICON
) -> Document:
    """Parse one-utterance-per-line text into a Document.

    Mid-line events split the line: the words before the event become
    one record, the ones after it the next, and the event attaches to
    the record it follows.  Lines that are empty after stripping leave
    their events on the previous record.
    """
    doc = Document(doc_id)
    try:
        for raw_line in stream:
            _ingest_line(doc, raw_line.rstrip("\n"), "opus-lines", lexicon)
    except UnicodeDecodeError as err:
        raise FormatError(
            f"{doc_id}: undecodable input near byte offset {err.start} ({err.reason})"
        ) from err
    return doc


def _iter_srt_blocks(stream: Iterable[str]) -> Iterator[list[str]]:
    block: list[str] = []
    for line in stream:
        if line.strip():
            block.append(line.rstrip("\n"))
        elif block:
            yield block
            block = []
    if block:
        yield block


def _timestamp_seconds(m: re.Match) -> float:
    h, mi, s, ms = (int(m.group(i)) for i in range(1, 5))
    return h * 3600 + mi * 60 + s + ms / 1000.0


def parse_srt(
    stream: Iterable[str], doc_id: str, lexicon: dict[str, str] = DEFAULT_LEXICON
) -> Document:
    """Parse a SubRip file; each cue's joined text is one raw line.

    Cues with a malformed timestamp are skipped with a warning;
    out-of-order cues are reordered by start time before processing.
    Timestamps are discarded afterwards.
    """
    doc = Document(doc_id)
    cues: list[tuple[float, str]] = []
    try:
        for block in _iter_srt_blocks(stream):
            lines = block
            if lines and lines[0].strip().isdigit():
                lines = lines[1:]
            if not lines:
                doc.warnings += 1
                continue
            m = TIMESTAMP_RE.match(lines[0].strip())
            if m is None:
                doc.warnings += 1
                continue
            cues.append((_timestamp_seconds(m), " ".join(lines[1:])))
    except UnicodeDecodeError as err:
        raise FormatError(
            f"{doc_id}: undecodable input near byte offset {err.start} ({err.reason})"
        ) from err
    cues.sort(key=lambda cue: cue[0])
    for _, text in cues:
        _ingest_line(doc, text, "srt", lexicon)
    return doc


def _split_sentences(segment: str) -> list[str]:
    return [s for s in SENTENCE_RE.findall(segment)]


def _ingest_ted_text(doc: Document, text: str, lexicon: dict[str, str]) -> None:
    # Like _ingest_line, but segments between events are further split into
    # sentences on terminal punctuation.
    if has_malformed_annotation(text):
        doc.warnings += 1
    events = detect_events(text, lexicon)
    doc.events_detected += len(events)
    segments = split_line_at_event(text, events)
    for i, segment in enumerate(segments):
        for sentence in _split_sentences(segment):
            clean = strip_noise(sentence)
            if clean:
                _emit(doc, clean, "ted")
        if i < len(events):
            _attach_event(doc, events[i].kind)


def parse_ted_transcript(
    stream: Iterable[str], doc_id: str | None = None, lexicon: dict[str, str] = DEFAULT_LEXICON
) -> Document:
    """Parse TED transcript JSONL ({"talk_id": ..., "text": ...} per line).

    Text is sentence-segmented on terminal punctuation outside
    annotations; inline annotations such as "(Applause)" attach to the
    sentence they follow.  Invalid JSON lines are skipped with a
    warning.  The document id is the first talk_id seen (or the given
    fallback); one talk per stream is expected and lines naming a
    different talk_id are counted as warnings.
    """
    doc = Document(doc_id or "")
    first_talk: str | None = None
    for raw in stream:
        raw = raw.strip()
        if not raw:
            continue
        try:
            obj = json.loads(raw)
        except json.JSONDecodeError:
            doc.warnings += 1
            continue
        if (
            not isinstance(obj, dict)
            or not isinstance(obj.get("talk_id"), str)
            or not isinstance(obj.get("text"), str)
        ):
            doc.warnings += 1
            continue
        if first_talk is None:
            first_talk = obj["talk_id"]
            if doc_id is None:
                doc.doc_id = first_talk
        elif obj["talk_id"] != first_talk:
            doc.warnings += 1
        _ingest_ted_text(doc, obj["text"], lexicon)
    for record in doc.utterances:
        record.doc_id = doc.doc_id
    return doc


def write_corpus(docs: Iterable[Document], out: TextIO) -> None:
    """Write records as canonical JSONL (fixed key order, UTF-8, \\n)."""
    for doc in docs:
        for rec in doc.utterances:
            out.write(
                json.dumps(
                    {
                        "doc_id": rec.doc_id,
                        "line_idx": rec.line_idx,
                        "text": rec.text,
                        "events_after": rec.events_after,
                        "source_format": rec.source_format,
                    },
                    ensure_ascii=False,
                )
                + "\n"
            )


def read_corpus(stream: Iterable[str], name: str = "<corpus>") -> list[Document]:
    """Read canonical corpus JSONL back into Documents.

    Any schema violation (bad JSON, wrong keys or types, unknown
    response kind or source format, non-monotone line_idx) raises
    FormatError naming the line.
    """
    docs: dict[str, Document] = {}
    for lineno, raw in enumerate(stream, 1):
        raw = raw.strip()
        if not raw:
            continue
        try:
            obj = json.loads(raw)
        except json.JSONDecodeError as err:
            raise FormatError(f"{name}:{lineno}: invalid JSON ({err.msg})") from err
        if not isinstance(obj, dict) or tuple(sorted(obj)) != tuple(sorted(CORPUS_KEYS)):
            raise FormatError(f"{name}:{lineno}: expected exactly the keys {CORPUS_KEYS}")
        doc_id, line_idx, text = obj["doc_id"], obj["line_idx"], obj["text"]
        events, fmt = obj["events_after"], obj["source_format"]
        if not isinstance(doc_id, str) or not isinstance(text, str):
            raise FormatError(f"{name}:{lineno}: doc_id and text must be strings")
        if not isinstance(line_idx, int) or isinstance(line_idx, bool) or line_idx < 0:
            raise FormatError(f"{name}:{lineno}: line_idx must be a nonnegative integer")
        if not isinstance(events, list) or any(k not in RESPONSE_KINDS for k in events):
            raise FormatError(f"{name}:{lineno}: events_after must list known response kinds")
        if fmt not in SOURCE_FORMATS:
            raise FormatError(f"{name}:{lineno}: unknown source_format {fmt!r}")
        doc = docs.get(doc_id)
        if doc is None:
            doc = docs[doc_id] = Document(doc_id)
        if doc.utterances and doc.utterances[-1].line_idx >= line_idx:
            raise FormatError(f"{name}:{lineno}: line_idx not strictly increasing in {doc_id!r}")
        doc.utterances.append(UtteranceRecord(doc_id, line_idx, text, list(events), fmt))
    return list(docs.values())


def write_corpus_file(docs: Iterable[Document], path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as out:
        write_corpus(docs, out)


def read_corpus_file(path) -> list[Document]:
    with open(path, "r", encoding="utf-8") as stream:
        return read_corpus(stream, name=str(path))
