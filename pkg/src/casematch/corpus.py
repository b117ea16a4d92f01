"""Chunk-annotated corpus and gold case-frame files.

Corpus records are tab separated, one chunk per line::

    index  category  V-flag  prep  head  sem  person  number  text

Each sentence block starts with ``#id <sentence-id>`` and blocks are separated
by blank lines. ``-`` stands for an absent preposition or unknown feature.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import InputError
from .lexicon import CATEGORIES

UNKNOWN = "-"
PERSONS = ("1", "2", "3")
NUMBERS = ("sg", "pl")
NOMODEL = "NOMODEL"

_FILL = re.compile(r'(\w+)="((?:[^"\\]|\\.)*)"')
_MODEL = re.compile(r"^([^#\s]+)#([^.\s]+)\.(\S+)$")


def normalize_text(text):
    """Collapse whitespace runs and trim; the form used for string equality."""
    return " ".join(text.split())


@dataclass(frozen=True)
class Chunk:
    index: int
    category: str
    text: str
    head: str
    prep: str | None
    sem: str
    person: str = UNKNOWN
    number: str = UNKNOWN

    def agrees_with(self, other):
        """Person/number compatibility; unknown features are compatible with anything."""
        for mine, theirs in ((self.person, other.person), (self.number, other.number)):
            if mine != UNKNOWN and theirs != UNKNOWN and mine != theirs:
                return False
        return True


@dataclass(frozen=True)
class ChunkSentence:
    id: str
    chunks: tuple
    verb_index: int

    @property
    def verb(self):
        return self.chunks[self.verb_index]

    def __len__(self):
        return len(self.chunks)


@dataclass(frozen=True)
class GoldFrame:
    sentence_id: str
    model: str | None  # None marks a sentence annotated as having no model
    fills: dict = field(default_factory=dict)

    @property
    def lemma(self):
        return self.model.split("#", 1)[0] if self.model else None


def parse_corpus(source, ontology, filename=None):
    """Read chunk records into validated :class:`ChunkSentence` objects."""
    sentences = []
    seen_ids = set()
    block = []

    def flush():
        if block:
            sentence = _parse_block(block, ontology, filename)
            if sentence.id in seen_ids:
                raise InputError("duplicate sentence id", filename, block[0][0], sentence.id)
            seen_ids.add(sentence.id)
            sentences.append(sentence)
            block.clear()

    for lineno, raw in enumerate(source.splitlines(), 1):
        line = raw.rstrip("\r\n")
        if not line.strip():
            flush()
            continue
        block.append((lineno, line))
    flush()
    return sentences


def _parse_block(block, ontology, filename):
    lineno, header = block[0]
    parts = header.split(None, 1)
    if parts[0] != "#id" or len(parts) != 2 or len(parts[1].split()) != 1:
        raise InputError("sentence block must start with '#id <sentence-id>'",
                         filename, lineno, header.strip())
    sid = parts[1].strip()
    chunks = []
    verbs = []
    for lineno, line in block[1:]:
        cols = line.split("\t")
        if len(cols) != 9:
            raise InputError(f"expected 9 tab-separated columns, got {len(cols)}",
                             filename, lineno, line.strip())
        index, category, vflag, prep, head, sem, person, number, text = (c.strip() for c in cols)
        if not index.isdigit() or int(index) != len(chunks):
            raise InputError("chunk indices must be contiguous from 0", filename, lineno, index)
        if category not in CATEGORIES:
            raise InputError("unknown category", filename, lineno, category)
        if vflag not in ("V", UNKNOWN):
            raise InputError("verb flag must be V or -", filename, lineno, vflag)
        if vflag == "V":
            if category != "VP":
                raise InputError("main verb marker on a non-VP chunk", filename, lineno, category)
            verbs.append(len(chunks))
        prep = None if prep == UNKNOWN else prep.lower()
        if (prep is not None) != (category == "PP"):
            raise InputError("a preposition is required on PP chunks and only there",
                             filename, lineno, cols[3].strip())
        if sem not in ontology:
            raise InputError("unknown semantic label", filename, lineno, sem)
        if person not in PERSONS and person != UNKNOWN:
            raise InputError("bad person", filename, lineno, person)
        if number not in NUMBERS and number != UNKNOWN:
            raise InputError("bad number", filename, lineno, number)
        text = normalize_text(text)
        if not text or not head:
            raise InputError("empty text or head", filename, lineno, line.strip())
        chunks.append(Chunk(len(chunks), category, text, head, prep, sem, person, number))
    if len(verbs) != 1:
        raise InputError(f"expected exactly one main verb marker, found {len(verbs)}",
                         filename, block[0][0], sid)
    return ChunkSentence(sid, tuple(chunks), verbs[0])


def serialize_corpus(sentences):
    blocks = []
    for sentence in sentences:
        lines = [f"#id {sentence.id}"]
        for chunk in sentence.chunks:
            lines.append("\t".join([
                str(chunk.index),
                chunk.category,
                "V" if chunk.index == sentence.verb_index else UNKNOWN,
                chunk.prep or UNKNOWN,
                chunk.head,
                chunk.sem,
                chunk.person,
                chunk.number,
                chunk.text,
            ]))
        blocks.append("\n".join(lines) + "\n")
    return "\n".join(blocks)


def _quote(text):
    return text.replace("\\", "\\\\").replace('"', '\\"')


def _unquote(text):
    return re.sub(r"\\(.)", r"\1", text)


def format_fills(fills):
    return " ".join(f'{role}="{_quote(text)}"' for role, text in fills.items())


def parse_fills(text, filename=None, lineno=None):
    """Parse ``role="text" ...``; anything else on the line is an error."""
    fills = {}
    pos = 0
    text = text.strip()
    while pos < len(text):
        match = _FILL.match(text, pos)
        if not match:
            raise InputError("expected role=\"text\"", filename, lineno, text[pos:].split()[0])
        role, value = match.group(1), normalize_text(_unquote(match.group(2)))
        if role in fills:
            raise InputError("repeated role", filename, lineno, role)
        fills[role] = value
        pos = match.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return fills


def check_model_name(name, filename=None, lineno=None):
    if not _MODEL.match(name):
        raise InputError("model must look like <lemma>#<sense>.<scheme>", filename, lineno, name)
    return name


def parse_gold(source, roles=None, filename=None):
    """Read gold frames, one per line: ``<sentence-id> <lemma>#<sense>.<scheme> role="text" ...``.

    A line ``<sentence-id> NOMODEL`` records a sentence with no gold model.
    ``roles``, when given, is the allowed role vocabulary.
    """
    frames = []
    seen = set()
    for lineno, raw in enumerate(source.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split(None, 2)
        if len(parts) < 2:
            raise InputError("expected '<sentence-id> <model> fills...'", filename, lineno, line)
        sid, model = parts[0], parts[1]
        rest = parts[2] if len(parts) == 3 else ""
        if model == NOMODEL:
            if rest:
                raise InputError("NOMODEL takes no fills", filename, lineno, rest.split()[0])
            key = (sid, None)
            fills = {}
            model = None
        else:
            check_model_name(model, filename, lineno)
            fills = parse_fills(rest, filename, lineno)
            key = (sid, model)
        if roles is not None:
            for role in fills:
                if role not in roles:
                    raise InputError("role not in lexicon vocabulary", filename, lineno, role)
        if key in seen:
            raise InputError("duplicate (sentence, model) pair", filename, lineno,
                             f"{sid} {model or NOMODEL}")
        seen.add(key)
        frames.append(GoldFrame(sid, model, fills))
    return frames


def serialize_gold(frames):
    lines = []
    for frame in frames:
        if frame.model is None:
            lines.append(f"{frame.sentence_id}\t{NOMODEL}")
        else:
            fills = format_fills(frame.fills)
            lines.append(f"{frame.sentence_id}\t{frame.model}" + (f"\t{fills}" if fills else ""))
    return "\n".join(lines) + ("\n" if lines else "")
