"""Discover and load plain-text assignment files into an immutable corpus."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path

logger = logging.getLogger(__name__)

REPLACEMENT_CHAR = "\ufffd"
_ENCODED_REPLACEMENT = REPLACEMENT_CHAR.encode("utf-8")


class CorpusError(Exception):
    """Fatal problem while building a corpus (missing path, too few files, id clash)."""


class DocumentReadError(CorpusError):
    """A single file could not be read."""

    def __init__(self, path, reason):
        self.path = Path(path)
        super().__init__(f"cannot read {self.path}: {reason}")


@dataclass(frozen=True)
class Document:
    id: str
    source_path: Path
    raw_text: str
    byte_len: int
    replacements: int = 0
    warnings: tuple[str, ...] = field(default=(), compare=False)


@dataclass(frozen=True)
class Corpus:
    documents: tuple[Document, ...]

    def __post_init__(self):
        ids = [d.id for d in self.documents]
        if len(set(ids)) != len(ids):
            raise CorpusError(f"duplicate document ids in corpus: {sorted(ids)}")
        if ids != sorted(ids):
            object.__setattr__(self, "documents", tuple(sorted(self.documents, key=lambda d: d.id)))

    @property
    def N(self) -> int:
        return len(self.documents)

    @property
    def ids(self) -> list[str]:
        return [d.id for d in self.documents]

    def __len__(self):
        return len(self.documents)

    def __iter__(self):
        return iter(self.documents)

    @classmethod
    def from_texts(cls, texts: dict[str, str]) -> "Corpus":
        """Build an in-memory corpus from ``{id: text}``; handy for tests and tooling."""
        docs = []
        for doc_id, text in texts.items():
            data = text.encode("utf-8")
            docs.append(Document(id=doc_id, source_path=Path(f"<memory:{doc_id}>"),
                                 raw_text=text, byte_len=len(data)))
        return cls(tuple(docs))


def _decode(data: bytes) -> tuple[str, int]:
    try:
        return data.decode("utf-8"), 0
    except UnicodeDecodeError:
        text = data.decode("utf-8", errors="replace")
        # U+FFFD already present in the source is not a lossy replacement
        replaced = text.count(REPLACEMENT_CHAR) - data.count(_ENCODED_REPLACEMENT)
        return text, replaced


def load_document(path) -> Document:
    """Read one UTF-8 file, replacing invalid byte sequences.

    Warnings (empty file, lossy decode, likely binary) are logged and kept on
    ``Document.warnings``.
    """
    path = Path(path)
    try:
        data = path.read_bytes()
    except OSError as exc:
        raise DocumentReadError(path, exc.strerror or exc) from exc

    text, replaced = _decode(data)
    notes = []
    if not data:
        notes.append("empty document")
    if replaced:
        notes.append(f"lossy decode: {replaced} invalid byte sequence(s) replaced")
        if replaced > 0.5 * len(text):
            notes.append("likely non-text file")
    for note in notes:
        logger.warning("%s: %s", path, note)

    return Document(
        id=path.stem,
        source_path=path,
        raw_text=text,
        byte_len=len(data),
        replacements=replaced,
        warnings=tuple(notes),
    )


def scan_directory(path, glob: str = "*.txt", recursive: bool = False) -> Corpus:
    """Load every regular file in ``path`` matching ``glob`` into a Corpus.

    Ids are filename stems; documents are ordered lexicographically by id.
    """
    root = Path(path)
    if not root.exists():
        raise CorpusError(f"corpus directory does not exist: {root}")
    if not root.is_dir():
        raise CorpusError(f"not a directory: {root}")

    matches = root.rglob(glob) if recursive else root.glob(glob)
    files = sorted(p for p in matches if p.is_file())
    if not files:
        raise CorpusError(f"empty corpus: no files matching {glob!r} in {root}")
    if len(files) == 1:
        raise CorpusError(f"need at least 2 documents, found 1 in {root}")

    seen: dict[str, Path] = {}
    for f in files:
        if f.stem in seen:
            raise CorpusError(f"document id collision {f.stem!r}: {seen[f.stem]} and {f}")
        seen[f.stem] = f

    docs = [load_document(f) for f in files]
    return Corpus(tuple(sorted(docs, key=lambda d: d.id)))
