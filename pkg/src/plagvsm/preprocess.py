"""Tokenization and stopword removal.

A delimiter is any character that is not alphanumeric in the Unicode sense;
tokens are the maximal alphanumeric runs of the case-folded text. Numbers are
kept. There is no stemming or sentence splitting.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable

from .corpus import Corpus

logger = logging.getLogger(__name__)

# \w minus underscore == str.isalnum() runs
_TOKEN_RE = re.compile(r"[^\W_]+")

BUNDLED_SOURCE = "bundled-default"


@dataclass(frozen=True)
class StopwordSet:
    words: frozenset[str]
    source: str = "custom"

    def __post_init__(self):
        cleaned = frozenset(w.strip().casefold() for w in self.words)
        cleaned = cleaned - {""}
        object.__setattr__(self, "words", cleaned)

    def __contains__(self, word):
        return word in self.words

    def __len__(self):
        return len(self.words)

    @classmethod
    def empty(cls) -> "StopwordSet":
        return cls(frozenset(), source="empty")

    @classmethod
    def from_lines(cls, lines: Iterable[str], source: str = "custom") -> "StopwordSet":
        words = set()
        for line in lines:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            words.add(line)
        return cls(frozenset(words), source=source)

    @classmethod
    def from_file(cls, path) -> "StopwordSet":
        path = Path(path)
        with path.open(encoding="utf-8") as fh:
            return cls.from_lines(fh, source=str(path))

    @classmethod
    def default(cls) -> "StopwordSet":
        text = resources.files("plagvsm").joinpath("data/stopwords_en.txt").read_text(encoding="utf-8")
        return cls.from_lines(text.splitlines(), source=BUNDLED_SOURCE)


@dataclass(frozen=True)
class TokenStream:
    doc_id: str
    tokens: tuple[str, ...]

    def __len__(self):
        return len(self.tokens)


def tokenize(raw_text: str) -> list[str]:
    """Split text into case-folded alphanumeric tokens, in text order.

    >>> tokenize("C++ scored 95%!")
    ['c', 'scored', '95']
    """
    return _TOKEN_RE.findall(raw_text.casefold())


def remove_stopwords(tokens: Iterable[str], stops: StopwordSet) -> list[str]:
    words = stops.words
    return [t for t in tokens if t not in words]


def preprocess_text(raw_text: str, stops: StopwordSet) -> list[str]:
    return remove_stopwords(tokenize(raw_text), stops)


def preprocess_corpus(corpus: Corpus, stops: StopwordSet | None = None) -> list[TokenStream]:
    """One TokenStream per document, in corpus order.

    Documents that end up with no tokens are kept (and logged) so that pair
    indices stay aligned with the corpus.
    """
    if stops is None:
        stops = StopwordSet.default()
    streams = []
    for doc in corpus.documents:
        tokens = tuple(preprocess_text(doc.raw_text, stops))
        if not tokens:
            logger.warning("%s: no tokens left after preprocessing", doc.id)
        streams.append(TokenStream(doc.id, tokens))
    return streams
