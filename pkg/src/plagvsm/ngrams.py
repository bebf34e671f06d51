"""N-gram bags, corpus document frequencies and n-gram sets.

N-grams are plain sliding windows over the post-stopword token stream: no
padding, no crossing of document boundaries. Each gram is stored as a flat
string with its tokens joined by ``SEP``; tokens are alphanumeric runs, so a
space can never occur inside one.
"""

from __future__ import annotations

import csv
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .preprocess import TokenStream

SEP = " "
VALID_ORDERS = (1, 2, 3)


class ConfigError(ValueError):
    """Invalid analysis configuration (bad n-gram order, measure, cutoffs...)."""


def _check_order(n):
    if n not in VALID_ORDERS:
        raise ConfigError(f"n-gram order must be one of {VALID_ORDERS}, got {n!r}")


def windows(tokens: Sequence[str], n: int) -> list[str]:
    return [SEP.join(tokens[i:i + n]) for i in range(len(tokens) - n + 1)]


@dataclass(frozen=True)
class NGramBag:
    doc_id: str
    n: int
    counts: Mapping[str, int]

    @property
    def mass(self) -> int:
        return sum(self.counts.values())

    def __len__(self):
        return len(self.counts)


def extract_ngrams(stream: TokenStream, n: int) -> NGramBag:
    _check_order(n)
    return NGramBag(stream.doc_id, n, dict(Counter(windows(stream.tokens, n))))


def ngram_set(stream: TokenStream, n: int = 3) -> frozenset[str]:
    _check_order(n)
    return frozenset(windows(stream.tokens, n))


def trigram_set(stream: TokenStream) -> frozenset[str]:
    """Distinct contiguous 3-token windows of ``stream`` (empty if fewer than 3 tokens)."""
    return ngram_set(stream, 3)


@dataclass(frozen=True)
class CorpusModel:
    n: int
    N: int
    df: Mapping[str, int]
    bags: tuple[NGramBag, ...]
    vocabulary: tuple[str, ...] = field(repr=False)
    term_ids: Mapping[str, int] = field(repr=False)

    @property
    def doc_ids(self) -> list[str]:
        return [b.doc_id for b in self.bags]

    def encode(self, terms: Iterable[str]) -> np.ndarray:
        """Sorted int32 term ids for ``terms``."""
        ids = np.fromiter((self.term_ids[t] for t in terms), dtype=np.int32)
        ids.sort()
        return ids

    def write_vocabulary_csv(self, fh) -> None:
        """Debug dump of ``term,df`` rows in vocabulary order."""
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["term", "df"])
        for term in self.vocabulary:
            writer.writerow([term, self.df[term]])


def build_corpus_model(streams: Sequence[TokenStream], n: int) -> CorpusModel:
    _check_order(n)
    if len(streams) < 2:
        raise ValueError(f"need at least 2 documents to build a model, got {len(streams)}")
    bags = tuple(extract_ngrams(s, n) for s in streams)
    df: Counter[str] = Counter()
    for bag in bags:
        df.update(bag.counts.keys())
    vocabulary = tuple(sorted(df))
    return CorpusModel(
        n=n,
        N=len(bags),
        df=dict(df),
        bags=bags,
        vocabulary=vocabulary,
        term_ids={t: i for i, t in enumerate(vocabulary)},
    )
