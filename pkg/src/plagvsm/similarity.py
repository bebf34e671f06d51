"""tf-idf weighting, cosine and Jaccard similarity, and pairwise matrices.

idf is the smoothed form ``1 + log(N / df)``: ubiquitous terms get weight 1
and rarer terms more. tf is the raw in-document count; cosine normalisation
takes care of document length.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from . import _backend
from .ngrams import ConfigError, CorpusModel, NGramBag

COSINE = "cosine"
JACCARD = "jaccard"
MEASURES = (COSINE, JACCARD)

EMPTY_FLAG = "undefined-empty-document"

_LOG_BASES = {"e": math.log, "natural": math.log, "10": math.log10, "base10": math.log10}


def _log_fn(log_base):
    try:
        return _LOG_BASES[str(log_base)]
    except KeyError:
        raise ConfigError(f"log base must be one of e|10, got {log_base!r}") from None


def idf(df_t: int, N: int, log_base: str = "e") -> float:
    """Inverse document frequency ``1 + log(N / df_t)``.

    Equals 1 exactly when the term occurs in every document.
    """
    if not 1 <= df_t <= N:
        raise ValueError(f"document frequency {df_t} outside [1, {N}]")
    return 1.0 + _log_fn(log_base)(N / df_t)


@dataclass(frozen=True)
class WeightVector:
    doc_id: str
    n: int
    weights: Mapping[str, float]

    def __len__(self):
        return len(self.weights)


def tfidf_vector(bag: NGramBag, model: CorpusModel, log_base: str = "e") -> WeightVector:
    weights = {}
    for term, tf in bag.counts.items():
        try:
            df_t = model.df[term]
        except KeyError:
            raise LookupError(f"term {term!r} of {bag.doc_id} is not in the corpus model") from None
        weights[term] = tf * idf(df_t, model.N, log_base)
    return WeightVector(bag.doc_id, bag.n, weights)


def cosine_similarity(u: WeightVector, v: WeightVector) -> float:
    """Cosine of the angle between two sparse weight vectors; 0.0 if either is empty."""
    if not u.weights or not v.weights:
        return 0.0
    small, large = (u.weights, v.weights) if len(u) <= len(v) else (v.weights, u.weights)
    dot = sum(w * large[t] for t, w in small.items() if t in large)
    nu = math.sqrt(sum(w * w for w in u.weights.values()))
    nv = math.sqrt(sum(w * w for w in v.weights.values()))
    return dot / (nu * nv)


def jaccard_similarity(s: frozenset | set, t: frozenset | set) -> float:
    """``|s & t| / |s | t|``; 0.0 when both sets are empty."""
    union = len(s | t)
    if union == 0:
        return 0.0
    return len(s & t) / union


@dataclass(frozen=True)
class SimilarityMatrix:
    """Symmetric pairwise scores in [0, 1] for one (n, measure) configuration.

    The diagonal is unused and holds 0. ``flags`` maps an ``(i, j)`` pair with
    ``i < j`` to a tuple of flag strings.
    """

    n: int
    measure: str
    doc_ids: tuple[str, ...]
    scores: np.ndarray = field(repr=False)
    flags: Mapping[tuple[int, int], tuple[str, ...]] = field(default_factory=dict)

    @property
    def label(self) -> str:
        return config_label(self.n, self.measure)

    @property
    def size(self) -> int:
        return len(self.doc_ids)

    def percent(self) -> np.ndarray:
        return self.scores * 100.0

    def score(self, a: str, b: str) -> float:
        i, j = self.doc_ids.index(a), self.doc_ids.index(b)
        return float(self.scores[i, j])

    def pairs(self):
        """Yield ``(i, j, score)`` for every unordered pair ``i < j``."""
        n = self.size
        for i in range(n):
            for j in range(i + 1, n):
                yield i, j, float(self.scores[i, j])


ORDER_NAMES = {1: "unigram", 2: "bigram", 3: "trigram"}


def config_label(n: int, measure: str) -> str:
    return f"{ORDER_NAMES.get(n, f'{n}-gram')}-{measure}"


def _csr(rows: Sequence[np.ndarray], values: Sequence[np.ndarray] | None = None):
    indptr = np.zeros(len(rows) + 1, dtype=np.int64)
    indptr[1:] = np.cumsum([len(r) for r in rows])
    indices = np.concatenate(rows).astype(np.int32) if rows else np.zeros(0, np.int32)
    if values is None:
        return indptr, np.ascontiguousarray(indices)
    data = np.concatenate(values).astype(np.float64) if values else np.zeros(0)
    return indptr, np.ascontiguousarray(indices), np.ascontiguousarray(data)


def _empty_flags(sizes: Sequence[int], both: bool):
    flags = {}
    n = len(sizes)
    for i in range(n):
        for j in range(i + 1, n):
            empty = (sizes[i] == 0 and sizes[j] == 0) if both else (sizes[i] == 0 or sizes[j] == 0)
            if empty:
                flags[(i, j)] = (EMPTY_FLAG,)
    return flags


def cosine_matrix(model: CorpusModel, log_base: str = "e", kernels=None) -> SimilarityMatrix:
    kernels = kernels or _backend.kernels
    rows, vals = [], []
    for bag in model.bags:
        vec = tfidf_vector(bag, model, log_base)
        ids = np.fromiter((model.term_ids[t] for t in vec.weights), dtype=np.int32, count=len(vec))
        w = np.fromiter(vec.weights.values(), dtype=np.float64, count=len(vec))
        order = np.argsort(ids, kind="stable")
        rows.append(ids[order])
        vals.append(w[order])
    scores = kernels.cosine_matrix(*_csr(rows, vals))
    return SimilarityMatrix(
        model.n, COSINE, tuple(model.doc_ids), scores,
        _empty_flags([len(r) for r in rows], both=False),
    )


def jaccard_matrix(model: CorpusModel, kernels=None) -> SimilarityMatrix:
    """Set Jaccard over each document's distinct n-grams (trigrams for n=3)."""
    kernels = kernels or _backend.kernels
    rows = [model.encode(bag.counts.keys()) for bag in model.bags]
    scores = kernels.jaccard_matrix(*_csr(rows))
    return SimilarityMatrix(
        model.n, JACCARD, tuple(model.doc_ids), scores,
        _empty_flags([len(r) for r in rows], both=True),
    )


def jaccard_matrix_from_sets(doc_ids: Sequence[str], sets: Sequence[frozenset], n: int = 3,
                             kernels=None) -> SimilarityMatrix:
    """Jaccard matrix straight from precomputed n-gram sets (e.g. ``trigram_set`` output)."""
    kernels = kernels or _backend.kernels
    vocab = {t: i for i, t in enumerate(sorted(set().union(*sets)))}
    rows = [np.sort(np.fromiter((vocab[t] for t in s), dtype=np.int32, count=len(s))) for s in sets]
    scores = kernels.jaccard_matrix(*_csr(rows))
    return SimilarityMatrix(n, JACCARD, tuple(doc_ids), scores,
                            _empty_flags([len(r) for r in rows], both=True))


def pairwise_matrix(model: CorpusModel, measure: str = COSINE, log_base: str = "e",
                    kernels=None) -> SimilarityMatrix:
    if model.N < 2:
        raise ValueError("pairwise comparison needs at least 2 documents")
    if measure == COSINE:
        return cosine_matrix(model, log_base, kernels)
    if measure == JACCARD:
        return jaccard_matrix(model, kernels)
    raise ConfigError(f"unknown measure {measure!r}; expected one of {MEASURES}")
