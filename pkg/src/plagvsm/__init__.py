"""Intra-corpus plagiarism detection for text assignments.

Documents are compared with tf-idf weighted n-gram vectors (unigram, bigram,
trigram) under cosine similarity, and with trigram sets under Jaccard
similarity. Thresholds are calibrated as ``max + 4 * SD`` of the pairwise
scores among known-original documents.
"""

from ._backend import BACKEND
from .calibrate import (
    COMPLETE,
    NONE,
    PARTIAL,
    CalibrationResult,
    classify_pair,
    compute_threshold,
    max_per_document,
    round_half_up,
)
from .corpus import Corpus, CorpusError, Document, load_document, scan_directory
from .ngrams import (
    ConfigError,
    CorpusModel,
    NGramBag,
    build_corpus_model,
    extract_ngrams,
    ngram_set,
    trigram_set,
)
from .pipeline import AnalysisResult, RunConfig, TimingRecord, analyze_corpus, run_analysis, time_phase
from .preprocess import StopwordSet, TokenStream, preprocess_corpus, remove_stopwords, tokenize
from .report import ReportRow, build_rows, compare_methods, emit_report
from .similarity import (
    COSINE,
    JACCARD,
    SimilarityMatrix,
    WeightVector,
    cosine_similarity,
    idf,
    jaccard_similarity,
    pairwise_matrix,
    tfidf_vector,
)

__version__ = "0.1.0"
