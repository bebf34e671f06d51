"""End-to-end analysis: ingest, preprocess, model, similarity, calibration, verdicts."""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, TypeVar

from .calibrate import (
    DEFAULT_COMPLETE_CUTOFF,
    NONE,
    POPULATION,
    SD_FLAVORS,
    CalibrationResult,
    calibrate_matrix,
    classify_pair,
    load_calibrations,
    max_per_document,
)
from .corpus import Corpus, scan_directory
from .ngrams import VALID_ORDERS, ConfigError, build_corpus_model
from .preprocess import StopwordSet, preprocess_corpus
from .similarity import COSINE, JACCARD, MEASURES, SimilarityMatrix, config_label, pairwise_matrix

logger = logging.getLogger(__name__)

T = TypeVar("T")

PHASES = ("preprocess", "model", "pairwise")
FORMATS = ("csv", "json", "text")

# Fallback thresholds (percent, keyed by n-gram order) when neither an explicit
# threshold nor a calibration is supplied. Jaccard uses the trigram value.
DEFAULT_THRESHOLDS = {1: 77.0, 2: 35.0, 3: 32.0}


@dataclass(frozen=True)
class TimingRecord:
    n: int
    measure: str
    phase: str
    wall_time: float


def time_phase(n: int, measure: str, phase: str, work: Callable[[], T]) -> tuple[T, TimingRecord]:
    start = time.perf_counter()
    result = work()
    elapsed = max(0.0, time.perf_counter() - start)
    return result, TimingRecord(n, measure, phase, elapsed)


@dataclass(frozen=True)
class RunConfig:
    corpus_dir: Path | None = None
    calibration_dir: Path | None = None
    ngram_orders: tuple[int, ...] = (1, 2, 3)
    measures: tuple[str, ...] = (COSINE, JACCARD)
    stopword_file: Path | None = None
    sd_flavor: str = POPULATION
    complete_cutoff: float = DEFAULT_COMPLETE_CUTOFF
    log_base: str = "e"
    output_format: str = "csv"
    output_path: Path | None = None
    recursive: bool = False
    timing: bool = False
    threshold: float | None = None
    jaccard_any_order: bool = False
    glob: str = "*.txt"

    def __post_init__(self):
        if not self.ngram_orders:
            raise ConfigError("at least one n-gram order is required")
        if not self.measures:
            raise ConfigError("at least one measure is required")
        bad = [n for n in self.ngram_orders if n not in VALID_ORDERS]
        if bad:
            raise ConfigError(f"n-gram orders must be in {VALID_ORDERS}, got {bad}")
        bad = [m for m in self.measures if m not in MEASURES]
        if bad:
            raise ConfigError(f"unknown measure(s) {bad}; expected {MEASURES}")
        if self.sd_flavor not in SD_FLAVORS:
            raise ConfigError(f"sd flavor must be one of {SD_FLAVORS}")
        if self.output_format not in FORMATS:
            raise ConfigError(f"output format must be one of {FORMATS}")
        if self.log_base not in ("e", "10"):
            raise ConfigError("log base must be 'e' or '10'")
        if not 0.0 < self.complete_cutoff <= 100.0:
            raise ConfigError("complete cutoff must be in (0, 100]")
        if self.threshold is not None and not 0.0 <= self.threshold <= self.complete_cutoff:
            raise ConfigError(f"threshold must be in [0, {self.complete_cutoff}]")
        if (JACCARD in self.measures and 3 not in self.ngram_orders
                and not self.jaccard_any_order):
            raise ConfigError("jaccard is defined over trigrams; include n=3 or pass the "
                              "jaccard-any-order override")
        object.__setattr__(self, "ngram_orders", tuple(sorted(set(self.ngram_orders))))
        object.__setattr__(self, "measures", tuple(m for m in MEASURES if m in self.measures))

    @property
    def configurations(self) -> list[tuple[int, str]]:
        """(n, measure) pairs to run: cosine at every order, Jaccard at n=3 only
        unless overridden."""
        out = []
        for n in self.ngram_orders:
            for m in self.measures:
                if m == JACCARD and n != 3 and not self.jaccard_any_order:
                    continue
                out.append((n, m))
        return out

    def echo(self) -> dict:
        def p(x):
            return None if x is None else str(x)
        return {
            "corpus_dir": p(self.corpus_dir),
            "calibration": p(self.calibration_dir),
            "ngram_orders": list(self.ngram_orders),
            "measures": list(self.measures),
            "stopword_file": p(self.stopword_file),
            "sd_flavor": self.sd_flavor,
            "complete_cutoff": self.complete_cutoff,
            "log_base": self.log_base,
            "threshold": self.threshold,
            "jaccard_any_order": self.jaccard_any_order,
            "recursive": self.recursive,
            "glob": self.glob,
        }


@dataclass(frozen=True)
class Threshold:
    pct: float
    source: str  # manual | calibration | default
    calibration: CalibrationResult | None = None


@dataclass(frozen=True)
class PairVerdict:
    doc_a: str
    doc_b: str
    pct: float
    verdict: str


@dataclass
class AnalysisResult:
    config: RunConfig
    doc_ids: tuple[str, ...]
    matrices: dict[tuple[int, str], SimilarityMatrix]
    thresholds: dict[tuple[int, str], Threshold]
    verdicts: dict[tuple[int, str], list[PairVerdict]]
    timings: list[TimingRecord] = field(default_factory=list)

    @property
    def flagged(self) -> bool:
        return any(v.verdict != NONE for vs in self.verdicts.values() for v in vs)

    @property
    def exit_code(self) -> int:
        return 1 if self.flagged else 0

    def maxima(self) -> dict[tuple[int, str], dict[str, tuple[float, str]]]:
        return {key: max_per_document(m) for key, m in self.matrices.items()}


def load_stopwords(config: RunConfig) -> StopwordSet:
    if config.stopword_file is None:
        return StopwordSet.default()
    return StopwordSet.from_file(config.stopword_file)


def compute_matrix(corpus: Corpus, stops: StopwordSet, n: int, measure: str,
                   log_base: str = "e") -> tuple[SimilarityMatrix, list[TimingRecord]]:
    """Run one (n, measure) configuration from raw documents to a similarity matrix."""
    streams, t_pre = time_phase(n, measure, "preprocess", lambda: preprocess_corpus(corpus, stops))
    model, t_model = time_phase(n, measure, "model", lambda: build_corpus_model(streams, n))
    matrix, t_pair = time_phase(n, measure, "pairwise",
                                lambda: pairwise_matrix(model, measure, log_base))
    return matrix, [t_pre, t_model, t_pair]


def calibrate_corpus(corpus: Corpus, config: RunConfig,
                     stops: StopwordSet | None = None) -> list[CalibrationResult]:
    if stops is None:
        stops = load_stopwords(config)
    results = []
    for n, measure in config.configurations:
        matrix, _ = compute_matrix(corpus, stops, n, measure, config.log_base)
        results.append(calibrate_matrix(matrix, config.sd_flavor))
    return results


def _resolve_thresholds(config: RunConfig, stops: StopwordSet) -> dict[tuple[int, str], Threshold]:
    keys = config.configurations
    if config.threshold is not None:
        return {k: Threshold(config.threshold, "manual") for k in keys}
    if config.calibration_dir is not None:
        src = Path(config.calibration_dir)
        if src.is_file():
            results = load_calibrations(src)
        else:
            cal_corpus = scan_directory(src, config.glob, config.recursive)
            results = calibrate_corpus(cal_corpus, config, stops)
        by_key = {(r.n, r.measure): r for r in results}
        missing = [config_label(*k) for k in keys if k not in by_key]
        if missing:
            raise ConfigError(f"calibration has no entry for {', '.join(missing)}")
        return {k: Threshold(by_key[k].threshold_pct, "calibration", by_key[k]) for k in keys}
    return {k: Threshold(DEFAULT_THRESHOLDS[k[0]] if k[0] in DEFAULT_THRESHOLDS
                         else DEFAULT_THRESHOLDS[3], "default") for k in keys}


def analyze_corpus(corpus: Corpus, config: RunConfig) -> AnalysisResult:
    """Run every configured (n, measure) over an already-loaded corpus."""
    if corpus.N < 2:
        raise ConfigError("need at least 2 documents")
    stops = load_stopwords(config)
    thresholds = _resolve_thresholds(config, stops)
    matrices, verdicts, timings = {}, {}, []
    for key in config.configurations:
        n, measure = key
        matrix, records = compute_matrix(corpus, stops, n, measure, config.log_base)
        matrices[key] = matrix
        timings.extend(records)
        th = thresholds[key].pct
        verdicts[key] = [
            PairVerdict(matrix.doc_ids[i], matrix.doc_ids[j], s * 100.0,
                        classify_pair(s * 100.0, th, config.complete_cutoff))
            for i, j, s in matrix.pairs()
        ]
        logger.info("%s: %d pairs, threshold %.2f%% (%s)", matrix.label,
                    len(verdicts[key]), th, thresholds[key].source)
    return AnalysisResult(config, tuple(corpus.ids), matrices, thresholds, verdicts, timings)


def run_analysis(config: RunConfig) -> AnalysisResult:
    if config.corpus_dir is None:
        raise ConfigError("no corpus directory given")
    corpus = scan_directory(config.corpus_dir, config.glob, config.recursive)
    return analyze_corpus(corpus, config)

