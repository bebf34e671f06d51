"""Threshold calibration on known-original documents and pair classification."""

from __future__ import annotations

import json
import math
import statistics
from dataclasses import asdict, dataclass
from decimal import ROUND_HALF_UP, Decimal
from pathlib import Path
from typing import Sequence

from .ngrams import ConfigError
from .similarity import SimilarityMatrix

NONE = "none"
PARTIAL = "partial"
COMPLETE = "complete"
VERDICTS = (NONE, PARTIAL, COMPLETE)

POPULATION = "population"
SAMPLE = "sample"
SD_FLAVORS = (POPULATION, SAMPLE)

DEFAULT_COMPLETE_CUTOFF = 99.5
SD_MULTIPLIER = 4


class CalibrationError(ValueError):
    pass


def round_half_up(x: float) -> int:
    """Round to the nearest integer, halves away from zero (34.5 -> 35)."""
    return int(Decimal(repr(x)).quantize(Decimal(1), rounding=ROUND_HALF_UP))


@dataclass(frozen=True)
class CalibrationResult:
    n: int | None
    measure: str | None
    max_pct: float
    sd_pct: float
    threshold_pct: float
    sd_flavor: str
    pair_count: int

    @property
    def threshold_rounded(self) -> int:
        return round_half_up(self.threshold_pct)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["threshold_rounded"] = self.threshold_rounded
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "CalibrationResult":
        fields = ("n", "measure", "max_pct", "sd_pct", "threshold_pct", "sd_flavor", "pair_count")
        return cls(**{k: d[k] for k in fields})


def compute_threshold(calibration_pcts: Sequence[float], sd_flavor: str = POPULATION,
                      n: int | None = None, measure: str | None = None) -> CalibrationResult:
    """Threshold = max + 4 * SD over pairwise percentages of known-original documents.

    ``sd_flavor`` picks the population (divide by k) or sample (k - 1) standard
    deviation.
    """
    values = [float(v) for v in calibration_pcts]
    if len(values) < 3:
        raise CalibrationError(
            f"calibration corpus too small: need at least 3 pairwise values, got {len(values)}")
    if sd_flavor == POPULATION:
        sd = statistics.pstdev(values)
    elif sd_flavor == SAMPLE:
        sd = statistics.stdev(values)
    else:
        raise ConfigError(f"sd flavor must be one of {SD_FLAVORS}, got {sd_flavor!r}")
    top = max(values)
    return CalibrationResult(
        n=n, measure=measure, max_pct=top, sd_pct=sd,
        threshold_pct=top + SD_MULTIPLIER * sd, sd_flavor=sd_flavor, pair_count=len(values),
    )


def calibrate_matrix(matrix: SimilarityMatrix, sd_flavor: str = POPULATION) -> CalibrationResult:
    if matrix.size < 3:
        raise CalibrationError(
            f"calibration corpus too small: need at least 3 documents, got {matrix.size}")
    pcts = [s * 100.0 for _, _, s in matrix.pairs()]
    return compute_threshold(pcts, sd_flavor, n=matrix.n, measure=matrix.measure)


def classify_pair(pct: float, threshold_pct: float,
                  complete_cutoff: float = DEFAULT_COMPLETE_CUTOFF) -> str:
    if threshold_pct > complete_cutoff:
        raise ConfigError(
            f"threshold {threshold_pct:.4f}% exceeds complete-copy cutoff {complete_cutoff}%")
    if not (0.0 <= pct <= 100.0 + 1e-9) or math.isnan(pct):
        raise ValueError(f"similarity percentage out of range: {pct}")
    if pct >= complete_cutoff:
        return COMPLETE
    if pct >= threshold_pct:
        return PARTIAL
    return NONE


def max_per_document(matrix: SimilarityMatrix) -> dict[str, tuple[float, str]]:
    """Each document's highest-scoring partner, as ``{doc_id: (max_pct, partner_id)}``.

    Ties go to the lexicographically smallest partner id.
    """
    ids = matrix.doc_ids
    out = {}
    for i, doc in enumerate(ids):
        best = None
        for j, other in enumerate(ids):
            if i == j:
                continue
            s = float(matrix.scores[i, j])
            if best is None or s > best[0] or (s == best[0] and other < best[1]):
                best = (s, other)
        out[doc] = (best[0] * 100.0, best[1])
    return out


def save_calibrations(results: Sequence[CalibrationResult], path) -> None:
    Path(path).write_text(dump_calibrations(results), encoding="utf-8")


def dump_calibrations(results: Sequence[CalibrationResult]) -> str:
    payload = {"calibrations": [r.to_dict() for r in results]}
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def load_calibrations(path) -> list[CalibrationResult]:
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    if isinstance(data, dict) and "calibrations" in data:
        data = data["calibrations"]
    elif isinstance(data, dict):
        data = [data]
    return [CalibrationResult.from_dict(d) for d in data]
