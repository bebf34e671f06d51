"""Report rows, method comparison tables and CSV / JSON / text serialisation."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass
from typing import Sequence

from .calibrate import COMPLETE, PARTIAL, max_per_document, round_half_up
from .pipeline import AnalysisResult, TimingRecord
from .similarity import SimilarityMatrix, config_label

CSV_HEADER = ("doc_a", "doc_b", "n", "measure", "similarity_pct", "verdict")
MARKERS = {COMPLETE: "√√", PARTIAL: "√"}


@dataclass(frozen=True)
class ReportRow:
    doc_a: str
    doc_b: str
    n: int
    measure: str
    similarity_pct: float
    similarity_pct_rounded: int
    verdict: str
    flags: tuple[str, ...] = ()

    @property
    def sort_key(self):
        return (self.doc_a, self.doc_b, self.n, self.measure)


def build_rows(result: AnalysisResult) -> list[ReportRow]:
    rows = []
    for key, verdicts in result.verdicts.items():
        matrix = result.matrices[key]
        index = {d: i for i, d in enumerate(matrix.doc_ids)}
        for v in verdicts:
            i, j = index[v.doc_a], index[v.doc_b]
            rows.append(ReportRow(
                doc_a=v.doc_a, doc_b=v.doc_b, n=key[0], measure=key[1],
                similarity_pct=v.pct,
                similarity_pct_rounded=round_half_up(v.pct),
                verdict=v.verdict,
                flags=tuple(matrix.flags.get((min(i, j), max(i, j)), ())),
            ))
    rows.sort(key=lambda r: r.sort_key)
    return rows


def compare_methods(matrices: Sequence[SimilarityMatrix]) -> list[dict]:
    """Side-by-side per-document maximum percentage for each configuration.

    One row per document: ``{"doc_id": ..., "<label>": max_pct, ...}``. These
    are the series behind an n-gram order comparison or a cosine-vs-Jaccard
    comparison.
    """
    if len(matrices) < 2:
        raise ValueError("need ≥ 2 configurations to compare")
    ids = matrices[0].doc_ids
    for m in matrices[1:]:
        if m.doc_ids != ids:
            raise ValueError(f"configurations cover different corpora ({m.label})")
    maxima = [(m.label, max_per_document(m)) for m in matrices]
    table = []
    for doc in ids:
        row = {"doc_id": doc}
        for label, mx in maxima:
            row[label] = mx[doc][0]
        table.append(row)
    return table


def _csv(rows: Sequence[ReportRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(CSV_HEADER)
    for r in rows:
        writer.writerow([r.doc_a, r.doc_b, r.n, r.measure, f"{r.similarity_pct:.4f}", r.verdict])
    return buf.getvalue()


def _json(result: AnalysisResult, rows: Sequence[ReportRow], timings) -> str:
    thresholds = {}
    calibrations = []
    for key, th in result.thresholds.items():
        thresholds[config_label(*key)] = {
            "threshold_pct": th.pct,
            "threshold_rounded": round_half_up(th.pct),
            "source": th.source,
        }
        if th.calibration is not None:
            calibrations.append(th.calibration.to_dict())
    maxima = {
        config_label(*key): {doc: {"max_pct": pct, "partner": partner}
                             for doc, (pct, partner) in mx.items()}
        for key, mx in result.maxima().items()
    }
    payload = {
        "config": result.config.echo(),
        "documents": list(result.doc_ids),
        "thresholds": thresholds,
        "calibration": calibrations or None,
        "rows": [{**asdict(r), "flags": list(r.flags)} for r in rows],
        "per_document_max": maxima,
    }
    if len(result.matrices) >= 2:
        payload["comparison"] = compare_methods(list(result.matrices.values()))
    if timings is not None:
        payload["timings"] = [asdict(t) for t in timings]
    return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _text(result: AnalysisResult, rows: Sequence[ReportRow], timings) -> str:
    out = []
    keys = list(result.matrices)
    labels = [config_label(*k) for k in keys]
    out.append("Thresholds")
    for key, label in zip(keys, labels):
        th = result.thresholds[key]
        out.append(f"  {label:<18} {th.pct:7.2f}%  ({th.source})")
    out.append("")

    out.append("Pairs")
    width = max([len(r.doc_a) for r in rows] + [len(r.doc_b) for r in rows] + [5])
    out.append(f"  {'doc_a':<{width}}  {'doc_b':<{width}}  {'method':<18} {'pct':>8}  mark")
    for r in rows:
        mark = MARKERS.get(r.verdict, "")
        label = config_label(r.n, r.measure)
        out.append(f"  {r.doc_a:<{width}}  {r.doc_b:<{width}}  {label:<18} "
                   f"{r.similarity_pct:8.2f}  {mark}".rstrip())
    out.append("")

    # per-document view: strongest verdict among each document's pairs
    out.append("Per-document maximum")
    worst = {(d, k): "" for d in result.doc_ids for k in keys}
    rank = {"": 0, MARKERS[PARTIAL]: 1, MARKERS[COMPLETE]: 2}
    for r in rows:
        mark = MARKERS.get(r.verdict, "")
        for d in (r.doc_a, r.doc_b):
            k = (d, (r.n, r.measure))
            if rank[mark] > rank[worst[k]]:
                worst[k] = mark
    maxima = result.maxima()
    dw = max(len(d) for d in result.doc_ids)
    col = max(len(lb) for lb in labels) + 2
    out.append(f"  {'doc':<{dw}}  " + "".join(f"{lb:>{col}}" for lb in labels))
    for d in result.doc_ids:
        cells = []
        for k in keys:
            pct = maxima[k][d][0]
            cell = f"{round_half_up(pct)} {worst[(d, k)]}".rstrip()
            cells.append(f"{cell:>{col}}")
        out.append(f"  {d:<{dw}}  " + "".join(cells))
    out.append("")
    out.append("√√ complete copying   √ partial copying")

    if timings is not None:
        out.append("")
        out.append("Timings (s)")
        for t in timings:
            out.append(f"  {config_label(t.n, t.measure):<18} {t.phase:<10} {t.wall_time:.4f}")
    return "\n".join(out) + "\n"


def render(result: AnalysisResult, fmt: str = "csv", include_timings: bool | None = None) -> str:
    """Serialise ``result``. Timings are included only when requested (CSV never has them)."""
    if include_timings is None:
        include_timings = result.config.timing
    rows = build_rows(result)
    if not rows:
        raise ValueError("nothing to report")
    timings: list[TimingRecord] | None = result.timings if include_timings else None
    if fmt == "csv":
        return _csv(rows)
    if fmt == "json":
        return _json(result, rows, timings)
    if fmt == "text":
        return _text(result, rows, timings)
    raise ValueError(f"unknown format {fmt!r}")


def emit_report(result: AnalysisResult, fmt: str = "csv", destination=None,
                include_timings: bool | None = None) -> str:
    text = render(result, fmt, include_timings)
    if destination is None:
        return text
    if hasattr(destination, "write"):
        destination.write(text)
    else:
        with open(destination, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return text
