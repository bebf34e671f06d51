import csv
import io
import json
from math import comb

import pytest

from oracles import half_up

from plagvsm.calibrate import COMPLETE, NONE
from plagvsm.corpus import Corpus
from plagvsm.ngrams import ConfigError, build_corpus_model
from plagvsm.pipeline import RunConfig, analyze_corpus, time_phase
from plagvsm.preprocess import TokenStream
from plagvsm.report import CSV_HEADER, build_rows, compare_methods, emit_report, render
from plagvsm.similarity import COSINE, JACCARD, pairwise_matrix

PETER = TokenStream("p", ("peter", "is", "quicker", "than", "kerry"))
KERRY = TokenStream("k", ("kerry", "is", "quicker", "than", "peter"))


def test_config_defaults_cover_paper_methods():
    cfg = RunConfig()
    assert cfg.configurations == [(1, COSINE), (2, COSINE), (3, COSINE), (3, JACCARD)]


def test_config_rejects_jaccard_without_trigram():
    with pytest.raises(ConfigError):
        RunConfig(ngram_orders=(1,), measures=(JACCARD,))
    cfg = RunConfig(ngram_orders=(1,), measures=(JACCARD,), jaccard_any_order=True)
    assert cfg.configurations == [(1, JACCARD)]


@pytest.mark.parametrize("kw", [dict(ngram_orders=()), dict(measures=()), dict(ngram_orders=(4,)),
                                dict(measures=("dice",)), dict(sd_flavor="x"),
                                dict(output_format="xml"), dict(log_base="2"),
                                dict(threshold=120.0)])
def test_config_validation(kw):
    with pytest.raises(ConfigError):
        RunConfig(**kw)


def test_two_docs_one_config_csv():
    corpus = Corpus.from_texts({"a": "one two three", "b": "four five six"})
    res = analyze_corpus(corpus, RunConfig(ngram_orders=(1,), measures=(COSINE,)))
    text = render(res, "csv")
    rows = list(csv.reader(io.StringIO(text)))
    assert tuple(rows[0]) == CSV_HEADER
    assert rows[1:] == [["a", "b", "1", "cosine", "0.0000", "none"]]
    assert res.exit_code == 0


def test_row_count_combinatorial(text_factory):
    texts = {f"s{i:02d}": text_factory(i, 60) for i in range(40)}
    res = analyze_corpus(Corpus.from_texts(texts),
                         RunConfig(ngram_orders=(1, 2, 3), measures=(COSINE,)))
    rows = build_rows(res)
    assert len(rows) == comb(40, 2) * 3 == 2340
    assert rows == sorted(rows, key=lambda r: r.sort_key)


def test_text_marks_complete_copy():
    text = "the same essay about rivers and banks and fish"
    res = analyze_corpus(Corpus.from_texts({"a": text, "b": text, "c": "other words entirely here"}),
                         RunConfig(ngram_orders=(3,), measures=(COSINE,), threshold=32))
    out = render(res, "text")
    line = next(l for l in out.splitlines() if l.strip().startswith("a") and "b" in l)
    assert line.rstrip().endswith("√√")


def test_json_structure_and_timing_flag():
    corpus = Corpus.from_texts({"a": "x y z w", "b": "x y z q", "c": "m n o p"})
    res = analyze_corpus(corpus, RunConfig())
    data = json.loads(render(res, "json"))
    assert set(data) == {"config", "documents", "thresholds", "calibration", "rows",
                         "per_document_max", "comparison"}
    assert "timings" not in data
    assert data["rows"][0]["similarity_pct_rounded"] == half_up(data["rows"][0]["similarity_pct"])
    timed = json.loads(render(res, "json", include_timings=True))
    assert len(timed["timings"]) == 4 * 3
    assert all(t["wall_time"] >= 0 for t in timed["timings"])


def test_render_formats_deterministic():
    corpus = Corpus.from_texts({"a": "p q r s t", "b": "p q r s u", "c": "v w x y z"})
    for fmt in ("csv", "json", "text"):
        a = render(analyze_corpus(corpus, RunConfig()), fmt)
        b = render(analyze_corpus(corpus, RunConfig()), fmt)
        assert a == b


def test_emit_to_file(tmp_path):
    corpus = Corpus.from_texts({"a": "p q", "b": "p r"})
    res = analyze_corpus(corpus, RunConfig(ngram_orders=(1,), measures=(COSINE,)))
    dest = tmp_path / "r.csv"
    text = emit_report(res, "csv", dest)
    assert dest.read_bytes().decode() == text


def test_time_phase():
    value, rec = time_phase(2, COSINE, "model", lambda: 41 + 1)
    assert value == 42 and rec.wall_time >= 0 and rec.phase == "model" and rec.n == 2


def test_compare_methods_identical_docs():
    s = ("alpha", "beta", "gamma", "delta", "eps")
    streams = [TokenStream(x, s) for x in "abc"]
    mats = [pairwise_matrix(build_corpus_model(streams, n), COSINE) for n in (1, 2, 3)]
    mats.append(pairwise_matrix(build_corpus_model(streams, 3), JACCARD))
    table = compare_methods(mats)
    assert [r["doc_id"] for r in table] == ["a", "b", "c"]
    for row in table:
        for label in ("unigram-cosine", "bigram-cosine", "trigram-cosine", "trigram-jaccard"):
            assert row[label] == pytest.approx(100, abs=1e-7)


def test_compare_methods_word_order():
    mats = [pairwise_matrix(build_corpus_model([KERRY, PETER], n), COSINE) for n in (1, 2, 3)]
    table = compare_methods(mats)
    for row in table:
        assert row["unigram-cosine"] == pytest.approx(100, abs=1e-7)
        assert row["bigram-cosine"] < 100 and row["trigram-cosine"] < 100


def test_compare_methods_errors():
    m1 = pairwise_matrix(build_corpus_model([PETER, KERRY], 1), COSINE)
    with pytest.raises(ValueError, match="2 configurations"):
        compare_methods([m1])
    other = pairwise_matrix(build_corpus_model([PETER, TokenStream("z", ("a",))], 1), COSINE)
    with pytest.raises(ValueError, match="different corpora"):
        compare_methods([m1, other])


def test_verdict_consistency():
    base = "rivers banks loans water money fish stream current account deposit flow"
    texts = {"a": base, "b": base, "c": base.replace("fish", "bird"), "d": "totally new words"}
    res = analyze_corpus(Corpus.from_texts(texts), RunConfig(threshold=30))
    for r in build_rows(res):
        if r.verdict == COMPLETE:
            assert r.similarity_pct_rounded >= res.config.complete_cutoff
        if r.verdict == NONE:
            assert r.similarity_pct < 30
