import io
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import sliding_windows, window_counts
from plagvsm.ngrams import (
    SEP,
    ConfigError,
    build_corpus_model,
    extract_ngrams,
    ngram_set,
    trigram_set,
)
from plagvsm.preprocess import TokenStream

PETER = TokenStream("p", ("peter", "is", "quicker", "than", "kerry"))
KERRY = TokenStream("k", ("kerry", "is", "quicker", "than", "peter"))

tokens = st.lists(st.sampled_from("abcde"), max_size=30)


def g(*parts):
    return SEP.join(parts)


def test_bigrams_of_sentence():
    bag = extract_ngrams(PETER, 2)
    assert bag.counts == {g("peter", "is"): 1, g("is", "quicker"): 1,
                          g("quicker", "than"): 1, g("than", "kerry"): 1}


def test_short_stream_gives_empty_bag():
    assert extract_ngrams(TokenStream("d", ("a",)), 3).counts == {}


def test_repeated_bigrams():
    stream = TokenStream("d", ("a", "b", "a", "b"))
    assert sliding_windows(stream.tokens, 2) == [("a", "b"), ("b", "a"), ("a", "b")]
    assert extract_ngrams(stream, 2).counts == {g("a", "b"): 2, g("b", "a"): 1}


@pytest.mark.parametrize("n", [0, 4, -1])
def test_bad_order(n):
    with pytest.raises(ConfigError):
        extract_ngrams(PETER, n)


@given(tokens, st.sampled_from([1, 2, 3]))
def test_bag_matches_window_oracle(toks, n):
    bag = extract_ngrams(TokenStream("d", tuple(toks)), n)
    expected = {SEP.join(k): v for k, v in window_counts(toks, n).items()}
    assert bag.counts == expected
    assert bag.mass == max(0, len(toks) - n + 1)
    assert all(c >= 1 for c in bag.counts.values())


@given(tokens, st.randoms(use_true_random=False))
def test_unigram_bag_permutation_invariant(toks, rnd):
    shuffled = list(toks)
    rnd.shuffle(shuffled)
    a = extract_ngrams(TokenStream("a", tuple(toks)), 1)
    b = extract_ngrams(TokenStream("b", tuple(shuffled)), 1)
    assert a.counts == b.counts


def test_word_order_changes_higher_order_bags():
    assert extract_ngrams(PETER, 1).counts == extract_ngrams(KERRY, 1).counts
    assert extract_ngrams(PETER, 2).counts != extract_ngrams(KERRY, 2).counts
    assert extract_ngrams(PETER, 3).counts != extract_ngrams(KERRY, 3).counts


def test_trigram_set_sentence():
    assert trigram_set(PETER) == {g("peter", "is", "quicker"), g("is", "quicker", "than"),
                                  g("quicker", "than", "kerry")}


def test_trigram_set_short():
    assert trigram_set(TokenStream("d", ("x", "y"))) == frozenset()


def test_trigram_set_collapses_duplicates():
    toks = ("a", "b", "c", "a", "b", "c")
    windows = sliding_windows(toks, 3)
    assert len(windows) == 4
    assert trigram_set(TokenStream("d", toks)) == {SEP.join(w) for w in set(windows)}
    assert len(trigram_set(TokenStream("d", toks))) == 3


def test_ngram_set_general_order():
    assert ngram_set(PETER, 1) == set(PETER.tokens)


def test_build_model_df():
    streams = [TokenStream("1", ("a", "b")), TokenStream("2", ("a", "c"))]
    model = build_corpus_model(streams, 1)
    assert model.N == 2
    assert model.df == {"a": 2, "b": 1, "c": 1}
    assert model.doc_ids == ["1", "2"]


def test_identical_docs_df_equals_n():
    s = ("x", "y", "z", "x", "w")
    for n in (1, 2, 3):
        model = build_corpus_model([TokenStream("a", s), TokenStream("b", s)], n)
        assert set(model.df.values()) == {2}


def test_disjoint_docs_df_one():
    model = build_corpus_model([TokenStream("a", ("p", "q")), TokenStream("b", ("r", "s"))], 1)
    assert set(model.df.values()) == {1}


def test_model_needs_two_streams():
    with pytest.raises(ValueError):
        build_corpus_model([PETER], 1)


@given(st.lists(tokens, min_size=2, max_size=6), st.sampled_from([1, 2, 3]))
def test_df_recount(docs, n):
    streams = [TokenStream(str(i), tuple(d)) for i, d in enumerate(docs)]
    model = build_corpus_model(streams, n)
    recount = {}
    for d in docs:
        for w in set(sliding_windows(d, n)):
            key = SEP.join(w)
            recount[key] = recount.get(key, 0) + 1
    assert model.df == recount
    assert all(1 <= v <= model.N for v in model.df.values())
    assert list(model.vocabulary) == sorted(recount)


def test_df_independent_of_document_order():
    rng = random.Random(3)
    docs = [tuple(rng.choice("abcdef") for _ in range(20)) for _ in range(5)]
    streams = [TokenStream(str(i), d) for i, d in enumerate(docs)]
    a = build_corpus_model(streams, 2)
    b = build_corpus_model(list(reversed(streams)), 2)
    assert a.df == b.df


def test_vocabulary_csv_dump():
    model = build_corpus_model([TokenStream("a", ("x", "y")), TokenStream("b", ("x",))], 1)
    buf = io.StringIO()
    model.write_vocabulary_csv(buf)
    assert buf.getvalue() == "term,df\nx,2\ny,1\n"
