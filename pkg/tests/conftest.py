import random

import pytest

from plagvsm._backend import available_backends
from plagvsm.corpus import Corpus
from plagvsm.preprocess import StopwordSet

ACCEPTANCE_LINES = []

WORDS = ("river bank loan water money fish stream current account deposit flow interest "
         "algorithm data structure memory pointer network signal process thread queue stack "
         "heap tree graph node edge weight vertex matrix vector entropy").split()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def record_criterion():
    def record(name, ok, detail=""):
        ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'}  {name}" + (f"  ({detail})" if detail else ""))
        return ok
    return record


@pytest.fixture(params=sorted(available_backends()))
def kernels(request):
    return available_backends()[request.param]


@pytest.fixture
def no_stops():
    return StopwordSet.empty()


def synthetic_text(rng, length, vocab=WORDS):
    return " ".join(rng.choice(vocab) for _ in range(length))


@pytest.fixture
def text_factory():
    def make(seed, length, vocab=WORDS):
        return synthetic_text(random.Random(seed), length, vocab)
    return make


@pytest.fixture
def write_corpus(tmp_path):
    def write(texts, subdir="corpus"):
        root = tmp_path / subdir
        root.mkdir(parents=True, exist_ok=True)
        for name, text in texts.items():
            (root / f"{name}.txt").write_text(text, encoding="utf-8")
        return root
    return write


@pytest.fixture
def corpus_from():
    return Corpus.from_texts
