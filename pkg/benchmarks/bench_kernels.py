#!/usr/bin/env python3
"""Compare the compiled and pure-Python pairwise kernels.

    python benchmarks/bench_kernels.py --docs 40 80 160 --tokens 1000

Times the pairwise phase (tf-idf weighting, encoding and the O(N^2) kernel);
the model is built once per corpus and shared by both backends. With
--kernel-only the encoded CSR arrays are built once too and only the kernel
call is timed. Also checks the two backends return identical matrices.
"""

import argparse
import random
import statistics
import time

import numpy as np

from plagvsm._backend import available_backends
from plagvsm.ngrams import build_corpus_model
from plagvsm.preprocess import TokenStream
from plagvsm.similarity import COSINE, JACCARD, _csr, pairwise_matrix, tfidf_vector


def synthetic_streams(n_docs, n_tokens, vocab_size=3000, seed=0):
    rng = random.Random(seed)
    vocab = [f"w{i}" for i in range(vocab_size)]
    weights = [1 / (r + 1) for r in range(vocab_size)]
    return [TokenStream(f"d{i:04d}", tuple(rng.choices(vocab, weights=weights, k=n_tokens)))
            for i in range(n_docs)]


def kernel_call(model, measure, kern):
    if measure == JACCARD:
        args = _csr([model.encode(b.counts) for b in model.bags])
        return lambda: kern.jaccard_matrix(*args)
    rows, vals = [], []
    for bag in model.bags:
        vec = tfidf_vector(bag, model)
        terms = sorted(vec.weights, key=model.term_ids.__getitem__)
        rows.append(model.encode(terms))
        vals.append(np.array([vec.weights[t] for t in terms]))
    args = _csr(rows, vals)
    return lambda: kern.cosine_matrix(*args)


def best_of(fn, repeat):
    times = []
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - start)
    return min(times), statistics.median(times), result


def main():
    parser = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    parser.add_argument("--docs", type=int, nargs="+", default=[40, 80, 160])
    parser.add_argument("--tokens", type=int, default=1000)
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--kernel-only", action="store_true", help="time only the kernel call")
    args = parser.parse_args()

    backends = available_backends()
    if "cython" not in backends:
        print("compiled kernels not built; only the fallback will be timed")

    header = f"{'docs':>5} {'config':<16} " + "".join(f"{name:>12}" for name in sorted(backends))
    if len(backends) == 2:
        header += f"{'speedup':>10}"
    print(header)
    for n_docs in args.docs:
        streams = synthetic_streams(n_docs, args.tokens)
        for n, measure in [(1, COSINE), (2, COSINE), (3, COSINE), (3, JACCARD)]:
            model = build_corpus_model(streams, n)
            timings, results = {}, {}
            for name, kern in sorted(backends.items()):
                if args.kernel_only:
                    fn = kernel_call(model, measure, kern)
                else:
                    def fn(kern=kern):
                        return pairwise_matrix(model, measure, kernels=kern).scores
                best, _, res = best_of(fn, args.repeat)
                timings[name], results[name] = best, res
            line = f"{n_docs:>5} {f'n={n} {measure}':<16} " + "".join(
                f"{timings[name]:>11.4f}s" for name in sorted(backends))
            if len(backends) == 2:
                line += f"{timings['python'] / timings['cython']:>9.1f}x"
                assert np.array_equal(results["python"], results["cython"]), "backends disagree"
            print(line)


if __name__ == "__main__":
    main()
