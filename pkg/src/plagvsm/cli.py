"""Command-line interface.

    plagvsm analyze CORPUS_DIR [options]
    plagvsm calibrate CALIBRATION_DIR [options]

Every option can also be set through an environment variable named
``PLAGVSM_<OPTION>`` (upper case, dashes as underscores), e.g.
``PLAGVSM_NGRAM=3`` or ``PLAGVSM_TIMING=1``. Command-line flags win.

Exit status of ``analyze``: 0 if no pair reaches its threshold, 1 if any
pair is flagged as partial or complete copying, 2 on error.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

from .calibrate import (
    DEFAULT_COMPLETE_CUTOFF,
    POPULATION,
    SD_FLAVORS,
    CalibrationError,
    dump_calibrations,
)
from .corpus import CorpusError, scan_directory
from .ngrams import ConfigError
from .pipeline import FORMATS, RunConfig, calibrate_corpus, run_analysis
from .report import emit_report
from .similarity import MEASURES, config_label

ENV_PREFIX = "PLAGVSM_"

EXIT_CLEAN, EXIT_FLAGGED, EXIT_ERROR = 0, 1, 2

logger = logging.getLogger("plagvsm")


def _env(name, default=None):
    return os.environ.get(ENV_PREFIX + name.upper().replace("-", "_"), default)


def _env_flag(name):
    return str(_env(name, "")).strip().lower() in ("1", "true", "yes", "on")


def _orders(text):
    try:
        return tuple(int(x) for x in str(text).split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid n-gram list {text!r}") from None


def _measures(text):
    vals = tuple(x.strip().lower() for x in str(text).split(",") if x.strip())
    bad = [v for v in vals if v not in MEASURES]
    if bad:
        raise argparse.ArgumentTypeError(f"unknown measure(s) {bad}; choose from {MEASURES}")
    return vals


def _log_base(text):
    text = str(text).strip().lower()
    if text in ("e", "ln", "natural"):
        return "e"
    if text in ("10", "base10"):
        return "10"
    raise argparse.ArgumentTypeError(f"log base must be e or 10, got {text!r}")


def _add_model_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--ngram", type=_orders, default=_orders(_env("ngram", "1,2,3")),
                   help="comma-separated n-gram orders from {1,2,3} (default: 1,2,3)")
    p.add_argument("--measure", type=_measures, default=_measures(_env("measure", "cosine,jaccard")),
                   help="comma-separated measures: cosine, jaccard (default: both; "
                        "jaccard runs on trigrams only)")
    p.add_argument("--jaccard-any-order", action="store_true", default=_env_flag("jaccard_any_order"),
                   help="also run jaccard at n-gram orders other than 3")
    p.add_argument("--stopwords", type=Path, default=_env("stopwords"), metavar="FILE",
                   help="stopword file, one word per line, '#' comments (default: bundled list)")
    p.add_argument("--sd", choices=SD_FLAVORS, default=_env("sd", POPULATION),
                   help="standard deviation flavour for threshold calibration")
    p.add_argument("--log-base", type=_log_base, default=_log_base(_env("log_base", "e")),
                   help="logarithm base for idf: e or 10 (default: e)")
    p.add_argument("--glob", default=_env("glob", "*.txt"), help="filename pattern (default: *.txt)")
    p.add_argument("--recursive", action="store_true", default=_env_flag("recursive"),
                   help="descend into subdirectories")
    p.add_argument("--out", type=Path, default=_env("out"), metavar="FILE",
                   help="write the report here instead of stdout")
    p.add_argument("-v", "--verbose", action="count", default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plagvsm",
        description="Intra-corpus plagiarism detection with n-gram tf-idf cosine and trigram Jaccard.",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=__doc__.split("\n\n", 2)[2] if __doc__ else None,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    pa = sub.add_parser("analyze", help="score every document pair and classify it")
    pa.add_argument("corpus_dir", type=Path)
    _add_model_options(pa)
    pa.add_argument("--calibrate", type=Path, default=_env("calibrate"), metavar="PATH",
                    help="directory of known-original documents, or a JSON file written by "
                         "'plagvsm calibrate', used to derive thresholds")
    threshold = _env("threshold")
    pa.add_argument("--threshold", type=float, default=float(threshold) if threshold else None,
                    metavar="PCT", help="fixed threshold percentage for every method (skips calibration)")
    pa.add_argument("--complete-cutoff", type=float,
                    default=float(_env("complete_cutoff", DEFAULT_COMPLETE_CUTOFF)), metavar="PCT",
                    help=f"percentage at or above which a pair counts as complete copying "
                         f"(default: {DEFAULT_COMPLETE_CUTOFF})")
    pa.add_argument("--format", choices=FORMATS, default=_env("format", "csv"))
    pa.add_argument("--timing", action="store_true", default=_env_flag("timing"),
                    help="record wall-clock time per method and phase")
    pa.add_argument("--dump-vocab", type=Path, default=_env("dump_vocab"), metavar="DIR",
                    help="write term,df CSV files (one per n-gram order) into DIR")

    pc = sub.add_parser("calibrate", help="derive thresholds from known-original documents")
    pc.add_argument("calibration_dir", type=Path)
    _add_model_options(pc)
    return parser


def _setup_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity == 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)


def _run_config(args, command: str) -> RunConfig:
    common = dict(
        ngram_orders=args.ngram,
        measures=args.measure,
        stopword_file=args.stopwords,
        sd_flavor=args.sd,
        log_base=args.log_base,
        recursive=args.recursive,
        output_path=args.out,
        jaccard_any_order=args.jaccard_any_order,
        glob=args.glob,
    )
    if command == "calibrate":
        return RunConfig(corpus_dir=args.calibration_dir, **common)
    return RunConfig(
        corpus_dir=args.corpus_dir,
        calibration_dir=args.calibrate,
        threshold=args.threshold,
        complete_cutoff=args.complete_cutoff,
        output_format=args.format,
        timing=args.timing,
        **common,
    )


def _write(text: str, path) -> None:
    if path is None:
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _dump_vocab(config: RunConfig, directory: Path) -> None:
    from .ngrams import build_corpus_model
    from .pipeline import load_stopwords
    from .preprocess import preprocess_corpus

    directory.mkdir(parents=True, exist_ok=True)
    corpus = scan_directory(config.corpus_dir, config.glob, config.recursive)
    streams = preprocess_corpus(corpus, load_stopwords(config))
    for n in config.ngram_orders:
        model = build_corpus_model(streams, n)
        with open(directory / f"vocab_n{n}.csv", "w", encoding="utf-8", newline="") as fh:
            model.write_vocabulary_csv(fh)


def cmd_analyze(args) -> int:
    config = _run_config(args, "analyze")
    result = run_analysis(config)
    text = emit_report(result, config.output_format)
    _write(text, config.output_path)
    if config.timing and config.output_format == "csv":
        for t in result.timings:
            print(f"timing {config_label(t.n, t.measure)} {t.phase} {t.wall_time:.6f}s", file=sys.stderr)
    if args.dump_vocab is not None:
        _dump_vocab(config, args.dump_vocab)
    return EXIT_FLAGGED if result.flagged else EXIT_CLEAN


def cmd_calibrate(args) -> int:
    config = _run_config(args, "calibrate")
    corpus = scan_directory(config.corpus_dir, config.glob, config.recursive)
    results = calibrate_corpus(corpus, config)
    _write(dump_calibrations(results), config.output_path)
    return EXIT_CLEAN


def main(argv=None) -> int:
    try:
        parser = build_parser()
    except (argparse.ArgumentTypeError, ValueError) as exc:
        print(f"plagvsm: error: bad environment setting: {exc}", file=sys.stderr)
        return EXIT_ERROR
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors already; keep --help at 0
        return int(exc.code or 0)
    _setup_logging(args.verbose)
    handler = cmd_analyze if args.command == "analyze" else cmd_calibrate
    try:
        return handler(args)
    except (CorpusError, ConfigError, CalibrationError, OSError, ValueError, LookupError) as exc:
        print(f"plagvsm: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
