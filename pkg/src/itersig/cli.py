"""Command-line interface.

Subcommands: ``eval`` (fit on a train file, report test accuracy and
timings), ``stutter-eval`` (accuracy against stuttered test copies),
``words`` (enumerate word sets), ``argmax`` (arctic sum with index
tracking), and ``benchmark`` (sweep a directory of dataset pairs).
Every error exits nonzero with a single ``error:`` line on stderr.
"""

from __future__ import annotations

import argparse
import csv
import sys
import time
from pathlib import Path

import numpy as np

from .argmax import arctic_iss_with_indices
from .classify import CvRidgeClassifier, accuracy
from .data import lengthen_dataset, load_ucr, stutter_dataset
from .errors import ItersigError
from .pipeline import IssFeatures, resolve_config
from .words import alternating_words, enumerate_words, parse_word

EVAL_HEADER = ("dataset", "config", "fit_seconds", "transform_seconds", "accuracy")


def _open_out(path):
    return open(path, "w", newline="", encoding="utf-8") if path else sys.stdout


def _fit_eval(train, test, config, n_jobs=None):
    """Fit features + classifier on train, score on test; returns row fields."""
    features = IssFeatures(config=config, n_jobs=n_jobs)
    clf = CvRidgeClassifier()
    t0 = time.perf_counter()
    F_train = features.fit_transform(train.samples)
    clf.fit(F_train, train.labels)
    fit_seconds = time.perf_counter() - t0
    t0 = time.perf_counter()
    F_test = features.transform(test.samples)
    predicted = clf.predict(F_test)
    transform_seconds = time.perf_counter() - t0
    return features, clf, fit_seconds, transform_seconds, accuracy(predicted, test.labels)


def _dataset_name(train_path):
    stem = Path(train_path).stem
    return stem[: -len("_TRAIN")] if stem.endswith("_TRAIN") else stem


def cmd_eval(args) -> int:
    train = load_ucr(args.train)
    test = load_ucr(args.test)
    config = resolve_config(args.config)
    _, _, fit_s, tr_s, acc = _fit_eval(train, test, config, args.n_jobs)
    with _open_out(args.out) as fh:
        writer = csv.writer(fh)
        writer.writerow(EVAL_HEADER)
        writer.writerow([_dataset_name(args.train), config.name, f"{fit_s:.3f}", f"{tr_s:.3f}", f"{acc:.4f}"])
    return 0


def cmd_stutter_eval(args) -> int:
    train = load_ucr(args.train)
    test = load_ucr(args.test)
    config = resolve_config(args.config)
    proportions = [float(p) for p in args.proportions.split(",")]
    rows = []
    for proportion in proportions:
        fit_train = train
        stuttered = stutter_dataset(test, proportion, args.seed)
        if args.lengthen_train and proportion > 0:
            added = stuttered.samples[0].shape[-1] - test.samples[0].shape[-1]
            fit_train = lengthen_dataset(train, added)
        _, _, _, _, acc = _fit_eval(fit_train, stuttered, config, args.n_jobs)
        rows.append((proportion, acc))
    with _open_out(args.out) as fh:
        writer = csv.writer(fh)
        writer.writerow(("proportion", "accuracy"))
        for proportion, acc in rows:
            writer.writerow([f"{proportion:g}", f"{acc:.4f}"])
    return 0


def cmd_words(args) -> int:
    if args.alternating:
        parts = args.alternating.split(",")
        if len(parts) != 3:
            raise ItersigError("--alternating expects a,b,length")
        a, b, length = (int(p) for p in parts)
        words = list(alternating_words((a, b), length))
    else:
        if args.d is None or args.max_weight is None:
            raise ItersigError("need --d and --max-weight, or --alternating")
        words = enumerate_words(args.d, args.max_weight)
    for word in words:
        print(word)
    print(f"count: {len(words)}")
    return 0


def cmd_argmax(args) -> int:
    text = Path(args.input).read_text(encoding="utf-8")
    values = [float(f) for f in text.replace(",", " ").split()]
    if not values:
        raise ItersigError(f"{args.input} contains no values")
    series = np.asarray(values)[None, :]
    word = parse_word(args.word, d=1)
    trace = arctic_iss_with_indices(series, word)
    writer = csv.writer(sys.stdout)
    header = ["t", "z"] + [f"J{k + 1}" for k in range(word.length)]
    writer.writerow(header)
    for t in range(series.shape[-1]):
        writer.writerow(
            [t + 1, f"{trace.values[t]:g}"] + [int(trace.indices[k, t]) for k in range(word.length)]
        )
    return 0


def cmd_benchmark(args) -> int:
    config = resolve_config(args.config)
    train_files = sorted(Path(args.dir).glob("*_TRAIN*"))
    with _open_out(args.out) as fh:
        writer = csv.writer(fh)
        writer.writerow(EVAL_HEADER)
        for train_path in train_files:
            test_path = Path(str(train_path).replace("_TRAIN", "_TEST"))
            if not test_path.exists():
                print(f"error: no test file for {train_path}", file=sys.stderr)
                continue
            name = _dataset_name(train_path)
            try:
                train = load_ucr(train_path)
                test = load_ucr(test_path)
                _, _, fit_s, tr_s, acc = _fit_eval(train, test, config, args.n_jobs)
                writer.writerow([name, config.name, f"{fit_s:.3f}", f"{tr_s:.3f}", f"{acc:.4f}"])
            except Exception as exc:  # keep sweeping; record the failure
                print(f"error: {name}: {exc}", file=sys.stderr)
                writer.writerow([name, config.name, "", "", ""])
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="itersig",
        description="Iterated-sums signature features for time series classification",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="fit on a train file, report test accuracy")
    p.add_argument("--train", required=True)
    p.add_argument("--test", required=True)
    p.add_argument("--config", required=True, help="preset name or JSON config path")
    p.add_argument("--out", default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n-jobs", type=int, default=None)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("stutter-eval", help="accuracy against stuttered test copies")
    p.add_argument("--train", required=True)
    p.add_argument("--test", required=True)
    p.add_argument("--config", required=True)
    p.add_argument("--proportions", default="0,0.1,0.2,0.5,0.9")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--lengthen-train", action="store_true",
                   help="lengthen training series by the added amount (baseline protocol)")
    p.add_argument("--out", default=None)
    p.add_argument("--n-jobs", type=int, default=None)
    p.set_defaults(func=cmd_stutter_eval)

    p = sub.add_parser("words", help="enumerate word sets")
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--max-weight", type=int, default=None)
    p.add_argument("--alternating", default=None, metavar="A,B,LEN")
    p.set_defaults(func=cmd_words)

    p = sub.add_parser("argmax", help="arctic sum with argmax index tracking")
    p.add_argument("--input", required=True, help="file of numbers (csv or whitespace)")
    p.add_argument("--word", required=True)
    p.set_defaults(func=cmd_argmax)

    p = sub.add_parser("benchmark", help="sweep a directory of *_TRAIN/*_TEST pairs")
    p.add_argument("--dir", required=True)
    p.add_argument("--config", required=True)
    p.add_argument("--out", default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n-jobs", type=int, default=None)
    p.set_defaults(func=cmd_benchmark)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ItersigError, OSError, FloatingPointError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
