"""Command-line interface.

Subcommands:

    compare         score one pair of ranked lists
    matrix          day x query similarity grid for an engine pair
    consistency     per-day mean similarity (from a dataset or a matrix file)
    summary         mean/median/min/max (from a dataset or a matrix file)
    sweep           impact of one penalty weight on the mean score
    drift           one engine's self-similarity across two crawl periods
    normalize-urls  canonicalize a list of URLs
    import          convert a foreign flat JSONL file to the native format

Exit codes: 0 success, 1 usage error, 2 data or I/O error. All numeric
output is fixed to 4 decimals so runs are byte-for-byte reproducible.
"""

from __future__ import annotations

import argparse
import datetime as dt
import json
import statistics
import sys
from pathlib import Path

from . import analysis, dataset_io
from .combined import combined_similarity
from .errors import SerpSimError
from .model import DEFAULT_BOOST_WEIGHTS, MetricConfig, SimilarityMatrix
from .rank_metrics import (
    jaro_sim,
    jaro_winkler_sim,
    kendall_tau_sim,
    spearman_footrule_sim,
)
from .textsim import load_stopwords
from .urlnorm import RedirectCache, canonicalize, resolve_redirects

METRIC_CHOICES = ("combined", "footrule", "kendall", "jaro", "jarowinkler")


class UsageError(Exception):
    """Bad flag combination; maps to exit code 1 like a parse failure."""


def _fmt(value: float) -> str:
    return f"{value:.4f}"


def _parse_weights(text: str) -> tuple[float, float, float]:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(
            f"expected three comma-separated weights, got {text!r}"
        )
    try:
        a, b, c = (float(p) for p in parts)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc
    return a, b, c


def _parse_boost(text: str) -> tuple[float, ...]:
    if text.strip().lower() in ("", "none"):
        return ()
    try:
        return tuple(float(p) for p in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _parse_steps(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(p) for p in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _parse_date(text: str) -> dt.date:
    try:
        return dt.date.fromisoformat(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    scoring = common.add_argument_group("scoring")
    scoring.add_argument(
        "--weights",
        type=_parse_weights,
        default=(0.8, 1.0, 0.8),
        metavar="A,B,C",
        help="snippet, title and transposition penalty weights (default 0.8,1.0,0.8)",
    )
    scoring.add_argument(
        "--boost",
        type=_parse_boost,
        default=DEFAULT_BOOST_WEIGHTS,
        metavar="W1,..",
        help="positional agreement boost weights, or 'none' "
        "(default 0.15,0.1,0.07,0.03,0.01)",
    )
    scoring.add_argument(
        "--stopwords",
        metavar="PATH",
        help="stopword file (UTF-8, one word per line) replacing the bundled list",
    )
    scoring.add_argument(
        "--metric",
        choices=METRIC_CHOICES,
        default="combined",
        help="combined content+ranking score, or a rank-only baseline",
    )
    loading = common.add_argument_group("dataset loading")
    loading.add_argument(
        "--normalize",
        action="store_true",
        help="canonicalize URLs while loading",
    )
    loading.add_argument(
        "--redirects",
        metavar="PATH",
        help="redirect cache (source<TAB>target); implies --normalize",
    )
    loading.add_argument(
        "--strict",
        action="store_true",
        help="reject lists that are shorter than the expected depth",
    )
    loading.add_argument(
        "--top-n",
        type=int,
        metavar="N",
        help="compare the top N results (default: depth of the shortest list)",
    )
    return common


def _config(args: argparse.Namespace) -> MetricConfig:
    a, b, c = args.weights
    return MetricConfig(a=a, b=b, c=c, boost_weights=args.boost)


def _stopwords(args: argparse.Namespace) -> frozenset[str] | None:
    return load_stopwords(args.stopwords) if args.stopwords else None


def _load(args: argparse.Namespace, path: str) -> analysis.SerpDataset:
    cache = RedirectCache.from_file(args.redirects) if args.redirects else None
    return dataset_io.load_dataset(
        path,
        normalize=args.normalize or cache is not None,
        redirect_cache=cache,
        strict=args.strict,
        expected_n=args.top_n,
    )


def _metric_fn(args: argparse.Namespace):
    if args.metric == "combined":
        cfg = _config(args)
        stopwords = _stopwords(args)
        return lambda list_a, list_b: combined_similarity(list_a, list_b, cfg, stopwords).score
    return {
        "footrule": spearman_footrule_sim,
        "kendall": kendall_tau_sim,
        "jaro": jaro_sim,
        "jarowinkler": jaro_winkler_sim,
    }[args.metric]


def _single_record(args: argparse.Namespace, path: str):
    dataset = _load(args, path)
    keys = list(dataset)
    if len(keys) != 1:
        raise SerpSimError(
            f"{path}: expected exactly one record, found {len(keys)}"
        )
    return dataset.get(*keys[0])


def _write_or_print(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)


def _cmd_compare(args: argparse.Namespace) -> int:
    if args.files:
        if len(args.files) != 2:
            raise UsageError("compare needs exactly two record files")
        list_a = _single_record(args, args.files[0])
        list_b = _single_record(args, args.files[1])
    else:
        if not (args.dataset and args.engine_a and args.engine_b and args.query and args.date):
            raise UsageError(
                "compare needs either two record files or --dataset with "
                "--engine-a, --engine-b, --query and --date"
            )
        dataset = _load(args, args.dataset)
        date_b = args.date_b or args.date
        list_a = dataset.get(args.engine_a, args.query, args.date)
        list_b = dataset.get(args.engine_b, args.query, date_b)
        if list_a is None:
            raise SerpSimError(f"no record for {args.engine_a}/{args.query}/{args.date}")
        if list_b is None:
            raise SerpSimError(f"no record for {args.engine_b}/{args.query}/{date_b}")

    print(f"metric\t{args.metric}")
    if args.metric == "combined":
        breakdown = combined_similarity(list_a, list_b, _config(args), _stopwords(args))
        print(f"score\t{_fmt(breakdown.score)}")
        print(f"base_score\t{_fmt(breakdown.base_score)}")
        print(f"boost\t{_fmt(breakdown.boost)}")
        print(f"common_count\t{breakdown.common_count}")
        print(f"snippet_penalty\t{_fmt(breakdown.snippet_penalty)}")
        print(f"title_penalty\t{_fmt(breakdown.title_penalty)}")
        print(f"transposition_penalty\t{_fmt(breakdown.transposition_penalty)}")
    else:
        print(f"score\t{_fmt(_metric_fn(args)(list_a, list_b))}")
    return 0


def _matrix_from_args(args: argparse.Namespace) -> SimilarityMatrix:
    dataset = _load(args, args.dataset)
    return analysis.similarity_matrix(
        dataset,
        args.engine_a,
        args.engine_b,
        _config(args),
        stopwords=_stopwords(args),
        metric_fn=None if args.metric == "combined" else _metric_fn(args),
        max_workers=args.jobs,
    )


def _cmd_matrix(args: argparse.Namespace) -> int:
    _write_or_print(dataset_io.format_matrix(_matrix_from_args(args)), args.output)
    return 0


def _matrix_or_file(args: argparse.Namespace) -> SimilarityMatrix:
    if args.matrix:
        return dataset_io.read_matrix(args.matrix)
    if not (args.dataset and args.engine_a and args.engine_b):
        raise UsageError(
            "needs either --matrix FILE or --dataset with --engine-a and --engine-b"
        )
    return _matrix_from_args(args)


def _cmd_consistency(args: argparse.Namespace) -> int:
    matrix = _matrix_or_file(args)
    lines = [f"# pair\t{matrix.engine_pair[0]}\t{matrix.engine_pair[1]}\n"]
    for day, value in analysis.consistency_series(matrix):
        cell = "NA" if value is None else _fmt(value)
        lines.append(f"{day.isoformat()}\t{cell}\n")
    _write_or_print("".join(lines), args.output)
    return 0


def _cmd_summary(args: argparse.Namespace) -> int:
    matrix = _matrix_or_file(args)
    stats = analysis.pair_summary(matrix)
    lines = [f"# pair\t{matrix.engine_pair[0]}\t{matrix.engine_pair[1]}\n"]
    for key in ("mean", "median", "min", "max"):
        lines.append(f"{key}\t{_fmt(stats[key])}\n")
    _write_or_print("".join(lines), args.output)
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    dataset = _load(args, args.dataset)
    report = analysis.impact_sweep(
        dataset,
        args.engine_a,
        args.engine_b,
        args.factor,
        args.steps,
        cfg=_config(args),
        stopwords=_stopwords(args),
    )
    lines = [
        f"# factor\t{report.factor}\n",
        f"# base_mean\t{_fmt(report.base_mean)}\n",
    ]
    for step, pct in zip(report.weight_steps, report.decrease_pct):
        lines.append(f"{step:.2f}\t{pct:.2f}\n")
    _write_or_print("".join(lines), args.output)
    return 0


def _cmd_drift(args: argparse.Namespace) -> int:
    dataset_old = _load(args, args.old)
    dataset_new = _load(args, args.new)
    scores = analysis.cross_period_drift(
        dataset_old,
        dataset_new,
        args.engine,
        _config(args),
        stopwords=_stopwords(args),
        date_old=args.date_old,
        date_new=args.date_new,
    )
    lines = [f"# engine\t{args.engine}\n"]
    for query in sorted(scores):
        lines.append(f"{query}\t{_fmt(scores[query])}\n")
    lines.append(f"mean\t{_fmt(statistics.fmean(scores.values()))}\n")
    _write_or_print("".join(lines), args.output)
    return 0


def _cmd_normalize_urls(args: argparse.Namespace) -> int:
    if args.file == "-":
        text = sys.stdin.read()
    else:
        text = Path(args.file).read_text(encoding="utf-8")
    cache = RedirectCache.from_file(args.redirects) if args.redirects else None
    for line in text.splitlines():
        url = line.strip()
        if not url or url.startswith("#"):
            continue
        canonical = canonicalize(url, sort_query=args.sort_query, strip_www=args.strip_www)
        if cache is not None:
            canonical = resolve_redirects(canonical, cache, "offline")
        print(canonical)
    return 0


def _cmd_import(args: argparse.Namespace) -> int:
    mapping = json.loads(Path(args.mapping).read_text(encoding="utf-8"))
    if not isinstance(mapping, dict):
        raise SerpSimError(f"{args.mapping}: mapping must be a JSON object")
    cache = RedirectCache.from_file(args.redirects) if args.redirects else None
    dataset = dataset_io.import_dataset(
        args.input,
        mapping,
        normalize=args.normalize or cache is not None,
        redirect_cache=cache,
        strict=args.strict,
        expected_n=args.top_n,
    )
    _write_or_print(dataset_io.dumps_dataset(dataset), args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="serpsim",
        description="Content-and-ranking similarity analytics for ranked search results.",
    )
    common = _common_options()
    sub = parser.add_subparsers(dest="command", required=True)

    compare = sub.add_parser(
        "compare", parents=[common], help="score one pair of ranked lists"
    )
    compare.add_argument("files", nargs="*", metavar="FILE", help="two one-record files")
    compare.add_argument("--dataset", metavar="PATH")
    compare.add_argument("--engine-a", metavar="NAME")
    compare.add_argument("--engine-b", metavar="NAME")
    compare.add_argument("--query", metavar="TEXT")
    compare.add_argument("--date", type=_parse_date, metavar="YYYY-MM-DD")
    compare.add_argument(
        "--date-b", type=_parse_date, metavar="YYYY-MM-DD",
        help="date for the second engine (default: --date)",
    )
    compare.set_defaults(func=_cmd_compare)

    matrix = sub.add_parser(
        "matrix", parents=[common], help="day x query similarity grid"
    )
    matrix.add_argument("--dataset", required=True, metavar="PATH")
    matrix.add_argument("--engine-a", required=True, metavar="NAME")
    matrix.add_argument("--engine-b", required=True, metavar="NAME")
    matrix.add_argument("--jobs", type=int, metavar="N", help="scoring threads")
    matrix.add_argument("-o", "--output", metavar="PATH")
    matrix.set_defaults(func=_cmd_matrix)

    for name, handler, text in (
        ("consistency", _cmd_consistency, "per-day mean similarity"),
        ("summary", _cmd_summary, "mean/median/min/max of a grid"),
    ):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("--matrix", metavar="PATH", help="precomputed matrix TSV")
        p.add_argument("--dataset", metavar="PATH")
        p.add_argument("--engine-a", metavar="NAME")
        p.add_argument("--engine-b", metavar="NAME")
        p.add_argument("--jobs", type=int, metavar="N", help="scoring threads")
        p.add_argument("-o", "--output", metavar="PATH")
        p.set_defaults(func=handler)

    sweep = sub.add_parser(
        "sweep", parents=[common], help="impact of one penalty weight"
    )
    sweep.add_argument("--dataset", required=True, metavar="PATH")
    sweep.add_argument("--engine-a", required=True, metavar="NAME")
    sweep.add_argument("--engine-b", required=True, metavar="NAME")
    sweep.add_argument(
        "--factor", required=True, choices=analysis.SWEEP_FACTORS,
    )
    sweep.add_argument(
        "--steps", type=_parse_steps, default=analysis.DEFAULT_SWEEP_STEPS,
        metavar="W1,..", help="weights to try (default 0.1..1.0)",
    )
    sweep.add_argument("-o", "--output", metavar="PATH")
    sweep.set_defaults(func=_cmd_sweep)

    drift = sub.add_parser(
        "drift", parents=[common], help="self-similarity across two periods"
    )
    drift.add_argument("--old", required=True, metavar="PATH", help="earlier dataset")
    drift.add_argument("--new", required=True, metavar="PATH", help="later dataset")
    drift.add_argument("--engine", required=True, metavar="NAME")
    drift.add_argument("--date-old", type=_parse_date, metavar="YYYY-MM-DD")
    drift.add_argument("--date-new", type=_parse_date, metavar="YYYY-MM-DD")
    drift.add_argument("-o", "--output", metavar="PATH")
    drift.set_defaults(func=_cmd_drift)

    norm = sub.add_parser(
        "normalize-urls", help="canonicalize URLs, one per line"
    )
    norm.add_argument("file", metavar="FILE", help="URL list, or - for stdin")
    norm.add_argument("--sort-query", action="store_true", help="sort query parameters")
    norm.add_argument("--strip-www", action="store_true", help="drop a leading www label")
    norm.add_argument("--redirects", metavar="PATH", help="redirect cache to apply")
    norm.set_defaults(func=_cmd_normalize_urls)

    importer = sub.add_parser(
        "import", parents=[common], help="convert foreign flat JSONL"
    )
    importer.add_argument("--input", required=True, metavar="PATH")
    importer.add_argument(
        "--mapping", required=True, metavar="PATH",
        help="JSON object mapping native fields to source fields",
    )
    importer.add_argument("-o", "--output", metavar="PATH")
    importer.set_defaults(func=_cmd_import)

    return parser


def run_cli(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    try:
        return args.func(args)
    except BrokenPipeError:
        return 0
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except (SerpSimError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run_cli(sys.argv[1:]))


if __name__ == "__main__":
    main()
