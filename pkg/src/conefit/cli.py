"""Command line front end.

Subcommands: ``fit``, ``score``, ``rank``, ``item-consistency``,
``correlate``, ``baseline``, ``synth``. All diagnostics go to stderr and
all data to stdout (or ``--out``); exit code 0 means success and every
toolkit error maps to its own nonzero code. Output is byte-identical
across re-runs with the same inputs and seeds.

Two output styles are supported: ``tsv`` (machine readable, floats as full
precision shortest round-trip) and ``table`` (human readable, floats with
6 significant digits unless ``--precision N`` asks for N fixed decimals).
The default is ``table`` on a terminal and ``tsv`` otherwise.
"""

from __future__ import annotations

import argparse
import sys
import warnings
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from .constraints import LevelPair, PerItem, build_constraints
from .data import EmbeddingSet, LabeledDataset
from .direction import (
    compatibility_report,
    fit_direction,
    item_consistency,
)
from .errors import ConefitError, EmptyLevelError, ParseError
from .io import RawEmbeddingFile, join, read_embeddings, read_labels, read_level_order, write_embeddings
from .rng import sample_without_replacement
from .stats import permutation_pvalue, rank_models
from .svm import DEFAULT_EPOCHS, DEFAULT_GRID, accuracy, stratified_split, tune_and_evaluate
from .synth import ConeSpec, default_offsets, default_spreads, generate_cone


# ---------------------------------------------------------------------------
# formatting


def _fmt_float(value: float, fmt: str, precision: int | None) -> str:
    if fmt == "tsv":
        return repr(float(value))
    if precision is not None:
        return f"{value:.{precision}f}"
    return f"{value:.6g}"


def _fmt_vector(vec, fmt: str, precision: int | None) -> str:
    parts = [_fmt_float(v, fmt, precision) for v in vec]
    if fmt == "tsv":
        return " ".join(parts)
    return "[" + ", ".join(parts) + "]"


def _render_tsv(rows: list[list[str]]) -> str:
    return "".join("\t".join(row) + "\n" for row in rows)


def _render_table(rows: list[list[str]], header: list[str] | None = None) -> str:
    # headed tables right-align their value columns; bare key/value
    # sections are fully left-aligned
    body = ([header] if header else []) + rows
    if not body:
        return ""
    n_cols = max(len(r) for r in body)
    widths = [0] * n_cols
    for row in body:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    lines = []
    for row in body:
        cells = []
        for i, cell in enumerate(row):
            if i == 0 or header is None:
                cells.append(cell.ljust(widths[i]))
            else:
                cells.append(cell.rjust(widths[i]))
        lines.append("  ".join(cells).rstrip())
    if header:
        lines.insert(1, "  ".join("-" * w for w in widths).rstrip())
    return "\n".join(lines) + "\n"


def _emit(args, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _resolve_format(args) -> str:
    if args.format:
        return args.format
    if args.out:
        return "tsv"
    return "table" if sys.stdout.isatty() else "tsv"


def _verbose(args, message: str) -> None:
    if args.verbose:
        print(f"conefit: {message}", file=sys.stderr)


# ---------------------------------------------------------------------------
# shared loading


def _require_files(paths) -> None:
    missing = [str(p) for p in paths if p and not Path(p).exists()]
    if missing:
        raise FileNotFoundError(", ".join(missing))


def _load_joined(args) -> tuple[EmbeddingSet, LabeledDataset]:
    _verbose(args, f"reading embeddings from {args.embeddings}")
    embeddings = read_embeddings(
        RawEmbeddingFile(args.embeddings, args.embedding_format),
        norm_policy=args.norm_policy,
    )
    _verbose(args, f"reading labels from {args.labels}")
    labels = read_labels(args.labels, args.levels)
    joined = join(embeddings, labels, on_missing=args.on_missing)
    _verbose(
        args,
        f"joined {len(joined.labels)} items "
        f"({len(joined.dropped_label_ids)} labels and "
        f"{len(joined.dropped_embedding_ids)} embeddings dropped)",
    )
    return joined.embeddings, joined.labels


def _parse_pair(text: str, dataset: LabeledDataset) -> tuple[int, int]:
    parts = text.split(":")
    if len(parts) != 2:
        raise ParseError(f"expected 'EASIER:HARDER', got {text!r}")
    a = dataset.rank_by_name(parts[0])
    b = dataset.rank_by_name(parts[1])
    if a >= b:
        raise ParseError(f"pair {text!r} is not ordered easier before harder")
    return a, b


def _requested_pairs(spec: str, dataset: LabeledDataset) -> list[tuple[int, int]]:
    if spec == "all":
        present = dataset.present_ranks()
        pairs = [(a, b) for a in present for b in present if a < b]
        if not pairs:
            raise EmptyLevelError("fewer than 2 levels carry items")
        return pairs
    return [_parse_pair(part, dataset) for part in spec.split(",") if part]


def _pair_label(dataset: LabeledDataset, pair: tuple[int, int]) -> str:
    return f"{dataset.level_names[pair[0]]}:{dataset.level_names[pair[1]]}"


# ---------------------------------------------------------------------------
# subcommands


def _cmd_fit(args) -> int:
    _require_files([args.embeddings, args.labels, args.levels])
    embeddings, dataset = _load_joined(args)
    if args.mode in ("all", "adjacent"):
        mode = args.mode
    elif args.mode.startswith("pair:"):
        _, a, b = args.mode.split(":")
        mode = LevelPair(dataset.rank_by_name(a), dataset.rank_by_name(b))
    elif args.mode.startswith("item:"):
        mode = PerItem(args.mode.split(":", 1)[1])
    else:
        raise ParseError(f"unknown mode {args.mode!r}")
    constraints = build_constraints(dataset, embeddings, mode)
    fitted = fit_direction(embeddings, constraints)

    fmt = _resolve_format(args)
    p = args.precision
    counts, edges = np.histogram(fitted.margins, bins=10)
    pairs = [
        ["items", str(len(embeddings))],
        ["dim", str(embeddings.dim)],
        ["mode", constraints.mode],
        ["constraints", str(len(constraints))],
        ["objective", _fmt_float(fitted.objective, fmt, p)],
        ["mean_margin", _fmt_float(fitted.mean_margin, fmt, p)],
        ["min_margin", _fmt_float(float(fitted.margins.min()), fmt, p)],
        ["max_margin", _fmt_float(float(fitted.margins.max()), fmt, p)],
        ["w", _fmt_vector(fitted.w, fmt, p)],
        ["apex", _fmt_vector(fitted.apex, fmt, p)],
    ]
    hist_rows = [
        [_fmt_float(lo, fmt, p), _fmt_float(hi, fmt, p), str(int(c))]
        for lo, hi, c in zip(edges[:-1], edges[1:], counts)
    ]
    if fmt == "tsv":
        text = _render_tsv(pairs) + _render_tsv(
            [["hist"] + row for row in hist_rows]
        )
    else:
        text = (
            "difficulty direction fit\n"
            + _render_table(pairs)
            + "\nmargin histogram\n"
            + _render_table(hist_rows, header=["bin_lo", "bin_hi", "count"])
        )
    _emit(args, text)
    return 0


def _cmd_score(args) -> int:
    _require_files([args.embeddings, args.labels, args.levels])
    embeddings, dataset = _load_joined(args)
    pairs = _requested_pairs(args.pairs, dataset)
    report = compatibility_report(embeddings, dataset, args.model_name, pairs)

    fmt = _resolve_format(args)
    header = ["pair", "K", "dim", "score"]
    rows = [
        [
            f"{entry.easier_name}:{entry.harder_name}",
            str(entry.n_pairs),
            str(report.dim),
            _fmt_float(entry.score, fmt, args.precision),
        ]
        for entry in report.entries
    ]
    if fmt == "tsv":
        text = _render_tsv([header] + rows)
    else:
        text = _render_table(rows, header=header)
    _emit(args, text)
    return 0


def _cmd_rank(args) -> int:
    models: list[tuple[str, str]] = []
    for spec in args.model:
        name, sep, path = spec.partition("=")
        if not sep or not name or not path:
            raise ParseError(f"--model expects NAME=PATH, got {spec!r}")
        if name in dict(models):
            raise ParseError(f"duplicate model name {name!r}")
        models.append((name, path))
    _require_files([path for _, path in models] + [args.labels, args.levels])

    level_order = read_level_order(args.levels)
    labels = read_labels(args.labels, level_order)

    def _score_one(entry):
        name, path = entry
        embeddings = read_embeddings(
            RawEmbeddingFile(path, args.embedding_format),
            norm_policy=args.norm_policy,
        )
        joined = join(embeddings, labels, on_missing=args.on_missing)
        pairs = _requested_pairs(args.pairs, joined.labels)
        return compatibility_report(joined.embeddings, joined.labels, name, pairs)

    # One worker per model; results are assembled in input order.
    with ThreadPoolExecutor(max_workers=min(4, len(models))) as pool:
        reports = list(pool.map(_score_one, models))

    fmt = _resolve_format(args)
    p = args.precision
    pair_names = [
        (entry.easier_name, entry.harder_name) for entry in reports[0].entries
    ]
    if args.layout == "matrix":
        header = ["model", "dim"] + [f"{a}:{b}" for a, b in pair_names]
        rows = []
        for report in reports:
            row = [report.model_name, str(report.dim)]
            for a, b in pair_names:
                row.append(_fmt_float(report.entry_for(a, b).score, fmt, p))
            rows.append(row)
    else:
        header = ["pair", "rank", "model", "dim", "score"]
        rows = []
        for a, b in pair_names:
            for position, entry in enumerate(rank_models(reports, (a, b)), 1):
                rows.append(
                    [
                        f"{a}:{b}",
                        str(position),
                        entry.model_name,
                        str(entry.dim),
                        _fmt_float(entry.score, fmt, p),
                    ]
                )
    text = _render_tsv([header] + rows) if fmt == "tsv" else _render_table(rows, header)
    _emit(args, text)
    return 0


def _cmd_item_consistency(args) -> int:
    _require_files(
        [args.embeddings, args.labels, args.levels]
        + ([args.correlate_with] if args.correlate_with else [])
    )
    embeddings, dataset = _load_joined(args)

    if args.anchor_id:
        anchors = [args.anchor_id]
    else:
        rank = dataset.rank_by_name(args.anchor_level)
        candidates = [
            dataset.ids[pos] for pos in dataset.positions_at(rank)
        ]
        if not candidates:
            raise EmptyLevelError(f"level {args.anchor_level!r} has no items")
        if args.sample and args.sample < len(candidates):
            anchors = sample_without_replacement(candidates, args.sample, args.seed)
        else:
            anchors = candidates

    scores = [item_consistency(embeddings, dataset, a) for a in anchors]

    fmt = _resolve_format(args)
    p = args.precision
    header = ["id", "level", "consistency"]
    rows = [
        [a, dataset.level_of(a), _fmt_float(s, fmt, p)]
        for a, s in zip(anchors, scores)
    ]

    corr_rows: list[list[str]] = []
    if args.correlate_with:
        reference: dict[str, float] = {}
        for lineno, line in enumerate(
            Path(args.correlate_with).read_text(encoding="utf-8").splitlines(), 1
        ):
            if not line.strip():
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise ParseError(
                    f"{args.correlate_with}:{lineno}: expected 'id<TAB>value'"
                )
            try:
                reference[parts[0]] = float(parts[1])
            except ValueError:
                raise ParseError(
                    f"{args.correlate_with}:{lineno}: non-numeric value"
                ) from None
        matched = [(s, reference[a]) for a, s in zip(anchors, scores) if a in reference]
        result = permutation_pvalue(
            [m[0] for m in matched],
            [m[1] for m in matched],
            n_perm=args.n_perm,
            seed=args.seed,
        )
        corr_rows = [
            ["corr_n", str(result.n)],
            ["corr_rho", _fmt_float(result.rho, fmt, p)],
            ["corr_p_value", _fmt_float(result.p_value, fmt, p)],
            ["corr_n_perm", str(result.n_perm)],
            ["corr_seed", str(result.seed)],
            ["corr_low_resolution", str(result.low_resolution).lower()],
        ]

    if fmt == "tsv":
        text = _render_tsv([header] + rows) + _render_tsv(corr_rows)
    else:
        text = _render_table(rows, header=header)
        if corr_rows:
            text += "\nrank correlation with reference\n" + _render_table(corr_rows)
    _emit(args, text)
    return 0


def _read_value_file(path: str) -> tuple[list[str] | None, list[float]]:
    """Lines of ``value`` or ``id<TAB>value``; returns (ids or None, values)."""
    ids: list[str] = []
    values: list[float] = []
    tabbed = None
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip():
            continue
        parts = line.split("\t")
        if tabbed is None:
            tabbed = len(parts) == 2
        if tabbed and len(parts) != 2 or not tabbed and len(parts) != 1:
            raise ParseError(f"{path}:{lineno}: inconsistent row shape")
        try:
            if tabbed:
                ids.append(parts[0])
                values.append(float(parts[1]))
            else:
                values.append(float(parts[0]))
        except ValueError:
            raise ParseError(f"{path}:{lineno}: non-numeric value") from None
    return (ids if tabbed else None), values


def _cmd_correlate(args) -> int:
    _require_files([args.file_a, args.file_b])
    ids_a, values_a = _read_value_file(args.file_a)
    ids_b, values_b = _read_value_file(args.file_b)
    if ids_a is not None and ids_b is not None:
        common = sorted(set(ids_a) & set(ids_b))
        lookup_a = dict(zip(ids_a, values_a))
        lookup_b = dict(zip(ids_b, values_b))
        a = [lookup_a[i] for i in common]
        b = [lookup_b[i] for i in common]
    else:
        a, b = values_a, values_b
    result = permutation_pvalue(a, b, n_perm=args.n_perm, seed=args.seed)

    fmt = _resolve_format(args)
    p = args.precision
    rows = [
        ["n", str(result.n)],
        ["rho", _fmt_float(result.rho, fmt, p)],
        ["p_value", _fmt_float(result.p_value, fmt, p)],
        ["n_perm", str(result.n_perm)],
        ["seed", str(result.seed)],
        ["low_resolution", str(result.low_resolution).lower()],
    ]
    text = _render_tsv(rows) if fmt == "tsv" else _render_table(rows)
    _emit(args, text)
    return 0


def _binary_pair_data(embeddings, dataset, pair):
    a, b = pair
    idx = np.asarray([embeddings.index_of(i) for i in dataset.ids], dtype=np.int64)
    pos_a = dataset.positions_at(a)
    pos_b = dataset.positions_at(b)
    for rank, pos in ((a, pos_a), (b, pos_b)):
        if not pos.size:
            raise EmptyLevelError(
                f"level {dataset.level_names[rank]!r} (rank {rank}) has no items"
            )
    X = np.concatenate([embeddings.vectors[idx[pos_a]], embeddings.vectors[idx[pos_b]]])
    y = np.concatenate([-np.ones(pos_a.size), np.ones(pos_b.size)])
    return X, y


def _cmd_baseline(args) -> int:
    _require_files([args.embeddings, args.labels, args.levels])
    embeddings, dataset = _load_joined(args)
    train_pair = _parse_pair(args.train_pair, dataset)
    test_pair = _parse_pair(args.test_pair, dataset)
    grid = tuple(float(c) for c in args.grid.split(",") if c)

    X_pool, y_pool = _binary_pair_data(embeddings, dataset, train_pair)
    train_idx, val_idx = stratified_split(y_pool, args.train_frac, args.seed)
    X_test, y_test = _binary_pair_data(embeddings, dataset, test_pair)

    result = tune_and_evaluate(
        (X_pool[train_idx], y_pool[train_idx]),
        (X_pool[val_idx], y_pool[val_idx]),
        (X_test, y_test),
        grid=grid,
        epochs=args.epochs,
        seed=args.seed,
    )

    fmt = _resolve_format(args)
    p = args.precision
    rows = [
        ["train_pair", _pair_label(dataset, train_pair)],
        ["test_pair", _pair_label(dataset, test_pair)],
        ["dim", str(embeddings.dim)],
        ["n_train", str(train_idx.size)],
        ["n_val", str(val_idx.size)],
        ["n_test", str(y_test.size)],
        ["epochs", str(args.epochs)],
        ["seed", str(args.seed)],
    ]
    c_rows = [
        ["val_accuracy", _fmt_float(c, fmt, p), _fmt_float(acc, fmt, p)]
        for c, acc in result.val_accuracies
    ]
    tail = [
        ["chosen_c", _fmt_float(result.model.c_used, fmt, p)],
        ["test_accuracy", _fmt_float(result.test_accuracy, fmt, p)],
    ]
    if fmt == "tsv":
        text = _render_tsv(rows + c_rows + tail)
    else:
        text = (
            "svm transfer baseline\n"
            + _render_table(rows)
            + "\nvalidation accuracy per C\n"
            + _render_table(
                [r[1:] for r in c_rows], header=["C", "val_accuracy"]
            )
            + "\n"
            + _render_table(tail)
        )
    _emit(args, text)
    return 0


def _cmd_synth(args) -> int:
    if args.counts:
        counts = tuple(int(c) for c in args.counts.split(","))
    else:
        counts = (args.per_level,) * args.levels
    n_levels = len(counts)
    offsets = (
        tuple(float(v) for v in args.offsets.split(","))
        if args.offsets
        else default_offsets(n_levels)
    )
    spreads = (
        tuple(float(v) for v in args.spreads.split(","))
        if args.spreads
        else default_spreads(n_levels)
    )
    level_names = tuple(args.level_names.split(",")) if args.level_names else None
    spec = ConeSpec(
        dim=args.dim,
        counts=counts,
        offsets=offsets,
        spreads=spreads,
        direction_seed=args.direction_seed,
        noise_seed=args.noise_seed,
        level_names=level_names,
    )
    embeddings, labels, direction = generate_cone(spec)

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    write_embeddings(embeddings, out_dir / "embeddings.jsonl")
    names = labels.level_names
    with (out_dir / "labels.tsv").open("w", encoding="utf-8") as handle:
        for item_id, rank in zip(labels.ids, labels.ranks):
            handle.write(f"{item_id}\t{names[rank]}\n")
    (out_dir / "levels.txt").write_text("\n".join(names) + "\n", encoding="utf-8")
    direction_set = EmbeddingSet(("true_direction",), direction.reshape(1, -1))
    write_embeddings(direction_set, out_dir / "true_direction.jsonl")

    rows = [
        ["out_dir", str(out_dir)],
        ["files", "embeddings.jsonl labels.tsv levels.txt true_direction.jsonl"],
        ["items", str(len(embeddings))],
        ["dim", str(embeddings.dim)],
        ["levels", ",".join(names)],
    ]
    fmt = _resolve_format(args)
    text = _render_tsv(rows) if fmt == "tsv" else _render_table(rows)
    _emit(args, text)
    return 0


# ---------------------------------------------------------------------------
# parser


def _add_output_args(parser) -> None:
    parser.add_argument(
        "--format",
        choices=("tsv", "table"),
        default=None,
        help="output style (default: table on a terminal, tsv otherwise)",
    )
    parser.add_argument(
        "--precision",
        type=int,
        default=None,
        metavar="N",
        help="fixed decimals for table output (default: 6 significant digits)",
    )
    parser.add_argument("--out", default=None, metavar="PATH", help="write output to PATH")
    parser.add_argument("--verbose", action="store_true", help="log stages to stderr")


def _add_data_args(parser) -> None:
    parser.add_argument("--embeddings", required=True, metavar="PATH")
    parser.add_argument("--labels", required=True, metavar="PATH")
    parser.add_argument("--levels", required=True, metavar="PATH",
                        help="level-order file, easiest first")
    parser.add_argument(
        "--embedding-format", choices=("auto", "jsonl", "word2vec"), default="auto"
    )
    parser.add_argument(
        "--norm-policy", choices=("renormalize", "assert_unit"), default="renormalize"
    )
    parser.add_argument(
        "--on-missing",
        choices=("error", "drop"),
        default="error",
        help="what to do with labeled ids that have no embedding",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="conefit",
        description="Evaluate embedding spaces against ordinal difficulty annotations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fit", help="fit the difficulty direction")
    _add_data_args(p)
    p.add_argument("--mode", default="all",
                   help="all | adjacent | pair:EASIER:HARDER | item:ID")
    _add_output_args(p)
    p.set_defaults(func=_cmd_fit)

    p = sub.add_parser("score", help="compatibility score per level pair")
    _add_data_args(p)
    p.add_argument("--pairs", default="all", help="all | A:B[,C:D...]")
    p.add_argument("--model-name", default="embeddings", help="name used in the report")
    _add_output_args(p)
    p.set_defaults(func=_cmd_score)

    p = sub.add_parser("rank", help="rank embedding models by compatibility")
    p.add_argument(
        "--model", action="append", required=True, metavar="NAME=PATH",
        help="repeatable; one embedding file per model",
    )
    p.add_argument("--labels", required=True, metavar="PATH")
    p.add_argument("--levels", required=True, metavar="PATH")
    p.add_argument(
        "--embedding-format", choices=("auto", "jsonl", "word2vec"), default="auto"
    )
    p.add_argument(
        "--norm-policy", choices=("renormalize", "assert_unit"), default="renormalize"
    )
    p.add_argument("--on-missing", choices=("error", "drop"), default="error")
    p.add_argument("--pairs", default="all", help="all | A:B[,C:D...]")
    p.add_argument(
        "--layout", choices=("ranking", "matrix"), default="ranking",
        help="ranking: one row per (pair, model); matrix: model rows, pair columns",
    )
    _add_output_args(p)
    p.set_defaults(func=_cmd_rank)

    p = sub.add_parser("item-consistency", help="per-item annotation consistency")
    _add_data_args(p)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--anchor-id", default=None)
    group.add_argument("--anchor-level", default=None, metavar="LEVEL")
    p.add_argument("--sample", type=int, default=None, metavar="K",
                   help="sample K anchors from the anchor level")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--correlate-with", default=None, metavar="PATH",
                   help="id<TAB>value reference file; adds Spearman rho and permutation p")
    p.add_argument("--n-perm", type=int, default=9999)
    _add_output_args(p)
    p.set_defaults(func=_cmd_item_consistency)

    p = sub.add_parser("correlate", help="Spearman rho with permutation p-value")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.add_argument("--n-perm", type=int, default=9999)
    p.add_argument("--seed", type=int, default=0)
    _add_output_args(p)
    p.set_defaults(func=_cmd_correlate)

    p = sub.add_parser("baseline", help="linear SVM transfer baseline")
    _add_data_args(p)
    p.add_argument("--train-pair", required=True, metavar="A:B")
    p.add_argument("--test-pair", required=True, metavar="C:D")
    p.add_argument("--grid", default=",".join(str(c) for c in DEFAULT_GRID))
    p.add_argument("--epochs", type=int, default=DEFAULT_EPOCHS)
    p.add_argument("--train-frac", type=float, default=0.8,
                   help="train share of the train-pair items (rest is validation)")
    p.add_argument("--seed", type=int, default=0)
    _add_output_args(p)
    p.set_defaults(func=_cmd_baseline)

    p = sub.add_parser("synth", help="generate a synthetic cone dataset")
    p.add_argument("--out-dir", required=True, metavar="DIR")
    p.add_argument("--dim", type=int, default=16)
    p.add_argument("--levels", type=int, default=4)
    p.add_argument("--per-level", type=int, default=50)
    p.add_argument("--counts", default=None, help="comma list overriding --per-level")
    p.add_argument("--offsets", default=None, help="comma list, strictly increasing")
    p.add_argument("--spreads", default=None, help="comma list, non-decreasing")
    p.add_argument("--level-names", default=None, help="comma list of level names")
    p.add_argument("--direction-seed", type=int, default=1)
    p.add_argument("--noise-seed", type=int, default=2)
    _add_output_args(p)
    p.set_defaults(func=_cmd_synth)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            try:
                return args.func(args)
            finally:
                for item in caught:
                    print(f"warning: {item.message}", file=sys.stderr)
    except FileNotFoundError as exc:
        print(f"error: missing input file(s): {exc}", file=sys.stderr)
        return 2
    except ConefitError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
