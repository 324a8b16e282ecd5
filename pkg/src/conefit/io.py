"""File ingestion: embedding files, label files and the id join.

Two embedding formats are supported:

* JSON lines: one object ``{"id": ..., "vector": [...]}`` per line. Blank
  lines and lines starting with ``#`` are skipped, so exported files may
  carry a comment header.
* word2vec text: a ``"N D"`` header line followed by N whitespace-separated
  ``token v1 ... vD`` rows. Tokens cannot contain whitespace; ids with
  spaces need the JSON lines format.

Labels are tab-separated ``id<TAB>level_name`` rows resolved against a
level-order file (one level name per line, easiest first). All files are
UTF-8 and floats use the decimal point regardless of locale.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .data import EmbeddingSet, LabeledDataset
from .errors import (
    DimensionMismatchError,
    DuplicateIdError,
    EmptyFileError,
    ParseError,
    UnknownIdError,
)

FORMATS = ("auto", "jsonl", "word2vec")


@dataclass(frozen=True)
class RawEmbeddingFile:
    """An embedding file plus how to read it."""

    path: Path
    format: str = "auto"
    declared_dim: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "path", Path(self.path))
        if self.format not in FORMATS:
            raise ValueError(f"format must be one of {FORMATS}")


def _detect_format(lines: list[str], path: Path) -> str:
    for line in lines:
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        return "jsonl" if stripped.startswith("{") else "word2vec"
    raise EmptyFileError(f"{path}: no data rows")


def _parse_jsonl(lines: list[str], path: Path, declared_dim: int | None):
    ids: list[str] = []
    rows: list[list[float]] = []
    dim = declared_dim
    for lineno, line in enumerate(lines, 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        try:
            obj = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}:{lineno}: invalid JSON ({exc.msg})") from None
        if (
            not isinstance(obj, dict)
            or not isinstance(obj.get("id"), str)
            or not isinstance(obj.get("vector"), list)
        ):
            raise ParseError(
                f'{path}:{lineno}: expected an object {{"id": str, "vector": [...]}}'
            )
        vector = obj["vector"]
        if not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in vector):
            raise ParseError(f"{path}:{lineno}: vector entries must be numbers")
        if dim is None:
            dim = len(vector)
        elif len(vector) != dim:
            raise DimensionMismatchError(
                f"{path}:{lineno}: vector has {len(vector)} dims, expected {dim}"
            )
        ids.append(obj["id"])
        rows.append([float(v) for v in vector])
    return ids, rows


def _parse_word2vec(lines: list[str], path: Path, declared_dim: int | None):
    data = [(no, ln.rstrip("\n")) for no, ln in enumerate(lines, 1) if ln.strip()]
    if not data:
        raise EmptyFileError(f"{path}: no data rows")
    header_no, header = data[0]
    fields = header.split()
    if len(fields) != 2 or not all(f.isdigit() for f in fields):
        raise ParseError(f'{path}:{header_no}: expected "N D" header, got {header!r}')
    count, dim = int(fields[0]), int(fields[1])
    if declared_dim is not None and dim != declared_dim:
        raise DimensionMismatchError(
            f"{path}:{header_no}: header declares dim {dim}, expected {declared_dim}"
        )
    body = data[1:]
    if len(body) != count:
        raise ParseError(
            f"{path}: header declares {count} rows, found {len(body)}"
        )
    ids: list[str] = []
    rows: list[list[float]] = []
    for lineno, line in body:
        parts = line.split()
        if len(parts) != dim + 1:
            raise DimensionMismatchError(
                f"{path}:{lineno}: expected token plus {dim} values, got {len(parts)} fields"
            )
        try:
            rows.append([float(v) for v in parts[1:]])
        except ValueError:
            raise ParseError(f"{path}:{lineno}: non-numeric vector entry") from None
        ids.append(parts[0])
    return ids, rows


def read_embeddings(
    file: RawEmbeddingFile | str | Path,
    norm_policy: str = "renormalize",
) -> EmbeddingSet:
    """Parse an embedding file and enforce the unit-norm policy.

    The default policy renormalizes, since published embedding dumps are
    rarely unit norm; ``assert_unit`` instead rejects any row whose norm
    deviates from 1 by more than 1e-6.
    """
    if not isinstance(file, RawEmbeddingFile):
        file = RawEmbeddingFile(Path(file))
    try:
        lines = file.path.read_text(encoding="utf-8").splitlines()
    except FileNotFoundError:
        raise ParseError(f"{file.path}: file not found") from None
    fmt = file.format if file.format != "auto" else _detect_format(lines, file.path)
    if fmt == "jsonl":
        ids, rows = _parse_jsonl(lines, file.path, file.declared_dim)
    else:
        ids, rows = _parse_word2vec(lines, file.path, file.declared_dim)
    if not rows:
        raise EmptyFileError(f"{file.path}: no data rows")
    seen: set[str] = set()
    for item_id in ids:
        if item_id in seen:
            raise DuplicateIdError(f"{file.path}: duplicate id {item_id!r}")
        seen.add(item_id)
    matrix = np.asarray(rows, dtype=np.float64)
    return EmbeddingSet.from_matrix(ids, matrix, norm_policy)


def write_embeddings(embeddings: EmbeddingSet, path: str | Path) -> None:
    """Write JSON lines with shortest round-tripping float representations."""
    path = Path(path)
    with path.open("w", encoding="utf-8") as handle:
        for item_id, row in zip(embeddings.ids, embeddings.vectors):
            vector = ", ".join(repr(float(v)) for v in row)
            handle.write('{"id": %s, "vector": [%s]}\n' % (json.dumps(item_id), vector))


def read_level_order(path: str | Path) -> tuple[str, ...]:
    """One level name per line, easiest first."""
    path = Path(path)
    names = [line.strip() for line in path.read_text(encoding="utf-8").splitlines()]
    names = [name for name in names if name]
    if not names:
        raise EmptyFileError(f"{path}: no level names")
    if len(set(names)) != len(names):
        raise ParseError(f"{path}: duplicate level names")
    return tuple(names)


def read_labels(
    path: str | Path, level_order: Sequence[str] | str | Path
) -> LabeledDataset:
    """Tab-separated ``id<TAB>level_name`` rows resolved against the level order."""
    if isinstance(level_order, (str, Path)):
        level_order = read_level_order(level_order)
    path = Path(path)
    pairs: list[tuple[str, str]] = []
    seen: set[str] = set()
    for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip():
            continue
        parts = line.rstrip("\n").split("\t")
        if len(parts) != 2 or not parts[0]:
            raise ParseError(
                f"{path}:{lineno}: expected 'id<TAB>level_name', got {line!r}"
            )
        item_id, level = parts[0], parts[1].strip()
        if item_id in seen:
            raise DuplicateIdError(f"{path}:{lineno}: duplicate id {item_id!r}")
        seen.add(item_id)
        pairs.append((item_id, level))
    if not pairs:
        raise EmptyFileError(f"{path}: no label rows")
    return LabeledDataset.from_pairs(pairs, tuple(level_order))


@dataclass(frozen=True)
class JoinResult:
    """Embeddings and labels restricted to their common ids, sorted by id."""

    embeddings: EmbeddingSet
    labels: LabeledDataset
    dropped_label_ids: tuple[str, ...]
    dropped_embedding_ids: tuple[str, ...]


def join(
    embeddings: EmbeddingSet,
    labels: LabeledDataset,
    on_missing: str = "error",
) -> JoinResult:
    """Intersect the two id sets deterministically (sorted by id).

    ``on_missing="error"`` raises ``UnknownIdError`` if any labeled id has
    no embedding; ``"drop"`` drops and warns instead. Embeddings without a
    label are always dropped silently into the report counts.
    """
    if on_missing not in ("error", "drop"):
        raise ValueError("on_missing must be 'error' or 'drop'")
    emb_ids = set(embeddings.ids)
    label_ids = set(labels.ids)
    common = sorted(emb_ids & label_ids)
    dropped_labels = tuple(sorted(label_ids - emb_ids))
    dropped_embeddings = tuple(sorted(emb_ids - label_ids))
    if dropped_labels and on_missing == "error":
        preview = ", ".join(repr(i) for i in dropped_labels[:5])
        raise UnknownIdError(
            f"{len(dropped_labels)} labeled id(s) have no embedding: {preview}"
            + ("..." if len(dropped_labels) > 5 else "")
        )
    if dropped_labels:
        warnings.warn(
            f"dropped {len(dropped_labels)} labeled item(s) without embeddings",
            RuntimeWarning,
            stacklevel=2,
        )
    if not common:
        empty_vectors = np.empty((0, embeddings.dim), dtype=np.float64)
        return JoinResult(
            EmbeddingSet((), empty_vectors),
            LabeledDataset((), np.empty(0, dtype=np.int64), labels.level_names),
            dropped_labels,
            dropped_embeddings,
        )
    return JoinResult(
        embeddings.subset(common),
        labels.subset(common),
        dropped_labels,
        dropped_embeddings,
    )
