"""Conversion of ordinal difficulty levels into pairwise order constraints.

A level annotation "i is easier than j" becomes a directed edge i -> j; the
full ordinal structure of a dataset is equivalent to the directed graph of
all such edges. Four modes control which edges are materialized:

* ``"all"``: every pair with rank(i) < rank(j). Default, since the
  transitive closure carries the complete order information.
* ``"adjacent"``: only pairs whose ranks are consecutive in the declared
  level order (rank(j) == rank(i) + 1).
* ``LevelPair(a, b)``: every pair with rank(i) == a and rank(j) == b.
* ``PerItem(anchor_id)``: the anchor against every item of strictly lower
  and strictly higher rank.

Items sharing a level never generate a constraint.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .data import EmbeddingSet, LabeledDataset
from .errors import EmptyConstraintSetError, SingleLevelError, UnknownIdError

ALL_CROSS_LEVEL = "all"
ADJACENT_LEVELS = "adjacent"


@dataclass(frozen=True)
class LevelPair:
    """Constraints between exactly two ranks, easier < harder."""

    easier: int
    harder: int

    def __post_init__(self):
        if self.easier >= self.harder:
            raise ValueError(
                f"LevelPair requires easier < harder, got ({self.easier}, {self.harder})"
            )

    def describe(self) -> str:
        return f"pair({self.easier},{self.harder})"


@dataclass(frozen=True)
class PerItem:
    """Constraints anchoring one item against all lower and higher items."""

    anchor_id: str

    def describe(self) -> str:
        return f"item({self.anchor_id})"


ConstraintMode = Union[str, LevelPair, PerItem]


@dataclass(frozen=True, eq=False)
class ConstraintSet:
    """K pairwise order constraints as parallel index arrays.

    ``easier[k]`` and ``harder[k]`` index rows of the embedding set the
    constraints were built against. Sets produced by
    :func:`build_constraints` are duplicate-free, contain no self pairs,
    respect the annotated order, and are sorted by (easier, harder);
    hand-built sets may violate those guarantees, which is what
    :func:`validate_constraints` reports on.
    """

    easier: np.ndarray
    harder: np.ndarray
    mode: str = "explicit"

    def __post_init__(self):
        easier = np.asarray(self.easier, dtype=np.int64)
        harder = np.asarray(self.harder, dtype=np.int64)
        if easier.ndim != 1 or harder.ndim != 1 or easier.shape != harder.shape:
            raise ValueError("easier and harder must be 1-d arrays of equal length")
        easier = easier.copy()
        harder = harder.copy()
        easier.flags.writeable = False
        harder.flags.writeable = False
        object.__setattr__(self, "easier", easier)
        object.__setattr__(self, "harder", harder)

    def __len__(self) -> int:
        return int(self.easier.shape[0])

    @property
    def pairs(self) -> list[tuple[int, int]]:
        return [(int(i), int(j)) for i, j in zip(self.easier, self.harder)]

    @classmethod
    def from_pairs(cls, pairs, mode: str = "explicit") -> "ConstraintSet":
        pairs = list(pairs)
        easier = np.asarray([p[0] for p in pairs], dtype=np.int64)
        harder = np.asarray([p[1] for p in pairs], dtype=np.int64)
        return cls(easier, harder, mode)


def _cross_pairs(
    ranks: np.ndarray, emb_idx: np.ndarray, rank_pairs: list[tuple[int, int]]
) -> tuple[np.ndarray, np.ndarray]:
    easier_parts: list[np.ndarray] = []
    harder_parts: list[np.ndarray] = []
    for a, b in rank_pairs:
        pos_a = np.flatnonzero(ranks == a)
        pos_b = np.flatnonzero(ranks == b)
        if not pos_a.size or not pos_b.size:
            continue
        grid_a, grid_b = np.meshgrid(emb_idx[pos_a], emb_idx[pos_b], indexing="ij")
        easier_parts.append(grid_a.ravel())
        harder_parts.append(grid_b.ravel())
    if not easier_parts:
        return np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64)
    return np.concatenate(easier_parts), np.concatenate(harder_parts)


def build_constraints(
    dataset: LabeledDataset,
    embeddings: EmbeddingSet,
    mode: ConstraintMode = ALL_CROSS_LEVEL,
) -> ConstraintSet:
    """Materialize the pairwise constraints implied by ``mode``.

    Indices refer to rows of ``embeddings``; every labeled id must have an
    embedding. The pair list is sorted by (easier, harder) so identical
    inputs produce byte-identical output.

    Raises ``UnknownIdError`` for labels without embeddings,
    ``SingleLevelError`` if fewer than two distinct levels carry items and
    ``EmptyConstraintSetError`` if the mode yields zero pairs.
    """
    emb_idx = np.asarray(
        [embeddings.index_of(item_id) for item_id in dataset.ids], dtype=np.int64
    )
    ranks = dataset.ranks
    present = dataset.present_ranks()
    if len(present) < 2:
        raise SingleLevelError(
            f"constraint building needs at least 2 levels, found {len(present)}"
        )

    if mode == ALL_CROSS_LEVEL:
        rank_pairs = [(a, b) for a in present for b in present if a < b]
        easier, harder = _cross_pairs(ranks, emb_idx, rank_pairs)
        label = ALL_CROSS_LEVEL
    elif mode == ADJACENT_LEVELS:
        rank_pairs = [(a, a + 1) for a in present if a + 1 in present]
        easier, harder = _cross_pairs(ranks, emb_idx, rank_pairs)
        label = ADJACENT_LEVELS
    elif isinstance(mode, LevelPair):
        easier, harder = _cross_pairs(ranks, emb_idx, [(mode.easier, mode.harder)])
        label = mode.describe()
    elif isinstance(mode, PerItem):
        anchor_pos = dataset.ids.index(mode.anchor_id) if mode.anchor_id in dataset else None
        if anchor_pos is None:
            raise UnknownIdError(f"anchor {mode.anchor_id!r} is not labeled")
        anchor_idx = emb_idx[anchor_pos]
        anchor_rank = int(ranks[anchor_pos])
        lower = emb_idx[np.flatnonzero(ranks < anchor_rank)]
        higher = emb_idx[np.flatnonzero(ranks > anchor_rank)]
        easier = np.concatenate([lower, np.full(higher.shape, anchor_idx)])
        harder = np.concatenate([np.full(lower.shape, anchor_idx), higher])
        label = mode.describe()
    else:
        raise ValueError(f"unknown constraint mode {mode!r}")

    if easier.size == 0:
        raise EmptyConstraintSetError(f"mode {label} produced no constraints")
    order = np.lexsort((harder, easier))
    return ConstraintSet(easier[order], harder[order], label)


@dataclass(frozen=True)
class ValidationReport:
    """Findings from a pure structural check of a constraint set."""

    n_pairs: int
    n_items: int
    out_of_bounds: tuple[int, ...]
    self_pairs: tuple[int, ...]
    duplicates: tuple[tuple[int, int], ...]
    cycle_nodes: tuple[int, ...]

    @property
    def has_cycle(self) -> bool:
        return bool(self.cycle_nodes)

    @property
    def ok(self) -> bool:
        return not (
            self.out_of_bounds or self.self_pairs or self.duplicates or self.cycle_nodes
        )


def validate_constraints(
    constraints: ConstraintSet, embeddings: EmbeddingSet
) -> ValidationReport:
    """Report index bounds, duplicate pairs and cycles; never mutates.

    A cycle in the directed pair graph means the annotations contradict
    each other. The relaxed optimization stays well posed on such input,
    so this is a finding, not an error.
    """
    n = len(embeddings)
    easier = constraints.easier
    harder = constraints.harder
    in_bounds = (easier >= 0) & (easier < n) & (harder >= 0) & (harder < n)
    out_of_bounds = tuple(int(k) for k in np.flatnonzero(~in_bounds))
    self_pairs = tuple(int(k) for k in np.flatnonzero(easier == harder))

    seen: set[tuple[int, int]] = set()
    duplicates: list[tuple[int, int]] = []
    for i, j in zip(easier.tolist(), harder.tolist()):
        if (i, j) in seen:
            duplicates.append((i, j))
        seen.add((i, j))

    # Kahn's algorithm on the valid, non-self edges; whatever cannot be
    # topologically ordered sits on a cycle.
    edges = {
        (int(i), int(j))
        for k, (i, j) in enumerate(zip(easier, harder))
        if k not in out_of_bounds and i != j
    }
    nodes = sorted({i for i, _ in edges} | {j for _, j in edges})
    succ: dict[int, list[int]] = {v: [] for v in nodes}
    indeg: dict[int, int] = {v: 0 for v in nodes}
    for i, j in sorted(edges):
        succ[i].append(j)
        indeg[j] += 1
    queue = sorted(v for v in nodes if indeg[v] == 0)
    removed = 0
    while queue:
        v = queue.pop(0)
        removed += 1
        for u in succ[v]:
            indeg[u] -= 1
            if indeg[u] == 0:
                queue.append(u)
    cycle_nodes = tuple(sorted(v for v in nodes if indeg[v] > 0))

    return ValidationReport(
        n_pairs=len(constraints),
        n_items=n,
        out_of_bounds=out_of_bounds,
        self_pairs=self_pairs,
        duplicates=tuple(sorted(set(duplicates))),
        cycle_nodes=cycle_nodes,
    )
