"""Domain containers: id-keyed unit embeddings and ordinal difficulty labels.

Both types are immutable after construction and safe to share across
threads. Item ids (not positions) are the join key between the two, so
embedding files and label files may be ordered independently.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from ._validation import as_float_matrix, unitize_rows
from .errors import DuplicateIdError, UnknownIdError

_UNIT_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class EmbeddingSet:
    """Ordered collection of unit-norm vectors keyed by item id.

    Construct via :meth:`from_matrix` or :meth:`from_items`, which apply a
    norm policy (``"renormalize"`` scales rows, ``"assert_unit"`` rejects
    rows off unit norm by more than 1e-6). After construction every row has
    Euclidean norm within 1e-9 of 1 and ids are unique and non-empty;
    ``norm_policy`` records how the rows were brought to unit norm.
    """

    ids: tuple[str, ...]
    vectors: np.ndarray
    norm_policy: str = "renormalize"

    def __post_init__(self):
        vectors = as_float_matrix(self.vectors, "vectors")
        if len(self.ids) != vectors.shape[0]:
            raise ValueError(
                f"{len(self.ids)} ids for {vectors.shape[0]} vectors"
            )
        if vectors.shape[1] < 1:
            raise ValueError("vectors must have at least one dimension")
        index: dict[str, int] = {}
        for pos, item_id in enumerate(self.ids):
            if not isinstance(item_id, str) or not item_id:
                raise ValueError(f"ids must be non-empty strings, got {item_id!r}")
            if item_id in index:
                raise DuplicateIdError(f"duplicate item id {item_id!r}")
            index[item_id] = pos
        if vectors.shape[0]:
            norms = np.linalg.norm(vectors, axis=1)
            worst = np.abs(norms - 1.0).max()
            if worst > _UNIT_TOL:
                raise ValueError(
                    f"vectors must be unit norm (worst deviation {worst:.3g}); "
                    "construct via EmbeddingSet.from_matrix with a norm policy"
                )
        vectors = vectors.copy()
        vectors.flags.writeable = False
        object.__setattr__(self, "vectors", vectors)
        object.__setattr__(self, "ids", tuple(self.ids))
        object.__setattr__(self, "_index", index)

    @classmethod
    def from_matrix(
        cls,
        ids: Sequence[str],
        matrix,
        norm_policy: str = "renormalize",
    ) -> "EmbeddingSet":
        matrix = as_float_matrix(matrix, "vectors")
        return cls(
            tuple(ids), unitize_rows(matrix, norm_policy, ids=list(ids)), norm_policy
        )

    @classmethod
    def from_items(
        cls,
        items: Iterable[tuple[str, Sequence[float]]],
        norm_policy: str = "renormalize",
    ) -> "EmbeddingSet":
        pairs = list(items)
        if not pairs:
            raise ValueError("cannot build an EmbeddingSet from zero items")
        ids = [item_id for item_id, _ in pairs]
        matrix = np.asarray([vec for _, vec in pairs], dtype=np.float64)
        return cls.from_matrix(ids, matrix, norm_policy)

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]

    def __len__(self) -> int:
        return len(self.ids)

    def __contains__(self, item_id: str) -> bool:
        return item_id in self._index

    def index_of(self, item_id: str) -> int:
        try:
            return self._index[item_id]
        except KeyError:
            raise UnknownIdError(f"no embedding for id {item_id!r}") from None

    def vector(self, item_id: str) -> np.ndarray:
        return self.vectors[self.index_of(item_id)]

    def subset(self, ids: Sequence[str]) -> "EmbeddingSet":
        """Restriction to ``ids`` in the given order (vectors bit-identical)."""
        rows = [self.index_of(item_id) for item_id in ids]
        return EmbeddingSet(tuple(ids), self.vectors[rows], self.norm_policy)


@dataclass(frozen=True, eq=False)
class LabeledDataset:
    """Item ids joined with ordinal difficulty ranks.

    ``level_names`` lists the annotation scale easiest first; an item's rank
    is its level's position in that list. Every id maps to exactly one rank.
    """

    ids: tuple[str, ...]
    ranks: np.ndarray
    level_names: tuple[str, ...]

    def __post_init__(self):
        ranks = np.asarray(self.ranks, dtype=np.int64)
        if ranks.ndim != 1 or ranks.shape[0] != len(self.ids):
            raise ValueError("ranks must be a 1-d array aligned with ids")
        if len(set(self.level_names)) != len(self.level_names):
            raise ValueError("level names must be unique")
        if not self.level_names:
            raise ValueError("level order must name at least one level")
        if ranks.size and (ranks.min() < 0 or ranks.max() >= len(self.level_names)):
            raise ValueError("rank out of range of the level order")
        index: dict[str, int] = {}
        for pos, item_id in enumerate(self.ids):
            if not isinstance(item_id, str) or not item_id:
                raise ValueError(f"ids must be non-empty strings, got {item_id!r}")
            if item_id in index:
                raise DuplicateIdError(f"duplicate label for id {item_id!r}")
            index[item_id] = pos
        ranks = ranks.copy()
        ranks.flags.writeable = False
        object.__setattr__(self, "ranks", ranks)
        object.__setattr__(self, "ids", tuple(self.ids))
        object.__setattr__(self, "level_names", tuple(self.level_names))
        object.__setattr__(self, "_index", index)

    @classmethod
    def from_pairs(
        cls,
        labels: Iterable[tuple[str, str]],
        level_names: Sequence[str],
    ) -> "LabeledDataset":
        """Build from (id, level name) pairs resolved against ``level_names``."""
        level_rank = {name: rank for rank, name in enumerate(level_names)}
        ids: list[str] = []
        ranks: list[int] = []
        for item_id, level in labels:
            if level not in level_rank:
                from .errors import UnknownLevelError

                raise UnknownLevelError(
                    f"level {level!r} not in level order {list(level_names)}"
                )
            ids.append(item_id)
            ranks.append(level_rank[level])
        return cls(tuple(ids), np.asarray(ranks, dtype=np.int64), tuple(level_names))

    def __len__(self) -> int:
        return len(self.ids)

    def __contains__(self, item_id: str) -> bool:
        return item_id in self._index

    def rank_of(self, item_id: str) -> int:
        try:
            return int(self.ranks[self._index[item_id]])
        except KeyError:
            raise UnknownIdError(f"no label for id {item_id!r}") from None

    def level_of(self, item_id: str) -> str:
        return self.level_names[self.rank_of(item_id)]

    def present_ranks(self) -> tuple[int, ...]:
        """Distinct ranks that actually carry items, ascending."""
        return tuple(int(r) for r in np.unique(self.ranks))

    def positions_at(self, rank: int) -> np.ndarray:
        """Positions (into ``ids``) of the items annotated with ``rank``."""
        return np.flatnonzero(self.ranks == rank)

    def rank_by_name(self, level: str) -> int:
        try:
            return self.level_names.index(level)
        except ValueError:
            from .errors import UnknownLevelError

            raise UnknownLevelError(
                f"level {level!r} not in level order {list(self.level_names)}"
            ) from None

    def subset(self, ids: Sequence[str]) -> "LabeledDataset":
        rows = [self._index[item_id] for item_id in ids]
        return LabeledDataset(tuple(ids), self.ranks[rows], self.level_names)
