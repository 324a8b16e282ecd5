"""Synthetic cone-structured embeddings with known ground truth.

Each level sits at a base offset along a hidden unit direction, with
isotropic gaussian noise whose scale grows (weakly) with the level:
easier items are less diverse. An item of level ``l`` is

    normalize(offset_l * direction + spread_l * g),   g ~ N(0, I)

so the data form a cone on the unit sphere opening from the easy end
toward the hard end. Offsets must increase strictly with the level and
spreads must not decrease.

All randomness flows through the documented SplitMix64 streams in
:mod:`conefit.rng`: the direction comes from ``SplitMix64(direction_seed)``
and item ``i`` (in generation order) draws its noise from the stream
seeded by ``child_seeds(noise_seed, n_items)[i]``, so output is identical
across runs, platforms and implementations.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .data import EmbeddingSet, LabeledDataset
from .errors import InvalidSpecError
from .rng import child_seeds, gaussian_vector

DEFAULT_DIM = 16
DEFAULT_COUNTS = (50, 50, 50, 50)


def default_offsets(n_levels: int) -> tuple[float, ...]:
    """Offsets from -1.0 to 1.6 on a slightly convex curve.

    The curvature keeps every level-pair centroid gap shrinking when the
    noise grows, which a straight line does not (renormalization pulls the
    near-apex centroids toward the equator fast enough to widen their gap).
    """
    if n_levels == 1:
        return (1.0,)
    return tuple(
        -1.0 + 2.6 * (i / (n_levels - 1)) ** 1.25 for i in range(n_levels)
    )


def default_spreads(n_levels: int) -> tuple[float, ...]:
    """0.1 for the easiest level, growing by 0.1 per level."""
    return tuple((i + 1) / 10 for i in range(n_levels))


DEFAULT_OFFSETS = default_offsets(4)
DEFAULT_SPREADS = default_spreads(4)


@dataclass(frozen=True)
class ConeSpec:
    """Parameters of one synthetic cone dataset."""

    dim: int = DEFAULT_DIM
    counts: tuple[int, ...] = DEFAULT_COUNTS
    offsets: tuple[float, ...] = DEFAULT_OFFSETS
    spreads: tuple[float, ...] = DEFAULT_SPREADS
    direction_seed: int = 1
    noise_seed: int = 2
    level_names: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.dim < 1:
            raise InvalidSpecError("dim must be at least 1")
        n_levels = len(self.counts)
        if n_levels < 1:
            raise InvalidSpecError("at least one level is required")
        if len(self.offsets) != n_levels or len(self.spreads) != n_levels:
            raise InvalidSpecError("counts, offsets and spreads must align")
        if any(c < 1 for c in self.counts):
            raise InvalidSpecError("every level needs at least one item")
        if any(b <= a for a, b in zip(self.offsets, self.offsets[1:])):
            raise InvalidSpecError("offsets must be strictly increasing")
        if any(s < 0 for s in self.spreads):
            raise InvalidSpecError("spreads must be non-negative")
        if any(b < a for a, b in zip(self.spreads, self.spreads[1:])):
            raise InvalidSpecError("spreads must be non-decreasing")
        if self.level_names is not None and len(self.level_names) != n_levels:
            raise InvalidSpecError("level_names must name every level")

    @property
    def n_levels(self) -> int:
        return len(self.counts)

    @property
    def n_items(self) -> int:
        return int(sum(self.counts))

    def resolved_level_names(self) -> tuple[str, ...]:
        if self.level_names is not None:
            return tuple(self.level_names)
        return tuple(f"L{i + 1}" for i in range(self.n_levels))

    def scaled_spreads(self, factor: float) -> "ConeSpec":
        """Same spec with every spread multiplied by ``factor``."""
        return replace(self, spreads=tuple(s * factor for s in self.spreads))


def true_direction(spec: ConeSpec) -> np.ndarray:
    """The hidden unit direction implied by ``direction_seed``."""
    raw = np.asarray(gaussian_vector(spec.dim, spec.direction_seed))
    norm = float(np.linalg.norm(raw))
    if norm < 1e-12:
        raise InvalidSpecError("direction seed produced a zero vector")
    return raw / norm


def generate_cone(spec: ConeSpec) -> tuple[EmbeddingSet, LabeledDataset, np.ndarray]:
    """Generate (embeddings, labels, hidden direction) for ``spec``.

    Item ids are ``{level_name}-{index:04d}`` in generation order (levels
    easiest first). Same spec and seeds give bit-identical output.
    """
    direction = true_direction(spec)
    names = spec.resolved_level_names()
    seeds = child_seeds(spec.noise_seed, spec.n_items)

    ids: list[str] = []
    ranks: list[int] = []
    rows = np.empty((spec.n_items, spec.dim), dtype=np.float64)
    g = 0
    for rank, (count, offset, spread) in enumerate(
        zip(spec.counts, spec.offsets, spec.spreads)
    ):
        for i in range(count):
            noise = np.asarray(gaussian_vector(spec.dim, seeds[g]))
            vec = offset * direction + spread * noise
            norm = float(np.linalg.norm(vec))
            if norm < 1e-12:
                raise InvalidSpecError(
                    f"level {names[rank]!r} produced a zero vector "
                    "(offset and spread cannot both vanish)"
                )
            rows[g] = vec / norm
            ids.append(f"{names[rank]}-{i:04d}")
            ranks.append(rank)
            g += 1

    embeddings = EmbeddingSet.from_matrix(ids, rows, "renormalize")
    labels = LabeledDataset(tuple(ids), np.asarray(ranks, dtype=np.int64), names)
    return embeddings, labels, direction
