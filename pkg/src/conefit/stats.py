"""Rank correlation with a seeded permutation test, and model ranking.

Spearman's rho is the Pearson correlation of mid-ranks (ties get the
average of the rank positions they span). Significance comes from a
two-sided permutation test rather than the t approximation: it is exact in
semantics, assumption free, and correct under the heavy ties that coarse
difficulty scales produce.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .direction import CompatibilityReport
from .errors import ConstantInputError, LengthMismatchError

_MIN_SAMPLES = 3


def _mid_ranks(x: np.ndarray) -> np.ndarray:
    """1-based ranks with ties assigned the average of their positions."""
    order = np.argsort(x, kind="stable")
    sorted_x = x[order]
    new_run = np.r_[True, sorted_x[1:] != sorted_x[:-1]]
    starts = np.flatnonzero(new_run)
    ends = np.r_[starts[1:], sorted_x.size]
    run_id = np.cumsum(new_run) - 1
    ranks = np.empty(x.size, dtype=np.float64)
    ranks[order] = ((starts + ends + 1) / 2.0)[run_id]
    return ranks


@dataclass(frozen=True)
class CorrelationResult:
    """Spearman rho with a permutation p-value.

    ``low_resolution`` flags samples so small that the whole permutation
    space (n! orderings) is not larger than the number of trials, where the
    achievable p-value floor is coarse.
    """

    rho: float
    n: int
    p_value: float
    n_perm: int
    seed: int
    low_resolution: bool = False
    method: str = "permutation"


def _checked_ranks(a, b) -> tuple[np.ndarray, np.ndarray]:
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.ndim != 1 or b.ndim != 1:
        raise ValueError("inputs must be 1-d sequences")
    if a.shape[0] != b.shape[0]:
        raise LengthMismatchError(f"lengths differ: {a.shape[0]} vs {b.shape[0]}")
    if a.shape[0] < _MIN_SAMPLES:
        raise LengthMismatchError(
            f"need at least {_MIN_SAMPLES} samples, got {a.shape[0]}"
        )
    for name, arr in (("a", a), ("b", b)):
        if np.all(arr == arr[0]):
            raise ConstantInputError(f"input {name} is constant")
    return _mid_ranks(a), _mid_ranks(b)


def _pearson(x: np.ndarray, y: np.ndarray) -> float:
    xc = x - x.mean()
    yc = y - y.mean()
    return float(np.dot(xc, yc) / (np.linalg.norm(xc) * np.linalg.norm(yc)))


def spearman_rho(a, b) -> float:
    """Spearman rank correlation with average-rank tie handling."""
    ra, rb = _checked_ranks(a, b)
    return _pearson(ra, rb)


def permutation_pvalue(a, b, n_perm: int = 9999, seed: int = 0) -> CorrelationResult:
    """Two-sided permutation test for Spearman's rho.

    ``b`` is permuted ``n_perm`` times with a seeded generator and
    ``p = (1 + #{|rho_perm| >= |rho_obs|}) / (1 + n_perm)``. Identical
    seeds give identical results.
    """
    if n_perm < 100:
        raise ValueError(f"n_perm must be at least 100, got {n_perm}")
    ra, rb = _checked_ranks(a, b)
    n = ra.shape[0]
    rho_obs = _pearson(ra, rb)

    # Ranks of a permutation of b are the same permutation of b's ranks, so
    # rank once and permute the rank vector.
    ra_c = ra - ra.mean()
    rb_c = rb - rb.mean()
    denom = np.linalg.norm(ra_c) * np.linalg.norm(rb_c)
    rng = np.random.default_rng(seed)
    hits = 0
    threshold = abs(rho_obs)
    for _ in range(n_perm):
        perm = rng.permutation(n)
        if abs(float(np.dot(ra_c, rb_c[perm])) / denom) >= threshold:
            hits += 1
    p = (1 + hits) / (1 + n_perm)
    low_resolution = n <= 20 and math.factorial(n) <= n_perm
    return CorrelationResult(
        rho=rho_obs,
        n=n,
        p_value=p,
        n_perm=n_perm,
        seed=seed,
        low_resolution=low_resolution,
    )


@dataclass(frozen=True)
class RankedModel:
    model_name: str
    score: float
    dim: int


def rank_models(
    reports: list[CompatibilityReport], level_pair: tuple[str, str]
) -> list[RankedModel]:
    """Order models by compatibility on one level pair, best first.

    Ties break lexicographically by model name; each entry carries the
    model dimension so equal-dimension comparisons are easy to filter.
    Output is invariant to the order of ``reports``.
    """
    easier_name, harder_name = level_pair
    ranked = [
        RankedModel(
            model_name=report.model_name,
            score=report.entry_for(easier_name, harder_name).score,
            dim=report.dim,
        )
        for report in reports
    ]
    ranked.sort(key=lambda entry: (-entry.score, entry.model_name))
    return ranked
