"""conefit: evaluate embedding spaces against ordinal difficulty annotations.

The core operation fits, in closed form, the unit direction along which
projections order items by annotated difficulty; the mean slack of that
fit is a compatibility score for (embedding space, annotation) pairs and
reduces to the distance between level centroids. A seeded linear SVM
provides the transfer baseline, and a synthetic cone generator supplies
ground truth for recovery tests.
"""

from .constraints import (
    ADJACENT_LEVELS,
    ALL_CROSS_LEVEL,
    ConstraintSet,
    LevelPair,
    PerItem,
    ValidationReport,
    build_constraints,
    validate_constraints,
)
from .data import EmbeddingSet, LabeledDataset
from .direction import (
    CompatibilityReport,
    DifficultyDirection,
    PairScore,
    compatibility_report,
    compatibility_score,
    fit_direction,
    item_consistency,
    oracle_fit_direction,
    project,
)
from .io import (
    JoinResult,
    RawEmbeddingFile,
    join,
    read_embeddings,
    read_labels,
    read_level_order,
    write_embeddings,
)
from .stats import (
    CorrelationResult,
    RankedModel,
    permutation_pvalue,
    rank_models,
    spearman_rho,
)
from .svm import (
    LinearModel,
    TuneResult,
    accuracy,
    stratified_split,
    train_linear_svm,
    tune_and_evaluate,
)
from .synth import ConeSpec, default_offsets, default_spreads, generate_cone, true_direction
from . import errors

__version__ = "0.1.0"

_LAZY_ESTIMATORS = ("ConeDirection", "PegasosSVC")


def __getattr__(name):
    # the scikit-learn front ends live behind a lazy import so that the
    # command line tool does not pay for the sklearn import
    if name in _LAZY_ESTIMATORS:
        from . import estimators

        return getattr(estimators, name)
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")

__all__ = [
    "ADJACENT_LEVELS",
    "ALL_CROSS_LEVEL",
    "CompatibilityReport",
    "ConeDirection",
    "ConeSpec",
    "ConstraintSet",
    "CorrelationResult",
    "DifficultyDirection",
    "EmbeddingSet",
    "JoinResult",
    "LabeledDataset",
    "LevelPair",
    "LinearModel",
    "PairScore",
    "PegasosSVC",
    "PerItem",
    "RankedModel",
    "RawEmbeddingFile",
    "TuneResult",
    "ValidationReport",
    "accuracy",
    "build_constraints",
    "compatibility_report",
    "compatibility_score",
    "default_offsets",
    "default_spreads",
    "errors",
    "fit_direction",
    "generate_cone",
    "item_consistency",
    "join",
    "oracle_fit_direction",
    "permutation_pvalue",
    "project",
    "rank_models",
    "read_embeddings",
    "read_labels",
    "read_level_order",
    "spearman_rho",
    "stratified_split",
    "train_linear_svm",
    "true_direction",
    "tune_and_evaluate",
    "validate_constraints",
    "write_embeddings",
]
