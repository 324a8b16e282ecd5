import subprocess
import sys

import numpy as np
import pytest

from conefit import EmbeddingSet, LabeledDataset


def pytest_addoption(parser):
    parser.addoption(
        "--update-golden",
        action="store_true",
        default=False,
        help="rewrite the golden files instead of comparing against them",
    )


@pytest.fixture
def update_golden(request):
    return request.config.getoption("--update-golden")


def unit_rows(matrix):
    matrix = np.asarray(matrix, dtype=np.float64)
    return matrix / np.linalg.norm(matrix, axis=1, keepdims=True)


def make_embeddings(matrix, prefix="i"):
    matrix = np.asarray(matrix, dtype=np.float64)
    ids = [f"{prefix}{k}" for k in range(matrix.shape[0])]
    return EmbeddingSet.from_matrix(ids, matrix, "renormalize")


def make_dataset(ranks, level_names=None, prefix="i"):
    ranks = np.asarray(ranks, dtype=np.int64)
    if level_names is None:
        level_names = tuple(f"L{r + 1}" for r in range(int(ranks.max()) + 1))
    ids = tuple(f"{prefix}{k}" for k in range(ranks.shape[0]))
    return LabeledDataset(ids, ranks, tuple(level_names))


def random_instance(seed, n=50, dim=8, n_levels=3):
    """Random unit embeddings with random level ranks."""
    rng = np.random.default_rng(seed)
    matrix = rng.standard_normal((n, dim))
    ranks = rng.integers(0, n_levels, size=n)
    while np.unique(ranks).size < 2:  # pragma: no cover - vanishingly rare
        ranks = rng.integers(0, n_levels, size=n)
    return make_embeddings(matrix), make_dataset(ranks)


def run_cli(args, cwd):
    """Run the CLI in a subprocess; returns CompletedProcess with bytes."""
    return subprocess.run(
        [sys.executable, "-m", "conefit", *args],
        cwd=cwd,
        capture_output=True,
    )


@pytest.fixture
def one_pair_files(tmp_path):
    """Embeddings (1,0) easier than (0,1), two levels."""
    (tmp_path / "emb.jsonl").write_text(
        '{"id": "easy", "vector": [1.0, 0.0]}\n{"id": "hard", "vector": [0.0, 1.0]}\n',
        encoding="utf-8",
    )
    (tmp_path / "labels.tsv").write_text("easy\tL1\nhard\tL2\n", encoding="utf-8")
    (tmp_path / "levels.txt").write_text("L1\nL2\n", encoding="utf-8")
    return tmp_path
