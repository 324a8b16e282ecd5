import math

import numpy as np
import pytest

from conefit import (
    CompatibilityReport,
    PairScore,
    permutation_pvalue,
    rank_models,
    spearman_rho,
)
from conefit.errors import ConstantInputError, LengthMismatchError, MissingPairError


def brute_force_spearman(a, b):
    """Definitional oracle: mid-ranks by sorting, then Pearson by hand."""

    def ranks(values):
        order = sorted(range(len(values)), key=lambda k: values[k])
        out = [0.0] * len(values)
        i = 0
        while i < len(values):
            j = i + 1
            while j < len(values) and values[order[j]] == values[order[i]]:
                j += 1
            avg = (i + j + 1) / 2.0  # positions i+1 .. j averaged
            for k in range(i, j):
                out[order[k]] = avg
            i = j
        return out

    ra, rb = ranks(list(a)), ranks(list(b))
    ma = sum(ra) / len(ra)
    mb = sum(rb) / len(rb)
    cov = sum((x - ma) * (y - mb) for x, y in zip(ra, rb))
    va = math.sqrt(sum((x - ma) ** 2 for x in ra))
    vb = math.sqrt(sum((y - mb) ** 2 for y in rb))
    return cov / (va * vb)


def test_perfect_monotone():
    assert spearman_rho([1, 2, 3], [10, 20, 30]) == pytest.approx(1.0, abs=1e-15)
    assert spearman_rho([1, 2, 3], [30, 20, 10]) == pytest.approx(-1.0, abs=1e-15)


def test_tied_case_against_oracle():
    a = [1.0, 2.0, 2.0, 4.0]
    b = [1.0, 3.0, 2.0, 4.0]
    expected = brute_force_spearman(a, b)
    assert expected == pytest.approx(3.0 / math.sqrt(10.0), abs=1e-15)
    assert spearman_rho(a, b) == pytest.approx(expected, abs=1e-12)


def test_random_cases_against_oracle():
    rng = np.random.default_rng(5)
    for _ in range(50):
        n = int(rng.integers(3, 40))
        a = rng.integers(0, 6, size=n).astype(float)  # heavy ties
        b = rng.standard_normal(n)
        if np.all(a == a[0]):
            continue
        assert spearman_rho(a, b) == pytest.approx(
            brute_force_spearman(a, b), abs=1e-12
        )


def test_monotone_transform_invariance():
    rng = np.random.default_rng(9)
    a = rng.standard_normal(60)
    b = rng.standard_normal(60)
    base = spearman_rho(a, b)
    assert spearman_rho(a**3, b) == pytest.approx(base, abs=1e-12)
    assert spearman_rho(a, np.exp(b)) == pytest.approx(base, abs=1e-12)


def test_symmetry():
    rng = np.random.default_rng(13)
    a = rng.standard_normal(25)
    b = rng.standard_normal(25)
    assert spearman_rho(a, b) == spearman_rho(b, a)


def test_input_errors():
    with pytest.raises(LengthMismatchError):
        spearman_rho([1, 2, 3], [1, 2])
    with pytest.raises(LengthMismatchError):
        spearman_rho([1, 2], [1, 2])
    with pytest.raises(ConstantInputError):
        spearman_rho([1, 1, 1], [1, 2, 3])
    with pytest.raises(ConstantInputError):
        spearman_rho([1, 2, 3], [4, 4, 4])


def test_permutation_reproducible():
    rng = np.random.default_rng(3)
    a = rng.standard_normal(30)
    b = rng.standard_normal(30)
    first = permutation_pvalue(a, b, n_perm=500, seed=11)
    second = permutation_pvalue(a, b, n_perm=500, seed=11)
    assert first == second
    third = permutation_pvalue(a, b, n_perm=500, seed=12)
    assert third.p_value != first.p_value or third.seed != first.seed


def test_permutation_monotone_is_significant():
    a = list(range(10))
    b = [x * 2.0 + 1.0 for x in a]
    result = permutation_pvalue(a, b, n_perm=9999, seed=0)
    assert result.rho == pytest.approx(1.0)
    assert result.p_value <= 0.001
    assert not result.low_resolution


def test_permutation_tiny_sample_floor():
    result = permutation_pvalue([1, 2, 3], [1, 3, 2], n_perm=100, seed=0)
    # only 3! = 6 orderings exist, so p cannot resolve below about 1/6
    assert result.p_value >= 0.1
    assert result.low_resolution


def test_permutation_requires_enough_trials():
    with pytest.raises(ValueError):
        permutation_pvalue([1, 2, 3], [1, 3, 2], n_perm=10, seed=0)


def _report(name, dim, scores):
    entries = tuple(
        PairScore("A1", "B1", 0, 2, score, 10) for score in [scores]
    )
    return CompatibilityReport(model_name=name, dim=dim, entries=entries)


def test_rank_models_table_column():
    # (A1,B1) compatibility column of four sentence embedding models
    reports = [
        _report("all-MiniLM-L6-v2", 384, 0.5741),
        _report("multilingual-e5-small", 384, 0.1456),
        _report("bge-m3", 1024, 0.2317),
        _report("multilingual-e5-large", 1024, 0.1435),
    ]
    ranked = rank_models(reports, ("A1", "B1"))
    assert [r.model_name for r in ranked] == [
        "all-MiniLM-L6-v2",
        "bge-m3",
        "multilingual-e5-small",
        "multilingual-e5-large",
    ]
    assert [r.dim for r in ranked] == [384, 1024, 384, 1024]


def test_rank_models_singleton_and_ties():
    single = rank_models([_report("only", 8, 0.5)], ("A1", "B1"))
    assert len(single) == 1 and single[0].model_name == "only"
    tied = rank_models(
        [_report("zeta", 8, 0.5), _report("alpha", 8, 0.5)], ("A1", "B1")
    )
    assert [r.model_name for r in tied] == ["alpha", "zeta"]


def test_rank_models_input_order_invariant():
    reports = [
        _report("m1", 8, 0.1),
        _report("m2", 8, 0.9),
        _report("m3", 8, 0.5),
    ]
    forward = rank_models(reports, ("A1", "B1"))
    backward = rank_models(list(reversed(reports)), ("A1", "B1"))
    assert forward == backward


def test_rank_models_missing_pair():
    with pytest.raises(MissingPairError):
        rank_models([_report("m1", 8, 0.1)], ("A1", "C2"))
