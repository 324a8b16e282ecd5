import numpy as np
import pytest

from conefit import (
    ConstraintSet,
    EmbeddingSet,
    LabeledDataset,
    LevelPair,
    PerItem,
    build_constraints,
    validate_constraints,
)
from conefit.errors import (
    EmptyConstraintSetError,
    SingleLevelError,
    UnknownIdError,
)

from conftest import make_dataset, make_embeddings, random_instance


def brute_force_pairs(ranks, adjacent=False):
    """Definitional enumeration, independent of the implementation."""
    pairs = []
    for i, ri in enumerate(ranks):
        for j, rj in enumerate(ranks):
            if ri < rj and (not adjacent or rj == ri + 1):
                pairs.append((i, j))
    return sorted(pairs)


@pytest.fixture
def eight_items():
    """3 levels with sizes (3, 2, 3)."""
    rng = np.random.default_rng(0)
    embeddings = make_embeddings(rng.standard_normal((8, 4)))
    ranks = [0, 0, 0, 1, 1, 2, 2, 2]
    return embeddings, make_dataset(ranks)


def test_all_cross_level_count(eight_items):
    embeddings, dataset = eight_items
    constraints = build_constraints(dataset, embeddings, "all")
    assert len(constraints) == 21  # 3*2 + 3*3 + 2*3
    assert constraints.pairs == brute_force_pairs(dataset.ranks)


def test_adjacent_count(eight_items):
    embeddings, dataset = eight_items
    constraints = build_constraints(dataset, embeddings, "adjacent")
    assert len(constraints) == 12  # 3*2 + 2*3
    assert constraints.pairs == brute_force_pairs(dataset.ranks, adjacent=True)


def test_two_items_single_pair():
    embeddings = make_embeddings([[1.0, 0.0], [0.0, 1.0]])
    dataset = make_dataset([0, 1])
    constraints = build_constraints(dataset, embeddings, "all")
    assert constraints.pairs == [(0, 1)]


def test_level_pair_mode(eight_items):
    embeddings, dataset = eight_items
    constraints = build_constraints(dataset, embeddings, LevelPair(0, 2))
    assert len(constraints) == 9
    for i, j in constraints.pairs:
        assert dataset.ranks[i] == 0 and dataset.ranks[j] == 2


def test_per_item_mode(eight_items):
    embeddings, dataset = eight_items
    constraints = build_constraints(dataset, embeddings, PerItem("i3"))
    # anchor at rank 1: easier than 3 rank-2 items, harder than 3 rank-0 items
    assert len(constraints) == 6
    for i, j in constraints.pairs:
        assert i == 3 or j == 3


def test_respects_order_and_determinism(eight_items):
    embeddings, dataset = eight_items
    first = build_constraints(dataset, embeddings, "all")
    second = build_constraints(dataset, embeddings, "all")
    assert first.easier.tobytes() == second.easier.tobytes()
    assert first.harder.tobytes() == second.harder.tobytes()
    for i, j in first.pairs:
        assert dataset.ranks[i] < dataset.ranks[j]
    assert first.pairs == sorted(first.pairs)


def test_adjacent_subset_of_all():
    for seed in range(5):
        embeddings, dataset = random_instance(seed, n=30, n_levels=4)
        all_pairs = set(build_constraints(dataset, embeddings, "all").pairs)
        adjacent = set(build_constraints(dataset, embeddings, "adjacent").pairs)
        assert adjacent <= all_pairs


def test_all_count_formula():
    for seed in range(5):
        embeddings, dataset = random_instance(seed, n=40, n_levels=5)
        sizes = [int(dataset.positions_at(r).size) for r in dataset.present_ranks()]
        expected = sum(
            sizes[a] * sizes[b]
            for a in range(len(sizes))
            for b in range(a + 1, len(sizes))
        )
        assert len(build_constraints(dataset, embeddings, "all")) == expected


def test_unknown_id_error():
    embeddings = make_embeddings([[1.0, 0.0], [0.0, 1.0]])
    dataset = LabeledDataset(("i0", "missing"), np.array([0, 1]), ("L1", "L2"))
    with pytest.raises(UnknownIdError):
        build_constraints(dataset, embeddings, "all")


def test_single_level_error():
    embeddings = make_embeddings([[1.0, 0.0], [0.0, 1.0]])
    dataset = make_dataset([0, 0], level_names=("L1",))
    with pytest.raises(SingleLevelError):
        build_constraints(dataset, embeddings, "all")


def test_empty_constraint_set_error():
    rng = np.random.default_rng(1)
    embeddings = make_embeddings(rng.standard_normal((4, 3)))
    # ranks 0 and 2 populated, rank 1 empty: the (0, 1) pair has no items
    dataset = make_dataset([0, 0, 2, 2], level_names=("L1", "L2", "L3"))
    with pytest.raises(EmptyConstraintSetError):
        build_constraints(dataset, embeddings, LevelPair(0, 1))
    # and adjacency over present ranks 0, 2 yields nothing either
    with pytest.raises(EmptyConstraintSetError):
        build_constraints(dataset, embeddings, "adjacent")


def test_level_pair_requires_order():
    with pytest.raises(ValueError):
        LevelPair(2, 1)
    with pytest.raises(ValueError):
        LevelPair(1, 1)


def test_unknown_anchor():
    embeddings = make_embeddings([[1.0, 0.0], [0.0, 1.0]])
    dataset = make_dataset([0, 1])
    with pytest.raises(UnknownIdError):
        build_constraints(dataset, embeddings, PerItem("nope"))


def test_validate_flags_cycle():
    embeddings = make_embeddings([[1.0, 0.0], [0.0, 1.0]])
    report = validate_constraints(ConstraintSet.from_pairs([(0, 1), (1, 0)]), embeddings)
    assert report.has_cycle
    assert not report.ok
    assert report.cycle_nodes == (0, 1)


def test_validate_clean_chain():
    embeddings = make_embeddings([[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0]])
    report = validate_constraints(ConstraintSet.from_pairs([(0, 1), (1, 2)]), embeddings)
    assert report.ok
    assert not report.has_cycle


def test_validate_flags_duplicates():
    embeddings = make_embeddings([[1.0, 0.0], [0.0, 1.0]])
    report = validate_constraints(ConstraintSet.from_pairs([(0, 1), (0, 1)]), embeddings)
    assert report.duplicates == ((0, 1),)
    assert not report.ok


def test_validate_flags_out_of_bounds_and_self_pairs():
    embeddings = make_embeddings([[1.0, 0.0], [0.0, 1.0]])
    report = validate_constraints(
        ConstraintSet.from_pairs([(0, 5), (1, 1)]), embeddings
    )
    assert report.out_of_bounds == (0,)
    assert report.self_pairs == (1,)
    assert not report.ok
