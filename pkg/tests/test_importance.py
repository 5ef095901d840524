"""MDI and permutation importance: attribution exactness on single splits,
zero importance for constant columns, normalization, and the analytically
solvable label-equals-feature toy."""

import numpy as np
import pytest

from nophish.learners import (
    importance_ranking,
    mdi_importance,
    permutation_importance,
    train_forest,
    train_tree,
)

from conftest import make_ds, random_ternary


def test_single_split_forest_attributes_everything_to_one_feature():
    rows = [[1, -1, 0], [1, -1, 0], [1, 1, 0], [1, 1, 0]]
    labels = [-1, -1, 1, 1]
    forest = train_forest(make_ds(rows, labels), n_trees=1, bootstrap=False,
                          m_try=3, seed=0)
    assert forest.mdi == pytest.approx([0.0, 1.0, 0.0])


def test_constant_feature_gets_zero_mdi():
    rng = np.random.default_rng(3)
    rows = random_ternary(rng, 200, 6)
    rows[:, 2] = 1  # constant column
    labels = np.where(rows[:, 0] + rows[:, 4] > 0, 1, -1)
    forest = train_forest(make_ds(rows, labels), n_trees=30, seed=1)
    assert forest.mdi[2] == 0.0
    assert forest.mdi.sum() == pytest.approx(1.0, abs=1e-9)
    assert (forest.mdi >= 0).all()


def test_zero_split_forest_is_uniform():
    ds = make_ds([[1, 1], [1, 1], [1, 1], [1, 1]], [-1, 1, -1, 1])
    forest = train_forest(ds, n_trees=5, seed=0)
    assert forest.mdi == pytest.approx([0.5, 0.5])


def test_mdi_importance_recomputable_from_structure():
    rng = np.random.default_rng(11)
    rows = random_ternary(rng, 150, 5)
    labels = np.where(rows[:, 1] > 0, 1, -1)
    forest = train_forest(make_ds(rows, labels), n_trees=12, seed=4)
    again = mdi_importance(forest)
    assert np.allclose(forest.mdi, again)
    assert int(np.argmax(again)) == 1


def test_permutation_constant_column_is_exact_zero():
    rng = np.random.default_rng(5)
    rows = random_ternary(rng, 120, 4)
    rows[:, 3] = -1
    labels = np.where(rows[:, 0] > 0, 1, -1)
    ds = make_ds(rows, labels)
    forest = train_forest(ds, n_trees=10, seed=2)
    imp = permutation_importance(forest, ds, repeats=5, seed=0)
    assert imp[3, 0] == 0.0 and imp[3, 1] == 0.0


def test_permutation_label_equals_feature_toy():
    # label == sign of feature 1 exactly; a perfect model's accuracy after
    # permuting column 1 has expectation sum(p_v^2) = 0.5 for a balanced
    # +/-1 column, so the expected drop is 0.5; every other column drops 0.
    rng = np.random.default_rng(8)
    n = 400
    col = np.array([-1, 1] * (n // 2), dtype=np.int8)
    rows = random_ternary(rng, n, 3)
    rows[:, 1] = col
    labels = col.copy()
    ds = make_ds(rows, labels)
    model = train_tree(ds)  # single split on feature 1, perfect

    class Wrap:
        def predict(self, X):
            return model.predict(X)

    imp = permutation_importance(Wrap(), ds, repeats=20, seed=3)
    assert imp[1, 0] == pytest.approx(0.5, abs=0.06)
    assert imp[0, 0] == 0.0 and imp[2, 0] == 0.0


def test_permutation_deterministic_in_seed():
    rng = np.random.default_rng(9)
    rows = random_ternary(rng, 80, 4)
    labels = np.where(rows[:, 2] + rows[:, 0] > 0, 1, -1)
    ds = make_ds(rows, labels)
    forest = train_forest(ds, n_trees=8, seed=1)
    a = permutation_importance(forest, ds, repeats=4, seed=42)
    b = permutation_importance(forest, ds, repeats=4, seed=42)
    assert np.array_equal(a, b)


def test_importance_ranking_stable_ties():
    assert importance_ranking([0.1, 0.5, 0.1, 0.5]) == [1, 3, 0, 2]
