"""Bagged random forest over the CART trees, with OOB score and MDI.

Each of the B trees trains on a bootstrap sample (N draws with replacement)
from its own RNG stream, derived as ``seed XOR tree_index`` so results do not
depend on training parallelism. The forest predicts by majority vote; the
phishing probability of an input is the fraction of trees voting -1, and the
predicted label is -1 exactly when that fraction reaches 0.5 (ties vote
phishing, the conservative side). The out-of-bag score averages votes of the
trees that did not see a row; rows that every tree saw are skipped.
"""

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ..errors import TrainingError
from .tree import encode_rows, train_tree


@dataclass
class ForestModel:
    algorithm = "forest"

    trees: list
    n_trees: int
    m_try: int
    max_depth: int | None
    min_samples_leaf: int
    seed: int
    bootstrap: bool
    n_features: int
    oob_score: float | None = None
    mdi: np.ndarray | None = None
    model_id: str = field(default="unsaved-forest")

    def vote_fractions(self, X) -> np.ndarray:
        """Fraction of trees voting phishing (-1) per row."""
        X = np.asarray(X)
        if X.ndim == 1:
            X = X.reshape(1, -1)
        phish_votes = np.zeros(X.shape[0], dtype=np.int32)
        for tree in self.trees:
            phish_votes += tree.predict(X) == -1
        return phish_votes / len(self.trees)

    def predict_proba(self, X) -> np.ndarray:
        return self.vote_fractions(X)

    def predict(self, X) -> np.ndarray:
        p = self.vote_fractions(X)
        return np.where(p >= 0.5, -1, 1).astype(np.int8)


def _tree_seed(seed: int, index: int) -> int:
    return int(np.uint64(seed) ^ np.uint64(index))


def _train_range(args):
    key, n_rows, b_start, b_stop, params, seed, bootstrap = args
    idx_all = np.arange(n_rows, dtype=np.intp)
    out = []
    for b in range(b_start, b_stop):
        rng = np.random.default_rng(_tree_seed(seed, b))
        if bootstrap:
            sample = rng.integers(0, n_rows, size=n_rows).astype(np.intp)
        else:
            sample = idx_all
        tree = train_tree(
            None,
            max_depth=params["max_depth"],
            min_samples_leaf=params["min_samples_leaf"],
            m_try=params["m_try"],
            rng=rng,
            _encoded=(key, sample),
        )
        oob_mask = np.ones(n_rows, dtype=bool)
        oob_mask[sample] = False
        out.append((tree, oob_mask))
    return out


def train_forest(
    train,
    n_trees: int = 100,
    m_try: int | None = None,
    max_depth: int | None = None,
    min_samples_leaf: int = 1,
    seed: int = 0,
    bootstrap: bool = True,
    n_jobs: int = 1,
) -> ForestModel:
    """Train B trees on bootstrap samples and aggregate by vote.

    ``m_try`` defaults to floor(sqrt(F)) candidate features per split.
    ``bootstrap=False`` is a test hook making every tree see the full data.
    ``n_jobs`` > 1 forks workers over tree ranges; results are identical to
    the serial run because every tree owns its seed-derived RNG stream.
    """
    X = np.asarray(train.rows)
    y = np.asarray(train.labels)
    n_rows, n_features = X.shape
    if n_rows < 2:
        raise TrainingError("forest training needs at least 2 rows")
    if n_trees < 1:
        raise TrainingError("n_trees must be >= 1")
    if m_try is None:
        m_try = max(1, int(math.floor(math.sqrt(n_features))))
    if not 1 <= m_try <= n_features:
        raise TrainingError(f"m_try {m_try} outside [1, {n_features}]")

    enc = encode_rows(X)
    key = (enc << 1) | (y == 1).astype(np.uint8)[:, None]

    params = {"max_depth": max_depth, "min_samples_leaf": min_samples_leaf, "m_try": m_try}
    if n_jobs <= 1 or n_trees == 1:
        batches = [_train_range((key, n_rows, 0, n_trees, params, seed, bootstrap))]
    else:
        n_workers = min(n_jobs, n_trees)
        bounds = np.linspace(0, n_trees, n_workers + 1).astype(int)
        tasks = [
            (key, n_rows, int(bounds[i]), int(bounds[i + 1]), params, seed, bootstrap)
            for i in range(n_workers)
            if bounds[i] < bounds[i + 1]
        ]
        with ProcessPoolExecutor(max_workers=n_workers) as pool:
            batches = list(pool.map(_train_range, tasks))

    trees, oob_masks = [], []
    for batch in batches:
        for tree, oob_mask in batch:
            trees.append(tree)
            oob_masks.append(oob_mask)

    oob_score = None
    if bootstrap:
        oob_phish = np.zeros(n_rows, dtype=np.int32)
        oob_total = np.zeros(n_rows, dtype=np.int32)
        for tree, oob_mask in zip(trees, oob_masks):
            rows = np.nonzero(oob_mask)[0]
            if len(rows) == 0:
                continue
            pred = tree.predict(X[rows])
            oob_phish[rows] += pred == -1
            oob_total[rows] += 1
        covered = oob_total > 0
        if covered.any():
            oob_pred = np.where(
                oob_phish[covered] * 2 >= oob_total[covered], -1, 1
            )
            oob_score = float(np.mean(oob_pred == y[covered]))

    model = ForestModel(
        trees=trees,
        n_trees=n_trees,
        m_try=m_try,
        max_depth=max_depth,
        min_samples_leaf=min_samples_leaf,
        seed=seed,
        bootstrap=bootstrap,
        n_features=n_features,
    )
    model.mdi = mdi_importance(model)
    model.oob_score = oob_score
    return model


def mdi_importance(forest: ForestModel) -> np.ndarray:
    """Mean decrease in impurity per feature, normalized to sum to 1.

    importance_j = mean over trees of sum over nodes splitting on j of
    (n_node / N) * dG. A forest whose trees never split yields the uniform
    vector (no evidence either way).
    """
    total = np.zeros(forest.n_features, dtype=np.float64)
    for tree in forest.trees:
        total += tree.mdi_contributions()
    total /= len(forest.trees)
    s = total.sum()
    if s <= 0.0:
        return np.full(forest.n_features, 1.0 / forest.n_features)
    return total / s
