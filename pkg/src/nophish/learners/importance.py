"""Permutation importance on held-out data.

importance_j = baseline accuracy minus the mean accuracy over R seeded
shuffles of column j. Works for any trained model exposing ``predict``.
Each (feature, repeat) pair draws from its own derived RNG stream, so
results are independent of evaluation order.
"""

import numpy as np


def permutation_importance(model, holdout, repeats: int = 10, seed: int = 0):
    """Returns an (F, 2) array of (mean, std) accuracy drops per feature."""
    X = np.asarray(holdout.rows)
    y = np.asarray(holdout.labels)
    if X.shape[0] == 0:
        raise ValueError("holdout must be nonempty")
    if repeats < 1:
        raise ValueError("repeats must be >= 1")
    baseline = float(np.mean(model.predict(X) == y))
    n_features = X.shape[1]
    out = np.zeros((n_features, 2), dtype=np.float64)
    for j in range(n_features):
        drops = np.empty(repeats)
        for r in range(repeats):
            rng = np.random.default_rng([seed, j, r])
            shuffled = X.copy()
            shuffled[:, j] = rng.permutation(shuffled[:, j])
            acc = float(np.mean(model.predict(shuffled) == y))
            drops[r] = baseline - acc
        out[j, 0] = drops.mean()
        out[j, 1] = drops.std()
    return out


def importance_ranking(values) -> list:
    """Feature indices sorted by importance, best first; ties keep the lower
    index first (stable)."""
    values = np.asarray(values, dtype=np.float64)
    return list(np.argsort(-values, kind="stable"))
