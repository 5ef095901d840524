#!/usr/bin/env python3
"""Train the random forest, read its out-of-bag score, inspect a few votes.

The forest bags 100 trees over bootstrap samples; each tree has its own RNG
stream derived from (seed XOR tree index), so retraining with one seed is
bit-reproducible no matter how many workers run.
"""

import numpy as np

from nophish import SplitSpec, load_dataset, split, train_forest

ds = load_dataset("data/phishing.arff")
train, test = split(ds, SplitSpec(0.9, seed=11))

forest = train_forest(train, n_trees=100, seed=11, n_jobs=2)
print(f"trained {forest.n_trees} trees, m_try={forest.m_try}")
print(f"out-of-bag score: {forest.oob_score:.4f}")

accuracy = float(np.mean(forest.predict(test.rows) == test.labels))
print(f"held-out accuracy: {accuracy:.4f}")

proba = forest.predict_proba(test.rows[:8])
for row_proba, label in zip(proba, test.labels[:8]):
    print(f"  vote fraction {row_proba:.2f}  truth {'phishing' if label == -1 else 'legit':>8}")

top = int(np.argmax(forest.mdi))
print(f"most informative feature by MDI: slot {top} ({ds.feature_names[top]}), "
      f"weight {forest.mdi[top]:.3f}")
