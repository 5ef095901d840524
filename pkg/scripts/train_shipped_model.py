#!/usr/bin/env python3
"""Reproduce the shipped default model at data/models/forest-default.model.json.gz.

Trains the default random forest (100 trees, m_try=4, unlimited depth,
seed 11) on the full bundled dataset; the out-of-bag score stands in as its
quality estimate. Deterministic: rerunning yields a byte-identical file.
"""

import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "src"))

from nophish import load_dataset, save_model, train_forest  # noqa: E402

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
DATA = os.path.join(ROOT, "data", "phishing.arff")
OUT = os.path.join(ROOT, "data", "models", "forest-default.model.json.gz")


def main() -> int:
    ds = load_dataset(DATA)
    model = train_forest(ds, n_trees=100, seed=11)
    os.makedirs(os.path.dirname(OUT), exist_ok=True)
    save_model(model, OUT)
    size_kb = os.path.getsize(OUT) / 1024
    print(f"trained on {ds.n_rows} rows; oob_score={model.oob_score:.4f}")
    print(f"wrote {OUT} ({size_kb:.0f} KiB), model_id={model.model_id}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
