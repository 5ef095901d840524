#!/usr/bin/env python3
"""Reproduce the three-way comparison: forest vs kNN vs linear SVM across
50/50, 70/30 and 90/10 splits, averaged over seeds.

Uses two seeds here to stay quick; `nophish eval` runs the full five-seed
sweep and also writes CSV/JSON/plot-data files.
"""

from nophish.evaluation import aggregate, compare_algorithms, format_table
from nophish import load_dataset

ds = load_dataset("data/phishing.arff")
reports = compare_algorithms(ds, seeds=(11, 22), n_jobs=2)
rows = aggregate(reports)
print(format_table(rows))
print()
for fraction in (0.5, 0.7, 0.9):
    accs = {r["algorithm"]: r["accuracy_mean"]
            for r in rows if r["train_fraction"] == fraction}
    best = max(accs, key=accs.get)
    print(f"split {fraction:.1f}: best accuracy {best} ({accs[best]:.4f})")
