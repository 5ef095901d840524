#!/usr/bin/env python3
"""Run the field bench over the archived corpus: 14 phishing + 13 legitimate
pages scanned through the full pipeline. Warnings count as positive
(phishing) predictions, which is what drives the zero-false-negative goal."""

from nophish import field_bench, load_model, make_fixture_providers
from nophish.evaluation import load_corpus

model = load_model("data/models/forest-default.model.json.gz")
providers = make_fixture_providers("fixtures")
corpus = load_corpus("fixtures/corpus.csv")

result = field_bench(corpus, model, providers)
cm = result.confusion
print("confusion matrix (phishing-positive, warning counts as positive)")
print(f"   TN={cm.tn:>2}  FP={cm.fp:>2}")
print(f"   FN={cm.fn:>2}  TP={cm.tp:>2}")
print()
for v in sorted(result.verdicts, key=lambda v: -v.probability):
    truth = "phishing" if v.label == -1 else "legit"
    print(f"  {v.verdict:>9}  p={v.probability:.2f}  [{truth:>8}]  {v.url}")
if result.excluded:
    print("unscorable:", [v.url for v in result.excluded])
