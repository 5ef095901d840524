"""Metrics, the algorithm/split comparison harness, and the field bench.

The confusion matrix fixes its positive class to phishing (-1) for every
artifact output. The public reference table this project reproduces was
printed in the opposite orientation (positive = legitimate), so reports
carry both: ``precision``/``recall`` are phishing-positive, and the
``*_legit`` twins are the flipped orientation.
"""

import csv
import json
import statistics
from dataclasses import dataclass, field

import numpy as np

from .dataset import LabeledDataset, SplitSpec, split
from .errors import ConfigError
from .learners import importance_ranking, train_forest, train_knn, train_svm


@dataclass(frozen=True)
class ConfusionMatrix:
    """TN/FP/FN/TP counts with positive class = phishing (-1)."""

    tn: int
    fp: int
    fn: int
    tp: int

    def __post_init__(self):
        if min(self.tn, self.fp, self.fn, self.tp) < 0:
            raise ValueError("confusion counts must be nonnegative")

    @property
    def total(self) -> int:
        return self.tn + self.fp + self.fn + self.tp

    def flipped(self) -> "ConfusionMatrix":
        """Same tallies with the positive class swapped to legitimate."""
        return ConfusionMatrix(tn=self.tp, fp=self.fn, fn=self.fp, tp=self.tn)

    @staticmethod
    def from_predictions(y_true, y_pred, positive: int = -1) -> "ConfusionMatrix":
        y_true = np.asarray(y_true)
        y_pred = np.asarray(y_pred)
        if y_true.shape != y_pred.shape:
            raise ValueError("prediction/label length mismatch")
        pos_t, pos_p = y_true == positive, y_pred == positive
        return ConfusionMatrix(
            tn=int(np.sum(~pos_t & ~pos_p)),
            fp=int(np.sum(~pos_t & pos_p)),
            fn=int(np.sum(pos_t & ~pos_p)),
            tp=int(np.sum(pos_t & pos_p)),
        )


@dataclass(frozen=True)
class Metrics:
    accuracy: float
    precision: float | None  # None when tp + fp == 0
    recall: float | None     # None when tp + fn == 0


def metrics(cm: ConfusionMatrix) -> Metrics:
    """accuracy/precision/recall from counts; undefined ratios come back as
    None, never NaN."""
    if cm.total == 0:
        raise ValueError("empty confusion matrix")
    accuracy = (cm.tp + cm.tn) / cm.total
    precision = cm.tp / (cm.tp + cm.fp) if (cm.tp + cm.fp) > 0 else None
    recall = cm.tp / (cm.tp + cm.fn) if (cm.tp + cm.fn) > 0 else None
    return Metrics(accuracy=accuracy, precision=precision, recall=recall)


@dataclass
class EvalReport:
    """One (algorithm, split, seed) evaluation cell."""

    algorithm: str
    train_fraction: float
    seed: int
    stratified: bool
    confusion: ConfusionMatrix
    accuracy: float
    precision: float | None
    recall: float | None
    precision_legit: float | None
    recall_legit: float | None
    oob_score: float | None = None
    importance_ranking: list | None = None

    def to_dict(self) -> dict:
        return {
            "algorithm": self.algorithm,
            "train_fraction": self.train_fraction,
            "seed": self.seed,
            "stratified": self.stratified,
            "tn": self.confusion.tn,
            "fp": self.confusion.fp,
            "fn": self.confusion.fn,
            "tp": self.confusion.tp,
            "accuracy": self.accuracy,
            "precision": self.precision,
            "recall": self.recall,
            "precision_legit": self.precision_legit,
            "recall_legit": self.recall_legit,
            "oob_score": self.oob_score,
            "importance_ranking": self.importance_ranking,
        }


DEFAULT_SPLITS = (0.5, 0.7, 0.9)
DEFAULT_SEEDS = (11, 22, 33, 44, 55)


def _train(algorithm: str, train_ds: LabeledDataset, seed: int, params: dict, n_jobs: int):
    if algorithm == "forest":
        return train_forest(
            train_ds,
            n_trees=params.get("n_trees", 100),
            m_try=params.get("m_try"),
            max_depth=params.get("max_depth"),
            min_samples_leaf=params.get("min_samples_leaf", 1),
            seed=seed,
            n_jobs=n_jobs,
        )
    if algorithm == "knn":
        return train_knn(train_ds, k=params.get("k", 5))
    if algorithm == "svm":
        return train_svm(
            train_ds,
            lam=params.get("lam", 1e-4),
            epochs=params.get("epochs", 40),
            seed=seed,
        )
    raise ConfigError(f"unknown algorithm '{algorithm}'")


def report_for(model, algorithm: str, test_ds: LabeledDataset,
               train_fraction: float, seed: int, stratified: bool) -> EvalReport:
    """Evaluate an already-trained model on a held-out set."""
    predictions = model.predict(test_ds.rows)
    cm = ConfusionMatrix.from_predictions(test_ds.labels, predictions)
    m = metrics(cm)
    m_legit = metrics(cm.flipped())
    ranking = None
    if algorithm == "forest" and getattr(model, "mdi", None) is not None:
        ranking = [int(i) for i in importance_ranking(model.mdi)]
    return EvalReport(
        algorithm=algorithm,
        train_fraction=train_fraction,
        seed=seed,
        stratified=stratified,
        confusion=cm,
        accuracy=m.accuracy,
        precision=m.precision,
        recall=m.recall,
        precision_legit=m_legit.precision,
        recall_legit=m_legit.recall,
        oob_score=getattr(model, "oob_score", None),
        importance_ranking=ranking,
    )


def evaluate_cell(
    ds: LabeledDataset,
    algorithm: str,
    train_fraction: float,
    seed: int,
    params: dict | None = None,
    stratified: bool = True,
    n_jobs: int = 1,
) -> EvalReport:
    """Split, train, evaluate on the held-out side. Deterministic per cell."""
    params = params or {}
    train_ds, test_ds = split(ds, SplitSpec(train_fraction, seed, stratified))
    model = _train(algorithm, train_ds, seed, params, n_jobs)
    return report_for(model, algorithm, test_ds, train_fraction, seed, stratified)


def compare_algorithms(
    ds: LabeledDataset,
    splits=DEFAULT_SPLITS,
    seeds=DEFAULT_SEEDS,
    algorithms=("forest", "knn", "svm"),
    params: dict | None = None,
    stratified: bool = True,
    n_jobs: int = 1,
) -> list:
    """The full sweep: one EvalReport per (algorithm, split, seed), sorted by
    (algorithm, split, seed) so output is order-independent."""
    params = params or {}
    reports = []
    for algorithm in algorithms:
        algo_params = params.get(algorithm, {})
        for fraction in splits:
            for seed in seeds:
                reports.append(
                    evaluate_cell(
                        ds, algorithm, fraction, seed,
                        params=algo_params, stratified=stratified, n_jobs=n_jobs,
                    )
                )
    reports.sort(key=lambda r: (r.algorithm, r.train_fraction, r.seed))
    return reports


def aggregate(reports) -> list:
    """mean +/- std per (algorithm, split) over seeds, for the headline
    metrics in both orientations."""
    cells = {}
    for r in reports:
        cells.setdefault((r.algorithm, r.train_fraction), []).append(r)
    rows = []
    for (algorithm, fraction), group in sorted(cells.items()):
        def stats(values):
            values = [v for v in values if v is not None]
            if not values:
                return None, None
            mean = statistics.fmean(values)
            std = statistics.pstdev(values) if len(values) > 1 else 0.0
            return mean, std

        acc = stats([g.accuracy for g in group])
        prec = stats([g.precision for g in group])
        rec = stats([g.recall for g in group])
        prec_l = stats([g.precision_legit for g in group])
        rec_l = stats([g.recall_legit for g in group])
        rows.append({
            "algorithm": algorithm,
            "train_fraction": fraction,
            "n_seeds": len(group),
            "accuracy_mean": acc[0], "accuracy_std": acc[1],
            "precision_mean": prec[0], "precision_std": prec[1],
            "recall_mean": rec[0], "recall_std": rec[1],
            "precision_legit_mean": prec_l[0], "precision_legit_std": prec_l[1],
            "recall_legit_mean": rec_l[0], "recall_legit_std": rec_l[1],
        })
    return rows


def write_reports_csv(reports, path) -> None:
    fields = list(reports[0].to_dict().keys()) if reports else ["algorithm"]
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.DictWriter(f, fieldnames=fields)
        writer.writeheader()
        for r in reports:
            row = r.to_dict()
            row["importance_ranking"] = (
                " ".join(map(str, row["importance_ranking"]))
                if row["importance_ranking"] else ""
            )
            writer.writerow(row)


def write_reports_json(reports, path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        json.dump([r.to_dict() for r in reports], f, indent=2)
        f.write("\n")


def write_plot_data(reports, path) -> None:
    """Long-format CSV: algo,split,seed,metric,value - one row per metric."""
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["algo", "split", "seed", "metric", "value"])
        for r in reports:
            base = r.to_dict()
            for metric_name in ("accuracy", "precision", "recall",
                                "precision_legit", "recall_legit"):
                value = base[metric_name]
                if value is None:
                    continue
                writer.writerow(
                    [r.algorithm, r.train_fraction, r.seed, metric_name,
                     f"{value:.6f}"]
                )


def format_table(rows) -> str:
    """Human-readable aggregate table, 3-decimal metric formatting."""
    header = (
        f"{'algorithm':<10} {'split':>5} {'acc':>7} {'prec':>7} {'rec':>7} "
        f"{'prec(L)':>8} {'rec(L)':>8}"
    )
    def fmt(value):
        return "  n/a" if value is None else f"{value:.3f}"

    lines = [header, "-" * len(header)]
    for row in rows:
        lines.append(
            f"{row['algorithm']:<10} {row['train_fraction']:>5.2f} "
            f"{fmt(row['accuracy_mean']):>7} {fmt(row['precision_mean']):>7} "
            f"{fmt(row['recall_mean']):>7} {fmt(row['precision_legit_mean']):>8} "
            f"{fmt(row['recall_legit_mean']):>8}"
        )
    return "\n".join(lines)


# --- field bench --------------------------------------------------------------

@dataclass
class UrlVerdict:
    url: str
    label: int           # -1 phishing, +1 legitimate (ground truth)
    verdict: str | None  # safe | warning | dangerous; None when unscorable
    probability: float | None
    failed_features: list = field(default_factory=list)
    unscorable: bool = False
    note: str = ""

    @property
    def predicted_positive(self) -> bool:
        """Warning counts as a positive (phishing) prediction, like dangerous."""
        return self.verdict in ("warning", "dangerous")


@dataclass
class FieldBenchResult:
    confusion: ConfusionMatrix
    verdicts: list
    excluded: list

    def to_dict(self) -> dict:
        return {
            "confusion": {
                "tn": self.confusion.tn, "fp": self.confusion.fp,
                "fn": self.confusion.fn, "tp": self.confusion.tp,
            },
            "verdicts": [
                {
                    "url": v.url, "label": v.label, "verdict": v.verdict,
                    "probability": v.probability,
                    "failed_features": v.failed_features,
                } for v in self.verdicts
            ],
            "excluded": [
                {"url": v.url, "label": v.label, "note": v.note}
                for v in self.excluded
            ],
        }


def load_corpus(path) -> list:
    """CSV with header url,label[,fixture]; label is 'phishing'/'legitimate'
    or -1/+1. Returns [(url, label)] with label in {-1,+1}."""
    entries = []
    with open(path, encoding="utf-8", newline="") as f:
        reader = csv.DictReader(f)
        if not reader.fieldnames or "url" not in reader.fieldnames or "label" not in reader.fieldnames:
            raise ConfigError(f"{path}: corpus needs 'url' and 'label' columns")
        for row in reader:
            raw = row["label"].strip().lower()
            if raw in ("-1", "phishing", "phish"):
                label = -1
            elif raw in ("1", "+1", "legitimate", "legit"):
                label = 1
            else:
                raise ConfigError(f"{path}: unknown label {row['label']!r}")
            entries.append((row["url"].strip(), label))
    return entries


def field_bench(corpus, model, providers, policy=None) -> FieldBenchResult:
    """Scan every labeled URL through the full pipeline and tally a confusion
    matrix under the warning-counts-as-positive convention. Fetch failures
    make a URL unscorable: it is excluded from the matrix and listed."""
    from .service import scan  # local import; service depends on this module

    scored, excluded = [], []
    for url, label in corpus:
        try:
            report = scan(url, model, providers, policy=policy)
        except Exception as exc:
            excluded.append(UrlVerdict(url=url, label=label, verdict=None,
                                       probability=None, unscorable=True,
                                       note=f"scan error: {exc}"))
            continue
        if report.degraded:
            excluded.append(UrlVerdict(url=url, label=label, verdict=None,
                                       probability=None, unscorable=True,
                                       note=f"fetch failed: {report.fetch_status}"))
            continue
        failed = [f["name"] for f in report.features if f["status"] == "fail"]
        scored.append(UrlVerdict(url=url, label=label, verdict=report.verdict,
                                 probability=report.phishing_probability,
                                 failed_features=failed))
    tn = fp = fn = tp = 0
    for v in scored:
        if v.label == -1:
            if v.predicted_positive:
                tp += 1
            else:
                fn += 1
        else:
            if v.predicted_positive:
                fp += 1
            else:
                tn += 1
    return FieldBenchResult(
        confusion=ConfusionMatrix(tn=tn, fp=fp, fn=fn, tp=tp),
        verdicts=scored,
        excluded=excluded,
    )
