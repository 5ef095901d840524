"""Dataset ingestion (ARFF and headered CSV), column selection, seeded splits.

The donor file carries 30 feature columns plus a Result label; loading keeps
the 22 phishing-evidence columns named by the column map (bundled default:
``nophish/data/column_map.json``) and drops the rest. Cells are ternary
{-1, 0, +1}; labels are -1 = phishing, +1 = legitimate.
"""

import csv
import math
from dataclasses import dataclass

import numpy as np

from .config import default_column_map
from .errors import ConfigError, ParseError, ValidationError
from .features import FEATURE_NAMES

_ALLOWED_CELLS = {-1, 0, 1}
_ALLOWED_LABELS = {-1, 1}


@dataclass(frozen=True)
class LabeledDataset:
    """Immutable matrix of ternary feature rows plus +/-1 labels.

    ``rows`` is (N, F) int8, ``labels`` (N,) int8. Loader-produced datasets
    always have F == 22 in canonical slot order; learner tests may build
    narrower toy tables directly through ``from_arrays``.
    """

    feature_names: tuple
    rows: np.ndarray
    labels: np.ndarray

    @staticmethod
    def from_arrays(feature_names, rows, labels) -> "LabeledDataset":
        names = tuple(str(n) for n in feature_names)
        X = np.asarray(rows, dtype=np.int8)
        y = np.asarray(labels, dtype=np.int8)
        if X.ndim != 2 or X.shape[0] == 0:
            raise ValidationError("dataset needs at least one row")
        if X.shape[1] != len(names):
            raise ValidationError(
                f"row width {X.shape[1]} != {len(names)} feature names"
            )
        if y.shape != (X.shape[0],):
            raise ValidationError("labels length must match row count")
        bad = np.isin(X, (-1, 0, 1), invert=True)
        if bad.any():
            r, c = np.argwhere(bad)[0]
            raise ValidationError(
                f"row {r + 1}, column '{names[c]}': value {int(X[r, c])} outside {{-1,0,1}}"
            )
        bad_y = np.isin(y, (-1, 1), invert=True)
        if bad_y.any():
            r = int(np.argwhere(bad_y)[0][0])
            raise ValidationError(f"row {r + 1}: label {int(y[r])} outside {{-1,+1}}")
        X.setflags(write=False)
        y.setflags(write=False)
        return LabeledDataset(names, X, y)

    @property
    def n_rows(self) -> int:
        return self.rows.shape[0]

    @property
    def n_features(self) -> int:
        return self.rows.shape[1]

    def class_counts(self) -> dict:
        return {
            -1: int(np.sum(self.labels == -1)),
            1: int(np.sum(self.labels == 1)),
        }

    def subset(self, indices) -> "LabeledDataset":
        idx = np.asarray(indices, dtype=np.intp)
        return LabeledDataset.from_arrays(
            self.feature_names, self.rows[idx], self.labels[idx]
        )

    def __eq__(self, other):
        return (
            isinstance(other, LabeledDataset)
            and self.feature_names == other.feature_names
            and np.array_equal(self.rows, other.rows)
            and np.array_equal(self.labels, other.labels)
        )

    def __hash__(self):
        return hash((self.feature_names, self.rows.tobytes(), self.labels.tobytes()))


@dataclass(frozen=True)
class SplitSpec:
    """Seeded train/test split parameters. ``train_fraction`` in (0, 1);
    stratified keeps per-class fractions within one row of the target."""

    train_fraction: float
    seed: int
    stratified: bool = True

    def __post_init__(self):
        if not 0.0 < self.train_fraction < 1.0:
            raise ConfigError(f"train_fraction {self.train_fraction} outside (0,1)")
        if not 0 <= int(self.seed) < 2**64:
            raise ConfigError("seed must be an unsigned 64-bit integer")


def _infer_format(path: str):
    p = str(path).lower()
    if p.endswith(".arff"):
        return "arff"
    if p.endswith(".csv"):
        return "csv"
    raise ConfigError(f"cannot infer format of '{path}'; pass format='arff' or 'csv'")


def _read_arff(path: str):
    """Returns (column_names, data_rows, first_data_line_no)."""
    columns, rows = [], []
    in_data = False
    first_data_line = None
    with open(path, encoding="utf-8") as f:
        for line_no, raw in enumerate(f, start=1):
            line = raw.strip()
            if not line or line.startswith("%"):
                continue
            low = line.lower()
            if not in_data:
                if low.startswith("@relation"):
                    continue
                if low.startswith("@attribute"):
                    parts = line.split(None, 2)
                    if len(parts) < 3:
                        raise ParseError(path, line_no, "malformed @attribute declaration")
                    columns.append(parts[1].strip("'\""))
                    continue
                if low.startswith("@data"):
                    if not columns:
                        raise ParseError(path, line_no, "@data before any @attribute")
                    in_data = True
                    continue
                raise ParseError(path, line_no, f"unexpected header line: {line[:40]!r}")
            else:
                if first_data_line is None:
                    first_data_line = line_no
                cells = [c.strip().strip("'\"") for c in line.split(",")]
                if len(cells) != len(columns):
                    raise ParseError(
                        path, line_no,
                        f"expected {len(columns)} cells, found {len(cells)}",
                    )
                rows.append(cells)
    if not in_data:
        raise ParseError(path, 1, "no @data section")
    if not rows:
        raise ParseError(path, 1, "empty @data section")
    return columns, rows, first_data_line


def _read_csv(path: str):
    with open(path, encoding="utf-8", newline="") as f:
        reader = csv.reader(f)
        try:
            columns = next(reader)
        except StopIteration:
            raise ParseError(path, 1, "empty file") from None
        columns = [c.strip() for c in columns]
        rows = []
        for cells in reader:
            if not cells or (len(cells) == 1 and not cells[0].strip()):
                continue
            if len(cells) != len(columns):
                raise ParseError(
                    path, reader.line_num,
                    f"expected {len(columns)} cells, found {len(cells)}",
                )
            rows.append([c.strip() for c in cells])
    if not rows:
        raise ParseError(path, 1, "no data rows")
    return columns, rows, 2


def _resolve_column(columns, wanted, path):
    if isinstance(wanted, int):
        if not 0 <= wanted < len(columns):
            raise ConfigError(f"{path}: mapped column index {wanted} out of range")
        return wanted
    try:
        return columns.index(wanted)
    except ValueError:
        raise ConfigError(f"{path}: mapped column '{wanted}' not in file") from None


def load_dataset(path, format=None, column_map=None) -> LabeledDataset:
    """Load an ARFF or headered CSV file and select the 22 canonical features.

    ``column_map`` is {"label_column": name-or-index, "features": {feature
    name -> source column name-or-index}}. When omitted: if the file already
    uses the canonical feature names an identity map is applied, otherwise
    the bundled donor-file map.
    """
    fmt = format or _infer_format(path)
    if fmt == "arff":
        columns, raw_rows, _ = _read_arff(path)
    elif fmt == "csv":
        columns, raw_rows, _ = _read_csv(path)
    else:
        raise ConfigError(f"unknown format '{fmt}'")

    if column_map is None:
        if all(name in columns for name in FEATURE_NAMES):
            column_map = {
                "label_column": "label" if "label" in columns else "Result",
                "features": {n: n for n in FEATURE_NAMES},
            }
        else:
            column_map = default_column_map()

    feature_map = column_map["features"]
    missing = [n for n in FEATURE_NAMES if n not in feature_map]
    if missing:
        raise ConfigError(f"column map lacks entries for: {', '.join(missing)}")
    src_idx = [_resolve_column(columns, feature_map[n], path) for n in FEATURE_NAMES]
    label_idx = _resolve_column(columns, column_map["label_column"], path)

    n = len(raw_rows)
    X = np.empty((n, len(FEATURE_NAMES)), dtype=np.int8)
    y = np.empty(n, dtype=np.int8)
    for r, cells in enumerate(raw_rows):
        for slot, ci in enumerate(src_idx):
            try:
                value = int(cells[ci])
            except ValueError:
                raise ValidationError(
                    f"{path}: row {r + 1}, column '{columns[ci]}': "
                    f"non-integer cell {cells[ci]!r}"
                ) from None
            if value not in _ALLOWED_CELLS:
                raise ValidationError(
                    f"{path}: row {r + 1}, column '{columns[ci]}': "
                    f"value {value} outside {{-1,0,1}}"
                )
            X[r, slot] = value
        try:
            label = int(cells[label_idx])
        except ValueError:
            raise ValidationError(
                f"{path}: row {r + 1}: non-integer label {cells[label_idx]!r}"
            ) from None
        if label not in _ALLOWED_LABELS:
            raise ValidationError(
                f"{path}: row {r + 1}: label {label} outside {{-1,+1}}"
            )
        y[r] = label
    return LabeledDataset.from_arrays(FEATURE_NAMES, X, y)


def write_dataset(ds: LabeledDataset, path, format=None) -> None:
    """Write a dataset using canonical feature names (round-trips with
    ``load_dataset``)."""
    fmt = format or _infer_format(path)
    if fmt == "arff":
        with open(path, "w", encoding="utf-8") as f:
            f.write("@relation phishing_evidence\n\n")
            for name in ds.feature_names:
                f.write(f"@attribute {name} {{-1,0,1}}\n")
            f.write("@attribute label {-1,1}\n\n@data\n")
            for row, label in zip(ds.rows, ds.labels):
                f.write(",".join(str(int(v)) for v in row) + f",{int(label)}\n")
    elif fmt == "csv":
        with open(path, "w", encoding="utf-8", newline="") as f:
            writer = csv.writer(f)
            writer.writerow(list(ds.feature_names) + ["label"])
            for row, label in zip(ds.rows, ds.labels):
                writer.writerow([int(v) for v in row] + [int(label)])
    else:
        raise ConfigError(f"unknown format '{fmt}'")


def _round_half_up(x: float) -> int:
    return int(math.floor(x + 0.5))


def split(ds: LabeledDataset, spec: SplitSpec):
    """Partition rows into (train, test) on a seeded permutation of indices.

    |train| = round(train_fraction * N). Stratified mode fills per-class
    quotas (largest-remainder apportionment) walking the same permutation,
    keeping each class within one row of the target fraction. Same
    (dataset, spec) always yields the identical split; input row order
    participates through the permutation, which is the documented contract.
    """
    n = ds.n_rows
    if n < 2:
        raise ValidationError("need at least 2 rows to split")
    n_train = _round_half_up(spec.train_fraction * n)
    if n_train == 0 or n_train == n:
        raise ConfigError(
            f"train_fraction {spec.train_fraction} leaves an empty side for N={n}"
        )
    rng = np.random.default_rng(spec.seed)
    perm = rng.permutation(n)

    if not spec.stratified:
        train_idx, test_idx = perm[:n_train], perm[n_train:]
    else:
        counts = ds.class_counts()
        if counts[-1] == 0 or counts[1] == 0:
            raise ValidationError("stratified split needs at least one row per class")
        quotas = {}
        floors, remainders = {}, {}
        for c in (-1, 1):
            exact = spec.train_fraction * counts[c]
            floors[c] = int(math.floor(exact))
            remainders[c] = exact - floors[c]
        leftover = n_train - sum(floors.values())
        for c in sorted((-1, 1), key=lambda c: (-remainders[c], c)):
            quotas[c] = floors[c] + (1 if leftover > 0 else 0)
            leftover -= 1
        taken = {-1: 0, 1: 0}
        train_mask = np.zeros(n, dtype=bool)
        for i in perm:
            c = int(ds.labels[i])
            if taken[c] < quotas[c]:
                train_mask[i] = True
                taken[c] += 1
        train_idx = perm[train_mask[perm]]
        test_idx = perm[~train_mask[perm]]

    train, test = ds.subset(train_idx), ds.subset(test_idx)
    if train.n_rows == 0 or test.n_rows == 0:
        raise ConfigError("split produced an empty side")
    return train, test
