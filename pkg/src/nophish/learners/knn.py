"""Brute-force k-nearest-neighbours by Euclidean distance.

The model memorizes the training matrix. On ternary features all squared
distances are small integers, so they are computed exactly (float32 matmul,
rounded back to int) and sorted with a stable order: distance first, then
training-row index, which is the documented tie rule. The vote of the k
nearest decides the label; the phishing probability is the phishing share
among them; an even-k split falls back to the nearest neighbour's label.
"""

from dataclasses import dataclass, field

import numpy as np

from ..errors import TrainingError


@dataclass
class KnnModel:
    algorithm = "knn"

    X: np.ndarray
    y: np.ndarray
    k: int
    model_id: str = field(default="unsaved-knn")

    def _neighbour_votes(self, Q) -> np.ndarray:
        """(n_queries, k) labels of the k nearest training rows, nearest
        first, distance ties resolved toward the lower training index."""
        Q = np.asarray(Q, dtype=np.float32)
        if Q.ndim == 1:
            Q = Q.reshape(1, -1)
        T = self.X.astype(np.float32)
        sq_t = (T * T).sum(axis=1)
        out = np.empty((Q.shape[0], self.k), dtype=np.int8)
        chunk = max(1, int(8_000_000 // max(1, T.shape[0])))
        for start in range(0, Q.shape[0], chunk):
            q = Q[start:start + chunk]
            d2 = (q * q).sum(axis=1)[:, None] + sq_t[None, :] - 2.0 * (q @ T.T)
            d2 = np.rint(np.maximum(d2, 0.0)).astype(np.int32)
            order = np.argsort(d2, axis=1, kind="stable")[:, : self.k]
            out[start:start + chunk] = self.y[order]
        return out

    def predict_with_proba(self, Q):
        votes = self._neighbour_votes(Q)
        phish = (votes == -1).sum(axis=1)
        proba = phish / self.k
        labels = np.where(phish * 2 > self.k, -1, 1).astype(np.int8)
        tied = phish * 2 == self.k
        if tied.any():
            labels[tied] = votes[tied, 0]
        return labels, proba

    def predict(self, Q) -> np.ndarray:
        return self.predict_with_proba(Q)[0]

    def predict_proba(self, Q) -> np.ndarray:
        return self.predict_with_proba(Q)[1]


def train_knn(train, k: int = 5) -> KnnModel:
    """Memorize the training set. k must lie in [1, N]; the default 5 is odd
    so plain majority voting usually decides."""
    X = np.asarray(train.rows, dtype=np.int8)
    y = np.asarray(train.labels, dtype=np.int8)
    if X.shape[0] == 0:
        raise TrainingError("empty training set")
    if not 1 <= k <= X.shape[0]:
        raise TrainingError(f"k={k} outside [1, N={X.shape[0]}]")
    return KnnModel(X=X, y=y, k=int(k))


def knn_predict(model: KnnModel, x):
    """(label, phishing probability) for a single feature vector."""
    labels, proba = model.predict_with_proba(np.asarray(x).reshape(1, -1))
    return int(labels[0]), float(proba[0])
