"""Linear soft-margin SVM trained by seeded stochastic subgradient descent.

Minimizes  lam/2 * ||w||^2 + (1/N) * sum max(0, 1 - y_i (w.x_i + b))  with
per-sample updates at step size 1/(lam * t) over seeded epoch permutations
(the bias is not regularized). The shipped weights are the final epoch's
iterate average, which damps the single-sample noise considerably.

Prediction: label = sign(w.x + b) with 0 mapped to -1 (conservative). The
phishing "probability" is a logistic squash of the margin, sigmoid(-margin);
it is a monotone heuristic, not a calibrated probability.
"""

from dataclasses import dataclass, field

import numpy as np

from ..errors import TrainingError


@dataclass
class SvmModel:
    algorithm = "svm"

    weights: np.ndarray
    bias: float
    lam: float
    epochs: int
    seed: int
    objective_history: list = field(default_factory=list)
    model_id: str = field(default="unsaved-svm")

    def margins(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=np.float64)
        if X.ndim == 1:
            X = X.reshape(1, -1)
        return X @ self.weights + self.bias

    def predict(self, X) -> np.ndarray:
        return np.where(self.margins(X) > 0.0, 1, -1).astype(np.int8)

    def predict_proba(self, X) -> np.ndarray:
        m = np.clip(self.margins(X), -60.0, 60.0)
        return 1.0 / (1.0 + np.exp(m))


def objective(weights, bias, X, y, lam) -> float:
    margins = y * (X @ weights + bias)
    hinge = np.maximum(0.0, 1.0 - margins).mean()
    return 0.5 * lam * float(weights @ weights) + float(hinge)


def train_svm(train, lam: float = 1e-4, epochs: int = 40, seed: int = 0) -> SvmModel:
    """Seeded subgradient descent over `epochs` full passes.

    Records the objective at each epoch's averaged iterate; on a fixed
    dataset that sequence is non-increasing up to stochastic noise.
    Raises TrainingError when only one class is present.
    """
    X = np.asarray(train.rows, dtype=np.float64)
    y = np.asarray(train.labels, dtype=np.float64)
    n, f = X.shape
    if n < 2:
        raise TrainingError("SVM training needs at least 2 rows")
    if len(np.unique(y)) < 2:
        raise TrainingError("SVM training needs both classes present")
    if lam <= 0:
        raise TrainingError("lam must be positive")
    if epochs < 1:
        raise TrainingError("epochs must be >= 1")

    rng = np.random.default_rng(seed)
    w = np.zeros(f)
    b = 0.0
    t = 0
    history = []
    w_avg, b_avg = w, b
    for _ in range(epochs):
        order = rng.permutation(n)
        w_sum = np.zeros(f)
        b_sum = 0.0
        for i in order:
            t += 1
            eta = 1.0 / (lam * t)
            decay = 1.0 - eta * lam  # == 1 - 1/t
            if y[i] * (X[i] @ w + b) < 1.0:
                w = decay * w + (eta * y[i]) * X[i]
                b += eta * y[i]
            else:
                w = decay * w
            w_sum += w
            b_sum += b
        w_avg = w_sum / n
        b_avg = b_sum / n
        history.append(objective(w_avg, b_avg, X, y, lam))

    return SvmModel(
        weights=w_avg,
        bias=float(b_avg),
        lam=float(lam),
        epochs=int(epochs),
        seed=int(seed),
        objective_history=history,
    )


def svm_predict(model: SvmModel, x):
    """(label, margin, phishing probability) for one feature vector."""
    margin = float(model.margins(np.asarray(x).reshape(1, -1))[0])
    label = 1 if margin > 0.0 else -1
    proba = float(1.0 / (1.0 + np.exp(np.clip(margin, -60.0, 60.0))))
    return label, margin, proba
