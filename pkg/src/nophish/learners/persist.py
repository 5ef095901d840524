"""Model container: gzip-compressed JSON, self-describing.

Layout (see docs/model-format.md): a top-level object with ``magic``
("nophish-model"), ``format_version`` (currently 1), ``algorithm`` tag,
``params``, ``seed`` and an algorithm-specific ``payload``. Trees are stored
as flat parallel arrays. Loading a truncated/garbled file raises
ModelCorruptError; an unsupported version raises ModelVersionError naming
both versions. No partial model ever escapes.
"""

import gzip
import hashlib
import json

import numpy as np

from ..errors import ModelCorruptError, ModelVersionError
from .forest import ForestModel
from .knn import KnnModel
from .svm import SvmModel
from .tree import Tree, TreeNode

MAGIC = "nophish-model"
FORMAT_VERSION = 1


def _tree_payload(tree: Tree) -> dict:
    return {
        "feat": tree._feat.tolist(),
        "cut": tree._cut.tolist(),
        "left": tree._left.tolist(),
        "right": tree._right.tolist(),
        "label": tree._label.tolist(),
        "n": _node_array(tree, "n"),
        "dg": _node_array(tree, "dg"),
    }


def _node_array(tree: Tree, what: str):
    """Per-flat-node sample counts / impurity decreases (for MDI replay)."""
    values = [0.0] * len(tree._feat)
    order = []
    # rebuild the same DFS order used by the flattener
    index = {}
    walk = [tree.root]
    i = 0
    while walk:
        node = walk.pop()
        index[id(node)] = i
        order.append(node)
        i += 1
        if not node.is_leaf:
            walk.append(node.right)
            walk.append(node.left)
    for node in order:
        values[index[id(node)]] = node.n if what == "n" else node.gini_decrease
    return values


def _tree_from_payload(raw: dict, n_features: int) -> Tree:
    feat = np.asarray(raw["feat"], dtype=np.int32)
    ns = raw.get("n") or [0] * len(feat)
    dgs = raw.get("dg") or [0.0] * len(feat)
    left = np.asarray(raw["left"], dtype=np.int32)
    right = np.asarray(raw["right"], dtype=np.int32)
    labels = np.asarray(raw["label"], dtype=np.int8)

    # reconstruct the node structure so MDI and structural walks still work
    def build(i: int) -> TreeNode:
        n = int(ns[i])
        if feat[i] < 0:
            phish = n if labels[i] == -1 else 0
            legit = n - phish
            return TreeNode(n=n, counts=(phish, legit))
        node = TreeNode(n=n, counts=(0, 0))
        node.feature = int(feat[i])
        node.threshold = -0.5 if raw["cut"][i] == 0 else 0.5
        node.gini_decrease = float(dgs[i])
        node.left = build(int(left[i]))
        node.right = build(int(right[i]))
        return node

    tree = Tree(root=build(0), n_features=n_features, max_depth=None, min_samples_leaf=1)
    tree._feat = feat
    tree._cut = np.asarray(raw["cut"], dtype=np.uint8)
    tree._left = left
    tree._right = right
    tree._label = labels
    return tree


def _payload_for(model) -> dict:
    if isinstance(model, ForestModel):
        return {
            "trees": [_tree_payload(t) for t in model.trees],
            "n_features": model.n_features,
            "oob_score": model.oob_score,
            "mdi": None if model.mdi is None else list(map(float, model.mdi)),
        }
    if isinstance(model, KnnModel):
        return {
            "X": model.X.tolist(),
            "y": model.y.tolist(),
        }
    if isinstance(model, SvmModel):
        return {
            "weights": list(map(float, model.weights)),
            "bias": model.bias,
            "objective_history": list(map(float, model.objective_history)),
        }
    raise TypeError(f"not a trainable model: {type(model).__name__}")


def _params_for(model) -> dict:
    if isinstance(model, ForestModel):
        return {
            "n_trees": model.n_trees,
            "m_try": model.m_try,
            "max_depth": model.max_depth,
            "min_samples_leaf": model.min_samples_leaf,
            "bootstrap": model.bootstrap,
        }
    if isinstance(model, KnnModel):
        return {"k": model.k}
    return {"lam": model.lam, "epochs": model.epochs}


def save_model(model, path) -> None:
    document = {
        "magic": MAGIC,
        "format_version": FORMAT_VERSION,
        "algorithm": model.algorithm,
        "params": _params_for(model),
        "seed": getattr(model, "seed", None),
        "payload": _payload_for(model),
    }
    blob = json.dumps(document, separators=(",", ":")).encode("utf-8")
    # filename and mtime pinned so identical models produce byte-identical files
    with open(path, "wb") as raw:
        with gzip.GzipFile(filename="", fileobj=raw, mode="wb",
                           compresslevel=6, mtime=0) as f:
            f.write(blob)
    model.model_id = _model_id(model.algorithm, blob)


def _model_id(algorithm: str, blob: bytes) -> str:
    return f"{algorithm}-v{FORMAT_VERSION}-{hashlib.sha256(blob).hexdigest()[:12]}"


def load_model(path):
    """Load any saved model; returns ForestModel | KnnModel | SvmModel."""
    try:
        with gzip.open(path, "rb") as f:
            blob = f.read()
    except (OSError, EOFError, gzip.BadGzipFile) as exc:
        raise ModelCorruptError(f"{path}: unreadable container: {exc}") from exc
    try:
        document = json.loads(blob.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ModelCorruptError(f"{path}: container is not valid JSON: {exc}") from exc
    if not isinstance(document, dict) or document.get("magic") != MAGIC:
        raise ModelCorruptError(f"{path}: missing '{MAGIC}' magic header")
    version = document.get("format_version")
    if version != FORMAT_VERSION:
        raise ModelVersionError(found=version, supported=FORMAT_VERSION)

    try:
        algorithm = document["algorithm"]
        params = document["params"]
        payload = document["payload"]
        seed = document.get("seed") or 0
        if algorithm == "forest":
            n_features = int(payload["n_features"])
            trees = [_tree_from_payload(t, n_features) for t in payload["trees"]]
            model = ForestModel(
                trees=trees,
                n_trees=len(trees),
                m_try=params["m_try"],
                max_depth=params["max_depth"],
                min_samples_leaf=params["min_samples_leaf"],
                seed=seed,
                bootstrap=params.get("bootstrap", True),
                n_features=n_features,
                oob_score=payload.get("oob_score"),
                mdi=None if payload.get("mdi") is None else np.asarray(payload["mdi"]),
            )
        elif algorithm == "knn":
            model = KnnModel(
                X=np.asarray(payload["X"], dtype=np.int8),
                y=np.asarray(payload["y"], dtype=np.int8),
                k=int(params["k"]),
            )
        elif algorithm == "svm":
            model = SvmModel(
                weights=np.asarray(payload["weights"], dtype=np.float64),
                bias=float(payload["bias"]),
                lam=float(params["lam"]),
                epochs=int(params["epochs"]),
                seed=seed,
                objective_history=list(payload.get("objective_history", [])),
            )
        else:
            raise ModelCorruptError(f"{path}: unknown algorithm tag {algorithm!r}")
    except (KeyError, TypeError, ValueError) as exc:
        raise ModelCorruptError(f"{path}: malformed payload: {exc}") from exc
    model.model_id = _model_id(algorithm, blob)
    return model
