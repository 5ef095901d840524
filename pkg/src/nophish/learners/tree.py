"""Greedy CART decision tree over ternary ordinal features.

Features take values in {-1, 0, +1} and are treated as ordered numerics, so
the only candidate cut points are -0.5 and +0.5; the split search is exact.
At each node the (feature, threshold) pair maximizing the Gini impurity
decrease

    dG = G(node) - sum_children (n_child / n) * G(child),   G = 1 - sum_c p_c^2

is chosen, requiring dG > 0; ties break toward the lowest feature index,
then the lowest threshold. Growth stops on purity, max depth, or the
min-samples-leaf bound. A leaf predicts the majority class of its counts,
with exact ties going to -1 (phishing), the conservative side.

Internally rows are encoded once as ``key = 2 * (x + 1) + is_legit`` so the
per-node class-by-value histogram of all candidate features is a single
``bincount`` over a small integer matrix.
"""

from dataclasses import dataclass, field

import numpy as np

_THRESHOLDS = (-0.5, 0.5)


@dataclass
class TreeNode:
    """Either a split (feature/threshold/children set) or a leaf."""

    n: int
    counts: tuple  # (n_phishing, n_legitimate) at this node
    feature: int | None = None
    threshold: float | None = None
    left: "TreeNode | None" = None
    right: "TreeNode | None" = None
    gini_decrease: float = 0.0

    @property
    def is_leaf(self) -> bool:
        return self.feature is None

    def leaf_label(self) -> int:
        phish, legit = self.counts
        return -1 if phish >= legit else 1


@dataclass
class Tree:
    """A trained tree: the node structure plus flat arrays for batch
    prediction (feature/enc-threshold/left/right/leaf label per node)."""

    root: TreeNode
    n_features: int
    max_depth: int | None
    min_samples_leaf: int
    _feat: np.ndarray = field(default=None, repr=False)
    _cut: np.ndarray = field(default=None, repr=False)
    _left: np.ndarray = field(default=None, repr=False)
    _right: np.ndarray = field(default=None, repr=False)
    _label: np.ndarray = field(default=None, repr=False)

    def predict(self, X) -> np.ndarray:
        """Labels in {-1, +1} for an (n, F) ternary matrix."""
        X = np.asarray(X)
        if X.ndim == 1:
            X = X.reshape(1, -1)
        enc = (X.astype(np.int16) + 1).astype(np.uint8)
        pos = np.zeros(X.shape[0], dtype=np.int32)
        feat, cut, left, right = self._feat, self._cut, self._left, self._right
        while True:
            at_leaf = feat[pos] < 0
            if at_leaf.all():
                break
            active = ~at_leaf
            idx = np.nonzero(active)[0]
            p = pos[idx]
            go_left = enc[idx, feat[p]] <= cut[p]
            pos[idx] = np.where(go_left, left[p], right[p])
        return self._label[pos]

    def node_count(self) -> int:
        return len(self._feat)

    def mdi_contributions(self) -> np.ndarray:
        """Per-feature sum of (n_node / N_root) * dG over this tree's splits
        (unnormalized)."""
        out = np.zeros(self.n_features, dtype=np.float64)
        n_root = self.root.n
        stack = [self.root]
        while stack:
            node = stack.pop()
            if node.is_leaf:
                continue
            out[node.feature] += (node.n / n_root) * node.gini_decrease
            stack.append(node.left)
            stack.append(node.right)
        return out


def _gini_decrease(n, a, b, nl, al, bl, nr, ar, br) -> float:
    """dG from integer class counts (parent a/b, left al/bl, right ar/br)."""
    g_parent = 1.0 - (a * a + b * b) / (n * n)
    g_left = 1.0 - (al * al + bl * bl) / (nl * nl)
    g_right = 1.0 - (ar * ar + br * br) / (nr * nr)
    return g_parent - (nl / n) * g_left - (nr / n) * g_right


def _best_split(key_rows, min_leaf):
    """Exhaustive search over (feature, threshold) candidates.

    ``key_rows`` is the node's (n, m) slice of the key matrix restricted to
    the candidate features (ascending order). Returns
    (dG, local_feature_pos, threshold_index) or None.
    """
    n, m = key_rows.shape
    offsets = (np.arange(m, dtype=np.uint16) * 6).astype(np.uint16)
    hist = np.bincount(
        (key_rows.astype(np.uint16) + offsets).ravel(), minlength=6 * m
    ).reshape(m, 6)
    a_total = int(hist[0, 0] + hist[0, 2] + hist[0, 4])
    b_total = n - a_total
    best = None
    for j in range(m):
        h = hist[j]
        v0a, v0b, v1a, v1b = int(h[0]), int(h[1]), int(h[2]), int(h[3])
        # threshold -0.5: {-1} vs {0,+1}; threshold +0.5: {-1,0} vs {+1}
        for t_idx, (al, bl) in enumerate(((v0a, v0b), (v0a + v1a, v0b + v1b))):
            nl = al + bl
            nr = n - nl
            if nl < min_leaf or nr < min_leaf:
                continue
            ar, br = a_total - al, b_total - bl
            dg = _gini_decrease(n, a_total, b_total, nl, al, bl, nr, ar, br)
            if dg > 0.0 and (best is None or dg > best[0]):
                best = (dg, j, t_idx)
    return best


def _grow(key, idx, feats_all, m_try, depth, max_depth, min_leaf, rng) -> TreeNode:
    sub = key[idx]
    n = len(idx)
    a = int(np.count_nonzero((sub[:, 0] & 1) == 0))  # class bit is the low bit
    b = n - a
    node = TreeNode(n=n, counts=(a, b))
    if a == 0 or b == 0 or n < 2 * min_leaf:
        return node
    if max_depth is not None and depth >= max_depth:
        return node

    if m_try is not None and m_try < len(feats_all):
        feats = np.sort(rng.choice(feats_all, size=m_try, replace=False))
    else:
        feats = feats_all
    found = _best_split(sub[:, feats], min_leaf)
    if found is None:
        return node
    dg, local_j, t_idx = found
    feature = int(feats[local_j])
    node.feature = feature
    node.threshold = _THRESHOLDS[t_idx]
    node.gini_decrease = dg
    cut = t_idx  # encoded values 0,1,2; left side is enc <= t_idx
    col = key[idx, feature] >> 1
    go_left = col <= cut
    node.left = _grow(key, idx[go_left], feats_all, m_try, depth + 1, max_depth, min_leaf, rng)
    node.right = _grow(key, idx[~go_left], feats_all, m_try, depth + 1, max_depth, min_leaf, rng)
    return node


def _flatten(tree: Tree) -> None:
    feat, cut, left, right, label = [], [], [], [], []
    order = []
    stack = [tree.root]
    index_of = {}
    while stack:
        node = stack.pop()
        index_of[id(node)] = len(order)
        order.append(node)
        if not node.is_leaf:
            stack.append(node.right)
            stack.append(node.left)
    # children were assigned indices after parents; fill arrays in order
    for node in order:
        if node.is_leaf:
            feat.append(-1)
            cut.append(0)
            left.append(-1)
            right.append(-1)
            label.append(node.leaf_label())
        else:
            feat.append(node.feature)
            cut.append(0 if node.threshold == -0.5 else 1)
            left.append(index_of[id(node.left)])
            right.append(index_of[id(node.right)])
            label.append(0)
    tree._feat = np.asarray(feat, dtype=np.int32)
    tree._cut = np.asarray(cut, dtype=np.uint8)
    tree._left = np.asarray(left, dtype=np.int32)
    tree._right = np.asarray(right, dtype=np.int32)
    tree._label = np.asarray(label, dtype=np.int8)


def encode_rows(X) -> np.ndarray:
    X = np.asarray(X)
    if X.ndim == 1:
        X = X.reshape(1, -1)
    return (X.astype(np.int16) + 1).astype(np.uint8)


def train_tree(
    train,
    max_depth: int | None = None,
    min_samples_leaf: int = 1,
    m_try: int | None = None,
    rng=None,
    _encoded=None,
) -> Tree:
    """Fit a tree on a LabeledDataset (or anything with .rows/.labels).

    ``m_try``, when set, samples that many candidate features per split from
    ``rng``; the plain CART tree searches all features. Degenerate input
    (single class, too few rows) yields a single leaf.
    """
    if _encoded is not None:
        key, idx = _encoded
    else:
        X = np.asarray(train.rows)
        y = np.asarray(train.labels)
        enc = encode_rows(X)
        is_legit = (y == 1).astype(np.uint8)
        key = (enc << 1) | is_legit[:, None]
        idx = np.arange(X.shape[0], dtype=np.intp)
    n_features = key.shape[1]
    if rng is None:
        rng = np.random.default_rng(0)
    if min_samples_leaf < 1:
        min_samples_leaf = 1
    root = _grow(
        key, idx, np.arange(n_features, dtype=np.intp),
        m_try, 0, max_depth, min_samples_leaf, rng,
    )
    tree = Tree(root=root, n_features=n_features,
                max_depth=max_depth, min_samples_leaf=min_samples_leaf)
    _flatten(tree)
    return tree
