"""Independent brute-force oracles the learner tests check against.

Everything here is deliberately naive pure Python: direct counting loops,
no numpy, no shared code with the implementations under test. The greedy
tree oracle enumerates every (feature, threshold) candidate by literal
counting and applies the documented selection rule; the kNN oracle scans
all pairs with exact integer distances.
"""

THRESHOLDS = (-0.5, 0.5)


def gini(counts):
    n = sum(counts)
    if n == 0:
        return 0.0
    return 1.0 - sum((c * c) for c in counts) / (n * n)


def gini_decrease_from_counts(n, a, b, nl, al, bl, nr, ar, br):
    g_parent = 1.0 - (a * a + b * b) / (n * n)
    g_left = 1.0 - (al * al + bl * bl) / (nl * nl)
    g_right = 1.0 - (ar * ar + br * br) / (nr * nr)
    return g_parent - (nl / n) * g_left - (nr / n) * g_right


def oracle_best_split(rows, labels, min_leaf):
    """(dG, feature, threshold) maximizing the impurity decrease, ties to
    the lowest feature then lowest threshold; None when no dG > 0 exists."""
    n = len(rows)
    n_features = len(rows[0])
    a = sum(1 for y in labels if y == -1)
    b = n - a
    best = None
    for f in range(n_features):
        for t in THRESHOLDS:
            al = sum(1 for r, y in zip(rows, labels) if r[f] <= t and y == -1)
            bl = sum(1 for r, y in zip(rows, labels) if r[f] <= t and y == 1)
            nl = al + bl
            nr = n - nl
            if nl < min_leaf or nr < min_leaf:
                continue
            ar, br = a - al, b - bl
            dg = gini_decrease_from_counts(n, a, b, nl, al, bl, nr, ar, br)
            if dg > 0.0 and (best is None or dg > best[0]):
                best = (dg, f, t)
    return best


def oracle_tree(rows, labels, max_depth=None, min_leaf=1, depth=0):
    """Nested dict mirror of the greedy CART contract:
    {"leaf": label} or {"feature": f, "threshold": t, "left":..., "right":...}."""
    n = len(rows)
    a = sum(1 for y in labels if y == -1)
    b = n - a

    def leaf():
        return {"leaf": -1 if a >= b else 1}

    if a == 0 or b == 0 or n < 2 * min_leaf:
        return leaf()
    if max_depth is not None and depth >= max_depth:
        return leaf()
    found = oracle_best_split(rows, labels, min_leaf)
    if found is None:
        return leaf()
    _, f, t = found
    left_rows = [(r, y) for r, y in zip(rows, labels) if r[f] <= t]
    right_rows = [(r, y) for r, y in zip(rows, labels) if r[f] > t]
    return {
        "feature": f,
        "threshold": t,
        "left": oracle_tree([r for r, _ in left_rows], [y for _, y in left_rows],
                            max_depth, min_leaf, depth + 1),
        "right": oracle_tree([r for r, _ in right_rows], [y for _, y in right_rows],
                             max_depth, min_leaf, depth + 1),
    }


def oracle_tree_predict(node, row):
    while "leaf" not in node:
        node = node["left"] if row[node["feature"]] <= node["threshold"] else node["right"]
    return node["leaf"]


def enumerate_depth2_accuracies(rows, labels):
    """Training accuracy of every depth-<=2 tree shape (root split, each
    child either a leaf or one more split, every leaf labeled optimally).
    Returns the maximum achievable accuracy."""
    n = len(rows)
    n_features = len(rows[0])

    def best_leaf_hits(subset):
        a = sum(1 for _, y in subset if y == -1)
        return max(a, len(subset) - a)

    def best_child_hits(subset):
        # leaf, or one split with optimal leaves
        best = best_leaf_hits(subset)
        for f in range(n_features):
            for t in THRESHOLDS:
                left = [(r, y) for r, y in subset if r[f] <= t]
                right = [(r, y) for r, y in subset if r[f] > t]
                if not left or not right:
                    continue
                best = max(best, best_leaf_hits(left) + best_leaf_hits(right))
        return best

    data = list(zip([tuple(r) for r in rows], labels))
    best = best_leaf_hits(data)  # depth-0 tree
    for f in range(n_features):
        for t in THRESHOLDS:
            left = [(r, y) for r, y in data if r[f] <= t]
            right = [(r, y) for r, y in data if r[f] > t]
            if not left or not right:
                continue
            best = max(best, best_child_hits(left) + best_child_hits(right))
    return best / n


def oracle_knn(train_rows, train_labels, query, k):
    """(label, phishing_fraction) by full scan. Sort key: (squared distance,
    training index); even-k vote ties fall back to the nearest neighbour."""
    scored = []
    for i, row in enumerate(train_rows):
        d2 = sum((int(p) - int(q)) ** 2 for p, q in zip(row, query))
        scored.append((d2, i))
    scored.sort()
    nearest = scored[:k]
    votes = [train_labels[i] for _, i in nearest]
    phish = sum(1 for v in votes if v == -1)
    if phish * 2 > k:
        label = -1
    elif phish * 2 < k:
        label = 1
    else:
        label = votes[0]
    return label, phish / k
