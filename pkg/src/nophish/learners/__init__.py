"""From-scratch learners: CART tree, bagged random forest (with OOB score,
MDI and permutation importance), kNN, linear soft-margin SVM, plus the
versioned model container."""

from .forest import ForestModel, mdi_importance, train_forest
from .importance import importance_ranking, permutation_importance
from .knn import KnnModel, knn_predict, train_knn
from .persist import FORMAT_VERSION, MAGIC, load_model, save_model
from .svm import SvmModel, svm_predict, train_svm
from .tree import Tree, TreeNode, train_tree

ALGORITHMS = ("forest", "knn", "svm")

__all__ = [
    "ALGORITHMS",
    "FORMAT_VERSION",
    "MAGIC",
    "ForestModel",
    "KnnModel",
    "SvmModel",
    "Tree",
    "TreeNode",
    "importance_ranking",
    "knn_predict",
    "load_model",
    "mdi_importance",
    "permutation_importance",
    "save_model",
    "svm_predict",
    "train_forest",
    "train_knn",
    "train_svm",
    "train_tree",
]
