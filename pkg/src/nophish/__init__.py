"""nophish: phishing-website detection.

Extracts 22 ternary evidence features from a URL, its page content, and
external lookups; classifies with a from-scratch bagged random forest (kNN
and a linear SVM ship as comparison learners); serves safe/warning/dangerous
verdicts over a small HTTP JSON API consumed by the browser-extension popup.
"""

__version__ = "0.1.0"

from .dataset import LabeledDataset, SplitSpec, load_dataset, split, write_dataset
from .errors import (
    ConfigError,
    ModelCorruptError,
    ModelFormatError,
    ModelVersionError,
    NoPhishError,
    ParseError,
    TrainingError,
    UrlError,
    ValidationError,
)
from .evaluation import (
    ConfusionMatrix,
    EvalReport,
    compare_algorithms,
    field_bench,
    metrics,
)
from .evidence import ExternalEvidence, PageArtifacts, WhoisRecord
from .features import FEATURE_NAMES, FeatureVector, extract_all, parse_url
from .learners import (
    ForestModel,
    KnnModel,
    SvmModel,
    load_model,
    mdi_importance,
    permutation_importance,
    save_model,
    train_forest,
    train_knn,
    train_svm,
    train_tree,
)
from .probe import (
    FetchPolicy,
    ProviderSet,
    fetch_page,
    gather_evidence,
    make_fixture_providers,
    make_live_providers,
    make_stub_providers,
)
from .service import ScanReport, ServiceConfig, VerdictPolicy, scan, serve
