import os
import sys

import numpy as np
import pytest

REPO_ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
DATA_FILE = os.path.join(REPO_ROOT, "data", "phishing.arff")
FIXTURES_DIR = os.path.join(REPO_ROOT, "fixtures")
SHIPPED_MODEL = os.path.join(REPO_ROOT, "data", "models", "forest-default.model.json.gz")
API_SCHEMA = os.path.join(REPO_ROOT, "docs", "api-schema.json")

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from nophish.dataset import LabeledDataset, load_dataset  # noqa: E402


def make_ds(rows, labels, names=None):
    rows = np.asarray(rows, dtype=np.int8)
    if names is None:
        names = tuple(f"f{i}" for i in range(rows.shape[1]))
    return LabeledDataset.from_arrays(names, rows, labels)


def random_ternary(rng, n, f):
    return rng.integers(-1, 2, size=(n, f)).astype(np.int8)


@pytest.fixture(scope="session")
def uci():
    return load_dataset(DATA_FILE)


@pytest.fixture(scope="session")
def fixtures_dir():
    return FIXTURES_DIR


@pytest.fixture(scope="session")
def shipped_model():
    from nophish.learners import load_model
    return load_model(SHIPPED_MODEL)


@pytest.fixture(scope="session")
def fixture_providers():
    from nophish.probe import make_fixture_providers
    return make_fixture_providers(FIXTURES_DIR)
