# Copyright (c) 2025 Mathias Ertl
# Licensed under the MIT License. See LICENSE file for details.

"""Conftest module for pytest."""

from pathlib import Path

import numpy as np
import pytest

from mlz_workbench import families
from mlz_workbench.model import canonicalize, load_model
from mlz_workbench.models import MlzModel, PropagationConfig
from mlz_workbench.output import setup_logging

TEST_DIR = Path(__file__).parent.absolute()
ROOT_DIR = TEST_DIR.parent
TEST_DATA_DIR = TEST_DIR / "data"
TEST_MODELS_DIR = TEST_DATA_DIR / "models"

assert TEST_MODELS_DIR.exists()

#: Tolerance when comparing propagated with exact probabilities.
ORACLE_TOLERANCE = 2e-3


def random_model(seed: int) -> MlzModel:
    """Random 4-level model with complex couplings between all levels.

    Slopes are close to (-2, -0.5, 0.7, 1.8), so sums of two slopes are distinct as well.
    """
    rng = np.random.default_rng(seed)
    slopes = np.array([-2, -0.5, 0.7, 1.8]) + rng.uniform(-0.05, 0.05, 4)
    couplings = np.triu(rng.uniform(-0.4, 0.4, (4, 4)) + 1j * rng.uniform(-0.4, 0.4, (4, 4)), 1)
    model, _report = canonicalize(slopes, rng.uniform(-1, 1, 4), couplings + couplings.conj().T)
    return model


def pytest_configure(config: pytest.Config) -> None:
    """Pytest configuration."""
    config.addinivalue_line("markers", "model_path(name): Path to a model file.")
    config.addinivalue_line("markers", "model_file(name): Loaded (canonical) model from the given file.")


@pytest.fixture(scope="session", autouse=True)
def global_setup() -> None:
    """An auto-use session fixture to configure logging."""
    setup_logging(level="INFO", no_colors=True)


@pytest.fixture
def model_path(request: pytest.FixtureRequest) -> Path:
    """Fixture to get a model path from the test fixtures."""
    marker = request.node.get_closest_marker("model_path")
    if marker is None:
        raise ValueError("model_path fixture requires a marker with a file name.")
    else:
        data: str = marker.args[0]

    return TEST_MODELS_DIR / data


@pytest.fixture
def model_file(request: pytest.FixtureRequest) -> MlzModel:
    """Fixture to get a canonical model from the test fixtures."""
    marker = request.node.get_closest_marker("model_file")
    if marker is None:
        raise ValueError("model_file fixture requires a marker with a file name.")
    else:
        data: str = marker.args[0]

    model, _report = load_model(TEST_MODELS_DIR / data)
    return model


@pytest.fixture(scope="session")
def config() -> PropagationConfig:
    """Propagation settings used by all tests comparing with exact results."""
    return PropagationConfig(t_end=40.0, error_tolerance=1e-10)


@pytest.fixture
def two_level_model() -> MlzModel:
    """Two levels with `g = 0.5` and a slope difference of 1."""
    return families.two_level(-0.5, 0.5, 0.5)


@pytest.fixture
def chain3_model() -> MlzModel:
    """Three-level chain with slopes (-1, 0, 1) and both couplings 0.5."""
    return families.chain_model([-1, 0, 1], [0.5, 0.5])


@pytest.fixture
def do_model() -> MlzModel:
    """Demkov-Osherov model with a band of three levels."""
    return families.demkov_osherov_model(1, [1.5, 0, -1.5], [0.4, 0.3, 0.5])


@pytest.fixture
def bowtie_model() -> MlzModel:
    """4-state bow-tie with the parameters of the pseudo bow-tie study at `eps = 1`."""
    return families.bowtie4_model(-1, 1.25, 1, 0.37, 0.45)


@pytest.fixture
def pseudo_bowtie_model() -> MlzModel:
    """Pseudo bow-tie at `eps = 1`."""
    return families.bowtie4_model(-1, 1.25, 1, 0.37, 0.45, pseudo=True)


@pytest.fixture
def spin32_model() -> MlzModel:
    """Spin-3/2 model, canonical level order is 1, 3, 4, 2."""
    return families.spin32_model(-1, -0.5, 1, 0.4, 0.3)


@pytest.fixture
def bowtie_c_model() -> MlzModel:
    """Two slanted levels crossing a parallel pair of maximal slope."""
    return families.bowtie_c_model(-1, -0.5, 1, 1, 0.3, 0.4)
