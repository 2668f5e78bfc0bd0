"""Pytest configuration and fixtures."""

from pathlib import Path

import pytest

from common.config import Tolerances, get_tolerances
from testfun import BumpSpec, TestParams, bump_spec, params_new

DATA_DIR = Path(__file__).resolve().parent.parent / "data"


@pytest.fixture(scope="session")
def tolerances() -> Tolerances:
    """Versioned tolerances from common/fixtures.toml."""
    return get_tolerances()


@pytest.fixture(scope="session")
def params() -> TestParams:
    """Standard desk-scale parameters (X, T) = (10, 4)."""
    return params_new(10.0, 4.0)


@pytest.fixture(scope="session")
def params_small_x() -> TestParams:
    """(X, T) = (8, 3), used by the Kuznetsov checks."""
    return params_new(8.0, 3.0)


@pytest.fixture(scope="session")
def bump() -> BumpSpec:
    """Bump on [10, 20]."""
    return bump_spec(10.0)


@pytest.fixture
def sample_eigenvalues() -> Path:
    """Illustrative eigenvalue file shipped with the repository."""
    return DATA_DIR / "sample_eigenvalues.txt"


@pytest.fixture
def eigenvalue_file(tmp_path):
    """Factory writing an eigenvalue file with the given content."""

    def write(content: str) -> Path:
        path = tmp_path / "eigenvalues.txt"
        path.write_text(content, encoding="utf-8")
        return path

    return write


@pytest.fixture
def out_dir(tmp_path) -> Path:
    """Empty report directory."""
    path = tmp_path / "reports"
    path.mkdir()
    return path
