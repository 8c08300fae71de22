import os
from pathlib import Path

import numpy as np
import pytest

FIXTURES = Path(__file__).resolve().parents[1] / "data" / "synthetic"


@pytest.fixture(scope="session")
def synthetic_paths():
    paths = {name: FIXTURES / f"{name}.csv" for name in ("spx", "vix", "vxo")}
    for p in paths.values():
        assert p.exists(), f"missing fixture {p}; run scripts/make_synthetic_fixtures.py"
    return paths


def real_data_dir():
    """Directory with real sp500.csv / vix.csv / vxo.csv closes, if configured.

    Set VOLDIST_DATA_DIR to run the data-dependent acceptance tests; the
    repository ships only synthetic fixtures.
    """
    root = os.environ.get("VOLDIST_DATA_DIR")
    if not root:
        return None
    root = Path(root)
    needed = ["sp500.csv", "vix.csv", "vxo.csv"]
    if all((root / n).exists() for n in needed):
        return root
    return None


requires_real_data = pytest.mark.skipif(
    real_data_dir() is None,
    reason="set VOLDIST_DATA_DIR to a directory with sp500.csv, vix.csv, vxo.csv",
)


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(1234)
