from pathlib import Path

import numpy as np
import pytest

from evonas.data import load_csv

DATA_DIR = Path(__file__).resolve().parent.parent / "data"


@pytest.fixture(scope="session")
def wbcd():
    return load_csv(
        DATA_DIR / "wbcd.csv",
        label_column="diagnosis",
        label_mapping={"m": 0, "b": 1},
        drop_columns=("id",),
    )


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
