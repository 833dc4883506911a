from pathlib import Path

import pytest

from lcutrunc.hamiltonian import parse_hamiltonian

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture
def two_term():
    """The worked two-weight example: weights 1.0 and 0.1 on two qubits."""
    return parse_hamiltonian("1.0 ZI\n0.1 XX", label="two-term")


@pytest.fixture
def single_z():
    return parse_hamiltonian("1.0 Z", label="single-z")


@pytest.fixture
def h2_path():
    return DATA_DIR / "h2_sto3g.txt"
