"""Shared helpers for the test suite.

The matrix helpers here are intentionally independent of the package's own
dense constructions so they can serve as oracles.
"""

from functools import reduce

import numpy as np

from lcutrunc.hamiltonian import HamiltonianTerm, PauliString, SortedHamiltonian

PAULI_2X2 = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def kron_chain(axes: str) -> np.ndarray:
    return reduce(np.kron, [PAULI_2X2[a] for a in axes])


def matrix_from_raw(coefficients, axes_list) -> np.ndarray:
    """Sum of raw (possibly signed/complex) coefficients times Pauli strings."""
    dim = 2 ** len(axes_list[0])
    total = np.zeros((dim, dim), dtype=complex)
    for coeff, axes in zip(coefficients, axes_list):
        total += coeff * kron_chain(axes)
    return total


def random_axes(rng: np.random.Generator, qubit_count: int, count: int) -> list[str]:
    """Distinct random Pauli strings."""
    seen: set[int] = set()
    out: list[str] = []
    while len(out) < count:
        code = int(rng.integers(4**qubit_count))
        if code in seen:
            continue
        seen.add(code)
        axes = ""
        for _ in range(qubit_count):
            axes += "IXYZ"[code % 4]
            code //= 4
        out.append(axes)
    return out


def random_pauli_hamiltonian(
    rng: np.random.Generator,
    qubit_count: int,
    num_terms: int,
    decades: float = 2.0,
    signed: bool = True,
) -> SortedHamiltonian:
    """Random Hermitian Hamiltonian with log-uniform weight magnitudes."""
    terms = []
    for axes in random_axes(rng, qubit_count, num_terms):
        alpha = float(10.0 ** rng.uniform(-decades, 0.0))
        phase = -1 + 0j if (signed and rng.random() < 0.5) else 1 + 0j
        terms.append(HamiltonianTerm(alpha=alpha, op=PauliString(axes=axes, phase=phase)))
    return SortedHamiltonian.from_terms(terms)


def random_contiguous_levels(
    rng: np.random.Generator, num_terms: int, max_orders: int
) -> tuple[int, ...]:
    """Truncation vector with no empty order before a populated one."""
    orders = int(rng.integers(1, max_orders + 1))
    return tuple(int(rng.integers(1, num_terms + 1)) for _ in range(orders))
