"""Exact dense-matrix verification of the truncated evolution on small systems.

Operators are plain complex ``numpy.ndarray`` matrices of dimension
``2**qubit_count``.  Everything here is deliberately dense: the module's
purpose is exact measurement of the true per-step and multi-step errors of
the amplified truncated operator against the exact evolution, so no
statevector or sparse shortcuts are taken.

Constructions are capped at a configurable qubit count (default 12, env
override ``LCUTRUNC_QUBIT_CAP``) to keep dense norms tractable at desk scale.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass
from functools import reduce
from typing import Sequence

import numpy as np

from .errors import CapExceeded, ConvergenceError
from .hamiltonian import PauliString, SortedHamiltonian
from .planner import (
    TruncationVector,
    as_levels,
    epsilon_bound,
    s_value,
    t_infinity,
)

DEFAULT_QUBIT_CAP = 12
QUBIT_CAP_ENV = "LCUTRUNC_QUBIT_CAP"

# Full decomposition is cheaper and exact up to this dimension; power
# iteration takes over beyond it.
_SVD_DIM_LIMIT = 64

PAULI_MATRICES = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def qubit_cap() -> int:
    """Configured dense-construction cap (env override, else 12)."""
    raw = os.environ.get(QUBIT_CAP_ENV)
    if raw is None:
        return DEFAULT_QUBIT_CAP
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{QUBIT_CAP_ENV} must be an integer, got {raw!r}") from None


def _check_cap(qubit_count: int, cap: int | None) -> None:
    limit = qubit_cap() if cap is None else cap
    if qubit_count > limit:
        raise CapExceeded(f"{qubit_count} qubits exceeds the dense cap of {limit}")


def pauli_string_matrix(op: PauliString) -> np.ndarray:
    """Dense matrix of a phased Pauli string via Kronecker products."""
    factors = [PAULI_MATRICES[axis] for axis in op.axes]
    return op.phase * reduce(np.kron, factors)


def hamiltonian_matrix(
    hamiltonian: SortedHamiltonian, m: int | None = None, cap: int | None = None
) -> np.ndarray:
    """Sum of the ``m`` largest terms as a dense matrix (all terms if omitted)."""
    _check_cap(hamiltonian.qubit_count, cap)
    if m is None:
        m = hamiltonian.num_terms
    if not 0 <= m <= hamiltonian.num_terms:
        raise ValueError(f"prefix length {m} out of range 0..{hamiltonian.num_terms}")
    dim = 2**hamiltonian.qubit_count
    total = np.zeros((dim, dim), dtype=complex)
    for term in hamiltonian.terms[:m]:
        total += term.alpha * pauli_string_matrix(term.op)
    return total


def exact_evolution(
    hamiltonian: SortedHamiltonian, t: float, cap: int | None = None
) -> np.ndarray:
    """exp(-i H t) by Hermitian eigendecomposition.

    Raises if the assembled matrix is not Hermitian (possible when folded
    phases of +-i make individual terms anti-Hermitian).
    """
    matrix = hamiltonian_matrix(hamiltonian, cap=cap)
    scale = max(1.0, float(np.abs(matrix).max()))
    if np.abs(matrix - matrix.conj().T).max() > 1e-12 * scale:
        raise ValueError("Hamiltonian matrix is not Hermitian; cannot exponentiate by eigendecomposition")
    eigenvalues, eigenvectors = np.linalg.eigh(matrix)
    phases = np.exp(-1j * t * eigenvalues)
    return (eigenvectors * phases) @ eigenvectors.conj().T


def truncated_series_operator(
    hamiltonian: SortedHamiltonian,
    levels: "TruncationVector | Sequence[int]",
    t: float,
    cap: int | None = None,
) -> np.ndarray:
    """The per-order truncated Taylor sum as a dense matrix.

    Order ``k`` contributes ``(-it)^k / k!`` times the ordered product of
    the per-order prefix Hamiltonians ``H_1 H_2 ... H_k``; an empty order
    terminates the series.
    """
    _check_cap(hamiltonian.qubit_count, cap)
    vec = as_levels(levels)
    dim = 2**hamiltonian.qubit_count
    total = np.eye(dim, dtype=complex)
    product = np.eye(dim, dtype=complex)
    coefficient = 1.0 + 0.0j
    for k, count in enumerate(vec.levels, start=1):
        if count == 0:
            break
        product = product @ hamiltonian_matrix(hamiltonian, count, cap=cap)
        coefficient *= -1j * t / k
        total += coefficient * product
    return total


def amplification_polynomial(operator: np.ndarray, s: float) -> np.ndarray:
    """(3/s) M - (4/s^3) M M^dag M; equals M exactly for unitary M at s = 2."""
    return (3.0 / s) * operator - (4.0 / s**3) * (operator @ operator.conj().T @ operator)


def amplified_operator(
    hamiltonian: SortedHamiltonian,
    levels: "TruncationVector | Sequence[int]",
    t: float,
    cap: int | None = None,
) -> np.ndarray:
    """Operator effectively applied after one oblivious amplification step."""
    vec = as_levels(levels)
    truncated = truncated_series_operator(hamiltonian, vec, t, cap=cap)
    s = s_value(hamiltonian, vec, t)
    return amplification_polynomial(truncated, s)


def power_iteration_norm(
    matrix: np.ndarray, rtol: float = 1e-12, max_iterations: int = 100_000
) -> float:
    """Largest singular value by power iteration on M^dag M."""
    gram = matrix.conj().T @ matrix
    dim = gram.shape[0]
    rng = np.random.default_rng(0x5EED)
    vector = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    vector /= np.linalg.norm(vector)
    estimate = 0.0
    for _ in range(max_iterations):
        image = gram @ vector
        norm = np.linalg.norm(image)
        if norm == 0.0:
            return 0.0
        vector = image / norm
        new_estimate = float(np.real(vector.conj() @ (gram @ vector)))
        if abs(new_estimate - estimate) <= rtol * new_estimate:
            return math.sqrt(max(new_estimate, 0.0))
        estimate = new_estimate
    raise ConvergenceError(f"power iteration did not converge within {max_iterations} iterations")


def operator_norm(
    matrix: np.ndarray, rtol: float = 1e-12, max_iterations: int = 100_000
) -> float:
    """Largest singular value; exact decomposition for small matrices."""
    matrix = np.asarray(matrix)
    if not np.all(np.isfinite(matrix)):
        raise ValueError("operator norm requires finite entries")
    if matrix.shape[0] <= _SVD_DIM_LIMIT:
        return float(np.linalg.svd(matrix, compute_uv=False)[0])
    return power_iteration_norm(matrix, rtol=rtol, max_iterations=max_iterations)


@dataclass(frozen=True)
class ErrorReport:
    """Measured operator-norm errors of the amplified step against exp(-iHt).

    ``delta`` is the single-step error; ``r_steps`` holds ``(r, error)``
    pairs for repeated applications.
    """

    levels: TruncationVector
    cost: int
    epsilon: float
    delta: float
    r_steps: tuple[tuple[int, float], ...] = ()

    def to_json(self) -> str:
        payload = {
            "levels": list(self.levels.levels),
            "cost": self.cost,
            "epsilon": self.epsilon,
            "delta": self.delta,
            "r_steps": [{"r": r, "error": err} for r, err in self.r_steps],
        }
        return json.dumps(payload, indent=2) + "\n"

    def to_csv(self) -> str:
        header = "levels,cost,epsilon,delta,r,r_step_error"
        tag = ";".join(str(v) for v in self.levels.levels)
        rows = self.r_steps if self.r_steps else ((1, self.delta),)
        lines = [header]
        for r, err in rows:
            lines.append(f"{tag},{self.cost},{self.epsilon!r},{self.delta!r},{r},{err!r}")
        return "\n".join(lines) + "\n"


def single_step_error(
    hamiltonian: SortedHamiltonian,
    levels: "TruncationVector | Sequence[int]",
    cap: int | None = None,
) -> ErrorReport:
    """Measured ||U(t_inf) - amplified(t_inf)|| alongside the analytic bound."""
    vec = as_levels(levels)
    t = t_infinity(hamiltonian)
    exact = exact_evolution(hamiltonian, t, cap=cap)
    amplified = amplified_operator(hamiltonian, vec, t, cap=cap)
    delta = operator_norm(exact - amplified)
    return ErrorReport(
        levels=vec,
        cost=vec.cost,
        epsilon=epsilon_bound(hamiltonian, vec),
        delta=delta,
    )


def multi_step_error(
    hamiltonian: SortedHamiltonian,
    levels: "TruncationVector | Sequence[int]",
    r_max: int,
    cap: int | None = None,
) -> ErrorReport:
    """Measured ||U^r - amplified^r|| for r = 1..r_max by repeated multiplication."""
    if r_max < 1:
        raise ValueError("r_max must be at least 1")
    vec = as_levels(levels)
    t = t_infinity(hamiltonian)
    exact = exact_evolution(hamiltonian, t, cap=cap)
    amplified = amplified_operator(hamiltonian, vec, t, cap=cap)
    exact_power = np.eye(exact.shape[0], dtype=complex)
    amplified_power = np.eye(exact.shape[0], dtype=complex)
    r_steps = []
    for r in range(1, r_max + 1):
        exact_power = exact_power @ exact
        amplified_power = amplified_power @ amplified
        r_steps.append((r, operator_norm(exact_power - amplified_power)))
    return ErrorReport(
        levels=vec,
        cost=vec.cost,
        epsilon=epsilon_bound(hamiltonian, vec),
        delta=r_steps[0][1],
        r_steps=tuple(r_steps),
    )
