"""Operator-level model of the prepare/select/amplify circuit on tiny instances.

The ancilla is split into an order register ``q`` (one qubit per populated
Taylor order, unary-coded) and per-order index registers ``c_k`` (binary,
``ceil(log2 L_k)`` qubits).  The registers are modeled as integer-indexed
tensor factors ordered ``q, c_1, ..., c_kappa, system``, so the block of an
operator between ancilla-zero states is simply its top-left system-sized
submatrix.

This module verifies operator semantics, not gate decompositions: the
prepare unitary is any orthonormal completion of its specified first column,
and resource counts are closed-form estimates.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import CapExceeded
from .hamiltonian import SortedHamiltonian
from .planner import TruncationVector, as_levels, s_value, t_infinity
from .densesim import (
    amplified_operator,
    operator_norm,
    pauli_string_matrix,
    truncated_series_operator,
)

# Ancilla-space cap for dense prepare construction.
DEFAULT_ANCILLA_DIM_CAP = 2**10
# Combined ancilla (x) system cap for select and the walk operators.
DEFAULT_TOTAL_DIM_CAP = 2**12


@dataclass(frozen=True)
class AncillaLayout:
    """Widths of the ancilla registers for one truncation vector."""

    kappa: int
    c_widths: tuple[int, ...]
    total_ancillas: int
    reflection_ancillas: int

    @property
    def ancilla_dim(self) -> int:
        return 2**self.total_ancillas


@dataclass(frozen=True)
class ResourceEstimate:
    """Closed-form gate-count proxies for one amplified application."""

    layout: AncillaLayout
    t_proxy: int
    prepare_rotations: int
    prepare_state_sizes: tuple[int, ...]
    select_ops: int

    def to_json(self) -> str:
        payload = {
            "kappa": self.layout.kappa,
            "c_widths": list(self.layout.c_widths),
            "total_ancillas": self.layout.total_ancillas,
            "reflection_ancillas": self.layout.reflection_ancillas,
            "t_proxy": self.t_proxy,
            "prepare_rotations": self.prepare_rotations,
            "prepare_state_sizes": list(self.prepare_state_sizes),
            "select_ops": self.select_ops,
        }
        return json.dumps(payload, indent=2) + "\n"


def _contiguous_levels(levels: "TruncationVector | Sequence[int]") -> TruncationVector:
    vec = as_levels(levels)
    if vec.kappa == 0:
        raise ValueError("empty truncation vector has no circuit realization")
    if not vec.is_contiguous():
        raise ValueError(
            f"orders with zero retained terms inside {tuple(vec.levels)} are not "
            "representable; truncate at the first empty order instead"
        )
    return vec


def layout_for(levels: "TruncationVector | Sequence[int]") -> AncillaLayout:
    """Register widths for a contiguous truncation vector."""
    vec = _contiguous_levels(levels)
    c_widths = tuple((count - 1).bit_length() for count in vec.levels)
    total = vec.kappa + sum(c_widths)
    return AncillaLayout(
        kappa=vec.kappa,
        c_widths=c_widths,
        total_ancillas=total,
        # multi-controlled reflection needs (controls - 1) work qubits; the
        # closed form goes negative for single-qubit ancillas, hence the clamp
        reflection_ancillas=max(0, total - 2),
    )


def estimate_resources(levels: "TruncationVector | Sequence[int]") -> ResourceEstimate:
    """Fill all resource-count fields from closed-form expressions."""
    vec = _contiguous_levels(levels)
    layout = layout_for(vec)
    return ResourceEstimate(
        layout=layout,
        t_proxy=vec.cost,
        prepare_rotations=layout.kappa - 1,
        prepare_state_sizes=tuple(vec.levels),
        select_ops=vec.cost,
    )


def _unitary_with_first_column(column: np.ndarray) -> np.ndarray:
    """Complete a unit vector to a unitary whose first column it is."""
    dim = column.shape[0]
    seed = np.eye(dim, dtype=complex)
    seed[:, 0] = column
    q, r = np.linalg.qr(seed)
    q[:, 0] *= r[0, 0]
    return q


def _unary_index(k: int, kappa: int) -> int:
    """Basis index of the unary state with the first k of kappa qubits set."""
    return sum(2 ** (kappa - m) for m in range(1, k + 1))


def prepare_q_weights(
    hamiltonian: SortedHamiltonian,
    levels: "TruncationVector | Sequence[int]",
    t: float,
) -> tuple[np.ndarray, float]:
    """Unnormalized order-register weights t^k/k! prod_j Lambda_j and their sum.

    The sum is the normalization constant of the order register, which must
    coincide with s(t).
    """
    vec = _contiguous_levels(levels)
    weights = [1.0]
    running = 1.0
    for k, count in enumerate(vec.levels, start=1):
        running *= t * hamiltonian.prefix_lambda(count) / k
        weights.append(running)
    array = np.array(weights)
    return array, float(np.sum(array))


def build_prepare(
    hamiltonian: SortedHamiltonian,
    levels: "TruncationVector | Sequence[int]",
    t: float,
    ancilla_dim_cap: int = DEFAULT_ANCILLA_DIM_CAP,
) -> np.ndarray:
    """Dense prepare unitary on the ancilla space.

    Acts independently on each register: the order register receives the
    square-rooted order weights on unary states, each index register the
    square-rooted term weights.  Only the action on the all-zeros state is
    specified; the rest of each factor is an orthonormal completion.
    """
    vec = _contiguous_levels(levels)
    layout = layout_for(vec)
    if layout.ancilla_dim > ancilla_dim_cap:
        raise CapExceeded(
            f"ancilla dimension {layout.ancilla_dim} exceeds cap {ancilla_dim_cap}"
        )

    weights, normalization = prepare_q_weights(hamiltonian, vec, t)
    q_column = np.zeros(2**layout.kappa, dtype=complex)
    for k, weight in enumerate(weights):
        q_column[_unary_index(k, layout.kappa)] = math.sqrt(weight / normalization)
    factors = [_unitary_with_first_column(q_column)]

    for k, count in enumerate(vec.levels, start=1):
        width = layout.c_widths[k - 1]
        if width == 0:
            continue
        lam = hamiltonian.prefix_lambda(count)
        column = np.zeros(2**width, dtype=complex)
        for l in range(count):
            column[l] = math.sqrt(hamiltonian.terms[l].alpha / lam)
        factors.append(_unitary_with_first_column(column))

    prepare = factors[0]
    for factor in factors[1:]:
        prepare = np.kron(prepare, factor)
    return prepare


def build_select(
    hamiltonian: SortedHamiltonian,
    levels: "TruncationVector | Sequence[int]",
    total_dim_cap: int = DEFAULT_TOTAL_DIM_CAP,
) -> np.ndarray:
    """Dense select unitary on ancilla (x) system.

    Block diagonal over ancilla basis states: for order k (unary) and
    indices l_1..l_k it applies (-i h_{l_1}) ... (-i h_{l_k}) to the system,
    leaving registers beyond order k inert.  Ancilla states outside the
    coded range act as identity, which keeps the operator unitary without
    affecting the verified block.
    """
    vec = _contiguous_levels(levels)
    layout = layout_for(vec)
    sys_dim = 2**hamiltonian.qubit_count
    total_dim = layout.ancilla_dim * sys_dim
    if total_dim > total_dim_cap:
        raise CapExceeded(f"total dimension {total_dim} exceeds cap {total_dim_cap}")

    applied = [-1j * pauli_string_matrix(term.op) for term in hamiltonian.terms]
    order_of_unary = {_unary_index(k, layout.kappa): k for k in range(layout.kappa + 1)}
    c_dims = [2**width for width in layout.c_widths]

    select = np.zeros((total_dim, total_dim), dtype=complex)
    for ancilla in range(layout.ancilla_dim):
        remainder = ancilla
        indices = []
        for dim in reversed(c_dims):
            indices.append(remainder % dim)
            remainder //= dim
        indices.reverse()
        order = order_of_unary.get(remainder)

        block = np.eye(sys_dim, dtype=complex)
        if order is not None:
            for m in range(order):
                if indices[m] < vec.levels[m]:
                    block = block @ applied[indices[m]]
        start = ancilla * sys_dim
        select[start : start + sys_dim, start : start + sys_dim] = block
    return select


def build_walk_operators(
    hamiltonian: SortedHamiltonian,
    levels: "TruncationVector | Sequence[int]",
    t: float,
    total_dim_cap: int = DEFAULT_TOTAL_DIM_CAP,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Assemble (W, R, A): the sandwich, the reflection, and one amplified step."""
    vec = _contiguous_levels(levels)
    layout = layout_for(vec)
    sys_dim = 2**hamiltonian.qubit_count
    total_dim = layout.ancilla_dim * sys_dim
    if total_dim > total_dim_cap:
        raise CapExceeded(f"total dimension {total_dim} exceeds cap {total_dim_cap}")

    prepare = build_prepare(hamiltonian, vec, t, ancilla_dim_cap=total_dim_cap)
    select = build_select(hamiltonian, vec, total_dim_cap=total_dim_cap)
    identity = np.eye(sys_dim, dtype=complex)
    prepare_full = np.kron(prepare, identity)
    walk = prepare_full.conj().T @ select @ prepare_full

    diagonal = -np.ones(total_dim)
    diagonal[:sys_dim] = 1.0
    reflection = np.diag(diagonal).astype(complex)

    amplified = -walk @ reflection @ walk.conj().T @ reflection @ walk
    return walk, reflection, amplified


@dataclass(frozen=True)
class IdentityReport:
    """Residual norms of the circuit blocks against the directly built operators."""

    levels: TruncationVector
    t: float
    walk_block_residual: float
    amplified_block_residual: float
    normalization_error: float

    def to_csv(self) -> str:
        header = "levels,t,walk_block_residual,amplified_block_residual,normalization_error"
        tag = ";".join(str(v) for v in self.levels.levels)
        row = (
            f"{tag},{self.t!r},{self.walk_block_residual!r},"
            f"{self.amplified_block_residual!r},{self.normalization_error!r}"
        )
        return header + "\n" + row + "\n"


def verify_identities(
    hamiltonian: SortedHamiltonian,
    levels: "TruncationVector | Sequence[int]",
    t: float | None = None,
    total_dim_cap: int = DEFAULT_TOTAL_DIM_CAP,
) -> IdentityReport:
    """Check the two block identities of the construction.

    The ancilla-zero block of W must equal the truncated sum divided by its
    normalization; the same block of A must equal the amplified operator.
    Both reference operators are built independently by the dense simulator.
    """
    vec = _contiguous_levels(levels)
    if t is None:
        t = t_infinity(hamiltonian)
    sys_dim = 2**hamiltonian.qubit_count
    walk, _, amplified = build_walk_operators(hamiltonian, vec, t, total_dim_cap=total_dim_cap)

    truncated = truncated_series_operator(hamiltonian, vec, t)
    s = s_value(hamiltonian, vec, t)
    reference_amplified = amplified_operator(hamiltonian, vec, t)

    walk_block = walk[:sys_dim, :sys_dim]
    amplified_block = amplified[:sys_dim, :sys_dim]
    _, normalization = prepare_q_weights(hamiltonian, vec, t)

    return IdentityReport(
        levels=vec,
        t=t,
        walk_block_residual=operator_norm(walk_block - truncated / s),
        amplified_block_residual=operator_norm(amplified_block - reference_amplified),
        normalization_error=abs(normalization - s),
    )
