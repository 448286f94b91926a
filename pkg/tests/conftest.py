"""Shared fixtures and independent oracles for the test suite.

The oracle helpers below rebuild everything from plain 4x4 matrix algebra
(np.kron, np.trace, np.linalg.eigvalsh) so that the package's own
correlation-form formulas and hand-rolled eigensolver are checked against a
separate route.
"""

import numpy as np
import pytest

from rac_lab.qstate import BellDiagonalSpec, TwoQubitState

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = (SX, SY, SZ)
I2 = np.eye(2, dtype=complex)


def oracle_density_matrix(a0, b0, e) -> np.ndarray:
    """Density matrix assembled term by term with explicit Kronecker products."""
    a0 = np.asarray(a0, dtype=float)
    b0 = np.asarray(b0, dtype=float)
    e = np.asarray(e, dtype=float)
    rho = np.kron(I2, I2)
    for l in range(3):
        rho = rho + a0[l] * np.kron(PAULI[l], I2)
        rho = rho + b0[l] * np.kron(I2, PAULI[l])
        for m in range(3):
            rho = rho + e[l, m] * np.kron(PAULI[l], PAULI[m])
    return rho / 4.0


def oracle_conditional_bob(rho, direction, alpha):
    """(probability, Bob Bloch vector) after Alice projects along `direction`.

    Computed entirely from the density matrix: project, partial-trace over
    Alice by explicit index sums, then read off Pauli expectations.
    """
    direction = np.asarray(direction, dtype=float)
    sign = 1.0 if alpha == 0 else -1.0
    projector = 0.5 * (I2 + sign * (direction[0] * SX + direction[1] * SY + direction[2] * SZ))
    projected = np.kron(projector, I2) @ rho
    rho_b = np.zeros((2, 2), dtype=complex)
    for i in range(2):
        for j in range(2):
            for k in range(2):
                rho_b[j, k] += projected[2 * i + j, 2 * i + k]
    prob = float(np.trace(rho_b).real)
    bloch = np.array([float(np.trace(rho_b @ p).real) / prob for p in PAULI])
    return prob, bloch


def oracle_partial_transpose(rho) -> np.ndarray:
    """Transpose of the second-qubit indices, written as an explicit loop."""
    out = np.zeros((4, 4), dtype=complex)
    for i in range(2):
        for j in range(2):
            for k in range(2):
                for l in range(2):
                    out[2 * i + j, 2 * k + l] = rho[2 * i + l, 2 * k + j]
    return out


def oracle_min_eigenvalue(matrix) -> float:
    return float(np.linalg.eigvalsh(matrix)[0])


def random_state(rng: np.random.Generator) -> TwoQubitState:
    """A random full-rank valid state, rho = M M^dagger normalised."""
    m = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    rho = m @ m.conj().T
    rho /= np.trace(rho).real
    a0 = [float(np.trace(rho @ np.kron(p, I2)).real) for p in PAULI]
    b0 = [float(np.trace(rho @ np.kron(I2, p)).real) for p in PAULI]
    e = [
        [float(np.trace(rho @ np.kron(pl, pm)).real) for pm in PAULI]
        for pl in PAULI
    ]
    return TwoQubitState(a0, b0, e)


def random_bell_diagonal(rng: np.random.Generator, min_component=1e-3) -> BellDiagonalSpec:
    while True:
        e = rng.uniform(-1.0, 1.0, size=3)
        spec = BellDiagonalSpec(*e)
        if spec.is_positive(floor=0.0) and np.all(np.abs(e) >= min_component):
            return spec


def random_direction(rng: np.random.Generator) -> np.ndarray:
    v = rng.normal(size=3)
    return v / np.linalg.norm(v)


@pytest.fixture(scope="session")
def full_reproduction():
    """The complete reference reproduction at acceptance-grade parameters."""
    from rac_lab.reproduce import reproduce_paper

    return reproduce_paper(
        samples=100000, seed=42, spot_checks=1000, random_cases=1000, workers=1
    )
