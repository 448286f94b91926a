"""Bloch-representation mathematics for one- and two-qubit states.

A single qubit is a real 3-vector s with |s| <= 1 (rho = (1 + s.sigma)/2); a
two-qubit state is held as the triple (a0, b0, E): the local Bloch vectors of
the two sides plus the 3x3 matrix of joint Pauli correlations.  Measurement
statistics, post-measurement updates, validity (density-matrix positivity),
separability (positive partial transpose, exact for two qubits) and the
geometric discord of Bell-diagonal states all live here.

Everything is a pure function of its inputs; state objects are immutable and
safe to share across threads or processes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidStateError, NullEventError
from .linalg import hermitian_eigenvalues, partial_transpose

UNIT_NORM_TOL = 1e-12
BLOCH_NORM_TOL = 1e-12
CORRELATION_ENTRY_TOL = 1e-12
TRACE_TOL = 1e-12
EIGENVALUE_FLOOR = -1e-10      # minimum admissible density-matrix eigenvalue
BELL_POSITIVITY_FLOOR = -4e-12
NULL_EVENT_TOL = 1e-12

PAULI = np.array(
    [
        [[0.0, 1.0], [1.0, 0.0]],
        [[0.0, -1.0j], [1.0j, 0.0]],
        [[1.0, 0.0], [0.0, -1.0]],
    ],
    dtype=complex,
)


def _as_vec3(v, name: str) -> np.ndarray:
    arr = np.asarray(v, dtype=float)
    if arr.shape != (3,):
        raise ValueError(f"{name} must be a real 3-vector, got shape {arr.shape}")
    return arr


def as_unit_vector(v) -> np.ndarray:
    """Validate a measurement direction: unit Euclidean norm within 1e-12."""
    arr = _as_vec3(v, "direction")
    norm = float(np.linalg.norm(arr))
    if abs(norm - 1.0) > UNIT_NORM_TOL:
        raise ValueError(f"measurement direction must be unit norm, |v| = {norm}")
    return arr


def as_bloch_vector(v) -> np.ndarray:
    """Validate a state Bloch vector: norm at most 1 within 1e-12."""
    arr = _as_vec3(v, "Bloch vector")
    norm = float(np.linalg.norm(arr))
    if norm > 1.0 + BLOCH_NORM_TOL:
        raise InvalidStateError(f"Bloch vector norm {norm} exceeds 1")
    return arr


def _check_bit(alpha) -> int:
    if alpha not in (0, 1):
        raise ValueError(f"measurement outcome must be 0 or 1, got {alpha!r}")
    return int(alpha)


def _frozen_array(values, dtype=float) -> np.ndarray:
    arr = np.array(values, dtype=dtype)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class TwoQubitState:
    """Two-qubit state in correlation form: local Bloch vectors and correlation matrix.

    The correlation matrix is accepted as a general 3x3 real matrix; no
    local-basis diagonalisation is attempted.
    """

    a0: np.ndarray
    b0: np.ndarray
    E: np.ndarray

    def __post_init__(self):
        a0 = _frozen_array(_as_vec3(self.a0, "a0"))
        b0 = _frozen_array(_as_vec3(self.b0, "b0"))
        e = np.asarray(self.E, dtype=float)
        if e.shape != (3, 3):
            raise ValueError(f"E must be a 3x3 matrix, got shape {e.shape}")
        if np.any(np.abs(e) > 1.0 + CORRELATION_ENTRY_TOL):
            raise ValueError("correlation matrix entries must lie in [-1, 1]")
        for vec, name in ((a0, "a0"), (b0, "b0")):
            if np.linalg.norm(vec) > 1.0 + BLOCH_NORM_TOL:
                raise InvalidStateError(f"local Bloch vector {name} has norm > 1")
        object.__setattr__(self, "a0", a0)
        object.__setattr__(self, "b0", b0)
        object.__setattr__(self, "E", _frozen_array(e))


@dataclass(frozen=True)
class BellDiagonalSpec:
    """Bell-diagonal state: zero local Bloch vectors, diagonal correlations (e1, e2, e3)."""

    e1: float
    e2: float
    e3: float

    def axes(self) -> np.ndarray:
        return np.array([self.e1, self.e2, self.e3], dtype=float)

    def positivity_values(self) -> np.ndarray:
        """Four times the density-matrix eigenvalues, in a fixed order."""
        e1, e2, e3 = self.e1, self.e2, self.e3
        return np.array(
            [
                1.0 - e1 - e2 - e3,
                1.0 - e1 + e2 + e3,
                1.0 + e1 - e2 + e3,
                1.0 + e1 + e2 - e3,
            ]
        )

    def is_positive(self, floor: float = BELL_POSITIVITY_FLOOR) -> bool:
        return bool(np.all(self.positivity_values() >= floor))

    def validate(self) -> "BellDiagonalSpec":
        if np.any(np.abs(self.axes()) > 1.0 + CORRELATION_ENTRY_TOL):
            raise ValueError("Bell-diagonal components must lie in [-1, 1]")
        if not self.is_positive():
            raise InvalidStateError(
                f"Bell-diagonal components {tuple(self.axes())} violate positivity"
            )
        return self

    def to_state(self) -> TwoQubitState:
        return TwoQubitState(np.zeros(3), np.zeros(3), np.diag(self.axes()))


def measure_prob(s, alpha_hat, alpha) -> float:
    """Probability of outcome alpha when measuring direction alpha_hat on Bloch vector s.

    Returns (1 + (-1)^alpha alpha_hat.s)/2, clamped to [0, 1] only after the
    norm checks on both vectors have passed.
    """
    svec = as_bloch_vector(s)
    ahat = as_unit_vector(alpha_hat)
    a = _check_bit(alpha)
    return _outcome_prob(svec, ahat, a)


def _outcome_prob(svec: np.ndarray, ahat: np.ndarray, alpha: int) -> float:
    p = 0.5 * (1.0 + (1.0 if alpha == 0 else -1.0) * float(ahat @ svec))
    return min(max(p, 0.0), 1.0)


def alice_outcome_prob(state: TwoQubitState, alpha_hat, alpha) -> float:
    """Probability that Alice's measurement along alpha_hat yields outcome alpha."""
    ahat = as_unit_vector(alpha_hat)
    a = _check_bit(alpha)
    return _outcome_prob(state.a0, ahat, a)


def post_measurement_bob(state: TwoQubitState, alpha_hat, alpha) -> np.ndarray:
    """Bob's conditional Bloch vector after Alice measures alpha_hat with outcome alpha.

    Raises NullEventError when the conditioning outcome has probability below
    1e-12.
    """
    ahat = as_unit_vector(alpha_hat)
    a = _check_bit(alpha)
    prob = _outcome_prob(state.a0, ahat, a)
    if prob <= NULL_EVENT_TOL:
        raise NullEventError(
            f"outcome {a} along {tuple(ahat)} has probability {prob}; "
            "cannot condition on it"
        )
    sign = 1.0 if a == 0 else -1.0
    return (state.b0 + sign * state.E.T @ ahat) / (1.0 + sign * float(ahat @ state.a0))


def reconstruct_density_matrix(state: TwoQubitState) -> np.ndarray:
    """The 4x4 density matrix rho = (1x1 + a0.sigma x 1 + 1 x b0.sigma + sum E_lm sigma_l x sigma_m)/4."""
    rho = np.eye(4, dtype=complex)
    for l in range(3):
        rho += state.a0[l] * np.kron(PAULI[l], np.eye(2))
        rho += state.b0[l] * np.kron(np.eye(2), PAULI[l])
        for m in range(3):
            rho += state.E[l, m] * np.kron(PAULI[l], PAULI[m])
    return rho / 4.0


def density_matrix_eigenvalues(state: TwoQubitState) -> np.ndarray:
    return hermitian_eigenvalues(reconstruct_density_matrix(state))


def is_valid_state(state: TwoQubitState) -> bool:
    """True iff the reconstructed density matrix has unit trace and no negative eigenvalue."""
    rho = reconstruct_density_matrix(state)
    if abs(float(np.real(np.trace(rho))) - 1.0) > TRACE_TOL:
        return False
    return float(hermitian_eigenvalues(rho)[0]) >= EIGENVALUE_FLOOR


def is_separable(state: TwoQubitState) -> bool:
    """PPT separability test, necessary and sufficient for two qubits."""
    if not is_valid_state(state):
        raise InvalidStateError("separability is only defined for valid states")
    transposed = partial_transpose(reconstruct_density_matrix(state))
    return float(hermitian_eigenvalues(transposed)[0]) >= EIGENVALUE_FLOOR


def bell_diagonal_is_separable(spec: BellDiagonalSpec) -> bool:
    """Octahedron shortcut |e1| + |e2| + |e3| <= 1; cross-check for the PPT test."""
    return float(np.sum(np.abs(spec.axes()))) <= 1.0 + 1e-12


def werner(q: float) -> BellDiagonalSpec:
    """Werner state: white noise mixed with the maximally entangled pure state.

    Correlations are (q, -q, q); the canonical-protocol construction absorbs
    the sign convention, and every derived quantity depends only on |e_i|.
    """
    q = float(q)
    if not 0.0 <= q <= 1.0:
        raise ValueError(f"Werner parameter must lie in [0, 1], got {q}")
    return BellDiagonalSpec(q, -q, q)


def geometric_discord_bell_diagonal(spec: BellDiagonalSpec) -> float:
    """Normalized geometric discord of a Bell-diagonal state.

    Equals sqrt((s1 + s2)/2) where s1, s2 are the two smallest squared
    correlation components; invariant under sign flips and permutations.
    """
    spec.validate()
    squares = np.sort(spec.axes() ** 2)
    return math.sqrt(0.5 * float(squares[0] + squares[1]))


# --- JSON wire format -------------------------------------------------------
#
# Full form:       {"a0": [x, y, z], "b0": [x, y, z], "E": [[..], [..], [..]]}
# Bell-diagonal:   {"bell_diagonal": [e1, e2, e3]}
# Werner:          {"werner": q}


def state_to_json_dict(state: TwoQubitState) -> dict:
    return {
        "a0": [float(v) for v in state.a0],
        "b0": [float(v) for v in state.b0],
        "E": [[float(v) for v in row] for row in state.E],
    }


def state_from_json_dict(obj: dict) -> TwoQubitState:
    if not isinstance(obj, dict):
        raise ValueError("state JSON must be an object")
    keys = set(obj)
    if keys == {"werner"}:
        return werner(obj["werner"]).to_state()
    if keys == {"bell_diagonal"}:
        values = obj["bell_diagonal"]
        if not isinstance(values, (list, tuple)) or len(values) != 3:
            raise ValueError("bell_diagonal must be a list of three numbers")
        return BellDiagonalSpec(*map(float, values)).to_state()
    if keys == {"a0", "b0", "E"}:
        return TwoQubitState(obj["a0"], obj["b0"], obj["E"])
    raise ValueError(
        "state JSON must have keys {a0, b0, E}, {bell_diagonal} or {werner}; "
        f"got {sorted(keys)}"
    )
