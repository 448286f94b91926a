"""Entanglement- and separable-state-assisted n->1 quantum random access codes.

A protocol is a measurement direction for Alice per input string, a
measurement direction for Bob per requested index, and the fixed decoding rule
"XOR Bob's outcome with Alice's message".  The evaluator computes success
probabilities exactly from the Bloch representation, with no sampling.
"""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping

import numpy as np

from .errors import DegenerateStateError, InvalidStateError
from .qstate import (
    BellDiagonalSpec,
    TwoQubitState,
    _outcome_prob,
    alice_outcome_prob,
    as_unit_vector,
    is_valid_state,
    post_measurement_bob,
)
from .results import EvaluationResult

DEGENERACY_THRESHOLD = 1e-9
_NULL_BRANCH_TOL = 1e-12

_AXES = np.eye(3)


def input_strings(n: int) -> list[str]:
    """All n-bit input strings in lexicographic order."""
    return ["".join(bits) for bits in itertools.product("01", repeat=n)]


@dataclass(frozen=True, eq=False)
class QuantumRacProtocol:
    """Measurement directions for an n->1 code with the XOR guess rule.

    alice_direction maps every n-bit input string to a unit vector;
    bob_direction maps every index 1..n to a unit vector.
    """

    n: int
    alice_direction: Mapping[str, np.ndarray]
    bob_direction: Mapping[int, np.ndarray]

    def __post_init__(self):
        n = int(self.n)
        if n < 2:
            raise ValueError("protocols need input length n >= 2")
        alice = {}
        for x in input_strings(n):
            if x not in self.alice_direction:
                raise ValueError(f"alice_direction missing input {x!r}")
            vec = as_unit_vector(self.alice_direction[x])
            vec.setflags(write=False)
            alice[x] = vec
        bob = {}
        for i in range(1, n + 1):
            if i not in self.bob_direction:
                raise ValueError(f"bob_direction missing index {i}")
            vec = as_unit_vector(self.bob_direction[i])
            vec.setflags(write=False)
            bob[i] = vec
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "alice_direction", MappingProxyType(alice))
        object.__setattr__(self, "bob_direction", MappingProxyType(bob))


def _correlation_axes(spec_or_state) -> np.ndarray:
    """Diagonal correlation components, warning when off-diagonals are dropped."""
    if isinstance(spec_or_state, BellDiagonalSpec):
        return spec_or_state.axes()
    if isinstance(spec_or_state, TwoQubitState):
        e = spec_or_state.E
        off = np.abs(e - np.diag(np.diag(e))).max()
        if off > 1e-12:
            warnings.warn(
                "correlation matrix has off-diagonal entries up to "
                f"{off:.3g}; the canonical protocol uses only the diagonal",
                stacklevel=3,
            )
        return np.diag(e).copy()
    raise ValueError(f"expected BellDiagonalSpec or TwoQubitState, got {type(spec_or_state)!r}")


def canonical_protocol(n: int, spec_or_state) -> QuantumRacProtocol:
    """The canonical 2->1 or 3->1 code for a state correlated along the axes.

    Alice measures along the normalisation of ((-1)^x1/e1, (-1)^x2/e2[, (-1)^x3/e3]);
    Bob measures along the coordinate axis of the requested bit.  Components
    with |e_i| below 1e-9 make the construction degenerate.
    """
    if n not in (2, 3):
        raise ValueError(f"canonical protocols exist for n = 2 or 3, got {n}")
    axes = _correlation_axes(spec_or_state)
    for i in range(n):
        if abs(axes[i]) < DEGENERACY_THRESHOLD:
            raise DegenerateStateError(
                f"correlation component e{i + 1} = {axes[i]} is too small for the "
                f"canonical {n}->1 protocol"
            )
    alice = {}
    for x in input_strings(n):
        raw = np.zeros(3)
        for i in range(n):
            raw[i] = (-1.0) ** int(x[i]) / axes[i]
        alice[x] = raw / np.linalg.norm(raw)
    bob = {i + 1: _AXES[i].copy() for i in range(n)}
    return QuantumRacProtocol(n=n, alice_direction=alice, bob_direction=bob)


def evaluate(protocol: QuantumRacProtocol, state: TwoQubitState) -> EvaluationResult:
    """Exact success probabilities of a protocol on a shared two-qubit state.

    For every input x and index i the success probability is the total over
    Alice's outcomes of (outcome probability) x (Bob guessing x_i after the
    XOR correction); branches of probability below 1e-12 contribute zero.
    """
    if not is_valid_state(state):
        raise InvalidStateError("cannot evaluate a protocol on an invalid state")
    success: dict[tuple[str, int], float] = {}
    for x, ahat in protocol.alice_direction.items():
        branches = []
        for alpha in (0, 1):
            p_alpha = alice_outcome_prob(state, ahat, alpha)
            if p_alpha < _NULL_BRANCH_TOL:
                continue
            branches.append((alpha, p_alpha, post_measurement_bob(state, ahat, alpha)))
        for i, bhat in protocol.bob_direction.items():
            xi = int(x[i - 1])
            total = 0.0
            for alpha, p_alpha, bob_state in branches:
                total += p_alpha * _outcome_prob(bob_state, bhat, xi ^ alpha)
            success[(x, i)] = total
    return EvaluationResult(success=success)


def pmin_formula(n: int, spec: BellDiagonalSpec) -> float:
    """Closed-form worst-case success of the canonical n->1 code on a Bell-diagonal state."""
    if n not in (2, 3):
        raise ValueError(f"closed form exists for n = 2 or 3, got {n}")
    axes = spec.axes()
    inv_sq = 0.0
    for i in range(n):
        if abs(axes[i]) < DEGENERACY_THRESHOLD:
            raise DegenerateStateError(
                f"correlation component e{i + 1} = {axes[i]} is too small"
            )
        inv_sq += 1.0 / axes[i] ** 2
    return 0.5 * (1.0 + 1.0 / math.sqrt(inv_sq))


def concatenated_pmin_formula(discord: float, levels: int) -> float:
    """Closed-form worst case of the 2^m -> 1 code built by concatenating 2->1 codes."""
    discord = float(discord)
    if not 0.0 <= discord <= 1.0:
        raise ValueError(f"discord must lie in [0, 1], got {discord}")
    levels = int(levels)
    if levels < 1:
        raise ValueError(f"need at least one level, got {levels}")
    return 0.5 * (1.0 + (discord / math.sqrt(2.0)) ** levels)


def concatenated_pmin_recursive(base_p: float, levels: int) -> float:
    """Worst case of an m-level concatenation from the per-stage success probability.

    A guess survives iff an even number of stages err, so
    P_k = P_{k-1} base_p + (1 - P_{k-1})(1 - base_p).
    """
    base_p = float(base_p)
    if not 0.5 - 1e-12 <= base_p <= 1.0 + 1e-12:
        raise ValueError(f"stage success probability must lie in [1/2, 1], got {base_p}")
    levels = int(levels)
    if levels < 1:
        raise ValueError(f"need at least one level, got {levels}")
    p = base_p
    for _ in range(levels - 1):
        p = p * base_p + (1.0 - p) * (1.0 - base_p)
    return p


def prepare_and_measure_pmin(q: float) -> float:
    """Worst case of the 2->1 code where Alice sends one noisy qubit instead.

    The four inputs are encoded as Bloch vectors q ((-1)^x1, (-1)^x2, 0)/sqrt(2);
    Bob reads bit 1 along x and bit 2 along y.  Evaluated exactly over all
    inputs and both measurements.
    """
    q = float(q)
    if not 0.0 <= q <= 1.0:
        raise ValueError(f"noise parameter must lie in [0, 1], got {q}")
    worst = 1.0
    for x in input_strings(2):
        s = q * np.array([(-1.0) ** int(x[0]), (-1.0) ** int(x[1]), 0.0]) / math.sqrt(2.0)
        for i in (1, 2):
            p = _outcome_prob(s, _AXES[i - 1], int(x[i - 1]))
            worst = min(worst, p)
    return worst


# --- JSON wire format -------------------------------------------------------
#
# {"n": 2, "alice": {"00": [x, y, z], ...}, "bob": {"1": [x, y, z], "2": [...]}}


def protocol_to_json_dict(protocol: QuantumRacProtocol) -> dict:
    return {
        "n": protocol.n,
        "alice": {x: [float(v) for v in vec] for x, vec in sorted(protocol.alice_direction.items())},
        "bob": {str(i): [float(v) for v in vec] for i, vec in sorted(protocol.bob_direction.items())},
    }


def protocol_from_json_dict(obj: dict) -> QuantumRacProtocol:
    if not isinstance(obj, dict) or set(obj) != {"n", "alice", "bob"}:
        raise ValueError("protocol JSON must have exactly the keys {n, alice, bob}")
    n = int(obj["n"])
    alice = {str(x): np.asarray(vec, dtype=float) for x, vec in obj["alice"].items()}
    bob = {int(i): np.asarray(vec, dtype=float) for i, vec in obj["bob"].items()}
    return QuantumRacProtocol(n=n, alice_direction=alice, bob_direction=bob)
