"""Classical n->1 random access codes assisted by two shared bits.

Alice encodes her n-bit input into one message bit as a function of her shared
bit r_a; Bob decodes a guess for the requested index from the message and his
shared bit r_b.  Per input, Alice's encoding restricted to r_a is one of only
four functions (constant 0, constant 1, copy, negate), which is what makes the
strategy space finite and the n = 3 search prunable by pigeonhole.

The distribution of the shared bits is itself an optimisation variable: for a
fixed strategy the worst-case success is maximised by a small linear program,
solved here exactly by enumerating the vertices of the feasible polytope.
"""

from __future__ import annotations

import itertools
import multiprocessing
from dataclasses import dataclass
from functools import lru_cache
from types import MappingProxyType
from typing import Mapping

import numpy as np

from .quantum_rac import input_strings
from .results import EvaluationResult
from .rng import SplitMix64

#: The four possible per-input encoding functions r_a -> c, as (c at r_a=0, c at r_a=1).
ENCODING_FUNCTIONS = ((0, 0), (1, 1), (0, 1), (1, 0))

CONSTRAINTS = ("none", "bob-mixed")

_FEAS_TOL = 1e-9
_SINGULAR_TOL = 1e-12
_TIE_TOL = 1e-12


def _check_constraint(constraint: str) -> str:
    if constraint == "bob_maximally_mixed":
        return "bob-mixed"
    if constraint not in CONSTRAINTS:
        raise ValueError(f"constraint must be one of {CONSTRAINTS}, got {constraint!r}")
    return constraint


def _check_bit_value(value, what: str) -> int:
    if value not in (0, 1):
        raise ValueError(f"{what} must be 0 or 1, got {value!r}")
    return int(value)


@dataclass(frozen=True, eq=False)
class ClassicalStrategy:
    """Deterministic encoding and decoding tables for an n->1 code.

    encoding[x] is the pair (c at r_a=0, c at r_a=1) for input string x;
    decoding[i][c][r_b] is Bob's guess of bit i given message c and shared bit r_b.
    """

    n: int
    encoding: Mapping[str, tuple[int, int]]
    decoding: Mapping[int, tuple[tuple[int, int], tuple[int, int]]]

    def __post_init__(self):
        n = int(self.n)
        if n < 2:
            raise ValueError("strategies need input length n >= 2")
        encoding = {}
        for x in input_strings(n):
            if x not in self.encoding:
                raise ValueError(f"encoding missing input {x!r}")
            pair = tuple(_check_bit_value(v, "message bit") for v in self.encoding[x])
            if len(pair) != 2:
                raise ValueError(f"encoding for {x!r} must list c at r_a = 0 and 1")
            encoding[x] = pair
        decoding = {}
        for i in range(1, n + 1):
            if i not in self.decoding:
                raise ValueError(f"decoding missing index {i}")
            table = self.decoding[i]
            if len(table) != 2 or any(len(row) != 2 for row in table):
                raise ValueError(f"decoding table for index {i} must be 2x2")
            decoding[i] = tuple(
                tuple(_check_bit_value(v, "guess bit") for v in row) for row in table
            )
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "encoding", MappingProxyType(encoding))
        object.__setattr__(self, "decoding", MappingProxyType(decoding))


@dataclass(frozen=True)
class SharedDistribution:
    """Joint distribution p_kl of the shared bit pair (r_a = k, r_b = l)."""

    p00: float
    p01: float
    p10: float
    p11: float

    def __post_init__(self):
        values = self.as_array()
        if np.any(values < -1e-12):
            raise ValueError(f"probabilities must be nonnegative, got {tuple(values)}")
        if abs(float(values.sum()) - 1.0) > 1e-12:
            raise ValueError(f"probabilities must sum to 1, got {float(values.sum())}")

    def as_array(self) -> np.ndarray:
        """Entries ordered (p00, p01, p10, p11), index 2k + l."""
        return np.array([self.p00, self.p01, self.p10, self.p11], dtype=float)

    @classmethod
    def uniform(cls) -> "SharedDistribution":
        return cls(0.25, 0.25, 0.25, 0.25)

    def to_json_dict(self) -> dict:
        return {"p00": self.p00, "p01": self.p01, "p10": self.p10, "p11": self.p11}


@dataclass(frozen=True, eq=False)
class ConcatenatedStrategy:
    """A 4->1 code built from three 2->1 codes.

    The two inner codes act on the input halves and produce messages c1, c2;
    the outer code relays the pair (c1, c2).  Bob first decodes the outer code
    to estimate the inner message he needs, then applies that inner decoder.
    """

    inner_first: ClassicalStrategy
    inner_second: ClassicalStrategy
    outer: ClassicalStrategy

    def __post_init__(self):
        for name in ("inner_first", "inner_second", "outer"):
            component = getattr(self, name)
            if component.n != 2:
                raise ValueError(f"{name} must be a 2->1 strategy, got n={component.n}")


@dataclass(frozen=True, eq=False)
class SearchReport:
    """Outcome of a strategy search, reproducible from the reported pair."""

    best_strategy: ClassicalStrategy | ConcatenatedStrategy
    best_distribution: SharedDistribution | tuple[SharedDistribution, ...]
    best_p_min: float
    strategies_examined: int
    search_mode: str  # "exhaustive" | "pruned" | "sampled"
    constraint: str = "none"
    certified_bound: float | None = None
    unpruned_count: int | None = None
    spot_checks: int | None = None
    seed: int | None = None

    def to_json_dict(self) -> dict:
        if isinstance(self.best_strategy, ConcatenatedStrategy):
            strategy = concatenated_to_json_dict(self.best_strategy)
            distribution = [d.to_json_dict() for d in self.best_distribution]
        else:
            strategy = strategy_to_json_dict(self.best_strategy)
            distribution = self.best_distribution.to_json_dict()
        out = {
            "search_mode": self.search_mode,
            "constraint": self.constraint,
            "best_p_min": self.best_p_min,
            "strategies_examined": self.strategies_examined,
            "best_strategy": strategy,
            "best_distribution": distribution,
        }
        if self.certified_bound is not None:
            out["certified_bound"] = self.certified_bound
        if self.unpruned_count is not None:
            out["unpruned_count"] = self.unpruned_count
        if self.spot_checks is not None:
            out["spot_checks"] = self.spot_checks
        if self.seed is not None:
            out["seed"] = self.seed
        return out

    def human_table(self) -> str:
        lines = [
            f"search mode          {self.search_mode}",
            f"constraint           {self.constraint}",
            f"strategies examined  {self.strategies_examined}",
            f"best worst-case P    {self.best_p_min!r}",
        ]
        if self.certified_bound is not None:
            lines.append(f"certified bound      {self.certified_bound!r}")
        if self.unpruned_count is not None:
            lines.append(f"unpruned encodings   {self.unpruned_count}")
        if self.spot_checks is not None:
            lines.append(f"spot checks          {self.spot_checks}")
        if self.seed is not None:
            lines.append(f"seed                 {self.seed}")
        return "\n".join(lines)


# --- evaluation -------------------------------------------------------------


def evaluate_strategy(strategy: ClassicalStrategy, dist: SharedDistribution) -> EvaluationResult:
    """Success probabilities of a strategy under a shared-bit distribution."""
    probs = dist.as_array()
    success = {}
    for x in input_strings(strategy.n):
        enc = strategy.encoding[x]
        for i in range(1, strategy.n + 1):
            xi = int(x[i - 1])
            table = strategy.decoding[i]
            total = 0.0
            for k in (0, 1):
                row = table[enc[k]]
                for l in (0, 1):
                    if row[l] == xi:
                        total += probs[2 * k + l]
            success[(x, i)] = total
    return EvaluationResult(success=success)


def guess_point(strategy: ClassicalStrategy, dist: SharedDistribution, x: str) -> np.ndarray:
    """Per-index probabilities that Bob outputs 1 on input x."""
    if x not in strategy.encoding:
        raise ValueError(f"unknown input {x!r} for an n={strategy.n} strategy")
    probs = dist.as_array()
    enc = strategy.encoding[x]
    point = np.zeros(strategy.n)
    for i in range(1, strategy.n + 1):
        table = strategy.decoding[i]
        point[i - 1] = sum(
            probs[2 * k + l] * table[enc[k]][l] for k in (0, 1) for l in (0, 1)
        )
    return point


def has_duplicate_encoding(strategy: ClassicalStrategy) -> bool:
    """True iff two distinct inputs use the same encoding function of r_a."""
    functions = set(strategy.encoding.values())
    return len(functions) < 2 ** strategy.n


def strategy_success_patterns(strategy: ClassicalStrategy) -> dict[tuple[str, int], int]:
    """4-bit success indicators over (r_a, r_b), bit (2 r_a + r_b), per (input, index)."""
    patterns = {}
    for x in input_strings(strategy.n):
        enc = strategy.encoding[x]
        for i in range(1, strategy.n + 1):
            xi = int(x[i - 1])
            table = strategy.decoding[i]
            mask = 0
            for k in (0, 1):
                row = table[enc[k]]
                for l in (0, 1):
                    if row[l] == xi:
                        mask |= 1 << (2 * k + l)
            patterns[(x, i)] = mask
    return patterns


# --- the built-in optimal 2->1 code ----------------------------------------


def biased_optimal_strategy() -> ClassicalStrategy:
    """The optimal 2->1 code for biased shared bits.

    Alice uses all four encoding functions, one per input (copy, constant 0,
    constant 1, negate); combined with biased_optimal_distribution() Bob never
    outputs a guess with both bits wrong, which lifts the worst case to 2/3.
    """
    return ClassicalStrategy(
        n=2,
        encoding={"00": (0, 1), "01": (0, 0), "10": (1, 1), "11": (1, 0)},
        decoding={1: ((0, 0), (1, 1)), 2: ((1, 0), (0, 1))},
    )


def biased_optimal_distribution() -> SharedDistribution:
    """The bias that avoids wrong answers: p00 = p01 = p10 = 1/3, p11 = 0."""
    third = 1.0 / 3.0
    return SharedDistribution(third, third, third, 0.0)


# --- linear program over shared-bit distributions ---------------------------


@lru_cache(maxsize=None)
def _combination_indices(n_rows: int, k: int) -> np.ndarray:
    return np.array(list(itertools.combinations(range(n_rows), k)), dtype=np.int64)


@lru_cache(maxsize=None)
def _vertex_lp(patterns: tuple[int, ...], constraint: str) -> tuple[tuple[float, ...], float]:
    """Maximise t subject to (success of every pattern) >= t over distributions.

    Variables are v = (p00, p01, p10, p11, t).  All vertices of the feasible
    polytope are enumerated by picking active inequality sets, solving the
    resulting 5x5 systems in a batch and keeping feasible maximisers; ties in
    t are broken toward the lexicographically smallest distribution.  All
    constraint data are 0/1 (plus the 1/2 marginal), so vertex solutions are
    small rationals and double precision is exact enough at the 1e-9 scale.
    """
    bob_mixed = constraint == "bob-mixed"
    m = len(patterns)
    rows = np.zeros((m + 4, 5))
    for r, pattern in enumerate(patterns):
        for kl in range(4):
            rows[r, kl] = (pattern >> kl) & 1
        rows[r, 4] = -1.0
    rows[m:, :4] = np.eye(4)  # p_kl >= 0

    eq = [[1.0, 1.0, 1.0, 1.0, 0.0]]
    eq_rhs = [1.0]
    if bob_mixed:
        eq.append([1.0, 0.0, 1.0, 0.0, 0.0])  # Pr(r_b = 0) = 1/2
        eq_rhs.append(0.5)
    n_eq = len(eq)
    k_pick = 5 - n_eq

    combos = _combination_indices(m + 4, k_pick)
    n_cand = len(combos)
    a = np.empty((n_cand, 5, 5))
    b = np.zeros((n_cand, 5))
    a[:, :n_eq, :] = np.asarray(eq)
    b[:, :n_eq] = np.asarray(eq_rhs)
    a[:, n_eq:, :] = rows[combos]

    nonsingular = np.abs(np.linalg.det(a)) > _SINGULAR_TOL
    solutions = np.linalg.solve(a[nonsingular], b[nonsingular][..., None])[..., 0]
    feasible = solutions[np.all(solutions @ rows.T >= -_FEAS_TOL, axis=1)]
    if len(feasible) == 0:
        raise RuntimeError("vertex enumeration found no feasible point")

    t = feasible[:, 4]
    t_max = float(t.max())
    tied = feasible[t >= t_max - _TIE_TOL]
    order = np.lexsort((tied[:, 3], tied[:, 2], tied[:, 1], tied[:, 0]))
    best = tied[order[0]]
    return tuple(float(v) for v in best[:4]), float(best[4])


def optimal_distribution(
    strategy: ClassicalStrategy, marginal_constraint: str = "none"
) -> tuple[SharedDistribution, float]:
    """The shared-bit distribution maximising the worst-case success of a strategy."""
    constraint = _check_constraint(marginal_constraint)
    masks = strategy_success_patterns(strategy).values()
    p, t = _vertex_lp(tuple(sorted(set(masks))), constraint)
    return SharedDistribution(*p), t


# --- index <-> strategy table helpers ---------------------------------------


def strategy_from_indices(n: int, enc_index: int, dec_index: int) -> ClassicalStrategy:
    """Strategy number (enc_index, dec_index) in the canonical enumeration.

    Encodings are base-4 digit strings over the per-input functions (digit of
    input x at position int(x, 2)); decodings pack one 4-bit table per index,
    bit (2c + r_b).
    """
    inputs = input_strings(n)
    if not 0 <= enc_index < 4 ** len(inputs):
        raise ValueError(f"enc_index out of range for n={n}")
    if not 0 <= dec_index < 16 ** n:
        raise ValueError(f"dec_index out of range for n={n}")
    encoding = {}
    for pos, x in enumerate(inputs):
        encoding[x] = ENCODING_FUNCTIONS[(enc_index >> (2 * pos)) & 3]
    decoding = {}
    for i in range(1, n + 1):
        d = (dec_index >> (4 * (i - 1))) & 15
        decoding[i] = (
            ((d >> 0) & 1, (d >> 1) & 1),
            ((d >> 2) & 1, (d >> 3) & 1),
        )
    return ClassicalStrategy(n=n, encoding=encoding, decoding=decoding)


@lru_cache(maxsize=1)
def _pattern_lut() -> np.ndarray:
    """lut[f, d, target]: success mask of encoding function f and decoding table d."""
    lut = np.zeros((4, 16, 2), dtype=np.int64)
    for f, enc in enumerate(ENCODING_FUNCTIONS):
        for d in range(16):
            for target in (0, 1):
                mask = 0
                for k in (0, 1):
                    c = enc[k]
                    for l in (0, 1):
                        if (d >> (2 * c + l)) & 1 == target:
                            mask |= 1 << (2 * k + l)
                lut[f, d, target] = mask
    return lut


def _strategy_masks_n2(enc_lo: int, enc_hi: int) -> np.ndarray:
    """Distinct-pattern bitmasks of every (encoding, decoding) pair in an encoding range."""
    lut = _pattern_lut()
    encs = np.arange(enc_lo, enc_hi, dtype=np.int64)
    d = np.arange(256, dtype=np.int64)
    d1 = d & 15
    d2 = d >> 4
    masks = np.zeros((len(encs), 256), dtype=np.int64)
    one = np.int64(1)
    for pos in range(4):
        f = (encs >> (2 * pos)) & 3
        masks |= one << lut[f[:, None], d1[None, :], pos >> 1]
        masks |= one << lut[f[:, None], d2[None, :], pos & 1]
    return masks


def _mask_to_patterns(mask: int) -> tuple[int, ...]:
    return tuple(p for p in range(16) if (mask >> p) & 1)


def _exhaustive_chunk_n2(args: tuple[int, int, str]) -> tuple[float, int, int]:
    """Best (t, strategy id) over one encoding range; ids are enc*256 + dec."""
    enc_lo, enc_hi, constraint = args
    flat = _strategy_masks_n2(enc_lo, enc_hi).ravel()
    unique = np.unique(flat)
    t_by_mask = np.array(
        [_vertex_lp(_mask_to_patterns(int(mask)), constraint)[1] for mask in unique]
    )
    t_flat = t_by_mask[np.searchsorted(unique, flat)]
    local = int(np.argmax(t_flat))  # first occurrence = smallest strategy id
    return float(t_flat[local]), enc_lo * 256 + local, int(flat.size)


def exhaustive_search(
    n: int = 2, marginal_constraint: str = "none", workers: int = 1
) -> SearchReport:
    """Full enumeration of all 2->1 strategies, one LP-optimal distribution each.

    The 256 encodings x 256 decoding pairs are scanned in a fixed order and
    partitioned across workers by encoding index; the result is identical for
    any worker count (ties in the optimum resolve to the smallest strategy id).
    """
    if n != 2:
        raise ValueError("exhaustive enumeration is only done for n = 2; use pruned_search for n = 3")
    constraint = _check_constraint(marginal_constraint)
    workers = max(1, int(workers))
    bounds = np.linspace(0, 256, min(workers, 256) + 1).astype(int)
    chunks = [
        (int(lo), int(hi), constraint)
        for lo, hi in zip(bounds[:-1], bounds[1:])
        if hi > lo
    ]
    if len(chunks) == 1:
        results = [_exhaustive_chunk_n2(chunks[0])]
    else:
        with multiprocessing.Pool(processes=len(chunks)) as pool:
            results = pool.map(_exhaustive_chunk_n2, chunks)

    best_t, best_id = max(
        ((t, -sid) for t, sid, _ in results), key=lambda pair: (pair[0], pair[1])
    )
    best_id = -best_id
    examined = sum(count for _, _, count in results)

    enc_index, dec_index = divmod(best_id, 256)
    strategy = strategy_from_indices(2, enc_index, dec_index)
    dist, t = optimal_distribution(strategy, constraint)
    return SearchReport(
        best_strategy=strategy,
        best_distribution=dist,
        best_p_min=t,
        strategies_examined=examined,
        search_mode="exhaustive",
        constraint=constraint,
    )


def pruned_search(n: int = 3, spot_checks: int = 1000, seed: int = 0) -> SearchReport:
    """Certified search for 3->1 codes.

    Every map from the 8 inputs to the 4 per-input encoding functions is
    scanned; any encoding reusing a function on two inputs is certified at a
    worst case of at most 1/2, and with 8 inputs over 4 functions that prunes
    everything.  A seeded sample of pruned strategies is evaluated through the
    LP anyway as an independent spot-check of the certificate.
    """
    if n != 3:
        raise ValueError("the pruned search handles n = 3")
    if spot_checks < 1:
        raise ValueError("need at least one spot check")

    encodings = np.arange(4 ** 8, dtype=np.int64)
    digits = (encodings[:, None] >> (2 * np.arange(8))[None, :]) & 3
    digits_sorted = np.sort(digits, axis=1)
    duplicated = np.any(digits_sorted[:, 1:] == digits_sorted[:, :-1], axis=1)
    unpruned = int(np.count_nonzero(~duplicated))

    best: tuple[float, int] | None = None
    best_pair: tuple[ClassicalStrategy, SharedDistribution] | None = None
    for index in range(spot_checks):
        stream = SplitMix64(seed + index)
        strategy = strategy_from_indices(
            3, stream.randrange(4 ** 8), stream.randrange(16 ** 3)
        )
        dist, t = optimal_distribution(strategy, "none")
        if best is None or t > best[0]:
            best = (t, index)
            best_pair = (strategy, dist)

    assert best is not None and best_pair is not None
    return SearchReport(
        best_strategy=best_pair[0],
        best_distribution=best_pair[1],
        best_p_min=best[0],
        strategies_examined=int(encodings.size),
        search_mode="pruned",
        constraint="none",
        certified_bound=0.5 if unpruned == 0 else None,
        unpruned_count=unpruned,
        spot_checks=spot_checks,
        seed=seed,
    )


# --- concatenated 4->1 codes -------------------------------------------------

_COMBOS6 = np.array(list(itertools.product((0, 1), repeat=6)), dtype=np.int64)
_RA1, _RB1, _RA2, _RB2, _RAO, _RBO = (_COMBOS6[:, j] for j in range(6))
_IDX1 = 2 * _RA1 + _RB1
_IDX2 = 2 * _RA2 + _RB2
_IDXO = 2 * _RAO + _RBO
_X16 = np.arange(16)
_X12 = _X16 >> 2
_X34 = _X16 & 3
_XBITS = np.array([[(x >> (3 - j)) & 1 for j in range(4)] for x in range(16)])


def _encoding_table(strategy: ClassicalStrategy) -> np.ndarray:
    tab = np.zeros((4, 2), dtype=np.int64)
    for x, pair in strategy.encoding.items():
        tab[int(x, 2), 0] = pair[0]
        tab[int(x, 2), 1] = pair[1]
    return tab


def _decoding_table(strategy: ClassicalStrategy, i: int) -> np.ndarray:
    return np.array(strategy.decoding[i], dtype=np.int64)


def _concatenated_success(
    enc1, dec1a, dec1b, enc2, dec2a, dec2b, enco, decoa, decob, w1, w2, wo
) -> np.ndarray:
    """Success probabilities of a concatenated code, shape (16 inputs, 4 indices).

    Summed exactly over all 64 joint assignments of the six shared bits with
    weights w = p1[r_a1, r_b1] p2[r_a2, r_b2] po[r_ao, r_bo].
    """
    weights = w1[_IDX1] * w2[_IDX2] * wo[_IDXO]
    c1 = enc1[_X12[:, None], _RA1[None, :]]
    c2 = enc2[_X34[:, None], _RA2[None, :]]
    message = enco[(c1 << 1) | c2, _RAO[None, :]]
    chat1 = decoa[message, _RBO[None, :]]
    chat2 = decob[message, _RBO[None, :]]
    guesses = (
        dec1a[chat1, _RB1[None, :]],
        dec1b[chat1, _RB1[None, :]],
        dec2a[chat2, _RB2[None, :]],
        dec2b[chat2, _RB2[None, :]],
    )
    success = np.empty((16, 4))
    for i in range(4):
        correct = guesses[i] == _XBITS[:, i][:, None]
        success[:, i] = correct @ weights
    return success


def evaluate_concatenated(
    concatenated: ConcatenatedStrategy,
    dists: tuple[SharedDistribution, SharedDistribution, SharedDistribution],
) -> EvaluationResult:
    """Exact evaluation of a concatenated 4->1 code over all six shared bits."""
    d1, d2, do = dists
    success = _concatenated_success(
        _encoding_table(concatenated.inner_first),
        _decoding_table(concatenated.inner_first, 1),
        _decoding_table(concatenated.inner_first, 2),
        _encoding_table(concatenated.inner_second),
        _decoding_table(concatenated.inner_second, 1),
        _decoding_table(concatenated.inner_second, 2),
        _encoding_table(concatenated.outer),
        _decoding_table(concatenated.outer, 1),
        _decoding_table(concatenated.outer, 2),
        d1.as_array(),
        d2.as_array(),
        do.as_array(),
    )
    table = {
        (format(x, "04b"), i + 1): float(success[x, i])
        for x in range(16)
        for i in range(4)
    }
    return EvaluationResult(success=table)


@lru_cache(maxsize=None)
def _component_tables(enc_index: int, dec_index: int):
    """Numeric tables and the bob-mixed LP-optimal weights of a 2->1 component."""
    lut = _pattern_lut()
    mask = 0
    d1 = dec_index & 15
    d2 = dec_index >> 4
    for pos in range(4):
        f = (enc_index >> (2 * pos)) & 3
        mask |= 1 << int(lut[f, d1, pos >> 1])
        mask |= 1 << int(lut[f, d2, pos & 1])
    p, _ = _vertex_lp(_mask_to_patterns(mask), "bob-mixed")
    strategy = strategy_from_indices(2, enc_index, dec_index)
    return (
        _encoding_table(strategy),
        _decoding_table(strategy, 1),
        _decoding_table(strategy, 2),
        np.array(p),
    )


def concatenated_classical_search(samples: int, seed: int) -> SearchReport:
    """Sampled search over 4->1 codes concatenated from three 2->1 components.

    Sample k draws its three component codes from the splitmix64 stream seeded
    with seed + k; each component is assisted by an independent shared-bit
    pair whose distribution is LP-optimal under the maximally-mixed-marginal
    constraint for Bob.  Reports the best worst case found.
    """
    samples = int(samples)
    if samples < 1:
        raise ValueError("need at least one sample")

    best_value = -1.0
    best_indices: tuple[int, ...] | None = None
    for k in range(samples):
        stream = SplitMix64(seed + k)
        idx = tuple(stream.randrange(256) for _ in range(6))
        enc1, dec1a, dec1b, w1 = _component_tables(idx[0], idx[1])
        enc2, dec2a, dec2b, w2 = _component_tables(idx[2], idx[3])
        enco, decoa, decob, wo = _component_tables(idx[4], idx[5])
        value = float(
            _concatenated_success(
                enc1, dec1a, dec1b, enc2, dec2a, dec2b, enco, decoa, decob, w1, w2, wo
            ).min()
        )
        if value > best_value:
            best_value = value
            best_indices = idx

    assert best_indices is not None
    components = (
        strategy_from_indices(2, best_indices[0], best_indices[1]),
        strategy_from_indices(2, best_indices[2], best_indices[3]),
        strategy_from_indices(2, best_indices[4], best_indices[5]),
    )
    dists = tuple(optimal_distribution(c, "bob-mixed")[0] for c in components)
    concatenated = ConcatenatedStrategy(*components)
    return SearchReport(
        best_strategy=concatenated,
        best_distribution=dists,
        best_p_min=best_value,
        strategies_examined=samples,
        search_mode="sampled",
        constraint="bob-mixed",
        seed=seed,
    )


# --- JSON wire format --------------------------------------------------------
#
# {"n": 2, "encoding": {"00": [c_at_ra0, c_at_ra1], ...},
#  "decoding": {"1": [[g_c0_rb0, g_c0_rb1], [g_c1_rb0, g_c1_rb1]], ...}}


def strategy_to_json_dict(strategy: ClassicalStrategy) -> dict:
    return {
        "n": strategy.n,
        "encoding": {x: list(pair) for x, pair in sorted(strategy.encoding.items())},
        "decoding": {
            str(i): [list(row) for row in table]
            for i, table in sorted(strategy.decoding.items())
        },
    }


def strategy_from_json_dict(obj: dict) -> ClassicalStrategy:
    if not isinstance(obj, dict) or set(obj) != {"n", "encoding", "decoding"}:
        raise ValueError("strategy JSON must have exactly the keys {n, encoding, decoding}")
    decoding = {
        int(i): tuple(tuple(int(v) for v in row) for row in table)
        for i, table in obj["decoding"].items()
    }
    encoding = {str(x): tuple(int(v) for v in pair) for x, pair in obj["encoding"].items()}
    return ClassicalStrategy(n=int(obj["n"]), encoding=encoding, decoding=decoding)


def concatenated_to_json_dict(concatenated: ConcatenatedStrategy) -> dict:
    return {
        "inner_first": strategy_to_json_dict(concatenated.inner_first),
        "inner_second": strategy_to_json_dict(concatenated.inner_second),
        "outer": strategy_to_json_dict(concatenated.outer),
    }
