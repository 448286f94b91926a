"""One-shot recomputation of the published reference values.

Each claim row carries the reference value, the value recomputed here, the
tolerance and the comparison sense: "abs" (agree within tolerance), "upper"
(computed <= reference + tolerance) or "lower" (computed >= reference -
tolerance).  The overall report passes iff every row does.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from . import qstate
from .classical_rac import (
    SharedDistribution,
    biased_optimal_distribution,
    biased_optimal_strategy,
    concatenated_classical_search,
    evaluate_strategy,
    exhaustive_search,
    guess_point,
    has_duplicate_encoding,
    optimal_distribution,
    pruned_search,
    strategy_from_indices,
)
from .optimize import best_separable_bell_diagonal, separable_optimum_spec, werner_assisted_pmin
from .qstate import (
    BellDiagonalSpec,
    alice_outcome_prob,
    geometric_discord_bell_diagonal,
    is_separable,
    post_measurement_bob,
    reconstruct_density_matrix,
    werner,
)
from .quantum_rac import (
    canonical_protocol,
    concatenated_pmin_formula,
    concatenated_pmin_recursive,
    evaluate,
    pmin_formula,
    prepare_and_measure_pmin,
)
from .rng import SplitMix64

SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class ClaimRow:
    claim_id: str
    description: str
    reference: float
    computed: float
    tolerance: float
    comparison: str = "abs"  # "abs" | "upper" | "lower"
    criterion: int = 0  # acceptance-criterion number the row belongs to

    def __post_init__(self):
        for name in ("reference", "computed", "tolerance"):
            object.__setattr__(self, name, float(getattr(self, name)))

    @property
    def passed(self) -> bool:
        if self.comparison == "abs":
            return abs(self.computed - self.reference) <= self.tolerance
        if self.comparison == "upper":
            return self.computed <= self.reference + self.tolerance
        if self.comparison == "lower":
            return self.computed >= self.reference - self.tolerance
        raise ValueError(f"unknown comparison {self.comparison!r}")

    def to_json_dict(self) -> dict:
        return {
            "criterion": self.criterion,
            "claim_id": self.claim_id,
            "description": self.description,
            "reference": self.reference,
            "computed": self.computed,
            "tolerance": self.tolerance,
            "comparison": self.comparison,
            "passed": self.passed,
        }


@dataclass
class ReproductionReport:
    rows: list[ClaimRow]
    config: dict = field(default_factory=dict)

    @property
    def overall_pass(self) -> bool:
        return all(row.passed for row in self.rows)

    def to_json_dict(self) -> dict:
        return {
            "config": self.config,
            "rows": [row.to_json_dict() for row in self.rows],
            "overall_pass": self.overall_pass,
        }

    def csv_rows(self):
        for row in self.rows:
            yield (
                row.criterion,
                row.claim_id,
                row.reference,
                row.computed,
                row.tolerance,
                row.comparison,
                "pass" if row.passed else "FAIL",
            )

    def human_table(self) -> str:
        lines = []
        width = max(len(row.claim_id) for row in self.rows)
        for row in self.rows:
            status = "pass" if row.passed else "FAIL"
            lines.append(
                f"{row.claim_id:<{width}}  {status}  reference={row.reference:.9g}  "
                f"computed={row.computed:.9g}  tol={row.tolerance:g} ({row.comparison})"
            )
        lines.append(f"overall: {'pass' if self.overall_pass else 'FAIL'}")
        return "\n".join(lines)


# --- deterministic random instances -----------------------------------------


def random_bell_diagonal(rng: np.random.Generator, min_component: float = 1e-3) -> BellDiagonalSpec:
    """A random valid Bell-diagonal spec with every |e_i| >= min_component."""
    while True:
        e = rng.uniform(-1.0, 1.0, size=3)
        spec = BellDiagonalSpec(*e)
        if spec.is_positive(floor=0.0) and np.all(np.abs(e) >= min_component):
            return spec


def random_two_qubit_state(rng: np.random.Generator) -> qstate.TwoQubitState:
    """A random full-rank valid state, from rho = M M^dagger / tr."""
    m = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    rho = m @ m.conj().T
    rho /= np.trace(rho).real
    pauli = qstate.PAULI
    a0 = [float(np.trace(rho @ np.kron(pauli[l], np.eye(2))).real) for l in range(3)]
    b0 = [float(np.trace(rho @ np.kron(np.eye(2), pauli[l])).real) for l in range(3)]
    e = [
        [float(np.trace(rho @ np.kron(pauli[l], pauli[m_])).real) for m_ in range(3)]
        for l in range(3)
    ]
    return qstate.TwoQubitState(a0, b0, e)


def random_direction(rng: np.random.Generator) -> np.ndarray:
    v = rng.normal(size=3)
    return v / np.linalg.norm(v)


# --- individual checks, one group per acceptance criterion -------------------


def check_classical_two_bit_exhaustive(workers: int = 1) -> list[ClaimRow]:
    report = exhaustive_search(2, "none", workers=workers)
    return [
        ClaimRow(
            "classical_2to1_unconstrained",
            "best worst case over all 2->1 strategies and shared-bit distributions",
            2.0 / 3.0,
            report.best_p_min,
            1e-9,
        )
    ]


def check_classical_two_bit_bob_mixed(workers: int = 1) -> list[ClaimRow]:
    report = exhaustive_search(2, "bob-mixed", workers=workers)
    return [
        ClaimRow(
            "classical_2to1_bob_mixed",
            "best worst case with maximally mixed marginal for Bob",
            0.5,
            report.best_p_min,
            1e-9,
        )
    ]


def check_classical_three_bit_pruned(spot_checks: int = 1000, seed: int = 7) -> list[ClaimRow]:
    report = pruned_search(3, spot_checks=spot_checks, seed=seed)
    certified = report.certified_bound == 0.5 and report.unpruned_count == 0
    return [
        ClaimRow(
            "classical_3to1_certificate",
            "every 3->1 encoding reuses a function; zero encodings escape pruning",
            0.0,
            float(report.unpruned_count if report.unpruned_count is not None else 1)
            + (0.0 if certified else 1.0),
            0.0,
        ),
        ClaimRow(
            "classical_3to1_spot_checks",
            f"max LP value over {spot_checks} random 3->1 strategies",
            0.5,
            report.best_p_min,
            1e-9,
            comparison="upper",
        ),
    ]


def check_optimal_code() -> list[ClaimRow]:
    strategy = biased_optimal_strategy()
    dist = biased_optimal_distribution()
    result = evaluate_strategy(strategy, dist)
    expected_points = {
        "00": (1.0 / 3.0, 1.0 / 3.0),
        "01": (0.0, 2.0 / 3.0),
        "10": (1.0, 1.0 / 3.0),
        "11": (2.0 / 3.0, 2.0 / 3.0),
    }
    worst = max(
        abs(float(guess_point(strategy, dist, x)[i]) - expected_points[x][i])
        for x in expected_points
        for i in range(2)
    )
    return [
        ClaimRow(
            "optimal_code_value",
            "worst case of the built-in optimal 2->1 code under its bias",
            2.0 / 3.0,
            result.p_min,
            1e-12,
        ),
        ClaimRow(
            "optimal_code_guess_points",
            "max deviation of the four guess points from their reference values",
            0.0,
            worst,
            1e-12,
            comparison="upper",
        ),
    ]


def check_evaluator_matches_closed_form(cases: int = 1000, seed: int = 11) -> list[ClaimRow]:
    rng = np.random.default_rng(seed)
    rows = []
    for n in (2, 3):
        worst = 0.0
        for _ in range(cases):
            spec = random_bell_diagonal(rng)
            result = evaluate(canonical_protocol(n, spec), spec.to_state())
            worst = max(worst, abs(result.p_min - pmin_formula(n, spec)))
        rows.append(
            ClaimRow(
                f"evaluator_matches_closed_form_{n}to1",
                f"max |exact evaluation - closed form| over {cases} random states",
                0.0,
                worst,
                1e-10,
                comparison="upper",
            )
        )
    return rows


def check_werner_family() -> list[ClaimRow]:
    qs = np.arange(0.01, 1.0 + 1e-9, 0.01)
    worst_eff = max(
        abs(pmin_formula(n, werner(q)) - werner_assisted_pmin(q, n))
        for n in (2, 3)
        for q in qs
    )
    worst_discord = max(
        abs(geometric_discord_bell_diagonal(werner(q)) - q)
        for q in np.arange(0.0, 1.0 + 1e-9, 0.01)
    )
    return [
        ClaimRow(
            "werner_efficiency",
            "Werner-assisted efficiency equals (1 + q/sqrt(n))/2 for n = 2, 3",
            0.0,
            worst_eff,
            1e-12,
            comparison="upper",
        ),
        ClaimRow(
            "werner_discord",
            "geometric discord of a Werner state equals its noise parameter",
            0.0,
            worst_discord,
            1e-12,
            comparison="upper",
        ),
    ]


def check_separable_optima() -> list[ClaimRow]:
    rows = []
    references = {
        2: (0.5 * (1.0 + 1.0 / (2.0 * SQRT2)), (0.5, 0.5, 0.0)),
        3: (0.5 * (1.0 + 1.0 / (3.0 * math.sqrt(3.0))), (1.0 / 3.0,) * 3),
    }
    for n, (ref_p, ref_spec) in references.items():
        spec, p = best_separable_bell_diagonal(n)
        comp_dev = max(
            abs(got - want) for got, want in zip((spec.e1, spec.e2, spec.e3), ref_spec)
        )
        rows.append(
            ClaimRow(
                f"separable_optimum_{n}to1_value",
                f"best separable Bell-diagonal efficiency for the {n}->1 code",
                ref_p,
                p,
                1e-6,
            )
        )
        rows.append(
            ClaimRow(
                f"separable_optimum_{n}to1_state",
                "max component deviation of the canonicalized optimal state",
                0.0,
                comp_dev,
                1e-4,
                comparison="upper",
            )
        )
    return rows


def check_concatenation() -> list[ClaimRow]:
    worst = 0.0
    for d in np.arange(0.0, 1.0 + 1e-9, 0.05):
        base = 0.5 * (1.0 + d / SQRT2)
        for m in range(1, 21):
            worst = max(
                worst,
                abs(concatenated_pmin_recursive(base, m) - concatenated_pmin_formula(d, m)),
            )
    return [
        ClaimRow(
            "concatenation_closed_form",
            "m-level recursion equals the closed form for m <= 20 on a discord grid",
            0.0,
            worst,
            1e-12,
            comparison="upper",
        )
    ]


def check_crossover() -> list[ClaimRow]:
    sep = pmin_formula(2, separable_optimum_spec())
    margin_sep = min(sep - werner_assisted_pmin(q, 2) for q in (0.35, 0.40, 0.45, 0.49))
    margin_wer = min(werner_assisted_pmin(q, 2) - sep for q in (0.51, 0.7, 1.0))
    equality = abs(sep - werner_assisted_pmin(0.5, 2))
    return [
        ClaimRow(
            "crossover_separable_wins",
            "separable optimum strictly beats Werner for q in {0.35, 0.40, 0.45, 0.49}",
            0.0,
            margin_sep,
            1e-12,
            comparison="lower",
        ),
        ClaimRow(
            "crossover_equality",
            "equality of the two closed forms at q = 1/2",
            0.0,
            equality,
            1e-12,
            comparison="upper",
        ),
        ClaimRow(
            "crossover_werner_wins",
            "Werner strictly beats the separable optimum for q in {0.51, 0.7, 1.0}",
            0.0,
            margin_wer,
            1e-12,
            comparison="lower",
        ),
    ]


def check_ppt_boundary() -> list[ClaimRow]:
    third = 1.0 / 3.0
    correct = 0
    total = 0
    for q in np.arange(0.0, 1.0 + 1e-12, 1e-3):
        total += 1
        if is_separable(werner(float(q)).to_state()) == (q <= third):
            correct += 1
    for q, expect in ((third - 1e-9, True), (third, True), (third + 1e-9, False)):
        total += 1
        if is_separable(werner(q).to_state()) == expect:
            correct += 1
    return [
        ClaimRow(
            "ppt_boundary",
            "PPT separability of Werner states flips exactly at q = 1/3",
            1.0,
            correct / total,
            0.0,
        )
    ]


def check_prepare_and_measure() -> list[ClaimRow]:
    worst = max(
        abs(prepare_and_measure_pmin(q) - 0.5 * (1.0 + q / SQRT2))
        for q in np.arange(0.0, 1.0 + 1e-9, 0.01)
    )
    return [
        ClaimRow(
            "prepare_and_measure",
            "noisy single-qubit 2->1 code achieves (1 + q/sqrt(2))/2 exactly",
            0.0,
            worst,
            1e-12,
            comparison="upper",
        )
    ]


def check_concatenated_classical(samples: int = 100000, seed: int = 42) -> list[ClaimRow]:
    report = concatenated_classical_search(samples, seed)
    return [
        ClaimRow(
            "concatenated_classical_bound",
            f"max worst case over {samples} sampled concatenated 4->1 codes "
            "(evidence, not a proof)",
            0.5,
            report.best_p_min,
            1e-9,
            comparison="upper",
        )
    ]


def check_properties(cases: int = 1000, seed: int = 13) -> list[ClaimRow]:
    rng = np.random.default_rng(seed)
    pauli = qstate.PAULI

    worst_norm = 0.0
    worst_total = 0.0
    worst_update = 0.0
    for _ in range(cases):
        state = random_two_qubit_state(rng)
        direction = random_direction(rng)
        p0 = alice_outcome_prob(state, direction, 0)
        p1 = alice_outcome_prob(state, direction, 1)
        worst_norm = max(worst_norm, abs(p0 + p1 - 1.0))

        total = p0 * post_measurement_bob(state, direction, 0) + p1 * post_measurement_bob(
            state, direction, 1
        )
        worst_total = max(worst_total, float(np.max(np.abs(total - state.b0))))

        # independent conditional-state route through the density matrix
        rho = reconstruct_density_matrix(state)
        for alpha in (0, 1):
            sign = 1.0 if alpha == 0 else -1.0
            projector = 0.5 * (np.eye(2) + sign * sum(direction[l] * pauli[l] for l in range(3)))
            partial = np.kron(projector, np.eye(2)) @ rho
            rho_b = partial.reshape(2, 2, 2, 2).trace(axis1=0, axis2=2)
            prob = np.trace(rho_b).real
            bloch = np.array(
                [np.trace(rho_b @ pauli[l]).real / prob for l in range(3)]
            )
            formula = post_measurement_bob(state, direction, alpha)
            worst_update = max(worst_update, float(np.max(np.abs(bloch - formula))))

    worst_invariance = 0.0
    for _ in range(200):
        spec = random_bell_diagonal(rng)
        e = spec.axes()
        base_d = geometric_discord_bell_diagonal(spec)
        for perm in ((0, 1, 2), (1, 2, 0), (2, 0, 1), (0, 2, 1)):
            for signs in ((1, 1, 1), (-1, 1, 1), (1, -1, 1), (-1, -1, -1)):
                other = BellDiagonalSpec(*(signs[i] * e[perm[i]] for i in range(3)))
                if not other.is_positive():
                    continue
                worst_invariance = max(
                    worst_invariance,
                    abs(geometric_discord_bell_diagonal(other) - base_d),
                )
        flipped = BellDiagonalSpec(-e[0], e[1], e[2])
        if flipped.is_positive():
            worst_invariance = max(
                worst_invariance, abs(pmin_formula(2, flipped) - pmin_formula(2, spec))
            )

    worst_dominance = -1.0
    worst_pigeonhole = 0.0
    stream = SplitMix64(seed)
    for _ in range(cases):
        n = 2 if stream.randrange(2) == 0 else 3
        strategy = strategy_from_indices(
            n, stream.randrange(4 ** (2 ** n)), stream.randrange(16 ** n)
        )
        _, t = optimal_distribution(strategy, "none")
        uniform_p = evaluate_strategy(strategy, SharedDistribution.uniform()).p_min
        worst_dominance = max(worst_dominance, uniform_p - t)
        if has_duplicate_encoding(strategy):
            worst_pigeonhole = max(worst_pigeonhole, t)

    return [
        ClaimRow(
            "property_normalization",
            "outcome probabilities of a measurement sum to one",
            0.0,
            worst_norm,
            1e-15,
            comparison="upper",
        ),
        ClaimRow(
            "property_total_bloch",
            "outcome-weighted conditional Bloch vectors average to Bob's marginal",
            0.0,
            worst_total,
            1e-12,
            comparison="upper",
        ),
        ClaimRow(
            "property_state_update",
            "Bloch update rule agrees with the density-matrix conditional state",
            0.0,
            worst_update,
            1e-10,
            comparison="upper",
        ),
        ClaimRow(
            "property_invariances",
            "discord and efficiency are invariant under sign flips and permutations",
            0.0,
            worst_invariance,
            1e-12,
            comparison="upper",
        ),
        ClaimRow(
            "property_lp_dominance",
            "the LP optimum dominates the uniform-distribution value",
            0.0,
            worst_dominance,
            1e-9,
            comparison="upper",
        ),
        ClaimRow(
            "property_pigeonhole",
            "strategies with a repeated encoding function stay at or below 1/2",
            0.5,
            worst_pigeonhole,
            1e-9,
            comparison="upper",
        ),
    ]


def reproduce_paper(
    samples: int = 100000,
    seed: int = 42,
    spot_checks: int = 1000,
    random_cases: int = 1000,
    workers: int = 1,
) -> ReproductionReport:
    """Recompute every reference value and report a pass/fail row for each.

    Rows are tagged with the number of the acceptance criterion they belong
    to, so the emitted report stays machine-readable per criterion.
    """
    groups: list[list[ClaimRow]] = [
        check_classical_two_bit_exhaustive(workers=workers),
        check_classical_two_bit_bob_mixed(workers=workers),
        check_classical_three_bit_pruned(spot_checks=spot_checks),
        check_optimal_code(),
        check_evaluator_matches_closed_form(cases=random_cases),
        check_werner_family(),
        check_separable_optima(),
        check_concatenation(),
        check_crossover(),
        check_ppt_boundary(),
        check_prepare_and_measure(),
        check_concatenated_classical(samples=samples, seed=seed),
        check_properties(cases=random_cases),
    ]
    rows = [
        replace(row, criterion=number)
        for number, group in enumerate(groups, start=1)
        for row in group
    ]
    config = {
        "samples": samples,
        "seed": seed,
        "spot_checks": spot_checks,
        "random_cases": random_cases,
        "workers": workers,
    }
    return ReproductionReport(rows=rows, config=config)
