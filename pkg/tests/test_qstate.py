import json
import math

import numpy as np
import pytest

from conftest import (
    oracle_conditional_bob,
    oracle_density_matrix,
    oracle_min_eigenvalue,
    oracle_partial_transpose,
    random_bell_diagonal,
    random_direction,
    random_state,
)

from rac_lab.errors import InvalidStateError, NullEventError
from rac_lab.qstate import (
    BellDiagonalSpec,
    TwoQubitState,
    alice_outcome_prob,
    bell_diagonal_is_separable,
    geometric_discord_bell_diagonal,
    is_separable,
    is_valid_state,
    measure_prob,
    post_measurement_bob,
    reconstruct_density_matrix,
    state_from_json_dict,
    state_to_json_dict,
    werner,
)

SQRT2 = math.sqrt(2.0)


class TestMeasureProb:
    def test_maximally_mixed_state(self):
        assert measure_prob((0, 0, 0), (0, 0, 1), 0) == 0.5
        assert measure_prob((0, 0, 0), (1, 0, 0), 1) == 0.5

    def test_eigenstate(self):
        assert measure_prob((0, 0, 1), (0, 0, 1), 0) == 1.0
        assert measure_prob((0, 0, 1), (0, 0, 1), 1) == 0.0

    def test_tilted_pure_state(self):
        s = (1 / SQRT2, 1 / SQRT2, 0.0)
        assert measure_prob(s, (1, 0, 0), 0) == pytest.approx(0.5 * (1 + 1 / SQRT2), abs=1e-12)

    def test_rejects_non_unit_direction(self):
        with pytest.raises(ValueError):
            measure_prob((0, 0, 0), (0, 0, 2), 0)

    def test_rejects_overlong_bloch_vector(self):
        with pytest.raises(InvalidStateError):
            measure_prob((1.1, 0, 0), (1, 0, 0), 0)

    def test_rejects_non_bit_outcome(self):
        with pytest.raises(ValueError):
            measure_prob((0, 0, 0), (0, 0, 1), 2)

    def test_normalization_over_random_inputs(self):
        rng = np.random.default_rng(10)
        for _ in range(500):
            s = rng.uniform(-1, 1, size=3)
            if np.linalg.norm(s) > 1:
                s /= np.linalg.norm(s) * rng.uniform(1.0, 2.0)
            d = random_direction(rng)
            total = measure_prob(s, d, 0) + measure_prob(s, d, 1)
            assert abs(total - 1.0) <= 1e-15


class TestAliceOutcomeProb:
    def test_bell_diagonal_marginal_is_flat(self):
        state = werner(0.7).to_state()
        for d in (np.eye(3)):
            assert alice_outcome_prob(state, d, 0) == 0.5

    def test_orthogonal_outcome(self):
        state = TwoQubitState((0, 0, 1), (0, 0, 0), np.zeros((3, 3)))
        assert alice_outcome_prob(state, (0, 0, 1), 1) == 0.0

    def test_tilted_marginal_against_density_oracle(self):
        state = TwoQubitState((0.3, 0, 0), (0, 0, 0), np.zeros((3, 3)))
        assert alice_outcome_prob(state, (1, 0, 0), 0) == pytest.approx(0.65, abs=1e-12)
        rho = oracle_density_matrix(state.a0, state.b0, state.E)
        prob, _ = oracle_conditional_bob(rho, (1, 0, 0), 0)
        assert alice_outcome_prob(state, (1, 0, 0), 0) == pytest.approx(prob, abs=1e-12)


class TestPostMeasurementBob:
    def test_perfect_correlation_along_z(self):
        state = BellDiagonalSpec(1, -1, 1).to_state()
        assert np.allclose(post_measurement_bob(state, (0, 0, 1), 0), (0, 0, 1), atol=1e-12)

    def test_uncorrelated_product_state(self):
        state = TwoQubitState(np.zeros(3), np.zeros(3), np.zeros((3, 3)))
        assert np.allclose(post_measurement_bob(state, (1, 0, 0), 0), (0, 0, 0))

    def test_diagonal_halves_against_density_oracle(self):
        state = BellDiagonalSpec(0.5, 0.5, 0.0).to_state()
        direction = np.array([1, 1, 0]) / SQRT2
        got = post_measurement_bob(state, direction, 0)
        want = np.array([0.5 / SQRT2, 0.5 / SQRT2, 0.0])
        assert np.allclose(got, want, atol=1e-12)
        rho = oracle_density_matrix(state.a0, state.b0, state.E)
        _, bloch = oracle_conditional_bob(rho, direction, 0)
        assert np.allclose(got, bloch, atol=1e-12)

    def test_conditioning_on_null_event_raises(self):
        state = TwoQubitState((0, 0, 1), (0, 0, 0), np.zeros((3, 3)))
        with pytest.raises(NullEventError):
            post_measurement_bob(state, (0, 0, 1), 1)

    def test_update_rule_matches_density_route_on_random_states(self):
        rng = np.random.default_rng(11)
        for _ in range(1000):
            state = random_state(rng)
            direction = random_direction(rng)
            rho = oracle_density_matrix(state.a0, state.b0, state.E)
            for alpha in (0, 1):
                prob, bloch = oracle_conditional_bob(rho, direction, alpha)
                assert alice_outcome_prob(state, direction, alpha) == pytest.approx(prob, abs=1e-12)
                got = post_measurement_bob(state, direction, alpha)
                assert np.max(np.abs(got - bloch)) < 1e-10

    def test_total_bloch_vector_law(self):
        rng = np.random.default_rng(12)
        for _ in range(300):
            state = random_state(rng)
            direction = random_direction(rng)
            total = sum(
                alice_outcome_prob(state, direction, a)
                * post_measurement_bob(state, direction, a)
                for a in (0, 1)
            )
            assert np.max(np.abs(total - state.b0)) < 1e-12


class TestDensityMatrix:
    def test_white_noise(self):
        state = TwoQubitState(np.zeros(3), np.zeros(3), np.zeros((3, 3)))
        assert np.allclose(reconstruct_density_matrix(state), np.eye(4) / 4)

    def test_pure_maximally_entangled(self):
        rho = reconstruct_density_matrix(werner(1.0).to_state())
        eigs = np.linalg.eigvalsh(rho)
        assert np.allclose(eigs, [0, 0, 0, 1], atol=1e-12)
        psi = np.array([1, 0, 0, 1]) / SQRT2
        assert np.allclose(rho, np.outer(psi, psi.conj()), atol=1e-12)

    @pytest.mark.parametrize("q", [0.0, 0.2, 1 / 3, 0.6, 1.0])
    def test_werner_spectrum_is_analytic(self, q):
        # analytic oracle: one eigenvalue (1+3q)/4, three of (1-q)/4
        rho = reconstruct_density_matrix(werner(q).to_state())
        got = np.sort(np.linalg.eigvalsh(rho))
        want = np.sort([(1 + 3 * q) / 4] + [(1 - q) / 4] * 3)
        assert np.max(np.abs(got - want)) < 1e-12

    def test_matches_kron_oracle_on_random_states(self):
        rng = np.random.default_rng(13)
        for _ in range(100):
            state = random_state(rng)
            got = reconstruct_density_matrix(state)
            want = oracle_density_matrix(state.a0, state.b0, state.E)
            assert np.max(np.abs(got - want)) < 1e-12
            assert abs(np.trace(got).real - 1.0) < 1e-12

    def test_marginals_and_correlations_round_trip(self):
        rng = np.random.default_rng(14)
        state = random_state(rng)
        rho = reconstruct_density_matrix(state)
        from conftest import I2, PAULI

        for l in range(3):
            assert np.trace(rho @ np.kron(PAULI[l], I2)).real == pytest.approx(state.a0[l], abs=1e-12)
            assert np.trace(rho @ np.kron(I2, PAULI[l])).real == pytest.approx(state.b0[l], abs=1e-12)
            for m in range(3):
                assert np.trace(rho @ np.kron(PAULI[l], PAULI[m])).real == pytest.approx(
                    state.E[l, m], abs=1e-12
                )


class TestValidity:
    def test_corner_outside_tetrahedron(self):
        assert not is_valid_state(BellDiagonalSpec(1, 1, 1).to_state())

    def test_maximally_entangled_is_valid(self):
        assert is_valid_state(BellDiagonalSpec(1, -1, 1).to_state())

    def test_symmetric_separable_point_is_valid(self):
        assert is_valid_state(BellDiagonalSpec(1 / 3, 1 / 3, 1 / 3).to_state())

    def test_positivity_shortcut_agrees_with_full_check(self):
        rng = np.random.default_rng(15)
        for _ in range(1000):
            spec = BellDiagonalSpec(*rng.uniform(-1, 1, size=3))
            assert spec.is_positive(floor=-1e-10 * 4) == is_valid_state(spec.to_state())


class TestSeparability:
    def test_werner_examples(self):
        assert is_separable(werner(0.2).to_state())
        assert not is_separable(werner(0.5).to_state())
        assert is_separable(BellDiagonalSpec(0.5, 0.5, 0.0).to_state())

    def test_invalid_state_is_rejected(self):
        with pytest.raises(InvalidStateError):
            is_separable(BellDiagonalSpec(1, 1, 1).to_state())

    def test_werner_threshold_fine_grid(self):
        third = 1 / 3
        for q in np.arange(0.0, 1.0 + 1e-12, 0.01):
            assert is_separable(werner(float(q)).to_state()) == (q <= third)

    def test_werner_threshold_boundary(self):
        third = 1 / 3
        assert is_separable(werner(third).to_state())
        assert is_separable(werner(third - 1e-9).to_state())
        assert not is_separable(werner(third + 1e-6).to_state())
        assert not is_separable(werner(third + 1e-9).to_state())

    def test_ppt_agrees_with_reference_eigensolver(self):
        rng = np.random.default_rng(16)
        for _ in range(200):
            spec = random_bell_diagonal(rng)
            rho = oracle_density_matrix(np.zeros(3), np.zeros(3), np.diag(spec.axes()))
            reference = oracle_min_eigenvalue(oracle_partial_transpose(rho)) >= -1e-10
            assert is_separable(spec.to_state()) == reference

    def test_octahedron_shortcut_matches_ppt(self):
        rng = np.random.default_rng(17)
        for _ in range(300):
            spec = random_bell_diagonal(rng)
            assert bell_diagonal_is_separable(spec) == is_separable(spec.to_state())


class TestWerner:
    def test_endpoints(self):
        assert werner(0.0).axes().tolist() == [0, 0, 0]
        assert werner(1.0).axes().tolist() == [1, -1, 1]

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            werner(-0.1)
        with pytest.raises(ValueError):
            werner(1.0 + 1e-9)


class TestGeometricDiscord:
    def test_werner_discord_equals_parameter(self):
        for q in np.arange(0.0, 1.0 + 1e-12, 0.01):
            got = geometric_discord_bell_diagonal(werner(float(q)))
            assert got == pytest.approx(q, abs=1e-12)

    def test_classically_correlated_state_has_zero_discord(self):
        assert geometric_discord_bell_diagonal(BellDiagonalSpec(1, 0, 0)) == 0.0

    def test_separable_optimum_discord(self):
        got = geometric_discord_bell_diagonal(BellDiagonalSpec(0.5, 0.5, 0.0))
        assert got == pytest.approx(1 / (2 * SQRT2), abs=1e-12)

    def test_invalid_spec_is_rejected(self):
        with pytest.raises(InvalidStateError):
            geometric_discord_bell_diagonal(BellDiagonalSpec(1, 1, 1))

    def test_invariance_under_flips_and_permutations(self):
        rng = np.random.default_rng(18)
        for _ in range(200):
            spec = random_bell_diagonal(rng)
            base = geometric_discord_bell_diagonal(spec)
            e = spec.axes()
            for perm in ((0, 1, 2), (1, 0, 2), (2, 1, 0), (1, 2, 0)):
                for signs in ((1, 1, 1), (-1, -1, 1), (1, -1, -1), (-1, -1, -1)):
                    other = BellDiagonalSpec(*(signs[i] * e[perm[i]] for i in range(3)))
                    if other.is_positive():
                        assert geometric_discord_bell_diagonal(other) == pytest.approx(
                            base, abs=1e-12
                        )


class TestJson:
    def test_full_form_round_trip(self):
        rng = np.random.default_rng(19)
        state = random_state(rng)
        clone = state_from_json_dict(json.loads(json.dumps(state_to_json_dict(state))))
        assert np.allclose(clone.a0, state.a0)
        assert np.allclose(clone.b0, state.b0)
        assert np.allclose(clone.E, state.E)

    def test_bell_diagonal_shorthand(self):
        state = state_from_json_dict({"bell_diagonal": [0.5, 0.5, 0.0]})
        assert np.allclose(np.diag(state.E), [0.5, 0.5, 0.0])
        assert np.allclose(state.a0, 0)

    def test_werner_shorthand(self):
        state = state_from_json_dict({"werner": 0.4})
        assert np.allclose(np.diag(state.E), [0.4, -0.4, 0.4])

    def test_unknown_keys_rejected(self):
        with pytest.raises(ValueError):
            state_from_json_dict({"werner": 0.4, "extra": 1})
        with pytest.raises(ValueError):
            state_from_json_dict({"a0": [0, 0, 0], "b0": [0, 0, 0]})


class TestStateConstruction:
    def test_rejects_bad_shapes(self):
        with pytest.raises(ValueError):
            TwoQubitState((0, 0), (0, 0, 0), np.zeros((3, 3)))
        with pytest.raises(ValueError):
            TwoQubitState((0, 0, 0), (0, 0, 0), np.zeros((2, 3)))

    def test_rejects_out_of_range_correlations(self):
        e = np.zeros((3, 3))
        e[0, 0] = 1.5
        with pytest.raises(ValueError):
            TwoQubitState((0, 0, 0), (0, 0, 0), e)

    def test_rejects_overlong_marginals(self):
        with pytest.raises(InvalidStateError):
            TwoQubitState((1, 1, 0), (0, 0, 0), np.zeros((3, 3)))

    def test_states_are_immutable(self):
        state = werner(0.5).to_state()
        with pytest.raises(ValueError):
            state.E[0, 0] = 0.9
