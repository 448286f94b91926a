import math

import numpy as np
import pytest

from rac_lab.optimize import (
    ComparisonRow,
    StateFamilyConstraint,
    best_separable_bell_diagonal,
    canonicalize_spec,
    crossover_analysis,
    discord_efficiency_table,
    separable_beats_werner,
    separable_optimum_spec,
    werner_assisted_pmin,
)
from rac_lab.qstate import (
    bell_diagonal_is_separable,
    geometric_discord_bell_diagonal,
    is_separable,
    is_valid_state,
)
from rac_lab.quantum_rac import pmin_formula

SQRT2 = math.sqrt(2.0)


class TestBestSeparable:
    def test_two_bit_optimum(self):
        spec, p = best_separable_bell_diagonal(2)
        assert p == pytest.approx(0.5 * (1 + 1 / (2 * SQRT2)), abs=1e-6)
        assert np.allclose([spec.e1, spec.e2, spec.e3], [0.5, 0.5, 0.0], atol=1e-4)

    def test_three_bit_optimum(self):
        spec, p = best_separable_bell_diagonal(3)
        assert p == pytest.approx(0.5 * (1 + 1 / (3 * math.sqrt(3))), abs=1e-6)
        assert np.allclose([spec.e1, spec.e2, spec.e3], [1 / 3] * 3, atol=1e-4)

    def test_returned_state_is_separable_by_both_tests(self):
        for n in (2, 3):
            spec, _ = best_separable_bell_diagonal(n)
            assert bell_diagonal_is_separable(spec)
            assert is_separable(spec.to_state())
            assert spec.e1 >= spec.e2 >= spec.e3 >= 0.0

    def test_value_is_consistent_with_the_formula(self):
        for n in (2, 3):
            spec, p = best_separable_bell_diagonal(n)
            assert p == pytest.approx(pmin_formula(n, spec), abs=1e-15)

    def test_axis_permuted_bounds_give_the_same_value(self):
        base = best_separable_bell_diagonal(3)[1]
        permuted = best_separable_bell_diagonal(
            3, StateFamilyConstraint(component_bounds=(1.0, 1.0, 1.0))
        )[1]
        assert permuted == pytest.approx(base, abs=1e-9)

    def test_unconstrained_search_reaches_the_entangled_corner(self):
        spec, p = best_separable_bell_diagonal(
            2, StateFamilyConstraint(separability="ignored")
        )
        assert p == pytest.approx(0.5 * (1 + 1 / SQRT2), abs=1e-9)
        assert is_valid_state(spec.to_state())
        assert not is_separable(spec.to_state())

    def test_component_bounds_are_respected(self):
        spec, p = best_separable_bell_diagonal(
            2, StateFamilyConstraint(component_bounds=(0.4, 0.4, 0.4))
        )
        assert max(abs(spec.e1), abs(spec.e2), abs(spec.e3)) <= 0.4 + 1e-9
        assert p == pytest.approx(pmin_formula(2, spec), abs=1e-12)

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            best_separable_bell_diagonal(4)
        with pytest.raises(ValueError):
            best_separable_bell_diagonal(2, grid_step=0.0)
        with pytest.raises(ValueError):
            StateFamilyConstraint(separability="sometimes")
        with pytest.raises(ValueError):
            StateFamilyConstraint(component_bounds=(2.0, 1.0, 1.0))


class TestCanonicalize:
    def test_sorts_descending_nonnegative(self):
        spec = canonicalize_spec((-0.2, 0.5, 0.3))
        assert (spec.e1, spec.e2, spec.e3) == (0.5, 0.3, 0.2)

    def test_keeps_validity_for_entangled_magnitudes(self):
        spec = canonicalize_spec((1.0, -1.0, 1.0), keep_validity=True)
        assert (spec.e1, spec.e2, spec.e3) == (1.0, 1.0, -1.0)
        assert is_valid_state(spec.to_state())


class TestCrossover:
    def test_separable_wins_inside_the_window(self):
        for q in (0.35, 0.40, 0.45, 0.49):
            assert separable_beats_werner(q)

    def test_werner_wins_outside(self):
        for q in (0.51, 0.7, 1.0):
            assert not separable_beats_werner(q)

    def test_equality_at_one_half(self):
        sep = pmin_formula(2, separable_optimum_spec())
        assert abs(sep - werner_assisted_pmin(0.5, 2)) <= 1e-12

    def test_dominance_flips_monotonically(self):
        flags = [separable_beats_werner(q) for q in np.arange(0.0, 1.0001, 0.01)]
        # once the Werner side takes over it never gives the lead back
        first_false = flags.index(False)
        assert all(not f for f in flags[first_false:])

    def test_example_rows(self):
        rows = crossover_analysis([0.4, 0.5, 0.8])
        by_label = {row.label: row for row in rows}
        assert by_label["werner(q=0.4)"].p_min == pytest.approx(0.641421356, abs=1e-9)
        assert by_label["separable-optimum(q=0.4)"].p_min == pytest.approx(0.676776695, abs=1e-9)
        assert by_label["werner(q=0.8)"].p_min > by_label["separable-optimum(q=0.8)"].p_min
        assert abs(
            by_label["werner(q=0.5)"].p_min - by_label["separable-optimum(q=0.5)"].p_min
        ) <= 1e-12

    def test_rows_are_internally_consistent(self):
        rows = crossover_analysis(np.arange(0.0, 1.0001, 0.1))
        for row in rows:
            assert row.discord == pytest.approx(
                geometric_discord_bell_diagonal(row.spec), abs=1e-12
            )
            assert row.separable == is_separable(row.spec.to_state())


class TestDiscordTable:
    def test_separable_reference_row(self):
        rows = discord_efficiency_table()
        head = rows[0]
        assert head.label == "separable-optimum"
        assert head.discord == pytest.approx(1 / (2 * SQRT2), abs=1e-12)
        assert head.p_min == pytest.approx(0.5 * (1 + 1 / (2 * SQRT2)), abs=1e-12)
        assert head.separable

    def test_werner_rows_have_more_discord_but_less_efficiency(self):
        rows = discord_efficiency_table()
        head = rows[0]
        assert len(rows) > 1
        for row in rows[1:]:
            assert row.discord > head.discord
            assert row.p_min < head.p_min
            assert not row.separable

    def test_specific_werner_value(self):
        rows = discord_efficiency_table((0.45,))
        assert rows[1].discord == pytest.approx(0.45, abs=1e-12)
        assert rows[1].p_min == pytest.approx(0.5 * (1 + 0.45 / SQRT2), abs=1e-12)

    def test_interval_boundaries_are_rejected(self):
        with pytest.raises(ValueError):
            discord_efficiency_table((1 / (2 * SQRT2),))  # equal discord, excluded
        with pytest.raises(ValueError):
            discord_efficiency_table((0.5,))
        with pytest.raises(ValueError):
            discord_efficiency_table((0.2,))

    def test_boundary_value_outside_the_table_contract(self):
        # at q = 1/(2 sqrt 2) the discords tie and the Werner worst case is 5/8
        q = 1 / (2 * SQRT2)
        assert werner_assisted_pmin(q, 2) == pytest.approx(0.625, abs=1e-12)
        assert werner_assisted_pmin(q, 2) < pmin_formula(2, separable_optimum_spec())


class TestComparisonRow:
    def test_csv_row_shape(self):
        row = ComparisonRow(
            label="x",
            spec=separable_optimum_spec(),
            discord=0.35,
            p_min=0.67,
            separable=True,
        )
        cells = row.csv_row()
        assert cells[0] == "x"
        assert len(cells) == 7
