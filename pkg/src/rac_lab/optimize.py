"""Optimisation over Bell-diagonal states and efficiency comparisons.

The worst-case success of the canonical codes is monotone in every |e_i|, so
the separable optimum lies on the boundary of the octahedron
|e1| + |e2| + |e3| <= 1 (which is exactly the separable Bell-diagonal region).
The optimiser runs a deterministic coarse grid followed by coordinate-wise
golden-section refinement on that boundary, then double-checks the winner with
the exact PPT test.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .qstate import (
    BellDiagonalSpec,
    bell_diagonal_is_separable,
    geometric_discord_bell_diagonal,
    is_separable,
    werner,
)
from .quantum_rac import pmin_formula

import numpy as np

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class StateFamilyConstraint:
    """Feasible family for the optimiser: Bell-diagonal, with optional separability."""

    separability: str = "required"  # "required" | "ignored"
    component_bounds: tuple[float, float, float] = (1.0, 1.0, 1.0)

    def __post_init__(self):
        if self.separability not in ("required", "ignored"):
            raise ValueError("separability must be 'required' or 'ignored'")
        bounds = tuple(float(b) for b in self.component_bounds)
        if len(bounds) != 3 or any(not 0.0 <= b <= 1.0 for b in bounds):
            raise ValueError("component bounds must be three values in [0, 1]")
        object.__setattr__(self, "component_bounds", bounds)


@dataclass(frozen=True)
class ComparisonRow:
    """One state in a comparison table: its discord, efficiency and separability."""

    label: str
    spec: BellDiagonalSpec
    discord: float
    p_min: float
    separable: bool

    def csv_row(self) -> tuple:
        return (
            self.label,
            self.spec.e1,
            self.spec.e2,
            self.spec.e3,
            self.discord,
            self.p_min,
            self.separable,
        )

    def to_json_dict(self) -> dict:
        return {
            "label": self.label,
            "e": [self.spec.e1, self.spec.e2, self.spec.e3],
            "discord": self.discord,
            "p_min": self.p_min,
            "separable": self.separable,
        }


CSV_HEADER = ("label", "e1", "e2", "e3", "discord", "p_min", "separable")


def _objective(n: int, mags) -> float:
    """Worst-case success on magnitudes; 1/2 when a needed component vanishes."""
    inv_sq = 0.0
    for i in range(n):
        if mags[i] <= 0.0:
            return 0.5
        inv_sq += 1.0 / mags[i] ** 2
    return 0.5 * (1.0 + 1.0 / math.sqrt(inv_sq))


def _golden_max(f, lo: float, hi: float, tol: float) -> float:
    """Argmax of a unimodal function on [lo, hi] to bracket width tol."""
    if hi - lo <= tol:
        return 0.5 * (lo + hi)
    a, b = lo, hi
    x1 = b - _GOLDEN * (b - a)
    x2 = a + _GOLDEN * (b - a)
    f1, f2 = f(x1), f(x2)
    while b - a > tol:
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + _GOLDEN * (b - a)
            f2 = f(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - _GOLDEN * (b - a)
            f1 = f(x1)
    return 0.5 * (a + b)


def _grid_best_separable(n: int, caps, step: float) -> np.ndarray:
    """Best magnitudes on the grid inside the octahedron (deterministic argmax)."""
    axes = [np.arange(0.0, cap + step / 2.0, step) for cap in caps]
    if n == 2:
        g1, g2 = np.meshgrid(axes[0], axes[1], indexing="ij")
        g3 = np.zeros_like(g1)
    else:
        g1, g2, g3 = np.meshgrid(axes[0], axes[1], axes[2], indexing="ij")
    feasible = g1 + g2 + g3 <= 1.0 + 1e-12
    with np.errstate(divide="ignore"):
        inv_sq = 1.0 / g1 ** 2 + 1.0 / g2 ** 2
        if n == 3:
            inv_sq = inv_sq + 1.0 / g3 ** 2
    p = np.where(feasible, 0.5 * (1.0 + 1.0 / np.sqrt(inv_sq)), 0.0)
    flat = int(np.argmax(p))
    return np.array([g.ravel()[flat] for g in (g1, g2, g3)])


def _refine_separable(n: int, start: np.ndarray, caps, step: float, tol: float) -> np.ndarray:
    """Coordinate golden-section ascent on the boundary of the feasible region.

    The objective is increasing in every component, so when the caps already
    fit inside the octahedron the capped corner is exact; otherwise the
    optimum lies on the face sum(e) = 1 and is refined there.
    """
    if n == 2:
        if caps[0] + caps[1] <= 1.0:
            return np.array([caps[0], caps[1], 0.0])

        def on_face(t):
            return _objective(2, (t, 1.0 - t, 0.0))

        lo = max(0.0, 1.0 - caps[1], start[0] - step)
        hi = min(caps[0], 1.0, start[0] + step)
        t = _golden_max(on_face, lo, hi, tol)
        return np.array([t, 1.0 - t, 0.0])

    if sum(caps) <= 1.0:
        return np.array(caps, dtype=float)

    t1, t2 = float(start[0]), float(start[1])
    radius = step
    while radius > tol / 4.0:
        def along_t1(v):
            return _objective(3, (v, t2, 1.0 - v - t2))

        lo = max(0.0, 1.0 - t2 - caps[2], t1 - radius)
        hi = min(caps[0], 1.0 - t2, t1 + radius)
        t1 = _golden_max(along_t1, lo, hi, min(tol, radius / 8.0))

        def along_t2(v):
            return _objective(3, (t1, v, 1.0 - t1 - v))

        lo = max(0.0, 1.0 - t1 - caps[2], t2 - radius)
        hi = min(caps[1], 1.0 - t1, t2 + radius)
        t2 = _golden_max(along_t2, lo, hi, min(tol, radius / 8.0))
        radius *= 0.5
    return np.array([t1, t2, 1.0 - t1 - t2])


def _maximal_entangled_corner(caps) -> np.ndarray:
    """Coordinatewise-maximal magnitudes under the validity constraints.

    A magnitude triple (a, b, c) is realisable by some sign pattern iff each
    pairwise sum exceeds the third by at most 1; the objective is increasing
    in every magnitude, so relaxing down from the caps until every constraint
    holds yields the coordinatewise-maximal feasible point.
    """
    mags = np.array(caps, dtype=float)
    for _ in range(16):
        previous = mags.copy()
        for i in range(3):
            j, k = (i + 1) % 3, (i + 2) % 3
            mags[i] = min(caps[i], 1.0 - abs(mags[j] - mags[k]))
        if np.allclose(mags, previous, atol=1e-15):
            break
    return mags


def canonicalize_spec(mags, keep_validity: bool = False) -> BellDiagonalSpec:
    """Magnitudes sorted descending; all components nonnegative, except that a
    sign is pushed onto the smallest component when needed to keep the state valid."""
    mags = np.sort(np.abs(np.asarray(mags, dtype=float)))[::-1]
    spec = BellDiagonalSpec(float(mags[0]), float(mags[1]), float(mags[2]))
    if keep_validity and not spec.is_positive():
        spec = BellDiagonalSpec(float(mags[0]), float(mags[1]), -float(mags[2]))
    return spec.validate()


def best_separable_bell_diagonal(
    n: int,
    constraint: StateFamilyConstraint | None = None,
    grid_step: float = 0.01,
    refine_tol: float = 1e-6,
) -> tuple[BellDiagonalSpec, float]:
    """Maximise the canonical n->1 efficiency over (by default separable) states.

    Deterministic: coarse grid at grid_step, then coordinate-wise golden
    refinement down to refine_tol.  The winner is canonicalised (descending
    nonnegative components) and re-verified with the PPT test when
    separability is required.
    """
    if n not in (2, 3):
        raise ValueError(f"optimisation is defined for n = 2 or 3, got {n}")
    if grid_step <= 0 or refine_tol <= 0:
        raise ValueError("grid_step and refine_tol must be positive")
    constraint = constraint or StateFamilyConstraint()
    caps = constraint.component_bounds

    if constraint.separability == "required":
        start = _grid_best_separable(n, caps, grid_step)
        mags = _refine_separable(n, start, caps, grid_step, refine_tol)
        spec = canonicalize_spec(mags)
        if not bell_diagonal_is_separable(spec) or not is_separable(spec.to_state()):
            raise RuntimeError("optimiser left the separable region")  # pragma: no cover
    else:
        mags = _maximal_entangled_corner(caps)
        spec = canonicalize_spec(mags, keep_validity=True)

    return spec, pmin_formula(n, spec)


# --- comparison tables -------------------------------------------------------


def separable_optimum_spec() -> BellDiagonalSpec:
    return BellDiagonalSpec(0.5, 0.5, 0.0)


def werner_assisted_pmin(q: float, n: int = 2) -> float:
    """Closed-form worst case of the canonical n->1 code on a Werner state."""
    if not 0.0 <= q <= 1.0:
        raise ValueError(f"Werner parameter must lie in [0, 1], got {q}")
    if n not in (2, 3):
        raise ValueError(f"closed form exists for n = 2 or 3, got {n}")
    return 0.5 * (1.0 + q / math.sqrt(n))


def separable_beats_werner(q: float) -> bool:
    """Strictly better worst case of the best separable 2->1 code than Werner-assisted."""
    sep = pmin_formula(2, separable_optimum_spec())
    return sep > werner_assisted_pmin(q, 2)


def _werner_row(q: float, label: str | None = None) -> ComparisonRow:
    spec = werner(q)
    return ComparisonRow(
        label=label or f"werner(q={q:.6g})",
        spec=spec,
        discord=geometric_discord_bell_diagonal(spec),
        p_min=werner_assisted_pmin(q, 2),
        separable=is_separable(spec.to_state()),
    )


def _separable_optimum_row(label: str = "separable-optimum") -> ComparisonRow:
    spec = separable_optimum_spec()
    return ComparisonRow(
        label=label,
        spec=spec,
        discord=geometric_discord_bell_diagonal(spec),
        p_min=pmin_formula(2, spec),
        separable=is_separable(spec.to_state()),
    )


def crossover_analysis(q_grid) -> list[ComparisonRow]:
    """Werner-assisted versus fixed separable-optimum rows, paired per q."""
    rows = []
    for q in q_grid:
        q = float(q)
        rows.append(_werner_row(q))
        rows.append(_separable_optimum_row(label=f"separable-optimum(q={q:.6g})"))
    return rows


def discord_efficiency_table(werner_qs=(0.36, 0.39, 0.42, 0.45, 0.48)) -> list[ComparisonRow]:
    """The separable optimum against Werner states that hold more discord.

    Every Werner parameter must lie strictly between the separable optimum's
    discord 1/(2 sqrt 2) and 1/2: inside that window the Werner state has more
    discord yet a worse worst case.
    """
    lower = 1.0 / (2.0 * math.sqrt(2.0))
    for q in werner_qs:
        if not lower < float(q) < 0.5:
            raise ValueError(
                f"Werner parameter {q} outside the open interval ({lower:.6f}, 0.5)"
            )
    rows = [_separable_optimum_row()]
    rows.extend(_werner_row(float(q)) for q in werner_qs)
    return rows
