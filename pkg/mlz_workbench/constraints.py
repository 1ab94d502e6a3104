# Copyright (c) 2025 Mathias Ertl
# Licensed under the MIT License. See LICENSE file for details.

"""Exact constraints on scattering matrices and the relations derived from them."""

import logging
import math
from typing import NamedTuple

import numpy as np
from pydantic import computed_field
from scipy.optimize import least_squares

from mlz_workbench.errors import (
    BandStructureMismatchError,
    MOutOfRangeError,
    NoPhysicalRootError,
    NotAChainError,
    NotExtremalBandError,
)
from mlz_workbench.models.base import ValueModel
from mlz_workbench.models.matrices import PROBABILITY_SLACK, ScatteringMatrix, TransitionMatrix
from mlz_workbench.models.mlz import MlzModel
from mlz_workbench.models.reports import ConstraintEntry, ConstraintReport
from mlz_workbench.models.validators import STRUCTURE_TOLERANCE, validate_open_unit_interval
from mlz_workbench.typing import Corner, FloatArray, LevelPair

log = logging.getLogger(__name__)

#: Default tolerance for checks against propagated scattering matrices.
PROPAGATION_TOLERANCE = 5e-3

#: Default tolerance for exact algebraic identities.
IDENTITY_TOLERANCE = 1e-10

#: Starting points (A, B) of the bow-tie root finder, S22 always starts at 0.5.
BOWTIE_STARTS = sorted(
    ((a, b) for a in (-0.25, -0.5, -0.75) for b in (-0.25, -0.5, -0.75)),
    key=lambda start: abs(start[0] + 0.5) + abs(start[1] + 0.5),
)

#: Accepted roots keep this distance from the boundary of the physical domain.
BOWTIE_BOUNDARY_MARGIN = 1e-6
BOWTIE_MAX_ITERATIONS = 100
BOWTIE_RESIDUAL_TOLERANCE = 1e-12


def _check_block_size(size: int, m: int) -> None:
    if not 1 <= m <= size - 1:
        raise MOutOfRangeError(f"M={m}: Must be between 1 and {size - 1}.")


def _check_corner(corner: Corner) -> None:
    if corner not in ("upper-left", "lower-right"):
        raise ValueError(f"{corner}: Unknown corner.")


def hc_rhs(model: MlzModel, m: int, corner: Corner) -> float:
    """Right side of the hierarchy constraint for the `m x m` block at `corner`.

    For the upper-left corner, this is `exp(-π sum_{k>m} sum_{r<=m} |g_kr|² / |β_r - β_k|)` (1-based), the
    lower-right corner is the mirror image. Pairs of parallel levels do not contribute.
    """
    _check_block_size(model.dimension, m)
    _check_corner(corner)
    if corner == "upper-left":
        inside, outside = range(m), range(m, model.dimension)
    else:
        inside, outside = range(model.dimension - m, model.dimension), range(model.dimension - m)

    exponent = 0.0
    for r in inside:
        for k in outside:
            difference = abs(model.slopes[r] - model.slopes[k])
            if difference != 0:
                exponent += abs(model.couplings[k, r]) ** 2 / difference
    return math.exp(-math.pi * exponent)


def hc_minor(matrix: ScatteringMatrix, m: int, corner: Corner) -> complex:
    """Determinant of the `m x m` block of the scattering matrix at `corner`."""
    _check_block_size(matrix.dimension, m)
    _check_corner(corner)
    if corner == "upper-left":
        block = matrix.entries[:m, :m]
    else:
        block = matrix.entries[-m:, -m:]
    return complex(np.linalg.det(block))


def verify_hierarchy(
    model: MlzModel, matrix: ScatteringMatrix, tol: float = PROPAGATION_TOLERANCE
) -> ConstraintReport:
    """Compare all corner minors of the scattering matrix with the hierarchy constraints.

    Every minor gets a second entry requiring its imaginary part to vanish.
    """
    corners: tuple[Corner, ...] = ("upper-left", "lower-right")
    entries: list[ConstraintEntry] = []
    for corner in corners:
        for m in range(1, model.dimension):
            minor = hc_minor(matrix, m, corner)
            name = f"HC {corner} M={m}"
            entries += [
                ConstraintEntry(name=name, lhs=minor, rhs=hc_rhs(model, m, corner), tolerance=tol),
                ConstraintEntry(name=f"{name} imaginary part", lhs=minor.imag, rhs=0.0, tolerance=tol),
            ]
    return ConstraintReport(title="hierarchy constraints", entries=tuple(entries))


def _extremal_band(model: MlzModel, r: int) -> bool:
    slope = model.slopes[r]
    return bool(slope == model.slopes[0] or slope == model.slopes[-1])


def be_survival(model: MlzModel, r: int) -> float:
    """Survival amplitude `S_rr` of a level in the band with the lowest or the highest slope."""
    if not _extremal_band(model, r):
        raise NotExtremalBandError(
            f"Level {model.labels[r]} is neither in the band of lowest nor of highest slope."
        )
    exponent = 0.0
    for k in range(model.dimension):
        difference = abs(model.slopes[k] - model.slopes[r])
        if difference != 0:
            exponent += abs(model.couplings[k, r]) ** 2 / difference
    return math.exp(-math.pi * exponent)


def be_report(
    model: MlzModel, matrix: ScatteringMatrix, tol: float = PROPAGATION_TOLERANCE
) -> ConstraintReport:
    """Compare survival amplitudes of all levels in extremal bands with their predicted values."""
    entries = [
        ConstraintEntry(
            name=f"BE S[{model.labels[r]},{model.labels[r]}]",
            lhs=complex(matrix.entries[r, r]),
            rhs=be_survival(model, r),
            tolerance=tol,
        )
        for r in range(model.dimension)
        if _extremal_band(model, r)
    ]
    return ConstraintReport(title="band survival amplitudes", entries=tuple(entries))


def nogo_pairs(model: MlzModel) -> frozenset[LevelPair]:
    """Index pairs `(n, m)` for which the no-go rule predicts `S[n, m] = 0`.

    In the band of lowest slope, a level cannot go to a level with lower diabatic energy. In the band
    of highest slope, a level cannot go to a level with higher diabatic energy.
    """
    groups = model.parallel_groups()
    pairs: set[LevelPair] = set()
    lowest, highest = groups[0], groups[-1]
    for r in lowest:
        pairs.update((r, k) for k in lowest if model.energies[k] > model.energies[r])
    for r in highest:
        pairs.update((k, r) for k in highest if model.energies[k] > model.energies[r])
    return frozenset(pairs)


def nogo_report(
    model: MlzModel, matrix: ScatteringMatrix, tol: float = PROPAGATION_TOLERANCE
) -> ConstraintReport:
    """Check that all amplitudes predicted to vanish by the no-go rule are zero."""
    entries = [
        ConstraintEntry(
            name=f"no-go S[{model.labels[n]},{model.labels[m]}]",
            lhs=complex(matrix.entries[n, m]),
            rhs=0.0,
            tolerance=tol,
        )
        for n, m in sorted(nogo_pairs(model))
    ]
    return ConstraintReport(title="no-go rule", entries=tuple(entries))


def _require_chain(model: MlzModel) -> None:
    if model.dimension < 3:
        raise NotAChainError("A chain needs at least three levels.")
    if len(set(model.slopes)) != model.dimension:
        raise NotAChainError("Levels of a chain must have distinct slopes.")
    if np.ptp(model.energies) > STRUCTURE_TOLERANCE:
        raise NotAChainError("All levels of a chain must cross in one point (equal diabatic energies).")
    if np.max(np.abs(model.couplings.imag)) > STRUCTURE_TOLERANCE:
        raise NotAChainError("Couplings of a chain must be real.")
    distance = np.abs(np.subtract.outer(np.arange(model.dimension), np.arange(model.dimension)))
    if np.max(np.abs(model.couplings[distance != 1]), initial=0.0) > STRUCTURE_TOLERANCE:
        raise NotAChainError("Only neighboring levels of a chain may be coupled.")


def chain_relation_residual(model: MlzModel, probabilities: TransitionMatrix) -> float:
    """Residual of `P_22 = (exp(-π g_2²/|b_2 - b_3|) - P_12)² exp(2π g_1²/|b_1 - b_2|)` for a chain."""
    _require_chain(model)
    b1, b2, b3 = model.slopes[:3]
    g1, g2 = model.couplings[0, 1].real, model.couplings[1, 2].real
    p = probabilities.probabilities
    predicted = (math.exp(-math.pi * g2**2 / abs(b2 - b3)) - p[0, 1]) ** 2 * math.exp(
        2 * math.pi * g1**2 / abs(b1 - b2)
    )
    return float(abs(p[1, 1] - predicted))


def chain_symmetry_report(
    model: MlzModel, matrix: ScatteringMatrix, tol: float = PROPAGATION_TOLERANCE
) -> ConstraintReport:
    """Check `S_ij = (-1)^(i+j) conj(S_ji)` for all pairs of levels of a chain."""
    _require_chain(model)
    s = matrix.entries
    entries = [
        ConstraintEntry(
            name=f"chain symmetry S[{model.labels[i]},{model.labels[j]}]",
            lhs=complex(s[i, j] - (-1) ** (i + j) * s[j, i].conjugate()),
            rhs=0.0,
            tolerance=tol,
        )
        for i in range(model.dimension)
        for j in range(i + 1, model.dimension)
    ]
    return ConstraintReport(title="chain symmetry", entries=tuple(entries))


def band_relation_residuals(
    model: MlzModel, probabilities: TransitionMatrix, tol: float = PROPAGATION_TOLERANCE
) -> ConstraintReport:
    """Check `P_11 P_rk = P_1k P_r1` for all levels `r > k` of the band next to the lowest level."""
    groups = model.parallel_groups()
    if len(groups) < 2 or len(groups[0]) != 1:
        raise BandStructureMismatchError(
            "Model needs a single level of lowest slope followed by a band of next-to-lowest slope."
        )
    p = probabilities.probabilities
    band = groups[1]
    entries = [
        ConstraintEntry(
            name=f"band P[1,1] P[{model.labels[r]},{model.labels[k]}]",
            lhs=p[0, 0] * p[r, k],
            rhs=p[0, k] * p[r, 0],
            tolerance=tol,
        )
        for r in band
        for k in band
        if r > k
    ]
    return ConstraintReport(title="band relations", entries=tuple(entries))


def unitarity_report(matrix: ScatteringMatrix, tol: float = PROPAGATION_TOLERANCE) -> ConstraintReport:
    """Check unitarity of `S` and double stochasticity of `|S|²`."""
    adjoint = matrix.entries.conj().T
    identity = np.eye(matrix.dimension)
    left = float(np.max(np.abs(matrix.entries @ adjoint - identity)))
    right = float(np.max(np.abs(adjoint @ matrix.entries - identity)))
    probabilities = np.abs(matrix.entries) ** 2
    entries = [
        ConstraintEntry(name="max |S S^+ - 1|", lhs=left, rhs=0.0, tolerance=tol),
        ConstraintEntry(name="max |S^+ S - 1|", lhs=right, rhs=0.0, tolerance=tol),
    ]
    entries += [
        ConstraintEntry(name=f"row sum {index + 1}", lhs=float(value), rhs=1.0, tolerance=tol)
        for index, value in enumerate(probabilities.sum(axis=1))
    ]
    entries += [
        ConstraintEntry(name=f"column sum {index + 1}", lhs=float(value), rhs=1.0, tolerance=tol)
        for index, value in enumerate(probabilities.sum(axis=0))
    ]
    return ConstraintReport(title="unitarity", entries=tuple(entries))


class BowTieRoot(NamedTuple):
    """Physical solution of the bow-tie constraint system."""

    a: float
    b: float
    s22: float


def bowtie_residuals(x: float, y: float, a: float, b: float, s22: float) -> FloatArray:
    """Residuals of the three nonlinear bow-tie equations (unitarity and two second-order constraints)."""
    z = math.sqrt(x * y)
    return np.array(
        [
            s22 * (a + b - x - y) + 2 * z,
            -x * b * (1 - a**2 - s22**2 + y * a) - (z - x * s22) ** 2,
            -y * a * (1 - b**2 - s22**2 + x * b) - (z - y * s22) ** 2,
        ]
    )


def _bowtie_jacobian(x: float, y: float, a: float, b: float, s22: float) -> FloatArray:
    z = math.sqrt(x * y)
    return np.array(
        [
            [s22, s22, a + b - x - y],
            [
                -x * b * (y - 2 * a),
                -x * (1 - a**2 - s22**2 + y * a),
                2 * x * b * s22 + 2 * x * (z - x * s22),
            ],
            [
                -y * (1 - b**2 - s22**2 + x * b),
                -y * a * (x - 2 * b),
                2 * y * a * s22 + 2 * y * (z - y * s22),
            ],
        ]
    )


def _inside(point: FloatArray, margin: float = 0) -> bool:
    a, b, s22 = point
    return bool(-1 + margin < a < -margin and -1 + margin < b < -margin and margin < s22 < 1 - margin)


def _damped_newton(x: float, y: float, start: FloatArray) -> FloatArray | None:
    point = start
    for _ in range(BOWTIE_MAX_ITERATIONS):
        residual = np.max(np.abs(bowtie_residuals(x, y, *point)))
        if residual < BOWTIE_RESIDUAL_TOLERANCE * 1e-3:
            return point
        try:
            step = np.linalg.solve(_bowtie_jacobian(x, y, *point), -bowtie_residuals(x, y, *point))
        except np.linalg.LinAlgError:
            return None

        damping = 1.0
        while damping > 1e-12:
            candidate = point + damping * step
            if _inside(candidate) and np.max(np.abs(bowtie_residuals(x, y, *candidate))) < residual:
                break
            damping /= 2
        else:
            # No step improves the residual: either converged to rounding precision or stuck.
            return point if residual < BOWTIE_RESIDUAL_TOLERANCE else None
        point = candidate

    return point if np.max(np.abs(bowtie_residuals(x, y, *point))) < BOWTIE_RESIDUAL_TOLERANCE else None


def solve_bowtie_constraints(x: float, y: float) -> BowTieRoot:
    """Solve the bow-tie constraint system for `A = S_23`, `B = S_32` and `S_22`.

    The search is restricted to the physical box `A, B in (-1, 0)`, `S22 in (0, 1)`. A damped Newton
    method is started from nine interior points, a bounded least-squares fit is the fallback.
    """
    validate_open_unit_interval(x)
    validate_open_unit_interval(y)

    for a, b in BOWTIE_STARTS:
        root = _damped_newton(x, y, np.array([a, b, 0.5]))
        if root is not None and _inside(root, BOWTIE_BOUNDARY_MARGIN):
            log.debug("Bow-tie constraints for X=%s, Y=%s solved from start (%s, %s).", x, y, a, b)
            return BowTieRoot(*(float(value) for value in root))

    for a, b in BOWTIE_STARTS:
        result = least_squares(
            lambda point: bowtie_residuals(x, y, *point),
            np.array([a, b, 0.5]),
            jac=lambda point: _bowtie_jacobian(x, y, *point),
            bounds=([-1, -1, 0], [0, 0, 1]),
            xtol=1e-15,
            ftol=1e-15,
            gtol=1e-15,
        )
        residual = np.max(np.abs(result.fun))
        if _inside(result.x, BOWTIE_BOUNDARY_MARGIN) and residual < BOWTIE_RESIDUAL_TOLERANCE:
            return BowTieRoot(*(float(value) for value in result.x))

    raise NoPhysicalRootError(f"No root of the bow-tie constraints found for X={x}, Y={y}.")


class PseudoBowTiePrediction(ValueModel):
    """Transition probabilities of the pseudo bow-tie predicted from `P_12` and `P_22`."""

    p32: float
    p23: float
    p24: float
    p43: float
    p14: float
    p41: float

    @computed_field  # type: ignore[prop-decorator]
    @property
    def out_of_range(self) -> tuple[str, ...]:
        """Names of all predictions outside of [0, 1] (indicating inconsistent inputs)."""
        return tuple(name for name, value in self if isinstance(value, float) and not 0 <= value <= 1)


def pseudo_bowtie_predict(x: float, y: float, p12: float, p22: float) -> PseudoBowTiePrediction:
    """Predict transition probabilities of the pseudo bow-tie from the measured `P_12` and `P_22`."""
    validate_open_unit_interval(x)
    validate_open_unit_interval(y)
    for name, value in (("P12", p12), ("P22", p22)):
        if not -PROBABILITY_SLACK <= value <= 1 + PROBABILITY_SLACK:
            raise ValueError(f"{name}={value}: Must be in the interval [0, 1].")

    p24 = (p12 + x * (x - y)) * y / x
    p14 = p22 + (p12 + x**2) * (p12 - x * y) / x**2
    prediction = PseudoBowTiePrediction(
        p32=(p12 / x) ** 2, p23=(y - x - p12 / x) ** 2, p24=p24, p43=p24, p14=p14, p41=p14
    )
    if prediction.out_of_range:
        log.warning("Predictions out of range: %s", ", ".join(prediction.out_of_range))
    return prediction


def pseudo_bowtie_report(
    matrix: ScatteringMatrix, x: float, y: float, tol: float = 1e-2
) -> ConstraintReport:
    """Compare a propagated pseudo bow-tie with the relations that survive the loss of integrability."""
    s = matrix.entries
    p = np.abs(s) ** 2
    prediction = pseudo_bowtie_predict(x, y, float(p[0, 1]), float(p[1, 1]))
    measured = {
        "p32": p[2, 1],
        "p23": p[1, 2],
        "p24": p[1, 3],
        "p43": p[3, 2],
        "p14": p[0, 3],
        "p41": p[3, 0],
    }
    entries = [
        ConstraintEntry(
            name=f"P[{name[1]},{name[2]}] predicted",
            lhs=float(value),
            rhs=getattr(prediction, name),
            tolerance=tol,
        )
        for name, value in measured.items()
    ]
    entries += [
        ConstraintEntry(
            name="S[2,3] + S[3,2] = Y - X", lhs=complex(s[1, 2] + s[2, 1]), rhs=y - x, tolerance=tol
        ),
        ConstraintEntry(
            name="XY(X-Y)(P22-1) = Y P21 P12 - X P24 P34",
            lhs=x * y * (x - y) * (p[1, 1] - 1),
            rhs=y * p[1, 0] * p[0, 1] - x * p[1, 3] * p[2, 3],
            tolerance=tol,
        ),
    ]
    return ConstraintReport(title="pseudo bow-tie relations", entries=tuple(entries))
