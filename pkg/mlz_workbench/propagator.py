# Copyright (c) 2025 Mathias Ertl
# Licensed under the MIT License. See LICENSE file for details.

"""Compute scattering matrices by numerical propagation of the Schrödinger equation.

Scattering matrices follow the adiabatic phase convention: the dynamical phases
`φ_k(t) = -β_k t²/2 - ε_k t - (η_k/2) ln(t² + 1)` of the diabatic states are removed at both ends of the
propagation window.
"""

import logging
import math
from collections.abc import Sequence

import numpy as np
from scipy.integrate import solve_ivp
from scipy.linalg import expm

from mlz_workbench.errors import NotConvergedError, PropagationError, StepTooLargeError
from mlz_workbench.models.matrices import ScatteringMatrix, TransitionMatrix
from mlz_workbench.models.mlz import MlzModel
from mlz_workbench.models.propagation import PropagationConfig
from mlz_workbench.models.validators import validate_increasing
from mlz_workbench.typing import ComplexArray, FloatArray

log = logging.getLogger(__name__)

#: Number of time steps of the fixed-step scheme that are multiplied at once.
CHUNK_SIZE = 4096


def etas(model: MlzModel) -> FloatArray:
    """`η_k = sum_l |g_kl|² / (β_k - β_l)` for all levels, skipping parallel levels."""
    differences = np.subtract.outer(model.slopes, model.slopes)
    weights = np.abs(model.couplings) ** 2
    mask = differences != 0
    terms = np.zeros_like(differences)
    terms[mask] = weights[mask] / differences[mask]
    return terms.sum(axis=1)  # type: ignore[no-any-return]


def eta(model: MlzModel, k: int) -> float:
    """`η_k` of level `k`."""
    return float(etas(model)[k])


def adiabatic_phase(model: MlzModel, k: int, t: float) -> float:
    """Adiabatic phase `φ_k(t) = -β_k t²/2 - ε_k t - (η_k/2) ln(t² + 1)`."""
    return float(
        -model.slopes[k] * t**2 / 2 - model.energies[k] * t - eta(model, k) / 2 * math.log(t**2 + 1)
    )


def default_t_end(model: MlzModel) -> float:
    """Default propagation window: `10 * max(|ε_k| + 1) / (smallest nonzero slope difference)`."""
    scale = float(np.max(np.abs(model.energies)) + 1)
    distinct = np.unique(model.slopes)
    if len(distinct) < 2:
        return 10 * scale
    return 10 * scale / float(np.min(np.diff(distinct)))


def _dynamical_phases(model: MlzModel, t: float) -> FloatArray:
    return model.slopes * t**2 / 2 + model.energies * t  # type: ignore[no-any-return]


def _tail(model: MlzModel, t: float) -> ComplexArray:
    """Leading contribution of the couplings between `t` and infinity (anti-Hermitian)."""
    phases = _dynamical_phases(model, t)
    rates = model.slopes * t + model.energies
    differences = np.subtract.outer(rates, rates)
    mask = (model.couplings != 0) & (differences != 0)
    tail = np.zeros_like(model.couplings)
    tail[mask] = (
        model.couplings[mask] * np.exp(1j * np.subtract.outer(phases, phases)[mask]) / differences[mask]
    )
    return tail


def _second_order_tail(model: MlzModel, t: float) -> ComplexArray:
    """Contribution of the effective couplings `[F, V] / 2` between `t` and infinity (anti-Hermitian).

    Levels that are not coupled directly still interact through their common neighbours. For parallel
    levels, this effective coupling decays only like `1/t`.
    """
    phases = _dynamical_phases(model, t)
    rates = model.slopes * t + model.energies
    differences = np.subtract.outer(rates, rates)
    nonzero = differences != 0
    inverse = np.divide(1, differences, out=np.zeros_like(differences), where=nonzero)

    couplings = model.couplings
    effective = ((couplings * inverse) @ couplings + couplings @ (couplings * inverse.T)) / 2
    effective = effective * np.exp(1j * np.subtract.outer(phases, phases))
    # The diagonal is the logarithmic phase already covered by `η_k`.
    np.fill_diagonal(effective, 0)
    return np.divide(  # type: ignore[no-any-return]
        effective, differences, out=np.zeros_like(effective), where=nonzero
    )


def _phase_tail(model: MlzModel, t: float) -> FloatArray:
    """Phases of the diabatic states between `t` and infinity beyond the logarithmic `η_k` phase."""
    slopes = np.subtract.outer(model.slopes, model.slopes)
    mask = slopes != 0
    weights = np.zeros_like(slopes)
    weights[mask] = np.abs(model.couplings[mask]) ** 2 / slopes[mask]
    # Level `k` crosses level `l` at `t = -offsets[k, l]`.
    offsets = np.zeros_like(slopes)
    offsets[mask] = np.subtract.outer(model.energies, model.energies)[mask] / slopes[mask]
    logs = np.log(np.abs(t + offsets) / math.sqrt(t**2 + 1))
    return np.sum(weights * logs, axis=1)  # type: ignore[no-any-return]


def _check_window(model: MlzModel, t_end: float) -> None:
    rows, columns = np.nonzero(np.triu(model.couplings != 0))
    for row, column in zip(rows, columns):
        time = (model.energies[column] - model.energies[row]) / (model.slopes[row] - model.slopes[column])
        if abs(time) >= t_end:
            log.warning(
                "Crossing of levels %s and %s at t=%.3g is outside of the propagation window.",
                model.labels[row],
                model.labels[column],
                time,
            )


def _interaction_picture_evolution(model: MlzModel, t_end: float, config: PropagationConfig) -> ComplexArray:
    """Evolution `C` in the interaction picture of the diabatic energies."""
    size = model.dimension

    def rhs(t: float, y: ComplexArray) -> ComplexArray:
        phase = np.exp(1j * _dynamical_phases(model, t))
        coupling = phase[:, None] * model.couplings * phase.conj()[None, :]
        return (-1j * coupling @ y.reshape(size, size)).ravel()  # type: ignore[no-any-return]

    initial = np.eye(size, dtype=np.complex128).ravel()
    result = solve_ivp(
        rhs,
        (-t_end, t_end),
        initial,
        method=config.method,
        rtol=config.error_tolerance,
        atol=config.error_tolerance,
    )
    if not result.success:
        raise PropagationError(f"Integration failed: {result.message}")
    log.debug("Adaptive integration used %d function evaluations.", result.nfev)
    return result.y[:, -1].reshape(size, size)  # type: ignore[no-any-return]


def _ordered_product(factors: ComplexArray) -> ComplexArray:
    """Product `factors[-1] @ ... @ factors[0]` by pairwise reduction."""
    while len(factors) > 1:
        if len(factors) % 2:
            identity = np.eye(factors.shape[1], dtype=factors.dtype)[None]
            factors = np.concatenate([factors, identity])
        factors = factors[1::2] @ factors[0::2]
    return factors[0]


def _raw_evolution(model: MlzModel, t_end: float, step_size: float) -> ComplexArray:
    """Evolution operator `U(t_end, -t_end)` by the exponential midpoint rule with a fixed step."""
    steps = max(1, math.ceil(2 * t_end / step_size))
    dt = 2 * t_end / steps
    norm = max(np.linalg.norm(model.hamiltonian(t), 2) for t in (-t_end, t_end))
    if dt * norm > math.pi:
        raise StepTooLargeError(
            f"Step size {dt:.3g} is too large for |H| = {norm:.3g} at the edge of the window."
        )

    size = model.dimension
    diagonal = np.arange(size)
    evolution = np.eye(size, dtype=np.complex128)
    for start in range(0, steps, CHUNK_SIZE):
        times = -t_end + (np.arange(start, min(start + CHUNK_SIZE, steps)) + 0.5) * dt
        hamiltonians = np.broadcast_to(model.couplings, (len(times), size, size)).copy()
        hamiltonians[:, diagonal, diagonal] += np.outer(times, model.slopes) + model.energies
        values, vectors = np.linalg.eigh(hamiltonians)
        factors = (vectors * np.exp(-1j * values * dt)[:, None, :]) @ vectors.conj().transpose(0, 2, 1)
        evolution = _ordered_product(factors) @ evolution
    log.debug("Fixed-step integration used %d steps of size %.3g.", steps, dt)

    # Remove the dynamical phases of the diabatic states at both ends.
    return (  # type: ignore[no-any-return]
        np.exp(1j * _dynamical_phases(model, t_end))[:, None]
        * evolution
        * np.exp(-1j * _dynamical_phases(model, -t_end))[None, :]
    )


def _propagate_window(model: MlzModel, t_end: float, config: PropagationConfig) -> ScatteringMatrix:
    if config.scheme == "raw-fixed-step":
        evolution = _raw_evolution(model, t_end, config.step_size)
    else:
        evolution = _interaction_picture_evolution(model, t_end, config)

    outgoing = etas(model) / 2 * math.log(t_end**2 + 1)
    incoming = outgoing.copy()
    if config.tail_correction:
        evolution = (
            expm(_second_order_tail(model, t_end))
            @ expm(_tail(model, t_end))
            @ evolution
            @ expm(-_tail(model, -t_end))
            @ expm(-_second_order_tail(model, -t_end))
        )
        outgoing += _phase_tail(model, t_end)
        incoming += _phase_tail(model, -t_end)

    matrix = ScatteringMatrix(
        entries=np.exp(1j * outgoing)[:, None] * evolution * np.exp(-1j * incoming)[None, :]
    )

    defect = matrix.unitarity_defect
    log.debug(
        "Propagated %d levels over [-%.6g, %.6g], unitarity defect: %.3g",
        model.dimension,
        t_end,
        t_end,
        defect,
    )
    if defect > config.unitarity_tolerance:
        raise NotConvergedError(
            f"Unitarity defect {defect:.3g} exceeds the tolerance of {config.unitarity_tolerance:.3g}.",
            estimate=defect,
        )
    return matrix


def propagate(model: MlzModel, config: PropagationConfig | None = None) -> ScatteringMatrix:
    """Compute the scattering matrix of `model` in the adiabatic phase convention.

    If the configuration does not set a window, the window derived from the model is doubled until the
    transition probabilities change by less than ``config.stability_tolerance``.

    Raises :py:class:`~mlz_workbench.errors.NotConvergedError` if the unitarity defect of the result
    exceeds the configured tolerance or if the derived window does not become stable.
    """
    if config is None:
        config = PropagationConfig()
    t_end = config.t_end if config.t_end is not None else default_t_end(model)
    _check_window(model, t_end)

    if not np.any(model.couplings):
        return ScatteringMatrix(entries=np.eye(model.dimension, dtype=np.complex128))

    matrix = _propagate_window(model, t_end, config)
    if config.t_end is not None:
        return matrix

    change = math.inf
    for _ in range(config.max_doublings):
        t_end *= 2
        doubled = _propagate_window(model, t_end, config)
        change = float(np.max(np.abs(np.abs(doubled.entries) ** 2 - np.abs(matrix.entries) ** 2)))
        log.debug("Doubled window to t_end=%.6g, transition probabilities changed by %.3g.", t_end, change)
        matrix = doubled
        if change < config.stability_tolerance:
            return matrix

    raise NotConvergedError(
        f"Transition probabilities changed by {change:.3g} when doubling the window to t_end={t_end:.6g} "
        f"(tolerance: {config.stability_tolerance:.3g}).",
        estimate=change,
    )


def converge(
    model: MlzModel, schedule: Sequence[float], tol: float, config: PropagationConfig | None = None
) -> tuple[ScatteringMatrix, float]:
    """Propagate for every window of an increasing schedule.

    Returns the last scattering matrix and the largest elementwise change between the last two windows.
    """
    schedule = validate_increasing(tuple(schedule))
    if config is None:
        config = PropagationConfig()

    matrices = [propagate(model, config.model_copy(update={"t_end": t_end})) for t_end in schedule]
    estimate = float(np.max(np.abs(matrices[-1].entries - matrices[-2].entries)))
    log.info("Convergence estimate for t_end=%.6g: %.3g", schedule[-1], estimate)
    if estimate > tol:
        raise NotConvergedError(
            f"Scattering matrix changed by {estimate:.3g} between the last two windows "
            f"(tolerance: {tol:.3g}).",
            estimate=estimate,
        )
    return matrices[-1], estimate


def transition_matrix(matrix: ScatteringMatrix) -> TransitionMatrix:
    """Transition probabilities `|S|²`."""
    return TransitionMatrix(probabilities=np.abs(matrix.entries) ** 2)


def eigenvalue_scan(model: MlzModel, t_grid: Sequence[float]) -> tuple[tuple[float, FloatArray], ...]:
    """Eigenvalues of `H(t)` in ascending order for every time of the grid."""
    times = np.asarray(t_grid, dtype=np.float64)
    size = model.dimension
    diagonal = np.arange(size)
    hamiltonians = np.broadcast_to(model.couplings, (len(times), size, size)).copy()
    hamiltonians[:, diagonal, diagonal] += np.outer(times, model.slopes) + model.energies
    values = np.linalg.eigvalsh(hamiltonians)
    return tuple((float(t), row) for t, row in zip(times, values))


def minimum_gap(scan: Sequence[tuple[float, FloatArray]], lower: int) -> tuple[float, float]:
    """Time and size of the smallest gap between eigenvalues `lower` and `lower + 1` of a scan."""
    time, values = min(scan, key=lambda point: point[1][lower + 1] - point[1][lower])
    return time, float(values[lower + 1] - values[lower])
