# Copyright (c) 2025 Mathias Ertl
# Licensed under the MIT License. See LICENSE file for details.

"""Create, validate, order and transform multistate Landau-Zener models."""

import logging
import math
from collections.abc import Sequence
from pathlib import Path
from typing import Any

import numpy as np
import numpy.typing as npt

from mlz_workbench.errors import ZeroScaleError
from mlz_workbench.models.mlz import CanonicalizationReport, MlzModel
from mlz_workbench.models.modelfile import ModelFile
from mlz_workbench.models.validators import STRUCTURE_TOLERANCE, validate_structure
from mlz_workbench.propagator import etas
from mlz_workbench.typing import FloatArray

log = logging.getLogger(__name__)


def canonicalize(
    slopes: npt.ArrayLike,
    energies: npt.ArrayLike,
    couplings: npt.ArrayLike,
    labels: Sequence[str] | None = None,
) -> tuple[MlzModel, CanonicalizationReport]:
    """Validate a model given in any level order and sort it into canonical order.

    Levels are sorted by increasing slope, levels with equal slope by decreasing diabatic energy. Slopes
    that differ by less than the structural tolerance are considered equal. Real diagonal entries of the
    coupling matrix are moved to the diabatic energies. Coupling phases are preserved.
    """
    slopes = np.array(slopes, dtype=np.float64)
    energies = np.array(energies, dtype=np.float64)
    couplings = np.array(couplings, dtype=np.complex128)
    size = len(slopes)
    if labels is None:
        labels = [str(index) for index in range(1, size + 1)]

    validate_structure(slopes, energies, couplings)
    if len(labels) != size:
        raise ValueError(f"Got {len(labels)} labels for {size} levels.")

    diagonal = np.diag(couplings).real
    if np.any(diagonal != 0):
        log.debug("Moving diagonal couplings to diabatic energies: %s", diagonal)
        energies = energies + diagonal
        validate_structure(slopes, energies, couplings - np.diag(diagonal))

    # Snap slopes that are equal within the tolerance to exactly the same value.
    by_slope = np.argsort(slopes, kind="stable")
    for previous, current in zip(by_slope, by_slope[1:]):
        if slopes[current] - slopes[previous] <= STRUCTURE_TOLERANCE:
            slopes[current] = slopes[previous]

    permutation = sorted(range(size), key=lambda index: (slopes[index], -energies[index]))
    ordered = np.ix_(permutation, permutation)
    couplings = ((couplings + couplings.conj().T) / 2)[ordered]
    np.fill_diagonal(couplings, 0)
    ordered_slopes = slopes[permutation]
    couplings[np.equal.outer(ordered_slopes, ordered_slopes)] = 0

    model = MlzModel(
        slopes=ordered_slopes,
        energies=energies[permutation],
        couplings=couplings,
        labels=tuple(labels[index] for index in permutation),
    )
    report = CanonicalizationReport(permutation=tuple(permutation))
    if not report.is_identity:
        log.debug("Canonical order of levels: %s", model.labels)
    return model, report


def load_model(path: Path) -> tuple[MlzModel, CanonicalizationReport]:
    """Load a model file and canonicalize the model it describes."""
    model_file = ModelFile.from_file(path)
    return canonicalize(*model_file.to_arrays())


def time_reverse(model: MlzModel) -> MlzModel:
    """Model describing the time-reversed evolution (`t -> -t`) of `model`.

    Diabatic energies and couplings change their sign, the result is re-canonicalized. The scattering
    matrix of the result is the conjugate transpose of the scattering matrix of `model`.
    """
    reversed_model, report = canonicalize(model.slopes, -model.energies, -model.couplings, model.labels)
    if not report.is_identity:
        log.debug("Time reversal reordered levels: %s", report.permutation)
    return reversed_model


def reparametrize_time(model: MlzModel, scale: float, shift: float) -> tuple[MlzModel, FloatArray]:
    """Substitute `t -> scale * t + shift` and return the transformed model and phases `ζ`.

    The scattering matrices are related by `S'[n, m] = S[n, m] * exp(-i (ζ[n] - ζ[m]))` for positive
    `scale`. A negative `scale` also reverses time, the levels of the result are then re-canonicalized. The
    phases are returned in the order of the returned model.
    """
    if scale == 0:
        raise ZeroScaleError("Scale factor of a time reparametrization must not be zero.")

    zeta = model.slopes * shift**2 / 2 + model.energies * shift + etas(model) * math.log(abs(scale))
    transformed, report = canonicalize(
        scale**2 * model.slopes,
        scale * (model.energies + model.slopes * shift),
        scale * model.couplings,
        model.labels,
    )
    return transformed, zeta[list(report.permutation)]


def align(matrix: Any, source_labels: Sequence[str], target_labels: Sequence[str]) -> Any:
    """Reorder rows and columns of a matrix from one level order to another, identified by labels."""
    if sorted(source_labels) != sorted(target_labels):
        raise ValueError(f"Labels do not match: {tuple(source_labels)} vs. {tuple(target_labels)}.")
    indices = [list(source_labels).index(label) for label in target_labels]
    return np.asarray(matrix)[np.ix_(indices, indices)]
