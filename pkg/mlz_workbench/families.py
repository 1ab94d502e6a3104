# Copyright (c) 2025 Mathias Ertl
# Licensed under the MIT License. See LICENSE file for details.

"""Builders for the model families with known solutions.

All builders return canonical models. Levels are labeled with the numbers used by the closed-form
solutions in :py:mod:`mlz_workbench.analytic`.
"""

from collections.abc import Sequence

import numpy as np

from mlz_workbench.model import canonicalize
from mlz_workbench.models.mlz import MlzModel


def _build(
    slopes: Sequence[float],
    energies: Sequence[float],
    couplings: dict[tuple[int, int], complex],
    first: int = 1,
) -> MlzModel:
    matrix = np.zeros((len(slopes), len(slopes)), dtype=np.complex128)
    for (row, column), value in couplings.items():
        matrix[row, column] = value
        matrix[column, row] = np.conj(value)
    labels = [str(index) for index in range(first, first + len(slopes))]
    model, _report = canonicalize(slopes, energies, matrix, labels)
    return model


def two_level(beta1: float, beta2: float, g: complex, e1: float = 0, e2: float = 0) -> MlzModel:
    """Two coupled levels."""
    return _build([beta1, beta2], [e1, e2], {(0, 1): g})


def chain_model(slopes: Sequence[float], couplings: Sequence[float]) -> MlzModel:
    """Levels crossing in one point with real couplings between neighbors only."""
    if len(couplings) != len(slopes) - 1:
        raise ValueError(f"A chain of {len(slopes)} levels needs {len(slopes) - 1} couplings.")
    return _build(
        slopes, [0.0] * len(slopes), {(index, index + 1): value for index, value in enumerate(couplings)}
    )


def demkov_osherov_model(
    b: float, band_energies: Sequence[float], couplings: Sequence[complex], e0: float = 0
) -> MlzModel:
    """Level "0" with slope `-b` crossing a band of levels "1" to "N" with zero slope."""
    if b <= 0:
        raise ValueError(f"b={b}: Must be positive.")
    if len(couplings) != len(band_energies):
        raise ValueError("Need exactly one coupling per band level.")
    return _build(
        [-b] + [0.0] * len(band_energies),
        [e0, *band_energies],
        {(0, index): value for index, value in enumerate(couplings, start=1)},
        first=0,
    )


def bowtie4_model(
    beta1: float, beta4: float, eps: float, gamma: float, g: float, pseudo: bool = False
) -> MlzModel:
    """4-state bow-tie: two slanted levels crossing a parallel pair at `±eps` in its middle.

    With `pseudo=True`, the coupling between levels 1 and 2 changes its sign, which makes the model
    non-integrable.
    """
    first = -gamma if pseudo else gamma
    return _build(
        [beta1, 0.0, 0.0, beta4],
        [0.0, eps, -eps, 0.0],
        {(0, 1): first, (0, 2): gamma, (1, 3): g, (2, 3): g},
    )


def spin32_model(b1: float, b2: float, e: float, g: float, gamma: float) -> MlzModel:
    """Model of a spin 3/2 in a linearly changing field."""
    return _build(
        [b1, -b1, b2, -b2],
        [e, e, -e, -e],
        {(0, 2): g, (0, 3): gamma, (1, 2): -gamma, (1, 3): g},
    )


def bowtie_c_model(beta1: float, beta2: float, beta3: float, e: float, g: float, gamma: float) -> MlzModel:
    """Two slanted levels with slopes `beta1 < beta2` crossing a parallel pair with slope `beta3` at `±e`."""
    if not beta1 < beta2 < beta3:
        raise ValueError("Slopes must satisfy beta1 < beta2 < beta3.")
    return _build(
        [beta1, beta2, beta3, beta3],
        [0.0, 0.0, e, -e],
        {(0, 2): g, (0, 3): g, (1, 2): gamma, (1, 3): gamma},
    )


def figure1_model(
    b1: float,
    b3: float,
    beta4: float,
    e1: float,
    e2: float,
    g14: complex,
    g23: complex,
    g24: complex,
    g34: complex,
) -> MlzModel:
    """Two parallel levels of lowest slope `-b1` crossed by two slanted levels."""
    return _build(
        [-b1, -b1, b3, beta4],
        [e1, e2, 0.0, 0.0],
        {(0, 3): g14, (1, 2): g23, (1, 3): g24, (2, 3): g34},
    )
