# Copyright (c) 2025 Mathias Ertl
# Licensed under the MIT License. See LICENSE file for details.

"""Validators for various models."""

from collections.abc import Sequence
from typing import Any

import numpy as np

from mlz_workbench.errors import (
    DegenerateDiabaticEnergiesError,
    DimensionMismatchError,
    NonHermitianCouplingError,
    ParallelLevelCoupledError,
)
from mlz_workbench.typing import ComplexArray, FloatArray

#: Absolute tolerance for exact structural requirements (hermiticity, parallel levels, equal slopes).
STRUCTURE_TOLERANCE = 1e-12


def _freeze(value: Any, dtype: type) -> Any:
    array = np.array(value, dtype=dtype)
    array.setflags(write=False)
    return array


def validate_real_vector(value: Any) -> FloatArray:
    """Convert a sequence to a read-only, one-dimensional float array."""
    array = _freeze(value, np.float64)
    if array.ndim != 1:
        raise ValueError(f"Expected a one-dimensional sequence, got an array of shape {array.shape}.")
    if not np.all(np.isfinite(array)):
        raise ValueError("All values must be finite.")
    return array  # type: ignore[no-any-return]


def validate_real_matrix(value: Any) -> FloatArray:
    """Convert a nested sequence to a read-only, square float matrix."""
    array = _freeze(value, np.float64)
    if array.ndim != 2 or array.shape[0] != array.shape[1]:
        raise ValueError(f"Expected a square matrix, got an array of shape {array.shape}.")
    return array  # type: ignore[no-any-return]


def validate_complex_matrix(value: Any) -> ComplexArray:
    """Convert a nested sequence to a read-only, square complex matrix."""
    array = _freeze(value, np.complex128)
    if array.ndim != 2 or array.shape[0] != array.shape[1]:
        raise ValueError(f"Expected a square matrix, got an array of shape {array.shape}.")
    return array  # type: ignore[no-any-return]


def validate_unit_interval(value: float) -> float:
    """Validate that a probability-like parameter is in (0, 1]."""
    if not 0 < value <= 1:
        raise ValueError(f"{value}: Must be in the interval (0, 1].")
    return value


def validate_open_unit_interval(value: float) -> float:
    """Validate that a probability-like parameter is in (0, 1)."""
    if not 0 < value < 1:
        raise ValueError(f"{value}: Must be in the open interval (0, 1).")
    return value


def validate_increasing(value: tuple[float, ...]) -> tuple[float, ...]:
    """Validate that a schedule has at least two strictly increasing entries."""
    if len(value) < 2:
        raise ValueError("A schedule needs at least two entries.")
    if any(later <= earlier for earlier, later in zip(value, value[1:])):
        raise ValueError(f"{value}: Entries must be strictly increasing.")
    return value


def validate_structure(
    slopes: FloatArray, energies: FloatArray, couplings: ComplexArray, indices: Sequence[int] | None = None
) -> None:
    """Validate the structural requirements of a multistate Landau-Zener model.

    `indices` maps positions to the level numbers used in error messages (defaults to 1-based positions).
    """
    size = len(slopes)
    if len(energies) != size or couplings.shape != (size, size):
        raise DimensionMismatchError(
            f"Got {size} slopes, {len(energies)} energies and a coupling matrix of shape {couplings.shape}."
        )
    if indices is None:
        indices = range(1, size + 1)

    if np.max(np.abs(couplings - couplings.conj().T), initial=0.0) > STRUCTURE_TOLERANCE:
        raise NonHermitianCouplingError("Coupling matrix is not Hermitian.")

    for first in range(size):
        for second in range(first + 1, size):
            if abs(slopes[first] - slopes[second]) > STRUCTURE_TOLERANCE:
                continue
            pair = (indices[first], indices[second])
            if abs(energies[first] - energies[second]) <= STRUCTURE_TOLERANCE:
                raise DegenerateDiabaticEnergiesError(
                    f"Levels {pair[0]} and {pair[1]} have identical slopes and diabatic energies.", pair=pair
                )
            if abs(couplings[first, second]) > STRUCTURE_TOLERANCE:
                raise ParallelLevelCoupledError(
                    f"Levels {pair[0]} and {pair[1]} are parallel but coupled.", pair=pair
                )
