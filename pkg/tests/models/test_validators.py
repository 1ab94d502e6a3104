# Copyright (c) 2025 Mathias Ertl
# Licensed under the MIT License. See LICENSE file for details.

"""Dedicated tests for validator functions."""

import numpy as np
import pytest

from mlz_workbench.errors import (
    DegenerateDiabaticEnergiesError,
    DimensionMismatchError,
    NonHermitianCouplingError,
    ParallelLevelCoupledError,
)
from mlz_workbench.models.validators import (
    validate_complex_matrix,
    validate_increasing,
    validate_open_unit_interval,
    validate_real_vector,
    validate_structure,
    validate_unit_interval,
)


def test_validate_real_vector() -> None:
    """Test that vectors are converted to read-only arrays."""
    value = validate_real_vector([1, 2])
    assert value.dtype == np.float64
    assert not value.flags.writeable


@pytest.mark.parametrize(
    ("value", "message"), (([[1, 2]], r"one-dimensional"), ([1, np.inf], r"must be finite"))
)
def test_validate_real_vector_with_invalid_value(value: list[float], message: str) -> None:
    """Test errors for invalid vectors."""
    with pytest.raises(ValueError, match=message):
        validate_real_vector(value)


def test_validate_complex_matrix_with_invalid_shape() -> None:
    """Test error when a matrix is not square."""
    with pytest.raises(ValueError, match=r"square matrix"):
        validate_complex_matrix([[1, 2]])


@pytest.mark.parametrize("value", (0, -0.5, 1.5))
def test_validate_unit_interval(value: float) -> None:
    """Test error for values outside of (0, 1]."""
    assert validate_unit_interval(1) == 1
    with pytest.raises(ValueError, match=rf"^{value}: Must be in the interval \(0, 1\]\.$"):
        validate_unit_interval(value)


def test_validate_open_unit_interval() -> None:
    """Test that one is excluded from the open interval."""
    assert validate_open_unit_interval(0.5) == 0.5
    with pytest.raises(ValueError, match=r"open interval"):
        validate_open_unit_interval(1)


@pytest.mark.parametrize(("value", "message"), (((1,), r"at least two"), ((1, 1), r"strictly increasing")))
def test_validate_increasing(value: tuple[float, ...], message: str) -> None:
    """Test errors for invalid schedules."""
    with pytest.raises(ValueError, match=message):
        validate_increasing(value)


def test_validate_structure_with_custom_indices() -> None:
    """Test that error messages use the given level numbers."""
    couplings = np.array([[0, 0.1, 0], [0.1, 0, 0], [0, 0, 0]], dtype=np.complex128)
    with pytest.raises(ParallelLevelCoupledError, match=r"^Levels 5 and 7 are parallel") as ex:
        validate_structure(np.array([0.0, 0, 1]), np.array([1.0, -1, 0]), couplings, indices=(5, 7, 9))
    assert ex.value.pair == (5, 7)


def test_validate_structure_errors() -> None:
    """Test the errors of structural validation."""
    with pytest.raises(DimensionMismatchError):
        validate_structure(np.zeros(2), np.zeros(3), np.zeros((2, 2), dtype=np.complex128))
    with pytest.raises(NonHermitianCouplingError):
        validate_structure(np.array([0.0, 1]), np.zeros(2), np.array([[0, 1j], [1j, 0]]))
    with pytest.raises(DegenerateDiabaticEnergiesError):
        validate_structure(np.zeros(2), np.zeros(2), np.zeros((2, 2), dtype=np.complex128))
