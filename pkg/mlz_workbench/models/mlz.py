# Copyright (c) 2025 Mathias Ertl
# Licensed under the MIT License. See LICENSE file for details.

"""Models describing a multistate Landau-Zener Hamiltonian."""

import hashlib
from typing import Any

import numpy as np
from pydantic import Field, model_validator

from mlz_workbench.models.base import ArrayModel, ValueModel
from mlz_workbench.models.types import ComplexMatrix, RealVector
from mlz_workbench.models.validators import validate_structure
from mlz_workbench.typing import ComplexArray, Self


class MlzModel(ArrayModel):
    """A multistate Landau-Zener model `H(t) = diag(slopes * t + energies) + couplings` in canonical order.

    Levels are ordered by increasing slope, parallel levels by decreasing diabatic energy. Use
    :py:func:`~mlz_workbench.model.canonicalize` to create a model from arbitrarily ordered input.
    """

    slopes: RealVector = Field(description="Slopes of the diabatic levels.")
    energies: RealVector = Field(description="Diabatic energies (values of the diabatic levels at t=0).")
    couplings: ComplexMatrix = Field(description="Hermitian coupling matrix with zero diagonal.")
    labels: tuple[str, ...] = Field(
        default=(), description="Level labels in canonical order (the user's level numbers by default)."
    )

    @model_validator(mode="before")
    @classmethod
    def default_labels(cls, data: Any) -> Any:
        if isinstance(data, dict) and not data.get("labels") and "slopes" in data:
            data = {**data, "labels": tuple(str(index) for index in range(1, len(data["slopes"]) + 1))}
        return data

    @model_validator(mode="after")
    def validate_model(self) -> Self:
        validate_structure(self.slopes, self.energies, self.couplings)
        if len(self.labels) != self.dimension:
            raise ValueError(f"Got {len(self.labels)} labels for {self.dimension} levels.")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError(f"{self.labels}: Labels must be unique.")
        if np.any(np.diag(self.couplings) != 0):
            raise ValueError("Diagonal of the coupling matrix must be zero.")
        for index in range(1, self.dimension):
            previous = (self.slopes[index - 1], -self.energies[index - 1])
            if (self.slopes[index], -self.energies[index]) < previous:
                raise ValueError("Levels are not in canonical order.")
        return self

    @property
    def dimension(self) -> int:
        """Number of levels."""
        return len(self.slopes)

    def hamiltonian(self, t: float) -> ComplexArray:
        """Hamiltonian at time `t`."""
        return np.diag(self.slopes * t + self.energies) + self.couplings

    def index(self, label: str) -> int:
        """Canonical index of the level with the given label."""
        try:
            return self.labels.index(label)
        except ValueError as ex:
            raise KeyError(f"{label}: Unknown level label.") from ex

    def parallel_groups(self) -> list[list[int]]:
        """Indices of levels grouped by equal slopes, in canonical order."""
        groups: list[list[int]] = []
        for index, slope in enumerate(self.slopes):
            if groups and self.slopes[groups[-1][0]] == slope:
                groups[-1].append(index)
            else:
                groups.append([index])
        return groups

    def digest(self) -> str:
        """Short digest identifying the numerical content of this model."""
        value = hashlib.sha256()
        for array in (self.slopes, self.energies, self.couplings):
            value.update(np.ascontiguousarray(array).tobytes())
        value.update("\0".join(self.labels).encode())
        return value.hexdigest()[:16]


class CanonicalizationReport(ValueModel):
    """Records how the user's level order maps to the canonical order."""

    permutation: tuple[int, ...] = Field(
        description="For every canonical index, the (0-based) index of the level in the user's input."
    )

    @model_validator(mode="after")
    def validate_permutation(self) -> Self:
        if sorted(self.permutation) != list(range(len(self.permutation))):
            raise ValueError(f"{self.permutation}: Not a permutation.")
        return self

    @property
    def is_identity(self) -> bool:
        """True if the input was already in canonical order."""
        return self.permutation == tuple(range(len(self.permutation)))

    def to_user_order(self, matrix: Any) -> Any:
        """Reorder a matrix given in canonical order to the user's order."""
        inverse = np.argsort(self.permutation)
        return np.asarray(matrix)[np.ix_(inverse, inverse)]
