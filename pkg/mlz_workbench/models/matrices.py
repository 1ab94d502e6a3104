# Copyright (c) 2025 Mathias Ertl
# Licensed under the MIT License. See LICENSE file for details.

"""Scattering and transition probability matrices."""

import numpy as np
from pydantic import Field, model_validator

from mlz_workbench.models.base import ArrayModel
from mlz_workbench.models.types import ComplexMatrix, RealMatrix
from mlz_workbench.typing import Self

#: Slack allowed for probabilities slightly outside of [0, 1] due to rounding.
PROBABILITY_SLACK = 1e-9


class ScatteringMatrix(ArrayModel):
    """Scattering matrix `S`, rows are final and columns are initial diabatic states."""

    entries: ComplexMatrix

    @property
    def dimension(self) -> int:
        """Number of levels."""
        return len(self.entries)

    @property
    def unitarity_defect(self) -> float:
        """Maximum elementwise deviation of `S S^+` and `S^+ S` from the identity."""
        identity = np.eye(self.dimension)
        adjoint = self.entries.conj().T
        return float(
            max(
                np.max(np.abs(self.entries @ adjoint - identity)),
                np.max(np.abs(adjoint @ self.entries - identity)),
            )
        )

    def adjoint(self) -> "ScatteringMatrix":
        """Conjugate transpose."""
        return ScatteringMatrix(entries=self.entries.conj().T)


class TransitionMatrix(ArrayModel):
    """Transition probabilities `P[n, m] = |S[n, m]|**2` (probability of `m -> n`)."""

    probabilities: RealMatrix

    @model_validator(mode="after")
    def validate_probabilities(self) -> Self:
        if np.any(self.probabilities < -PROBABILITY_SLACK) or np.any(
            self.probabilities > 1 + PROBABILITY_SLACK
        ):
            raise ValueError("Probabilities must be in the interval [0, 1].")
        return self

    @property
    def dimension(self) -> int:
        """Number of levels."""
        return len(self.probabilities)

    @property
    def stochastic_defect(self) -> float:
        """Maximum deviation of a row or column sum from one."""
        return float(
            max(
                np.max(np.abs(self.probabilities.sum(axis=0) - 1)),
                np.max(np.abs(self.probabilities.sum(axis=1) - 1)),
            )
        )
