# Copyright (c) 2025 Mathias Ertl
# Licensed under the MIT License. See LICENSE file for details.

"""Landau-Zener parameters of the exactly solvable model families."""

import math

from pydantic import Field

from mlz_workbench.errors import BandStructureMismatchError
from mlz_workbench.models.base import ValueModel
from mlz_workbench.models.mlz import MlzModel
from mlz_workbench.models.types import Probability


def lz_probability(coupling: complex, slope_difference: float) -> float:
    """Two-level Landau-Zener probability to stay on the diabatic level, `exp(-2 pi |g|^2 / |dβ|)`."""
    return math.exp(-2 * math.pi * abs(coupling) ** 2 / abs(slope_difference))


class LzParams(ValueModel):
    """Base class for parameters of a model family."""


class DemkovOsherovParams(LzParams):
    """Parameters of a Demkov-Osherov model: one `p` per band level, band levels by decreasing energy."""

    p: tuple[Probability, ...] = Field(min_length=1)

    @property
    def q(self) -> tuple[float, ...]:
        """Complementary probabilities `1 - p`."""
        return tuple(1 - value for value in self.p)

    @classmethod
    def from_model(cls, model: MlzModel) -> "DemkovOsherovParams":
        """Read the parameters from a model with one lowest-slope level crossing a band."""
        groups = model.parallel_groups()
        if len(groups) != 2 or len(groups[0]) != 1:
            raise BandStructureMismatchError(
                "Model is not a Demkov-Osherov model (one level with lowest slope crossing a band)."
            )
        slope = model.slopes[0] - model.slopes[1]
        return cls(p=tuple(lz_probability(model.couplings[0, index], slope) for index in groups[1]))


class Spin32Params(LzParams):
    """Parameters of the spin-3/2 model."""

    p1: Probability
    p2: Probability

    @classmethod
    def from_model(cls, model: MlzModel) -> "Spin32Params":
        """Read the parameters from a model labeled like the spin-3/2 model (levels "1" to "4")."""
        try:
            first, third, fourth = model.index("1"), model.index("3"), model.index("4")
        except KeyError as ex:
            raise BandStructureMismatchError("Model is not labeled like a spin-3/2 model.") from ex
        b1, b2 = model.slopes[first], model.slopes[third]
        return cls(
            p1=lz_probability(model.couplings[first, third], b1 - b2),
            p2=lz_probability(model.couplings[first, fourth], b1 + b2),
        )


class BowTieParams(LzParams):
    """Parameters of the 4-state bow-tie model (and its pseudo variant)."""

    x: Probability
    y: Probability

    @property
    def z(self) -> float:
        """`sqrt(X * Y)`."""
        return math.sqrt(self.x * self.y)

    @classmethod
    def from_model(cls, model: MlzModel) -> "BowTieParams":
        """Read the parameters from a 4-level model with a parallel pair between two slanted levels."""
        if model.dimension != 4 or [len(group) for group in model.parallel_groups()] != [1, 2, 1]:
            raise BandStructureMismatchError("Model does not have the level structure of a 4-state bow-tie.")
        return cls(
            x=lz_probability(model.couplings[0, 1], model.slopes[0] - model.slopes[1]),
            y=lz_probability(model.couplings[1, 3], model.slopes[3] - model.slopes[1]),
        )


class ParallelPairBowTieParams(LzParams):
    """Parameters of the 4-state bow-tie with a parallel pair of maximal slope.

    `p2` belongs to the level with the lowest slope, `p1` to the level with the second-lowest slope.
    """

    p1: Probability
    p2: Probability

    @classmethod
    def from_model(cls, model: MlzModel) -> "ParallelPairBowTieParams":
        """Read the parameters from a model with two slanted levels below a parallel pair."""
        if model.dimension != 4 or [len(group) for group in model.parallel_groups()] != [1, 1, 2]:
            raise BandStructureMismatchError(
                "Model does not have two slanted levels crossing a parallel pair of maximal slope."
            )
        return cls(
            p1=lz_probability(model.couplings[1, 2], model.slopes[2] - model.slopes[1]),
            p2=lz_probability(model.couplings[0, 2], model.slopes[2] - model.slopes[0]),
        )
