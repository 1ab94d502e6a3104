# Copyright (c) 2025 Mathias Ertl
# Licensed under the MIT License. See LICENSE file for details.

"""Level crossings and trajectories of the semiclassical trajectory sum."""

import math

from pydantic import Field, model_validator

from mlz_workbench.models.base import ArrayModel, ValueModel
from mlz_workbench.models.types import RealVector
from mlz_workbench.typing import LevelPair, Self


class Crossing(ValueModel):
    """Crossing of two coupled diabatic levels."""

    time: float
    pair: LevelPair
    coupling: float = Field(description="Real coupling between the two levels.")
    slope_difference: float = Field(gt=0, description="Absolute difference of the slopes.")

    @property
    def probability(self) -> float:
        """Probability to pass the crossing, `exp(-2 pi g^2 / |dβ|)`."""
        return math.exp(-2 * math.pi * self.coupling**2 / self.slope_difference)

    def other(self, level: int) -> int:
        """The level on the other side of the crossing."""
        first, second = self.pair
        if level == first:
            return second
        if level == second:
            return first
        raise ValueError(f"Level {level} does not take part in crossing {self.pair}.")


class CrossingGraph(ArrayModel):
    """Time-ordered crossings of coupled levels of a model."""

    slopes: RealVector
    energies: RealVector
    crossings: tuple[Crossing, ...] = ()

    @model_validator(mode="after")
    def validate_order(self) -> Self:
        times = [crossing.time for crossing in self.crossings]
        if times != sorted(times):
            raise ValueError("Crossings must be sorted by time.")
        return self

    @property
    def dimension(self) -> int:
        """Number of levels."""
        return len(self.slopes)

    def crossings_of(self, level: int) -> list[int]:
        """Indices of all crossings that `level` takes part in, in time order."""
        return [index for index, crossing in enumerate(self.crossings) if level in crossing.pair]


class Segment(ValueModel):
    """Part of a trajectory that follows one diabatic level."""

    level: int
    start: float
    end: float

    @model_validator(mode="after")
    def validate_interval(self) -> Self:
        if self.start >= self.end:
            raise ValueError(f"Segment must end after it starts ({self.start} >= {self.end}).")
        return self


class Trajectory(ValueModel):
    """A causal path through the level diagram with its semiclassical amplitude."""

    segments: tuple[Segment, ...]
    amplitude: complex = 0j

    @model_validator(mode="after")
    def validate_causality(self) -> Self:
        if not self.segments:
            raise ValueError("A trajectory needs at least one segment.")
        if self.segments[0].start != -math.inf or self.segments[-1].end != math.inf:
            raise ValueError("A trajectory must start at -inf and end at +inf.")
        for previous, segment in zip(self.segments, self.segments[1:]):
            if previous.end != segment.start or previous.level == segment.level:
                raise ValueError("Consecutive segments must switch levels at the same time.")
        return self

    @property
    def initial(self) -> int:
        """Level the trajectory starts on."""
        return self.segments[0].level

    @property
    def final(self) -> int:
        """Level the trajectory ends on."""
        return self.segments[-1].level
