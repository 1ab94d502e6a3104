# Copyright (c) 2025 Mathias Ertl
# Licensed under the MIT License. See LICENSE file for details.

"""Basis of a fermionic multiparticle sector."""

from itertools import combinations
from typing import Any

import numpy as np
from pydantic import Field, PositiveInt, model_validator

from mlz_workbench.models.base import ValueModel
from mlz_workbench.typing import Self


class FermionBasis(ValueModel):
    """All `particles`-element subsets of `levels` single-particle levels.

    `subsets` are in ascending lexicographic order, `order` maps every canonical index of the sector
    model to the position of its subset in `subsets`.
    """

    levels: PositiveInt
    particles: PositiveInt
    subsets: tuple[tuple[int, ...], ...] = Field(default=(), description="Occupied levels (0-based).")
    order: tuple[int, ...] = Field(default=(), description="Canonical position -> lexicographic position.")

    @model_validator(mode="before")
    @classmethod
    def default_subsets(cls, data: Any) -> Any:
        if isinstance(data, dict) and not data.get("subsets") and "levels" in data and "particles" in data:
            subsets = tuple(combinations(range(data["levels"]), data["particles"]))
            data = {**data, "subsets": subsets}
        if isinstance(data, dict) and not data.get("order") and data.get("subsets"):
            data = {**data, "order": tuple(range(len(data["subsets"])))}
        return data

    @model_validator(mode="after")
    def validate_subsets(self) -> Self:
        if self.particles > self.levels:
            raise ValueError(f"Cannot place {self.particles} particles in {self.levels} levels.")
        if self.subsets != tuple(combinations(range(self.levels), self.particles)):
            raise ValueError("Subsets must be all ascending subsets in lexicographic order.")
        if sorted(self.order) != list(range(len(self.subsets))):
            raise ValueError(f"{self.order}: Not a permutation.")
        return self

    @property
    def dimension(self) -> int:
        """Number of multiparticle states."""
        return len(self.subsets)

    @property
    def canonical_subsets(self) -> tuple[tuple[int, ...], ...]:
        """Subsets in the canonical order of the sector model."""
        return tuple(self.subsets[index] for index in self.order)

    def labels(self, level_labels: tuple[str, ...]) -> tuple[str, ...]:
        """Labels of all subsets in lexicographic order, e.g. `"1,3"`."""
        return tuple(",".join(level_labels[index] for index in subset) for subset in self.subsets)

    def to_canonical(self, matrix: Any) -> Any:
        """Reorder a matrix given in lexicographic subset order to canonical order."""
        return np.asarray(matrix)[np.ix_(self.order, self.order)]
