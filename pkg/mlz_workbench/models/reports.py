# Copyright (c) 2025 Mathias Ertl
# Licensed under the MIT License. See LICENSE file for details.

"""Models for constraint reports and command reports."""

from pydantic import Field, NonNegativeFloat, computed_field

from mlz_workbench.models.base import ValueModel

Cell = str | int | float | bool


class ConstraintEntry(ValueModel):
    """A single checked relation `lhs = rhs`."""

    name: str
    lhs: complex
    rhs: float
    tolerance: NonNegativeFloat

    @computed_field  # type: ignore[prop-decorator]
    @property
    def residual(self) -> float:
        """Absolute difference of both sides."""
        return abs(self.lhs - self.rhs)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def passed(self) -> bool:
        """True if the residual is within the tolerance."""
        return self.residual <= self.tolerance


class ConstraintReport(ValueModel):
    """A collection of checked relations."""

    title: str = ""
    entries: tuple[ConstraintEntry, ...] = ()

    @property
    def passed(self) -> bool:
        """True if all entries passed."""
        return all(entry.passed for entry in self.entries)

    @property
    def max_residual(self) -> float:
        """Largest residual of all entries (0 for an empty report)."""
        return max((entry.residual for entry in self.entries), default=0.0)

    def __add__(self, other: "ConstraintReport") -> "ConstraintReport":
        title = " / ".join(title for title in (self.title, other.title) if title)
        return ConstraintReport(title=title, entries=self.entries + other.entries)


class Table(ValueModel):
    """A labeled table of a report."""

    title: str
    columns: tuple[str, ...]
    rows: tuple[tuple[Cell, ...], ...] = ()
    tolerance: float | None = Field(default=None, description="Tolerance the values were checked against.")


class RunReport(ValueModel):
    """Everything a command writes to its output."""

    command: str
    model_digest: str | None = None
    metadata: tuple[tuple[str, Cell], ...] = ()
    tables: tuple[Table, ...] = ()
    model_text: str | None = Field(default=None, description="A model file appended to the report.")
    timing: float | None = Field(default=None, description="Wall time of the command in seconds.")
    passed: bool = True
