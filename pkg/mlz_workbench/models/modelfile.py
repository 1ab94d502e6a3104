# Copyright (c) 2025 Mathias Ertl
# Licensed under the MIT License. See LICENSE file for details.

"""Model files: the line-oriented text format and its YAML equivalent."""

from collections.abc import Sequence
from pathlib import Path
from typing import Any

import numpy as np
from pydantic import Field, PositiveInt, model_validator
from yaml import safe_load

from mlz_workbench.errors import DimensionMismatchError, ModelFileError
from mlz_workbench.models.base import ValueModel
from mlz_workbench.models.mlz import MlzModel
from mlz_workbench.models.validators import STRUCTURE_TOLERANCE
from mlz_workbench.typing import ComplexArray, FloatArray, Self

YAML_SUFFIXES = (".yaml", ".yml")


def _number(value: float) -> str:
    return repr(float(value))


class CouplingEntry(ValueModel):
    """A coupling between levels `i` and `j` (1-based, in the order of the file)."""

    i: PositiveInt
    j: PositiveInt
    re: float
    im: float = 0.0

    @model_validator(mode="before")
    @classmethod
    def from_sequence(cls, data: Any) -> Any:
        if isinstance(data, (list, tuple)):
            return dict(zip(("i", "j", "re", "im"), data))
        return data


class ModelFile(ValueModel):
    """Contents of a model file."""

    n: PositiveInt = Field(description="Number of levels.")
    slopes: tuple[float, ...]
    energies: tuple[float, ...]
    couplings: tuple[CouplingEntry, ...] = ()

    @model_validator(mode="after")
    def validate_dimensions(self) -> Self:
        if len(self.slopes) != self.n or len(self.energies) != self.n:
            raise DimensionMismatchError(
                f"Expected {self.n} slopes and energies, got {len(self.slopes)} and {len(self.energies)}."
            )
        for entry in self.couplings:
            if entry.i > self.n or entry.j > self.n:
                raise ModelFileError(f"coupling {entry.i} {entry.j}: Level index out of range.")
            if entry.i == entry.j:
                raise ModelFileError(f"coupling {entry.i} {entry.j}: Levels cannot couple to themselves.")
        return self

    @classmethod
    def from_file(cls, path: Path) -> "ModelFile":
        """Load a model file (YAML if the suffix is `.yaml` or `.yml`, the text format otherwise)."""
        if path.suffix in YAML_SUFFIXES:
            with open(path) as stream:
                data = safe_load(stream)

            # e.g. an empty YAML file will return None
            if not isinstance(data, dict):
                raise ValueError("File does not contain a mapping at top level.")
            return cls.model_validate(data)
        return cls.from_text(path.read_text())

    @classmethod
    def from_text(cls, text: str) -> "ModelFile":
        """Parse the line-oriented text format."""
        data: dict[str, Any] = {"couplings": []}
        for lineno, raw_line in enumerate(text.splitlines(), start=1):
            line = raw_line.split("#", 1)[0].strip()
            if not line:
                continue

            try:
                if line.startswith("coupling"):
                    tokens = line.split()[1:]
                    if len(tokens) not in (3, 4):
                        raise ModelFileError("Expected: coupling <i> <j> <re> [<im>]", line=lineno)
                    data["couplings"].append(
                        (int(tokens[0]), int(tokens[1]), *(float(token) for token in tokens[2:]))
                    )
                elif "=" in line:
                    key, value = (part.strip() for part in line.split("=", 1))
                    if key in data:
                        raise ModelFileError(f"{key}: Defined more than once.", line=lineno)
                    if key == "n":
                        data[key] = int(value)
                    elif key in ("slopes", "energies"):
                        data[key] = tuple(float(token) for token in value.split())
                    else:
                        raise ModelFileError(f"{key}: Unknown key.", line=lineno)
                else:
                    raise ModelFileError(f"{line}: Cannot parse line.", line=lineno)
            except ValueError as ex:
                raise ModelFileError(str(ex), line=lineno) from ex

        for key in ("n", "slopes", "energies"):
            if key not in data:
                raise ModelFileError(f"{key}: Missing required key.")
        return cls.model_validate(data)

    @classmethod
    def from_model(cls, model: MlzModel) -> "ModelFile":
        """Model file describing a model in its canonical order."""
        couplings = [
            CouplingEntry(i=row + 1, j=column + 1, re=value.real, im=value.imag)
            for row, column in zip(*np.triu_indices(model.dimension, k=1))
            if abs(value := model.couplings[row, column]) > STRUCTURE_TOLERANCE
        ]
        return cls(
            n=model.dimension,
            slopes=tuple(model.slopes),
            energies=tuple(model.energies),
            couplings=tuple(couplings),
        )

    def to_arrays(self) -> tuple[FloatArray, FloatArray, ComplexArray]:
        """Slopes, energies and the (Hermitian completed) coupling matrix in the file's order."""
        couplings = np.zeros((self.n, self.n), dtype=np.complex128)
        given = {(entry.i - 1, entry.j - 1) for entry in self.couplings}
        for entry in self.couplings:
            value = complex(entry.re, entry.im)
            couplings[entry.i - 1, entry.j - 1] = value
            if (entry.j - 1, entry.i - 1) not in given:
                couplings[entry.j - 1, entry.i - 1] = value.conjugate()
        return np.array(self.slopes), np.array(self.energies), couplings

    def to_text(self, header: Sequence[str] = ()) -> str:
        """Render the line-oriented text format, `header` lines are added as comments."""
        lines = [f"# {line}" if line else "#" for line in header]
        lines += [
            f"n = {self.n}",
            f"slopes = {' '.join(_number(value) for value in self.slopes)}",
            f"energies = {' '.join(_number(value) for value in self.energies)}",
        ]
        lines += [
            f"coupling {entry.i} {entry.j} {_number(entry.re)} {_number(entry.im)}"
            for entry in self.couplings
        ]
        return "\n".join(lines) + "\n"
