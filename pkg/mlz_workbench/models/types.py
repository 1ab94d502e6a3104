# Copyright (c) 2025 Mathias Ertl
# Licensed under the MIT License. See LICENSE file for details.

"""Annotated types used by pydantic models."""

from typing import Annotated

from pydantic import AfterValidator, PlainValidator

from mlz_workbench.models.validators import (
    validate_complex_matrix,
    validate_increasing,
    validate_open_unit_interval,
    validate_real_matrix,
    validate_real_vector,
    validate_unit_interval,
)
from mlz_workbench.typing import ComplexArray, FloatArray

RealVector = Annotated[FloatArray, PlainValidator(validate_real_vector)]
RealMatrix = Annotated[FloatArray, PlainValidator(validate_real_matrix)]
ComplexMatrix = Annotated[ComplexArray, PlainValidator(validate_complex_matrix)]

#: A probability-like parameter in (0, 1].
Probability = Annotated[float, AfterValidator(validate_unit_interval)]

#: A probability-like parameter in the open interval (0, 1).
OpenProbability = Annotated[float, AfterValidator(validate_open_unit_interval)]

#: A strictly increasing sequence of at least two values.
Schedule = Annotated[tuple[float, ...], AfterValidator(validate_increasing)]
