# Copyright (c) 2025 Mathias Ertl
# Licensed under the MIT License. See LICENSE file for details.

"""Base model classes."""

from pydantic import BaseModel, ConfigDict


class ValueModel(BaseModel):
    """Base model for immutable values."""

    model_config = ConfigDict(extra="forbid", frozen=True)


class ArrayModel(BaseModel):
    """Base model for immutable values holding (read-only) numpy arrays.

    Note that equality of such models is not defined, compare the arrays instead.
    """

    model_config = ConfigDict(extra="forbid", frozen=True, arbitrary_types_allowed=True)
