# Copyright (c) 2025 Mathias Ertl
# Licensed under the MIT License. See LICENSE file for details.

"""Configuration of the numerical propagator."""

from pydantic import Field, NonNegativeInt, PositiveFloat

from mlz_workbench.models.base import ValueModel
from mlz_workbench.models.types import Schedule
from mlz_workbench.typing import Scheme


class PropagationConfig(ValueModel):
    """Numerical settings for computing a scattering matrix."""

    scheme: Scheme = Field(
        default="interaction-picture-adaptive",
        description="Integrate in the interaction picture with adaptive steps, or in the raw picture with "
        "a fixed step size.",
    )
    t_end: PositiveFloat | None = Field(
        default=None,
        description="Propagate from `-t_end` to `t_end`. If not set, the window is derived from the model "
        "and doubled until the transition probabilities are stable.",
    )
    step_size: PositiveFloat = Field(default=1e-3, description="Step size of the fixed-step scheme.")
    error_tolerance: PositiveFloat = Field(
        default=1e-10, description="Relative tolerance of the adaptive scheme."
    )
    method: str = Field(default="DOP853", description="Integration method passed to `solve_ivp()`.")
    tail_correction: bool = Field(
        default=True,
        description="Add the asymptotic contribution of the couplings outside of the window.",
    )
    stability_tolerance: PositiveFloat = Field(
        default=1e-3,
        description="Maximum elementwise change of the transition probabilities when doubling a derived "
        "window.",
    )
    max_doublings: NonNegativeInt = Field(
        default=5, description="Maximum number of times a derived window is doubled."
    )
    unitarity_tolerance: PositiveFloat = Field(
        default=1e-6, description="Maximum accepted unitarity defect of the result."
    )
    convergence_schedule: Schedule | None = Field(
        default=None, description="Increasing `t_end` values used for a convergence study."
    )
