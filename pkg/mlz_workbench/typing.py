# Copyright (c) 2025 Mathias Ertl
# Licensed under the MIT License. See LICENSE file for details.

"""Module that re-exports some type hints."""

from typing import Literal

import numpy as np
import numpy.typing as npt

try:
    from typing import Self
except ImportError:  # pragma: no cover
    # Note: only for py3.10
    from typing_extensions import Self

FloatArray = npt.NDArray[np.float64]
ComplexArray = npt.NDArray[np.complex128]

#: Corner of the scattering matrix that a hierarchy constraint is anchored at.
Corner = Literal["upper-left", "lower-right"]

#: Numerical schemes of the propagator.
Scheme = Literal["raw-fixed-step", "interaction-picture-adaptive"]

#: A pair of (0-based) level indices.
LevelPair = tuple[int, int]

__all__ = [
    "ComplexArray",
    "Corner",
    "FloatArray",
    "LevelPair",
    "Scheme",
    "Self",
]
