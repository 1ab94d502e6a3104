# Copyright (c) 2025 Mathias Ertl
# Licensed under the MIT License. See LICENSE file for details.

"""Re-evaluate a model over a grid of parameter values."""

import logging
from collections.abc import Sequence

from mlz_workbench.errors import BandStructureMismatchError, ModelError
from mlz_workbench.model import canonicalize
from mlz_workbench.models.base import ArrayModel
from mlz_workbench.models.matrices import ScatteringMatrix
from mlz_workbench.models.mlz import MlzModel
from mlz_workbench.models.propagation import PropagationConfig
from mlz_workbench.propagator import propagate

log = logging.getLogger(__name__)

#: Parameters that can be swept.
SWEEP_PARAMETERS = ("eps",)


class SweepPoint(ArrayModel):
    """Result of one point of a parameter sweep."""

    value: float
    model: MlzModel
    matrix: ScatteringMatrix


def with_half_distance(model: MlzModel, eps: float) -> MlzModel:
    """Move the levels of the only parallel pair of `model` to `midpoint ± eps`."""
    pairs = [group for group in model.parallel_groups() if len(group) > 1]
    if len(pairs) != 1 or len(pairs[0]) != 2:
        raise BandStructureMismatchError("Model must have exactly one pair of parallel levels.")
    upper, lower = pairs[0]
    midpoint = (model.energies[upper] + model.energies[lower]) / 2
    energies = model.energies.copy()
    energies[upper], energies[lower] = midpoint + eps, midpoint - eps
    swept, _report = canonicalize(model.slopes, energies, model.couplings, model.labels)
    return swept


def sweep_parameter(
    model: MlzModel, name: str, values: Sequence[float], config: PropagationConfig | None = None
) -> tuple[SweepPoint, ...]:
    """Propagate `model` for every value of the parameter `name`, in the order given.

    Values for which the model is ill-posed (e.g. a vanishing distance of parallel levels) are skipped.
    """
    if name not in SWEEP_PARAMETERS:
        raise ValueError(f"{name}: Unknown parameter, must be one of {', '.join(SWEEP_PARAMETERS)}.")

    points = []
    for value in values:
        try:
            swept = with_half_distance(model, value)
        except BandStructureMismatchError:
            raise
        except ModelError as ex:
            log.warning("%s=%s: Skipping ill-posed model: %s", name, value, ex)
            continue
        log.info("%s=%s: Propagating...", name, value)
        points.append(SweepPoint(value=value, model=swept, matrix=propagate(swept, config)))
    return tuple(points)
