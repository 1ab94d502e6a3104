# Copyright (c) 2025 Mathias Ertl
# Licensed under the MIT License. See LICENSE file for details.

"""Semiclassical trajectory sum for Demkov-Osherov and bow-tie diagrams."""

import logging
import math
from collections.abc import Iterator

import numpy as np

from mlz_workbench.errors import ComplexCouplingError, CoincidentCrossingsError, OutOfAnsatzScopeError
from mlz_workbench.models.graph import Crossing, CrossingGraph, Segment, Trajectory
from mlz_workbench.models.matrices import TransitionMatrix
from mlz_workbench.models.mlz import MlzModel
from mlz_workbench.models.validators import STRUCTURE_TOLERANCE

log = logging.getLogger(__name__)

#: Two crossings closer than this in time are considered simultaneous.
TIME_TOLERANCE = 1e-9

# A branch is a sequence of (crossing index, turned) decisions.
Branch = tuple[tuple[int, bool], ...]


def crossing_graph(model: MlzModel) -> CrossingGraph:
    """Time-ordered list of all crossings of coupled levels with different slopes."""
    if np.max(np.abs(model.couplings.imag)) > STRUCTURE_TOLERANCE:
        raise ComplexCouplingError("Semiclassical trajectories require real couplings.")

    crossings = []
    for i in range(model.dimension):
        for j in range(i + 1, model.dimension):
            coupling = model.couplings[i, j].real
            slope_difference = model.slopes[i] - model.slopes[j]
            if coupling == 0 or slope_difference == 0:
                continue
            crossings.append(
                Crossing(
                    time=float((model.energies[j] - model.energies[i]) / slope_difference),
                    pair=(i, j),
                    coupling=float(coupling),
                    slope_difference=float(abs(slope_difference)),
                )
            )
    crossings.sort(key=lambda crossing: crossing.time)

    for index, crossing in enumerate(crossings):
        for other in crossings[index + 1 :]:
            if other.time - crossing.time > TIME_TOLERANCE:
                break
            if set(crossing.pair) & set(other.pair):
                first = tuple(model.labels[level] for level in crossing.pair)
                second = tuple(model.labels[level] for level in other.pair)
                raise CoincidentCrossingsError(
                    f"Crossings {first} and {second} share a level and happen at the same time."
                )

    return CrossingGraph(slopes=model.slopes, energies=model.energies, crossings=tuple(crossings))


def _branches(
    graph: CrossingGraph, level: int, start: int, memo: dict[tuple[int, int], list[Branch]]
) -> list[Branch]:
    key = (level, start)
    if key in memo:
        return memo[key]

    following = [index for index in graph.crossings_of(level) if index >= start]
    if not following:
        result: list[Branch] = [()]
    else:
        index = following[0]
        other = graph.crossings[index].other(level)
        passed = [((index, False), *branch) for branch in _branches(graph, level, index + 1, memo)]
        turned = [((index, True), *branch) for branch in _branches(graph, other, index + 1, memo)]
        result = passed + turned

    memo[key] = result
    return result


def _segments(graph: CrossingGraph, initial: int, branch: Branch) -> Iterator[Segment]:
    level, start = initial, -math.inf
    for index, turned in branch:
        if turned:
            crossing = graph.crossings[index]
            yield Segment(level=level, start=start, end=crossing.time)
            level, start = crossing.other(level), crossing.time
    yield Segment(level=level, start=start, end=math.inf)


def trajectory_amplitude(trajectory: Trajectory, graph: CrossingGraph) -> complex:
    """Product of the crossing factors along a trajectory.

    Passing a crossing contributes `sqrt(p)`, turning contributes `sign(g) * i * sqrt(1 - p)`, with the
    Landau-Zener probability `p` of the crossing.
    """
    amplitude = 1 + 0j
    for position, segment in enumerate(trajectory.segments):
        following = trajectory.segments[position + 1] if position + 1 < len(trajectory.segments) else None
        for index in graph.crossings_of(segment.level):
            crossing = graph.crossings[index]
            if segment.start < crossing.time < segment.end:
                amplitude *= math.sqrt(crossing.probability)
            elif (
                following is not None
                and crossing.time == segment.end
                and set(crossing.pair) == {segment.level, following.level}
            ):
                amplitude *= math.copysign(1, crossing.coupling) * 1j * math.sqrt(1 - crossing.probability)
    return amplitude


def enumerate_trajectories(graph: CrossingGraph, initial: int, final: int) -> tuple[Trajectory, ...]:
    """All causal trajectories from `initial` at `t = -inf` to `final` at `t = +inf`.

    At every crossing on its current level, a trajectory either passes or turns to the other level.
    """
    for level in (initial, final):
        if not 0 <= level < graph.dimension:
            raise ValueError(f"{level}: Level index out of range.")

    trajectories = []
    for branch in _branches(graph, initial, 0, {}):
        segments = tuple(_segments(graph, initial, branch))
        if segments[-1].level != final:
            continue
        trajectory = Trajectory(segments=segments)
        amplitude = trajectory_amplitude(trajectory, graph)
        trajectories.append(trajectory.model_copy(update={"amplitude": amplitude}))
    return tuple(trajectories)


def _check_demkov_osherov(model: MlzModel) -> bool:
    groups = model.parallel_groups()
    return len(groups) == 2 and 1 in (len(groups[0]), len(groups[1]))


def _check_bowtie(model: MlzModel) -> None:
    groups = model.parallel_groups()
    pairs = [group for group in groups if len(group) == 2]
    if len(pairs) != 1 or any(len(group) > 2 for group in groups):
        raise OutOfAnsatzScopeError(
            "Model is neither of Demkov-Osherov type nor has exactly one pair of parallel levels."
        )
    upper, lower = pairs[0]
    slanted = [group[0] for group in groups if len(group) == 1]
    midpoint = (model.energies[upper] + model.energies[lower]) / 2
    parallel_slope = model.slopes[upper]

    if np.max(np.abs(model.couplings[np.ix_(slanted, slanted)]), initial=0.0) > STRUCTURE_TOLERANCE:
        raise OutOfAnsatzScopeError("Slanted levels of a bow-tie must not be coupled with each other.")

    times = [(midpoint - model.energies[k]) / (model.slopes[k] - parallel_slope) for k in slanted]
    if np.ptp(times) > TIME_TOLERANCE:
        raise OutOfAnsatzScopeError("Slanted levels must cross the middle of the parallel pair in one point.")

    products = []
    for k in slanted:
        to_upper, to_lower = model.couplings[k, upper].real, model.couplings[k, lower].real
        if abs(abs(to_upper) - abs(to_lower)) > STRUCTURE_TOLERANCE:
            raise OutOfAnsatzScopeError(
                f"Level {model.labels[k]} must couple equally strong to both parallel levels."
            )
        products.append(to_upper * to_lower)
    if any(value > 0 for value in products) and any(value < 0 for value in products):
        raise OutOfAnsatzScopeError("Coupling signs of the slanted levels differ (pseudo bow-tie).")


def semiclassical_P(model: MlzModel) -> TransitionMatrix:
    """Transition probabilities from summing the amplitudes of all trajectories.

    Only Demkov-Osherov models (one slanted level crossing a band of parallel levels) and bow-tie models
    (slanted levels crossing a pair of parallel levels in its middle) are exact and accepted.
    """
    if not _check_demkov_osherov(model):
        _check_bowtie(model)

    graph = crossing_graph(model)
    probabilities = np.zeros((model.dimension, model.dimension))
    for initial in range(model.dimension):
        for final in range(model.dimension):
            trajectories = enumerate_trajectories(graph, initial, final)
            amplitude = sum((trajectory.amplitude for trajectory in trajectories), 0j)
            probabilities[final, initial] = abs(amplitude) ** 2
    log.debug("Summed trajectories over %s crossings.", len(graph.crossings))
    return TransitionMatrix(probabilities=probabilities)
