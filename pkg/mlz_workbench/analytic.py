# Copyright (c) 2025 Mathias Ertl
# Licensed under the MIT License. See LICENSE file for details.

"""Closed-form transition probabilities (and amplitudes) of exactly solvable models."""

import math
from collections.abc import Sequence

import numpy as np

from mlz_workbench.errors import DivisionByZeroError, InconsistentParamsError
from mlz_workbench.models.matrices import ScatteringMatrix, TransitionMatrix
from mlz_workbench.models.params import BowTieParams, DemkovOsherovParams, ParallelPairBowTieParams
from mlz_workbench.models.validators import validate_open_unit_interval

#: Denominators smaller than this are considered to vanish in the recursive construction.
DENOMINATOR_TOLERANCE = 1e-15


def do_solution(p: Sequence[float]) -> TransitionMatrix:
    """Demkov-Osherov model: level 0 crosses a band of levels 1..N (ordered by decreasing energy).

    `p[k - 1]` is the probability to pass the crossing with band level `k`.
    """
    params = DemkovOsherovParams(p=tuple(p))
    passing = np.array(params.p)
    turning = 1 - passing
    size = len(passing)

    matrix = np.zeros((size + 1, size + 1))
    matrix[0, 0] = np.prod(passing)
    for m in range(1, size + 1):
        matrix[m, m] = passing[m - 1]
        matrix[m, 0] = turning[m - 1] * np.prod(passing[: m - 1])
        matrix[0, m] = turning[m - 1] * np.prod(passing[m:])
        for n in range(1, m):
            matrix[m, n] = turning[m - 1] * turning[n - 1] * np.prod(passing[n : m - 1])
    return TransitionMatrix(probabilities=matrix)


def _divide(numerator: float, denominator: float) -> float:
    if abs(denominator) < DENOMINATOR_TOLERANCE:
        raise DivisionByZeroError("Denominator vanishes in the recursive construction.")
    return numerator / denominator


def do_recursive_solution(p: Sequence[float]) -> TransitionMatrix:
    """Demkov-Osherov model solved only from the constraints on its transition probabilities.

    The diagonal (`p_k` and `P_00 = prod(p_k)`), the no-go zeros and the relation
    `P_mn = P_m0 P_0n / P_00` leave the first row and column unknown. They are found by alternately
    applying the row and column sums, starting from `P_0N = q_N` and `P_10 = q_1`.
    """
    passing = [validate_open_unit_interval(value) for value in p]
    turning = [1 - value for value in passing]
    size = len(passing)
    survival = math.prod(passing)

    # first row (P_0k) and first column (P_k0), indexed by k = 1..N
    row: dict[int, float] = {size: turning[-1]}
    column: dict[int, float] = {1: turning[0]}
    while len(row) < size or len(column) < size:
        progress = False
        for k in range(1, size + 1):
            if k not in row:
                if all(index in column for index in range(1, k + 1)):
                    known = sum(column[index] for index in range(1, k + 1))
                    row[k] = _divide(survival * turning[k - 1], 1 - known)
                    progress = True
                elif all(index in column for index in range(k + 1, size + 1)):
                    known = sum(column[index] for index in range(k + 1, size + 1))
                    row[k] = _divide(survival * turning[k - 1], survival + known)
                    progress = True
            if k not in column:
                if all(index in row for index in range(k, size + 1)):
                    known = sum(row[index] for index in range(k, size + 1))
                    column[k] = _divide(survival * turning[k - 1], 1 - known)
                    progress = True
                elif all(index in row for index in range(1, k)):
                    known = sum(row[index] for index in range(1, k))
                    column[k] = _divide(survival * turning[k - 1], survival + known)
                    progress = True
        if not progress:  # pragma: no cover
            raise DivisionByZeroError("Recursive construction did not make progress.")

    matrix = np.zeros((size + 1, size + 1))
    matrix[0, 0] = survival
    for m in range(1, size + 1):
        matrix[m, m] = passing[m - 1]
        matrix[0, m] = row[m]
        matrix[m, 0] = column[m]
        for n in range(1, m):
            matrix[m, n] = _divide(column[m] * row[n], survival)
    return TransitionMatrix(probabilities=matrix)


def chain3_solution(b: Sequence[float], g1: float, g2: float) -> TransitionMatrix:
    """Three-level chain with slopes `b`, coupling `g1` between levels 1, 2 and `g2` between levels 2, 3."""
    b1, b2, b3 = b
    if len({b1, b2, b3}) != 3:
        raise ValueError(f"{tuple(b)}: Slopes of a chain must be distinct.")
    first = math.exp(-math.pi * g1**2 / abs(b1 - b2))
    second = math.exp(-math.pi * g2**2 / abs(b3 - b2))

    p12 = (1 - first) * (first + second)
    p13 = (1 - first) * (1 - second)
    p23 = (1 - second) * (first + second)
    matrix = [
        [first**2, p12, p13],
        [p12, (1 - first - second) ** 2, p23],
        [p13, p23, second**2],
    ]
    return TransitionMatrix(probabilities=matrix)


def spin32_solution(p1: float, p2: float) -> TransitionMatrix:
    """Spin-3/2 model, in the numbering of its Hamiltonian (levels with slopes `b1, -b1, b2, -b2`).

    The two symmetry classes of off-diagonal entries are `p2 (1 - p1)` (1-3, 2-4) and `1 - p2` (1-4, 2-3).
    """
    diagonal = p1 * p2
    first = p2 * (1 - p1)
    second = 1 - p2
    matrix = np.array(
        [
            [diagonal, 0, first, second],
            [0, diagonal, second, first],
            [first, second, diagonal, 0],
            [second, first, 0, diagonal],
        ]
    )
    if np.any(matrix < 0) or np.any(matrix > 1):
        raise InconsistentParamsError(f"p1={p1}, p2={p2}: Probabilities leave the interval [0, 1].")
    return TransitionMatrix(probabilities=matrix)


def bowtie4_solution(x: float, y: float) -> TransitionMatrix:
    """4-state bow-tie model with `X` (coupling of the lowest level) and `Y` (highest level)."""
    params = BowTieParams(x=x, y=y)
    x, y = params.x, params.y
    matrix = [
        [x**2, x * (1 - x), y * (1 - x), (1 - x) * (1 - y)],
        [(1 - x) * y, x * y, (1 - y) ** 2, y * (1 - y)],
        [x * (1 - x), (1 - x) ** 2, x * y, x * (1 - y)],
        [(1 - x) * (1 - y), x * (1 - y), y * (1 - y), y**2],
    ]
    return TransitionMatrix(probabilities=matrix)


def sixstate_solution(p1: float, p2: float) -> TransitionMatrix:
    """Two-fermion sector of the 4-state bow-tie with a parallel pair of maximal slope.

    States are ordered `(1,2), (3,4), (1,3), (1,4), (2,3), (2,4)` (pairs of occupied single-particle levels).
    """
    params = ParallelPairBowTieParams(p1=p1, p2=p2)
    p1, p2 = params.p1, params.p2
    q1, q2 = 1 - p1, 1 - p2
    matrix = [
        [p1**2 * p2**2, 0, p1 * q1 * p2**2, p2 * q1, p1 * p2 * q2, q2],
        [0, p1**2 * p2**2, q2, p1 * p2 * q2, p2 * q1, p1 * q1 * p2**2],
        [p2 * q1, p1 * p2 * q2, p1 * p2, q2**2, 0, p2 * q2 * q1],
        [p1 * q1 * p2**2, q2, p2**2 * q1**2, p1 * p2, p2 * q2 * q1, 0],
        [q2, p1 * q1 * p2**2, 0, p2 * q2 * q1, p1 * p2, p2**2 * q1**2],
        [p1 * p2 * q2, p2 * q1, p2 * q2 * q1, 0, q2**2, p1 * p2],
    ]
    return TransitionMatrix(probabilities=matrix)


def bowtieC_S(p1: float, p2: float) -> ScatteringMatrix:
    """Scattering matrix of the 4-state bow-tie with a parallel pair of maximal slope.

    Levels are ordered by slope, the parallel pair last (upper level first). `p2` belongs to the crossings
    of the level with the lowest slope, `p1` to those of the level with the second-lowest slope.
    """
    params = ParallelPairBowTieParams(p1=p1, p2=p2)
    p1, p2 = params.p1, params.p2
    q1, q2 = 1 - p1, 1 - p2
    sqrt = math.sqrt
    matrix = [
        [p2, -sqrt(p2 * q2 * q1), 1j * sqrt(p1 * p2 * q2), 1j * sqrt(q2)],
        [-sqrt(p2 * q2 * q1), p1 + q1 * q2, 1j * p2 * sqrt(p1 * q1), 1j * sqrt(p2 * q1)],
        [1j * sqrt(q2), 1j * sqrt(p2 * q1), sqrt(p1 * p2), 0],
        [1j * sqrt(p1 * p2 * q2), 1j * p2 * sqrt(p1 * q1), -q1 - p1 * q2, sqrt(p1 * p2)],
    ]
    return ScatteringMatrix(entries=matrix)
