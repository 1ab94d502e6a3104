# Copyright (c) 2025 Mathias Ertl
# Licensed under the MIT License. See LICENSE file for details.

"""Composite models: fermionic multiparticle sectors and tensor products of independent models."""

import logging
from itertools import combinations, product

import numpy as np

from mlz_workbench.errors import DimensionMismatchError, MOutOfRangeError
from mlz_workbench.model import canonicalize
from mlz_workbench.models.fermions import FermionBasis
from mlz_workbench.models.matrices import ScatteringMatrix, TransitionMatrix
from mlz_workbench.models.mlz import MlzModel

log = logging.getLogger(__name__)


def hopping_sign(subset: tuple[int, ...], vacated: int, filled: int) -> int:
    """Sign of `c^+_filled c_vacated` acting on the ascending product state of `subset`.

    The sign is the parity of the number of occupied levels strictly between both levels.
    """
    low, high = sorted((vacated, filled))
    between = sum(1 for level in subset if low < level < high)
    return -1 if between % 2 else 1


def fermion_sector_model(model: MlzModel, m: int) -> tuple[MlzModel, FermionBasis]:
    """Model of `m` non-interacting spinless fermions on the levels of `model`.

    Every state is an ascending set of occupied levels. Its slope and energy are the sums over the occupied
    levels. States that differ by moving one particle are coupled with the single-particle coupling times
    the fermionic sign. The returned basis maps the canonical order of the sector model to the
    lexicographic order of the subsets.
    """
    if not 1 <= m <= model.dimension - 1:
        raise MOutOfRangeError(f"M={m}: Must be between 1 and {model.dimension - 1}.")

    basis = FermionBasis(levels=model.dimension, particles=m)
    subsets = basis.subsets
    positions = {subset: index for index, subset in enumerate(subsets)}
    slopes = np.array([model.slopes[list(subset)].sum() for subset in subsets])
    energies = np.array([model.energies[list(subset)].sum() for subset in subsets])
    couplings = np.zeros((basis.dimension, basis.dimension), dtype=np.complex128)

    for column, subset in enumerate(subsets):
        occupied = set(subset)
        for vacated in subset:
            for filled in range(model.dimension):
                if filled in occupied or model.couplings[filled, vacated] == 0:
                    continue
                target = tuple(sorted(occupied - {vacated} | {filled}))
                sign = hopping_sign(subset, vacated, filled)
                couplings[positions[target], column] = sign * model.couplings[filled, vacated]

    sector, report = canonicalize(slopes, energies, couplings, basis.labels(model.labels))
    log.debug("%s-particle sector of %s levels has %s states.", m, model.dimension, basis.dimension)
    return sector, basis.model_copy(update={"order": report.permutation})


def exterior_power_S(matrix: ScatteringMatrix, m: int) -> ScatteringMatrix:
    """Scattering matrix of the `m`-fermion sector, states in lexicographic subset order.

    Every entry is the determinant of the minor of `matrix` with the rows of the final and the columns of
    the initial subset.
    """
    if not 1 <= m <= matrix.dimension:
        raise MOutOfRangeError(f"M={m}: Must be between 1 and {matrix.dimension}.")
    subsets = np.array(list(combinations(range(matrix.dimension), m)))
    minors = matrix.entries[subsets[:, None, :, None], subsets[None, :, None, :]]
    return ScatteringMatrix(entries=np.linalg.det(minors))


def tensor_labels(first: MlzModel, second: MlzModel) -> tuple[str, ...]:
    """Labels of the composite levels in `kron` order (index of `first` varies slowest)."""
    return tuple(f"{a}x{b}" for a, b in product(first.labels, second.labels))


def tensor_model(first: MlzModel, second: MlzModel) -> MlzModel:
    """Model of two independent systems evolving at the same time.

    Slopes and energies add, each coupling acts on its own factor. Levels are labeled `"kxs"`.
    """
    slopes = np.add.outer(first.slopes, second.slopes).ravel()
    energies = np.add.outer(first.energies, second.energies).ravel()
    couplings = np.kron(first.couplings, np.eye(second.dimension)) + np.kron(
        np.eye(first.dimension), second.couplings
    )
    composite, _report = canonicalize(slopes, energies, couplings, tensor_labels(first, second))
    return composite


def tensor_S(first: ScatteringMatrix, second: ScatteringMatrix) -> ScatteringMatrix:
    """Scattering matrix of the composite system, in the order of :py:func:`tensor_labels`."""
    return ScatteringMatrix(entries=np.kron(first.entries, second.entries))


def hc_redundancy_check(matrix: ScatteringMatrix) -> float:
    """Residual of the identity relating two-particle amplitudes to the upper-left 3x3 minor of `S`.

    The determinant of the two-particle amplitudes between the states `(1,2)` and `(1,3)` equals
    `S[1,1] * det(S[1:3, 1:3])` for every matrix.
    """
    if matrix.dimension < 3:
        raise ValueError("Need at least three levels.")
    s = matrix.entries
    pairs = ((0, 1), (0, 2))
    amplitudes = np.array(
        [[np.linalg.det(s[np.ix_(rows, columns)]) for columns in pairs] for rows in pairs]
    )
    return float(abs(np.linalg.det(amplitudes) - s[0, 0] * np.linalg.det(s[:3, :3])))


def reduction_bookkeeping(six_state: TransitionMatrix, four_state: TransitionMatrix) -> float:
    """Check that the two-fermion sector of the spin-3/2 model reduces to single-particle probabilities.

    `six_state` is ordered `(1,2), (3,4), (1,3), (1,4), (2,3), (2,4)`, `four_state` by level number. Starting
    in `(1,3)`, the probability to end with level 1 occupied equals `P[1,1] + P[1,3]` of the 4-state model.
    """
    if six_state.probabilities.shape != (6, 6) or four_state.probabilities.shape != (4, 4):
        raise DimensionMismatchError(
            "Need a 6x6 two-particle and a 4x4 single-particle transition matrix, got "
            f"{six_state.probabilities.shape} and {four_state.probabilities.shape}."
        )
    six, four = six_state.probabilities, four_state.probabilities
    return float(abs(six[0, 2] + six[2, 2] + six[3, 2] - (four[0, 0] + four[0, 2])))
