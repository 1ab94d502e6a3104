# Copyright (c) 2025 Mathias Ertl
# Licensed under the MIT License. See LICENSE file for details.

"""Test closed-form solutions against each other and against numerical propagation."""

import math

import numpy as np
import pytest

from mlz_workbench import families
from mlz_workbench.analytic import (
    bowtie4_solution,
    bowtieC_S,
    chain3_solution,
    do_recursive_solution,
    do_solution,
    sixstate_solution,
    spin32_solution,
)
from mlz_workbench.errors import DivisionByZeroError, InconsistentParamsError
from mlz_workbench.model import align
from mlz_workbench.models import (
    BowTieParams,
    DemkovOsherovParams,
    MlzModel,
    ParallelPairBowTieParams,
    PropagationConfig,
    Spin32Params,
)
from mlz_workbench.propagator import propagate, transition_matrix
from mlz_workbench.typing import FloatArray
from tests.conftest import ORACLE_TOLERANCE


def _propagated(model: MlzModel, config: PropagationConfig) -> FloatArray:
    return transition_matrix(propagate(model, config)).probabilities


def test_do_solution() -> None:
    """Test the Demkov-Osherov solution for two band levels."""
    p1, p2 = 0.3, 0.6
    expected = [
        [p1 * p2, (1 - p1) * p2, 1 - p2],
        [1 - p1, p1, 0],
        [p1 * (1 - p2), (1 - p1) * (1 - p2), p2],
    ]
    np.testing.assert_allclose(do_solution([p1, p2]).probabilities, expected)


@pytest.mark.parametrize("p", ((0.5,), (0.3, 0.6), (0.2, 0.5, 0.7, 0.9)))
def test_do_solution_is_doubly_stochastic(p: tuple[float, ...]) -> None:
    """Test that rows and columns add up to one."""
    assert do_solution(p).stochastic_defect < 1e-12


def test_do_solution_with_invalid_probability() -> None:
    """Test error when a probability is out of range."""
    with pytest.raises(ValueError, match=r"Must be in the interval \(0, 1\]"):
        do_solution([0.5, 1.5])


@pytest.mark.parametrize("p", ((0.5,), (0.3, 0.6), (0.2, 0.5, 0.7), (0.2, 0.5, 0.7, 0.9, 0.4)))
def test_do_recursive_solution(p: tuple[float, ...]) -> None:
    """Test that the constraints alone reproduce the Demkov-Osherov solution."""
    np.testing.assert_allclose(
        do_recursive_solution(p).probabilities, do_solution(p).probabilities, atol=1e-12
    )


def test_do_recursive_solution_with_vanishing_denominator() -> None:
    """Test error when a denominator vanishes."""
    with pytest.raises(DivisionByZeroError, match=r"Denominator vanishes"):
        do_recursive_solution([1e-20, 0.5])


def test_do_recursive_solution_with_invalid_probability() -> None:
    """Test that probabilities must be strictly between zero and one."""
    with pytest.raises(ValueError, match=r"open interval"):
        do_recursive_solution([0.5, 1])


def test_do_solution_propagation(do_model: MlzModel, config: PropagationConfig) -> None:
    """Compare the Demkov-Osherov solution with numerical propagation."""
    expected = do_solution(DemkovOsherovParams.from_model(do_model).p).probabilities
    np.testing.assert_allclose(_propagated(do_model, config), expected, atol=ORACLE_TOLERANCE)


def test_chain3_solution(chain3_model: MlzModel, config: PropagationConfig) -> None:
    """Compare the three-level chain with numerical propagation."""
    expected = chain3_solution([-1, 0, 1], 0.5, 0.5)
    assert expected.stochastic_defect < 1e-12
    np.testing.assert_allclose(
        _propagated(chain3_model, config), expected.probabilities, atol=ORACLE_TOLERANCE
    )


def test_chain3_solution_with_parallel_levels() -> None:
    """Test error when two slopes are equal."""
    with pytest.raises(ValueError, match=r"distinct"):
        chain3_solution([-1, 0, 0], 0.5, 0.5)


def test_spin32_solution(spin32_model: MlzModel, config: PropagationConfig) -> None:
    """Compare the spin-3/2 solution with numerical propagation."""
    params = Spin32Params.from_model(spin32_model)
    expected = spin32_solution(params.p1, params.p2)
    assert expected.stochastic_defect < 1e-12
    propagated = align(_propagated(spin32_model, config), spin32_model.labels, ("1", "2", "3", "4"))
    np.testing.assert_allclose(propagated, expected.probabilities, atol=ORACLE_TOLERANCE)


def test_spin32_solution_with_inconsistent_params() -> None:
    """Test that probabilities must stay in [0, 1]."""
    with pytest.raises(InconsistentParamsError, match=r"leave the interval"):
        spin32_solution(-0.5, 0.5)


def test_bowtie4_solution(bowtie_model: MlzModel, config: PropagationConfig) -> None:
    """Compare the 4-state bow-tie with numerical propagation."""
    params = BowTieParams.from_model(bowtie_model)
    expected = bowtie4_solution(params.x, params.y)
    assert expected.stochastic_defect < 1e-12
    np.testing.assert_allclose(
        _propagated(bowtie_model, config), expected.probabilities, atol=ORACLE_TOLERANCE
    )


def test_bowtie_c_scattering_matrix(bowtie_c_model: MlzModel, config: PropagationConfig) -> None:
    """Compare the scattering matrix of the bow-tie with a parallel pair of maximal slope."""
    params = ParallelPairBowTieParams.from_model(bowtie_c_model)
    matrix = bowtieC_S(params.p1, params.p2)
    assert matrix.unitarity_defect < 1e-12
    expected = np.abs(matrix.entries) ** 2
    np.testing.assert_allclose(_propagated(bowtie_c_model, config), expected, atol=ORACLE_TOLERANCE)


def test_sixstate_solution() -> None:
    """Test that the six-state solution is doubly stochastic."""
    solution = sixstate_solution(0.3, 0.7)
    assert solution.stochastic_defect < 1e-12
    assert solution.probabilities[0, 0] == pytest.approx(0.3**2 * 0.7**2)


@pytest.mark.parametrize("p2", (0, 1.5))
def test_sixstate_solution_with_invalid_params(p2: float) -> None:
    """Test error for parameters outside of the unit interval."""
    with pytest.raises(ValueError, match=r"Must be in the interval"):
        sixstate_solution(0.5, p2)


def test_lz_probability_of_params(two_level_model: MlzModel) -> None:
    """Test reading Landau-Zener probabilities from a model."""
    params = DemkovOsherovParams.from_model(two_level_model)
    assert params.p == (pytest.approx(math.exp(-math.pi / 2)),)
    assert params.q[0] == pytest.approx(1 - math.exp(-math.pi / 2))
