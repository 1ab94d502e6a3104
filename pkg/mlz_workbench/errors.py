# Copyright (c) 2025 Mathias Ertl
# Licensed under the MIT License. See LICENSE file for details.

"""Collection of errors thrown by this project."""


class MlzWorkbenchError(Exception):
    """Base class for all exceptions thrown by this project."""


class ModelError(MlzWorkbenchError):
    """Base class for errors in the structure of a model."""


class NonHermitianCouplingError(ModelError):
    """Exception raised when the coupling matrix is not Hermitian."""


class LevelPairError(ModelError):
    """Base class for model errors caused by a specific pair of levels."""

    def __init__(self, message: str, pair: tuple[int, int]) -> None:
        super().__init__(message)
        self.pair = pair


class ParallelLevelCoupledError(LevelPairError):
    """Exception raised when two levels with equal slopes are directly coupled."""


class DegenerateDiabaticEnergiesError(LevelPairError):
    """Exception raised when two levels have identical slopes and identical diabatic energies."""


class DimensionMismatchError(ModelError):
    """Exception raised when inputs do not have matching dimensions."""


class ModelFileError(ModelError):
    """Exception raised when a model file cannot be parsed."""

    def __init__(self, message: str, line: int | None = None) -> None:
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ZeroScaleError(MlzWorkbenchError):
    """Exception raised when a time reparametrization uses a zero scale factor."""


class PropagationError(MlzWorkbenchError):
    """Base class for errors in the numerical propagation."""


class NotConvergedError(PropagationError):
    """Exception raised when a propagation does not reach the requested accuracy."""

    def __init__(self, message: str, estimate: float) -> None:
        super().__init__(message)
        self.estimate = estimate


class StepTooLargeError(PropagationError):
    """Exception raised when the fixed step size cannot resolve the Hamiltonian at the window edge."""


class ConstraintError(MlzWorkbenchError):
    """Base class for errors when evaluating constraints or closed-form solutions."""


class MOutOfRangeError(ConstraintError):
    """Exception raised when a block size is outside the valid range."""


class NotExtremalBandError(ConstraintError):
    """Exception raised when a level does not belong to the band of minimal or maximal slope."""


class NotAChainError(ConstraintError):
    """Exception raised when a model is not a Landau-Zener chain."""


class BandStructureMismatchError(ConstraintError):
    """Exception raised when a model does not have the level structure a relation requires."""


class NoPhysicalRootError(ConstraintError):
    """Exception raised when the root finder finds no root inside the physical domain."""


class InconsistentParamsError(ConstraintError):
    """Exception raised when parameters produce probabilities outside of [0, 1]."""


class DivisionByZeroError(ConstraintError):
    """Exception raised when a recursive construction hits a vanishing denominator."""


class SemiclassicalError(MlzWorkbenchError):
    """Base class for errors of the trajectory-sum ansatz."""


class ComplexCouplingError(SemiclassicalError):
    """Exception raised when a coupling has a non-zero imaginary part."""


class CoincidentCrossingsError(SemiclassicalError):
    """Exception raised when one level takes part in two coupled crossings at the same time."""


class OutOfAnsatzScopeError(SemiclassicalError):
    """Exception raised when a model is not of a class for which the ansatz is exact."""
