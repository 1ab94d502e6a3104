# Copyright (c) 2025 Mathias Ertl
# Licensed under the MIT License. See LICENSE file for details.

from mlz_workbench.models.fermions import FermionBasis
from mlz_workbench.models.graph import Crossing, CrossingGraph, Segment, Trajectory
from mlz_workbench.models.matrices import ScatteringMatrix, TransitionMatrix
from mlz_workbench.models.mlz import CanonicalizationReport, MlzModel
from mlz_workbench.models.modelfile import ModelFile
from mlz_workbench.models.params import (
    BowTieParams,
    DemkovOsherovParams,
    LzParams,
    ParallelPairBowTieParams,
    Spin32Params,
)
from mlz_workbench.models.propagation import PropagationConfig
from mlz_workbench.models.reports import ConstraintEntry, ConstraintReport, RunReport, Table

__all__ = [
    "BowTieParams",
    "CanonicalizationReport",
    "ConstraintEntry",
    "ConstraintReport",
    "Crossing",
    "CrossingGraph",
    "DemkovOsherovParams",
    "FermionBasis",
    "LzParams",
    "MlzModel",
    "ModelFile",
    "ParallelPairBowTieParams",
    "PropagationConfig",
    "RunReport",
    "ScatteringMatrix",
    "Segment",
    "Table",
    "Trajectory",
    "TransitionMatrix",
]
