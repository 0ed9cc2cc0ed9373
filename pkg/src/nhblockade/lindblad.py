# Copyright 2024 The nhblockade Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

from nhblockade._src.lindblad import (
    DIMENSION_LIMIT,
    ConvergenceReport,
    DensityOperator,
    DimensionLimitError,
    DrivePowerReport,
    NonUniqueSteadyStateError,
    OracleCorrelations,
    TruncationSpec,
    ZeroIntensityError,
    build_liouvillian,
    convergence_check,
    default_truncation,
    dissipator,
    drive_power_check,
    driven_hamiltonian,
    full_space_operator,
    narrowest_linewidth,
    oracle_correlations,
    run_oracle,
    solve_steady_state,
    steady_state,
)

__all__ = [
    "DIMENSION_LIMIT",
    "ConvergenceReport",
    "DensityOperator",
    "DimensionLimitError",
    "DrivePowerReport",
    "NonUniqueSteadyStateError",
    "OracleCorrelations",
    "TruncationSpec",
    "ZeroIntensityError",
    "build_liouvillian",
    "convergence_check",
    "default_truncation",
    "dissipator",
    "drive_power_check",
    "driven_hamiltonian",
    "full_space_operator",
    "narrowest_linewidth",
    "oracle_correlations",
    "run_oracle",
    "solve_steady_state",
    "steady_state",
]
