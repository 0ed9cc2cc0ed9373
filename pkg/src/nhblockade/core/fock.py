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

from nhblockade._src.core.fock import (
    ExcitationMismatchError,
    FactorKind,
    ManifoldBasis,
    ModeLayout,
    OccupationState,
    OperatorSpec,
    enumerate_manifold,
    lower_mode,
    number_mode,
    operator_block,
    raise_mode,
    sigma_minus,
    sigma_plus,
    sigma_z_projector,
    weighted_number_block,
)

__all__ = [
    "ExcitationMismatchError",
    "FactorKind",
    "ManifoldBasis",
    "ModeLayout",
    "OccupationState",
    "OperatorSpec",
    "enumerate_manifold",
    "lower_mode",
    "number_mode",
    "operator_block",
    "raise_mode",
    "sigma_minus",
    "sigma_plus",
    "sigma_z_projector",
    "weighted_number_block",
]
