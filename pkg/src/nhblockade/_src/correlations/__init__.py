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
from .analytic import (
    WeakCouplingDomainError,
    ZeroModeCouplingError,
    g2_hybrid_analytic,
    g2_hybrid_analytic_traced,
    g2_hybrid_leading_order,
    g2_quadratic_analytic,
    gamma_p2_weak_coupling,
    intensity_quadratic_analytic,
    nhpb_threshold_d,
)
from .born import (
    BornCoefficients,
    DriveBlocks,
    SingularResolventError,
    born_coefficients,
    born_solution,
    detected_amplitudes,
    intensity,
    normalized_correlations,
)
from .point import (
    CorrelationPoint,
    correlation_point,
    evaluate_point,
    g2_full,
    g2_narrowest,
    g2_tampered,
    g2_two_state,
    g3_full,
    g3_narrowest,
    g3_tampered,
    intensity_narrowest,
    intensity_rel,
    intensity_tampered,
    pump_detunings,
    raise_for_status,
)
from .spectral import (
    SpectralAnalysis,
    eigenstate_correlators,
    resolved_alphas,
    spectral_analysis,
    tampered_eigenvalues,
    two_state_g2,
)

__all__ = [
    "BornCoefficients",
    "CorrelationPoint",
    "DriveBlocks",
    "SingularResolventError",
    "SpectralAnalysis",
    "WeakCouplingDomainError",
    "ZeroModeCouplingError",
    "born_coefficients",
    "born_solution",
    "correlation_point",
    "detected_amplitudes",
    "eigenstate_correlators",
    "evaluate_point",
    "g2_full",
    "g2_hybrid_analytic",
    "g2_hybrid_analytic_traced",
    "g2_hybrid_leading_order",
    "g2_narrowest",
    "g2_quadratic_analytic",
    "g2_tampered",
    "g2_two_state",
    "g3_full",
    "g3_narrowest",
    "g3_tampered",
    "gamma_p2_weak_coupling",
    "intensity",
    "intensity_narrowest",
    "intensity_quadratic_analytic",
    "intensity_rel",
    "intensity_tampered",
    "nhpb_threshold_d",
    "normalized_correlations",
    "pump_detunings",
    "raise_for_status",
    "resolved_alphas",
    "spectral_analysis",
    "tampered_eigenvalues",
    "two_state_g2",
]
