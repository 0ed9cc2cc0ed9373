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
"""Numerical thresholds shared by every evaluation.

All fields are static: changing a threshold changes the compiled program, and a
sweep compiles once per settings value."""

from nhblockade._src.core.pytree import Pytree

ACCESSIBILITY_THRESHOLD = 1e-6
EXCEPTIONAL_POINT_TOL = 1e-10
SYMMETRY_TOL = 1e-12
SINGULAR_RESIDUAL_TOL = 1e-8
CONVERGENCE_BOUND = 1e-3
Q_MAX = 3


@Pytree.dataclass
class NumericSettings(Pytree):
    accessibility_threshold: float = Pytree.static(default=ACCESSIBILITY_THRESHOLD)
    exceptional_point_tol: float = Pytree.static(default=EXCEPTIONAL_POINT_TOL)
    symmetry_tol: float = Pytree.static(default=SYMMETRY_TOL)
    singular_residual_tol: float = Pytree.static(default=SINGULAR_RESIDUAL_TOL)
    convergence_bound: float = Pytree.static(default=CONVERGENCE_BOUND)
    q_max: int = Pytree.static(default=Q_MAX)

    def __post_init__(self):
        if not 1 <= self.q_max <= 3:
            raise ValueError(f"q_max must lie in 1..3, got {self.q_max}.")
        for name in (
            "accessibility_threshold",
            "exceptional_point_tol",
            "symmetry_tol",
            "singular_residual_tol",
            "convergence_bound",
        ):
            if not getattr(self, name) > 0.0:
                raise ValueError(f"{name} must be positive.")

    def as_dict(self) -> dict[str, float | int]:
        return {
            "accessibility_threshold": self.accessibility_threshold,
            "exceptional_point_tol": self.exceptional_point_tol,
            "symmetry_tol": self.symmetry_tol,
            "singular_residual_tol": self.singular_residual_tol,
            "convergence_bound": self.convergence_bound,
            "q_max": self.q_max,
        }
