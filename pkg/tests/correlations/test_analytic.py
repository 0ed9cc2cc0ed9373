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

import math

import pytest

from nhblockade.correlations import (
    WeakCouplingDomainError,
    ZeroModeCouplingError,
    g2_hybrid_analytic,
    g2_hybrid_leading_order,
    g2_quadratic_analytic,
    gamma_p2_weak_coupling,
    intensity_quadratic_analytic,
    nhpb_threshold_d,
)
from nhblockade.hamiltonians import HybridParams, QuadraticParams


class TestQuadratic:
    def test_headline_cooperativity(self):
        params = QuadraticParams(gamma_a=1.0, gamma_b=1e-3, g=0.1)
        assert float(g2_quadratic_analytic(params)) == pytest.approx(1 / 1681)
        assert float(intensity_quadratic_analytic(params)) == pytest.approx(4e6)

    def test_weak_coupling_width(self):
        params = QuadraticParams(gamma_a=1.0, gamma_b=1e-3, g=0.05)
        assert float(gamma_p2_weak_coupling(params)) == pytest.approx(0.022)

    def test_weak_coupling_domain(self):
        params = QuadraticParams(gamma_a=1.0, gamma_b=1e-3, g=0.4)
        with pytest.raises(WeakCouplingDomainError):
            gamma_p2_weak_coupling(params)


class TestHybrid:
    def test_base_point_value(self):
        params = HybridParams(
            gamma_e=0.0, gamma_1=1e-3, gamma_2=1.0, g_1=0.0, g_2=1 / 15, d=0.1
        )
        assert float(g2_hybrid_analytic(params)) == pytest.approx(3.70e-3, rel=5e-3)

    def test_zero_coupling(self):
        params = HybridParams(
            gamma_e=0.0, gamma_1=1e-3, gamma_2=1.0, g_1=0.0, g_2=1 / 15, d=0.0
        )
        with pytest.raises(ZeroModeCouplingError):
            g2_hybrid_analytic(params)
        with pytest.raises(ZeroDivisionError):
            g2_hybrid_analytic(params)


class TestThreshold:
    def test_value(self):
        assert float(nhpb_threshold_d(1 / 15, 1e-3, 1.0)) == pytest.approx(
            0.0326, rel=1e-3
        )

    def test_monotone_in_coupling(self):
        low = float(nhpb_threshold_d(0.03, 1e-3, 1.0))
        high = float(nhpb_threshold_d(0.15, 1e-3, 1.0))
        assert low < high

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            nhpb_threshold_d(0.0, 1e-3, 1.0)


class TestLeadingOrder:
    def hybrid(self, g_2: float, d: float) -> HybridParams:
        return HybridParams(
            gamma_e=0.0, gamma_1=1e-3, gamma_2=1.0, g_1=0.0, g_2=g_2, d=d
        )

    @pytest.mark.parametrize("g_2", [0.03, 0.09, 0.15])
    def test_unity_at_threshold(self, g_2):
        d = float(nhpb_threshold_d(g_2, 1e-3, 1.0))
        value = float(g2_hybrid_leading_order(self.hybrid(g_2, d)))
        assert value == pytest.approx(1.0, rel=1e-10)
        assert float(g2_hybrid_leading_order(self.hybrid(g_2, 1.2 * d))) < 1.0
        assert float(g2_hybrid_leading_order(self.hybrid(g_2, 0.8 * d))) > 1.0

    def test_matches_analytic_for_small_d(self):
        params = self.hybrid(0.1, 1e-3)
        leading = float(g2_hybrid_leading_order(params))
        assert leading == pytest.approx(float(g2_hybrid_analytic(params)), rel=1e-3)

    def test_nan_at_zero_coupling(self):
        assert math.isnan(float(g2_hybrid_leading_order(self.hybrid(0.1, 0.0))))
