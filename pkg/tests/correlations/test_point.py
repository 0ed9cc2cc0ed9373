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

import jax
import jax.numpy as jnp
import pytest

import nhblockade
from nhblockade.core import NumericSettings, Status
from nhblockade.correlations import (
    SingularResolventError,
    correlation_point,
    evaluate_point,
    g2_full,
    g2_hybrid_analytic,
    g2_narrowest,
    g2_tampered,
    g2_two_state,
    g3_full,
    intensity_rel,
    pump_detunings,
)
from nhblockade.hamiltonians import DriveSpec, HybridParams, QuadraticParams


def base_params() -> HybridParams:
    return HybridParams(
        gamma_e=1e-5, gamma_1=1e-3, gamma_2=1.0, g_1=0.0, g_2=1 / 15, d=0.1
    )


def decoupled_quadratic() -> QuadraticParams:
    return QuadraticParams(gamma_a=1.0, gamma_b=1e-3, g=0.0)


HYBRID = DriveSpec.default_for("hybrid")
QUADRATIC = DriveSpec.default_for("quadratic")


class TestQuadraticResonance:
    def test_exact_law(self):
        params = QuadraticParams(gamma_a=1.0, gamma_b=1e-3, g=0.1)
        assert g2_full(params, QUADRATIC) == pytest.approx(1 / 1681, rel=1e-8)
        assert intensity_rel(params, QUADRATIC) == pytest.approx(4e6, rel=1e-8)

    def test_exact_law_over_grid(self):
        for ratio in (1e-3, 1e-1, 1.0):
            for g in (0.01, 0.5):
                params = QuadraticParams(gamma_a=1.0, gamma_b=ratio, g=g)
                expected = 1.0 / (1.0 + 4.0 * g**2 / ratio) ** 2
                assert g2_full(params, QUADRATIC) == pytest.approx(expected, rel=1e-8)

    def test_decoupled_mode_is_coherent(self):
        params = decoupled_quadratic()
        assert g2_full(params, QUADRATIC, 0.2) == pytest.approx(1.0, rel=1e-10)
        assert g3_full(params, QUADRATIC, 0.2) == pytest.approx(1.0, rel=1e-10)
        assert g2_two_state(params, QUADRATIC) == pytest.approx(1.0, rel=1e-9)
        assert g2_narrowest(params, QUADRATIC, 0.2) == pytest.approx(1.0, rel=1e-9)

    def test_pump_detunings(self):
        params = decoupled_quadratic().replace(delta_a=0.3)
        e_p1, e_p2_half = pump_detunings(params, QUADRATIC)
        assert e_p1 == pytest.approx(0.0, abs=1e-12)
        assert e_p2_half == pytest.approx(0.0, abs=1e-12)

    def test_singular_point(self):
        params = QuadraticParams(gamma_a=1.0, gamma_b=0.0, g=0.1)
        point = correlation_point(params, QUADRATIC)
        assert Status.of(point.born_status) == Status.SINGULAR_RESOLVENT
        with pytest.raises(SingularResolventError):
            g2_full(params, QUADRATIC)


class TestHybridBasePoint:
    def test_status(self):
        point = correlation_point(base_params(), HYBRID)
        assert Status.of(point.born_status) == Status.OK
        assert Status.of(point.spectral_status) == Status.OK

    def test_deep_antibunching(self):
        point = correlation_point(base_params(), HYBRID)
        assert float(point.g2) < 1e-2
        assert float(point.g3) < float(point.g2)

    def test_two_state_agreement(self):
        point = correlation_point(base_params(), HYBRID)
        assert float(point.g2_two_state) == pytest.approx(float(point.g2), rel=0.1)

    def test_tampering_removes_antibunching(self):
        g2 = g2_tampered(base_params(), HYBRID)
        assert 0.5 <= g2 <= 2.0

    def test_analytic_limit(self):
        params = base_params().replace(gamma_e=0.0)
        full = g2_full(params, HYBRID)
        analytic = float(g2_hybrid_analytic(params))
        assert full == pytest.approx(analytic, rel=0.3)

    def test_narrow_widths(self):
        point = correlation_point(base_params(), HYBRID)
        assert float(point.gamma_p1) < 1e-3
        assert point.decay_q1.shape == (3,)
        assert point.decay_q2.shape == (5,)
        assert float(point.gamma_p1) == pytest.approx(float(point.decay_q1[0]))


class TestTampering:
    def test_identity_when_losses_already_harmonic(self):
        # gamma_a = 2 gamma_b: every width in manifold q equals q gamma_b.
        params = QuadraticParams(gamma_a=1.0, gamma_b=0.5, g=0.3)
        for detuning in (0.0, 0.2):
            point = correlation_point(params, QUADRATIC, detuning)
            assert float(point.g2_tampered) == pytest.approx(float(point.g2), rel=1e-8)
            assert float(point.g3_tampered) == pytest.approx(float(point.g3), rel=1e-8)
            assert float(point.intensity_tampered) == pytest.approx(
                float(point.intensity_rel), rel=1e-8
            )

    def test_quadratic_resonance_becomes_coherent(self):
        params = QuadraticParams(gamma_a=1.0, gamma_b=1e-3, g=0.05)
        assert g2_full(params, QUADRATIC) < 0.01
        assert g2_tampered(params, QUADRATIC) == pytest.approx(1.0, rel=1e-6)


class TestTwoStateLaw:
    def test_quadratic_weak_coupling(self):
        params = QuadraticParams(gamma_a=1.0, gamma_b=1e-3, g=0.02)
        point = correlation_point(params, QUADRATIC)
        law = (2.0 * float(point.gamma_p1) / float(point.gamma_p2)) ** 2
        assert float(point.g2_two_state) == pytest.approx(law, rel=0.03)
        assert float(point.gamma_p2) == pytest.approx(
            2.0 * params.gamma_b * (1.0 + float(params.cooperativity)), rel=0.01
        )


class TestEquivalence:
    @pytest.mark.parametrize("detuning", [-0.3, 0.0, 0.05])
    def test_hybrid(self, detuning):
        point = correlation_point(base_params(), HYBRID, detuning)
        assert float(point.intensity_resolved) == pytest.approx(
            float(point.intensity_rel), rel=1e-8
        )
        assert float(point.g2_resolved) == pytest.approx(float(point.g2), rel=1e-8)
        assert float(point.g3_resolved) == pytest.approx(float(point.g3), rel=1e-6)

    def test_quadratic(self):
        params = QuadraticParams(gamma_a=1.0, gamma_b=0.5, g=0.3, delta_a=0.1)
        point = correlation_point(params, QUADRATIC, 0.2)
        assert float(point.g2_resolved) == pytest.approx(float(point.g2), rel=1e-9)


class TestScaling:
    @pytest.mark.parametrize("lam", [0.1, 10.0])
    def test_invariance(self, lam):
        params = base_params()
        base = correlation_point(params, HYBRID, 0.01)
        scaled = correlation_point(params.scaled(lam), HYBRID, 0.01 * lam)
        assert float(scaled.g2) == pytest.approx(float(base.g2), rel=1e-9)
        assert float(scaled.g3) == pytest.approx(float(base.g3), rel=1e-9)
        assert float(scaled.intensity_rel) == pytest.approx(
            float(base.intensity_rel) / lam**2, rel=1e-9
        )


class TestBatched:
    def test_vmap_matches_eager(self):
        params = base_params()
        settings = NumericSettings()
        detunings = jnp.linspace(-0.2, 0.2, 5)

        @jax.jit
        @jax.vmap
        def sweep(w):
            return evaluate_point(params, HYBRID.at(w), settings)

        points = sweep(detunings)
        assert len(points) == 5
        eager = correlation_point(params, HYBRID, float(detunings[1]))
        assert float(points[1].g2) == pytest.approx(float(eager.g2), rel=1e-10)
        assert float(points[1].intensity_rel) == pytest.approx(
            float(eager.intensity_rel), rel=1e-10
        )

    def test_checks_pass_inside_checkify(self):
        with nhblockade.do_checkify():
            point = correlation_point(base_params(), HYBRID)
        assert Status.of(point.born_status) == Status.OK

    def test_requires_second_manifold(self):
        with pytest.raises(ValueError, match="q_max"):
            evaluate_point(base_params(), HYBRID, NumericSettings(q_max=1))
