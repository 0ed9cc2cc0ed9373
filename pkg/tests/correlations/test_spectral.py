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

import jax.numpy as jnp
import pytest

from nhblockade.core import NumericSettings, Status
from nhblockade.correlations import (
    DriveBlocks,
    resolved_alphas,
    spectral_analysis,
    tampered_eigenvalues,
    two_state_g2,
)
from nhblockade.hamiltonians import DriveSpec, HybridParams, QuadraticParams


@pytest.fixture
def hybrid():
    params = HybridParams(
        gamma_e=1e-5, gamma_1=1e-3, gamma_2=1.0, g_1=0.0, g_2=1 / 15, d=0.1
    )
    drive = DriveSpec.default_for("hybrid")
    blocks = DriveBlocks.build(params.layout(), drive, 3)
    return params, drive, blocks


class TestSpectralAnalysis:
    def test_narrowest_states(self, hybrid):
        params, _, blocks = hybrid
        analysis = spectral_analysis(params, blocks, NumericSettings())
        assert analysis.q_max == 3
        assert Status.of(analysis.status) == Status.OK
        assert int(analysis.p(1)) == 0
        assert float(analysis.narrowest_width(1)) < float(
            analysis.manifold(1).widths[1]
        )
        assert [a.shape for a in analysis.access_amplitudes] == [(3,), (5,), (7,)]

    def test_tampered_widths(self, hybrid):
        params, _, blocks = hybrid
        analysis = spectral_analysis(params, blocks, NumericSettings())
        gamma_p1 = analysis.narrowest_width(1)
        for q, energies in enumerate(tampered_eigenvalues(analysis), start=1):
            assert jnp.allclose(-2.0 * jnp.imag(energies), q * gamma_p1)
            assert jnp.allclose(
                jnp.real(energies), analysis.manifold(q).energies, atol=1e-15
            )

    def test_narrowest_only_keeps_one_pathway(self, hybrid):
        params, drive, blocks = hybrid
        analysis = spectral_analysis(params, blocks, NumericSettings())
        alphas = resolved_alphas(
            analysis, blocks, drive.laser_detuning, narrowest_only=True
        )
        for q, alpha in enumerate(alphas, start=1):
            assert int(jnp.sum(alpha != 0.0)) == 1
            assert alpha[analysis.p(q)] != 0.0

    def test_no_accessible_state(self):
        # A threshold above one rejects every state.
        params = QuadraticParams(gamma_a=1.0, gamma_b=1e-3, g=0.0)
        drive = DriveSpec.default_for("quadratic")
        blocks = DriveBlocks.build(params.layout(), drive, 2)
        settings = NumericSettings(accessibility_threshold=2.0, q_max=2)
        analysis = spectral_analysis(params, blocks, settings)
        assert Status.of(analysis.status) == Status.NO_ACCESSIBLE_STATE

    def test_blocks_shorter_than_q_max(self):
        params = QuadraticParams(gamma_a=1.0, gamma_b=1e-3, g=0.1)
        drive = DriveSpec.default_for("quadratic")
        blocks = DriveBlocks.build(params.layout(), drive, 2)
        with pytest.raises(ValueError, match="q_max = 3"):
            spectral_analysis(params, blocks, NumericSettings())


class TestTwoStateFormula:
    def test_decoupled_mode(self):
        params = QuadraticParams(gamma_a=1.0, gamma_b=1e-3, g=0.0)
        drive = DriveSpec.default_for("quadratic")
        blocks = DriveBlocks.build(params.layout(), drive, 2)
        analysis = spectral_analysis(params, blocks, NumericSettings(q_max=2))
        g2 = two_state_g2(analysis, blocks, drive.laser_detuning)
        assert float(g2) == pytest.approx(1.0, rel=1e-10)
