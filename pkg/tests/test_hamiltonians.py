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
import numpy as np
import pytest

from nhblockade.hamiltonians import (
    DriveSpec,
    HybridParams,
    QuadraticParams,
    build_manifold_hamiltonian,
    detuned_hamiltonian,
    manifold_diagonal,
    reference_matrices_hybrid,
)


def random_hybrid(key) -> HybridParams:
    v = jax.random.uniform(key, (8,), minval=-1.0, maxval=1.0)
    return HybridParams(
        gamma_e=jnp.abs(v[0]),
        gamma_1=jnp.abs(v[1]),
        gamma_2=jnp.abs(v[2]),
        g_1=v[3],
        g_2=v[4],
        d=v[5],
        delta_e=v[6],
        delta_2=v[7],
    )


class TestHybridHamiltonian:
    def test_matches_transcribed_matrices(self):
        for key in jax.random.split(jax.random.key(314159), 20):
            params = random_hybrid(key)
            for q, reference in zip((1, 2), reference_matrices_hybrid(params)):
                h = build_manifold_hamiltonian(params, q)
                assert jnp.allclose(h, reference, rtol=0.0, atol=1e-14)

    def test_complex_symmetric(self):
        params = random_hybrid(jax.random.key(314159))
        for q in (1, 2, 3):
            h = build_manifold_hamiltonian(params, q)
            assert h.shape == (2 * q + 1, 2 * q + 1)
            assert jnp.array_equal(h, h.T)

    def test_diagonal_bookkeeping(self):
        params = random_hybrid(jax.random.key(314159))
        for q in (1, 2, 3):
            h = build_manifold_hamiltonian(params, q)
            assert jnp.allclose(jnp.diag(h), manifold_diagonal(params, q), atol=1e-14)

    def test_cooperativity(self):
        params = HybridParams(
            gamma_e=1e-5, gamma_1=1e-3, gamma_2=1.0, g_1=0.0, g_2=1 / 15, d=0.1
        )
        assert float(params.cooperativity) == pytest.approx(40.0)
        assert params.unit_rate == 1.0


class TestQuadraticHamiltonian:
    def test_second_manifold(self):
        params = QuadraticParams(gamma_a=1.0, gamma_b=1e-3, g=0.05, delta_a=0.2)
        h = build_manifold_hamiltonian(params, 2)
        s = 0.05 * np.sqrt(2.0)
        expected = jnp.array([[0.2 - 0.5j, s], [s, -1e-3j]])
        assert jnp.allclose(h, expected, atol=1e-15)

    def test_first_manifold(self):
        params = QuadraticParams(gamma_a=1.0, gamma_b=1e-3, g=0.05)
        h = build_manifold_hamiltonian(params, 1)
        assert jnp.allclose(h, jnp.array([[-0.5e-3j]]))

    def test_cooperativity(self):
        params = QuadraticParams(gamma_a=1.0, gamma_b=1e-3, g=0.1)
        assert float(params.cooperativity) == pytest.approx(40.0)

    def test_scaled(self):
        params = QuadraticParams(gamma_a=1.0, gamma_b=0.5, g=0.3, delta_a=0.1)
        scaled = params.scaled(10.0)
        assert scaled.as_dict() == pytest.approx({
            "gamma_a": 10.0,
            "gamma_b": 5.0,
            "g": 3.0,
            "delta_a": 1.0,
        })
        h = build_manifold_hamiltonian(params, 3)
        assert jnp.allclose(build_manifold_hamiltonian(scaled, 3), 10.0 * h)

    def test_validate(self):
        with pytest.raises(ValueError, match="gamma_b"):
            QuadraticParams(gamma_a=1.0, gamma_b=0.0, g=0.1).validate()
        with pytest.raises(ValueError, match="g must"):
            QuadraticParams(gamma_a=1.0, gamma_b=1.0, g=-0.1).validate()


class TestDriveSpec:
    def test_sign_convention(self):
        drive = DriveSpec.default_for("hybrid", 0.25)
        assert drive.laser_detuning == -0.25
        assert drive.at(-0.5).laser_detuning == 0.5

    def test_default_targets(self):
        assert DriveSpec.default_for("hybrid").pump_target == 0
        quadratic = DriveSpec.default_for("quadratic")
        assert quadratic.pump_target == quadratic.detect_target == 1

    def test_rejects_weighted_target(self):
        layout = QuadraticParams(gamma_a=1.0, gamma_b=1.0, g=0.1).layout()
        with pytest.raises(ValueError, match="unit excitation weight"):
            DriveSpec(0, 1).check_layout(layout)
        with pytest.raises(ValueError, match="out of range"):
            DriveSpec(1, 2).check_layout(layout)

    def test_detuned_hamiltonian(self):
        params = QuadraticParams(gamma_a=1.0, gamma_b=1e-3, g=0.05)
        h = build_manifold_hamiltonian(params, 2)
        shifted = detuned_hamiltonian(h, 2, 0.3)
        assert jnp.allclose(shifted, h - 0.6 * jnp.eye(2))
