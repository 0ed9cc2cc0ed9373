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
"""Eigenstate-resolved correlators.

The Born resolvent is expanded in the eigenstates of each manifold,

    (H_q - q * laser_detuning)^-1 = sum_j |j)(j| / (E_j - q * laser_detuning),

so that every correlator becomes a sum over eigenstate pathways. Writing the sums out
makes it possible to restrict them to the narrowest accessible state of each manifold,
or to tamper with the decay rates while keeping every eigenvector and matrix element.
"""

import jax.numpy as jnp

from nhblockade._src.core.errors import first_failure
from nhblockade._src.core.pytree import Pytree
from nhblockade._src.core.settings import NumericSettings
from nhblockade._src.core.typing import (
    ComplexArray,
    FloatArray,
    IntArray,
    Real,
)
from nhblockade._src.correlations.born import DriveBlocks
from nhblockade._src.eigensolver import (
    Eigensystem,
    eigensystem,
    mode_component,
    select_narrowest,
)
from nhblockade._src.hamiltonians import ModelParams, build_manifold_hamiltonian


@Pytree.dataclass
class SpectralAnalysis(Pytree):
    """Eigensystems of manifolds `1 .. q_max` (tuple index `q - 1`), the narrowest
    accessible state `p_q` of each, and the pumping amplitudes used to select it.

    The pumping amplitude of state `j` in manifold 1 is `(j|V|0>`; in manifold
    `q > 1` it is `(j|V|p_{q-1})`."""

    eigensystems: tuple[Eigensystem, ...]
    narrowest: tuple[IntArray, ...]
    access_amplitudes: tuple[ComplexArray, ...]
    status: IntArray

    @property
    def q_max(self) -> int:
        return len(self.eigensystems)

    def p(self, q: int) -> IntArray:
        return self.narrowest[q - 1]

    def manifold(self, q: int) -> Eigensystem:
        return self.eigensystems[q - 1]

    def narrowest_eigenvalue(self, q: int) -> ComplexArray:
        return self.manifold(q).eigenvalues[self.p(q)]

    def narrowest_width(self, q: int) -> FloatArray:
        return self.manifold(q).widths[self.p(q)]


def spectral_analysis(
    params: ModelParams,
    blocks: DriveBlocks,
    settings: NumericSettings,
) -> SpectralAnalysis:
    if len(blocks.pump) <= settings.q_max:
        raise ValueError(
            f"Drive blocks reach manifold {len(blocks.pump) - 1}, but the settings "
            f"ask for q_max = {settings.q_max}."
        )
    systems, indices, amplitudes, codes = [], [], [], []
    previous = jnp.ones(1, dtype=jnp.complex128)
    for q in range(1, settings.q_max + 1):
        es = eigensystem(
            build_manifold_hamiltonian(params, q),
            settings.exceptional_point_tol,
        )
        amps = es.left_vectors.T @ (blocks.pump[q] @ previous)
        index, code = select_narrowest(es, amps, settings.accessibility_threshold)
        systems.append(es)
        indices.append(index)
        amplitudes.append(amps)
        codes.extend([es.status, code])
        previous = es.vector(index)
    return SpectralAnalysis(
        tuple(systems),
        tuple(indices),
        tuple(amplitudes),
        first_failure(*codes),
    )


def resolved_alphas(
    analysis: SpectralAnalysis,
    blocks: DriveBlocks,
    laser_detuning: Real,
    eigenvalues: tuple[ComplexArray, ...] | None = None,
    narrowest_only: bool = False,
) -> tuple[ComplexArray, ...]:
    """Expansion coefficients of the Born vectors on the right eigenvectors,

        alpha^(q)_j = -(j|V_up c_{q-1}) / (E_j - q * laser_detuning),

    with `c_{q-1}` rebuilt from the previous manifold's coefficients. `eigenvalues`
    replaces the complex energies (tampering); `narrowest_only` keeps the single
    pathway through `p_1, p_2, ...`."""
    alphas = []
    c = jnp.ones(1, dtype=jnp.complex128)
    for q in range(1, analysis.q_max + 1):
        es = analysis.manifold(q)
        energies = es.eigenvalues if eigenvalues is None else eigenvalues[q - 1]
        overlaps = es.left_vectors.T @ (blocks.pump[q] @ c)
        alpha = -overlaps / (energies - q * laser_detuning)
        if narrowest_only:
            alpha = jnp.where(jnp.arange(es.dimension) == analysis.p(q), alpha, 0.0)
        alphas.append(alpha)
        c = es.right_vectors @ alpha
    return tuple(alphas)


def eigenstate_correlators(
    analysis: SpectralAnalysis,
    blocks: DriveBlocks,
    alphas: tuple[ComplexArray, ...],
) -> tuple[FloatArray, ...]:
    """Unnormalized `G^(q)` as the double sum over eigenstates `m, n` of manifold `q`:

        G^(q) = |sum_{m,n} conj(alpha_m) alpha_n (m| E- ... E+ |n)|.
    """
    out = []
    for q, alpha in enumerate(alphas, start=1):
        es = analysis.manifold(q)
        detected = blocks.detection_chain(q) @ es.right_vectors
        pathway = alpha * detected
        out.append(jnp.abs(jnp.sum(jnp.outer(jnp.conj(pathway), pathway))))
    return tuple(out)


def normalize(correlators: tuple[FloatArray, ...]) -> tuple[FloatArray, ...]:
    """`(G1, G2, G3)` to `(I, g2, g3)`."""
    intensity = correlators[0]
    return (intensity,) + tuple(
        g / intensity**q for q, g in enumerate(correlators[1:], start=2)
    )


def tampered_eigenvalues(analysis: SpectralAnalysis) -> tuple[ComplexArray, ...]:
    """Every eigenvalue of manifold `q` becomes `E_j - (i/2) q Gamma_p1`."""
    gamma_p1 = analysis.narrowest_width(1)
    return tuple(
        jnp.real(analysis.manifold(q).eigenvalues) - 0.5j * q * gamma_p1
        for q in range(1, analysis.q_max + 1)
    )


def two_state_g2(
    analysis: SpectralAnalysis,
    blocks: DriveBlocks,
    laser_detuning: Real,
) -> FloatArray:
    """Second-order correlation from the narrowest states `p_1`, `p_2` alone, as the
    product of the Lorentzian ratio, the pumping factor and the detection factor,
    with every matrix element taken as a c-product."""
    es1, es2 = analysis.manifold(1), analysis.manifold(2)
    p1, p2 = analysis.p(1), analysis.p(2)
    e1, e2 = es1.eigenvalues[p1], es2.eigenvalues[p2]
    lorentzian = jnp.abs((e1 - laser_detuning) / (e2 / 2.0 - laser_detuning)) ** 2

    vacuum = jnp.ones(1, dtype=jnp.complex128)
    v10 = es1.left(p1) @ blocks.pump[1] @ vacuum
    v21 = es2.left(p2) @ blocks.pump[2] @ es1.vector(p1)
    pumping = jnp.abs(v21) ** 2 / (2.0 * jnp.abs(v10) ** 2)

    chain1 = blocks.detection_chain(1)
    chain2 = blocks.detection_chain(2)
    m1 = (es1.left(p1) @ chain1) * (chain1 @ es1.vector(p1))
    m2 = (es2.left(p2) @ chain2) * (chain2 @ es2.vector(p2))
    detection = jnp.abs(m2) / (2.0 * jnp.abs(m1) ** 2)
    return lorentzian * pumping * detection


def narrowest_components(
    analysis: SpectralAnalysis,
    blocks: DriveBlocks,
) -> tuple[FloatArray, ...]:
    """`(N1(p1), N1(p2), N2(p1), N2(p2))`: number-operator components of the first
    two bosonic modes in the narrowest states of manifolds 1 and 2."""
    out = []
    for k in (0, 1):
        for q in (1, 2):
            es = analysis.manifold(q)
            out.append(mode_component(es, analysis.p(q), blocks.numbers[k][q]))
    return tuple(out)
