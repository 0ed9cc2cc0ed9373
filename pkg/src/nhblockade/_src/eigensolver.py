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
"""Eigendecomposition of complex-symmetric manifold Hamiltonians.

For a complex-symmetric matrix the left eigenvector of an eigenvalue is the transpose
(not the conjugate transpose) of the right one, so right vectors are normalized with
the bilinear c-product `v^T v = 1`. A vector whose c-norm vanishes is self-orthogonal:
the matrix sits at (or numerically next to) an exceptional point, and the spectral
sums built on the eigensystem are ill-defined there.
"""

import warnings

import jax.numpy as jnp
from jax.experimental import checkify

from nhblockade._src.checkify import call_checked, optional_check
from nhblockade._src.core.errors import NHPBError, Status
from nhblockade._src.core.pytree import Pytree
from nhblockade._src.core.settings import (
    ACCESSIBILITY_THRESHOLD,
    EXCEPTIONAL_POINT_TOL,
    SYMMETRY_TOL,
)
from nhblockade._src.core.typing import (
    ArrayLike,
    ComplexArray,
    ComplexMatrix,
    ComplexVector,
    FloatArray,
    IntArray,
    Real,
)
from nhblockade._src.hamiltonians import (
    HybridParams,
    ModelParams,
    build_manifold_hamiltonian,
)


class ExceptionalPointError(NHPBError):
    pass


class NoAccessibleStateError(NHPBError):
    pass


@Pytree.dataclass
class Eigensystem(Pytree):
    """Eigenvalues `E_j - (i/2) Gamma_j` sorted by ascending `Gamma_j`.

    Column `j` of `right_vectors` is the c-normalized eigenvector of `eigenvalues[j]`;
    column `j` of `left_vectors` is its dual, `left[:, j]^T right[:, k] = delta_jk`.
    For non-degenerate spectra the two coincide."""

    eigenvalues: ComplexArray
    right_vectors: ComplexArray
    left_vectors: ComplexArray
    min_self_overlap: FloatArray
    status: IntArray

    @property
    def dimension(self) -> int:
        return self.eigenvalues.shape[-1]

    @property
    def widths(self) -> FloatArray:
        return -2.0 * jnp.imag(self.eigenvalues)

    @property
    def energies(self) -> FloatArray:
        return jnp.real(self.eigenvalues)

    def vector(self, j: ArrayLike) -> ComplexVector:
        return jnp.take(self.right_vectors, j, axis=-1)

    def left(self, j: ArrayLike) -> ComplexVector:
        return jnp.take(self.left_vectors, j, axis=-1)

    def reconstruct(self) -> ComplexMatrix:
        """`sum_j E_j v_j w_j^T`."""
        return (self.right_vectors * self.eigenvalues) @ self.left_vectors.T


def asymmetry(h: ComplexMatrix) -> FloatArray:
    scale = jnp.maximum(jnp.max(jnp.abs(h)), 1.0)
    return jnp.max(jnp.abs(h - h.T)) / scale


def eigensystem(
    h: ComplexMatrix,
    exceptional_point_tol: Real = EXCEPTIONAL_POINT_TOL,
) -> Eigensystem:
    """Traceable eigendecomposition; a self-orthogonal vector is reported through
    `status` instead of being raised."""

    def _check():
        checkify.check(
            asymmetry(h) <= SYMMETRY_TOL,
            "Matrix is not complex-symmetric.",
        )

    optional_check(_check)

    h = 0.5 * (h + h.T)
    vals, vecs = jnp.linalg.eig(h)
    self_overlap = jnp.sum(vecs * vecs, axis=0)
    min_overlap = jnp.min(jnp.abs(self_overlap))
    vecs = vecs / jnp.sqrt(self_overlap)

    order = jnp.argsort(-2.0 * jnp.imag(vals), stable=True)
    vals = vals[order]
    vecs = vecs[:, order]
    left = jnp.linalg.inv(vecs).T

    status = jnp.where(
        min_overlap < exceptional_point_tol,
        Status.EXCEPTIONAL_POINT,
        Status.OK,
    ).astype(jnp.int32)
    return Eigensystem(vals, vecs, left, min_overlap, status)


def eigendecompose(
    h: ArrayLike,
    exceptional_point_tol: Real = EXCEPTIONAL_POINT_TOL,
    symmetry_tol: Real = SYMMETRY_TOL,
) -> Eigensystem:
    """Complete eigensystem of a complex-symmetric matrix, sorted by ascending width.

    Raises `ValueError` when `h` is not complex-symmetric within `symmetry_tol`
    (relative to its largest entry), and `ExceptionalPointError` when some eigenvector
    has `|v^T v| < exceptional_point_tol` before normalization.
    """
    h = jnp.asarray(h, dtype=jnp.complex128)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError(f"Expected a square matrix, got shape {h.shape}.")
    skew = float(asymmetry(h))
    if skew > symmetry_tol:
        raise ValueError(
            f"Matrix is not complex-symmetric (relative asymmetry {skew:.3e})."
        )
    if skew > 0.0:
        warnings.warn(f"Symmetrizing a matrix with relative asymmetry {skew:.3e}.")
    es = call_checked(eigensystem, h, exceptional_point_tol)
    if Status.of(es.status) == Status.EXCEPTIONAL_POINT:
        raise ExceptionalPointError(
            f"Self-orthogonal eigenvector, |v^T v| = {float(es.min_self_overlap):.3e}."
        )
    return es


def select_narrowest(
    es: Eigensystem,
    access_amplitudes: ArrayLike,
    accessibility_threshold: Real = ACCESSIBILITY_THRESHOLD,
) -> tuple[IntArray, IntArray]:
    """Traceable `narrowest_accessible`: returns `(index, status)`.

    Ties in width are broken by the larger amplitude, then by the lower index."""
    magnitude = jnp.abs(jnp.asarray(access_amplitudes))
    accessible = magnitude > accessibility_threshold * jnp.max(magnitude)
    masked_widths = jnp.where(accessible, es.widths, jnp.inf)
    index = jnp.arange(es.dimension)
    ranked = jnp.lexsort((index, -magnitude, masked_widths))
    status = jnp.where(
        jnp.any(accessible), Status.OK, Status.NO_ACCESSIBLE_STATE
    ).astype(jnp.int32)
    return ranked[0], status


def narrowest_accessible(
    es: Eigensystem,
    access_amplitudes: ArrayLike,
    accessibility_threshold: Real = ACCESSIBILITY_THRESHOLD,
) -> int:
    index, status = select_narrowest(es, access_amplitudes, accessibility_threshold)
    if Status.of(status) != Status.OK:
        raise NoAccessibleStateError(
            "No eigenstate passes the accessibility threshold "
            f"{accessibility_threshold:g} relative to the largest pumping amplitude."
        )
    return int(index)


def mode_component(
    es: Eigensystem,
    j: ArrayLike,
    number_block: ComplexMatrix,
) -> FloatArray:
    """`|v_j^T N v_j|`, the c-product expectation of a number operator."""
    v = es.vector(j)
    return jnp.abs(v @ number_block @ v)


def decay_spectrum(params: ModelParams, q: int) -> FloatArray:
    """All decay rates of manifold `q` divided by `q`, ascending."""
    es = call_checked(eigensystem, build_manifold_hamiltonian(params, q))
    return es.widths / q


###############################
# First-manifold perturbation #
###############################


@Pytree.dataclass
class ConditionReport(Pytree):
    """Both sides of the two conditions under which the narrow first-manifold state
    of the hybrid model stays decoupled from `a2`, the complex quantities `A_plus`,
    `A_minus`, and the first-order correction to that state."""

    lhs_1: FloatArray
    rhs_1: FloatArray
    lhs_2: FloatArray
    rhs_2: FloatArray
    a_plus: ComplexArray
    a_minus: ComplexArray
    zeroth_order: ComplexArray
    correction: ComplexArray
    correction_norm: FloatArray

    def ratios(self) -> tuple[FloatArray, FloatArray]:
        return self.lhs_1 / self.rhs_1, self.lhs_2 / self.rhs_2


def p1_perturbation_diagnostics(params: HybridParams) -> ConditionReport:
    """Evaluate the first-order correction to the narrow q=1 state of the hybrid
    model, treating `g_1`, `gamma_1` and `gamma_e` as perturbations around the
    decoupled eigenvector `(-d, g_2, 0)`.

    Detunings are not part of the perturbation and are ignored."""
    g1, g2, d = params.g_1, params.g_2, params.d
    gamma_e, gamma_1, gamma_2 = params.gamma_e, params.gamma_1, params.gamma_2
    s = d**2 + g2**2
    if isinstance(s, float) and s == 0.0:
        raise ValueError("Either g_2 or d must be nonzero.")
    root = jnp.sqrt(jnp.asarray(16.0 * s - gamma_2**2, dtype=jnp.complex128))
    a_pm = (-1j * gamma_2 + root, -1j * gamma_2 - root)
    numerator = 16.0 * (g1 * (d**2 - g2**2) + 1j * d * g2 * (gamma_1 - gamma_e) / 2.0)

    correction = jnp.zeros(3, dtype=jnp.complex128)
    for a in a_pm:
        norm = jnp.sqrt(a**2 + 16.0 * s)
        v = jnp.stack([g2 + 0j, d + 0j, a / 4.0]) * 4.0 / norm
        correction = correction + numerator / (a * jnp.sqrt(s) * norm) * v

    zeroth = jnp.stack([-d + 0j, g2 + 0j, jnp.zeros_like(d + 0j)]) / jnp.sqrt(s)
    return ConditionReport(
        lhs_1=jnp.abs(gamma_1 - gamma_e) / 4.0,
        rhs_1=jnp.asarray(2.0 * s / gamma_2),
        lhs_2=jnp.asarray(g1 * jnp.abs(d**2 - g2**2)),
        rhs_2=jnp.asarray(2.0 * s**2 / gamma_2),
        a_plus=a_pm[0],
        a_minus=a_pm[1],
        zeroth_order=zeroth,
        correction=correction,
        correction_norm=jnp.linalg.norm(correction),
    )

