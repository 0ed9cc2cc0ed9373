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
"""Brute-force Lindblad master equation in a truncated Fock space.

This is an independent check of the weak-drive machinery: the coherently driven
system is written out in the full product space (emitter first, then the bosonic
modes), the Liouvillian is vectorized row-major (`vec(A rho B) = (A kron B^T)
vec(rho)`) and its trace-one null vector is found by a dense solve. Nothing here
uses manifolds, the Born series or non-Hermitian eigenstates.
"""

import logging
import warnings
from functools import reduce

import jax
import jax.numpy as jnp
import jax.scipy.linalg as jsl
import numpy as np

from nhblockade._src.checkify import checks_enabled
from nhblockade._src.core.errors import NHPBError
from nhblockade._src.core.fock import (
    FactorKind,
    ModeLayout,
    OperatorSpec,
    number_mode,
    sigma_z_projector,
)
from nhblockade._src.core.pytree import Pytree
from nhblockade._src.core.settings import CONVERGENCE_BOUND
from nhblockade._src.core.typing import (
    ComplexArray,
    ComplexMatrix,
    FloatArray,
    Real,
    static_check_is_concrete,
)
from nhblockade._src.eigensolver import decay_spectrum
from nhblockade._src.hamiltonians import DriveSpec, ModelParams

logger = logging.getLogger(__name__)

DIMENSION_LIMIT = 10_000
DEFAULT_DRIVE_FRACTION = 1e-2
HERMITICITY_TOL = 1e-8


class DimensionLimitError(NHPBError):
    pass


class NonUniqueSteadyStateError(NHPBError):
    pass


class ZeroIntensityError(NHPBError, ZeroDivisionError):
    pass


@Pytree.dataclass
class TruncationSpec(Pytree):
    """Per-mode maximum occupation (the emitter is always two-level) and the drive
    amplitude `omega`, in units of the reference rate. `omega = 0` gives the undriven
    generator, whose steady state is the vacuum."""

    n_max: tuple[int, ...] = Pytree.static()
    omega: Real = Pytree.field()

    def __post_init__(self):
        if any(n < 2 for n in self.n_max):
            raise ValueError(f"Every n_max must be at least 2, got {self.n_max}.")
        if static_check_is_concrete(self.omega) and not float(self.omega) >= 0.0:
            raise ValueError("The drive amplitude must be non-negative.")

    def dims(self, layout: ModeLayout) -> tuple[int, ...]:
        if len(self.n_max) != layout.bosonic_mode_count:
            raise ValueError(
                f"Expected {layout.bosonic_mode_count} truncations, got {len(self.n_max)}."
            )
        emitter = (2,) if layout.emitter_present else ()
        return emitter + tuple(n + 1 for n in self.n_max)

    def with_n_max(self, n_max: tuple[int, ...]) -> "TruncationSpec":
        return TruncationSpec(n_max, self.omega)


def narrowest_linewidth(params: ModelParams) -> float:
    """Smallest decay rate among the single-excitation eigenstates."""
    return float(jnp.min(decay_spectrum(params, 1)))


def default_truncation(
    params: ModelParams,
    omega: Real | None = None,
) -> TruncationSpec:
    """`n_max = (4, 4)` for the hybrid model, `(3, 4)` for `(a, b)` in the quadratic
    model; `omega` defaults to a hundredth of the narrowest linewidth."""
    n_max = (4, 4) if params.layout().emitter_present else (3, 4)
    if omega is None:
        omega = DEFAULT_DRIVE_FRACTION * narrowest_linewidth(params)
    return TruncationSpec(n_max, omega)


###############################
# Full-space operator algebra #
###############################


def _factor_matrix(kind: FactorKind, dim: int) -> np.ndarray:
    lower = np.diagflat(np.sqrt(np.arange(1, dim)), 1)
    match kind:
        case FactorKind.LOWER | FactorKind.SIGMA_MINUS:
            return lower
        case FactorKind.RAISE | FactorKind.SIGMA_PLUS:
            return lower.T
        case FactorKind.NUMBER | FactorKind.SIGMA_Z_PROJECTOR:
            return np.diagflat(np.arange(dim).astype(float))


def full_space_operator(
    op: OperatorSpec,
    layout: ModeLayout,
    dims: tuple[int, ...],
) -> ComplexMatrix:
    """Matrix of `op` on the truncated product space with subsystem dimensions
    `dims` (emitter first when present)."""
    offset = 1 if layout.emitter_present else 0
    total = int(np.prod(dims))
    out = np.eye(total, dtype=np.complex128)
    for kind, k in op.factors:
        slot = 0 if kind.acts_on_emitter else offset + layout.check_mode(k)
        local = [np.eye(n) for n in dims]
        local[slot] = _factor_matrix(kind, dims[slot])
        out = out @ reduce(np.kron, local)
    return jnp.asarray(out)


def left_multiplication(m: ComplexMatrix) -> ComplexMatrix:
    return jnp.kron(m, jnp.eye(m.shape[0], dtype=m.dtype))


def right_multiplication(m: ComplexMatrix) -> ComplexMatrix:
    return jnp.kron(jnp.eye(m.shape[0], dtype=m.dtype), m.T)


def dissipator(lowering: ComplexMatrix) -> ComplexMatrix:
    """`L rho L^dagger - {L^dagger L, rho} / 2` as a superoperator."""
    lt = lowering.conj().T
    ltl = lt @ lowering
    return left_multiplication(lowering) @ right_multiplication(lt) - 0.5 * (
        left_multiplication(ltl) + right_multiplication(ltl)
    )


def driven_hamiltonian(
    params: ModelParams,
    drive: DriveSpec,
    trunc: TruncationSpec,
) -> ComplexMatrix:
    """Hermitian Hamiltonian in the frame rotating at the laser frequency, with the
    drive `omega (a_p + a_p^dagger)` on the pumped mode."""
    layout = params.layout()
    dims = trunc.dims(layout)
    h = jnp.zeros((int(np.prod(dims)),) * 2, dtype=jnp.complex128)
    for op, coeff in params.coherent_terms():
        h = h + coeff * full_space_operator(op, layout, dims)
    weighted = sum(
        w * full_space_operator(number_mode(k), layout, dims)
        for k, w in enumerate(layout.excitation_weights)
    )
    if layout.emitter_present:
        weighted = weighted + full_space_operator(sigma_z_projector(), layout, dims)
    h = h - drive.laser_detuning * weighted
    pump = full_space_operator(drive.pump_raise(), layout, dims)
    return h + trunc.omega * (pump + pump.conj().T)


def build_liouvillian(
    params: ModelParams,
    drive: DriveSpec,
    trunc: TruncationSpec,
) -> ComplexMatrix:
    """Row-major vectorized generator `d vec(rho)/dt = L vec(rho)`.

    Raises `DimensionLimitError` when the superoperator would exceed
    `DIMENSION_LIMIT` rows."""
    layout = params.layout()
    drive.check_layout(layout)
    dims = trunc.dims(layout)
    rows = int(np.prod(dims)) ** 2
    if rows > DIMENSION_LIMIT:
        raise DimensionLimitError(
            f"Truncation {trunc.n_max} gives a {rows}-row Liouvillian "
            f"(limit {DIMENSION_LIMIT})."
        )
    return _liouvillian(params, drive, trunc)


@jax.jit
def _liouvillian(
    params: ModelParams,
    drive: DriveSpec,
    trunc: TruncationSpec,
) -> ComplexMatrix:
    layout = params.layout()
    dims = trunc.dims(layout)
    h = driven_hamiltonian(params, drive, trunc)
    generator = -1j * (left_multiplication(h) - right_multiplication(h))
    for op, rate in params.dissipators():
        generator = generator + rate * dissipator(full_space_operator(op, layout, dims))
    return generator


#################
# Steady states #
#################


@Pytree.dataclass
class DensityOperator(Pytree):
    """A steady state together with the system it belongs to. `hermiticity_deviation`
    records the largest `|rho - rho^dagger|` entry before symmetrization and
    `residual` the norm of `L vec(rho)`."""

    matrix: ComplexArray
    omega: Real
    hermiticity_deviation: FloatArray
    residual: FloatArray
    layout: ModeLayout = Pytree.static()
    dims: tuple[int, ...] = Pytree.static()

    @property
    def trace(self) -> ComplexArray:
        return jnp.trace(self.matrix)

    def min_eigenvalue(self) -> FloatArray:
        return jnp.min(jnp.linalg.eigvalsh(self.matrix))

    def expect(self, op: OperatorSpec) -> ComplexArray:
        return jnp.trace(full_space_operator(op, self.layout, self.dims) @ self.matrix)


def steady_state(
    liouvillian: ComplexMatrix,
    residual_tol: Real = 1e-9,
) -> tuple[ComplexMatrix, FloatArray, FloatArray]:
    """Trace-one null vector of `liouvillian`, reshaped to a matrix, together with
    its Hermiticity deviation and residual.

    The first row of the linear system is replaced by the trace constraint. A
    non-finite solution, or a residual `|L vec(rho)|` above `residual_tol`, means
    the kernel is not one-dimensional and raises `NonUniqueSteadyStateError`. Inside
    `do_checkify` the kernel dimension is also checked with an SVD."""
    rows = liouvillian.shape[0]
    dim = int(round(np.sqrt(rows)))
    trace_row = jnp.eye(dim, dtype=liouvillian.dtype).reshape(-1)
    system = liouvillian.at[0].set(trace_row)
    rhs = jnp.zeros(rows, dtype=liouvillian.dtype).at[0].set(1.0)

    lu = jsl.lu_factor(system)
    x = jsl.lu_solve(lu, rhs)
    # one step of iterative refinement
    x = x + jsl.lu_solve(lu, rhs - system @ x)
    if not bool(jnp.all(jnp.isfinite(x))):
        raise NonUniqueSteadyStateError("The steady-state system is singular.")

    rho = x.reshape(dim, dim)
    deviation = jnp.max(jnp.abs(rho - rho.conj().T))
    if float(deviation) > HERMITICITY_TOL:
        warnings.warn(
            f"Steady state deviates from Hermiticity by {float(deviation):.2e}."
        )
    rho = 0.5 * (rho + rho.conj().T)
    rho = rho / jnp.trace(rho)
    residual = jnp.linalg.norm(liouvillian @ rho.reshape(-1))
    if not float(residual) <= residual_tol:
        raise NonUniqueSteadyStateError(
            f"Steady-state residual {float(residual):.3e} exceeds {residual_tol:g}."
        )
    if checks_enabled():
        singular_values = jnp.linalg.svd(liouvillian, compute_uv=False)
        if not float(singular_values[-2] / singular_values[0]) > 1e-13:
            raise NonUniqueSteadyStateError("The Liouvillian kernel is degenerate.")
    return rho, deviation, residual


def solve_steady_state(
    params: ModelParams,
    drive: DriveSpec,
    trunc: TruncationSpec | None = None,
) -> DensityOperator:
    if trunc is None:
        trunc = default_truncation(params)
    liouvillian = build_liouvillian(params, drive, trunc)
    logger.debug(
        "Solving a %d-row Liouvillian for n_max=%s.", liouvillian.shape[0], trunc.n_max
    )
    rho, deviation, residual = steady_state(liouvillian)
    layout = params.layout()
    return DensityOperator(
        rho, trunc.omega, deviation, residual, layout, trunc.dims(layout)
    )


@Pytree.dataclass
class OracleCorrelations(Pytree):
    intensity: FloatArray
    intensity_rel: FloatArray
    g2: FloatArray
    g3: FloatArray


def oracle_correlations(
    rho: DensityOperator,
    drive: DriveSpec,
    detector: OperatorSpec | None = None,
) -> OracleCorrelations:
    """Normal-ordered moments of the detected lowering operator (the detect mode
    unless `detector` is given): `I = <a^dagger a>`, `g2 = <a^dagger^2 a^2> / I^2`,
    `g3 = <a^dagger^3 a^3> / I^3`. `intensity_rel` is `I / omega^2`."""
    a = full_space_operator(detector or drive.detect_lower(), rho.layout, rho.dims)
    ad = a.conj().T
    moments = []
    raised, lowered = ad, a
    for _ in range(3):
        moments.append(jnp.real(jnp.trace(raised @ lowered @ rho.matrix)))
        raised, lowered = raised @ ad, lowered @ a
    intensity = moments[0]
    if not float(intensity) > 0.0:
        raise ZeroIntensityError("The detected intensity vanishes.")
    return OracleCorrelations(
        intensity=intensity,
        intensity_rel=intensity / rho.omega**2,
        g2=moments[1] / intensity**2,
        g3=moments[2] / intensity**3,
    )


def run_oracle(
    params: ModelParams,
    drive: DriveSpec,
    trunc: TruncationSpec | None = None,
) -> OracleCorrelations:
    return oracle_correlations(solve_steady_state(params, drive, trunc), drive)


###############
# Diagnostics #
###############


@Pytree.dataclass
class ConvergenceReport(Pytree):
    n_max: tuple[tuple[int, ...], ...] = Pytree.static()
    g2: tuple[float, ...] = Pytree.static()
    relative_differences: tuple[float, ...] = Pytree.static()
    bound: float = Pytree.static()
    omega: float = Pytree.static()
    drive_ratio: float = Pytree.static()

    @property
    def converged(self) -> bool:
        return self.relative_differences[-1] <= self.bound

    @property
    def non_perturbative(self) -> bool:
        """The drive is not small against the narrowest linewidth, so comparisons
        with the weak-drive results are not meaningful."""
        return self.drive_ratio > 0.1

    @property
    def monotone(self) -> bool:
        diffs = self.relative_differences
        return all(b <= a for a, b in zip(diffs, diffs[1:]))


def convergence_check(
    params: ModelParams,
    drive: DriveSpec,
    trunc_list: list[TruncationSpec] | tuple[TruncationSpec, ...],
    bound: float = CONVERGENCE_BOUND,
) -> ConvergenceReport:
    """Oracle `g2` for each truncation and the successive relative differences."""
    if len(trunc_list) < 2:
        raise ValueError("A convergence check needs at least two truncations.")
    g2 = tuple(float(run_oracle(params, drive, t).g2) for t in trunc_list)
    diffs = tuple(abs(b - a) / abs(b) for a, b in zip(g2, g2[1:]))
    omega = float(trunc_list[-1].omega)
    report = ConvergenceReport(
        n_max=tuple(t.n_max for t in trunc_list),
        g2=g2,
        relative_differences=diffs,
        bound=bound,
        omega=omega,
        drive_ratio=omega / narrowest_linewidth(params),
    )
    if not report.converged:
        warnings.warn(
            f"Oracle g2 not converged in n_max: last relative change {diffs[-1]:.2e} "
            f"exceeds {bound:g}."
        )
    return report


@Pytree.dataclass
class DrivePowerReport(Pytree):
    omega: float = Pytree.static()
    g2_full_drive: float = Pytree.static()
    g2_half_drive: float = Pytree.static()
    relative_change: float = Pytree.static()
    bound: float = Pytree.static()

    @property
    def weak_drive(self) -> bool:
        return self.relative_change < self.bound


def drive_power_check(
    params: ModelParams,
    drive: DriveSpec,
    trunc: TruncationSpec | None = None,
) -> DrivePowerReport:
    """Compare oracle `g2` at `omega` and `omega / 2` against the weak-drive bound
    `(omega / narrowest linewidth)^2`."""
    if trunc is None:
        trunc = default_truncation(params)
    omega = float(trunc.omega)
    full = float(run_oracle(params, drive, trunc).g2)
    half = float(run_oracle(params, drive, TruncationSpec(trunc.n_max, omega / 2.0)).g2)
    return DrivePowerReport(
        omega=omega,
        g2_full_drive=full,
        g2_half_drive=half,
        relative_change=abs(full - half) / abs(half),
        bound=(omega / narrowest_linewidth(params)) ** 2,
    )
