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
"""Weak-drive Born series.

In the weak-drive limit the driven steady state is a power series in the drive
amplitude whose order-`q` term lives in manifold `q`:

    c_q = -(H_q - q * laser_detuning)^-1  V_up  c_{q-1},   c_0 = |0>,

where `V_up` is the raising half of the pump operator. Correlators follow by applying
the detector lowering operator `q` times and projecting on the vacuum.
"""

import jax.numpy as jnp
from jax.experimental import checkify

from nhblockade._src.checkify import call_checked, optional_check
from nhblockade._src.core.errors import NHPBError, Status
from nhblockade._src.core.fock import (
    ModeLayout,
    enumerate_manifold,
    number_mode,
    operator_block,
)
from nhblockade._src.core.pytree import Pytree
from nhblockade._src.core.settings import SINGULAR_RESIDUAL_TOL, NumericSettings
from nhblockade._src.core.typing import (
    ComplexArray,
    FloatArray,
    IntArray,
    Real,
)
from nhblockade._src.hamiltonians import (
    DriveSpec,
    ModelParams,
    build_manifold_hamiltonian,
    detuned_hamiltonian,
)


class SingularResolventError(NHPBError):
    pass


@Pytree.dataclass
class DriveBlocks(Pytree):
    """Constant operator blocks of one drive configuration, indexed by manifold.

    `pump[q]` maps manifold `q - 1` to `q`, `detect[q]` maps `q` to `q - 1`, and
    `numbers[k][q]` is the number operator of mode `k` on manifold `q`. Index 0 of
    `pump` and `detect` is unused."""

    pump: tuple[ComplexArray | None, ...]
    detect: tuple[ComplexArray | None, ...]
    numbers: tuple[tuple[ComplexArray, ...], ...]

    @classmethod
    def build(cls, layout: ModeLayout, drive: DriveSpec, q_max: int) -> "DriveBlocks":
        drive.check_layout(layout)
        bases = [enumerate_manifold(layout, q) for q in range(q_max + 1)]
        pump, detect = [None], [None]
        for q in range(1, q_max + 1):
            pump.append(operator_block(drive.pump_raise(), bases[q - 1], bases[q]))
            detect.append(operator_block(drive.detect_lower(), bases[q], bases[q - 1]))
        numbers = tuple(
            tuple(operator_block(number_mode(k), b, b) for b in bases)
            for k in range(layout.bosonic_mode_count)
        )
        return cls(tuple(pump), tuple(detect), numbers)

    def detection_chain(self, q: int) -> ComplexArray:
        """Row vector `<0| E+ ... E+` (q factors) on manifold `q`."""
        chain = jnp.ones((1, 1), dtype=jnp.complex128)
        for k in range(1, q + 1):
            chain = chain @ self.detect[k]
        return chain[0]


@Pytree.dataclass
class BornCoefficients(Pytree):
    """Per-manifold coefficient vectors `c_0 .. c_q_max` on the canonical bases."""

    coefficients: tuple[ComplexArray, ...]
    omega_L_detuning: Real
    layout: ModeLayout = Pytree.static()
    relative_residuals: FloatArray = Pytree.field()
    status: IntArray = Pytree.field()

    @property
    def q_max(self) -> int:
        return len(self.coefficients) - 1


def _solve_manifold(
    h: ComplexArray,
    rhs: ComplexArray,
    residual_tol: Real,
) -> tuple[ComplexArray, FloatArray, IntArray]:
    c = -jnp.linalg.solve(h, rhs)
    residual = jnp.linalg.norm(h @ c + rhs) / (
        jnp.linalg.norm(h) * jnp.linalg.norm(c) + jnp.linalg.norm(rhs)
    )
    singular_values = jnp.linalg.svd(h, compute_uv=False)
    conditioning = singular_values[-1] / singular_values[0]
    singular = (
        ~jnp.all(jnp.isfinite(c))
        | (residual > residual_tol)
        | (conditioning < residual_tol)
    )
    status = jnp.where(singular, Status.SINGULAR_RESOLVENT, Status.OK).astype(jnp.int32)
    return c, residual, status


def born_solution(
    params: ModelParams,
    drive: DriveSpec,
    q_max: int = 3,
    residual_tol: Real = SINGULAR_RESIDUAL_TOL,
) -> BornCoefficients:
    """Traceable Born recursion. A numerically singular `H_q - q * laser_detuning`
    is reported through `status` as `Status.SINGULAR_RESOLVENT`."""
    blocks = DriveBlocks.build(params.layout(), drive, q_max)
    coefficients = [jnp.ones(1, dtype=jnp.complex128)]
    residuals = []
    status = jnp.asarray(Status.OK, dtype=jnp.int32)
    for q in range(1, q_max + 1):
        h = detuned_hamiltonian(
            build_manifold_hamiltonian(params, q), q, drive.laser_detuning
        )
        source = blocks.pump[q] @ coefficients[-1]
        c, residual, code = _solve_manifold(h, source, residual_tol)
        coefficients.append(c)
        residuals.append(residual)
        status = jnp.where(status == Status.OK, code, status)

        def _check(residual=residual, q=q):
            checkify.check(
                residual <= 1e-10,
                f"Born recursion residual in manifold {q} exceeds 1e-10 (relative).",
            )

        optional_check(_check)

    return BornCoefficients(
        tuple(coefficients),
        drive.omega_L_detuning,
        params.layout(),
        jnp.stack(residuals),
        status,
    )


def born_coefficients(
    params: ModelParams,
    drive: DriveSpec,
    q_max: int = 3,
    residual_tol: Real = SINGULAR_RESIDUAL_TOL,
) -> BornCoefficients:
    """Born coefficients up to manifold `q_max`; raises `SingularResolventError` if a
    detuned manifold Hamiltonian is numerically singular at this laser detuning."""
    if not 1 <= q_max <= 3:
        raise ValueError(f"q_max must lie in 1..3, got {q_max}.")
    settings = NumericSettings(singular_residual_tol=residual_tol, q_max=q_max)
    bc = call_checked(_born_with_settings, params, drive, settings)
    _raise_if_singular(bc.status, drive)
    return bc


def _born_with_settings(
    params: ModelParams,
    drive: DriveSpec,
    settings: NumericSettings,
) -> BornCoefficients:
    return born_solution(params, drive, settings.q_max, settings.singular_residual_tol)


def _raise_if_singular(status: IntArray, drive: DriveSpec) -> None:
    if Status.of(status) == Status.SINGULAR_RESOLVENT:
        raise SingularResolventError(
            "The detuned manifold Hamiltonian is singular at "
            f"omega_L_detuning = {float(drive.omega_L_detuning)!r}."
        )


def detected_amplitudes(
    bc: BornCoefficients,
    blocks: DriveBlocks,
) -> tuple[ComplexArray, ...]:
    """`<0|(E+)^q|c_q>` for q = 1 .. q_max."""
    return tuple(
        blocks.detection_chain(q) @ bc.coefficients[q] for q in range(1, bc.q_max + 1)
    )


def normalized_correlations(
    amplitudes: tuple[ComplexArray, ...],
) -> tuple[FloatArray, ...]:
    """Turn detected amplitudes into `(I, g2, g3, ...)`: `I = |A_1|^2` and
    `g_q = |A_q|^2 / I^q`."""
    intensity = jnp.abs(amplitudes[0]) ** 2
    out = [intensity]
    for q, amp in enumerate(amplitudes[1:], start=2):
        out.append(jnp.abs(amp) ** 2 / intensity**q)
    return tuple(out)


def intensity(bc: BornCoefficients, drive: DriveSpec) -> FloatArray:
    """Emitted intensity in units of the squared drive amplitude,
    `|<0|E+|c_1>|^2` with the detector field taken as the bare lowering operator."""
    blocks = DriveBlocks.build(bc.layout, drive, 1)
    return jnp.abs(blocks.detection_chain(1) @ bc.coefficients[1]) ** 2
