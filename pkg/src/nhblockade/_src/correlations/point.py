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
"""Every weak-drive observable of one `(params, omega_L_detuning)` point.

`evaluate_point` is a pure, traceable function: a sweep batches it with `jax.vmap`
and compiles it once per model and settings. Failures are carried in two status
codes (one for the Born recursion, one for the eigenstate analysis). The eager
functions below evaluate a single point and raise the matching exception instead.
"""

import jax.numpy as jnp

from nhblockade._src.checkify import call_checked
from nhblockade._src.core.errors import Status
from nhblockade._src.core.pytree import Pytree, PythonicPytree
from nhblockade._src.core.settings import NumericSettings
from nhblockade._src.core.typing import FloatArray, IntArray, Real
from nhblockade._src.correlations.born import (
    DriveBlocks,
    SingularResolventError,
    born_solution,
    detected_amplitudes,
    normalized_correlations,
)
from nhblockade._src.correlations.spectral import (
    eigenstate_correlators,
    narrowest_components,
    normalize,
    resolved_alphas,
    spectral_analysis,
    tampered_eigenvalues,
    two_state_g2,
)
from nhblockade._src.eigensolver import ExceptionalPointError, NoAccessibleStateError
from nhblockade._src.hamiltonians import DriveSpec, ModelParams


@Pytree.dataclass
class CorrelationPoint(PythonicPytree):
    """Observables at one laser detuning. Intensities are in units of the squared
    drive amplitude; `*_resolved` repeat the full correlators from the
    eigenstate sums, `*_narrowest` restrict those sums to `p_1, p_2, p_3`, and
    `*_tampered` replace every width in manifold `q` by `q * gamma_p1`.

    `e_p1` and `e_p2_half` are `Re E_p1` and `Re E_p2 / 2` measured from the
    frequency origin; the state is pumped resonantly at
    `omega_L_detuning = -e_p1` (resp. `-e_p2_half`). `decay_q1` and `decay_q2` hold
    every width of manifolds 1 and 2 divided by `q`, ascending."""

    omega_L_detuning: FloatArray
    intensity_rel: FloatArray
    g2: FloatArray
    g3: FloatArray
    intensity_resolved: FloatArray
    g2_resolved: FloatArray
    g3_resolved: FloatArray
    g2_two_state: FloatArray
    intensity_narrowest: FloatArray
    g2_narrowest: FloatArray
    g3_narrowest: FloatArray
    intensity_tampered: FloatArray
    g2_tampered: FloatArray
    g3_tampered: FloatArray
    gamma_p1: FloatArray
    gamma_p2: FloatArray
    e_p1: FloatArray
    e_p2_half: FloatArray
    n1_p1: FloatArray
    n1_p2: FloatArray
    n2_p1: FloatArray
    n2_p2: FloatArray
    decay_q1: FloatArray
    decay_q2: FloatArray
    born_status: IntArray
    spectral_status: IntArray


def _pad_g3(
    values: tuple[FloatArray, ...],
) -> tuple[FloatArray, FloatArray, FloatArray]:
    if len(values) >= 3:
        return values[0], values[1], values[2]
    return values[0], values[1], jnp.asarray(jnp.nan)


def evaluate_point(
    params: ModelParams,
    drive: DriveSpec,
    settings: NumericSettings,
) -> CorrelationPoint:
    """Traceable evaluation of every observable at `drive.omega_L_detuning`."""
    if settings.q_max < 2:
        raise ValueError("Evaluating a correlation point requires q_max >= 2.")
    blocks = DriveBlocks.build(params.layout(), drive, settings.q_max)
    laser = drive.laser_detuning

    bc = born_solution(params, drive, settings.q_max, settings.singular_residual_tol)
    full = _pad_g3(normalized_correlations(detected_amplitudes(bc, blocks)))

    analysis = spectral_analysis(params, blocks, settings)

    def sums(**kwargs):
        alphas = resolved_alphas(analysis, blocks, laser, **kwargs)
        return _pad_g3(normalize(eigenstate_correlators(analysis, blocks, alphas)))

    resolved = sums()
    narrowest = sums(narrowest_only=True)
    tampered = sums(eigenvalues=tampered_eigenvalues(analysis))
    n1_p1, n1_p2, n2_p1, n2_p2 = narrowest_components(analysis, blocks)

    return CorrelationPoint(
        omega_L_detuning=jnp.asarray(drive.omega_L_detuning, dtype=jnp.float64),
        intensity_rel=full[0],
        g2=full[1],
        g3=full[2],
        intensity_resolved=resolved[0],
        g2_resolved=resolved[1],
        g3_resolved=resolved[2],
        g2_two_state=two_state_g2(analysis, blocks, laser),
        intensity_narrowest=narrowest[0],
        g2_narrowest=narrowest[1],
        g3_narrowest=narrowest[2],
        intensity_tampered=tampered[0],
        g2_tampered=tampered[1],
        g3_tampered=tampered[2],
        gamma_p1=analysis.narrowest_width(1),
        gamma_p2=analysis.narrowest_width(2),
        e_p1=jnp.real(analysis.narrowest_eigenvalue(1)),
        e_p2_half=jnp.real(analysis.narrowest_eigenvalue(2)) / 2.0,
        n1_p1=n1_p1,
        n1_p2=n1_p2,
        n2_p1=n2_p1,
        n2_p2=n2_p2,
        decay_q1=analysis.manifold(1).widths,
        decay_q2=analysis.manifold(2).widths / 2.0,
        born_status=bc.status,
        spectral_status=analysis.status,
    )


####################
# Eager evaluation #
####################


def raise_for_status(code: IntArray | int, context: str = "") -> None:
    status = Status.of(code)
    suffix = f" ({context})" if context else ""
    match status:
        case Status.OK:
            return
        case Status.SINGULAR_RESOLVENT:
            raise SingularResolventError(
                f"Singular detuned manifold Hamiltonian{suffix}."
            )
        case Status.EXCEPTIONAL_POINT:
            raise ExceptionalPointError(f"Self-orthogonal eigenvector{suffix}.")
        case Status.NO_ACCESSIBLE_STATE:
            raise NoAccessibleStateError(f"No accessible eigenstate{suffix}.")


def correlation_point(
    params: ModelParams,
    drive: DriveSpec,
    omega_L_detuning: Real | None = None,
    settings: NumericSettings | None = None,
) -> CorrelationPoint:
    """Evaluate one point eagerly without raising; inspect the status fields."""
    if omega_L_detuning is not None:
        drive = drive.at(omega_L_detuning)
    return call_checked(evaluate_point, params, drive, settings or NumericSettings())


def _checked_point(
    params: ModelParams,
    drive: DriveSpec,
    omega_L_detuning: Real | None,
    spectral: bool,
) -> CorrelationPoint:
    point = correlation_point(params, drive, omega_L_detuning)
    context = f"omega_L_detuning = {float(point.omega_L_detuning)!r}"
    raise_for_status(point.born_status, context)
    if spectral:
        raise_for_status(point.spectral_status, context)
    return point


def intensity_rel(
    params: ModelParams,
    drive: DriveSpec,
    omega_L_detuning: Real | None = None,
) -> float:
    point = _checked_point(params, drive, omega_L_detuning, False)
    return float(point.intensity_rel)


def g2_full(
    params: ModelParams,
    drive: DriveSpec,
    omega_L_detuning: Real | None = None,
) -> float:
    """Zero-delay `g2` from the Born series, `|<0|E+E+|c_2>|^2 / I^2`."""
    point = _checked_point(params, drive, omega_L_detuning, False)
    return float(point.g2)


def g3_full(
    params: ModelParams,
    drive: DriveSpec,
    omega_L_detuning: Real | None = None,
) -> float:
    """Zero-delay `g3` from the Born series, `|<0|E+E+E+|c_3>|^2 / I^3`."""
    point = _checked_point(params, drive, omega_L_detuning, False)
    return float(point.g3)


def g2_two_state(
    params: ModelParams,
    drive: DriveSpec,
    omega_L_detuning: Real | None = None,
) -> float:
    point = _checked_point(params, drive, omega_L_detuning, True)
    return float(point.g2_two_state)


def intensity_narrowest(
    params: ModelParams,
    drive: DriveSpec,
    omega_L_detuning: Real | None = None,
) -> float:
    point = _checked_point(params, drive, omega_L_detuning, True)
    return float(point.intensity_narrowest)


def g2_narrowest(
    params: ModelParams,
    drive: DriveSpec,
    omega_L_detuning: Real | None = None,
) -> float:
    point = _checked_point(params, drive, omega_L_detuning, True)
    return float(point.g2_narrowest)


def g3_narrowest(
    params: ModelParams,
    drive: DriveSpec,
    omega_L_detuning: Real | None = None,
) -> float:
    point = _checked_point(params, drive, omega_L_detuning, True)
    return float(point.g3_narrowest)


def intensity_tampered(
    params: ModelParams,
    drive: DriveSpec,
    omega_L_detuning: Real | None = None,
) -> float:
    point = _checked_point(params, drive, omega_L_detuning, True)
    return float(point.intensity_tampered)


def g2_tampered(
    params: ModelParams,
    drive: DriveSpec,
    omega_L_detuning: Real | None = None,
) -> float:
    """`g2` from the eigenstate sums with every width in manifold `q` set to
    `q * gamma_p1`, eigenvectors and matrix elements untouched."""
    point = _checked_point(params, drive, omega_L_detuning, True)
    return float(point.g2_tampered)


def g3_tampered(
    params: ModelParams,
    drive: DriveSpec,
    omega_L_detuning: Real | None = None,
) -> float:
    point = _checked_point(params, drive, omega_L_detuning, True)
    return float(point.g3_tampered)


def pump_detunings(params: ModelParams, drive: DriveSpec) -> tuple[float, float]:
    """`(Re E_p1, Re E_p2 / 2)` relative to the frequency origin."""
    point = _checked_point(params, drive, None, True)
    return float(point.e_p1), float(point.e_p2_half)
