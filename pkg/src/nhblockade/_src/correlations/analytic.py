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
"""Closed-form results for the two model systems.

The public functions check their domain when called with concrete values; the
`*_traced` variants skip the checks and return `nan` outside the domain, for use
inside vmapped sweeps."""

import jax.numpy as jnp

from nhblockade._src.core.errors import NHPBError
from nhblockade._src.core.typing import FloatArray, Real, static_check_is_concrete
from nhblockade._src.hamiltonians import HybridParams, QuadraticParams


class WeakCouplingDomainError(NHPBError):
    pass


class ZeroModeCouplingError(NHPBError, ZeroDivisionError):
    pass


def _concrete(*values) -> bool:
    return all(static_check_is_concrete(v) for v in values)


#############
# Quadratic #
#############


def g2_quadratic_analytic(params: QuadraticParams) -> FloatArray:
    """Exact weak-drive `g2` at two-photon resonance, `1 / (1 + eta)^2`."""
    return jnp.asarray(1.0 / (1.0 + params.cooperativity) ** 2)


def intensity_quadratic_analytic(params: QuadraticParams) -> FloatArray:
    """Resonant intensity per squared drive amplitude, `4 / gamma_b^2`."""
    return jnp.asarray(4.0 / params.gamma_b**2)


def gamma_p2_weak_coupling(params: QuadraticParams) -> FloatArray:
    """Width of the narrowest two-excitation state, `2 gamma_b (1 + eta)`; valid
    only for `g < gamma_a / (2 sqrt 2)`."""
    if _concrete(params.g, params.gamma_a):
        if not float(params.g) < float(params.gamma_a) / (2.0 * jnp.sqrt(2.0)):
            raise WeakCouplingDomainError(
                f"g = {float(params.g)!r} is outside the weak-coupling range "
                "g < gamma_a / (2 sqrt 2)."
            )
    return jnp.asarray(2.0 * params.gamma_b * (1.0 + params.cooperativity))


##########
# Hybrid #
##########


def g2_hybrid_analytic_traced(params: HybridParams) -> FloatArray:
    d, g2, gamma_2 = params.d, params.g_2, params.gamma_2
    safe_d = jnp.where(d == 0.0, jnp.nan, d)
    ratio = g2**2 / safe_d**2
    bracket = ratio + 2.0 + 4.0 * (g2 / gamma_2) ** 2 * (ratio - 1.0)
    eta = 4.0 * safe_d**2 / (params.gamma_1 * gamma_2)
    return bracket**2 / eta**2


def g2_hybrid_analytic(params: HybridParams) -> FloatArray:
    """Second-order approximation of `g2` at resonance with the emitter, valid for
    `gamma_1 / gamma_2 << 1` and `gamma_e = 0`:

        g2 = [g_2^2/d^2 + 2 + 4 (g_2/gamma_2)^2 (g_2^2/d^2 - 1)]^2 / eta^2,

    with `eta = 4 d^2 / (gamma_1 gamma_2)`. `gamma_e` is ignored.
    """
    if _concrete(params.d) and float(params.d) == 0.0:
        raise ZeroModeCouplingError("The analytic hybrid g2 is undefined at d = 0.")
    return g2_hybrid_analytic_traced(params)


def g2_hybrid_leading_order(params: HybridParams) -> FloatArray:
    """Leading term of the analytic hybrid `g2` for `d << g_2`,

        g2 = [g_2^2/d^2 (1 + 4 g_2^2/gamma_2^2)]^2 / eta^2,

    which reaches one exactly at `nhpb_threshold_d`. Returns `nan` at `d = 0`."""
    d, g2, gamma_2 = params.d, params.g_2, params.gamma_2
    safe_d = jnp.where(d == 0.0, jnp.nan, d)
    bracket = g2**2 / safe_d**2 * (1.0 + 4.0 * (g2 / gamma_2) ** 2)
    eta = 4.0 * safe_d**2 / (params.gamma_1 * gamma_2)
    return bracket**2 / eta**2


def nhpb_threshold_d(g2_coupling: Real, gamma_1: Real, gamma_2: Real) -> FloatArray:
    """Smallest mode-mode coupling `d` for which the analytic hybrid `g2` drops to
    one in the limit `d / g_2 -> 0`:

        d = (gamma_1 / gamma_2 (g_2^4 + g_2^2 gamma_2^2 / 4))^(1/4).
    """
    if _concrete(g2_coupling, gamma_1, gamma_2):
        if min(float(g2_coupling), float(gamma_1), float(gamma_2)) <= 0.0:
            raise ValueError("nhpb_threshold_d expects positive arguments.")
    inner = gamma_1 / gamma_2 * (g2_coupling**4 + g2_coupling**2 * gamma_2**2 / 4.0)
    return jnp.asarray(inner) ** 0.25
