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
"""Manifold-restricted non-Hermitian Hamiltonians of the two model systems.

Both models are written as a list of coherent terms `(operator, coefficient)` and a
list of dissipation channels `(lowering operator, rate)`. The effective Hamiltonian
adds `-(i/2) * rate * L^dagger L` for every channel; the Lindblad oracle consumes the
same two lists, so the non-Hermitian and master-equation pictures cannot drift apart.

Frequencies are stored as detunings from a frequency origin (mode `b` for the
quadratic model, mode `a1` for the hybrid model). Rates and couplings are expressed in
units of the broad decay rate (`gamma_a`, resp. `gamma_2`).
"""

import dataclasses
from abc import abstractmethod
from typing import ClassVar

import jax.numpy as jnp
import jax.tree_util as jtu

from nhblockade._src.core.fock import (
    ModeLayout,
    OperatorSpec,
    enumerate_manifold,
    lower_mode,
    number_mode,
    operator_block,
    raise_mode,
    sigma_minus,
    sigma_plus,
    sigma_z_projector,
)
from nhblockade._src.core.pytree import Pytree
from nhblockade._src.core.typing import (
    Any,
    ComplexMatrix,
    ComplexVector,
    Real,
    Self,
)

Term = tuple[OperatorSpec, Any]


class ModelParams(Pytree):
    """Abstract parameter record of a model system. Every dynamic field is an energy
    (rate, coupling or detuning) in units of the reference rate."""

    model_name: ClassVar[str]
    rate_fields: ClassVar[tuple[str, ...]]
    coupling_fields: ClassVar[tuple[str, ...]]

    @classmethod
    @abstractmethod
    def layout(cls) -> ModeLayout:
        raise NotImplementedError

    @abstractmethod
    def coherent_terms(self) -> list[Term]:
        """Hermitian part of the Hamiltonian in the frame rotating at the origin."""
        raise NotImplementedError

    @abstractmethod
    def dissipators(self) -> list[Term]:
        """Dissipation channels as `(lowering operator, decay rate)` pairs."""
        raise NotImplementedError

    @property
    @abstractmethod
    def unit_rate(self) -> Real:
        raise NotImplementedError

    @property
    @abstractmethod
    def cooperativity(self) -> Real:
        raise NotImplementedError

    def nonhermitian_terms(self) -> list[Term]:
        terms = list(self.coherent_terms())
        for op, rate in self.dissipators():
            terms.append((op.dagger() @ op, -0.5j * rate))
        return terms

    def scaled(self, lam: Real) -> Self:
        """Multiply every rate, coupling and detuning by `lam`."""
        return jtu.tree_map(lambda v: v * lam, self)

    @classmethod
    def parameter_names(cls) -> tuple[str, ...]:
        return tuple(f.name for f in dataclasses.fields(cls))

    def as_dict(self) -> dict[str, float]:
        return {name: float(getattr(self, name)) for name in self.parameter_names()}

    def validate(self) -> Self:
        """Eagerly check physical ranges. Rates must be positive, couplings
        non-negative; raises `ValueError` naming the first offending field."""
        for name in self.rate_fields:
            if not float(getattr(self, name)) > 0.0:
                raise ValueError(f"{name} must be a positive decay rate.")
        for name in self.coupling_fields:
            if float(getattr(self, name)) < 0.0:
                raise ValueError(f"{name} must be a non-negative coupling.")
        return self


@Pytree.dataclass
class QuadraticParams(ModelParams):
    """Modes `a` and `b` with `omega_a = 2 omega_b + delta_a` and the exchange
    `g (a^dagger b^2 + b^dagger^2 a)`."""

    gamma_a: Real
    gamma_b: Real
    g: Real
    delta_a: Real = 0.0

    model_name = "quadratic"
    rate_fields = ("gamma_a", "gamma_b")
    coupling_fields = ("g",)

    @classmethod
    def layout(cls) -> ModeLayout:
        return ModeLayout.quadratic()

    def coherent_terms(self) -> list[Term]:
        a, b = lower_mode(0), lower_mode(1)
        return [
            (number_mode(0), self.delta_a),
            (raise_mode(0) @ b @ b, self.g),
            (raise_mode(1) @ raise_mode(1) @ a, self.g),
        ]

    def dissipators(self) -> list[Term]:
        return [(lower_mode(0), self.gamma_a), (lower_mode(1), self.gamma_b)]

    @property
    def unit_rate(self) -> Real:
        return self.gamma_a

    @property
    def cooperativity(self) -> Real:
        return 4.0 * self.g**2 / (self.gamma_a * self.gamma_b)


@Pytree.dataclass
class HybridParams(ModelParams):
    """A two-level emitter coupled with `g_1`, `g_2` to a narrow mode `a1` and a broad
    mode `a2`, which exchange energy at rate `d`. `delta_e` and `delta_2` detune the
    emitter and `a2` from `a1`."""

    gamma_e: Real
    gamma_1: Real
    gamma_2: Real
    g_1: Real
    g_2: Real
    d: Real
    delta_e: Real = 0.0
    delta_2: Real = 0.0

    model_name = "hybrid"
    rate_fields = ("gamma_e", "gamma_1", "gamma_2")
    coupling_fields = ("g_1", "g_2", "d")

    @classmethod
    def layout(cls) -> ModeLayout:
        return ModeLayout.hybrid()

    def coherent_terms(self) -> list[Term]:
        a1, a2 = lower_mode(0), lower_mode(1)
        sp, sm = sigma_plus(), sigma_minus()
        return [
            (sigma_z_projector(), self.delta_e),
            (number_mode(1), self.delta_2),
            (sp @ a1, self.g_1),
            (a1.dagger() @ sm, self.g_1),
            (sp @ a2, self.g_2),
            (a2.dagger() @ sm, self.g_2),
            (a1.dagger() @ a2, self.d),
            (a2.dagger() @ a1, self.d),
        ]

    def dissipators(self) -> list[Term]:
        return [
            (sigma_minus(), self.gamma_e),
            (lower_mode(0), self.gamma_1),
            (lower_mode(1), self.gamma_2),
        ]

    @property
    def unit_rate(self) -> Real:
        return self.gamma_2

    @property
    def cooperativity(self) -> Real:
        return 4.0 * self.d**2 / (self.gamma_1 * self.gamma_2)


MODELS: dict[str, type[ModelParams]] = {
    "quadratic": QuadraticParams,
    "hybrid": HybridParams,
}


@Pytree.dataclass
class DriveSpec(Pytree):
    """Pumped and detected modes plus the laser detuning.

    `omega_L_detuning` is the scan-axis convention `omega_origin - omega_L`; the
    resolvent needs `omega_L - omega_origin`, which `laser_detuning` returns. This is
    the only place the sign is flipped."""

    pump_target: int = Pytree.static(default=0)
    detect_target: int = Pytree.static(default=0)
    omega_L_detuning: Real = Pytree.field(default=0.0)

    @property
    def laser_detuning(self) -> Real:
        return -self.omega_L_detuning

    def at(self, omega_L_detuning: Real) -> "DriveSpec":
        return DriveSpec(self.pump_target, self.detect_target, omega_L_detuning)

    def check_layout(self, layout: ModeLayout) -> Self:
        for role, k in (("pump", self.pump_target), ("detect", self.detect_target)):
            layout.check_mode(k)
            if layout.excitation_weights[k] != 1:
                raise ValueError(
                    f"The {role} target {layout.mode_name(k)} must carry unit excitation weight."
                )
        return self

    @classmethod
    def default_for(cls, model: str, omega_L_detuning: Real = 0.0) -> "DriveSpec":
        # Hybrid: pump and detect a1. Quadratic: pump and detect b.
        target = 1 if model == "quadratic" else 0
        return cls(target, target, omega_L_detuning)

    def pump_raise(self) -> OperatorSpec:
        return raise_mode(self.pump_target)

    def detect_lower(self) -> OperatorSpec:
        return lower_mode(self.detect_target)


def build_manifold_hamiltonian(params: ModelParams, q: int) -> ComplexMatrix:
    """Complex-symmetric effective Hamiltonian on the canonical basis of manifold `q`."""
    basis = enumerate_manifold(params.layout(), q)
    h = jnp.zeros((len(basis), len(basis)), dtype=jnp.complex128)
    for op, coeff in params.nonhermitian_terms():
        h = h + coeff * operator_block(op, basis, basis)
    return h


def detuned_hamiltonian(
    h: ComplexMatrix,
    q: int,
    laser_detuning: Real,
) -> ComplexMatrix:
    """`h - q * laser_detuning * 1`, with `laser_detuning = omega_L - omega_origin`."""
    return h - q * laser_detuning * jnp.eye(h.shape[0], dtype=h.dtype)


def manifold_diagonal(params: ModelParams, q: int) -> ComplexVector:
    """Diagonal of the manifold Hamiltonian computed directly from the occupations:
    `sum_k n_k (delta_k - i gamma_k / 2)`, used as an energy bookkeeping check."""
    basis = enumerate_manifold(params.layout(), q)
    energies, rates = _mode_energies(params)
    diag = []
    for state in basis.states:
        emitter = [] if state.emitter_excited is None else [state.emitter_excited]
        counts = emitter + list(state.occupations)
        diag.append(sum(n * (w - 0.5j * r) for n, w, r in zip(counts, energies, rates)))
    return jnp.asarray(diag, dtype=jnp.complex128)


def _mode_energies(params: ModelParams) -> tuple[list[Any], list[Any]]:
    match params:
        case HybridParams():
            return (
                [params.delta_e, 0.0, params.delta_2],
                [params.gamma_e, params.gamma_1, params.gamma_2],
            )
        case QuadraticParams():
            return [params.delta_a, 0.0], [params.gamma_a, params.gamma_b]
        case _:
            raise TypeError(f"Unknown model {type(params).__name__}.")


def reference_matrices_hybrid(
    params: HybridParams,
) -> tuple[ComplexMatrix, ComplexMatrix]:
    """Hand-transcribed first- and second-manifold matrices of the hybrid model,
    extended with the emitter and `a2` detunings on the diagonal. Kept separate from
    `build_manifold_hamiltonian` as a cross-check."""
    ge, g1, g2 = params.gamma_e, params.gamma_1, params.gamma_2
    c1, c2, d = params.g_1, params.g_2, params.d
    de, d2 = params.delta_e, params.delta_2
    s2 = jnp.sqrt(2.0)
    i = 1j
    h1 = jnp.array(
        [
            [de - i * ge / 2, c1, c2],
            [c1, -i * g1 / 2, d],
            [c2, d, d2 - i * g2 / 2],
        ],
        dtype=jnp.complex128,
    )
    h2 = jnp.array(
        [
            [de - i * (ge + g1) / 2, d, s2 * c1, c2, 0.0],
            [d, de + d2 - i * (ge + g2) / 2, 0.0, c1, s2 * c2],
            [s2 * c1, 0.0, -i * g1, s2 * d, 0.0],
            [c2, c1, s2 * d, d2 - i * (g1 + g2) / 2, s2 * d],
            [0.0, s2 * c2, 0.0, s2 * d, 2 * d2 - i * g2],
        ],
        dtype=jnp.complex128,
    )
    return h1, h2
