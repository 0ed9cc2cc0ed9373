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
"""Excitation manifolds of the truncated Fock space and operator blocks between them.

A `ModeLayout` declares an optional two-level emitter and a set of bosonic modes,
each quantum of mode `k` counting `excitation_weights[k]` toward the total excitation
number. Because that number is conserved by the effective Hamiltonians, each manifold
of fixed total excitation `q` is finite and small, and every operator used by the
package maps one manifold onto another. The blocks are built once with `numpy` (they
only depend on static structure) and handed to JAX as constant `complex128` arrays.
"""

import enum
import itertools
from functools import lru_cache

import jax.numpy as jnp
import numpy as np

from nhblockade._src.core.errors import NHPBError
from nhblockade._src.core.pytree import Pytree
from nhblockade._src.core.typing import ComplexMatrix, Self


class ExcitationMismatchError(NHPBError):
    pass


@Pytree.dataclass
class ModeLayout(Pytree):
    emitter_present: bool = Pytree.static()
    excitation_weights: tuple[int, ...] = Pytree.static()
    mode_names: tuple[str, ...] = Pytree.static(default=())

    def __post_init__(self):
        if any(w < 1 for w in self.excitation_weights):
            raise ValueError(
                f"Excitation weights must be positive integers, got {self.excitation_weights}."
            )
        if self.mode_names and len(self.mode_names) != len(self.excitation_weights):
            raise ValueError("One mode name is required per bosonic mode.")

    @classmethod
    def hybrid(cls) -> Self:
        """Two-level emitter plus two bosonic modes of unit weight."""
        return cls(True, (1, 1), ("a1", "a2"))

    @classmethod
    def quadratic(cls) -> Self:
        """Modes `a` (weight 2) and `b` (weight 1); one `a` quantum holds two `b` quanta."""
        return cls(False, (2, 1), ("a", "b"))

    @property
    def bosonic_mode_count(self) -> int:
        return len(self.excitation_weights)

    def mode_name(self, k: int) -> str:
        return self.mode_names[k] if self.mode_names else f"mode{k}"

    def excitation(self, state: "OccupationState") -> int:
        e = state.emitter_excited or 0
        weights = self.excitation_weights
        return e + sum(w * n for w, n in zip(weights, state.occupations))

    def check_mode(self, k: int) -> int:
        if not 0 <= k < self.bosonic_mode_count:
            raise ValueError(
                f"Mode index {k} is out of range for a layout with {self.bosonic_mode_count} modes."
            )
        return k


@Pytree.dataclass
class OccupationState(Pytree):
    emitter_excited: int | None = Pytree.static()
    occupations: tuple[int, ...] = Pytree.static()

    def sort_key(self) -> tuple[int, ...]:
        if self.emitter_excited is None:
            return self.occupations
        return (self.emitter_excited, *self.occupations)

    def __str__(self):
        occ = ",".join(map(str, self.occupations))
        if self.emitter_excited is None:
            return f"|{occ}>"
        return f"|{'e' if self.emitter_excited else 'g'};{occ}>"


@Pytree.dataclass
class ManifoldBasis(Pytree):
    """Canonically ordered occupation states with total excitation `q`."""

    layout: ModeLayout = Pytree.static()
    q: int = Pytree.static()
    states: tuple[OccupationState, ...] = Pytree.static()

    def __len__(self) -> int:
        return len(self.states)

    def index(self, state: OccupationState) -> int:
        return self.states.index(state)


@lru_cache(maxsize=None)
def _enumerate(
    emitter_present: bool,
    weights: tuple[int, ...],
    q: int,
) -> tuple[tuple[int | None, tuple[int, ...]], ...]:
    emitter_range = (1, 0) if emitter_present else (None,)
    found = []
    for e in emitter_range:
        rest = q - (e or 0)
        ranges = [range(rest // w, -1, -1) for w in weights]
        for occ in itertools.product(*ranges):
            if sum(w * n for w, n in zip(weights, occ)) == rest:
                found.append((e, tuple(occ)))
    # itertools.product over descending ranges already yields the canonical order.
    return tuple(found)


def enumerate_manifold(layout: ModeLayout, q: int) -> ManifoldBasis:
    """Returns every occupation state with total excitation `q`, sorted descending
    by `(emitter_excited, n_0, n_1, ...)`."""
    if q < 0:
        raise ValueError(f"Excitation number must be non-negative, got {q}.")
    states = tuple(
        OccupationState(e, occ)
        for e, occ in _enumerate(layout.emitter_present, layout.excitation_weights, q)
    )
    return ManifoldBasis(layout, q, states)


#############
# Operators #
#############


class FactorKind(enum.Enum):
    LOWER = "lower_mode"
    RAISE = "raise_mode"
    NUMBER = "number_mode"
    SIGMA_MINUS = "sigma_minus"
    SIGMA_PLUS = "sigma_plus"
    SIGMA_Z_PROJECTOR = "sigma_z_projector"

    @property
    def adjoint(self) -> "FactorKind":
        return _ADJOINT.get(self, self)

    @property
    def acts_on_emitter(self) -> bool:
        return self in (
            FactorKind.SIGMA_MINUS,
            FactorKind.SIGMA_PLUS,
            FactorKind.SIGMA_Z_PROJECTOR,
        )


_ADJOINT = {
    FactorKind.LOWER: FactorKind.RAISE,
    FactorKind.RAISE: FactorKind.LOWER,
    FactorKind.SIGMA_MINUS: FactorKind.SIGMA_PLUS,
    FactorKind.SIGMA_PLUS: FactorKind.SIGMA_MINUS,
}


@Pytree.dataclass
class OperatorSpec(Pytree):
    """An ordered operator product. `factors[0]` is the leftmost factor, so the
    last factor acts first on a ket."""

    factors: tuple[tuple[FactorKind, int | None], ...] = Pytree.static()

    def __matmul__(self, other: "OperatorSpec") -> "OperatorSpec":
        return OperatorSpec(self.factors + other.factors)

    def dagger(self) -> "OperatorSpec":
        return OperatorSpec(
            tuple((kind.adjoint, k) for kind, k in reversed(self.factors))
        )

    def excitation_change(self, layout: ModeLayout) -> int:
        change = 0
        for kind, k in self.factors:
            if kind.acts_on_emitter:
                if not layout.emitter_present:
                    raise ValueError(f"{kind.value} requires a layout with an emitter.")
                weight = 1
            else:
                weight = layout.excitation_weights[layout.check_mode(k)]
            if kind in (FactorKind.LOWER, FactorKind.SIGMA_MINUS):
                change -= weight
            elif kind in (FactorKind.RAISE, FactorKind.SIGMA_PLUS):
                change += weight
        return change

    def __str__(self):
        return " ".join(
            kind.value if k is None else f"{kind.value}({k})"
            for kind, k in self.factors
        )


def lower_mode(k: int) -> OperatorSpec:
    return OperatorSpec(((FactorKind.LOWER, k),))


def raise_mode(k: int) -> OperatorSpec:
    return OperatorSpec(((FactorKind.RAISE, k),))


def number_mode(k: int) -> OperatorSpec:
    return OperatorSpec(((FactorKind.NUMBER, k),))


def sigma_minus() -> OperatorSpec:
    return OperatorSpec(((FactorKind.SIGMA_MINUS, None),))


def sigma_plus() -> OperatorSpec:
    return OperatorSpec(((FactorKind.SIGMA_PLUS, None),))


def sigma_z_projector() -> OperatorSpec:
    """Projector on the excited emitter state, `σ₊σ₋`."""
    return OperatorSpec(((FactorKind.SIGMA_Z_PROJECTOR, None),))


def _apply_factor(
    kind: FactorKind,
    k: int | None,
    e: int | None,
    occ: tuple[int, ...],
) -> tuple[float, int | None, tuple[int, ...]] | None:
    match kind:
        case FactorKind.LOWER:
            n = occ[k]
            if n == 0:
                return None
            return np.sqrt(n), e, occ[:k] + (n - 1,) + occ[k + 1 :]
        case FactorKind.RAISE:
            n = occ[k]
            return np.sqrt(n + 1), e, occ[:k] + (n + 1,) + occ[k + 1 :]
        case FactorKind.NUMBER:
            return float(occ[k]), e, occ
        case FactorKind.SIGMA_MINUS:
            return (1.0, 0, occ) if e == 1 else None
        case FactorKind.SIGMA_PLUS:
            return (1.0, 1, occ) if e == 0 else None
        case FactorKind.SIGMA_Z_PROJECTOR:
            return (1.0, e, occ) if e == 1 else None


@lru_cache(maxsize=None)
def _block(
    factors: tuple[tuple[FactorKind, int | None], ...],
    emitter_present: bool,
    weights: tuple[int, ...],
    q_source: int,
    q_target: int,
) -> np.ndarray:
    source = _enumerate(emitter_present, weights, q_source)
    target = _enumerate(emitter_present, weights, q_target)
    block = np.zeros((len(target), len(source)), dtype=np.complex128)
    positions = {state: i for i, state in enumerate(target)}
    for j, (e, occ) in enumerate(source):
        coeff = 1.0
        for kind, k in reversed(factors):
            applied = _apply_factor(kind, k, e, occ)
            if applied is None:
                coeff = 0.0
                break
            c, e, occ = applied
            coeff *= c
        if coeff != 0.0:
            block[positions[(e, occ)], j] += coeff
    block.setflags(write=False)
    return block


def operator_block(
    op: OperatorSpec,
    source: ManifoldBasis,
    target: ManifoldBasis,
) -> ComplexMatrix:
    """Matrix of `op` from manifold `source` to manifold `target`, of shape
    `(len(target), len(source))`."""
    if source.layout != target.layout:
        raise ExcitationMismatchError(
            "Source and target manifolds use different layouts."
        )
    change = op.excitation_change(source.layout)
    if target.q - source.q != change:
        raise ExcitationMismatchError(
            f"{op} changes excitation by {change}, but maps manifold {source.q} to {target.q}."
        )
    layout = source.layout
    return jnp.asarray(
        _block(
            op.factors,
            layout.emitter_present,
            layout.excitation_weights,
            source.q,
            target.q,
        )
    )


def weighted_number_block(basis: ManifoldBasis) -> ComplexMatrix:
    """The excitation-number operator restricted to `basis`, i.e. `q` times the identity."""
    return basis.q * jnp.eye(len(basis), dtype=jnp.complex128)
