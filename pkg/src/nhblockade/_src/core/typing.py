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
"""This module contains a set of types and type aliases which are used throughout the
codebase.

Type annotations in the codebase are exported out of this module for consistency.
Matrices and vectors are JAX arrays; physical scalars may be Python numbers or JAX
scalars, so that parameter records can carry batched (or traced) values through
`jax.vmap` and `jax.jit`.
"""

import sys

import beartype.typing as btyping
import jaxtyping as jtyping
from jax import core as jc

if sys.version_info >= (3, 11, 0):
    from typing import Self
else:
    from typing_extensions import Self

Any = btyping.Any
ArrayLike = jtyping.ArrayLike
IntArray = jtyping.Int[jtyping.Array, "..."]
FloatArray = jtyping.Float[jtyping.Array, "..."]
ComplexArray = jtyping.Complex[jtyping.Array, "..."]
ComplexMatrix = jtyping.Complex[jtyping.Array, "m n"]
ComplexVector = jtyping.Complex[jtyping.Array, " n"]
Callable = btyping.Callable
Sequence = btyping.Sequence
Iterable = btyping.Iterable
Mapping = btyping.Mapping
Literal = btyping.Literal
TypeVar = btyping.TypeVar

# Physical scalars: rates, couplings, detunings.
Real = float | FloatArray


def static_check_is_concrete(x: Any) -> bool:
    return not isinstance(x, jc.Tracer)


__all__ = [
    "Any",
    "ArrayLike",
    "Callable",
    "ComplexArray",
    "ComplexMatrix",
    "ComplexVector",
    "FloatArray",
    "IntArray",
    "Iterable",
    "Literal",
    "Mapping",
    "Real",
    "Self",
    "Sequence",
    "TypeVar",
    "static_check_is_concrete",
]
