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
from beartype.door import is_bearable

import nhblockade.typing as public_typing
from nhblockade._src.core import typing as typing_src
from nhblockade.typing import (
    ComplexMatrix,
    ComplexVector,
    FloatArray,
    Real,
    static_check_is_concrete,
)


class TestAliases:
    def test_real_accepts_numbers_and_arrays(self):
        assert is_bearable(0.5, Real)
        assert is_bearable(jnp.asarray(0.5), Real)
        assert is_bearable(jnp.linspace(0.0, 1.0, 3), FloatArray)
        assert not is_bearable("0.5", Real)

    def test_matrix_shapes(self):
        m = jnp.eye(3, dtype=jnp.complex128)
        assert is_bearable(m, ComplexMatrix)
        assert not is_bearable(m[0], ComplexMatrix)
        assert is_bearable(m[0], ComplexVector)

    def test_exports_are_sorted_and_public(self):
        names = typing_src.__all__
        assert names == sorted(names)
        assert all(hasattr(public_typing, name) for name in names)


class TestConcreteness:
    def test_outside_trace(self):
        assert static_check_is_concrete(1.0)
        assert static_check_is_concrete(jnp.ones(2))

    def test_inside_trace(self):
        seen = []

        @jax.jit
        def f(x):
            seen.append(static_check_is_concrete(x))
            return x

        f(jnp.ones(2))
        assert seen == [False]
