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
"""Base exception and traced status codes.

Concrete exception classes live next to the code that raises them; they all derive
from `NHPBError`. Code running under `jax.jit` cannot raise, so traced evaluations
return a `Status` code instead and the eager wrappers translate it.
"""

import enum

import jax.numpy as jnp

from nhblockade._src.core.typing import Any, IntArray


class NHPBError(Exception):
    pass


class Status(enum.IntEnum):
    OK = 0
    SINGULAR_RESOLVENT = 1
    EXCEPTIONAL_POINT = 2
    NO_ACCESSIBLE_STATE = 3

    @property
    def reason(self) -> str:
        return self.name.lower()

    @classmethod
    def of(cls, code: Any) -> "Status":
        return cls(int(code))


def first_failure(*codes: Any) -> IntArray:
    """Combine status codes, keeping the first non-OK one in argument order."""
    out = jnp.asarray(Status.OK, dtype=jnp.int32)
    for code in reversed(codes):
        code = jnp.asarray(code, dtype=jnp.int32)
        out = jnp.where(code != Status.OK, code, out)
    return out
