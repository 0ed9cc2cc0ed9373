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
from contextlib import contextmanager
from functools import cache

import jax
from jax.experimental import checkify

from nhblockade._src.core.typing import Any, Callable

_GLOBAL_CHECKIFY_HANDLER = []


@contextmanager
def do_checkify():
    """Enable the expensive invariant checks (symmetry, solve residuals, trace and
    kernel checks) for every evaluation started inside the block."""
    _GLOBAL_CHECKIFY_HANDLER.append(True)
    try:
        yield
    finally:
        _GLOBAL_CHECKIFY_HANDLER.pop()


def checks_enabled() -> bool:
    return bool(_GLOBAL_CHECKIFY_HANDLER)


@cache
def _compiled(fn: Callable[..., Any]) -> Callable[..., Any]:
    return jax.jit(fn)


def optional_check(check: Callable[[], None]):
    if _GLOBAL_CHECKIFY_HANDLER:
        check()


def call_checked(fn: Callable[..., Any], *args: Any) -> Any:
    """Run `fn` compiled, functionalizing any `optional_check` it stages.

    Outside `do_checkify` this is `jax.jit(fn)(*args)`. Inside, a fresh checkified
    trace is compiled so that checks are never served from a cache traced without
    them, and the first failed check is raised."""
    if not checks_enabled():
        return _compiled(fn)(*args)
    err, out = jax.jit(checkify.checkify(fn))(*args)
    err.throw()
    return out
