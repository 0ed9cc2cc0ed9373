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
"""nhblockade computes weak-drive photon statistics of driven open cavity systems from
the complex eigenstates of their non-Hermitian Hamiltonians, and checks them
against a brute-force Lindblad master equation."""

# This __init__ file exports nhblockade's public API.
# For the internals, see _src.

from importlib import metadata

import jax
from beartype import BeartypeConf
from beartype.claw import beartype_this_package

jax.config.update("jax_enable_x64", True)

conf = BeartypeConf(
    is_color=True,
    is_debug=False,
    is_pep484_tower=True,
    violation_type=TypeError,
)

beartype_this_package(conf=conf)

from .checkify import *
from .core import *
from .correlations import *
from .eigensolver import *
from .hamiltonians import *
from .lindblad import *
from .scan import *

__version__ = metadata.version("nhblockade")
