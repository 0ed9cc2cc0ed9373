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
"""Named scan presets: fully expanded configurations for the standard hybrid scans.

All presets use the hybrid model in units of `gamma_2` with the base parameters
`gamma_1 = 1e-3`, `gamma_e = 1e-5`, `g_1 = 0`, `g_2 = 1/15` and no detunings.
"""

from nhblockade._src.core.errors import NHPBError
from nhblockade._src.hamiltonians import DriveSpec, HybridParams
from nhblockade._src.scan.config import DETUNING_AXIS, AxisSpec, ScanConfig, Tie

# Ratio between d and g_1 for a realistic emitter placement.
D_OVER_G1 = 83.5

DETUNING_RANGE = AxisSpec(DETUNING_AXIS, -1.5, 1.5, 301)
D_RANGE = AxisSpec("d", 0.0, 0.2, 201)
G2_RANGE = AxisSpec("g_2", 0.0, 0.2, 201)
DELTA_2_RANGE = AxisSpec("delta_2", -2.0, 2.0, 201)
DELTA_E_RANGE = AxisSpec("delta_e", -2.0, 2.0, 201)

_RANGE_NOTE = (
    "Axis ranges are display choices bracketing every highlighted parameter value; "
    "energies are in units of gamma_2."
)


class UnknownPresetError(NHPBError):
    pass


def base_hybrid(d: float = 0.1) -> HybridParams:
    return HybridParams(
        gamma_e=1e-5,
        gamma_1=1e-3,
        gamma_2=1.0,
        g_1=0.0,
        g_2=1.0 / 15.0,
        d=d,
    )


def _preset(name, d, axes, outputs, ties=(), extra_notes=()) -> ScanConfig:
    return ScanConfig(
        model="hybrid",
        params=base_hybrid(d),
        drive=DriveSpec.default_for("hybrid"),
        axes=axes,
        outputs=outputs,
        ties=ties,
        name=name,
        notes=(_RANGE_NOTE, *extra_notes),
    )


def _fig2() -> ScanConfig:
    return _preset(
        "fig2", 0.1, (D_RANGE, DETUNING_RANGE), ("I", "g2", "eigs", "components")
    )


def _fig3() -> ScanConfig:
    return _preset(
        "fig3",
        0.1,
        (DETUNING_RANGE,),
        ("I", "g2", "g3", "two_state", "narrowest", "tampered"),
    )


def _fig_s1() -> ScanConfig:
    return _preset(
        "figS1",
        1.0 / 15.0,
        (G2_RANGE, DETUNING_RANGE),
        ("I", "g2", "components"),
        extra_notes=("d = gamma_2 / 15 for this preset.",),
    )


def _fig_s2() -> ScanConfig:
    return _preset(
        "figS2",
        1.0 / 15.0,
        (D_RANGE, G2_RANGE),
        ("g2", "threshold"),
        extra_notes=("Laser resonant with the emitter (omega_L_detuning = 0).",),
    )


def _fig_s3() -> ScanConfig:
    return _preset(
        "figS3",
        0.1,
        (D_RANGE, DETUNING_RANGE),
        ("I", "g2", "eigs"),
        ties=(Tie("g_1", "d", 1.0 / D_OVER_G1),),
        extra_notes=(f"g_1 = d / {D_OVER_G1} at every grid point.",),
    )


def _fig_s4() -> ScanConfig:
    return _preset(
        "figS4",
        0.1,
        (DELTA_2_RANGE, DETUNING_RANGE),
        ("g2", "eigs", "components"),
    )


def _fig_s5() -> ScanConfig:
    return _preset(
        "figS5",
        0.1,
        (DELTA_E_RANGE, DETUNING_RANGE),
        ("I", "g2", "components"),
    )


PRESETS = {
    "fig2": _fig2,
    "fig3": _fig3,
    "figS1": _fig_s1,
    "figS2": _fig_s2,
    "figS3": _fig_s3,
    "figS4": _fig_s4,
    "figS5": _fig_s5,
}


def figure_preset(name: str) -> ScanConfig:
    """The scan configuration registered as `name`; raises
    `UnknownPresetError` for names outside `PRESETS`."""
    try:
        return PRESETS[name]()
    except KeyError:
        raise UnknownPresetError(
            f"Unknown figure preset {name!r}; expected one of {sorted(PRESETS)}."
        ) from None
