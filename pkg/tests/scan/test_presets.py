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

import pytest

from nhblockade.scan import PRESETS, UnknownPresetError, figure_preset


class TestPresets:
    @pytest.mark.parametrize("name", sorted(PRESETS))
    def test_base_parameters(self, name):
        config = figure_preset(name)
        assert config.name == name
        assert config.model == "hybrid"
        params = config.params
        assert float(params.gamma_1) == 1e-3
        assert float(params.gamma_e) == 1e-5
        assert float(params.gamma_2) == 1.0
        assert float(params.g_1) == 0.0
        assert float(params.g_2) == pytest.approx(1 / 15)
        assert float(params.delta_e) == 0.0
        assert float(params.delta_2) == 0.0
        assert config.notes

    @pytest.mark.parametrize(
        ("name", "d"),
        [("fig3", 0.1), ("figS1", 1 / 15), ("figS3", 0.1), ("figS4", 0.1)],
    )
    def test_fixed_mode_coupling(self, name, d):
        assert float(figure_preset(name).params.d) == pytest.approx(d)

    def test_detuning_preset(self):
        config = figure_preset("fig3")
        assert config.axis_names == ("omega_L_detuning",)
        assert config.grid().shape == (301, 1)
        assert config.needs_spectral

    def test_fig2_grid(self):
        config = figure_preset("fig2")
        assert config.axis_names == ("d", "omega_L_detuning")
        assert config.grid().shape == (201 * 301, 2)

    def test_emitter_tie(self):
        (tie,) = figure_preset("figS3").ties
        assert (tie.target, tie.source) == ("g_1", "d")
        assert tie.factor == pytest.approx(1 / 83.5)

    def test_threshold_scan(self):
        config = figure_preset("figS2")
        assert config.axis_names == ("d", "g_2")
        assert "threshold" in config.outputs

    def test_unknown(self):
        with pytest.raises(UnknownPresetError, match="fig9"):
            figure_preset("fig9")
