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

import json

import jax.numpy as jnp
import pytest

from nhblockade.hamiltonians import QuadraticParams
from nhblockade.scan import ConfigError, figure_preset, load_config, parse_config


def quadratic_doc(**overrides):
    doc = {
        "model": "quadratic",
        "params": {"gamma_a": 1.0, "gamma_b": 1e-3, "g": 0.1},
    }
    doc.update(overrides)
    return doc


def error_path(doc) -> str:
    with pytest.raises(ConfigError) as info:
        parse_config(doc)
    return info.value.path


class TestParseConfig:
    def test_minimal(self):
        config = parse_config(quadratic_doc())
        assert config.name == "scan"
        assert config.axes == ()
        assert config.outputs == ("I", "g2", "g3")
        assert config.drive.pump_target == 1
        assert config.drive.detect_target == 1
        assert not config.oracle.enabled
        assert not config.needs_spectral
        assert config.params.as_dict() == QuadraticParams(1.0, 1e-3, 0.1).as_dict()

    def test_outputs_in_column_order(self):
        config = parse_config(quadratic_doc(outputs=["eigs", "g2", "I"]))
        assert config.outputs == ("I", "g2", "eigs")
        assert config.needs_spectral

    @pytest.mark.parametrize(
        ("overrides", "path"),
        [
            ({"model": "cubic"}, "model"),
            ({"colour": "red"}, "config.colour"),
            ({"params": {"gamma_a": 1.0, "gamma_b": 1e-3}}, "params.g"),
            ({"params": {"gamma_a": 1.0, "gamma_b": 1e-3, "g": True}}, "params.g"),
            ({"params": {"gamma_a": 1.0, "gamma_b": 0.0, "g": 0.1}}, "params"),
            ({"drive": {"pump_target": 0}}, "drive"),
            ({"outputs": ["g4"]}, "outputs[0]"),
            ({"outputs": ["threshold"]}, "outputs"),
            ({"numerics": {"q_max": 1}}, "numerics.q_max"),
            ({"numerics": {"q_max": 4}}, "numerics"),
            ({"oracle": {"n_max": [1, 4]}}, "oracle.n_max"),
            ({"oracle": {"omega": 0.0}}, "oracle.omega"),
            ({"name": ""}, "name"),
        ],
    )
    def test_rejects(self, overrides, path):
        assert error_path(quadratic_doc(**overrides)) == path

    @pytest.mark.parametrize(
        ("axis", "path"),
        [
            ({"name": "gamma_z", "from": 0.0, "to": 1.0, "steps": 3}, "axes[0].name"),
            ({"name": "g", "from": 0.0, "to": 1.0, "steps": 1}, "axes[0].steps"),
            ({"name": "g", "from": 1.0, "to": 0.0, "steps": 3}, "axes[0].from"),
            (
                {"name": "g", "from": 0.0, "to": 1.0, "steps": 3, "linear": False},
                "axes[0].from",
            ),
            ({"name": "g", "from": 0.0, "to": 1.0}, "axes[0].steps"),
        ],
    )
    def test_rejects_axis(self, axis, path):
        assert error_path(quadratic_doc(axes=[axis])) == path

    def test_axis_limits(self):
        axis = {"name": "g", "from": 0.0, "to": 1.0, "steps": 3}
        assert error_path(quadratic_doc(axes=[axis, axis])) == "axes"
        assert error_path(quadratic_doc(axes=[axis] * 3)) == "axes"

    def test_tied_parameter_cannot_be_scanned(self):
        doc = quadratic_doc(
            axes=[{"name": "g", "from": 0.0, "to": 1.0, "steps": 3}],
            ties=[{"target": "g", "source": "gamma_b", "factor": 2.0}],
        )
        assert error_path(doc) == "ties[0].target"

    def test_round_trip(self):
        preset = figure_preset("figS3")
        assert parse_config(preset.as_dict()).as_dict() == preset.as_dict()


class TestGrid:
    def test_last_axis_fastest(self):
        doc = quadratic_doc(
            axes=[
                {"name": "g", "from": 0.1, "to": 0.3, "steps": 3},
                {"name": "omega_L_detuning", "from": -1.0, "to": 1.0, "steps": 3},
            ]
        )
        grid = parse_config(doc).grid()
        assert grid.shape == (9, 2)
        assert grid[:3, 0].tolist() == pytest.approx([0.1, 0.1, 0.1])
        assert grid[:3, 1].tolist() == pytest.approx([-1.0, 0.0, 1.0])

    def test_geometric_axis(self):
        doc = quadratic_doc(
            axes=[{"name": "g", "from": 0.01, "to": 1.0, "steps": 3, "linear": False}]
        )
        assert parse_config(doc).grid()[:, 0].tolist() == pytest.approx(
            [0.01, 0.1, 1.0]
        )

    def test_no_axes(self):
        assert parse_config(quadratic_doc()).grid().shape == (1, 0)

    def test_ties_follow_the_source(self):
        params, drive = figure_preset("figS3").at(jnp.array([0.1, 0.2]))
        assert float(params.d) == pytest.approx(0.1)
        assert float(params.g_1) == pytest.approx(0.1 / 83.5)
        assert float(drive.omega_L_detuning) == pytest.approx(0.2)


class TestLoadConfig:
    def test_reads_json(self, tmp_path):
        path = tmp_path / "scan.json"
        path.write_text(json.dumps(quadratic_doc(name="headline")))
        assert load_config(path).name == "headline"

    def test_missing_file(self, tmp_path):
        path = tmp_path / "absent.json"
        with pytest.raises(ConfigError) as info:
            load_config(path)
        assert info.value.path == str(path)

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{")
        with pytest.raises(ConfigError, match="invalid JSON"):
            load_config(path)
