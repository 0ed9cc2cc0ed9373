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

import math

import pytest

from nhblockade._src.scan import sweep
from nhblockade._src.scan.io import format_csv
from nhblockade.hamiltonians import DriveSpec, QuadraticParams
from nhblockade.scan import (
    AxisSpec,
    ConfigError,
    ScanConfig,
    figure_preset,
    parse_config,
    run_scan,
)

DETUNING = {"name": "omega_L_detuning", "from": -1.0, "to": 1.0}


def headline(**overrides) -> ScanConfig:
    doc = {
        "model": "quadratic",
        "params": {"gamma_a": 1.0, "gamma_b": 1e-3, "g": 0.1},
    }
    doc.update(overrides)
    return parse_config(doc)


class TestRunScan:
    def test_single_point(self):
        data = run_scan(headline(outputs=["I", "g2", "g3", "analytic"]), threads=1)
        assert data.columns == ("model", "I_rel", "g2", "g3", "g2_analytic", "status")
        assert len(data) == 1
        (record,) = data.records()
        assert record["model"] == "quadratic"
        assert record["status"] == "ok"
        assert record["g2"] == pytest.approx(1 / 1681, rel=1e-8)
        assert record["I_rel"] == pytest.approx(4e6, rel=1e-8)
        assert record["g2_analytic"] == pytest.approx(1 / 1681, rel=1e-12)
        assert data.flagged == 0

    def test_detuning_axis(self):
        data = run_scan(headline(axes=[{**DETUNING, "steps": 5}]), threads=1)
        assert data.columns[:2] == ("model", "omega_L_detuning")
        assert data.column("omega_L_detuning").tolist() == pytest.approx(
            [-1.0, -0.5, 0.0, 0.5, 1.0]
        )
        assert data.column("g2")[2] == pytest.approx(1 / 1681, rel=1e-8)
        assert set(data.column("status")) == {"ok"}

    def test_rows_independent_of_threads(self, monkeypatch):
        monkeypatch.setattr(sweep, "CHUNK_SIZE", 4)
        config = headline(axes=[{**DETUNING, "steps": 10}])
        single = format_csv(run_scan(config, threads=1))
        pooled = format_csv(run_scan(config, threads=3))
        assert single == pooled
        assert single.count("\n") == 11

    def test_flagged_row(self):
        lossless = ScanConfig(
            model="quadratic",
            params=QuadraticParams(gamma_a=1.0, gamma_b=0.0, g=0.0),
            drive=DriveSpec.default_for("quadratic"),
            axes=(AxisSpec("omega_L_detuning", -1.0, 1.0, 3),),
            outputs=("I", "g2"),
        )
        with pytest.warns(UserWarning, match="could not be evaluated"):
            data = run_scan(lossless, threads=1)
        assert data.column("status").tolist() == [
            "ok",
            "singular_resolvent",
            "ok",
        ]
        assert data.flagged == 1
        g2 = data.column("g2")
        assert math.isnan(g2[1])
        assert math.isfinite(g2[0])
        assert math.isfinite(g2[2])

    def test_oracle_columns(self):
        config = parse_config({
            "model": "quadratic",
            "params": {"gamma_a": 1.0, "gamma_b": 0.5, "g": 0.3},
            "outputs": ["g2"],
            "oracle": {"enabled": True, "omega": 1e-2, "n_max": [2, 3]},
        })
        data = run_scan(config, threads=1)
        assert data.columns[-4:] == ("I_oracle", "g2_oracle", "g3_oracle", "status")
        (record,) = data.records()
        assert record["g2_oracle"] == pytest.approx(record["g2"], rel=2e-2)

    def test_spectral_columns(self):
        config = figure_preset("fig3").replace(axes=(), outputs=("eigs", "components"))
        assert sweep.dataset_columns(config) == (
            "model",
            "Gamma_p1",
            "Gamma_p2",
            "N2_p1",
            "N2_p2",
            "E_p1",
            "E_p2_half",
            "N1_p1",
            "N1_p2",
            "Gamma_q1_0",
            "Gamma_q1_1",
            "Gamma_q1_2",
            "Gamma_q2_0",
            "Gamma_q2_1",
            "Gamma_q2_2",
            "Gamma_q2_3",
            "Gamma_q2_4",
            "status",
        )
        (record,) = run_scan(config, threads=1).records()
        assert record["status"] == "ok"
        widths = [record[f"Gamma_q1_{j}"] for j in range(3)]
        assert min(abs(w - record["Gamma_p1"]) / w for w in widths) < 1e-9

    def test_stable_header_prefix(self):
        outputs = ("I", "g2", "g3", "two_state", "narrowest", "tampered", "eigs")
        config = figure_preset("fig3").replace(outputs=(*outputs, "components"))
        columns = sweep.dataset_columns(config)
        assert columns[:11] == (
            "model",
            "omega_L_detuning",
            "I_rel",
            "g2",
            "g3",
            "g2_two_state",
            "g2_tampered",
            "Gamma_p1",
            "Gamma_p2",
            "N2_p1",
            "N2_p2",
        )
        assert columns[-1] == "status"
        assert len(set(columns)) == len(columns)


class TestWorkerCount:
    def test_from_environment(self, monkeypatch):
        monkeypatch.setenv("NHPB_THREADS", "3")
        assert sweep.worker_count() == 3

    def test_default(self, monkeypatch):
        monkeypatch.delenv("NHPB_THREADS", raising=False)
        assert sweep.worker_count() >= 1

    @pytest.mark.parametrize("raw", ["many", "0"])
    def test_rejects(self, monkeypatch, raw):
        monkeypatch.setenv("NHPB_THREADS", raw)
        with pytest.raises(ConfigError) as info:
            sweep.worker_count()
        assert info.value.path == "NHPB_THREADS"
