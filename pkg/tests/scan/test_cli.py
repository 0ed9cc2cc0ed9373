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

import pytest

from nhblockade._src.scan.cli import EXIT_CONFIG, EXIT_OK, main
from nhblockade._src.scan.io import read_csv_rows

HEADLINE = {
    "name": "headline",
    "model": "quadratic",
    "params": {"gamma_a": 1.0, "gamma_b": 1e-3, "g": 0.1},
}


@pytest.fixture
def config_path(tmp_path):
    path = tmp_path / "headline.json"
    path.write_text(json.dumps(HEADLINE))
    return path


class TestScan:
    def test_writes_csv(self, config_path, tmp_path, capsys):
        out = tmp_path / "results"
        argv = ["scan", "--config", str(config_path), "--out", str(out)]
        assert main([*argv, "--threads", "1"]) == EXIT_OK
        assert capsys.readouterr().out.strip() == str(out / "headline.csv")
        (row,) = read_csv_rows(out / "headline.csv")
        assert float(row["g2"]) == pytest.approx(1 / 1681, rel=1e-8)
        assert (out / "headline.meta.json").exists()

    def test_config_error(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({**HEADLINE, "model": "cubic"}))
        argv = ["scan", "--config", str(path), "--out", str(tmp_path)]
        assert main(argv) == EXIT_CONFIG

    def test_missing_config(self, tmp_path):
        argv = ["scan", "--config", str(tmp_path / "absent.json"), "--out", "x"]
        assert main(argv) == EXIT_CONFIG


class TestEig:
    def test_prints_eigensystem(self, config_path, capsys):
        argv = ["eig", "--config", str(config_path), "--manifold", "2"]
        assert main(argv) == EXIT_OK
        doc = json.loads(capsys.readouterr().out)
        assert doc["model"] == "quadratic"
        assert doc["manifold"] == 2
        assert doc["basis"] == ["|1,0>", "|0,2>"]
        assert len(doc["matrix"]["real"]) == 2
        assert len(doc["eigenvalues"]["imag"]) == 2

    def test_manifold_range(self, config_path):
        with pytest.raises(SystemExit) as info:
            main(["eig", "--config", str(config_path), "--manifold", "4"])
        assert info.value.code == 2


class TestValidate:
    def test_passing_case(self, capsys):
        assert main(["validate", "manifold-sizes"]) == EXIT_OK
        (report,) = json.loads(capsys.readouterr().out)
        assert report["case"] == "manifold-sizes"
        assert report["passed"]

    @pytest.mark.parametrize(
        "argv",
        [["validate", "everything"], ["figure", "fig9", "--out", "x"], []],
    )
    def test_usage_errors(self, argv):
        with pytest.raises(SystemExit) as info:
            main(argv)
        assert info.value.code == 2
