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

from nhblockade._src.scan.config import (
    AxisSpec,
    ConfigError,
    OracleSettings,
    ScanConfig,
    Tie,
    load_config,
    parse_config,
)
from nhblockade._src.scan.io import DatasetWriteError, write_dataset
from nhblockade._src.scan.presets import PRESETS, UnknownPresetError, figure_preset
from nhblockade._src.scan.sweep import Dataset, run_scan
from nhblockade._src.scan.validate import (
    Check,
    UnknownCaseError,
    ValidationReport,
    validate,
)

__all__ = [
    "PRESETS",
    "AxisSpec",
    "Check",
    "ConfigError",
    "Dataset",
    "DatasetWriteError",
    "OracleSettings",
    "ScanConfig",
    "Tie",
    "UnknownCaseError",
    "UnknownPresetError",
    "ValidationReport",
    "figure_preset",
    "load_config",
    "parse_config",
    "run_scan",
    "validate",
    "write_dataset",
]
