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
"""CSV and JSON emission of scan datasets.

Data files contain no run-variant fields: identical datasets produce identical
bytes. Package versions and other provenance go to the metadata, which for CSV is
a sidecar `<name>.meta.json`.
"""

import csv
import json
import math
from importlib import metadata
from pathlib import Path

import jax

from nhblockade._src.core.errors import NHPBError
from nhblockade._src.core.typing import Any, Literal
from nhblockade._src.lindblad import DEFAULT_DRIVE_FRACTION
from nhblockade._src.scan.sweep import Dataset

Format = Literal["csv", "json"]


class DatasetWriteError(NHPBError):
    pass


def package_version() -> str:
    try:
        return metadata.version("nhblockade")
    except metadata.PackageNotFoundError:
        return "unknown"


def dataset_metadata(dataset: Dataset) -> dict[str, Any]:
    config = dataset.config
    oracle = config.oracle.as_dict()
    if config.oracle.enabled and config.oracle.omega is None:
        oracle["omega"] = (
            f"{DEFAULT_DRIVE_FRACTION!r} x narrowest single-excitation linewidth"
        )
    return {
        "nhblockade_version": package_version(),
        "jax_version": jax.__version__,
        "config": config.as_dict(),
        "thresholds": config.numerics.as_dict(),
        "oracle": oracle,
        "notes": list(config.notes),
        "rows": len(dataset),
        "flagged_rows": dataset.flagged,
    }


def _cell(value: Any) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def format_csv(dataset: Dataset) -> str:
    lines = [",".join(dataset.columns)]
    lines.extend(",".join(_cell(v) for v in row) for row in dataset.rows)
    return "\n".join(lines) + "\n"


def _json_value(value: Any) -> Any:
    if isinstance(value, float) and math.isnan(value):
        return None
    return value


def format_json(dataset: Dataset) -> str:
    """Rows as objects keyed by column; observables of flagged rows are `null`."""
    rows = [
        {key: _json_value(value) for key, value in record.items()}
        for record in dataset.records()
    ]
    return json.dumps(
        {"metadata": dataset_metadata(dataset), "rows": rows},
        indent=1,
        allow_nan=False,
    )


def _write(path: Path, text: str) -> None:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8", newline="")
    except OSError as e:
        raise DatasetWriteError(f"Cannot write {path}: {e.strerror or e}.") from e


def write_dataset(dataset: Dataset, path: str | Path, format: Format = "csv") -> Path:
    """Write `dataset` to `path` and return it. CSV output also writes the sidecar
    `<stem>.meta.json` next to it."""
    path = Path(path)
    match format:
        case "csv":
            _write(path, format_csv(dataset))
            sidecar = path.with_name(f"{path.stem}.meta.json")
            _write(sidecar, json.dumps(dataset_metadata(dataset), indent=1) + "\n")
        case "json":
            _write(path, format_json(dataset) + "\n")
        case _:
            raise ValueError(f"Unknown dataset format {format!r}.")
    return path


def read_csv_rows(path: str | Path) -> list[dict[str, str]]:
    with open(path, newline="", encoding="utf-8") as f:
        return list(csv.DictReader(f))
