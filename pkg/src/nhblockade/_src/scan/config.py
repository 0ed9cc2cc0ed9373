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
"""Scan configuration records and their JSON parsing.

A configuration document is a single JSON object whose keys are the
lower_snake_case field names below. Parsing is fail-closed: anything unexpected
raises `ConfigError` naming the offending field path.

    {
      "name": "fig3",
      "model": "hybrid",
      "params": {"gamma_e": 1e-5, "gamma_1": 1e-3, "gamma_2": 1.0,
                 "g_1": 0.0, "g_2": 0.0667, "d": 0.1},
      "drive": {"pump_target": 0, "detect_target": 0, "omega_L_detuning": 0.0},
      "axes": [{"name": "omega_L_detuning", "from": -1.5, "to": 1.5,
                "steps": 301, "linear": true}],
      "outputs": ["I", "g2", "g3"],
      "oracle": {"enabled": false},
      "numerics": {"accessibility_threshold": 1e-6},
      "ties": [{"target": "g_1", "source": "d", "factor": 0.011976}]
    }

Every energy is in units of the model's reference rate (`gamma_2` for the hybrid
model, `gamma_a` for the quadratic one).
"""

import dataclasses
import json
from pathlib import Path

import numpy as np

from nhblockade._src.core.errors import NHPBError
from nhblockade._src.core.pytree import Pytree
from nhblockade._src.core.settings import NumericSettings
from nhblockade._src.core.typing import Any, FloatArray, Iterable, Mapping
from nhblockade._src.hamiltonians import MODELS, DriveSpec, ModelParams

DETUNING_AXIS = "omega_L_detuning"

# Output groups in column order.
OUTPUT_GROUPS = (
    "I",
    "g2",
    "g3",
    "two_state",
    "narrowest",
    "tampered",
    "analytic",
    "threshold",
    "eigs",
    "components",
)
SPECTRAL_GROUPS = frozenset(
    {"two_state", "narrowest", "tampered", "eigs", "components"}
)


class ConfigError(NHPBError):
    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


@Pytree.dataclass
class AxisSpec(Pytree):
    """One scan axis: a model parameter or `omega_L_detuning`, sampled at `steps`
    points from `start` to `stop` inclusive, linearly or geometrically."""

    name: str = Pytree.static()
    start: float = Pytree.static()
    stop: float = Pytree.static()
    steps: int = Pytree.static()
    linear: bool = Pytree.static(default=True)

    def values(self) -> np.ndarray:
        if self.linear:
            return np.linspace(self.start, self.stop, self.steps)
        return np.geomspace(self.start, self.stop, self.steps)

    def as_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "from": self.start,
            "to": self.stop,
            "steps": self.steps,
            "linear": self.linear,
        }


@Pytree.dataclass
class Tie(Pytree):
    """Hold `target = factor * source` at every grid point."""

    target: str = Pytree.static()
    source: str = Pytree.static()
    factor: float = Pytree.static()

    def as_dict(self) -> dict[str, Any]:
        return {"target": self.target, "source": self.source, "factor": self.factor}


@Pytree.dataclass
class OracleSettings(Pytree):
    """Lindblad cross-check per grid point. `omega` and `n_max` fall back to the
    oracle defaults when left as `None`."""

    enabled: bool = Pytree.static(default=False)
    omega: float | None = Pytree.static(default=None)
    n_max: tuple[int, ...] | None = Pytree.static(default=None)

    def as_dict(self) -> dict[str, Any]:
        return {
            "enabled": self.enabled,
            "omega": self.omega,
            "n_max": None if self.n_max is None else list(self.n_max),
        }


@Pytree.dataclass
class ScanConfig(Pytree):
    model: str = Pytree.static()
    params: ModelParams
    drive: DriveSpec
    axes: tuple[AxisSpec, ...] = Pytree.static()
    outputs: tuple[str, ...] = Pytree.static()
    oracle: OracleSettings = Pytree.static(default_factory=OracleSettings)
    numerics: NumericSettings = Pytree.static(default_factory=NumericSettings)
    ties: tuple[Tie, ...] = Pytree.static(default=())
    name: str = Pytree.static(default="scan")
    notes: tuple[str, ...] = Pytree.static(default=())

    @property
    def axis_names(self) -> tuple[str, ...]:
        return tuple(axis.name for axis in self.axes)

    @property
    def needs_spectral(self) -> bool:
        return bool(SPECTRAL_GROUPS.intersection(self.outputs))

    def grid(self) -> np.ndarray:
        """All grid points, shape `(points, len(axes))`, the last axis varying
        fastest."""
        if not self.axes:
            return np.zeros((1, 0))
        mesh = np.meshgrid(*(axis.values() for axis in self.axes), indexing="ij")
        return np.stack([m.reshape(-1) for m in mesh], axis=-1)

    def at(self, values: FloatArray) -> tuple[ModelParams, DriveSpec]:
        """Parameters and drive at one grid point; traceable in `values`."""
        changes = {}
        drive = self.drive
        for i, name in enumerate(self.axis_names):
            if name == DETUNING_AXIS:
                drive = drive.at(values[i])
            else:
                changes[name] = values[i]
        params = self.params.replace(**changes) if changes else self.params
        if self.ties:
            params = params.replace(**{
                tie.target: tie.factor * getattr(params, tie.source)
                for tie in self.ties
            })
        return params, drive

    def as_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "model": self.model,
            "params": self.params.as_dict(),
            "drive": {
                "pump_target": self.drive.pump_target,
                "detect_target": self.drive.detect_target,
                "omega_L_detuning": float(self.drive.omega_L_detuning),
            },
            "axes": [axis.as_dict() for axis in self.axes],
            "outputs": list(self.outputs),
            "oracle": self.oracle.as_dict(),
            "numerics": self.numerics.as_dict(),
            "ties": [tie.as_dict() for tie in self.ties],
        }


###########
# Parsing #
###########


def _object(
    doc: Any,
    path: str,
    allowed: Iterable[str],
    required: Iterable[str] = (),
) -> Mapping[str, Any]:
    if not isinstance(doc, Mapping):
        raise ConfigError(path, "expected an object.")
    allowed = set(allowed)
    for key in doc:
        if key not in allowed:
            raise ConfigError(f"{path}.{key}", "unknown key.")
    for key in sorted(set(required) - set(doc)):
        raise ConfigError(f"{path}.{key}", "missing required key.")
    return doc


def _number(value: Any, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(path, f"expected a number, got {value!r}.")
    if not np.isfinite(value):
        raise ConfigError(path, "expected a finite number.")
    return float(value)


def _integer(value: Any, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(path, f"expected an integer, got {value!r}.")
    return value


def _boolean(value: Any, path: str) -> bool:
    if not isinstance(value, bool):
        raise ConfigError(path, f"expected true or false, got {value!r}.")
    return value


def _list(value: Any, path: str) -> list[Any]:
    if not isinstance(value, list):
        raise ConfigError(path, "expected an array.")
    return value


def _params(doc: Any, model_cls: type[ModelParams]) -> ModelParams:
    required = {
        f.name
        for f in dataclasses.fields(model_cls)
        if f.default is dataclasses.MISSING
    }
    _object(doc, "params", model_cls.parameter_names(), required)
    values = {k: _number(v, f"params.{k}") for k, v in doc.items()}
    try:
        return model_cls(**values).validate()
    except ValueError as e:
        raise ConfigError("params", str(e)) from e


def _drive(doc: Any, model: str, params: ModelParams) -> DriveSpec:
    default = DriveSpec.default_for(model)
    if doc is None:
        return default
    _object(doc, "drive", ("pump_target", "detect_target", "omega_L_detuning"))
    pump = doc.get("pump_target", default.pump_target)
    detect = doc.get("detect_target", default.detect_target)
    drive = DriveSpec(
        _integer(pump, "drive.pump_target"),
        _integer(detect, "drive.detect_target"),
        _number(doc.get("omega_L_detuning", 0.0), "drive.omega_L_detuning"),
    )
    try:
        drive.check_layout(params.layout())
    except ValueError as e:
        raise ConfigError("drive", str(e)) from e
    return drive


def _axis(doc: Any, path: str, allowed_names: tuple[str, ...]) -> AxisSpec:
    required = ("name", "from", "to", "steps")
    _object(doc, path, (*required, "linear"), required)
    name = doc["name"]
    if name not in allowed_names:
        raise ConfigError(
            f"{path}.name", f"unknown axis {name!r}; expected one of {allowed_names}."
        )
    start = _number(doc["from"], f"{path}.from")
    stop = _number(doc["to"], f"{path}.to")
    steps = _integer(doc["steps"], f"{path}.steps")
    linear = _boolean(doc.get("linear", True), f"{path}.linear")
    if steps < 2:
        raise ConfigError(f"{path}.steps", "an axis needs at least 2 steps.")
    if not start < stop:
        raise ConfigError(f"{path}.from", "'from' must be smaller than 'to'.")
    if not linear and start <= 0.0:
        raise ConfigError(f"{path}.from", "a geometric axis must start above zero.")
    return AxisSpec(name, start, stop, steps, linear)


def _outputs(doc: Any, model: str) -> tuple[str, ...]:
    requested = _list(doc, "outputs")
    for i, group in enumerate(requested):
        if group not in OUTPUT_GROUPS:
            raise ConfigError(f"outputs[{i}]", f"unknown output group {group!r}.")
    if "threshold" in requested and model != "hybrid":
        raise ConfigError(
            "outputs", "the threshold group exists only for the hybrid model."
        )
    return tuple(g for g in OUTPUT_GROUPS if g in requested)


def _oracle(doc: Any, params: ModelParams) -> OracleSettings:
    if doc is None:
        return OracleSettings()
    _object(doc, "oracle", ("enabled", "omega", "n_max"))
    enabled = _boolean(doc.get("enabled", False), "oracle.enabled")
    omega = doc.get("omega")
    if omega is not None:
        omega = _number(omega, "oracle.omega")
        if omega <= 0.0:
            raise ConfigError("oracle.omega", "the drive amplitude must be positive.")
    n_max = doc.get("n_max")
    if n_max is not None:
        modes = params.layout().bosonic_mode_count
        n_max = tuple(
            _integer(n, f"oracle.n_max[{i}]")
            for i, n in enumerate(_list(n_max, "oracle.n_max"))
        )
        if len(n_max) != modes or min(n_max) < 2:
            raise ConfigError(
                "oracle.n_max", f"expected {modes} truncations of at least 2."
            )
    return OracleSettings(enabled, omega, n_max)


def _numerics(doc: Any) -> NumericSettings:
    if doc is None:
        return NumericSettings()
    _object(doc, "numerics", (f.name for f in dataclasses.fields(NumericSettings)))
    values = {
        k: _integer(v, f"numerics.{k}") if k == "q_max" else _number(v, f"numerics.{k}")
        for k, v in doc.items()
    }
    try:
        settings = NumericSettings(**values)
    except ValueError as e:
        raise ConfigError("numerics", str(e)) from e
    if settings.q_max < 2:
        raise ConfigError("numerics.q_max", "scans need q_max >= 2.")
    return settings


def _ties(
    doc: Any,
    names: tuple[str, ...],
    axis_names: tuple[str, ...],
) -> tuple[Tie, ...]:
    ties = []
    for i, entry in enumerate(_list(doc, "ties")):
        path = f"ties[{i}]"
        keys = ("target", "source", "factor")
        _object(entry, path, keys, keys)
        for key in ("target", "source"):
            if entry[key] not in names:
                raise ConfigError(f"{path}.{key}", f"unknown parameter {entry[key]!r}.")
        if entry["target"] in axis_names:
            raise ConfigError(f"{path}.target", "a tied parameter cannot be scanned.")
        factor = _number(entry["factor"], f"{path}.factor")
        ties.append(Tie(entry["target"], entry["source"], factor))
    return tuple(ties)


_CONFIG_KEYS = (
    "name",
    "model",
    "params",
    "drive",
    "axes",
    "outputs",
    "oracle",
    "numerics",
    "ties",
)


def parse_config(doc: Any) -> ScanConfig:
    """Validate a decoded JSON document and build a `ScanConfig`."""
    _object(doc, "config", _CONFIG_KEYS, ("model", "params"))
    model = doc["model"]
    if model not in MODELS:
        raise ConfigError(
            "model", f"unknown model {model!r}; expected one of {sorted(MODELS)}."
        )
    model_cls = MODELS[model]
    params = _params(doc["params"], model_cls)
    drive = _drive(doc.get("drive"), model, params)

    allowed_axes = (DETUNING_AXIS, *model_cls.parameter_names())
    raw_axes = _list(doc.get("axes", []), "axes")
    if len(raw_axes) > 2:
        raise ConfigError("axes", "at most two scan axes are supported.")
    axes = tuple(_axis(a, f"axes[{i}]", allowed_axes) for i, a in enumerate(raw_axes))
    axis_names = tuple(a.name for a in axes)
    if len(set(axis_names)) != len(axes):
        raise ConfigError("axes", "axis names must be distinct.")

    name = doc.get("name", "scan")
    if not isinstance(name, str) or not name:
        raise ConfigError("name", "expected a non-empty string.")
    return ScanConfig(
        model=model,
        params=params,
        drive=drive,
        axes=axes,
        outputs=_outputs(doc.get("outputs", ["I", "g2", "g3"]), model),
        oracle=_oracle(doc.get("oracle"), params),
        numerics=_numerics(doc.get("numerics")),
        ties=_ties(doc.get("ties", []), model_cls.parameter_names(), axis_names),
        name=name,
    )


def load_config(path: str | Path) -> ScanConfig:
    path = Path(path)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except OSError as e:
        message = f"cannot read configuration ({e.strerror})."
        raise ConfigError(str(path), message) from e
    except json.JSONDecodeError as e:
        message = f"invalid JSON at line {e.lineno}: {e.msg}."
        raise ConfigError(str(path), message) from e
    return parse_config(doc)
