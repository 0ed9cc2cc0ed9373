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
"""Grid evaluation of a `ScanConfig`.

The grid is split into fixed-size chunks; each chunk is evaluated by one
jit-compiled, vmapped call of `evaluate_point` and chunks run on a thread pool.
Rows are assembled in grid order, so the result does not depend on the number of
workers.
"""

import dataclasses
import logging
import math
import os
import warnings
from concurrent.futures import ThreadPoolExecutor
from functools import partial

import jax
import jax.numpy as jnp
import numpy as np

from nhblockade._src.checkify import call_checked, checks_enabled
from nhblockade._src.core.errors import NHPBError, Status
from nhblockade._src.core.fock import enumerate_manifold
from nhblockade._src.core.pytree import Pytree
from nhblockade._src.core.typing import Any, FloatArray
from nhblockade._src.correlations.analytic import (
    g2_hybrid_analytic_traced,
    g2_quadratic_analytic,
    nhpb_threshold_d,
)
from nhblockade._src.correlations.point import evaluate_point
from nhblockade._src.lindblad import (
    TruncationSpec,
    default_truncation,
    run_oracle,
)
from nhblockade._src.scan.config import ConfigError, ScanConfig

logger = logging.getLogger(__name__)

CHUNK_SIZE = 512

# Column name -> (output group, field of the evaluated point). The first block is
# the stable header prefix; the decay spectra follow the second block.
_COLUMNS = (
    ("I_rel", "I", "intensity_rel"),
    ("g2", "g2", "g2"),
    ("g3", "g3", "g3"),
    ("g2_two_state", "two_state", "g2_two_state"),
    ("g2_tampered", "tampered", "g2_tampered"),
    ("Gamma_p1", "eigs", "gamma_p1"),
    ("Gamma_p2", "eigs", "gamma_p2"),
    ("N2_p1", "components", "n2_p1"),
    ("N2_p2", "components", "n2_p2"),
    ("g3_tampered", "tampered", "g3_tampered"),
    ("I_tampered", "tampered", "intensity_tampered"),
    ("g2_narrowest", "narrowest", "g2_narrowest"),
    ("g3_narrowest", "narrowest", "g3_narrowest"),
    ("I_narrowest", "narrowest", "intensity_narrowest"),
    ("g2_analytic", "analytic", "g2_analytic"),
    ("d_threshold", "threshold", "d_threshold"),
    ("E_p1", "eigs", "e_p1"),
    ("E_p2_half", "eigs", "e_p2_half"),
    ("N1_p1", "components", "n1_p1"),
    ("N1_p2", "components", "n1_p2"),
)
ORACLE_COLUMNS = ("I_oracle", "g2_oracle", "g3_oracle")


@Pytree.dataclass
class Dataset(Pytree):
    """Rows of a finished scan. Each row starts with the model name and the axis
    values and ends with the status reason (`ok` or a failure code); observables of
    failed rows are `nan`."""

    config: ScanConfig = Pytree.static()
    columns: tuple[str, ...] = Pytree.static()
    rows: tuple[tuple[Any, ...], ...] = Pytree.static()

    def __len__(self) -> int:
        return len(self.rows)

    def column(self, name: str) -> np.ndarray:
        j = self.columns.index(name)
        values = [row[j] for row in self.rows]
        dtype = object if name in ("model", "status") else float
        return np.asarray(values, dtype=dtype)

    @property
    def flagged(self) -> int:
        return sum(row[-1] != Status.OK.reason for row in self.rows)

    def records(self) -> list[dict[str, Any]]:
        return [dict(zip(self.columns, row)) for row in self.rows]


def worker_count() -> int:
    """Thread pool size: `NHPB_THREADS` when set, otherwise the CPU count."""
    raw = os.environ.get("NHPB_THREADS")
    if raw is None:
        return os.cpu_count() or 1
    try:
        threads = int(raw)
    except ValueError:
        message = f"expected an integer, got {raw!r}."
        raise ConfigError("NHPB_THREADS", message) from None
    if threads < 1:
        raise ConfigError("NHPB_THREADS", "expected at least one thread.")
    return threads


def observable_columns(config: ScanConfig) -> tuple[str, ...]:
    layout = config.params.layout()
    columns = [name for name, group, _ in _COLUMNS if group in config.outputs]
    if "eigs" in config.outputs:
        for q in (1, 2):
            dim = len(enumerate_manifold(layout, q))
            columns.extend(f"Gamma_q{q}_{j}" for j in range(dim))
    if config.oracle.enabled:
        columns.extend(ORACLE_COLUMNS)
    return tuple(columns)


def dataset_columns(config: ScanConfig) -> tuple[str, ...]:
    return ("model", *config.axis_names, *observable_columns(config), "status")


def _evaluate(config: ScanConfig, values: FloatArray) -> dict[str, Any]:
    params, drive = config.at(values)
    point = evaluate_point(params, drive, config.numerics)
    out = {f.name: getattr(point, f.name) for f in dataclasses.fields(point)}
    if "analytic" in config.outputs:
        if config.model == "quadratic":
            out["g2_analytic"] = g2_quadratic_analytic(params)
        else:
            out["g2_analytic"] = g2_hybrid_analytic_traced(params)
    if "threshold" in config.outputs:
        out["d_threshold"] = nhpb_threshold_d(
            params.g_2, params.gamma_1, params.gamma_2
        )
    return out


def _row_status(
    config: ScanConfig,
    born: np.ndarray,
    spectral: np.ndarray,
) -> np.ndarray:
    if not config.needs_spectral:
        return born
    return np.where(born != Status.OK, born, spectral)


def _oracle_values(config: ScanConfig, values: np.ndarray) -> tuple[float, ...]:
    params, drive = config.at(jnp.asarray(values))
    trunc = default_truncation(params, config.oracle.omega)
    if config.oracle.n_max is not None:
        trunc = TruncationSpec(config.oracle.n_max, trunc.omega)
    try:
        result = run_oracle(params, drive, trunc)
    except NHPBError as e:
        logger.warning("Oracle failed at %s: %s", values.tolist(), e)
        return (math.nan,) * len(ORACLE_COLUMNS)
    return float(result.intensity_rel), float(result.g2), float(result.g3)


def _assemble(
    config: ScanConfig,
    grid: np.ndarray,
    out: dict[str, np.ndarray],
    oracle: list[tuple[float, ...]] | None,
) -> tuple[tuple[Any, ...], ...]:
    status = _row_status(config, out["born_status"], out["spectral_status"])
    observables = observable_columns(config)
    rows = []
    for i, axis_values in enumerate(grid):
        code = Status.of(int(status[i]))
        row = [config.model, *(float(v) for v in axis_values)]
        if code != Status.OK:
            row.extend([math.nan] * len(observables))
        else:
            for name, group, field in _COLUMNS:
                if group in config.outputs:
                    row.append(float(out[field][i]))
            if "eigs" in config.outputs:
                row.extend(float(v) for v in out["decay_q1"][i])
                row.extend(float(v) for v in out["decay_q2"][i])
            if oracle is not None:
                row.extend(oracle[i])
        row.append(code.reason)
        rows.append(tuple(row))
    return tuple(rows)


def run_scan(config: ScanConfig, threads: int | None = None) -> Dataset:
    """Evaluate every grid point of `config`. Points whose resolvent is singular or
    whose spectrum cannot be resolved become flagged rows rather than errors."""
    grid = config.grid()
    threads = threads or worker_count()
    n = grid.shape[0]
    logger.info(
        "Scanning %s (%s model): %d points on %d worker(s).",
        config.name,
        config.model,
        n,
        threads,
    )

    batched = jax.vmap(partial(_evaluate, config))
    evaluate = partial(call_checked, batched) if checks_enabled() else jax.jit(batched)
    size = min(CHUNK_SIZE, n)
    chunks = []
    for start in range(0, n, size):
        chunk = grid[start : start + size]
        pad = size - chunk.shape[0]
        if pad:
            chunk = np.concatenate([chunk, np.repeat(chunk[-1:], pad, axis=0)])
        chunks.append(jnp.asarray(chunk, dtype=jnp.float64))

    with ThreadPoolExecutor(max_workers=threads) as pool:
        results = list(pool.map(lambda c: jax.device_get(evaluate(c)), chunks))
        oracle = None
        if config.oracle.enabled:
            oracle = list(pool.map(partial(_oracle_values, config), grid))

    out = {
        key: np.concatenate([np.asarray(r[key]) for r in results])[:n]
        for key in results[0]
    }
    rows = _assemble(config, grid, out, oracle)
    dataset = Dataset(config, dataset_columns(config), rows)
    if dataset.flagged:
        logger.info("%d of %d rows flagged.", dataset.flagged, n)
        warnings.warn(f"{dataset.flagged} grid point(s) could not be evaluated.")
    return dataset
