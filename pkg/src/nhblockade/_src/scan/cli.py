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
"""The `nhpb` command line.

    nhpb scan --config scan.json --out results/ [--format csv|json]
    nhpb figure fig3 --out results/
    nhpb validate all
    nhpb eig --config scan.json --manifold 2

Exit status is 0 on success, 1 when a validation case fails or a dataset cannot
be written, and 2 for configuration errors.
"""

import argparse
import json
import logging
import os
import sys
from pathlib import Path

import jax.numpy as jnp

from nhblockade._src.core.errors import NHPBError
from nhblockade._src.core.fock import enumerate_manifold
from nhblockade._src.core.typing import Any, Sequence
from nhblockade._src.eigensolver import eigendecompose
from nhblockade._src.hamiltonians import build_manifold_hamiltonian
from nhblockade._src.scan.config import ConfigError, ScanConfig, load_config
from nhblockade._src.scan.io import write_dataset
from nhblockade._src.scan.presets import PRESETS, UnknownPresetError, figure_preset
from nhblockade._src.scan.sweep import run_scan
from nhblockade._src.scan.validate import CASES, UnknownCaseError, validate

logger = logging.getLogger("nhblockade")

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CONFIG = 2


def _complex_matrix(m: Any) -> dict[str, list[Any]]:
    m = jnp.asarray(m)
    return {"real": jnp.real(m).tolist(), "imag": jnp.imag(m).tolist()}


def _run_and_write(config: ScanConfig, out: str, fmt: str, threads: int | None) -> Path:
    dataset = run_scan(config, threads)
    path = write_dataset(dataset, Path(out) / f"{config.name}.{fmt}", fmt)
    logger.info("Wrote %d rows to %s.", len(dataset), path)
    print(path)
    return path


def _scan(args: argparse.Namespace) -> int:
    _run_and_write(load_config(args.config), args.out, args.format, args.threads)
    return EXIT_OK


def _figure(args: argparse.Namespace) -> int:
    _run_and_write(figure_preset(args.name), args.out, args.format, args.threads)
    return EXIT_OK


def _validate(args: argparse.Namespace) -> int:
    reports = validate(args.case)
    print(json.dumps([r.as_dict() for r in reports], indent=1))
    failed = [r.case for r in reports if not r.passed]
    if failed:
        logger.error("Failed validation case(s): %s.", ", ".join(failed))
        return EXIT_FAILURE
    return EXIT_OK


def _eig(args: argparse.Namespace) -> int:
    config = load_config(args.config)
    basis = enumerate_manifold(config.params.layout(), args.manifold)
    h = build_manifold_hamiltonian(config.params, args.manifold)
    numerics = config.numerics
    es = eigendecompose(h, numerics.exceptional_point_tol, numerics.symmetry_tol)
    doc = {
        "model": config.model,
        "manifold": args.manifold,
        "basis": [str(s) for s in basis.states],
        "matrix": _complex_matrix(h),
        "eigenvalues": _complex_matrix(es.eigenvalues),
        "eigenvectors": _complex_matrix(es.right_vectors),
    }
    print(json.dumps(doc, indent=1))
    return EXIT_OK


def _manifold(value: str) -> int:
    q = int(value)
    if not 1 <= q <= 3:
        raise argparse.ArgumentTypeError("manifold must lie in 1..3")
    return q


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nhpb",
        description="Weak-drive photon statistics of non-Hermitian photon blockade.",
    )
    parser.add_argument(
        "--log-level",
        default=os.environ.get("NHPB_LOG_LEVEL", "WARNING"),
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        type=str.upper,
    )
    commands = parser.add_subparsers(dest="command", required=True)

    scan = commands.add_parser("scan", help="Run a parameter scan from a JSON config.")
    scan.add_argument("--config", required=True)
    scan.add_argument("--out", required=True)
    scan.set_defaults(handler=_scan)

    figure = commands.add_parser("figure", help="Run a figure preset.")
    figure.add_argument("name", choices=sorted(PRESETS))
    figure.add_argument("--out", required=True)
    figure.set_defaults(handler=_figure)

    for sub in (scan, figure):
        sub.add_argument("--format", choices=["csv", "json"], default="csv")
        sub.add_argument("--threads", type=int, default=None)

    check = commands.add_parser("validate", help="Run validation cases.")
    check.add_argument("case", choices=["all", *CASES])
    check.set_defaults(handler=_validate)

    eig = commands.add_parser(
        "eig", help="Print a manifold Hamiltonian and its eigensystem."
    )
    eig.add_argument("--config", required=True)
    eig.add_argument("--manifold", type=_manifold, required=True)
    eig.set_defaults(handler=_eig)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=getattr(logging, args.log_level),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.handler(args)
    except (ConfigError, UnknownPresetError, UnknownCaseError) as e:
        logger.error("%s", e)
        return EXIT_CONFIG
    except NHPBError as e:
        logger.error("%s", e)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
