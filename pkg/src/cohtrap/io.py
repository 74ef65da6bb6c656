"""Deterministic table and manifest I/O plus JSON configuration loading.

CSV output is RFC-4180 (minimal quoting), LF line endings, with a header row
and floats at 9 significant digits, so identical runs produce byte-identical
files.  Every CSV is accompanied by a JSON manifest that echoes the full run
configuration; a manifest is itself loadable as a configuration file.
"""

from __future__ import annotations

import csv
import dataclasses
import json
from typing import Sequence

from .dephasing import BathSpec, CorrelationSpec, ModelParams, QubitSpec
from .errors import DomainError
from .mathcore import QuadratureSpec
from .qsl import MODE_PAPER_LITERAL, QSL_MODES, TrappingSpec

__all__ = [
    "format_cell",
    "write_csv",
    "write_manifest",
    "load_config",
    "config_to_model",
    "model_to_config",
]


def format_cell(value) -> str:
    """One CSV cell: floats at 9 significant digits, None as empty."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        return f"{value:.9g}"
    return str(value)


def write_csv(path: str, columns: Sequence[str], rows: Sequence[Sequence]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n", quoting=csv.QUOTE_MINIMAL)
        writer.writerow(list(columns))
        for row in rows:
            writer.writerow([format_cell(v) for v in row])


def write_manifest(path: str, manifest: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")


def model_to_config(
    params: ModelParams,
    trapping: TrappingSpec = TrappingSpec(),
    quad: QuadratureSpec = QuadratureSpec(),
    qsl_mode: str = MODE_PAPER_LITERAL,
) -> dict:
    """Serialize a full run configuration (the manifest 'config' block)."""
    return {
        "model": {
            "alpha": params.bath.alpha,
            "mu": params.bath.mu,
            "omega_c": params.bath.omega_c,
            "lambda": params.corr.lam,
            "upsilon": params.corr.upsilon,
            "omega0": params.qubit.omega0,
            "ce": [params.qubit.ce.real, params.qubit.ce.imag],
            "cg": [params.qubit.cg.real, params.qubit.cg.imag],
        },
        "trapping": dataclasses.asdict(trapping),
        "quadrature": dataclasses.asdict(quad),
        "qsl_mode": qsl_mode,
    }


def config_to_model(cfg: dict):
    """Build (ModelParams, TrappingSpec, QuadratureSpec, qsl_mode) from a
    configuration dictionary; missing keys fall back to defaults."""
    m = cfg.get("model", {})
    ce = m.get("ce", [1.0 / 2**0.5, 0.0])
    cg = m.get("cg", [1.0 / 2**0.5, 0.0])
    params = ModelParams(
        bath=BathSpec(
            alpha=float(m.get("alpha", 0.2)),
            mu=float(m.get("mu", 1.46)),
            omega_c=float(m.get("omega_c", 1.0)),
        ),
        corr=CorrelationSpec(
            lam=float(m.get("lambda", 0.0)),
            upsilon=float(m.get("upsilon", 1.5)),
        ),
        qubit=QubitSpec(
            omega0=float(m.get("omega0", 0.0)),
            ce=complex(ce[0], ce[1]),
            cg=complex(cg[0], cg[1]),
        ),
    )
    tr = cfg.get("trapping", {})
    trapping = TrappingSpec(
        rel_tol=float(tr.get("rel_tol", 1e-3)),
        abs_tol=float(tr.get("abs_tol", 1e-6)),
        t_max=None if tr.get("t_max") is None else float(tr["t_max"]),
        grid_n=int(tr.get("grid_n", 5000)),
    )
    q = cfg.get("quadrature", {})
    quad = QuadratureSpec(
        abs_tol=float(q.get("abs_tol", 1e-9)),
        max_depth=int(q.get("max_depth", 40)),
    )
    mode = cfg.get("qsl_mode", MODE_PAPER_LITERAL)
    if mode not in QSL_MODES:
        raise DomainError(f"config: unknown qsl_mode {mode!r}")
    return params, trapping, quad, mode


def load_config(path: str) -> dict:
    """Load a JSON configuration; a run manifest works too (its 'config'
    block is used when present)."""
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise DomainError(f"config {path}: expected a JSON object")
    if "config" in data and isinstance(data["config"], dict):
        return data["config"]
    return data
