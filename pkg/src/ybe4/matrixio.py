"""JSON matrix files: square complex matrices with [re, im] entry pairs.

Schema (version "1"):

    {
      "version": "1",
      "dim": 4,
      "rows": [[[re, im], ...], ...],
      "metadata": {"name": "...", "family": "..."}   # optional
    }

Entries are decimal floats; json round-trips Python floats exactly, so
write -> read -> write is bit-identical.
"""

from __future__ import annotations

import json
import math
import os
from typing import Any

import numpy as np

from .errors import ParseError

__all__ = [
    "MATRIX_FILE_VERSION",
    "matrix_to_rows",
    "rows_to_matrix",
    "matrix_payload",
    "payload_matrix",
    "write_matrix_file",
    "read_matrix_file",
    "dump_report",
]

MATRIX_FILE_VERSION = "1"


def matrix_to_rows(M: np.ndarray) -> list[list[list[float]]]:
    M = np.asarray(M, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in M]


def rows_to_matrix(rows: Any) -> np.ndarray:
    if not isinstance(rows, list) or not rows:
        raise ParseError("rows must be a non-empty list")
    dim = len(rows)
    out = np.zeros((dim, dim), dtype=complex)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != dim:
            raise ParseError(f"row {i} is not a list of {dim} entries")
        for j, entry in enumerate(row):
            if (
                not isinstance(entry, list)
                or len(entry) != 2
                or not all(isinstance(v, (int, float)) for v in entry)
            ):
                raise ParseError(f"entry ({i}, {j}) is not an [re, im] pair")
            re, im = float(entry[0]), float(entry[1])
            if not (math.isfinite(re) and math.isfinite(im)):
                raise ParseError(f"entry ({i}, {j}) is not finite")
            out[i, j] = complex(re, im)
    return out


def matrix_payload(M: np.ndarray, metadata: dict | None = None) -> dict:
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError("matrix files hold square matrices")
    payload: dict = {
        "version": MATRIX_FILE_VERSION,
        "dim": int(M.shape[0]),
        "rows": matrix_to_rows(M),
    }
    if metadata:
        payload["metadata"] = dict(metadata)
    return payload


def payload_matrix(payload: Any) -> tuple[np.ndarray, dict]:
    if not isinstance(payload, dict):
        raise ParseError("matrix file must hold a JSON object")
    version = payload.get("version")
    if version != MATRIX_FILE_VERSION:
        raise ParseError(f"unsupported matrix file version {version!r}")
    if "dim" not in payload or "rows" not in payload:
        raise ParseError("matrix file needs 'dim' and 'rows'")
    M = rows_to_matrix(payload["rows"])
    dim = payload["dim"]
    if not isinstance(dim, int) or dim != M.shape[0]:
        raise ParseError(f"declared dim {dim!r} does not match {M.shape[0]} rows")
    metadata = payload.get("metadata", {})
    if not isinstance(metadata, dict):
        raise ParseError("metadata must be an object")
    return M, metadata


def write_matrix_file(path: str, M: np.ndarray, metadata: dict | None = None) -> None:
    payload = matrix_payload(M, metadata)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def read_matrix_file(path: str) -> tuple[np.ndarray, dict]:
    if not os.path.exists(path):
        raise ParseError(f"no such file: {path}")
    with open(path, "r", encoding="utf-8") as fh:
        try:
            payload = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON in {path}: {exc}") from exc
    return payload_matrix(payload)


def dump_report(report: dict) -> str:
    """Canonical report text: sorted keys, two-space indent, one trailing newline."""
    return json.dumps(report, indent=2, sort_keys=True) + "\n"
