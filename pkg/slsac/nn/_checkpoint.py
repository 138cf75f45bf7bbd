# Copyright 2026 The slsac developers
# See the top-level LICENSE file for details.
#
# SPDX-License-Identifier: MIT
"""Flat container of named float64 arrays.

Layout (all integers little-endian):

    bytes 0..7    magic b"SLSACKPT"
    bytes 8..11   u32 container version (1)
    bytes 12..19  u64 manifest length L
    next L bytes  UTF-8 JSON manifest: {"arrays": [{"name", "shape", "offset", "dtype"}]}
    remainder     array data; "offset" counts from the first data byte, dtype is "<f8"
"""

import json
import struct
from collections.abc import Mapping
from pathlib import Path

import numpy as np
from loguru import logger

from slsac.errors import RejectedInputError

MAGIC = b"SLSACKPT"
CONTAINER_VERSION = 1
_HEADER = struct.Struct("<8sIQ")


def save_arrays(path: str | Path, arrays: Mapping[str, np.ndarray]) -> None:
    entries = []
    chunks = []
    offset = 0
    for name, array in arrays.items():
        data = np.ascontiguousarray(array, dtype="<f8")
        entries.append(
            {"name": name, "shape": list(data.shape), "offset": offset, "dtype": "<f8"}
        )
        raw = data.tobytes()
        chunks.append(raw)
        offset += len(raw)
    manifest = json.dumps({"arrays": entries}, sort_keys=True).encode("utf-8")
    path = Path(path)
    with path.open("wb") as f:
        f.write(_HEADER.pack(MAGIC, CONTAINER_VERSION, len(manifest)))
        f.write(manifest)
        for raw in chunks:
            f.write(raw)
    logger.debug(f"[checkpoint] wrote {len(entries)} arrays ({offset} bytes) to {path}")


def load_arrays(path: str | Path) -> dict[str, np.ndarray]:
    blob = Path(path).read_bytes()
    if len(blob) < _HEADER.size:
        raise RejectedInputError(f"{path} is too short to be a checkpoint")
    magic, version, manifest_len = _HEADER.unpack_from(blob, 0)
    if magic != MAGIC:
        raise RejectedInputError(f"{path} is not a checkpoint container")
    if version != CONTAINER_VERSION:
        raise RejectedInputError(f"{path} has unsupported container version {version}")
    start = _HEADER.size + manifest_len
    manifest = json.loads(blob[_HEADER.size : start].decode("utf-8"))
    arrays = {}
    for entry in manifest["arrays"]:
        shape = tuple(entry["shape"])
        count = int(np.prod(shape, dtype=np.int64))
        arrays[entry["name"]] = np.frombuffer(
            blob, dtype=entry["dtype"], count=count, offset=start + entry["offset"]
        ).reshape(shape).astype(np.float64)
    return arrays
