"""Matrix and Jordan-data file formats.

Both formats are JSON text documents; complex scalars are serialized as
[re, im] pairs of binary64 values (shortest round-trip decimals), so a
write/read cycle is lossless.

Matrix file::

    {"n_rows": 2, "n_cols": 2,
     "entries": [[1.0, 0.0], [0.5, -0.25], [0.0, 0.0], [1.0, 0.0]]}

with entries in row-major order.  NaN/Inf entries are rejected on read
with the offending field path.

Jordan-data file::

    {"blocks": [{"lambda": [1.0, 0.0], "size": 2},
                {"lambda": [3.0, 0.0], "size": 1}],
     "q": "identity"}

where ``q`` is either the string "identity", an inline matrix object as
above, or ``{"random_seed": <int>, "target_kappa": <real >= 1>}`` for a
seeded random transform with prescribed condition number.
"""

from __future__ import annotations

import json
import math
import os

import numpy as np

from .exceptions import ParseError
from .generate import random_conditioned
from .jordan import JordanSpec, make_jordan_spec


def _load_json(path) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON in {path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError(f"top level of {path} must be an object", field="$")
    return doc


def _parse_pair(value, field: str) -> complex:
    if (
        not isinstance(value, (list, tuple))
        or len(value) != 2
        or not all(isinstance(x, (int, float)) for x in value)
    ):
        raise ParseError("expected an [re, im] pair of numbers", field=field)
    re, im = float(value[0]), float(value[1])
    if not (math.isfinite(re) and math.isfinite(im)):
        raise ParseError("NaN/Inf entries are not admitted", field=field)
    return complex(re, im)


def _matrix_from_doc(doc: dict, field: str = "$") -> np.ndarray:
    for key in ("n_rows", "n_cols", "entries"):
        if key not in doc:
            raise ParseError(f"missing field '{key}'", field=field)
    n_rows, n_cols = doc["n_rows"], doc["n_cols"]
    for key, val in (("n_rows", n_rows), ("n_cols", n_cols)):
        if not isinstance(val, int) or val < 1:
            raise ParseError(f"'{key}' must be a positive integer", field=f"{field}.{key}")
    entries = doc["entries"]
    if not isinstance(entries, list) or len(entries) != n_rows * n_cols:
        raise ParseError(
            f"'entries' must be a list of {n_rows * n_cols} [re, im] pairs",
            field=f"{field}.entries",
        )
    flat = [
        _parse_pair(v, field=f"{field}.entries[{k}]") for k, v in enumerate(entries)
    ]
    return np.array(flat, dtype=np.complex128).reshape(n_rows, n_cols)


def read_matrix(path) -> np.ndarray:
    """Read a matrix file; raises ``ParseError`` with a field path on any
    malformed or non-finite content."""
    return _matrix_from_doc(_load_json(path))


def matrix_to_doc(m) -> dict:
    m = np.asarray(m, dtype=np.complex128)
    return {
        "n_rows": int(m.shape[0]),
        "n_cols": int(m.shape[1]),
        "entries": [[float(z.real), float(z.imag)] for z in m.ravel()],
    }


def write_matrix(path, m) -> None:
    """Write a matrix file (row-major [re, im] pairs, full precision)."""
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(matrix_to_doc(m), fh, allow_nan=False)
        fh.write(os.linesep)


def read_jordan_spec(path) -> JordanSpec:
    """Read a Jordan-data file; see the module docstring for the grammar."""
    doc = _load_json(path)
    if "blocks" not in doc:
        raise ParseError("missing field 'blocks'", field="$")
    raw_blocks = doc["blocks"]
    if not isinstance(raw_blocks, list) or not raw_blocks:
        raise ParseError("'blocks' must be a nonempty list", field="$.blocks")
    blocks = []
    for k, item in enumerate(raw_blocks):
        fb = f"$.blocks[{k}]"
        if not isinstance(item, dict) or "lambda" not in item or "size" not in item:
            raise ParseError("block needs 'lambda' and 'size'", field=fb)
        lam = _parse_pair(item["lambda"], field=f"{fb}.lambda")
        size = item["size"]
        if not isinstance(size, int) or size < 1:
            raise ParseError("'size' must be a positive integer", field=f"{fb}.size")
        blocks.append((lam, size))
    n = sum(size for _, size in blocks)

    q_doc = doc.get("q", "identity")
    if isinstance(q_doc, str):
        if q_doc != "identity":
            raise ParseError(
                f"unknown transform keyword '{q_doc}' (expected 'identity')",
                field="$.q",
            )
        q = None
    elif isinstance(q_doc, dict) and "random_seed" in q_doc:
        seed = q_doc["random_seed"]
        kappa = q_doc.get("target_kappa", 1.0)
        if not isinstance(seed, int):
            raise ParseError("'random_seed' must be an integer", field="$.q.random_seed")
        if not isinstance(kappa, (int, float)) or kappa < 1.0:
            raise ParseError("'target_kappa' must be a real >= 1", field="$.q.target_kappa")
        q = random_conditioned(n, float(kappa), np.random.default_rng(seed))
    elif isinstance(q_doc, dict):
        q = _matrix_from_doc(q_doc, field="$.q")
    else:
        raise ParseError("'q' must be 'identity', a matrix object, or a random spec", field="$.q")
    return make_jordan_spec(blocks, q)


def write_jordan_spec(path, spec: JordanSpec) -> None:
    """Write a Jordan-data file with the transform inlined as a matrix."""
    doc = {
        "blocks": [
            {"lambda": [float(lam.real), float(lam.imag)], "size": int(size)}
            for lam, size in spec.blocks
        ],
        "q": matrix_to_doc(spec.q),
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, allow_nan=False)
        fh.write(os.linesep)
