"""Reading and writing the MTXC text format for dense complex matrices.

Layout: a header line ``MTXC 1 <n>`` followed by n rows, each holding 2n
whitespace-separated floats (re0 im0 re1 im1 ...). Values are written with
17 significant digits so a write/read cycle reproduces every float64 bit
for bit.
"""

from __future__ import annotations

import os

import numpy as np

from .errors import InvalidInputError
from .linalg import as_square_array

MAGIC = "MTXC"
VERSION = 1


def dumps(m) -> str:
    a = as_square_array(m)
    n = a.shape[0]
    lines = [f"{MAGIC} {VERSION} {n}"]
    for row in a:
        parts = []
        for z in row:
            parts.append(f"{z.real:.17g}")
            parts.append(f"{z.imag:.17g}")
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


def loads(text: str) -> np.ndarray:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise InvalidInputError("empty MTXC document")
    header = lines[0].split()
    if len(header) != 3 or header[0] != MAGIC:
        raise InvalidInputError(f"bad MTXC header: {lines[0]!r}")
    if header[1] != str(VERSION):
        raise InvalidInputError(f"unsupported MTXC version {header[1]!r}")
    try:
        n = int(header[2])
    except ValueError as exc:
        raise InvalidInputError(f"bad dimension in header: {header[2]!r}") from exc
    if n < 1:
        raise InvalidInputError(f"dimension must be positive, got {n}")
    if len(lines) - 1 != n:
        raise InvalidInputError(f"expected {n} rows, found {len(lines) - 1}")
    out = np.empty((n, n), dtype=np.complex128)
    for i, line in enumerate(lines[1:]):
        fields = line.split()
        if len(fields) != 2 * n:
            raise InvalidInputError(f"row {i}: expected {2 * n} values, found {len(fields)}")
        try:
            vals = [float(f) for f in fields]
        except ValueError as exc:
            raise InvalidInputError(f"row {i}: non-numeric value") from exc
        out[i] = np.array(vals[0::2]) + 1j * np.array(vals[1::2])
    return as_square_array(out, "MTXC matrix")


def write(path: str | os.PathLike, m) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(dumps(m))


def read(path: str | os.PathLike) -> np.ndarray:
    with open(path, "r", encoding="ascii") as fh:
        return loads(fh.read())
