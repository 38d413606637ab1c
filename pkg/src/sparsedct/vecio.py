"""Plain-text vector files.

Line 1 is ``# realvec <len>`` or ``# complexvec <len>``, followed by one entry
per line in 17-digit scientific notation; complex entries are ``re<TAB>im``.
"""

from __future__ import annotations

import io
import os
from typing import TextIO, Union

import numpy as np

PathOrFile = Union[str, os.PathLike, TextIO]


def format_vector(v) -> str:
    v = np.asarray(v)
    buf = io.StringIO()
    if np.iscomplexobj(v):
        buf.write(f"# complexvec {v.shape[0]}\n")
        for z in v:
            buf.write(f"{z.real:.16e}\t{z.imag:.16e}\n")
    else:
        buf.write(f"# realvec {v.shape[0]}\n")
        for r in v.astype(float):
            buf.write(f"{r:.16e}\n")
    return buf.getvalue()


def parse_vector(text: str) -> np.ndarray:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty vector file")
    head = lines[0].split()
    if len(head) != 3 or head[0] != "#" or head[1] not in ("realvec", "complexvec"):
        raise ValueError(f"bad vector header: {lines[0]!r}")
    n = int(head[2])
    body = lines[1:]
    if len(body) != n:
        raise ValueError(f"header announces {n} entries, found {len(body)}")
    if head[1] == "realvec":
        out = np.array([float(ln) for ln in body], dtype=float)
    else:
        parts = [ln.split("\t") for ln in body]
        if any(len(p) != 2 for p in parts):
            raise ValueError("complex entries must be 're<TAB>im'")
        out = np.array([complex(float(a), float(b)) for a, b in parts])
    if not np.all(np.isfinite(out)):
        raise ValueError("vector contains non-finite entries")
    return out


def write_vector(dest: PathOrFile, v) -> None:
    text = format_vector(v)
    if hasattr(dest, "write"):
        dest.write(text)
    else:
        with open(dest, "w", encoding="ascii") as fh:
            fh.write(text)


def read_vector(src: PathOrFile) -> np.ndarray:
    if hasattr(src, "read"):
        return parse_vector(src.read())
    with open(src, encoding="ascii") as fh:
        return parse_vector(fh.read())
