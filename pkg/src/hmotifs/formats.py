"""Text formats for per-motif vectors (counts, significance, profiles).

TSV layout::

    # hmotifs <kind> key=value ... manifest=<hash>
    motif  open  <column> [<column> ...]
    1      0     ...

Exact counts are written as integers, every other value with ``repr`` so
that a round trip is lossless.
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .exceptions import InputFormatError
from .motifs import N_MOTIFS, motif_table


def _fmt(x) -> str:
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return repr(float(x))


def vector_tsv(columns: dict, kind: str, meta: dict | None = None) -> str:
    table = motif_table()
    head = " ".join(f"{k}={v}" for k, v in (meta or {}).items())
    lines = [f"# hmotifs {kind} {head}".rstrip(), "\t".join(["motif", "open", *columns])]
    for t in range(1, N_MOTIFS + 1):
        vals = [_fmt(col[t - 1]) for col in columns.values()]
        lines.append("\t".join([str(t), str(int(table.is_open(t))), *vals]))
    return "\n".join(lines) + "\n"


def vector_json(columns: dict, kind: str, meta: dict | None = None) -> str:
    table = motif_table()
    doc = {
        "kind": kind,
        **(meta or {}),
        "motifs": list(range(1, N_MOTIFS + 1)),
        "open": [table.is_open(t) for t in range(1, N_MOTIFS + 1)],
    }
    for name, col in columns.items():
        doc[name] = [v.item() if isinstance(v, np.generic) else v for v in col]
    return json.dumps(doc, indent=2) + "\n"


def read_vector(path, column: str | None = None) -> np.ndarray:
    """Read one 26-value column from a TSV or JSON file written above.

    Without ``column`` the first value column is used (``count`` for count
    files, ``cp`` for profile files when present).
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputFormatError(f"cannot read {path}: {exc}") from exc
    if text.lstrip().startswith("{"):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputFormatError(f"{path}: invalid JSON: {exc}") from exc
        names = [k for k, v in doc.items() if isinstance(v, list) and k not in ("motifs", "open")]
        name = column or ("cp" if "cp" in names else names[0] if names else None)
        if name not in doc:
            raise InputFormatError(f"{path}: no column {name!r}")
        values = doc[name]
    else:
        rows = [ln.split("\t") for ln in text.splitlines() if ln and not ln.startswith("#")]
        if not rows or rows[0][:2] != ["motif", "open"]:
            raise InputFormatError(f"{path}: missing 'motif<TAB>open' header")
        header, body = rows[0], rows[1:]
        names = header[2:]
        name = column or ("cp" if "cp" in names else names[0] if names else None)
        if name not in names:
            raise InputFormatError(f"{path}: no column {name!r}")
        idx = header.index(name)
        try:
            values = [float(r[idx]) for r in body]
        except (IndexError, ValueError) as exc:
            raise InputFormatError(f"{path}: malformed row: {exc}") from exc
    arr = np.asarray(values, dtype=np.float64)
    if arr.shape != (N_MOTIFS,):
        raise InputFormatError(f"{path}: expected {N_MOTIFS} values, got {arr.size}")
    return arr
