"""CSV/JSON serialisation helpers shared by the library and the CLI.

CSV files carry ``#``-prefixed metadata comment lines (tool version, seed,
configuration echo) before the header row; reals are written with 17
significant digits so round-tripping is exact.
"""

from __future__ import annotations

import json
from pathlib import Path

__version__ = "0.1.0"


def format_real(value) -> str:
    """Serialise a real with 17 significant digits."""
    return format(float(value), ".17g")


def _cell(value) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return format_real(value)
    if isinstance(value, int):
        return str(value)
    try:
        import numpy as np

        if isinstance(value, np.floating):
            return format_real(float(value))
        if isinstance(value, np.integer):
            return str(int(value))
    except ImportError:  # pragma: no cover
        pass
    return str(value)


def metadata_lines(metadata: dict | None) -> list[str]:
    lines = [f"# tool_version={__version__}"]
    for key, value in (metadata or {}).items():
        lines.append(f"# {key}={_cell(value)}")
    return lines


def write_csv(path, header, rows, metadata: dict | None = None) -> None:
    """Write rows with a header and ``#`` metadata comment lines."""
    path = Path(path)
    with path.open("w", newline="") as fh:
        for line in metadata_lines(metadata):
            fh.write(line + "\n")
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_cell(v) for v in row) + "\n")


def read_csv(path) -> tuple[dict, list[str], list[list[str]]]:
    """Read a CSV written by :func:`write_csv`; returns (metadata, header,
    rows) with all cells as strings."""
    meta: dict = {}
    header: list[str] = []
    rows: list[list[str]] = []
    with Path(path).open() as fh:
        for raw in fh:
            line = raw.rstrip("\n")
            if not line:
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                if "=" in body:
                    key, _, value = body.partition("=")
                    meta[key.strip()] = value.strip()
                continue
            if not header:
                header = line.split(",")
            else:
                rows.append(line.split(","))
    return meta, header, rows


def write_json(path, payload: dict) -> None:
    Path(path).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def read_keyvalue_config(path) -> dict[str, str]:
    """Parse a plain-text ``key = value`` configuration file.

    Blank lines and ``#`` comments are ignored; keys are lower-cased.
    """
    out: dict[str, str] = {}
    for raw in Path(path).read_text().splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"malformed config line: {raw!r}")
        key, _, value = line.partition("=")
        out[key.strip().lower()] = value.strip()
    return out
