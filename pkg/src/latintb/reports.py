"""Deterministic TSV report writing with a provenance footer."""

from __future__ import annotations

from pathlib import Path
from typing import Iterable, Sequence

from . import __version__


def footer(seed: int | None = None, config_hash: str = "default") -> str:
    parts = [f"# latintb={__version__}"]
    if seed is not None:
        parts.append(f"seed={seed}")
    parts.append(f"config={config_hash}")
    return " ".join(parts)


def write_tsv(
    path: str | Path,
    header: Sequence[str],
    rows: Iterable[Sequence[object]],
    *,
    seed: int | None = None,
    config_hash: str = "default",
) -> None:
    lines = ["\t".join(header)]
    for row in rows:
        lines.append("\t".join(str(cell) for cell in row))
    lines.append(footer(seed, config_hash))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_tsv(path: str | Path) -> list[list[str]]:
    """Rows of a report, skipping the header and comment lines."""
    rows = []
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    for line in lines[1:]:
        if not line or line.startswith("#"):
            continue
        rows.append(line.split("\t"))
    return rows
