"""CSV and JSON table writers shared by the exporters."""

import csv
import json
import logging
from pathlib import Path
from typing import Any, Iterable, Literal, Mapping, Sequence

logger = logging.getLogger(__name__)

TableFormat = Literal["csv", "json"]


def format_cell(value: Any, spec: str | None = None) -> str:
    """
    Render one CSV cell.

    None becomes an empty field; floats use ``spec`` when given, otherwise
    12 significant digits.
    """
    if value is None:
        return ""
    if isinstance(value, float):
        return format(value, spec or ".12g")
    return str(value)


def write_table(
    out_dir: Path,
    name: str,
    header: Sequence[str],
    rows: Iterable[Sequence[Any]],
    fmt: TableFormat = "csv",
    precision: Mapping[str, str] | None = None,
) -> Path:
    """
    Write rows as ``<name>.csv`` or ``<name>.json`` under ``out_dir``.

    Args:
        out_dir: Output directory, created when missing
        name: File stem
        header: Column names; also the JSON object keys
        rows: Row values in header order
        fmt: ``csv`` or ``json``
        precision: Float format spec per CSV column (JSON keeps full values)

    Returns:
        Path of the written file
    """
    out_dir.mkdir(parents=True, exist_ok=True)
    rows = list(rows)
    if fmt == "json":
        path = out_dir / f"{name}.json"
        records = [dict(zip(header, row)) for row in rows]
        path.write_text(json.dumps(records, indent=2) + "\n", encoding="utf-8")
    else:
        specs = [(precision or {}).get(column) for column in header]
        path = out_dir / f"{name}.csv"
        with path.open("w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(header)
            writer.writerows(
                [format_cell(value, spec) for value, spec in zip(row, specs)]
                for row in rows
            )
    logger.info(f"Wrote {len(rows)} rows to {path}")
    return path
