"""Report emission: fixed float formatting for byte-stable JSON and CSV."""

import csv
import io
import json
import math
from collections.abc import Mapping, Sequence
from enum import Enum
from pathlib import Path
from typing import Any

from pydantic import BaseModel

SIGNIFICANT_DIGITS = 12


def fmt_float(x: float) -> float | str:
    """Round to 12 significant digits; non-finite values become strings."""
    if not math.isfinite(x):
        return str(x)
    return float(f"{x:.{SIGNIFICANT_DIGITS}g}")


def sanitize(obj: Any) -> Any:
    """Recursively convert models, enums and numpy scalars into stable JSON values."""
    if isinstance(obj, BaseModel):
        return sanitize(obj.model_dump(by_alias=True))
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return obj
    if isinstance(obj, float):
        return fmt_float(obj)
    if hasattr(obj, "item") and not hasattr(obj, "__len__"):
        return sanitize(obj.item())
    if isinstance(obj, Mapping):
        return {str(k): sanitize(v) for k, v in obj.items()}
    if isinstance(obj, Sequence) or hasattr(obj, "tolist"):
        items = obj.tolist() if hasattr(obj, "tolist") else obj
        return [sanitize(v) for v in items]
    return str(obj)


def render_json(meta: Mapping[str, Any], reports: Sequence[Any]) -> str:
    payload = {"meta": sanitize(meta), "reports": [sanitize(r) for r in reports]}
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


def render_csv(rows: Sequence[Mapping[str, Any]]) -> str:
    """CSV with the union of row keys as header, in first-seen order."""
    header: list[str] = []
    for row in rows:
        header.extend(k for k in row if k not in header)
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=header, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: _csv_cell(v) for k, v in sanitize(row).items()})
    return buffer.getvalue()


def _csv_cell(v: Any) -> Any:
    if isinstance(v, list | dict):
        return json.dumps(v, separators=(",", ":"))
    return "" if v is None else v


def write_text(text: str, path: Path | None, stream: io.TextIOBase) -> None:
    """Write to ``path`` if given, else to ``stream``."""
    if path is None:
        stream.write(text)
        return
    Path(path).write_text(text, encoding="utf-8")


__all__ = ["fmt_float", "sanitize", "render_json", "render_csv", "write_text"]
