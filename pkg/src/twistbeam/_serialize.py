"""Deterministic number formatting shared by every output path.

All floats that leave the package are first snapped to 12 significant
digits (round12); CSV cells print that same representation verbatim
(fmt12), and JSON is emitted with sorted keys. Identical inputs therefore
produce byte-identical files, which the repeat-run tests rely on.
"""

from __future__ import annotations

import json
from typing import Any, Mapping, Sequence

__all__ = ["round12", "fmt12", "render_csv", "canonical_json"]


def round12(x: float) -> float:
    """Snap to the nearest 12-significant-digit decimal.

    Idempotent: formatting the result again with :.11e reproduces the same
    string, so a value can round-trip through JSON (which serializes the
    shortest representation of the double) and still print identically.
    """
    return float(f"{x:.11e}")


def fmt12(x: float) -> str:
    return f"{x:.11e}"


def render_csv(columns: Sequence[str], rows: Sequence[Mapping[str, Any]]) -> str:
    """CSV text with pinned column order and deterministic cells.

    Cell rules: None -> empty field (undefined value), bool/int -> decimal
    integer, float -> 12-significant-digit scientific notation. NaN is
    never emitted; an undefined quantity must arrive as None.
    """
    lines = [",".join(columns)]
    for row in rows:
        cells = []
        for col in columns:
            value = row[col]
            if value is None:
                cells.append("")
            elif isinstance(value, bool):
                cells.append(str(int(value)))
            elif isinstance(value, int):
                cells.append(str(value))
            elif isinstance(value, float):
                if value != value:
                    raise ValueError(f"NaN reached the CSV renderer in column {col!r}")
                cells.append(fmt12(value))
            else:
                cells.append(str(value))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def canonical_json(payload: Any) -> str:
    """JSON text with sorted keys and a trailing newline; NaN rejected."""
    return json.dumps(payload, sort_keys=True, indent=2, allow_nan=False) + "\n"
