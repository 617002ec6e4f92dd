"""Document assembly and deterministic serialization for the CLI.

JSON documents carry {"command", "params", "rows", "meta"}; CSV mirrors the
rows with a fixed header. Floats are serialized with Python's shortest
round-trip repr, which is locale-independent and byte-stable, so identical
configurations always produce identical documents.
"""

from __future__ import annotations

import json
from typing import Any, Mapping, Sequence

__all__ = ["build_document", "render_json", "render_csv"]


def build_document(
    command: str,
    params: Mapping[str, Any],
    columns: Sequence[str],
    rows: Sequence[Mapping[str, Any]],
    meta: Mapping[str, Any],
) -> dict[str, Any]:
    ordered_rows = [{key: row[key] for key in columns} for row in rows]
    return {
        "command": command,
        "params": dict(params),
        "rows": ordered_rows,
        "meta": dict(meta),
        "columns": list(columns),
    }


def _csv_cell(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if value is None:
        return ""
    return str(value)


def render_json(doc: Mapping[str, Any]) -> str:
    body = {key: doc[key] for key in ("command", "params", "rows", "meta")}
    return json.dumps(body, indent=2) + "\n"


def render_csv(doc: Mapping[str, Any]) -> str:
    columns = doc["columns"]
    lines = [",".join(columns)]
    for row in doc["rows"]:
        lines.append(",".join(_csv_cell(row[key]) for key in columns))
    return "\n".join(lines) + "\n"
