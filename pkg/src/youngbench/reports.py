"""Run manifests and JSON/CSV report writers."""

import csv
import io
import json
from datetime import datetime, timezone
from pathlib import Path

from . import __version__

__all__ = ["manifest", "dump_json", "write_text", "rows_to_csv"]


def manifest(command, parameters, seed):
    return {
        "command": command,
        "parameters": parameters,
        "seed": seed,
        "toolVersion": __version__,
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
    }


def _default(obj):
    # numpy scalars and tuples from dataclasses
    if hasattr(obj, "item"):
        return obj.item()
    if isinstance(obj, (set, tuple)):
        return list(obj)
    raise TypeError(f"not JSON serialisable: {type(obj).__name__}")


def dump_json(obj):
    return json.dumps(obj, indent=2, default=_default, allow_nan=True) + "\n"


def write_text(text, out=None):
    if out is None or str(out) == "-":
        import sys

        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def rows_to_csv(rows):
    fields = []
    for row in rows:
        for key in row:
            if key not in fields:
                fields.append(key)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()
