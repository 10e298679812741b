"""Bit-stable CSV/JSON emission with provenance headers.

Primary files carry ``# tool``, ``# config_hash`` and ``# seed`` comment lines
followed by a mandatory header row.  Anything that varies between identical
runs (timestamps, thread count, backend) goes to a ``.meta.json`` sidecar.
"""

from __future__ import annotations

import hashlib
import io
import json
import math
import platform
import sys
from datetime import datetime, timezone
from pathlib import Path

VOLATILE_KEYS = frozenset({"threads", "output", "records", "report", "format", "dry_run", "config"})


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), default=str)


def config_hash(config: dict) -> str:
    stable = {k: v for k, v in config.items() if k not in VOLATILE_KEYS}
    return hashlib.sha256(canonical_json(stable).encode()).hexdigest()[:16]


def format_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "1" if v else "0"
    if isinstance(v, float):
        if math.isnan(v):
            return "nan"
        return repr(v)
    return str(v)


def render_csv(columns, rows, provenance: dict) -> str:
    buf = io.StringIO()
    for key in ("tool", "config_hash", "seed"):
        buf.write(f"# {key}={provenance[key]}\n")
    buf.write(",".join(columns) + "\n")
    for row in rows:
        buf.write(",".join(format_cell(v) for v in row) + "\n")
    return buf.getvalue()


def render_json(payload: dict, provenance: dict) -> str:
    doc = {"provenance": {k: provenance[k] for k in ("tool", "config_hash", "seed")}, **payload}
    return json.dumps(doc, sort_keys=True, indent=2, default=_json_default) + "\n"


def _json_default(v):
    if hasattr(v, "item"):
        return v.item()
    if isinstance(v, (set, frozenset, tuple)):
        return list(v)
    return str(v)


def emit(text: str, path: str | None, meta: dict | None = None) -> None:
    """Write ``text`` to ``path`` (stdout when ``None``) plus a metadata sidecar."""
    if path is None:
        sys.stdout.write(text)
        return
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    with open(p, "w", newline="\n") as fh:
        fh.write(text)
    if meta is not None:
        side = dict(meta)
        side["written_at"] = datetime.now(timezone.utc).isoformat()
        side["python"] = platform.python_version()
        with open(p.with_name(p.name + ".meta.json"), "w", newline="\n") as fh:
            json.dump(side, fh, sort_keys=True, indent=2, default=str)
            fh.write("\n")
