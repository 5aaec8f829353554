"""JSON report envelope and its plain-text projection.

Every report is built as a JSON-compatible dict first.  Text output is derived
from that dict mechanically, so nothing appears only in prose.  Wall-clock
times are never included, which keeps reports byte-stable.
"""

from __future__ import annotations

import hashlib
import json

from . import __version__

# Settings that change presentation or speed but never results.
NON_SEMANTIC = ("threads", "out", "format", "json", "func")


def semantic_config(config: dict) -> dict:
    return {k: v for k, v in sorted(config.items()) if k not in NON_SEMANTIC}


def config_hash(config: dict) -> str:
    blob = json.dumps(semantic_config(config), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


def envelope(command: str, config: dict, body: dict, interpretations=()) -> dict:
    return {
        "tool": "pdlab",
        "version": __version__,
        "command": command,
        "config": semantic_config(config),
        "config_hash": config_hash(config),
        "interpretations": sorted(set(interpretations)),
        **body,
    }


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"


def _scalar(x):
    if x is None:
        return "null"
    if isinstance(x, bool):
        return "true" if x else "false"
    return str(x)


def _walk(prefix, value, out):
    if isinstance(value, dict):
        if not value:
            out.append(f"{prefix}: {{}}")
        for k, v in value.items():
            _walk(f"{prefix}.{k}" if prefix else str(k), v, out)
    elif isinstance(value, list):
        if all(not isinstance(x, (dict, list)) for x in value):
            out.append(f"{prefix}: [{', '.join(_scalar(x) for x in value)}]")
        else:
            for i, v in enumerate(value):
                _walk(f"{prefix}[{i}]", v, out)
    else:
        out.append(f"{prefix}: {_scalar(value)}")


def to_text(report: dict) -> str:
    """One ``path: value`` line per leaf of the JSON report."""
    out = []
    _walk("", report, out)
    return "\n".join(out) + "\n"
