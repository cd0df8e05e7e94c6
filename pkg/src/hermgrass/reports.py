"""Report serialization: flat `key = value` text and a JSON tree.

Nested dictionaries flatten with dot-separated keys; insertion order is
preserved so reports are deterministic.
"""

from __future__ import annotations

import json


def flatten(obj, prefix=""):
    out = []
    for key, value in obj.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            out.extend(flatten(value, prefix=f"{name}."))
        else:
            out.append((name, value))
    return out


def render_value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, tuple, dict)):
        return json.dumps(value, default=str)
    return str(value)


def to_text(report: dict) -> str:
    return "\n".join(f"{k} = {render_value(v)}" for k, v in flatten(report)) + "\n"


def to_tree(report: dict) -> str:
    return json.dumps(report, indent=2, default=str) + "\n"


def render(report: dict, fmt: str) -> str:
    if fmt == "tree":
        return to_tree(report)
    return to_text(report)
