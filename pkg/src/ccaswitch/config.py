"""Configuration ingestion for the command-line front end.

Configs are flat key-value pairs with dotted namespaces, either as plain
text (``lattice.lam = -0.5``, ``#`` comments) or as a JSON object with
the same dotted keys.  Numeric values accept angular-frequency sugar:
products and quotients of plain numbers and ``pi``, with juxtaposition
meaning multiplication, e.g. ``2pi*3e9`` or ``pi/4``.
"""

import json
import math
import re

from .errors import ConfigError

__all__ = ["parse_number", "parse_value", "load_config"]

_ATOM = re.compile(r"^\s*(?:([+-]?[\d.]+(?:[eE][+-]?\d+)?)\s*)?(pi)?\s*$")


def parse_number(text: str) -> float:
    """Evaluate a number with pi sugar: '2pi*3e9' -> 2*pi*3e9."""
    if isinstance(text, (int, float)):
        return float(text)
    s = text.strip()
    if not s:
        raise ConfigError("empty number")
    value = None
    op = "*"
    for piece in re.split(r"([*/])", s):
        if piece in ("*", "/"):
            op = piece
            continue
        m = _ATOM.match(piece)
        if not m or (m.group(1) is None and m.group(2) is None):
            raise ConfigError(f"cannot parse number {text!r}")
        try:
            atom = float(m.group(1)) if m.group(1) is not None else 1.0
        except ValueError as exc:
            raise ConfigError(f"cannot parse number {text!r}") from exc
        if m.group(2):
            atom *= math.pi
        if value is None:
            value = atom if op == "*" else 1.0 / atom
        elif op == "*":
            value *= atom
        else:
            value /= atom
    return value


def parse_value(raw):
    """Interpret a config value: number, list of numbers, bool, or string."""
    if isinstance(raw, (list, tuple)):
        return [parse_number(v) for v in raw]
    if isinstance(raw, bool) or isinstance(raw, (int, float)):
        return raw
    s = str(raw).strip()
    if s.lower() in ("true", "false"):
        return s.lower() == "true"
    if "," in s:
        return [parse_number(p) for p in s.split(",") if p.strip()]
    try:
        return parse_number(s)
    except ConfigError:
        return s


def load_config(path: str) -> dict:
    """Load a flat config mapping from a text or JSON file."""
    with open(path) as fh:
        text = fh.read()
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"invalid JSON config {path}: {exc}") from exc
        if not isinstance(raw, dict):
            raise ConfigError(f"JSON config {path} must be an object")
        return {str(k): parse_value(v) for k, v in raw.items()}

    out = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        key, _, val = line.partition("=")
        out[key.strip()] = parse_value(val)
    return out
