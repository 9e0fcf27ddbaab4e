"""Plain key-value config files.

Format: one ``key = value`` pair per line, ``#`` starts a comment, blank
lines are ignored.  Keys may repeat (used for ``session`` entries).
"""

from __future__ import annotations

from pathlib import Path

from .errors import ConfigError, ParseError

KvEntries = list[tuple[str, str, int]]


def parse_kv_file(path: str | Path) -> KvEntries:
    """Parse a key-value file into ``(key, value, line_number)`` entries."""
    entries: KvEntries = []
    with open(path, encoding="utf-8-sig") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ParseError("expected 'key = value'", path, lineno)
            key, _, value = line.partition("=")
            key = key.strip()
            value = value.strip()
            if not key:
                raise ParseError("empty key", path, lineno)
            entries.append((key, value, lineno))
    return entries


def repeated_values(entries: KvEntries, key: str) -> list[tuple[str, int]]:
    return [(v, ln) for k, v, ln in entries if k == key]


def single_value(
    entries: KvEntries,
    key: str,
    path,
    required: bool = True,
    default: str | None = None,
) -> str | None:
    found = repeated_values(entries, key)
    if not found:
        if required:
            raise ConfigError(f"{path}: missing required key '{key}'")
        return default
    if len(found) > 1:
        raise ConfigError(f"{path}: key '{key}' given more than once")
    return found[0][0]


def reject_unknown_keys(entries: KvEntries, allowed: set[str], path) -> None:
    unknown = sorted({k for k, _, _ in entries} - allowed)
    if unknown:
        raise ConfigError(f"{path}: unknown key(s): {', '.join(unknown)}")


def parse_bool(value: str, key: str, path) -> bool:
    lowered = value.lower()
    if lowered in ("true", "yes", "1", "on"):
        return True
    if lowered in ("false", "no", "0", "off"):
        return False
    raise ConfigError(f"{path}: key '{key}' expects a boolean, got '{value}'")
