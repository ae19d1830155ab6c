"""Utility helpers for dualtree."""
from __future__ import annotations

import json
import os
import re
from pathlib import Path
from typing import Any, Sequence

from .errors import ParseError

APP_NAME = "dualtree"
INVERSE_SUFFIX = "^-1"

_COMPACT_TOKEN = re.compile(r"([A-Za-z])(\^-1|')?")
_NAME_TOKEN = re.compile(r"([A-Za-z_][A-Za-z0-9_]*)(\^-1|')?")


def _data_home() -> Path:
    base = os.getenv("DUALTREE_HOME")
    if base:
        return Path(base)
    return Path.home() / f".{APP_NAME}"


def app_data_dir() -> Path:
    """Return and ensure the application data directory."""
    path = _data_home()
    path.mkdir(parents=True, exist_ok=True)
    return path


def journal_path() -> Path:
    """Return the run journal path."""
    return app_data_dir() / "journal.db"


def read_json(path: Path, default: Any) -> Any:
    """Read JSON data."""
    if not path.exists():
        return default
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError:
        return default


def write_json(path: Path, data: Any) -> None:
    """Write JSON data."""
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(data, indent=2, ensure_ascii=False), encoding="utf-8")


def parse_letters(text: str) -> tuple[int, ...]:
    """Parse a comma-separated tree word such as ``"1,2,3"``."""
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise ParseError(f"malformed word {text!r}: expected comma-separated integers") from exc


def format_letters(letters: Sequence[int]) -> str:
    """Format letters as a comma-separated word."""
    return ",".join(str(x) for x in letters)


def normalize_state_token(token: str) -> str:
    if token.endswith("'"):
        return token[:-1] + INVERSE_SUFFIX
    return token


def parse_state_word(text: str) -> tuple[str, ...]:
    """Parse a state word.

    Two forms are accepted: space-separated tokens (``"a b^-1 a"``) and the
    compact single-letter form where an apostrophe marks an inverse
    (``"ab'a"``). Text that is not compact but is one state name, such as
    ``"q1"`` or ``"q1^-1"``, is a one-letter word. The empty string is the
    empty word.
    """
    text = text.strip()
    if not text:
        return ()
    if any(ch.isspace() for ch in text):
        return tuple(normalize_state_token(token) for token in text.split())
    tokens = []
    pos = 0
    while pos < len(text):
        match = _COMPACT_TOKEN.match(text, pos)
        if not match:
            break
        name, suffix = match.groups()
        tokens.append(name + INVERSE_SUFFIX if suffix else name)
        pos = match.end()
    else:
        return tuple(tokens)
    if _NAME_TOKEN.fullmatch(text):
        return (normalize_state_token(text),)
    raise ParseError(f"malformed state word {text!r} at position {pos}")


def format_state_word(word: Sequence[str]) -> str:
    """Canonical spaced rendering of a state word."""
    return " ".join(word)
