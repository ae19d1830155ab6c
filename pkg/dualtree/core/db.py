"""Database helpers for the run journal."""
from __future__ import annotations

import sqlite3
from contextlib import contextmanager
from pathlib import Path
from typing import Generator

from . import utils


def init_db(path: Path | None = None) -> None:
    """Initialise the SQLite database."""
    db_path = path or utils.journal_path()
    db_path.parent.mkdir(parents=True, exist_ok=True)
    conn = sqlite3.connect(db_path)
    conn.execute("PRAGMA journal_mode=WAL")
    conn.executescript(
        """
        CREATE TABLE IF NOT EXISTS runs (
            id INTEGER PRIMARY KEY AUTOINCREMENT,
            command TEXT NOT NULL,
            inputs_json TEXT NOT NULL,
            outputs_json TEXT NOT NULL,
            verified INTEGER,
            wall_time REAL NOT NULL,
            started_at TEXT NOT NULL
        );
        """
    )
    conn.commit()
    conn.close()


@contextmanager
def get_conn(path: Path | None = None) -> Generator[sqlite3.Connection, None, None]:
    """Yield a connection that commits on success."""
    db_path = path or utils.journal_path()
    conn = sqlite3.connect(db_path)
    conn.row_factory = sqlite3.Row
    try:
        yield conn
        conn.commit()
    finally:
        conn.close()
