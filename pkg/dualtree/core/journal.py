"""Run reports and their journal queries."""
from __future__ import annotations

import json
import sqlite3
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Any, Dict, List, Optional

RunRow = Dict[str, Any]


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


@dataclass
class RunReport:
    """One CLI invocation: what was asked, what came out, and whether it was re-verified."""

    command: str
    inputs: Dict[str, Any] = field(default_factory=dict)
    outputs: Dict[str, Any] = field(default_factory=dict)
    verified: Optional[bool] = None
    wall_time: float = 0.0
    started_at: str = field(default_factory=_now)

    def mark(self, passed: bool) -> None:
        """Fold one verification result into the flag."""
        self.verified = passed if self.verified is None else self.verified and passed


def _row_to_dict(row: sqlite3.Row) -> RunRow:
    data = {key: row[key] for key in row.keys()}
    data["inputs"] = json.loads(data.pop("inputs_json"))
    data["outputs"] = json.loads(data.pop("outputs_json"))
    if data["verified"] is not None:
        data["verified"] = bool(data["verified"])
    return data


def record_run(conn: sqlite3.Connection, report: RunReport) -> int:
    """Insert a run and return its id."""
    cur = conn.execute(
        """
        INSERT INTO runs (command, inputs_json, outputs_json, verified, wall_time, started_at)
        VALUES (?, ?, ?, ?, ?, ?)
        """,
        (
            report.command,
            json.dumps(report.inputs, default=str),
            json.dumps(report.outputs, default=str),
            None if report.verified is None else int(report.verified),
            report.wall_time,
            report.started_at,
        ),
    )
    return int(cur.lastrowid)


def list_runs(conn: sqlite3.Connection, limit: int = 20) -> List[RunRow]:
    """Most recent runs first."""
    rows = conn.execute("SELECT * FROM runs ORDER BY id DESC LIMIT ?", (limit,)).fetchall()
    return [_row_to_dict(row) for row in rows]


def get_run(conn: sqlite3.Connection, run_id: int) -> Optional[RunRow]:
    row = conn.execute("SELECT * FROM runs WHERE id = ?", (run_id,)).fetchone()
    return _row_to_dict(row) if row else None
