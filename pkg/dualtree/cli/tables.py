"""Plain-text tables for command output."""
from __future__ import annotations

from typing import Any, Dict, Iterable, List, Sequence, Tuple


def render_table(headers: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    """Left-aligned columns separated by two spaces."""
    body: List[List[str]] = [[str(cell) for cell in row] for row in rows]
    widths = [len(h) for h in headers]
    for row in body:
        for index, cell in enumerate(row):
            if index < len(widths):
                widths[index] = max(widths[index], len(cell))
            else:
                widths.append(len(cell))

    def line(cells: Sequence[str]) -> str:
        return "  ".join(cell.ljust(widths[i]) for i, cell in enumerate(cells)).rstrip()

    out = [line(list(headers)), line(["-" * w for w in widths[: len(headers)]])]
    out.extend(line(row) for row in body)
    return "\n".join(out)


def class_grid(table: Dict[Tuple[int, int], str], levels: Sequence[int]) -> Tuple[List[str], List[List[str]]]:
    """Rows of class labels, one row per level and one column per letter."""
    width = max((letter for _, letter in table), default=0)
    headers = ["level"] + [str(x) for x in range(1, width + 1)]
    rows = []
    for level in levels:
        row = [str(level)]
        for letter in range(1, width + 1):
            row.append(table.get((level, letter), ""))
        rows.append(row)
    return headers, rows
