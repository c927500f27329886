"""Terminal rendering of reports.

Hit tables and data dumps are written as plain text elsewhere; this module
only draws the human-facing summaries.
"""

import sys
from typing import Any, Dict, Iterable, List, Optional, Sequence, TextIO

from rich.console import Console
from rich.table import Table
from rich.text import Text


class Renderer:
    """Renders reports and messages with rich."""

    def __init__(
        self,
        console: Optional[Console] = None,
        stream: Optional[TextIO] = None,
    ) -> None:
        """Initialize renderer.

        Args:
            console: Rich console instance (created if not provided)
            stream: Stream for the default console (defaults to stderr)
        """
        self.stream = stream or sys.stderr
        self._console = console or Console(file=self.stream, highlight=False)

    def error(self, message: str) -> None:
        """Render error message.

        Args:
            message: Error message to display
        """
        self._console.print(Text(f"Error: {message}", style="bold red"))

    def warning(self, message: str) -> None:
        self._console.print(Text(f"Warning: {message}", style="yellow"))

    def success(self, message: str) -> None:
        self._console.print(Text(message, style="bold green"))

    def dim(self, message: str) -> None:
        self._console.print(Text(message, style="dim"))

    def key_values(self, title: str, values: Dict[str, Any]) -> None:
        """Two-column table of named values."""
        table = Table(title=title, show_header=False, title_justify="left")
        table.add_column("key", style="cyan")
        table.add_column("value", justify="right")
        for key, value in values.items():
            table.add_row(key, _fmt(value))
        self._console.print(table)

    def table(self, title: str, columns: Sequence[str], rows: Iterable[Sequence[Any]]) -> None:
        """Table with a header row; numbers are right-aligned."""
        rows = [list(r) for r in rows]
        table = Table(title=title, title_justify="left")
        for j, name in enumerate(columns):
            numeric = bool(rows) and all(isinstance(r[j], (int, float)) or r[j] is None for r in rows)
            table.add_column(name, justify="right" if numeric else "left")
        for r in rows:
            table.add_row(*(_fmt(v) for v in r))
        self._console.print(table)

    def build_report(self, report: Dict[str, Any]) -> None:
        histogram: Dict[int, int] = report.get("histogram", {})
        summary = {k: v for k, v in report.items() if k != "histogram"}
        self.key_values("Index", summary)
        if histogram:
            self.table(
                "Bin sizes",
                ["size up to", "bins"],
                sorted((int(k), v) for k, v in histogram.items()),
            )

    def bench_report(self, aggregates: List[Dict[str, Any]]) -> None:
        if not aggregates:
            self.warning("No benchmark rows")
            return
        columns = list(aggregates[0])
        self.table("Benchmark", columns, [[a.get(c) for c in columns] for a in aggregates])

    def exponent_report(self, report: Dict[str, Any]) -> None:
        self.key_values("Distance exponent", {k: v for k, v in report.items() if k != "windows"})
        windows = report.get("windows") or []
        if windows:
            columns = list(windows[0])
            self.table("Monomial fit windows", columns, [[w.get(c) for c in columns] for w in windows])

    def audit_report(self, rows: List[Dict[str, Any]]) -> None:
        self.table(
            "Triangle inequality",
            ["matrix", "failing triples", "independent", "example"],
            [[r["matrix"], r["failures"], r["independent"], r["example"] or "-"] for r in rows],
        )


def _fmt(value: Any) -> str:
    if value is None:
        return "-"
    if isinstance(value, float):
        return f"{value:.4g}"
    return str(value)
