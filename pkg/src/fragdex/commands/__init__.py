"""Subcommand implementations behind the fragdex command line."""

from .audit import cmd_audit
from .bench import BenchReport, BenchRow, cmd_bench
from .build import cmd_build
from .config import RunConfig
from .distexp import cmd_distexp
from .iterate import cmd_iterate
from .search import cmd_search

__all__ = [
    "RunConfig",
    "BenchReport",
    "BenchRow",
    "cmd_build",
    "cmd_search",
    "cmd_bench",
    "cmd_iterate",
    "cmd_distexp",
    "cmd_audit",
]
