# Copyright (c) 2025 Mathias Ertl
# Licensed under the MIT License. See LICENSE file for details.

"""Collect functions related to output."""

import logging
import logging.config
import sys
from collections.abc import Sequence
from typing import Any, ClassVar, Literal

import numpy as np
from colorama import Fore, Style, just_fix_windows_console
from jinja2 import Environment
from termcolor import colored

from mlz_workbench.models.reports import Cell, ConstraintReport, RunReport, Table

just_fix_windows_console()  # needed on Windows

LOG_LEVELS = Literal["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]

REPORT_TEMPLATE = """\
# command: {{ report.command }}
{% if report.model_digest %}# model: {{ report.model_digest }}
{% endif %}{% for key, value in report.metadata %}# {{ key }}: {{ value|cell }}
{% endfor %}{% if report.timing is not none %}# time: {{ "%.3f"|format(report.timing) }} s
{% endif %}# result: {{ "PASS" if report.passed else "FAIL" }}
{% for table in report.tables %}
# {{ table.title }}{% if table.tolerance is not none %} (tolerance: {{ table.tolerance|cell }}){% endif %}
# {{ table.columns|join("\t") }}
{% for row in table.rows %}{{ row|map("cell")|join("\t") }}
{% endfor %}{% endfor %}{% if report.model_text %}
{{ report.model_text }}{% endif %}"""


def error(text: str) -> None:
    """Output a red/bold line on stderr."""
    print(colored(text, "red", attrs=["bold"]), file=sys.stderr)


def format_cell(value: Cell) -> str:
    """Format a single table cell, numbers with ten significant digits."""
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, float):
        return f"{value:.10g}"
    return str(value)


def render_report(report: RunReport) -> str:
    """Render a report as text with `#`-prefixed headers and tab-separated tables."""
    env = Environment(keep_trailing_newline=True)
    env.filters["cell"] = format_cell
    return env.from_string(REPORT_TEMPLATE).render(report=report)


def matrix_table(title: str, matrix: Any, labels: Sequence[str], tolerance: float | None = None) -> Table:
    """Table of a real matrix, rows are labeled with the final and columns with the initial level."""
    rows = tuple(
        (label, *(float(value) for value in row)) for label, row in zip(labels, np.asarray(matrix))
    )
    return Table(title=title, columns=("final", *labels), rows=rows, tolerance=tolerance)


def scattering_tables(matrix: Any, labels: Sequence[str]) -> tuple[Table, ...]:
    """Tables for real and imaginary part of a scattering matrix and the transition probabilities."""
    entries = np.asarray(matrix)
    return (
        matrix_table("S (real part)", entries.real, labels),
        matrix_table("S (imaginary part)", entries.imag, labels),
        matrix_table("P", np.abs(entries) ** 2, labels),
    )


def constraint_table(report: ConstraintReport) -> Table:
    """Table with one row per checked relation."""
    tolerances = {entry.tolerance for entry in report.entries}
    rows = tuple(
        (entry.name, entry.lhs.real, entry.lhs.imag, entry.rhs, entry.residual, entry.passed)
        for entry in report.entries
    )
    return Table(
        title=report.title,
        columns=("relation", "lhs (real)", "lhs (imag)", "rhs", "residual", "passed"),
        rows=rows,
        tolerance=tolerances.pop() if len(tolerances) == 1 else None,
    )


class ColorFormatter(logging.Formatter):
    """Base class for color-based formatters."""

    def __init__(self, *args: Any, no_colors: bool = False, **kwargs: Any) -> None:
        super().__init__(*args, **kwargs)
        # Decide once at formatter creation time
        self.use_colors = sys.stderr.isatty() and no_colors is False


class LevelColorFormatter(ColorFormatter):
    """Formatter that colors the log level."""

    COLORS: ClassVar[dict[int, str]] = {
        logging.DEBUG: Fore.CYAN,
        logging.INFO: Fore.GREEN,
        logging.WARNING: Fore.YELLOW,
        logging.ERROR: Fore.RED,
        logging.CRITICAL: Fore.MAGENTA,
    }

    def format(self, record: logging.LogRecord) -> str:  # pragma: no cover
        if not self.use_colors:
            return super().format(record)

        level_name = record.levelname
        color = self.COLORS.get(record.levelno, "")
        record.levelname = f"{color}{level_name.ljust(8)}{Style.RESET_ALL}"
        try:
            return super().format(record)
        finally:
            record.levelname = level_name  # restore for other handlers


class BoldFormatter(ColorFormatter):
    """Formatter that outputs all messages in bold, if colors are used."""

    def format(self, record: logging.LogRecord) -> str:  # pragma: no cover
        if not self.use_colors:
            return super().format(record)

        original = record.msg
        record.msg = f"{Style.BRIGHT}{original}{Style.RESET_ALL}"
        try:
            return super().format(record)
        finally:
            record.msg = original  # restore for other handlers


def setup_logging(level: LOG_LEVELS, no_colors: bool) -> None:
    """Setup logging for the process.

    Diagnostics go to stderr. The `report` logger announces the sections of a command in bold.
    """
    config = {
        "version": 1,
        "disable_existing_loggers": False,
        "formatters": {
            "colored": {
                "()": "mlz_workbench.output.LevelColorFormatter",
                "format": "%(levelname)-8s | %(message)s",
                "no_colors": no_colors,
            },
            "bold": {
                "()": "mlz_workbench.output.BoldFormatter",
                "format": "%(message)s",
                "no_colors": no_colors,
            },
        },
        "handlers": {
            "console": {
                "class": "logging.StreamHandler",
                "formatter": "colored",
            },
            "report": {
                "class": "logging.StreamHandler",
                "formatter": "bold",
            },
        },
        "loggers": {
            "report": {
                "handlers": ["report"],
                "propagate": False,
                "level": level,
            },
        },
        "root": {
            "level": level,
            "handlers": ["console"],
        },
    }

    logging.config.dictConfig(config)
