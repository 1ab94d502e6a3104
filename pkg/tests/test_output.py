# Copyright (c) 2025 Mathias Ertl
# Licensed under the MIT License. See LICENSE file for details.

"""Test rendering of reports."""

import numpy as np
import pytest

from mlz_workbench.models import ConstraintEntry, ConstraintReport, RunReport, Table
from mlz_workbench.output import constraint_table, error, format_cell, matrix_table, render_report


@pytest.mark.parametrize(
    ("value", "expected"),
    ((True, "yes"), (False, "no"), (3, "3"), (0.1, "0.1"), (1 / 3, "0.3333333333"), ("abc", "abc")),
)
def test_format_cell(value: str | int | float | bool, expected: str) -> None:
    """Test formatting of table cells."""
    assert format_cell(value) == expected


def test_render_report() -> None:
    """Test rendering a complete report."""
    report = RunReport(
        command="verify",
        model_digest="0123456789abcdef",
        metadata=(("levels", 2), ("canonical order", True)),
        tables=(Table(title="values", columns=("a", "b"), rows=((1, 0.5), (2, 0.25)), tolerance=0.01),),
        model_text="n = 1\n",
        timing=1.5,
        passed=False,
    )
    assert render_report(report) == (
        "# command: verify\n"
        "# model: 0123456789abcdef\n"
        "# levels: 2\n"
        "# canonical order: yes\n"
        "# time: 1.500 s\n"
        "# result: FAIL\n"
        "\n"
        "# values (tolerance: 0.01)\n"
        "# a\tb\n"
        "1\t0.5\n"
        "2\t0.25\n"
        "\n"
        "n = 1\n"
    )


def test_render_minimal_report() -> None:
    """Test rendering a report without optional parts."""
    assert render_report(RunReport(command="validate")) == "# command: validate\n# result: PASS\n"


def test_matrix_table() -> None:
    """Test that rows are labeled with the final level."""
    table = matrix_table("P", np.array([[0.25, 0.75], [0.75, 0.25]]), ("a", "b"))
    assert table.columns == ("final", "a", "b")
    assert table.rows == (("a", 0.25, 0.75), ("b", 0.75, 0.25))
    assert table.tolerance is None


def test_constraint_table() -> None:
    """Test the table of a constraint report."""
    report = ConstraintReport(
        title="checks",
        entries=(
            ConstraintEntry(name="first", lhs=1 + 0.5j, rhs=1, tolerance=0.1),
            ConstraintEntry(name="second", lhs=0.05, rhs=0, tolerance=0.1),
        ),
    )
    table = constraint_table(report)
    assert table.tolerance == 0.1
    assert table.rows == (("first", 1, 0.5, 1, 0.5, False), ("second", 0.05, 0, 0, 0.05, True))
    assert not report.passed
    assert report.max_residual == 0.5


def test_constraint_table_with_mixed_tolerances() -> None:
    """Test that no common tolerance is shown if entries differ."""
    report = ConstraintReport(
        entries=(
            ConstraintEntry(name="first", lhs=1, rhs=1, tolerance=0.1),
            ConstraintEntry(name="second", lhs=1, rhs=1, tolerance=0.2),
        ),
    )
    assert constraint_table(report).tolerance is None


def test_add_constraint_reports() -> None:
    """Test combining two reports."""
    first = ConstraintReport(title="a", entries=(ConstraintEntry(name="x", lhs=1, rhs=1, tolerance=0),))
    combined = first + ConstraintReport(title="b")
    assert combined.title == "a / b"
    assert len(combined.entries) == 1
    assert combined.passed


def test_error(capsys: pytest.CaptureFixture[str]) -> None:
    """Test printing an error."""
    error("foo")
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "foo" in captured.err
