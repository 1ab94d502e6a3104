# Copyright (c) 2025 Mathias Ertl
# Licensed under the MIT License. See LICENSE file for details.

"""Main CLI entrypoint."""

import argparse
import logging
import sys
import time
from collections.abc import Callable, Sequence
from pathlib import Path
from typing import Any, NoReturn

import numpy as np
import yaml

from mlz_workbench import __version__
from mlz_workbench.compose import exterior_power_S, fermion_sector_model
from mlz_workbench.constraints import (
    PROPAGATION_TOLERANCE,
    band_relation_residuals,
    be_report,
    chain_relation_residual,
    chain_symmetry_report,
    nogo_report,
    pseudo_bowtie_report,
    unitarity_report,
    verify_hierarchy,
)
from mlz_workbench.errors import (
    ConstraintError,
    DivisionByZeroError,
    ModelError,
    NoPhysicalRootError,
    PropagationError,
    SemiclassicalError,
)
from mlz_workbench.model import load_model
from mlz_workbench.models import (
    BowTieParams,
    CanonicalizationReport,
    ConstraintEntry,
    ConstraintReport,
    MlzModel,
    ModelFile,
    PropagationConfig,
    RunReport,
    Table,
)
from mlz_workbench.output import (
    constraint_table,
    error,
    matrix_table,
    render_report,
    scattering_tables,
    setup_logging,
)
from mlz_workbench.propagator import converge, propagate, transition_matrix
from mlz_workbench.semiclassical import semiclassical_P
from mlz_workbench.sweep import sweep_parameter

log = logging.getLogger(__name__)
report_log = logging.getLogger("report")

SCHEMES = {"adaptive": "interaction-picture-adaptive", "raw": "raw-fixed-step"}

#: Default tolerance when comparing two computations of the same matrix.
COMPARISON_TOLERANCE = 2e-3

#: Default tolerance of predictions for the pseudo bow-tie.
PREDICTION_TOLERANCE = 1e-2


class ArgumentParser(argparse.ArgumentParser):
    """Argument parser that exits with status 1 on usage errors."""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _schedule(value: str) -> tuple[float, ...]:
    try:
        return tuple(float(token) for token in value.split(","))
    except ValueError as ex:
        raise argparse.ArgumentTypeError(f"{value}: Not a comma-separated list of numbers.") from ex


def _sweep_range(value: str) -> tuple[str, float, float, int]:
    try:
        name, start, stop, steps = value.split(":")
        return name, float(start), float(stop), int(steps)
    except ValueError as ex:
        raise argparse.ArgumentTypeError(f"{value}: Expected <name>:<from>:<to>:<steps>.") from ex


def get_config(args: argparse.Namespace) -> PropagationConfig:
    """Get the propagation configuration from command-line arguments."""
    options: dict[str, Any] = {
        "scheme": SCHEMES[args.scheme],
        "t_end": args.tmax,
        "step_size": args.dt,
        "error_tolerance": args.rtol,
        "method": args.method,
        "tail_correction": args.tail_correction,
    }
    return PropagationConfig(**{key: value for key, value in options.items() if value is not None})


def _user_labels(model: MlzModel, report: CanonicalizationReport) -> tuple[str, ...]:
    return tuple(model.labels[index] for index in np.argsort(report.permutation))


def cmd_validate(args: argparse.Namespace) -> RunReport:
    """Parse and canonicalize a model file."""
    model, report = load_model(args.path)
    rows = tuple(
        (label, float(slope), float(energy), report.permutation[index] + 1)
        for index, (label, slope, energy) in enumerate(zip(model.labels, model.slopes, model.energies))
    )
    table = Table(title="levels in canonical order", columns=("label", "slope", "energy", "input"), rows=rows)
    return RunReport(
        command="validate",
        model_digest=model.digest(),
        metadata=(("levels", model.dimension), ("canonical order", report.is_identity)),
        tables=(table,),
    )


def cmd_simulate(args: argparse.Namespace) -> RunReport:
    """Compute the scattering matrix of a model."""
    model, report = load_model(args.path)
    config = get_config(args)
    metadata: list[tuple[str, Any]] = [("scheme", config.scheme)]

    report_log.info("Propagating %s levels...", model.dimension)
    if args.converge:
        matrix, estimate = converge(model, args.converge, args.tol or COMPARISON_TOLERANCE, config)
        metadata += [("t_end", args.converge[-1]), ("convergence estimate", estimate)]
    else:
        matrix = propagate(model, config)
    metadata.append(("unitarity defect", matrix.unitarity_defect))

    labels = _user_labels(model, report)
    return RunReport(
        command="simulate",
        model_digest=model.digest(),
        metadata=tuple(metadata),
        tables=scattering_tables(report.to_user_order(matrix.entries), labels),
    )


def cmd_verify(args: argparse.Namespace) -> RunReport:
    """Check exact constraints against a propagated scattering matrix."""
    model, _report = load_model(args.path)
    tol = args.tol or PROPAGATION_TOLERANCE
    checks = {name for name in ("hc", "nogo", "band", "chain", "unitarity") if getattr(args, name)}
    if not checks:
        checks = {"hc", "unitarity"}

    report_log.info("Propagating %s levels...", model.dimension)
    matrix = propagate(model, get_config(args))
    probabilities = transition_matrix(matrix)

    reports: list[ConstraintReport] = []
    if "hc" in checks:
        reports.append(verify_hierarchy(model, matrix, tol))
    if "nogo" in checks:
        reports += [be_report(model, matrix, tol), nogo_report(model, matrix, tol)]
    if "band" in checks:
        reports.append(band_relation_residuals(model, probabilities, tol))
    if "chain" in checks:
        residual = chain_relation_residual(model, probabilities)
        chain_entry = ConstraintEntry(name="P22 chain relation", lhs=residual, rhs=0.0, tolerance=tol)
        chain = ConstraintReport(title="chain relations", entries=(chain_entry,))
        reports.append(chain + chain_symmetry_report(model, matrix, tol))
    if "unitarity" in checks:
        reports.append(unitarity_report(matrix, tol))

    return RunReport(
        command="verify",
        model_digest=model.digest(),
        metadata=(("checks", ", ".join(sorted(checks))),),
        tables=(*scattering_tables(matrix.entries, model.labels), *(constraint_table(r) for r in reports)),
        passed=all(r.passed for r in reports),
    )


def cmd_fermionize(args: argparse.Namespace) -> RunReport:
    """Build the model of several non-interacting fermions."""
    model, _report = load_model(args.path)
    tol = args.tol or COMPARISON_TOLERANCE
    if not 1 <= args.particles <= model.dimension:
        raise ValueError(f"M={args.particles}: Must be between 1 and {model.dimension}.")
    config = get_config(args)

    if args.particles == model.dimension:
        report_log.info("Propagating %s levels...", model.dimension)
        determinant = complex(exterior_power_S(propagate(model, config), args.particles).entries[0, 0])
        entry = ConstraintEntry(name="|det S|", lhs=abs(determinant), rhs=1.0, tolerance=tol)
        return RunReport(
            command="fermionize",
            model_digest=model.digest(),
            metadata=(("particles", args.particles), ("states", 1)),
            tables=(constraint_table(ConstraintReport(title="determinant", entries=(entry,))),),
            passed=entry.passed,
        )

    sector, basis = fermion_sector_model(model, args.particles)
    header = (
        f"{args.particles}-particle sector of model {model.digest()}",
        f"levels: {' '.join(sector.labels)}",
    )
    metadata: list[tuple[str, Any]] = [("particles", args.particles), ("states", sector.dimension)]
    tables: tuple[Table, ...] = ()
    passed = True

    if args.compare:
        report_log.info("Propagating %s levels...", model.dimension)
        minors = basis.to_canonical(exterior_power_S(propagate(model, config), args.particles).entries)
        report_log.info("Propagating %s states of the sector...", sector.dimension)
        direct = propagate(sector, config).entries
        deviation = float(np.max(np.abs(minors - direct)))
        metadata.append(("max deviation", deviation))
        tables = (
            matrix_table("P (minors)", np.abs(minors) ** 2, sector.labels, tol),
            matrix_table("P (sector)", np.abs(direct) ** 2, sector.labels, tol),
        )
        passed = deviation <= tol

    return RunReport(
        command="fermionize",
        model_digest=sector.digest(),
        metadata=tuple(metadata),
        tables=tables,
        model_text=ModelFile.from_model(sector).to_text(header=header),
        passed=passed,
    )


def cmd_semiclassical(args: argparse.Namespace) -> RunReport:
    """Compute transition probabilities with the trajectory sum."""
    model, _report = load_model(args.path)
    tol = args.tol or COMPARISON_TOLERANCE
    probabilities = semiclassical_P(model).probabilities
    tables = [matrix_table("P (semiclassical)", probabilities, model.labels)]
    metadata: list[tuple[str, Any]] = [("levels", model.dimension)]
    passed = True

    if args.compare:
        report_log.info("Propagating %s levels...", model.dimension)
        propagated = transition_matrix(propagate(model, get_config(args))).probabilities
        deviation = float(np.max(np.abs(probabilities - propagated)))
        metadata.append(("max deviation", deviation))
        tables.append(matrix_table("P (propagated)", propagated, model.labels, tol))
        passed = deviation <= tol

    return RunReport(
        command="semiclassical",
        model_digest=model.digest(),
        metadata=tuple(metadata),
        tables=tuple(tables),
        passed=passed,
    )


def cmd_sweep(args: argparse.Namespace) -> RunReport:
    """Propagate a model over a range of parameter values."""
    model, _report = load_model(args.path)
    name, start, stop, steps = args.param
    if steps < 1:
        raise ValueError(f"{steps}: Number of steps must be positive.")
    values = np.linspace(start, stop, steps) if start != stop else np.array([start])
    points = sweep_parameter(model, name, [float(value) for value in values], get_config(args))

    if args.predict is None:
        columns = tuple(f"P[{final},{initial}]" for final in model.labels for initial in model.labels)
        rows = tuple(
            (point.value, *(float(value) for value in np.abs(point.matrix.entries.ravel()) ** 2))
            for point in points
        )
        table = Table(title=f"sweep of {name}", columns=(name, *columns), rows=rows)
        return RunReport(command="sweep", model_digest=model.digest(), tables=(table,))

    tol = args.tol or PREDICTION_TOLERANCE
    measured = ("P[3,2]", "P[2,3]", "P[2,4]", "P[1,4]")
    prediction_rows = []
    passed = True
    for point in points:
        params = BowTieParams.from_model(point.model)
        checks = pseudo_bowtie_report(point.matrix, params.x, params.y, tol)
        by_name = {entry.name: entry for entry in checks.entries}
        entries = [by_name[f"{label} predicted"] for label in measured]
        prediction_rows.append(
            (
                point.value,
                *(entry.lhs.real for entry in entries),
                *(entry.rhs for entry in entries),
                max(entry.residual for entry in entries),
            )
        )
        passed &= all(entry.passed for entry in entries)

    table = Table(
        title=f"sweep of {name} with {args.predict} predictions",
        columns=(name, *measured, *(f"{label} predicted" for label in measured), "max residual"),
        rows=tuple(prediction_rows),
        tolerance=tol,
    )
    return RunReport(command="sweep", model_digest=model.digest(), tables=(table,), passed=passed)


def _add_propagation_arguments(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("propagation")
    group.add_argument("--scheme", choices=sorted(SCHEMES), default="adaptive", help="Integration scheme.")
    group.add_argument("--tmax", type=float, help="Propagate from -TMAX to TMAX.")
    group.add_argument("--dt", type=float, help="Step size of the raw scheme.")
    group.add_argument("--rtol", type=float, help="Error tolerance of the adaptive scheme.")
    group.add_argument("--method", help="Integration method of the adaptive scheme.")
    group.add_argument(
        "--no-tail-correction",
        dest="tail_correction",
        action="store_false",
        default=None,
        help="Do not correct for couplings outside of the time window.",
    )


def get_parser() -> ArgumentParser:
    """Get the argument parser."""
    parser = ArgumentParser(prog="mlz-workbench")
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--no-colors", action="store_true", default=False)
    parser.add_argument(
        "--log-level",
        choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
        default="WARNING",
        help="Override root log level",
    )
    parser.add_argument("--out", type=Path, help="Also write the report to this file.")
    parser.add_argument("--timing", action="store_true", default=False, help="Add wall time to the report.")

    subparsers = parser.add_subparsers(dest="command", required=True)

    validate = subparsers.add_parser("validate", help="Parse and canonicalize a model file.")
    validate.set_defaults(func=cmd_validate)

    simulate = subparsers.add_parser("simulate", help="Compute the scattering matrix.")
    simulate.add_argument("--converge", type=_schedule, metavar="T1,T2,...", help="Convergence study.")
    simulate.set_defaults(func=cmd_simulate)

    verify = subparsers.add_parser("verify", help="Check exact constraints (default: --hc --unitarity).")
    verify.add_argument("--hc", action="store_true", help="Hierarchy constraints.")
    verify.add_argument("--nogo", action="store_true", help="No-go rule and band survival amplitudes.")
    verify.add_argument("--band", action="store_true", help="Relations of the band next to the lowest level.")
    verify.add_argument("--chain", action="store_true", help="Relations of a Landau-Zener chain.")
    verify.add_argument("--unitarity", action="store_true", help="Unitarity and double stochasticity.")
    verify.set_defaults(func=cmd_verify)

    fermionize = subparsers.add_parser("fermionize", help="Model of non-interacting fermions.")
    fermionize.add_argument("-m", "--particles", type=int, required=True, help="Number of particles.")
    fermionize.add_argument("--compare", action="store_true", help="Compare minors with direct propagation.")
    fermionize.set_defaults(func=cmd_fermionize)

    semiclassical = subparsers.add_parser("semiclassical", help="Semiclassical trajectory sum.")
    semiclassical.add_argument("--compare", action="store_true", help="Compare with direct propagation.")
    semiclassical.set_defaults(func=cmd_semiclassical)

    sweep = subparsers.add_parser("sweep", help="Propagate over a range of parameter values.")
    sweep.add_argument(
        "--param", type=_sweep_range, required=True, metavar="eps:FROM:TO:STEPS", help="Swept parameter."
    )
    sweep.add_argument(
        "--predict", choices=["pseudo-bowtie"], help="Compare with pseudo bow-tie predictions."
    )
    sweep.set_defaults(func=cmd_sweep)

    for subparser in (validate, simulate, verify, fermionize, semiclassical, sweep):
        subparser.add_argument("path", type=Path, help="Model file.")
        subparser.add_argument("--tol", type=float, help="Tolerance for all checks of the command.")
        if subparser is not validate:
            _add_propagation_arguments(subparser)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    """Main entry function for the command-line."""
    parser = get_parser()
    args = parser.parse_args(argv)

    setup_logging(level=args.log_level, no_colors=args.no_colors)
    func: Callable[[argparse.Namespace], RunReport] = args.func

    start = time.perf_counter()
    try:
        report = func(args)
    except yaml.YAMLError as ex:  # an invalid YAML file
        error(f"{args.path}: Invalid YAML file:")
        print(ex, file=sys.stderr)
        return 1
    except (PropagationError, NoPhysicalRootError, DivisionByZeroError) as ex:
        error(f"{args.path}: {ex}")
        return 2
    except (ConstraintError, SemiclassicalError) as ex:
        error(f"{args.path}: {ex}")
        return 3
    except (ModelError, ValueError, OSError) as ex:  # ValueError is also thrown by Pydantic
        error(f"{args.path}: {ex}")
        return 1

    elapsed = time.perf_counter() - start
    log.info("%s finished in %.3f seconds.", args.command, elapsed)
    if args.timing:
        report = report.model_copy(update={"timing": elapsed})

    text = render_report(report)
    sys.stdout.write(text)
    if args.out is not None:
        args.out.write_text(text)

    if not report.passed:
        error("Some checks failed.")
        return 3
    return 0
