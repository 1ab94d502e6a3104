# Copyright (c) 2025 Mathias Ertl
# Licensed under the MIT License. See LICENSE file for details.

"""Test the cli entry point function."""

from collections.abc import Iterator
from pathlib import Path
from unittest.mock import patch

import pytest

from mlz_workbench import __version__
from mlz_workbench.cli import main
from tests.conftest import TEST_MODELS_DIR

#: Propagation options for accurate and reasonably fast runs.
PROPAGATION = ["--tmax", "40", "--rtol", "1e-10"]


@pytest.fixture(autouse=True)
def mock_setup_logging() -> Iterator[None]:
    """Fixture to mock logging setup - so that it is not called multiple times."""
    with patch("mlz_workbench.cli.setup_logging", autospec=True):
        yield


def test_version(capsys: pytest.CaptureFixture[str]) -> None:
    """Test the --version option."""
    with pytest.raises(SystemExit) as ex:
        main(["--version"])
    assert ex.value.code == 0
    assert capsys.readouterr().out == f"{__version__}\n"


@pytest.mark.parametrize(
    "argv",
    (
        [],
        ["validate"],
        ["unknown", "model.txt"],
        ["sweep", "model.txt", "--param", "eps:0:1"],
        ["simulate", "model.txt", "--converge", "10,a"],
        ["fermionize", "model.txt"],
    ),
)
def test_usage_errors(capsys: pytest.CaptureFixture[str], argv: list[str]) -> None:
    """Test that usage errors exit with status 1."""
    with pytest.raises(SystemExit) as ex:
        main(argv)
    assert ex.value.code == 1
    assert "usage: mlz-workbench" in capsys.readouterr().err


@pytest.mark.model_path("chain3.txt")
def test_validate(capsys: pytest.CaptureFixture[str], model_path: Path) -> None:
    """Test validating a model that is already in canonical order."""
    assert main(["validate", str(model_path)]) == 0
    captured = capsys.readouterr()
    assert captured.out.startswith("# command: validate\n# model: ")
    assert "# levels: 3\n# canonical order: yes\n# result: PASS\n" in captured.out
    assert "# label\tslope\tenergy\tinput\n1\t-1\t0\t1\n" in captured.out


@pytest.mark.model_path("unordered.txt")
def test_validate_reordered_model(capsys: pytest.CaptureFixture[str], model_path: Path) -> None:
    """Test validating a model that needs to be reordered."""
    assert main(["validate", str(model_path)]) == 0
    captured = capsys.readouterr()
    assert "# canonical order: no\n" in captured.out
    assert "2\t-1\t0.5\t2\n3\t0\t-0.5\t3\n1\t1\t0\t1\n" in captured.out


@pytest.mark.parametrize(
    ("name", "message"),
    (
        ("coupled-parallel.txt", "Levels 1 and 2 are parallel but coupled."),
        ("non-hermitian.txt", "Coupling matrix is not Hermitian."),
        ("invalid-syntax.txt", "line 4: Expected: coupling <i> <j> <re> [<im>]"),
        ("invalid-yaml.yaml", "invalid-yaml.yaml: Invalid YAML file:"),
        ("does-not-exist.txt", "No such file or directory"),
    ),
)
def test_invalid_model(capsys: pytest.CaptureFixture[str], name: str, message: str) -> None:
    """Test errors when loading invalid model files."""
    assert main(["validate", str(TEST_MODELS_DIR / name)]) == 1
    captured = capsys.readouterr()
    assert captured.out == ""
    assert message in captured.err


@pytest.mark.model_path("unordered.txt")
def test_simulate(capsys: pytest.CaptureFixture[str], model_path: Path) -> None:
    """Test that results are reported in the order of the model file."""
    assert main(["simulate", str(model_path), *PROPAGATION]) == 0
    captured = capsys.readouterr()
    assert "# scheme: interaction-picture-adaptive\n" in captured.out
    for title in ("S (real part)", "S (imaginary part)", "P"):
        assert f"\n# {title}\n# final\t1\t2\t3\n" in captured.out


@pytest.mark.model_path("two-level.txt")
def test_simulate_with_raw_scheme(capsys: pytest.CaptureFixture[str], model_path: Path) -> None:
    """Test the fixed-step scheme."""
    assert main(["simulate", str(model_path), "--scheme", "raw", "--tmax", "20", "--dt", "0.01"]) == 0
    assert "# scheme: raw-fixed-step\n" in capsys.readouterr().out


@pytest.mark.model_path("two-level.txt")
def test_simulate_with_too_large_step(capsys: pytest.CaptureFixture[str], model_path: Path) -> None:
    """Test error when the step size cannot resolve the Hamiltonian."""
    assert main(["simulate", str(model_path), "--scheme", "raw", "--tmax", "40", "--dt", "1"]) == 2
    assert "is too large" in capsys.readouterr().err


@pytest.mark.model_path("two-level.txt")
def test_simulate_with_convergence_study(capsys: pytest.CaptureFixture[str], model_path: Path) -> None:
    """Test a convergence study."""
    assert main(["simulate", str(model_path), "--converge", "30,40", "--tol", "1e-2"]) == 0
    captured = capsys.readouterr()
    assert "# t_end: 40\n# convergence estimate: " in captured.out


@pytest.mark.model_path("two-level.txt")
def test_simulate_not_converged(capsys: pytest.CaptureFixture[str], model_path: Path) -> None:
    """Test error when a convergence study does not converge."""
    assert main(["simulate", str(model_path), "--converge", "5,40", "--tol", "1e-12"]) == 2
    assert "between the last two windows" in capsys.readouterr().err


@pytest.mark.model_path("chain3.txt")
def test_verify(capsys: pytest.CaptureFixture[str], model_path: Path) -> None:
    """Test the default checks."""
    assert main(["verify", str(model_path), *PROPAGATION]) == 0
    captured = capsys.readouterr()
    assert "# checks: hc, unitarity\n" in captured.out
    assert "\n# hierarchy constraints (tolerance: 0.005)\n" in captured.out
    assert "\nHC upper-left M=1\t" in captured.out
    assert "\n# unitarity (tolerance: 0.005)\n" in captured.out


@pytest.mark.model_path("chain3.txt")
def test_verify_chain(capsys: pytest.CaptureFixture[str], model_path: Path) -> None:
    """Test the chain relations."""
    assert main(["verify", str(model_path), "--chain", *PROPAGATION]) == 0
    captured = capsys.readouterr()
    assert "# checks: chain\n" in captured.out
    assert "\nP22 chain relation\t" in captured.out
    assert "\nchain symmetry S[1,3]\t" in captured.out


@pytest.mark.model_path("demkov-osherov.txt")
def test_verify_all(capsys: pytest.CaptureFixture[str], model_path: Path) -> None:
    """Test all checks that apply to a Demkov-Osherov model."""
    argv = ["verify", str(model_path), "--hc", "--nogo", "--band", "--unitarity", *PROPAGATION]
    assert main(argv) == 0
    captured = capsys.readouterr()
    assert "# checks: band, hc, nogo, unitarity\n" in captured.out
    assert "\nBE S[2,2]\t" in captured.out
    assert "\nno-go S[2,3]\t" in captured.out
    assert "\nband P[1,1] P[4,2]\t" in captured.out


@pytest.mark.model_path("chain3.txt")
def test_verify_failure(capsys: pytest.CaptureFixture[str], model_path: Path) -> None:
    """Test the exit status when checks fail."""
    assert main(["verify", str(model_path), "--tol", "1e-14", *PROPAGATION]) == 3
    captured = capsys.readouterr()
    assert "# result: FAIL\n" in captured.out
    assert "Some checks failed." in captured.err


@pytest.mark.model_path("bowtie.txt")
def test_verify_chain_with_bowtie(capsys: pytest.CaptureFixture[str], model_path: Path) -> None:
    """Test error when chain relations are requested for a model that is not a chain."""
    assert main(["verify", str(model_path), "--chain", *PROPAGATION]) == 3
    assert "Levels of a chain must have distinct slopes." in capsys.readouterr().err


@pytest.mark.model_path("chain3.txt")
def test_verify_with_output_file(
    capsys: pytest.CaptureFixture[str], model_path: Path, tmp_path: Path
) -> None:
    """Test writing the report to a file."""
    path = tmp_path / "report.txt"
    assert main(["--out", str(path), "--timing", "verify", str(model_path), *PROPAGATION]) == 0
    captured = capsys.readouterr()
    assert path.read_text() == captured.out
    assert "\n# time: " in captured.out


@pytest.mark.model_path("chain3.txt")
def test_fermionize(capsys: pytest.CaptureFixture[str], model_path: Path) -> None:
    """Test writing the two-particle sector of a chain as a model file."""
    assert main(["fermionize", str(model_path), "-m", "2"]) == 0
    captured = capsys.readouterr()
    assert "# particles: 2\n# states: 3\n" in captured.out
    assert "# 2-particle sector of model " in captured.out
    assert "# levels: 1,2 1,3 2,3\nn = 3\nslopes = -1.0 0.0 1.0\n" in captured.out
    assert "coupling 1 2 0.5 0.0\ncoupling 2 3 0.5 0.0\n" in captured.out


@pytest.mark.model_path("chain3.txt")
def test_fermionize_with_comparison(capsys: pytest.CaptureFixture[str], model_path: Path) -> None:
    """Test comparing the sector with the minors of the scattering matrix."""
    assert main(["fermionize", str(model_path), "-m", "2", "--compare", *PROPAGATION]) == 0
    captured = capsys.readouterr()
    assert "# max deviation: " in captured.out
    assert "\n# P (minors) (tolerance: 0.002)\n" in captured.out


@pytest.mark.model_path("chain3.txt")
def test_fermionize_all_levels(capsys: pytest.CaptureFixture[str], model_path: Path) -> None:
    """Test that a completely filled model only reports the determinant."""
    assert main(["fermionize", str(model_path), "-m", "3", *PROPAGATION]) == 0
    captured = capsys.readouterr()
    assert "# states: 1\n" in captured.out
    assert "\n|det S|\t" in captured.out


@pytest.mark.parametrize("particles", (0, 5))
@pytest.mark.model_path("chain3.txt")
def test_fermionize_with_invalid_particles(
    capsys: pytest.CaptureFixture[str], model_path: Path, particles: int
) -> None:
    """Test error when the number of particles does not fit the number of levels."""
    assert main(["fermionize", str(model_path), "-m", str(particles)]) == 1
    assert f"M={particles}: Must be between 1 and 3." in capsys.readouterr().err


@pytest.mark.model_path("demkov-osherov.txt")
def test_semiclassical(capsys: pytest.CaptureFixture[str], model_path: Path) -> None:
    """Test the trajectory sum for a Demkov-Osherov model."""
    assert main(["semiclassical", str(model_path)]) == 0
    captured = capsys.readouterr()
    assert "\n# P (semiclassical)\n# final\t1\t2\t3\t4\n" in captured.out


@pytest.mark.model_path("bowtie.txt")
def test_semiclassical_with_comparison(capsys: pytest.CaptureFixture[str], model_path: Path) -> None:
    """Test comparing the trajectory sum with numerical propagation."""
    assert main(["semiclassical", str(model_path), "--compare", *PROPAGATION]) == 0
    captured = capsys.readouterr()
    assert "# max deviation: " in captured.out
    assert "\n# P (propagated) (tolerance: 0.002)\n" in captured.out


@pytest.mark.parametrize(
    ("name", "message"),
    (
        ("pseudo-bowtie.txt", "Coupling signs of the slanted levels differ (pseudo bow-tie)."),
        ("chain3.txt", "Model is neither of Demkov-Osherov type"),
        ("complex-coupling.txt", "Semiclassical trajectories require real couplings."),
    ),
)
def test_semiclassical_out_of_scope(capsys: pytest.CaptureFixture[str], name: str, message: str) -> None:
    """Test models the trajectory sum does not apply to."""
    assert main(["semiclassical", str(TEST_MODELS_DIR / name)]) == 3
    assert message in capsys.readouterr().err


@pytest.mark.model_path("bowtie.txt")
def test_sweep(capsys: pytest.CaptureFixture[str], model_path: Path) -> None:
    """Test sweeping the distance of the parallel levels."""
    assert main(["sweep", str(model_path), "--param", "eps:0.5:1:2", *PROPAGATION]) == 0
    captured = capsys.readouterr()
    assert "\n# sweep of eps\n# eps\tP[1,1]\tP[1,2]\t" in captured.out
    assert "\n0.5\t" in captured.out
    assert "\n1\t" in captured.out


@pytest.mark.model_path("pseudo-bowtie.txt")
def test_sweep_with_predictions(capsys: pytest.CaptureFixture[str], model_path: Path) -> None:
    """Test comparing a sweep of the pseudo bow-tie with predictions."""
    assert main(["sweep", str(model_path), "--param", "eps:0.5:1.5:3", "--predict", "pseudo-bowtie"]) == 0
    captured = capsys.readouterr()
    assert "\n# sweep of eps with pseudo-bowtie predictions (tolerance: 0.01)\n" in captured.out
    assert "\n0.5\t" in captured.out
    assert "\n1.5\t" in captured.out
    assert "# eps\tP[3,2]\tP[2,3]\tP[2,4]\tP[1,4]\tP[3,2] predicted\t" in captured.out


@pytest.mark.parametrize(
    ("name", "param", "status", "message"),
    (
        ("chain3.txt", "eps:0:1:2", 3, "Model must have exactly one pair of parallel levels."),
        ("bowtie.txt", "foo:0:1:2", 1, "foo: Unknown parameter, must be one of eps."),
        ("bowtie.txt", "eps:0:1:0", 1, "0: Number of steps must be positive."),
    ),
)
def test_sweep_errors(
    capsys: pytest.CaptureFixture[str], name: str, param: str, status: int, message: str
) -> None:
    """Test errors of invalid sweeps."""
    assert main(["sweep", str(TEST_MODELS_DIR / name), "--param", param]) == status
    assert message in capsys.readouterr().err
