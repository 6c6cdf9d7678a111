import os
import random
import shutil
import subprocess

import pytest

import crashsuite

CLI = os.environ.get("CRASHSUITE_CLI") or shutil.which("crashsuite")


def cli_evaluate(problem, dim, x, objectives):
    args = [CLI, "evaluate", "--problem", str(problem), "--dim", str(dim), "--mock", "-x", ",".join(repr(v) for v in x)]
    for name in objectives:
        args += ["--objective", name]
    out = subprocess.run(args, check=True, capture_output=True, text=True).stdout
    pairs = dict(line.split("=", 1) for line in out.splitlines())
    return {name: float(pairs[name]) for name in objectives}


def test_midpoint_mass():
    p = crashsuite.create_problem(1, 1, ["Mass", "PenalizedSEA"])
    res = p.evaluate([0.0])
    assert res["Mass"] == pytest.approx(0.7103, rel=1e-3)
    assert p.denormalize([0.0]) == [90.0]
    assert p.bounds == ([60.0], [120.0])
    assert p.dimension == 1


def test_default_objectives_and_details():
    p = crashsuite.create_problem(2, 3)
    assert p.objectives[0] == "PenalizedMass"
    details = p.evaluate_details([0.0, 1.0, -1.0])
    assert details["objectives"] == p.evaluate([0.0, 1.0, -1.0])
    assert details["feasible"] is True


def test_errors_carry_category():
    p = crashsuite.create_problem(3, 2, ["LoadUniformity"])
    with pytest.raises(ValueError, match=r"\[usage\]"):
        p.evaluate([0.0])
    with pytest.raises(ValueError, match="out-of-domain"):
        p.evaluate([0.0, 6.0])
    with pytest.raises(ValueError, match="dimension-out-of-range"):
        crashsuite.create_problem(3, 31)
    with pytest.raises(ValueError, match="unknown-objective"):
        crashsuite.create_problem(1, 1, ["Beauty"])
    ext = crashsuite.create_problem(1, 1, ["Mass"], mock=False, solver_path="/nonexistent")
    with pytest.raises(crashsuite.CrashsuiteError, match=r"\[solver\] spawn-failure"):
        ext.evaluate([0.0])


@pytest.mark.skipif(CLI is None, reason="crashsuite executable not found")
def test_parity_with_cli():
    rng = random.Random(100)
    objectives = ["SEA", "Mass", "LoadUniformity", "Intrusion", "PeakForce", "MeanForce", "AbsorbedEnergy"]
    for k in range(100):
        problem = 1 + k % 3
        dim = rng.randint(1, {1: 34, 2: 40, 3: 30}[problem])
        x = [rng.uniform(-5.0, 5.0) for _ in range(dim)]
        handle = crashsuite.create_problem(problem, dim, objectives)
        assert handle.evaluate(x) == cli_evaluate(problem, dim, x, objectives)
