import json
import os
import subprocess
import sys

import pytest

from abelsl2.errors import DimensionGuard
from abelsl2.suites import LIMITS, SUITES, run_suite


@pytest.mark.parametrize("name", SUITES)
def test_every_suite_passes_genus_one(name):
    rep = run_suite(name, 1, (1,), seed=7)
    assert rep.ok and rep.checks


@pytest.mark.parametrize("name", [n for n in LIMITS if LIMITS[n] >= 2])
def test_every_suite_passes_type_1_2(name):
    assert run_suite(name, 2, (1, 2), seed=1).ok


def test_guards():
    with pytest.raises(DimensionGuard):
        run_suite("brackets", 9)
    with pytest.raises(DimensionGuard):
        run_suite("all", 3)
    with pytest.raises(ValueError):
        run_suite("nope", 1)


def test_records_sorted_and_deterministic():
    a = run_suite("all", 2, (1, 2), seed=5)
    b = run_suite("all", 2, (1, 2), seed=5, workers=4)
    assert a.to_tree() == b.to_tree()
    keys = [(c.anchor, c.name, c.inputs) for c in a.checks]
    assert keys == sorted(keys)


def test_seed_changes_inputs():
    # two-path records name the sampled matrix in their inputs
    a = run_suite("sl2z", 1, seed=1).to_tree()
    b = run_suite("sl2z", 1, seed=2).to_tree()
    assert a["passed"] and b["passed"]
    assert [r["inputs"] for r in a["records"]] != [r["inputs"] for r in b["records"]]


def test_pure_backend_gives_identical_report():
    code = ("import json; from abelsl2.suites import run_suite; from abelsl2 import kernels; "
            "print(kernels.BACKEND); print(json.dumps(run_suite('sl2z', 2, (1, 2), seed=4).to_tree(),"
            " sort_keys=True))")
    outs = []
    for pure in ("", "1"):
        env = dict(os.environ, ABELSL2_PURE=pure)
        res = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
        assert res.returncode == 0, res.stderr
        backend, report = res.stdout.split("\n", 1)
        outs.append((backend, json.loads(report)))
    assert outs[1][0] == "python"
    assert outs[0][1] == outs[1][1]
