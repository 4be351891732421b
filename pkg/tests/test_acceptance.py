"""Acceptance criteria 1 to 11.

Each test records one ``PASS criterion N`` or ``FAIL criterion N`` line.  The
lines are printed as they happen and collected again in the pytest terminal
summary (see conftest.py).  Running this file directly prints them as well.
"""
import json
import random
import sys
import time
from fractions import Fraction

from abelsl2 import cli
from abelsl2.abvar import PolarizedContext, fourier, multiplication, pullback, random_class, variety
from abelsl2.action import act_by_closed_forms, act_general, build_action
from abelsl2.lefschetz import fourier_primitive_check, hard_lefschetz_check, lefschetz_report
from abelsl2.sl2rep import GroupElement, build_free_module
from abelsl2.suites import random_free_generators, run_suite

SEED = 2024
RESULTS = []


def record(n, what, ok, detail=""):
    line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {what}" + (f" ({detail})" if detail else "")
    RESULTS.append(line)
    print(line)
    assert ok, line


def _failures(rep):
    return "; ".join(f"{c.name} [{c.inputs}]" for c in rep.failures()[:3])


def test_criterion_01_brackets():
    cases = [(1, None), (2, None), (2, (1, 2)), (2, (2, 2)), (3, None), (3, (1, 1, 2)), (3, (1, 2, 2)),
             (3, (2, 2, 2))]
    start = time.perf_counter()
    bad = []
    for g, typ in cases:
        rep = run_suite("brackets", g, typ, seed=SEED)
        if not rep.ok:
            bad.append(f"g={g} type={typ}: {_failures(rep)}")
    elapsed = time.perf_counter() - start
    record(1, f"sl2 brackets on {len(cases)} cohomology models", not bad and elapsed < 10,
           "; ".join(bad) or f"{elapsed:.2f}s")


def test_criterion_02_sl2z_relations():
    start = time.perf_counter()
    bad = []
    for g, typ in ((1, (1,)), (2, (1, 1)), (2, (1, 2))):
        rep = run_suite("sl2z", g, typ, seed=SEED)
        if not rep.ok:
            bad.append(f"g={g} type={typ}: {_failures(rep)}")
    elapsed = time.perf_counter() - start
    record(2, "SL2(Z) relations on correspondences for (g,d) in (1,1), (2,1), (2,2)",
           not bad and elapsed < 60, "; ".join(bad) or f"{elapsed:.2f}s")


def test_criterion_03_demazure():
    bad = []
    for g, typ in ((1, None), (2, None), (2, (1, 2)), (3, None)):
        rep = run_suite("demazure", g, typ, seed=SEED)
        families = {c.inputs.split()[0] for c in rep.checks}
        ts = {c.inputs.split("t=")[1] for c in rep.checks if "t=" in c.inputs}
        if not rep.ok or families != {"cohomology", "free"} or ts != {"2", "3", "-1"}:
            bad.append(f"g={g} type={typ}: {_failures(rep)}")
    record(3, "Demazure conditions for t in 2, 3, -1 on both families", not bad, "; ".join(bad))


def test_criterion_04_two_paths():
    rng = random.Random(f"{SEED}:two-paths")
    bad = []
    contexts = [PolarizedContext(1), PolarizedContext(2), PolarizedContext(2, (1, 2))]
    for k in range(20):
        m = GroupElement.random(rng)
        ctx = contexts[k % len(contexts)]
        z = random_class(variety(ctx), rng)
        if act_by_closed_forms(m, z) != act_general(m, z):
            bad.append(f"M={m} g={ctx.g}")
    record(4, "closed forms agree with the operator action on 20 random matrices", not bad,
           ", ".join(bad))


def test_criterion_05_fourier_on_primitives():
    bad = []
    for ctx in (PolarizedContext(1), PolarizedContext(2), PolarizedContext(2, (1, 2)),
                PolarizedContext(3), PolarizedContext(3, (1, 1, 2))):
        action = build_action(ctx)
        for q in range(ctx.g + 1):
            rep = fourier_primitive_check(action, q)
            if not rep.ok:
                bad.append(f"{ctx} q={q}")
    rng = random.Random(f"{SEED}:free")
    top = 0
    for k in range(10):
        g = rng.randint(1, 5)
        model = build_free_module(g, random_free_generators(g, rng, max_lam=10))
        lam = max(gen.lam for gen in model[0].generators)
        top = max(top, lam)
        for q in range(lam + 1):
            if not fourier_primitive_check(model, q).ok:
                bad.append(f"module#{k} q={q}")
    record(5, f"Fourier on primitives, cohomology g <= 3 and 10 free modules (max lambda {top})",
           not bad, ", ".join(bad))


def test_criterion_06_hard_lefschetz():
    bad = []
    for g in (1, 2, 3, 4):
        for ctx in (PolarizedContext(g), PolarizedContext(g, (1,) * (g - 1) + (2,))):
            action = build_action(ctx)
            if not lefschetz_report(action).ok:
                bad.append(f"report {ctx}")
            for i in range(g + 1):
                res = hard_lefschetz_check(action, Fraction(i, 2), Fraction(2 * g - i, 2), 0)
                if not (res.injective and res.surjective):
                    bad.append(f"wall {ctx} i={i}")
    rng = random.Random(f"{SEED}:lefschetz")
    for k in range(10):
        g = rng.randint(1, 5)
        model = build_free_module(g, random_free_generators(g, rng))
        if not lefschetz_report(model).ok:
            bad.append(f"free module#{k}")
    record(6, "hard Lefschetz predicate matches ranks, wall bijective for g <= 4", not bad,
           ", ".join(bad))


def test_criterion_07_formulas():
    bad = []
    for g, typ in ((1, None), (2, None), (2, (1, 2))):
        rep = run_suite("formulas12", g, typ, seed=SEED)
        samples = {c.inputs.split("alpha#")[1].split()[0] for c in rep.checks}
        if not rep.ok or len(samples) != 20:
            bad.append(f"g={g} type={typ}: {_failures(rep)}")
    record(7, "correspondence formulas (a) and (b) for n in -1, 2, 3 on 20 samples", not bad,
           "; ".join(bad))


def test_criterion_08_kunneth():
    bad = []
    for g, typ in ((1, None), (2, None), (2, (1, 2)), (3, None)):
        rep = run_suite("kunneth", g, typ, seed=SEED)
        if not rep.ok:
            bad.append(f"g={g} type={typ}: {_failures(rep)}")
    record(8, "Kunneth idempotents sum, orthogonality and weights for g <= 3", not bad,
           "; ".join(bad))


def test_criterion_09_isogeny():
    rep = run_suite("isogeny", 2, (1, 2), seed=SEED)
    names = {c.name for c in rep.checks}
    ok = rep.ok and "(π,π)^*Δ_*e^{θ₀} = deg π · Δ_*e^θ" in names and "(π,π)^*e^{℘₀} = e^℘" in names
    record(9, "isogeny transfer on E^2 with pi = diag(1,2)", ok, _failures(rep))


def test_criterion_10_fourier_inversion():
    bad = []
    for ctx in (PolarizedContext(1), PolarizedContext(2), PolarizedContext(2, (1, 2)),
                PolarizedContext(3)):
        A = variety(ctx)
        minus = multiplication(A, -1)
        rng = random.Random(f"{SEED}:inversion:{ctx}")
        for k in range(50):
            z = random_class(A, rng)
            if fourier(fourier(z)) != pullback(minus, z) * (-1) ** ctx.g:
                bad.append(f"{ctx} z#{k}")
    record(10, "Fourier inversion on 50 random classes per g <= 3", not bad, ", ".join(bad[:3]))


def _cli(capsys, *argv):
    code = cli.main(list(argv))
    return code, capsys.readouterr().out


def test_criterion_11_cli(capsys):
    code, out = _cli(capsys, "fourier", "--g", "1", "--type", "1", "--expr", "1")
    golden = code == 0 and out == "-theta\n"
    suite_code, _ = _cli(capsys, "suite", "all", "--g", "1", "--seed", str(SEED))
    args = ("suite", "all", "--g", "1", "--seed", str(SEED), "--format", "structured")
    first, second = _cli(capsys, *args)[1], _cli(capsys, *args)[1]
    identical = first == second and json.loads(first)["passed"]
    record(11, "CLI golden output, suite all exits 0, byte-identical reports",
           golden and suite_code == 0 and identical,
           f"golden={golden} exit={suite_code} identical={identical}")


if __name__ == "__main__":
    import pytest

    sys.exit(pytest.main([__file__, "-q", "-s"]))
