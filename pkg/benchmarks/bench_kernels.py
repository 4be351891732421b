"""Compare the Cython kernels with the pure-Python fallback.

Kernel timings call both modules directly on identical inputs.  End-to-end
timings run a correspondence composition and a suite in fresh interpreters,
once per backend (``ABELSL2_PURE``).

    python3 benchmarks/bench_kernels.py [--repeat N] [--seed S]
"""

import argparse
import os
import random
import subprocess
import sys
import timeit
from fractions import Fraction

from abelsl2 import _pykernels

try:
    from abelsl2 import _ckernels
except ImportError:
    _ckernels = None

END_TO_END = {
    "compose g=2 (1,2)": (
        "import random; from abelsl2.abvar import PolarizedContext, variety, random_class;"
        "from abelsl2.corr import Correspondence, compose;"
        "ctx = PolarizedContext(2, (1, 2)); rng = random.Random(0); V = variety(ctx, 2);"
        "pairs = [(Correspondence(random_class(V, rng, nterms=12)),"
        " Correspondence(random_class(V, rng, nterms=12))) for _ in range(5)]",
        "[compose(a, b) for a, b in pairs]",
    ),
    "suite lefschetz g=4": (
        "from abelsl2.suites import run_suite",
        "run_suite('lefschetz', 4, seed=0)",
    ),
}


def random_terms(rng, n, count, degree=None):
    out = {}
    while len(out) < count:
        bits = rng.sample(range(n), degree if degree is not None else rng.randint(0, n))
        out[sum(1 << b for b in bits)] = Fraction(rng.randint(-9, 9) or 1, rng.randint(1, 4))
    return out


def kernel_cases(seed):
    rng = random.Random(seed)
    cases = []
    for n in (8, 12, 16):
        a, b = random_terms(rng, n, 60), random_terms(rng, n, 60)
        cases.append((f"wedge_terms n={n}", "wedge_terms", (a, b)))
    for n in (8, 12):
        images = [random_terms(rng, n, 3, degree=1) for _ in range(n)]
        cases.append((f"map_terms n={n}", "map_terms", (random_terms(rng, n, 80), images)))
    n = 16
    cases.append((f"star_terms n={n}", "star_terms", (random_terms(rng, n, 400), (1 << n) - 1)))
    return cases


def time_call(fn, args, repeat):
    timer = timeit.Timer(lambda: fn(*args))
    number, _ = timer.autorange()
    return min(timer.repeat(repeat, number)) / number


def end_to_end(repeat):
    rows = []
    for label, (setup, stmt) in END_TO_END.items():
        times = {}
        for backend, pure in (("cython", ""), ("python", "1")):
            code = ("import timeit;"
                    f"print(min(timeit.repeat({stmt!r}, setup={setup!r}, number=1, repeat={repeat})))")
            env = dict(os.environ, ABELSL2_PURE=pure)
            res = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                                 text=True, check=True)
            times[backend] = float(res.stdout)
        rows.append((label, times["cython"], times["python"]))
    return rows


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--skip-end-to-end", action="store_true")
    args = parser.parse_args(argv)

    if _ckernels is None:
        print("compiled kernels are not built; only the fallback can be timed")
    rows = []
    for label, name, inputs in kernel_cases(args.seed):
        py = time_call(getattr(_pykernels, name), inputs, args.repeat)
        cy = time_call(getattr(_ckernels, name), inputs, args.repeat) if _ckernels else None
        if _ckernels is not None:
            assert getattr(_ckernels, name)(*inputs) == getattr(_pykernels, name)(*inputs), label
        rows.append((label, cy, py))
    if _ckernels is not None and not args.skip_end_to_end:
        rows += end_to_end(args.repeat)

    print(f"{'case':<24}{'cython (ms)':>14}{'python (ms)':>14}{'speedup':>10}")
    for label, cy, py in rows:
        cy_s = f"{cy * 1e3:14.3f}" if cy is not None else f"{'-':>14}"
        ratio = f"{py / cy:9.2f}x" if cy else f"{'-':>10}"
        print(f"{label:<24}{cy_s}{py * 1e3:14.3f}{ratio}")


if __name__ == "__main__":
    main()
