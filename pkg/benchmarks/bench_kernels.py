"""Compare the compiled kernels with the numpy fallback.

Micro-benchmarks call each kernel directly from both modules.  The
end-to-end part trains a small sum-of-quadratics problem (many tiny
vectors, where per-call overhead dominates) and a synthetic MLP in a
subprocess per backend, since the backend is chosen at import time.

    python benchmarks/bench_kernels.py [--repeat 5] [--json out.json]
"""
from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys
import timeit

import numpy as np

from cgq._backend import available_backends

END_TO_END = r"""
import json, time
from cgq._backend import BACKEND
from cgq.experiment import ExperimentConfig, build_objective
from cgq.optimizer import train
cfg = ExperimentConfig.from_dict(json.loads(%r))
obj, test, opt = build_objective(cfg)
t = time.perf_counter()
train(obj, opt, test_data=test)
print(json.dumps({"backend": BACKEND, "seconds": time.perf_counter() - t}))
"""

PROBLEMS = {
    "sum-quadratic dim 20": {
        "name": "bench-sq",
        "objective": {"kind": "sum-quadratic", "dim": 20, "n_components": 50},
        "optimizer": {"epochs": 40, "batch_size": 1},
    },
    "synthetic mlp 20-32-5": {
        "name": "bench-mlp",
        "objective": {"kind": "mlp", "hidden": [32], "dataset": {"kind": "synthetic", "n_train": 2000}},
        "optimizer": {"epochs": 5, "batch_size": 32},
    },
}


def micro(mod, n, number):
    rng = np.random.default_rng(0)
    a, b = rng.standard_normal(n), rng.standard_normal(n)
    X = np.ascontiguousarray([[0, 1, 0], [0, 0, 1]] + [[g * g, g, 1] for g in rng.uniform(0.1, 1, 4)], dtype=float)
    Y = rng.standard_normal(len(X))
    calls = {
        "dot": lambda: mod.dot(a, b),
        "axpy": lambda: mod.axpy(0.5, a, b),
        "sq_dist": lambda: mod.sq_dist(a, b),
        "interpolate_2pt": lambda: mod.interpolate_2pt(1.0, 0.3, 0.8, -2.0),
        "ls_fit": lambda: mod.ls_fit(X, Y),
    }
    return {k: min(timeit.repeat(f, number=number, repeat=3)) / number for k, f in calls.items()}


def end_to_end(backend, cfg):
    env = dict(os.environ, CGQ_PURE_PYTHON="1" if backend == "python" else "0")
    out = subprocess.run(
        [sys.executable, "-c", END_TO_END % json.dumps(cfg)], env=env, capture_output=True, text=True, check=True
    )
    return json.loads(out.stdout)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3, help="end-to-end repetitions (best is kept)")
    parser.add_argument("--json", help="also write results here")
    args = parser.parse_args(argv)

    backends = available_backends()
    results = {"micro": {}, "end_to_end": {}}
    print(f"backends: {', '.join(backends)}")
    if "cython" not in backends:
        print("compiled kernels not built; only the fallback is timed")

    for n in (8, 1000, 100_000):
        number = max(10, 200_000 // n)
        rows = {name: micro(mod, n, number) for name, mod in backends.items()}
        results["micro"][n] = rows
        print(f"\nvector length {n}  (seconds per call)")
        print(f"  {'kernel':16s}" + "".join(f"{b:>12s}" for b in rows) + ("     speedup" if len(rows) > 1 else ""))
        for k in rows["python"]:
            line = f"  {k:16s}" + "".join(f"{rows[b][k]:12.3e}" for b in rows)
            if "cython" in rows:
                line += f"{rows['python'][k] / rows['cython'][k]:11.1f}x"
            print(line)

    print("\nend to end (seconds, best of %d)" % args.repeat)
    for label, cfg in PROBLEMS.items():
        timings = {}
        for b in backends:
            runs = [end_to_end(b, cfg) for _ in range(args.repeat)]
            assert all(r["backend"] == b for r in runs)
            timings[b] = min(r["seconds"] for r in runs)
        results["end_to_end"][label] = timings
        line = f"  {label:24s}" + "".join(f"{b}={t:.3f}  " for b, t in timings.items())
        if "cython" in timings:
            line += f"speedup {timings['python'] / timings['cython']:.2f}x"
        print(line)

    if args.json:
        with open(args.json, "w") as fh:
            json.dump(results, fh, indent=2)


if __name__ == "__main__":
    main()
