"""Compare the compiled and pure-Python RNG kernels.

    python3 benchmarks/bench_kernels.py [--draws 1000000]
"""

import argparse
import time

from turingstat import _kernels
from turingstat.rng import bernoulli_threshold, stream_state


def _time(fn, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - start)
    return best, result


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--draws", type=int, default=1_000_000)
    args = ap.parse_args(argv)

    backends = {"python": _kernels.python_backend}
    if _kernels.compiled_backend is not None:
        backends["cython"] = _kernels.compiled_backend
    else:
        print("compiled backend unavailable; timing the Python kernel only")

    state = stream_state(12345)
    threshold = bernoulli_threshold(0.3)
    results = {}
    for name, mod in backends.items():
        secs, (hits, _) = _time(lambda: mod.bernoulli_count(state, threshold, args.draws))
        results[name] = (secs, hits)
        print(f"{name:>7}: bernoulli_count x {args.draws:,}  {secs * 1e3:9.2f} ms  hits={hits}")
    if len(results) == 2:
        assert results["python"][1] == results["cython"][1], "backends disagree"
        print(f"speedup: {results['python'][0] / results['cython'][0]:.1f}x")


if __name__ == "__main__":
    main()
