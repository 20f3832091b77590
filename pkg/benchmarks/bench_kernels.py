"""Time the compiled kernels against the numpy/scipy fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import time

import numpy as np

from so7atlas import _pykernels
from so7atlas.atlas7 import ALPHA_PERM, TRANSPOSITION_PERM, build_A64, twisted
from so7atlas.groupkit import inverse_codes
from so7atlas.kernels import compiled_backend
from so7atlas.signedperm import diag


def s7_generators() -> np.ndarray:
    gens = [diag(b) for b in build_A64().basis] + [twisted(ALPHA_PERM), twisted(TRANSPOSITION_PERM)]
    return np.array([g.code for g in gens], dtype=np.int64)


def best_of(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    backends = [_pykernels] + ([compiled_backend] if compiled_backend is not None else [])
    gens = s7_generators()
    elements = _pykernels.closure(gens, 10**6)
    rng = np.random.default_rng(0)
    a = rng.choice(elements, 10**6)
    b = rng.choice(elements, 10**6)
    # conjugation by the two permutation generators, as in a class sweep
    targets = []
    for g in gens[-2:]:
        g_inv = int(inverse_codes(np.array([g]))[0])
        conj = _pykernels.compose(_pykernels.compose(g, elements), g_inv)
        targets.append(np.searchsorted(elements, conj))
    targets = np.stack(targets)

    tasks = {
        "compose 1e6 pairs": lambda k: k.compose(a, b),
        f"closure order {elements.size}": lambda k: k.closure(gens, 10**6),
        f"components n={elements.size}": lambda k: k.components(elements.size, targets),
    }
    print(f"{'kernel':<28}" + "".join(f"{k.BACKEND:>12}" for k in backends) + ("     speedup" if len(backends) > 1 else ""))
    for name, task in tasks.items():
        times = [best_of(lambda: task(k), args.repeat) for k in backends]
        row = f"{name:<28}" + "".join(f"{t * 1e3:>10.1f}ms" for t in times)
        if len(times) > 1:
            row += f"{times[0] / times[1]:>11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
