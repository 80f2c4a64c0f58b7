"""Compare the compiled and numpy kernel backends.

Usage: python3 benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import timeit

import numpy as np

from hetgc import _kernels
from hetgc.coding import build_crc


def cases(backend):
    B = np.ascontiguousarray(build_crc(16, 3).entries)
    masks = _kernels.python.weight_words(16, 8)
    words = _kernels.python.weight_words(20, 10)
    return {
        "subset_errors n=16 r=8 (12870 subsets)": lambda: backend.subset_errors(B, masks),
        "min_rotations n=20 r=10 (184756 words)": lambda: backend.min_rotations(words, 20),
        "weight_words n=22 r=11 (705432 words)": lambda: backend.weight_words(22, 11),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = {"python": _kernels.python}
    if _kernels.compiled is not None:
        backends["cython"] = _kernels.compiled
    else:
        print("compiled extension not built; timing the numpy fallback only")
    timings = {}
    for name, mod in backends.items():
        for label, fn in cases(mod).items():
            fn()
            timings.setdefault(label, {})[name] = min(timeit.repeat(fn, number=1, repeat=args.repeat))
    print(f"{'kernel':<42} " + " ".join(f"{b:>10}" for b in backends) + "   speedup")
    for label, t in timings.items():
        speed = f"{t['python'] / t['cython']:8.1f}x" if "cython" in t else ""
        print(f"{label:<42} " + " ".join(f"{t[b] * 1e3:>8.1f}ms" for b in backends) + f"  {speed}")


if __name__ == "__main__":
    main()
