"""Compare the compiled and numpy panel kernels on representative transforms.

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""
import argparse
import time

import numpy as np

from qvac import _kernels
from qvac.sampling import SwitchProfile, make_one_scale, make_two_scale
from qvac.spectral import fourier_transform

CASES = {
    "f1, 2000 omegas to 250": (lambda: make_one_scale(SwitchProfile.exp_inverse(1.0)),
                               np.linspace(0.0, 250.0, 2000)),
    "f2 t0=50, 1500 omegas to 150": (lambda: make_two_scale(SwitchProfile.exp_inverse(1.0), 50.0),
                                     np.linspace(0.0, 150.0, 1500)),
    "f2 t0=200, 600 omegas to 150": (lambda: make_two_scale(SwitchProfile.exp_inverse(1.0), 200.0),
                                     np.linspace(0.0, 150.0, 600)),
}


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return min(times), out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = ["python"]
    try:
        _kernels.get_backend("cython")
        backends.append("cython")
    except ImportError:
        print("compiled kernel not built; timing the numpy fallback only")
    print(f"{'case':32s} " + " ".join(f"{b:>10s}" for b in backends) + "   speedup  max|diff|")
    for name, (make, omegas) in CASES.items():
        sf = make()
        res = {b: best_of(lambda: fourier_transform(sf, omegas, backend=b).values, args.repeat)
               for b in backends}
        cols = " ".join(f"{res[b][0]:9.3f}s" for b in backends)
        if len(backends) == 2:
            speed = res["python"][0] / res["cython"][0]
            diff = np.max(np.abs(res["python"][1] - res["cython"][1]))
            cols += f"   {speed:6.1f}x  {diff:.1e}"
        print(f"{name:32s} {cols}")


if __name__ == "__main__":
    main()
