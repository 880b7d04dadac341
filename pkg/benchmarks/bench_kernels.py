"""Compiled kernels vs the numpy fallback.

Times each index-arithmetic kernel on both backends, then ``reduce`` and
``mpi`` on the 8-qubit toric code with each backend swapped in.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import timeit

import numpy as np

from rspace import _pykernels, kernels
from rspace.ffham import ground_space
from rspace.fixtures import toric_code
from rspace.hilbert import SystemShape
from rspace.reduced import mpi, reduce

try:
    from rspace import _ckernels
except ImportError:
    _ckernels = None

NAMES = ("embed_index_map", "partial_trace", "gather_reduced", "accumulate_extended")


def kernel_cases(rng):
    dims = (2,) * 8
    subset = (0, 2, 5, 7)
    m = _pykernels.embed_index_map(dims, subset)
    d = 2 ** 8
    rho = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    basis = rng.standard_normal((d, 4)) + 1j * rng.standard_normal((d, 4))
    proj = np.eye(16, dtype=np.complex128)
    acc = np.zeros((d, d), dtype=np.complex128)
    return {
        "embed_index_map": lambda mod: mod.embed_index_map(dims, subset),
        "partial_trace": lambda mod: mod.partial_trace(rho, m),
        "gather_reduced": lambda mod: mod.gather_reduced(basis, m),
        "accumulate_extended": lambda mod: mod.accumulate_extended(acc, proj, m),
    }


def best_of(fn, repeat, number):
    return min(timeit.repeat(fn, repeat=repeat, number=number)) / number


def use_backend(mod):
    for name in NAMES:
        setattr(kernels, name, getattr(mod, name))


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    rng = np.random.default_rng(0)
    backends = [("python", _pykernels)] + ([("cython", _ckernels)] if _ckernels else [])
    if _ckernels is None:
        print("compiled extension not built; timing the numpy fallback only")

    print(f"{'kernel':<22}" + "".join(f"{b:>14}" for b, _ in backends) + f"{'speedup':>10}")
    for name, fn in kernel_cases(rng).items():
        times = [best_of(lambda: fn(mod), args.repeat, 20) for _, mod in backends]
        ratio = f"{times[0] / times[1]:>9.1f}x" if len(times) == 2 else ""
        print(f"{name:<22}" + "".join(f"{t * 1e6:>12.1f}us" for t in times) + ratio)

    h = toric_code(2)
    shape = SystemShape(h.shape.dims)
    gs = ground_space(h)
    v = reduce(gs, shape, 4)
    original = {name: getattr(kernels, name) for name in NAMES}
    print(f"\n{'toric L=2':<22}" + "".join(f"{b:>14}" for b, _ in backends) + f"{'speedup':>10}")
    try:
        for label, fn in [("reduce(GS, 4)", lambda: reduce(gs, shape, 4)),
                          ("mpi(v)", lambda: mpi(v)),
                          ("ground_space(H)", lambda: ground_space(h))]:
            times = []
            for _, mod in backends:
                use_backend(mod)
                times.append(best_of(fn, args.repeat, 3))
            ratio = f"{times[0] / times[1]:>9.1f}x" if len(times) == 2 else ""
            print(f"{label:<22}" + "".join(f"{t * 1e3:>12.2f}ms" for t in times) + ratio)
    finally:
        for name, fn in original.items():
            setattr(kernels, name, fn)


if __name__ == "__main__":
    main()
