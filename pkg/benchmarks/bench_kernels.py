"""Compare the compiled and pure-Python kernel backends.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""
import argparse
import timeit

import numpy as np

from nrssh import kernels
from nrssh import circuit_dynamics as cd
from nrssh.circuit import synthesize
from nrssh.lattice import ModelParams, build_hermitian_counterpart


def workloads():
    h = build_hermitian_counterpart(ModelParams(1.0, 4.0, 1.0, 200))
    d = synthesize(ModelParams(1.0, 4.0, 1.0, 5), 5.0)
    V0, W0 = cd.prepare_initial_state(d, 1.0)
    ms = cd.modal_solve(d, d.params, V0, W0)
    w = ms.reduced_omegas
    modes = np.ascontiguousarray(ms.eigvecs)
    times = np.linspace(0.0, 100.0, 10001)
    return {
        "tql_tridiagonal (dim 399)": lambda b: b.tql_tridiagonal(h.diag, h.upper, 30),
        "modal_evaluate (9 nodes x 10001 t)": lambda b: b.modal_evaluate(modes, ms.alphas, ms.betas, w, times),
        "modal_abs_trapezoid (aIPR window)": lambda b: b.modal_abs_trapezoid(
            modes, ms.alphas, ms.betas, w, 50.0, 100.0, 50000),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    backends = kernels.backends()
    print(f"backends: {', '.join(backends)}")
    print(f"{'kernel':40s}" + "".join(f"{name:>14s}" for name in backends) + "   speedup")
    for label, fn in workloads().items():
        best = {}
        for name, mod in backends.items():
            best[name] = min(timeit.repeat(lambda: fn(mod), number=1, repeat=args.repeat))
        line = f"{label:40s}" + "".join(f"{best[n] * 1e3:12.2f}ms" for n in backends)
        if len(best) == 2:
            line += f"   {best['python'] / best['cython']:6.1f}x"
        print(line)


if __name__ == "__main__":
    main()
