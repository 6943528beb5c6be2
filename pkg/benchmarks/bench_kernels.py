"""Time the numba and numpy flavours of each hot kernel.

    python benchmarks/bench_kernels.py [--repeat 5]

Numba compile time is excluded by a warm-up call.
"""

import argparse
import timeit

import numpy as np

from symmpovm import _kernels as K


def bench(fn, args, repeat):
    fn(*args)  # warm-up / JIT compile
    number = 1
    while timeit.timeit(lambda: fn(*args), number=number) < 0.05:
        number *= 2
    return min(timeit.repeat(lambda: fn(*args), number=number, repeat=repeat)) / number


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    rng = np.random.default_rng(0)
    if not K.HAS_NUMBA:
        print("numba not installed; only the numpy flavour is available")

    print(f"{'kernel':<22}{'size':>6}{'numba [ms]':>14}{'numpy [ms]':>14}{'speedup':>10}")
    for n in (4, 8, 16, 32, 64):
        a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        h = (a + a.conj().T) / 2
        t_nb = bench(K.jacobi_eigh_numba, (h, 1e-10, 100), args.repeat)
        t_np = bench(K.jacobi_eigh_numpy, (h, 1e-10, 100), args.repeat)
        print(f"{'jacobi_eigh':<22}{n:>6}{1e3 * t_nb:>14.4f}{1e3 * t_np:>14.4f}{t_np / t_nb:>10.1f}")
    for q in (1, 2, 3, 4, 5):
        m = rng.normal(size=(2**q, 2**q)) + 1j * rng.normal(size=(2**q, 2**q))
        t_nb = bench(K.pauli_coefficients_numba, (m, q), args.repeat)
        t_np = bench(K.pauli_coefficients_numpy, (m, q), args.repeat)
        print(f"{'pauli_coefficients':<22}{q:>6}{1e3 * t_nb:>14.4f}{1e3 * t_np:>14.4f}{t_np / t_nb:>10.1f}")
        c = K.pauli_coefficients_numpy(m, q)
        t_nb = bench(K.pauli_matrix_numba, (c, q), args.repeat)
        t_np = bench(K.pauli_matrix_numpy, (c, q), args.repeat)
        print(f"{'pauli_matrix':<22}{q:>6}{1e3 * t_nb:>14.4f}{1e3 * t_np:>14.4f}{t_np / t_nb:>10.1f}")


if __name__ == "__main__":
    main()
