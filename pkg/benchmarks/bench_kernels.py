"""Compare the numba and numpy kernel twins on random integer tensors.

    python3 benchmarks/bench_kernels.py --sizes 6 9 12 --repeat 5

Each kernel is run once untimed (numba compiles on first call), then the
best of ``--repeat`` runs is reported.  Results are also checked for equality.
"""
import argparse
import timeit

import numpy as np

from leibder import _kernels as K


def random_tensor(rng, n, density):
    c = rng.integers(-3, 4, size=(n, n, n))
    c[rng.random((n, n, n)) >= density] = 0
    return c.astype(np.int64)


def leibniz_tensor(n):
    # filiform-like: [e_i, e_1] = e_{i+1}, passes the whole scan
    c = np.zeros((n, n, n), dtype=np.int64)
    for i in range(1, n - 1):
        c[i, 0, i + 1] = 1
    c[0, 0, 2] = 1
    return c


def best(fn, repeat):
    fn()
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[6, 9, 12])
    ap.add_argument("--density", type=float, default=1.0)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    if not K.HAVE_NUMBA:
        print("numba unavailable or disabled (LEIBDER_NO_NUMBA); timing numpy only")
    rng = np.random.default_rng(args.seed)
    print(f"{'kernel':<22}{'n':>4}{'numpy s':>12}{'numba s':>12}{'speedup':>10}")
    for n in args.sizes:
        c = random_tensor(rng, n, args.density)
        a = K._constraint_matrix_np(c)
        ok_tensor = leibniz_tensor(n)
        cases = [
            ("constraint_matrix", (c,), K._constraint_matrix_np, "_constraint_matrix_nb"),
            ("leibniz_scan", (ok_tensor,), K._first_leibniz_failure_np, "_first_leibniz_failure_nb"),
            ("rank_mod_p", (a, K.PRIME), K._rank_mod_p_np, "_rank_mod_p_nb"),
        ]
        for name, fargs, np_fn, nb_name in cases:
            t_np = best(lambda: np_fn(*fargs), args.repeat)
            if K.HAVE_NUMBA:
                nb_fn = getattr(K, nb_name)
                assert np.array_equal(np.asarray(np_fn(*fargs)), np.asarray(nb_fn(*fargs))), name
                t_nb = best(lambda: nb_fn(*fargs), args.repeat)
                print(f"{name:<22}{n:>4}{t_np:>12.5f}{t_nb:>12.5f}{t_np / t_nb:>9.1f}x")
            else:
                print(f"{name:<22}{n:>4}{t_np:>12.5f}{'-':>12}{'-':>10}")


if __name__ == "__main__":
    main()
