"""Time the compiled kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--only NAME ...]

Each workload runs once untimed per backend (numba compiles on first call),
then ``--repeat`` times; the best time is reported together with the
speed-up and a check that both backends returned the same value.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from riskshare import FiniteSpace, make_distortion
from riskshare import _kernels, oracle


def _table(h, space):
    return oracle.ChoquetMeasure(h).table(space)


def workloads():
    rng = np.random.default_rng(0)
    kt = make_distortion("kt", gamma=0.71)
    dp = make_distortion("dual_power", alpha=0.5)

    sp8 = FiniteSpace.uniform(8)
    V = rng.normal(size=(200_000, 8))
    H8 = _table(kt, sp8)
    yield "choquet_rows 200k x 8", lambda: float(_kernels.choquet_rows(V, H8).sum())

    _, Hg = kt.grid(2001)
    Hg = np.ascontiguousarray(Hg)
    yield "pair_violation grid 2001", lambda: float(_kernels.pair_violation(Hg)[0])

    X6 = FiniteSpace.uniform(6).variable([0.0, 0.1, 0.3, 0.5, 0.8, 1.0])
    G, _ = oracle._value_grid(X6, 16, "Lplus", None)
    T, off, radix, _ = oracle._grid_tables(X6, 2, G, False, 10**8)
    H2 = np.vstack([_table(dp, X6.space)] * 2)
    yield "grid_search n=2, 6 atoms, 17 levels", lambda: float(
        _kernels.grid_search(T, off, radix, H2, 1, 1e-12, 1e-12)[0]
    )

    X9 = FiniteSpace.uniform(9).variable(np.linspace(0.0, 1.0, 9))
    H9 = _table(kt, X9.space)
    yield "pair_counter_exact 9 atoms", lambda: float(_kernels.pair_counter_exact(X9.values, H9, H9, 1, 1e-12)[0])

    base, coin = FiniteSpace.uniform(2), FiniteSpace.uniform(5, "c")
    XL = base.variable([-1.0, -0.4]).lift(base.product(coin), coin)
    yield "brute_force n=5 on 10 atoms (KT, Lminus)", lambda: oracle.brute_force_infconv(
        oracle.choquet_agents(kt, 5), XL, "counter_monotonic", 8, "Lminus"
    ).value


def best_of(fn, repeat):
    out, times = None, []
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return min(times), out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--only", nargs="*", default=None, help="substring filter on workload names")
    args = ap.parse_args(argv)
    if _kernels._numba_impl is None:
        raise SystemExit("numba is not importable; nothing to compare")

    print(f"{'workload':44s} {'numba s':>10s} {'numpy s':>10s} {'speed-up':>9s}  same")
    for name, fn in workloads():
        if args.only and not any(s in name for s in args.only):
            continue
        res = {}
        for backend in ("numba", "numpy"):
            with _kernels.using_backend(backend):
                fn()
                res[backend] = best_of(fn, args.repeat)
        (tn, vn), (tp, vp) = res["numba"], res["numpy"]
        same = abs(vn - vp) <= 1e-9 * max(1.0, abs(vn)) or vn == vp
        print(f"{name:44s} {tn:10.4f} {tp:10.4f} {tp / tn:8.1f}x  {'yes' if same else 'NO'}")


if __name__ == "__main__":
    main()
