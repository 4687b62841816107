"""Compare the compiled and pure-numpy face-flux backends.

Times every flux core on the same random faces with both backends and
reports ns per face, the speed-up, and the largest relative difference
between the two results. Also times one full 2D residual per backend.

    python benchmarks/compare_backends.py --faces 200000
"""
import argparse
import time

import numpy as np

from entroflux import kernels
from entroflux.cli import BENCH_FLUXES, bench_inputs
from entroflux.solver import SchemeConfig
from entroflux.verification import get_case


def _time(fn, repeats):
    fn()
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--faces", type=int, default=200_000)
    ap.add_argument("--repeats", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    if not kernels.HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")
    wl, wr, nx, ny = bench_inputs(args.faces, args.seed)
    prev = kernels.get_backend()
    print(f"{'flux':8s} {'numba ns':>10s} {'numpy ns':>10s} {'speed-up':>9s} {'max rel diff':>13s}")
    cases = list(BENCH_FLUXES) + [("ECKEP+ES", kernels.ECKEP)]
    try:
        for name, code in cases:
            stab = kernels.STAB_ES if name.endswith("+ES") else kernels.STAB_NONE
            res = {}
            for backend in ("numba", "numpy"):
                kernels.set_backend(backend)
                dt, (f, _) = _time(lambda: kernels.face_fluxes(code, stab, wl, wr, nx, ny),
                                   args.repeats)
                res[backend] = (dt * 1e9 / args.faces, f)
            (tn, fn), (tp, fp) = res["numba"], res["numpy"]
            rel = np.max(np.abs(fn - fp) / np.maximum(1.0, np.abs(fp)))
            print(f"{name:8s} {tn:10.1f} {tp:10.1f} {tp / tn:9.1f} {rel:13.2e}")
        setup = get_case("oblique_shock").build()
        for scheme in ("es", "hes"):
            line = []
            for backend in ("numba", "numpy"):
                kernels.set_backend(backend)
                disc = setup.make_disc(SchemeConfig(scheme=scheme))
                dt, _ = _time(lambda: disc.residual(setup.U0), args.repeats)
                line.append(f"{backend} {dt * 1e3:.2f} ms")
            print(f"oblique_shock residual ({scheme}): " + ", ".join(line))
    finally:
        kernels.set_backend(prev)


if __name__ == "__main__":
    main()
