"""Command-line front end.

Verbs: ``run <case>``, ``eoc``, ``bench``, ``list-cases``. Exit codes: 0 ok,
1 I/O error, 2 configuration error, 3 positivity violation, 4 steady run
not converged.
"""
import argparse
import csv
import os
import sys
import time
from dataclasses import dataclass, fields

import numpy as np

from . import kernels
from .errors import ConfigError, NonConvergence
from .gas import AIR, PositivityViolation, conserved_to_primitive, sound_speed, specific_entropy
from .grid import Grid1D
from .solver import DIAG_COLUMNS, SchemeConfig, integrate
from .verification.cases import case_registry, get_case
from .verification.norms import eoc_table, error_norms

EXIT_OK, EXIT_IO, EXIT_CONFIG, EXIT_POSITIVITY, EXIT_NONCONVERGENCE = 0, 1, 2, 3, 4
BENCH_FLUXES = (("EC1", kernels.EC1), ("EC2", kernels.EC2), ("ECKEP", kernels.ECKEP),
                ("LLF", kernels.LLF), ("Roe", kernels.ROE), ("central", kernels.CENTRAL))
MIN_BENCH_ITERATIONS = 1_000_000


@dataclass
class RunConfig:
    case: str = None
    flux: str = "eckep"
    scheme: str = "es"
    nx: int = None
    ny: int = None
    cfl: float = 0.1
    tfinal: float = None
    q: float = 10.0
    eps: float = 0.1
    sensor_mode: str = "exponential"
    integrator: int = 3
    delta: float = kernels.DELTA
    theta: float = kernels.THETA
    out: str = "."
    seed: int = 0
    levels: int = 4
    iterations: int = MIN_BENCH_ITERATIONS
    max_steps: int = None
    tol: float = None

    def scheme_config(self):
        return SchemeConfig(flux=self.flux, scheme=self.scheme, cfl=self.cfl,
                            integrator=self.integrator, q=self.q, eps=self.eps,
                            sensor_mode=self.sensor_mode, delta=self.delta, theta=self.theta)


_TYPES = {f.name: f.type for f in fields(RunConfig)}
_ALIASES = {"t_final": "tfinal", "sensor-mode": "sensor_mode"}


def _coerce(key, value, line=None):
    key = _ALIASES.get(key, key)
    if key not in _TYPES:
        raise ConfigError(f"unknown config key {key!r}", key=key, line=line)
    try:
        return key, _TYPES[key](value)
    except ValueError:
        raise ConfigError(f"bad value {value!r} for {key}", key=key, line=line) from None


def parse_config(text=None, overrides=None):
    """Build a validated RunConfig from ``key=value`` text and overrides.

    Text may hold several pairs per line; ``#`` starts a comment. Keys in
    ``overrides`` (a dict, e.g. parsed flags) win over the text. Unknown
    keys raise ConfigError carrying the key and 1-based line number.
    """
    values = {}
    for lineno, raw in enumerate((text or "").splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        for tok in body.split():
            if "=" not in tok:
                raise ConfigError(f"expected key=value, got {tok!r}", key=tok, line=lineno)
            k, v = tok.split("=", 1)
            k, v = _coerce(k.strip(), v.strip(), lineno)
            values[k] = v
    for k, v in (overrides or {}).items():
        if v is None:
            continue
        k, v = _coerce(k, v)
        values[k] = v
    cfg = RunConfig(**values)
    cfg.scheme_config()  # validates flux/scheme/cfl/sensor values
    if cfg.nx is not None and cfg.nx < 1:
        raise ConfigError("nx must be positive", key="nx")
    if cfg.ny is not None and cfg.ny < 1:
        raise ConfigError("ny must be positive", key="ny")
    if cfg.tfinal is not None and not cfg.tfinal > 0.0:
        raise ConfigError("tfinal must be positive", key="tfinal")
    if cfg.levels < 2:
        raise ConfigError("eoc needs at least two levels", key="levels")
    return cfg


# -- output ----------------------------------------------------------------

def _fmt(v):
    return "" if v is None else f"{v:.15g}"


def write_csv_1d(path, grid: Grid1D, W, gas=AIR):
    """Cell table with header x,rho,u,p,e_int (specific internal energy)."""
    e_int = W[:, 2] / (gas.gm1 * W[:, 0])
    with open(path, "w", newline="") as fh:
        fh.write("x,rho,u,p,e_int\n")
        for row in zip(grid.x, W[:, 0], W[:, 1], W[:, 2], e_int):
            fh.write(",".join(_fmt(float(v)) for v in row) + "\n")


def write_vtk(path, grid, W, gas=AIR, title="entroflux"):
    """Legacy-ASCII structured grid with cell scalars rho, p, mach, entropy."""
    ni, nj = grid.shape
    x = grid.x.T.ravel()
    y = grid.y.T.ravel()
    mach = np.hypot(W[..., 1], W[..., 2]) / sound_speed(W, gas)
    scalars = {"rho": W[..., 0], "p": W[..., 3], "mach": mach,
               "entropy": specific_entropy(W, gas)}
    with open(path, "w") as fh:
        fh.write(f"# vtk DataFile Version 3.0\n{title}\nASCII\nDATASET STRUCTURED_GRID\n")
        fh.write(f"DIMENSIONS {ni + 1} {nj + 1} 1\nPOINTS {x.size} double\n")
        for a, b in zip(x, y):
            fh.write(f"{a:.15g} {b:.15g} 0\n")
        fh.write(f"CELL_DATA {ni * nj}\n")
        for name, arr in scalars.items():
            fh.write(f"SCALARS {name} double 1\nLOOKUP_TABLE default\n")
            for v in arr.T.ravel():
                fh.write(f"{v:.15g}\n")


def write_diagnostics(path, diagnostics):
    with open(path, "w", newline="") as fh:
        fh.write(",".join(DIAG_COLUMNS) + "\n")
        for row in np.atleast_2d(diagnostics):
            fh.write(",".join(_fmt(float(v)) for v in row) + "\n")


def write_eoc(path, rows):
    with open(path, "w", newline="") as fh:
        fh.write("N,l1_err,eoc_l1,l2_err,eoc_l2\n")
        for n, l1, k1, l2, k2 in rows:
            fh.write(f"{n},{_fmt(l1)},{_fmt(k1)},{_fmt(l2)},{_fmt(k2)}\n")


def write_outputs(result, name, out_dir):
    """Solution file plus diagnostics CSV; returns the written paths."""
    os.makedirs(out_dir, exist_ok=True)
    disc = result.disc
    W = conserved_to_primitive(result.U, disc.gas, check=False)
    if disc.ndim == 1:
        sol = os.path.join(out_dir, f"{name}.csv")
        write_csv_1d(sol, disc.grid, W, disc.gas)
    else:
        sol = os.path.join(out_dir, f"{name}.vtk")
        write_vtk(sol, disc.grid, W, disc.gas, title=name)
    diag = os.path.join(out_dir, f"{name}_diagnostics.csv")
    write_diagnostics(diag, result.diagnostics)
    return sol, diag


# -- verbs -------------------------------------------------------------------

def run_case(cfg: RunConfig):
    case = get_case(cfg.case)
    setup = case.build(cfg.nx, cfg.ny)
    disc = setup.make_disc(cfg.scheme_config())
    t_final = case.t_final if cfg.tfinal is None else cfg.tfinal
    steady = case.steady and cfg.tfinal is None
    tol = case.steady_tol if cfg.tol is None else cfg.tol
    max_steps = cfg.max_steps if cfg.max_steps is not None else (case.max_steps if steady else None)
    return integrate(disc, setup.U0, t_final=t_final, steady=steady, tol=tol,
                     max_steps=max_steps)


def run_eoc(cfg: RunConfig, base=40):
    """Density-wave errors on N = base * 2^k, k < levels."""
    case = get_case("density_wave")
    t_final = case.t_final if cfg.tfinal is None else cfg.tfinal
    base = cfg.nx or base
    ns = [base * 2 ** k for k in range(cfg.levels)]
    l1s, l2s = [], []
    for n in ns:
        setup = case.build(n)
        disc = setup.make_disc(cfg.scheme_config())
        res = integrate(disc, setup.U0, t_final=t_final, record=False)
        l1, l2, _ = error_norms(res.W[:, 0], setup.exact(res.t)[:, 0], setup.grid.volumes)
        l1s.append(l1)
        l2s.append(l2)
    return eoc_table(ns, l1s, l2s)


def bench_inputs(n, seed=0):
    """Random face states (rho, p log-uniform in [0.1, 10], |u|, |v| <= 5) and normals."""
    rng = np.random.default_rng(seed)
    wl = np.empty((n, 4))
    wr = np.empty((n, 4))
    for w in (wl, wr):
        w[:, 0] = np.exp(rng.uniform(np.log(0.1), np.log(10.0), n))
        w[:, 1:3] = rng.uniform(-5.0, 5.0, (n, 2))
        w[:, 3] = np.exp(rng.uniform(np.log(0.1), np.log(10.0), n))
    ang = rng.uniform(0.0, 2.0 * np.pi, n)
    return wl, wr, np.cos(ang), np.sin(ang)


def bench_fluxes(iterations=MIN_BENCH_ITERATIONS, seed=0, repeats=10):
    """Mean and standard deviation of ns per face-flux call for each core.

    Every flux sees the same seeded sequence of ``iterations`` faces,
    timed in ``repeats`` equal batches.
    """
    if iterations < MIN_BENCH_ITERATIONS:
        raise ConfigError(f"bench needs at least {MIN_BENCH_ITERATIONS} iterations",
                          key="iterations")
    wl, wr, nx, ny = bench_inputs(iterations, seed)
    phi = np.ones(iterations)
    d3u = np.zeros((iterations, 4))
    batches = np.array_split(np.arange(iterations), repeats)
    rows = []
    for name, code in BENCH_FLUXES:
        kernels.face_fluxes(code, kernels.STAB_NONE, wl[:8], wr[:8], nx[:8], ny[:8])
        per_call = []
        for idx in batches:
            a, b, c, d = wl[idx], wr[idx], nx[idx], ny[idx]
            t0 = time.perf_counter_ns()
            kernels.face_fluxes(code, kernels.STAB_NONE, a, b, c, d, phi[idx], d3u[idx])
            per_call.append((time.perf_counter_ns() - t0) / idx.size)
        rows.append((name, float(np.mean(per_call)), float(np.std(per_call))))
    return rows


def write_bench(path, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["flux", "mean_ns", "stddev_ns"])
        for name, mean, std in rows:
            w.writerow([name, f"{mean:.6g}", f"{std:.6g}"])


def _parser():
    p = argparse.ArgumentParser(prog="entroflux", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="verb", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--flux")
    common.add_argument("--scheme")
    common.add_argument("--nx", type=int)
    common.add_argument("--ny", type=int)
    common.add_argument("--cfl", type=float)
    common.add_argument("--tfinal", type=float)
    common.add_argument("--q", type=float)
    common.add_argument("--eps", type=float)
    common.add_argument("--sensor-mode", dest="sensor_mode")
    common.add_argument("--out")
    common.add_argument("--config")
    common.add_argument("--seed", type=int)
    r = sub.add_parser("run", parents=[common], help="run a registered case")
    r.add_argument("case")
    r.add_argument("--max-steps", dest="max_steps", type=int)
    r.add_argument("--tol", type=float)
    e = sub.add_parser("eoc", parents=[common], help="density-wave convergence table")
    e.add_argument("--levels", type=int)
    b = sub.add_parser("bench", parents=[common], help="face-flux timing table")
    b.add_argument("--iterations", type=int)
    sub.add_parser("list-cases", help="print the case registry")
    return p


def main(argv=None):
    args = _parser().parse_args(argv)
    try:
        if args.verb == "list-cases":
            for c in case_registry():
                grid = f"{c.nx}" if c.dim == 1 else f"{c.nx}x{c.ny}"
                end = "steady" if c.steady else f"t={c.t_final:g}"
                print(f"{c.name:24s} {c.dim}D {grid:>9s} {end:>9s}  {c.description}")
            return EXIT_OK
        flags = {k: v for k, v in vars(args).items() if k not in ("verb", "config")}
        text = None
        if args.config:
            with open(args.config) as fh:
                text = fh.read()
        cfg = parse_config(text, flags)
        try:
            threads = kernels._threads_from_env()
        except ValueError as exc:
            raise ConfigError(str(exc), key="ENTROFLUX_THREADS") from None
        kernels.set_threads(threads)
        if args.verb == "run":
            result = run_case(cfg)
            sol, diag = write_outputs(result, cfg.case, cfg.out)
            print(f"{cfg.case}: {result.steps} steps to t={result.t:.6g}; wrote {sol}, {diag}")
        elif args.verb == "eoc":
            rows = run_eoc(cfg)
            os.makedirs(cfg.out, exist_ok=True)
            path = os.path.join(cfg.out, f"eoc_{cfg.flux}.csv")
            write_eoc(path, rows)
            print(f"wrote {path}")
        elif args.verb == "bench":
            rows = bench_fluxes(cfg.iterations, cfg.seed)
            os.makedirs(cfg.out, exist_ok=True)
            path = os.path.join(cfg.out, "bench.csv")
            write_bench(path, rows)
            for name, mean, std in rows:
                print(f"{name:8s} {mean:10.2f} ns  +- {std:.2f}")
        return EXIT_OK
    except ConfigError as exc:
        where = f" (line {exc.line})" if getattr(exc, "line", None) else ""
        print(f"config error{where}: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except PositivityViolation as exc:
        print(f"positivity violation: {exc}", file=sys.stderr)
        return EXIT_POSITIVITY
    except NonConvergence as exc:
        print(f"not converged: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENCE
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
