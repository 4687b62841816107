"""Face-flux kernels with a compiled and a pure-numpy backend.

The compiled (numba) backend is used unless ``ENTROFLUX_NO_JIT=1`` is set
or numba cannot be imported. ``ENTROFLUX_THREADS`` caps the numba thread
pool. Both backends share one calling convention::

    face_fluxes(core, stab, wl, wr, nx, ny, phi, d3u, gamma, delta, theta)
        -> (flux[n, 4], alpha_s[n])
"""
import os

import numpy as np

from . import _numpy
from .codes import (CENTRAL, EC1, EC2, ECKEP, FLUX_CODES, LLF, ROE, STAB_CODES,
                    STAB_ES, STAB_HES, STAB_NONE)

DELTA = 1e-16
THETA = 0.1

try:
    from . import _numba
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    _numba = None
    HAVE_NUMBA = False

_backend = "numpy"


def _threads_from_env():
    raw = os.environ.get("ENTROFLUX_THREADS", "").strip()
    if not raw:
        return None
    n = int(raw)
    if n < 1:
        raise ValueError(f"ENTROFLUX_THREADS must be >= 1, got {raw!r}")
    return n


def set_threads(n):
    """Limit the numba thread pool (no-op for the numpy backend)."""
    if not HAVE_NUMBA or n is None:
        return
    import numba
    numba.set_num_threads(min(int(n), numba.config.NUMBA_NUM_THREADS))


def set_backend(name):
    """Select ``"numba"`` or ``"numpy"``; returns the previous choice."""
    global _backend
    if name not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba is not available")
    prev = _backend
    _backend = name
    return prev


def get_backend():
    return _backend


def face_fluxes(core, stab, wl, wr, nx, ny, phi=None, d3u=None,
                gamma=1.4, delta=DELTA, theta=THETA):
    wl = np.ascontiguousarray(wl, dtype=np.float64)
    wr = np.ascontiguousarray(wr, dtype=np.float64)
    n = wl.shape[0]
    nx = np.ascontiguousarray(np.broadcast_to(nx, (n,)), dtype=np.float64)
    ny = np.ascontiguousarray(np.broadcast_to(ny, (n,)), dtype=np.float64)
    if phi is None:
        phi = np.ones(n)
    else:
        phi = np.ascontiguousarray(np.broadcast_to(phi, (n,)), dtype=np.float64)
    if d3u is None:
        d3u = np.zeros((n, 4))
    else:
        d3u = np.ascontiguousarray(d3u, dtype=np.float64)
    if _backend == "numba":
        return _numba.face_fluxes(core, stab, wl, wr, nx, ny, phi, d3u,
                                  gamma, delta, theta,
                                  parallel=_threads_from_env() not in (None, 1))
    return _numpy.face_fluxes(core, stab, wl, wr, nx, ny, phi, d3u,
                              gamma, delta, theta)


def entropy_distance(wl, wr, gamma=1.4):
    """Face entropy distance dU.dV from (n, 4) primitive left/right states."""
    wl = np.ascontiguousarray(wl, dtype=np.float64)
    wr = np.ascontiguousarray(wr, dtype=np.float64)
    if _backend == "numba":
        return _numba.entropy_distance(wl, wr, gamma)
    return _numpy.entropy_distance(wl, wr, gamma)


if HAVE_NUMBA and os.environ.get("ENTROFLUX_NO_JIT", "0") not in ("1", "true", "yes"):
    _backend = "numba"
    set_threads(_threads_from_env())

__all__ = [
    "CENTRAL", "EC1", "EC2", "ECKEP", "LLF", "ROE",
    "STAB_NONE", "STAB_ES", "STAB_HES", "FLUX_CODES", "STAB_CODES",
    "DELTA", "THETA", "face_fluxes", "entropy_distance", "set_backend", "get_backend", "set_threads",
    "HAVE_NUMBA",
]
