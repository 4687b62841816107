"""Perfect-gas thermodynamics and the Euler entropy structure.

States are plain float64 arrays whose last axis holds the variables:

* 1D primitive ``(rho, u, p)``, conserved ``(rho, rho*u, rho*E)``
* 2D primitive ``(rho, u, v, p)``, conserved ``(rho, rho*u, rho*v, rho*E)``

Every function broadcasts over leading axes, so a whole grid of cells can
be converted in one call.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class PositivityViolation(ValueError):
    """Density or pressure dropped to zero or below.

    ``index`` is the location (over the leading axes) of the first bad cell.
    """

    def __init__(self, message, index=None, rho=None, p=None):
        super().__init__(message)
        self.index = index
        self.rho = rho
        self.p = p


@dataclass(frozen=True)
class GasModel:
    gamma: float = 1.4

    def __post_init__(self):
        if not self.gamma > 1.0:
            raise ValueError(f"gamma must exceed 1, got {self.gamma}")

    @property
    def gm1(self) -> float:
        return self.gamma - 1.0


AIR = GasModel(1.4)


def _first_bad(mask):
    flat = int(np.flatnonzero(mask.ravel())[0])
    if mask.ndim == 0:
        return ()
    return tuple(int(i) for i in np.unravel_index(flat, mask.shape))


def check_positive(rho, p, where=""):
    """Raise :class:`PositivityViolation` unless rho > 0 and p > 0 everywhere."""
    rho = np.asarray(rho)
    p = np.asarray(p)
    bad = ~((rho > 0.0) & (p > 0.0))
    if bad.any():
        idx = _first_bad(bad)
        r = float(rho[idx]) if rho.ndim else float(rho)
        q = float(p[idx]) if p.ndim else float(p)
        msg = f"non-positive state at cell {idx}: rho={r!r}, p={q!r}"
        if where:
            msg = f"{where}: {msg}"
        raise PositivityViolation(msg, index=idx, rho=r, p=q)


def primitive_to_conserved(w, gas: GasModel = AIR):
    w = np.asarray(w, dtype=np.float64)
    rho = w[..., 0]
    p = w[..., -1]
    vel = w[..., 1:-1]
    u = np.empty_like(w)
    u[..., 0] = rho
    u[..., 1:-1] = rho[..., None] * vel
    ke = 0.5 * rho * np.sum(vel * vel, axis=-1)
    u[..., -1] = p / gas.gm1 + ke
    return u


def conserved_to_primitive(u, gas: GasModel = AIR, check: bool = True):
    """Inverse of :func:`primitive_to_conserved`.

    Raises PositivityViolation when the derived density or pressure is not
    strictly positive (no clipping).
    """
    u = np.asarray(u, dtype=np.float64)
    rho = u[..., 0]
    w = np.empty_like(u)
    w[..., 0] = rho
    w[..., 1:-1] = u[..., 1:-1] / rho[..., None]
    mom_sq = np.sum(u[..., 1:-1] * u[..., 1:-1], axis=-1)
    w[..., -1] = gas.gm1 * (u[..., -1] - 0.5 * mom_sq / rho)
    if check:
        check_positive(rho, w[..., -1])
    return w


def sound_speed(w, gas: GasModel = AIR):
    w = np.asarray(w, dtype=np.float64)
    return np.sqrt(gas.gamma * w[..., -1] / w[..., 0])


def specific_entropy(w, gas: GasModel = AIR):
    """s = ln(p / rho**gamma)."""
    w = np.asarray(w, dtype=np.float64)
    return np.log(w[..., -1]) - gas.gamma * np.log(w[..., 0])


def entropy_variables(w, gas: GasModel = AIR):
    """V = d(eta)/dU for eta = -rho*s/(gamma-1)."""
    w = np.asarray(w, dtype=np.float64)
    rho = w[..., 0]
    p = w[..., -1]
    vel = w[..., 1:-1]
    s = specific_entropy(w, gas)
    beta = rho / p
    v = np.empty_like(w)
    v[..., 0] = (gas.gamma - s) / gas.gm1 - 0.5 * beta * np.sum(vel * vel, axis=-1)
    v[..., 1:-1] = beta[..., None] * vel
    v[..., -1] = -beta
    return v


def normal_velocity(w, n=None):
    """Velocity component along ``n``.

    In 1D ``n`` is a scalar sign (default +1); in 2D it is a unit vector
    ``(nx, ny)`` broadcastable against the leading axes.
    """
    w = np.asarray(w, dtype=np.float64)
    if w.shape[-1] == 3:
        sign = 1.0 if n is None else np.asarray(n, dtype=np.float64)
        return sign * w[..., 1]
    n = np.array([1.0, 0.0]) if n is None else np.asarray(n, dtype=np.float64)
    return w[..., 1] * n[..., 0] + w[..., 2] * n[..., 1]


def entropy_pair(w, n=None, gas: GasModel = AIR):
    """Mathematical entropy eta and its flux zeta along ``n``."""
    w = np.asarray(w, dtype=np.float64)
    eta = -w[..., 0] * specific_entropy(w, gas) / gas.gm1
    return eta, eta * normal_velocity(w, n)


def potentials(w, n=None, gas: GasModel = AIR):
    """Entropy potential (rho) and entropy-flux potential (rho*u_n)."""
    w = np.asarray(w, dtype=np.float64)
    return w[..., 0].copy(), w[..., 0] * normal_velocity(w, n)


def physical_flux(w, n=None, gas: GasModel = AIR):
    """Euler flux through a face with normal ``n``."""
    w = np.asarray(w, dtype=np.float64)
    rho = w[..., 0]
    p = w[..., -1]
    un = normal_velocity(w, n)
    mass = rho * un
    u = primitive_to_conserved(w, gas)
    f = np.empty_like(w)
    f[..., 0] = mass
    f[..., 1:-1] = mass[..., None] * w[..., 1:-1]
    if w.shape[-1] == 3:
        sign = 1.0 if n is None else np.asarray(n, dtype=np.float64)
        f[..., 1] += p * sign
    else:
        n = np.array([1.0, 0.0]) if n is None else np.asarray(n, dtype=np.float64)
        f[..., 1] += p * n[..., 0]
        f[..., 2] += p * n[..., 1]
    f[..., -1] = un * (u[..., -1] + p)
    return f


def rotate(vec, n):
    """Express the (x, y) vector part of a 4-component state in the face frame.

    Component 1 becomes the normal part and component 2 the tangential part
    (tangent = n rotated by +90 degrees).
    """
    vec = np.asarray(vec, dtype=np.float64)
    n = np.asarray(n, dtype=np.float64)
    nx, ny = n[..., 0], n[..., 1]
    out = vec.copy()
    out[..., 1] = vec[..., 1] * nx + vec[..., 2] * ny
    out[..., 2] = -vec[..., 1] * ny + vec[..., 2] * nx
    return out


def unrotate(vec, n):
    """Inverse of :func:`rotate`."""
    vec = np.asarray(vec, dtype=np.float64)
    n = np.asarray(n, dtype=np.float64)
    nx, ny = n[..., 0], n[..., 1]
    out = vec.copy()
    out[..., 1] = vec[..., 1] * nx - vec[..., 2] * ny
    out[..., 2] = vec[..., 1] * ny + vec[..., 2] * nx
    return out


def to_2d(w):
    """Embed 1D states (rho, u, p) as 2D states (rho, u, 0, p)."""
    w = np.asarray(w, dtype=np.float64)
    if w.shape[-1] == 4:
        return w
    out = np.zeros(w.shape[:-1] + (4,))
    out[..., 0] = w[..., 0]
    out[..., 1] = w[..., 1]
    out[..., 3] = w[..., 2]
    return out


def to_1d(f):
    """Drop the tangential component of a 4-vector."""
    f = np.asarray(f)
    return f[..., [0, 1, 3]]
