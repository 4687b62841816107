"""Interface numerical fluxes.

All functions take left/right primitive states with the variables on the
last axis, either 1D ``(rho, u, p)`` or 2D ``(rho, u, v, p)``, and an
optional face normal: a sign (+1/-1) in 1D or a unit vector ``(nx, ny)``
in 2D. The returned flux has the same layout as the conserved state.

The entropy-conservative cores only use the two logarithms hidden in the
jump of the first entropy variable, ln(p_R/p_L) and ln(rho_R/rho_L).
"""
import numpy as np

from . import kernels
from .gas import AIR, GasModel, entropy_variables, potentials, rotate, to_1d, to_2d
from .kernels import DELTA, THETA


def _normals(n, lead, dim):
    if dim == 3:
        sign = np.broadcast_to(np.asarray(1.0 if n is None else n, dtype=np.float64), lead)
        return sign.ravel(), np.zeros(sign.size)
    n = np.array([1.0, 0.0]) if n is None else np.asarray(n, dtype=np.float64)
    n = np.broadcast_to(n, lead + (2,))
    return n[..., 0].ravel(), n[..., 1].ravel()


def evaluate(core, stab, wl, wr, n=None, gas: GasModel = AIR, phi=None, d3u=None,
             delta=DELTA, theta=THETA):
    """Shared driver: broadcast, flatten, call the kernel, restore shape.

    ``core``/``stab`` are names ("ec1", "hes", ...) or kernel codes.
    Returns ``(flux, alpha_s)``.
    """
    if isinstance(core, str):
        core = kernels.FLUX_CODES[core.lower()]
    if isinstance(stab, str):
        stab = kernels.STAB_CODES[stab.lower()]
    wl = np.asarray(wl, dtype=np.float64)
    wr = np.asarray(wr, dtype=np.float64)
    dim = wl.shape[-1]
    if dim != wr.shape[-1] or dim not in (3, 4):
        raise ValueError("states must both have 3 (1D) or 4 (2D) components")
    lead = np.broadcast_shapes(wl.shape[:-1], wr.shape[:-1])
    wl4 = np.broadcast_to(to_2d(wl), lead + (4,)).reshape(-1, 4)
    wr4 = np.broadcast_to(to_2d(wr), lead + (4,)).reshape(-1, 4)
    nx, ny = _normals(n, lead, dim)
    m = wl4.shape[0]
    if phi is not None:
        phi = np.broadcast_to(np.asarray(phi, dtype=np.float64), lead).ravel()
    if d3u is not None:
        d3u = np.broadcast_to(to_2d(np.asarray(d3u, dtype=np.float64)), lead + (4,)).reshape(m, 4)
    f, alpha = kernels.face_fluxes(core, stab, wl4, wr4, nx, ny, phi, d3u,
                                   gas.gamma, delta, theta)
    f = f.reshape(lead + (4,))
    if dim == 3:
        f = to_1d(f)
    return f, alpha.reshape(lead)


def central_flux(wl, wr, n=None, gas: GasModel = AIR):
    """Arithmetic mean of the two physical fluxes."""
    return evaluate("central", "none", wl, wr, n, gas)[0]


def ec1_flux(wl, wr, n=None, gas: GasModel = AIR, delta=DELTA):
    """Entropy-conservative flux with scalar correction on every component."""
    return evaluate("ec1", "none", wl, wr, n, gas, delta=delta)[0]


def ec2_flux(wl, wr, n=None, gas: GasModel = AIR, delta=DELTA):
    """Entropy-conservative flux correcting the energy component only."""
    return evaluate("ec2", "none", wl, wr, n, gas, delta=delta)[0]


def eckep_flux(wl, wr, n=None, gas: GasModel = AIR, delta=DELTA):
    """Entropy-conservative and kinetic-energy-preserving flux.

    Mass flux is the mean mass flux, momentum flux is mass flux times mean
    velocity plus mean pressure, and the energy flux carries the entropy
    correction.
    """
    return evaluate("eckep", "none", wl, wr, n, gas, delta=delta)[0]


def llf_flux(wl, wr, n=None, gas: GasModel = AIR):
    """Local Lax-Friedrichs (Rusanov) flux."""
    return evaluate("llf", "none", wl, wr, n, gas)[0]


def roe_flux(wl, wr, n=None, gas: GasModel = AIR):
    """Roe flux without entropy fix."""
    return evaluate("roe", "none", wl, wr, n, gas)[0]


FLUXES = {
    "central": central_flux,
    "ec1": ec1_flux,
    "ec2": ec2_flux,
    "eckep": eckep_flux,
    "llf": llf_flux,
    "roe": roe_flux,
}


def _face_frame(wl, wr, n):
    """Rotate 2D states into the face frame; 1D states are flipped by the sign."""
    wl = np.asarray(wl, dtype=np.float64)
    wr = np.asarray(wr, dtype=np.float64)
    if wl.shape[-1] == 4:
        if n is None:
            return wl, wr
        return rotate(wl, n), rotate(wr, n)
    sign = 1.0 if n is None else np.asarray(n, dtype=np.float64)
    wl = wl.copy()
    wr = wr.copy()
    wl[..., 1] = wl[..., 1] * sign
    wr[..., 1] = wr[..., 1] * sign
    return wl, wr


def tadmor_residual(wl, wr, f, n=None, gas: GasModel = AIR):
    """Signed residual dV.F - dpsi of the entropy-conservation condition."""
    f = np.asarray(f, dtype=np.float64)
    wl_n, wr_n = _face_frame(wl, wr, n)
    f_n = _face_frame(f, f, n)[0]
    dv = entropy_variables(wr_n, gas) - entropy_variables(wl_n, gas)
    dpsi = potentials(wr_n, None, gas)[1] - potentials(wl_n, None, gas)[1]
    return np.sum(dv * f_n, axis=-1) - dpsi
