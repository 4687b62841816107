"""Conservation totals and semi-discrete entropy / kinetic-energy audits."""
from dataclasses import dataclass

import numpy as np

from .. import kernels
from ..gas import entropy_variables, primitive_to_conserved
from ..grid import GHOSTS
from ..solver import totals  # noqa: F401  (re-exported)


@dataclass
class EntropyAudit:
    """Semi-discrete entropy budget of one residual evaluation.

    ``rate`` is sum_j V_j . R_j vol_j (d/dt of the total entropy) and
    ``scale`` the sum of the absolute termwise products. ``production`` is
    the per-interface 1/4 * phi * alpha_S * dV.dU of the Rankine-Hugoniot
    diffusion (each interface feeds that amount to both neighbours).
    ``tadmor`` is the per-face dV.F_EC - dpsi of the core flux and
    ``fourth_order`` the per-face dV.F_R of the background diffusion
    (HES only); face quantities are multiplied by face length in 2D.
    """
    rate: float
    scale: float
    production: object
    tadmor: object
    fourth_order: object
    flux_jump: float


def _face_pairs(disc, U, t):
    """Face states (left, right), normals and lengths as flat arrays."""
    gas = disc.gas
    if disc.ndim == 1:
        n = U.shape[0]
        _, Wp = disc.face_states(U, t)
        wl = np.zeros((n + 1, 4))
        wr = np.zeros((n + 1, 4))
        wl[:, [0, 1, 3]] = Wp[1:n + 2]
        wr[:, [0, 1, 3]] = Wp[2:n + 3]
        return wl, wr, np.ones(n + 1), np.zeros(n + 1), np.ones(n + 1)
    from ..boundary import fill_ghosts_2d
    grid = disc.grid
    ni, nj = grid.shape
    g = GHOSTS
    Wp = fill_ghosts_2d(disc.primitives(U), grid, disc.bcs, t)
    wl_i = Wp[1:ni + 2, g:g + nj].copy()
    wr_i = Wp[2:ni + 3, g:g + nj].copy()
    wl_j = Wp[g:g + ni, 1:nj + 2].copy()
    wr_j = Wp[g:g + ni, 2:nj + 3].copy()
    if disc.solid is not None:
        disc._walls(wl_i, wr_i, grid.n_i, disc._wall_i)
        disc._walls(wl_j, wr_j, grid.n_j, disc._wall_j)
    wl = np.concatenate([wl_i.reshape(-1, 4), wl_j.reshape(-1, 4)])
    wr = np.concatenate([wr_i.reshape(-1, 4), wr_j.reshape(-1, 4)])
    length = np.concatenate([grid.len_i.ravel(), grid.len_j.ravel()])
    return wl, wr, disc.nx, disc.ny, length


def _flat_faces(disc, arr):
    if disc.ndim == 1:
        return np.asarray(arr)
    a, b = arr
    return np.concatenate([a.reshape((-1,) + a.shape[2:]), b.reshape((-1,) + b.shape[2:])])


def entropy_audit(U, disc, t=0.0):
    """Audit the entropy budget of ``disc.residual(U, t)``."""
    gas = disc.gas
    sc = disc.scheme
    R = disc.residual(U, t)
    W = disc.primitives(U)
    V = entropy_variables(W, gas)
    vol = np.broadcast_to(disc.volumes, W.shape[:-1])
    terms = V * R * vol[..., None]
    if getattr(disc, "solid", None) is not None:
        terms = terms[disc.fluid]
    rate = float(np.sum(terms))
    scale = float(np.sum(np.abs(terms)))

    wl, wr, nx, ny, length = _face_pairs(disc, U, t)
    F = _flat_faces(disc, disc.last.flux)
    if disc.ndim == 1:
        F4 = np.zeros((F.shape[0], 4))
        F4[:, [0, 1, 3]] = F
        F = F4
    else:
        F = F / length[:, None]
    alpha = _flat_faces(disc, disc.last.alpha)
    phi = np.ones_like(alpha) if disc.last.phi is None else _flat_faces(disc, disc.last.phi)
    dv = entropy_variables(wr, gas) - entropy_variables(wl, gas)
    du = primitive_to_conserved(wr, gas) - primitive_to_conserved(wl, gas)
    dpsi = wr[:, 0] * (wr[:, 1] * nx + wr[:, 2] * ny) - wl[:, 0] * (wl[:, 1] * nx + wl[:, 2] * ny)
    dvdu = np.sum(dv * du, axis=-1)
    if sc.scheme == "none":
        f_ec = F
        production = np.zeros_like(alpha)
    else:
        f_ec, _ = kernels.face_fluxes(sc.core_code, kernels.STAB_NONE, wl, wr, nx, ny,
                                      None, None, gas.gamma, sc.delta, sc.theta)
        production = 0.25 * phi * alpha * dvdu * length
    tadmor = (np.sum(dv * f_ec, axis=-1) - dpsi) * length
    fourth = None
    if sc.scheme == "hes":
        f_rh = -0.5 * (phi * alpha)[:, None] * du
        f_r = F - f_ec - f_rh
        fourth = np.sum(dv * f_r, axis=-1) * length
    jump = float(np.sum(np.sum(dv * F, axis=-1) * length - dpsi * length))
    return EntropyAudit(rate, scale, production, tadmor, fourth, jump)


def kinetic_energy_budget(U, disc, t=0.0):
    """Per-cell terms of the semi-discrete kinetic-energy equation (1D).

    Returns ``(rate, flux_div, pressure_work)`` where ``rate`` is
    dx d(rho u^2/2)/dt from the mass and momentum residuals, ``flux_div``
    the jump of the kinetic-energy flux (rho u)_bar u_j u_{j+1} / 2 and
    ``pressure_work`` u_j (p_{j+1/2} - p_{j-1/2}) with the mean-pressure
    interface values. For the ECKEP core without diffusion the three sum
    to zero cell by cell.
    """
    if disc.ndim != 1:
        raise ValueError("kinetic_energy_budget is implemented for 1D grids")
    gas = disc.gas
    n = U.shape[0]
    R = disc.residual(U, t)
    W, Wp = disc.face_states(U, t)
    dx = disc.grid.dx
    rho, u = W[:, 0], W[:, 1]
    rate = dx * (u * R[:, 1] - 0.5 * u * u * R[:, 0])
    mass = disc.last.flux[:, 0]
    ul = Wp[1:n + 2, 1]
    ur = Wp[2:n + 3, 1]
    pbar = 0.5 * (Wp[1:n + 2, 2] + Wp[2:n + 3, 2])
    ke_flux = mass * ul * ur / 2.0
    flux_div = ke_flux[1:] - ke_flux[:-1]
    work = u * (pbar[1:] - pbar[:-1])
    return rate, flux_div, work
