"""Finite-volume semi-discretisation, SSP Runge-Kutta stepping and run loop.

A discretisation object bundles grid, boundary conditions, scheme and gas
and exposes ``residual(U, t)`` (the per-cell rate dU/dt) and ``dt(U)``.
Conserved fields are stored without ghosts: (n, 3) in 1D, (ni, nj, 4) in
2D; ghosts are rebuilt from primitive states on every residual call.
"""
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .boundary import fill_ghosts_1d, fill_ghosts_2d, validate_bcs_2d
from .errors import ConfigError, NonConvergence
from .gas import (AIR, GasModel, check_positive, conserved_to_primitive,
                  primitive_to_conserved, sound_speed,
                  specific_entropy)
from .grid import GHOSTS, Grid1D
from .hybrid import SENSOR_MODES, sensor_field
from .kernels import DELTA, THETA

EC_CORES = ("ec1", "ec2", "eckep")


@dataclass
class SchemeConfig:
    flux: str = "eckep"
    scheme: str = "none"
    cfl: float = 0.1
    integrator: int = 3
    q: float = 10.0
    eps: float = 0.1
    sensor_mode: str = "exponential"
    delta: float = DELTA
    theta: float = THETA

    def __post_init__(self):
        self.flux = str(self.flux).lower()
        self.scheme = str(self.scheme).lower()
        if self.flux not in kernels.FLUX_CODES:
            raise ConfigError(f"unknown flux {self.flux!r}", key="flux")
        if self.scheme not in kernels.STAB_CODES:
            raise ConfigError(f"unknown scheme {self.scheme!r}", key="scheme")
        if self.scheme != "none" and self.flux not in EC_CORES:
            raise ConfigError(f"scheme {self.scheme} needs an EC core, got {self.flux}",
                              key="scheme")
        if not 0.0 < self.cfl <= 1.0:
            raise ConfigError(f"cfl must lie in (0, 1], got {self.cfl}", key="cfl")
        if self.integrator not in (2, 3):
            raise ConfigError(f"integrator must be 2 or 3, got {self.integrator}",
                              key="integrator")
        if self.sensor_mode not in SENSOR_MODES:
            raise ConfigError(f"unknown sensor mode {self.sensor_mode!r}", key="sensor_mode")
        if not self.q > 0.0:
            raise ConfigError("q must be positive", key="q")
        if not self.eps >= 0.0:
            raise ConfigError("eps must be non-negative", key="eps")
        if not self.delta >= 0.0:
            raise ConfigError("delta must be non-negative", key="delta")
        if not self.theta > 0.0:
            raise ConfigError("theta must be positive", key="theta")

    @property
    def core_code(self):
        return kernels.FLUX_CODES[self.flux]

    @property
    def stab_code(self):
        return kernels.STAB_CODES[self.scheme]


@dataclass
class FaceData:
    """Interface quantities from the last residual evaluation."""
    flux: object
    alpha: object
    phi: object = None
    ed: object = None


def _embed(w):
    out = np.zeros(w.shape[:-1] + (4,))
    out[..., 0] = w[..., 0]
    out[..., 1] = w[..., 1]
    out[..., 3] = w[..., 2]
    return out


class Discretization1D:
    """Uniform-grid 1D finite-volume operator."""

    ndim = 1
    nvar = 3

    def __init__(self, grid: Grid1D, bcs, scheme: SchemeConfig, gas: GasModel = AIR):
        if len(bcs) != 2:
            raise ConfigError("1D needs (left, right) boundary conditions", key="bc")
        self.grid = grid
        self.bcs = tuple(bcs)
        self.scheme = scheme
        self.gas = gas
        self.post_step = None
        self.last = None

    @property
    def volumes(self):
        return self.grid.volumes

    def primitives(self, U):
        return conserved_to_primitive(U, self.gas)

    def face_states(self, U, t=0.0):
        W = self.primitives(U)
        Wp = fill_ghosts_1d(W, self.bcs, self.grid, t)
        return W, Wp

    def residual(self, U, t=0.0):
        sc = self.scheme
        n = U.shape[0]
        W, Wp = self.face_states(U, t)
        wl = _embed(Wp[1:n + 2])
        wr = _embed(Wp[2:n + 3])
        phi = d3u = ed = None
        if sc.scheme == "hes":
            Up = primitive_to_conserved(Wp, self.gas)
            d3u = _embed((Up[3:n + 4] - 3.0 * Up[2:n + 3]) + (3.0 * Up[1:n + 2] - Up[0:n + 1]))
            ed = kernels.entropy_distance(wl, wr, self.gas.gamma)
            phi = sensor_field(ed, sc.q, sc.eps, sc.sensor_mode).phi
        F, alpha = kernels.face_fluxes(sc.core_code, sc.stab_code, wl, wr, 1.0, 0.0,
                                       phi, d3u, self.gas.gamma, sc.delta, sc.theta)
        F = F[:, [0, 1, 3]]
        self.last = FaceData(F, alpha, phi, ed)
        return -(F[1:] - F[:-1]) / self.grid.dx

    def dt(self, U):
        return compute_dt_1d(U, self.grid, self.scheme.cfl, self.gas)


class Discretization2D:
    """Structured-grid 2D finite-volume operator.

    ``solid`` optionally masks cells that belong to an obstacle. Faces
    between fluid and solid cells act as slip walls (the solid side sees
    the mirrored fluid state), solid cells have zero residual, and the
    fourth-order diffusion is switched off wherever its stencil touches a
    solid cell.
    """

    ndim = 2
    nvar = 4

    def __init__(self, grid, bcs, scheme: SchemeConfig, gas: GasModel = AIR,
                 solid=None, post_step=None):
        validate_bcs_2d(bcs)
        self.grid = grid
        self.bcs = dict(bcs)
        self.scheme = scheme
        self.gas = gas
        self.post_step = post_step
        self.last = None
        ni, nj = grid.shape
        g = GHOSTS
        self.solid = None
        if solid is not None:
            solid = np.asarray(solid, dtype=bool)
            if solid.shape != (ni, nj):
                raise ConfigError("solid mask must match the cell array", key="solid")
            if solid.any():
                self.solid = solid
        self.fluid = np.ones((ni, nj), dtype=bool) if self.solid is None else ~self.solid
        # flattened face geometry: i-faces first, then j-faces
        self.n_faces_i = (ni + 1) * nj
        self.nx = np.ascontiguousarray(np.concatenate([grid.n_i[..., 0].ravel(),
                                                       grid.n_j[..., 0].ravel()]))
        self.ny = np.ascontiguousarray(np.concatenate([grid.n_i[..., 1].ravel(),
                                                       grid.n_j[..., 1].ravel()]))
        if self.solid is not None:
            sp = np.zeros((ni + 2 * g, nj + 2 * g), dtype=bool)
            sp[g:g + ni, g:g + nj] = self.solid
            self._sp = sp
            self._wall_i = (sp[1:ni + 2, g:g + nj], sp[2:ni + 3, g:g + nj])
            self._wall_j = (sp[g:g + ni, 1:nj + 2], sp[g:g + ni, 2:nj + 3])
            self._stencil_i = (sp[0:ni + 1, g:g + nj] | sp[1:ni + 2, g:g + nj]
                               | sp[2:ni + 3, g:g + nj] | sp[3:ni + 4, g:g + nj])
            self._stencil_j = (sp[g:g + ni, 0:nj + 1] | sp[g:g + ni, 1:nj + 2]
                               | sp[g:g + ni, 2:nj + 3] | sp[g:g + ni, 3:nj + 4])

    @property
    def volumes(self):
        return self.grid.area

    def primitives(self, U):
        W = conserved_to_primitive(U, self.gas, check=False)
        if self.solid is None:
            check_positive(W[..., 0], W[..., 3])
        else:
            rho = np.where(self.fluid, W[..., 0], 1.0)
            p = np.where(self.fluid, W[..., 3], 1.0)
            check_positive(rho, p)
        return W

    def _walls(self, wl, wr, n, masks):
        from .boundary import _mirror
        sl, sr = masks
        left_solid = sl & ~sr
        right_solid = sr & ~sl
        if left_solid.any():
            wl[left_solid] = _mirror(wr[left_solid], n[left_solid])
        if right_solid.any():
            wr[right_solid] = _mirror(wl[right_solid], n[right_solid])

    def residual(self, U, t=0.0):
        sc = self.scheme
        grid = self.grid
        gas = self.gas
        ni, nj = grid.shape
        g = GHOSTS
        W = self.primitives(U)
        Wp = fill_ghosts_2d(W, grid, self.bcs, t)
        wl_i = Wp[1:ni + 2, g:g + nj].copy()
        wr_i = Wp[2:ni + 3, g:g + nj].copy()
        wl_j = Wp[g:g + ni, 1:nj + 2].copy()
        wr_j = Wp[g:g + ni, 2:nj + 3].copy()
        if self.solid is not None:
            self._walls(wl_i, wr_i, grid.n_i, self._wall_i)
            self._walls(wl_j, wr_j, grid.n_j, self._wall_j)
        wl = np.concatenate([wl_i.reshape(-1, 4), wl_j.reshape(-1, 4)])
        wr = np.concatenate([wr_i.reshape(-1, 4), wr_j.reshape(-1, 4)])
        m = self.n_faces_i
        phi = d3u = ed = None
        if sc.scheme == "hes":
            Up = primitive_to_conserved(Wp, gas)
            d3_i = ((Up[3:ni + 4, g:g + nj] - 3.0 * Up[2:ni + 3, g:g + nj])
                    + (3.0 * Up[1:ni + 2, g:g + nj] - Up[0:ni + 1, g:g + nj]))
            d3_j = ((Up[g:g + ni, 3:nj + 4] - 3.0 * Up[g:g + ni, 2:nj + 3])
                    + (3.0 * Up[g:g + ni, 1:nj + 2] - Up[g:g + ni, 0:nj + 1]))
            if self.solid is not None:
                d3_i[self._stencil_i] = 0.0
                d3_j[self._stencil_j] = 0.0
            ed_all = kernels.entropy_distance(wl, wr, gas.gamma)
            ed = (ed_all[:m].reshape(ni + 1, nj), ed_all[m:].reshape(ni, nj + 1))
            sf = sensor_field(ed, sc.q, sc.eps, sc.sensor_mode)
            phi = np.concatenate([sf.phi[0].ravel(), sf.phi[1].ravel()])
            d3u = np.concatenate([d3_i.reshape(-1, 4), d3_j.reshape(-1, 4)])
        F, alpha = kernels.face_fluxes(sc.core_code, sc.stab_code, wl, wr, self.nx, self.ny,
                                       phi, d3u, gas.gamma, sc.delta, sc.theta)
        Fi = F[:m].reshape(ni + 1, nj, 4) * grid.len_i[..., None]
        Fj = F[m:].reshape(ni, nj + 1, 4) * grid.len_j[..., None]
        R = -((Fi[1:] - Fi[:-1]) + (Fj[:, 1:] - Fj[:, :-1])) / grid.area[..., None]
        if self.solid is not None:
            R[self.solid] = 0.0
        self.last = FaceData((Fi, Fj), (alpha[:m].reshape(ni + 1, nj), alpha[m:].reshape(ni, nj + 1)),
                             None if phi is None else (phi[:m].reshape(ni + 1, nj),
                                                       phi[m:].reshape(ni, nj + 1)), ed)
        return R

    def dt(self, U):
        return compute_dt_2d(U, self.grid, self.scheme.cfl, self.gas, mask=self.fluid)


def compute_dt_1d(U, grid, cfl, gas: GasModel = AIR):
    """CFL * dx / max_j(|u_j| + a_j)."""
    W = conserved_to_primitive(U, gas)
    speed = np.max(np.abs(W[..., 1]) + sound_speed(W, gas))
    return cfl * grid.dx / speed


def compute_dt_2d(U, grid, cfl, gas: GasModel = AIR, mask=None):
    """min over cells of CFL * area / sum over directions of (|V.n| + c) ds."""
    W = conserved_to_primitive(U, gas, check=False)
    c = sound_speed(W, gas)
    vn_eta = np.abs(W[..., 1] * grid.n_eta[..., 0] + W[..., 2] * grid.n_eta[..., 1])
    vn_zeta = np.abs(W[..., 1] * grid.n_zeta[..., 0] + W[..., 2] * grid.n_zeta[..., 1])
    lam = (vn_eta + c) * grid.ds_eta + (vn_zeta + c) * grid.ds_zeta
    local = cfl * grid.area / lam
    if mask is not None:
        local = local[mask]
    return float(np.min(local))


def semi_discrete_residual(U, disc, t=0.0):
    return disc.residual(U, t)


def ssprk_step(U, dt, rhs, order=3, t=0.0, r0=None):
    """One Shu-Osher SSP Runge-Kutta step.

    ``rhs(U, t)`` returns dU/dt. Order 2 is the two-stage Heun form, order 3
    the three-stage scheme with weights 1, 1/4, 2/3. ``r0`` may carry an
    already evaluated rhs(U, t).
    """
    if not dt > 0.0:
        raise ValueError(f"dt must be positive, got {dt}")
    if r0 is None:
        r0 = rhs(U, t)
    if order == 2:
        u1 = U + dt * r0
        return 0.5 * U + 0.5 * (u1 + dt * rhs(u1, t + dt))
    if order == 3:
        u1 = U + dt * r0
        u2 = 0.75 * U + 0.25 * (u1 + dt * rhs(u1, t + dt))
        return U / 3.0 + (2.0 / 3.0) * (u2 + dt * rhs(u2, t + 0.5 * dt))
    raise ValueError(f"order must be 2 or 3, got {order}")


def totals(U, disc_or_volumes, gas: GasModel = AIR, mask=None):
    """(sum eta dV, sum rho |u|^2 / 2 dV)."""
    vol = getattr(disc_or_volumes, "volumes", disc_or_volumes)
    W = conserved_to_primitive(U, gas, check=False)
    eta = -W[..., 0] * specific_entropy(W, gas) / gas.gm1
    vel = W[..., 1:-1]
    ke = 0.5 * W[..., 0] * np.sum(vel * vel, axis=-1)
    vol = np.broadcast_to(vol, eta.shape)
    if mask is not None:
        eta, ke, vol = eta[mask], ke[mask], vol[mask]
    return float(np.sum(eta * vol)), float(np.sum(ke * vol))


def residual_norms(R, mask=None):
    """RMS of each conserved component of the rate field."""
    R = np.asarray(R)
    if mask is not None:
        R = R[mask]
    R = R.reshape(-1, R.shape[-1])
    return np.sqrt(np.mean(R * R, axis=0))


@dataclass
class RunResult:
    U: np.ndarray
    t: float
    steps: int
    diagnostics: np.ndarray
    disc: object
    converged: bool = False
    residual_history: list = field(default_factory=list)

    @property
    def W(self):
        return conserved_to_primitive(self.U, self.disc.gas, check=False)


DIAG_COLUMNS = ("t", "total_entropy", "total_ke", "res_rho", "res_momx", "res_momy",
                "res_E", "min_rho", "min_p")


def _diag_row(t, U, R, disc):
    mask = getattr(disc, "fluid", None)
    if mask is not None and mask.all():
        mask = None
    ent, ke = totals(U, disc, disc.gas, mask)
    res = residual_norms(R, mask) if R is not None else np.zeros(disc.nvar)
    if disc.nvar == 3:
        res = np.array([res[0], res[1], 0.0, res[2]])
    W = conserved_to_primitive(U, disc.gas, check=False)
    if mask is not None:
        W = W[mask]
    return [t, ent, ke, *res, float(W[..., 0].min()), float(W[..., -1].min())]


def integrate(disc, U0, t_final=None, steady=False, tol=1e-8, max_steps=None,
              callback=None, record=True, t0=0.0):
    """Advance ``U0`` with recomputed dt each step.

    Unsteady runs stop at ``t_final``. Steady runs stop once every
    component's residual norm, normalised by its first-step value, is
    below ``tol``; exceeding ``max_steps`` raises NonConvergence. A
    component whose first-step norm is exactly zero is skipped.
    """
    U = np.array(U0, dtype=np.float64, copy=True)
    t = t0
    steps = 0
    order = disc.scheme.integrator
    rows = []
    history = []
    ref = None
    converged = False
    if record:
        rows.append(_diag_row(t, U, None, disc))
    if max_steps == 0 or (t_final is not None and not steady and t_final <= t):
        return RunResult(U, t, 0, np.array(rows), disc, False, history)
    while True:
        if not steady and t >= t_final * (1 - 1e-14):
            break
        if max_steps is not None and steps >= max_steps:
            if steady:
                raise NonConvergence(
                    f"residual {history[-1] if history else None} above {tol} after {steps} steps",
                    steps=steps, residual=history[-1] if history else None)
            break
        dt = disc.dt(U)
        if not steady:
            dt = min(dt, t_final - t)
        R0 = disc.residual(U, t)
        U = ssprk_step(U, dt, disc.residual, order, t, r0=R0)
        if disc.post_step is not None:
            disc.post_step(U)
        t += dt
        steps += 1
        if steady:
            norms = residual_norms(R0, getattr(disc, "fluid", None))
            if ref is None:
                ref = np.where(norms > 0.0, norms, 1.0)
            rel = norms / ref
            history.append(float(rel.max()))
            if np.all(rel < tol):
                converged = True
        if record:
            rows.append(_diag_row(t, U, R0, disc))
        if callback is not None:
            callback(t, U, steps)
        if converged:
            break
    disc.primitives(U)
    return RunResult(U, t, steps, np.array(rows), disc, converged, history)


def run(case, scheme: SchemeConfig = None, gas: GasModel = None, **overrides):
    """Build a registered case and integrate it.

    ``case`` is a CaseSpec (see :mod:`entroflux.verification.cases`).
    Keyword overrides: nx, ny, t_final, tol, max_steps, record, callback.
    """
    scheme = SchemeConfig() if scheme is None else scheme
    setup = case.build(nx=overrides.pop("nx", None), ny=overrides.pop("ny", None), gas=gas)
    disc = setup.make_disc(scheme)
    t_final = overrides.pop("t_final", None)
    if t_final is None:
        t_final = case.t_final
    tol = overrides.pop("tol", case.steady_tol)
    max_steps = overrides.pop("max_steps", case.max_steps if case.steady else None)
    if overrides.keys() - {"record", "callback"}:
        raise ConfigError(f"unknown run options {sorted(overrides)}", key=sorted(overrides)[0])
    return integrate(disc, setup.U0, t_final=t_final, steady=case.steady, tol=tol,
                     max_steps=max_steps, **overrides)


__all__ = ["SchemeConfig", "Discretization1D", "Discretization2D", "compute_dt_1d",
           "compute_dt_2d", "semi_discrete_residual", "ssprk_step", "integrate", "run",
           "totals", "residual_norms", "RunResult", "DIAG_COLUMNS", "FaceData"]
