"""Rankine-Hugoniot scalar diffusion and the entropy-stable (ES) flux.

The diffusion coefficient comes from per-equation wave speeds
s_k = |dF_k / dU_k| (the MOVERS idea), clamped to the eigenvalue range of
the face, reduced by a min over equations and smoothed near zero by a
quadratic sonic fix.
"""
import numpy as np

from .fluxes import _face_frame, evaluate
from .gas import AIR, GasModel, entropy_variables, physical_flux, primitive_to_conserved
from .kernels import DELTA, THETA
from .kernels.codes import ALPHA_ZERO_TOL, TANGENT_TOL


def eigen_bounds(wl, wr, gas: GasModel = AIR):
    """(lambda_min, lambda_max) of |u_n - a|, |u_n|, |u_n + a| at the mean state.

    ``wl``/``wr`` must already be in the face frame.
    """
    u = 0.5 * (wl[..., 1] + wr[..., 1])
    rho = 0.5 * (wl[..., 0] + wr[..., 0])
    p = 0.5 * (wl[..., -1] + wr[..., -1])
    a = np.sqrt(gas.gamma * p / rho)
    e = np.stack([np.abs(u - a), np.abs(u), np.abs(u + a)], axis=-1)
    return e.min(axis=-1), e.max(axis=-1)


def movers_wave_speeds(wl, wr, n=None, gas: GasModel = AIR, delta=DELTA):
    """Clamped per-equation wave speeds, one per conserved component.

    A component whose jump is below ``delta * max(|U_L|, |U_R|, 1)`` falls
    back to lambda_min; in 2D the tangential-momentum component falls back
    to the mass speed instead, so a flow aligned with the face normal gets
    the same coefficient it would get in 1D. Its threshold is relative to
    the momentum scale of the face, which keeps round-off tangential jumps
    from producing an arbitrary ratio.
    """
    wl, wr = _face_frame(wl, wr, n)
    ul = primitive_to_conserved(wl, gas)
    ur = primitive_to_conserved(wr, gas)
    du = ur - ul
    df = physical_flux(wr, None, gas) - physical_flux(wl, None, gas)
    lmin, lmax = eigen_bounds(wl, wr, gas)
    lmin = lmin[..., None]
    lmax = lmax[..., None]
    small = np.abs(du) <= delta * np.maximum(np.maximum(np.abs(ul), np.abs(ur)), 1.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        s = np.abs(df / np.where(small, 1.0, du))
    s = np.clip(s, lmin, lmax)
    s = np.where(small, lmin, s)
    if s.shape[-1] == 4:
        rho = 0.5 * (wl[..., 0] + wr[..., 0])
        a = np.sqrt(gas.gamma * 0.5 * (wl[..., -1] + wr[..., -1]) / rho)
        scale = np.maximum(np.maximum(np.abs(ul[..., 1]), np.abs(ur[..., 1])), rho * a)
        scale = np.maximum(scale, np.maximum(np.abs(ul[..., 2]), np.abs(ur[..., 2])))
        tangent_small = np.abs(du[..., 2]) <= TANGENT_TOL * np.maximum(scale, 1.0)
        s[..., 2] = np.where(tangent_small, s[..., 0], s[..., 2])
    return s


def sonic_fix(alpha, theta=THETA):
    """Quadratic smoothing ((alpha^2 + theta^2) / (2 theta)) for 0 < alpha < theta.

    Zero stays zero so steady contacts get no diffusion, and alpha >= theta
    is left alone (the fix would otherwise inflate large speeds).
    """
    alpha = np.asarray(alpha, dtype=np.float64)
    fix = (alpha > 0.0) & (alpha < theta)
    return np.where(fix, (alpha * alpha + theta * theta) / (2.0 * theta), alpha)


def rh_alpha(speeds, theta=THETA, lmax=None):
    """Scalar coefficient alpha_S = sonic_fix(min_k s_k).

    With ``lmax`` given, a minimum at or below ALPHA_ZERO_TOL * lmax is
    taken as exactly zero before the fix.
    """
    alpha = np.min(np.asarray(speeds, dtype=np.float64), axis=-1)
    if lmax is not None:
        alpha = np.where(alpha <= ALPHA_ZERO_TOL * np.asarray(lmax), 0.0, alpha)
    return sonic_fix(alpha, theta)


def es_flux(wl, wr, n=None, ec="eckep", gas: GasModel = AIR, theta=THETA, delta=DELTA):
    """Entropy-stable flux F_EC - alpha_S/2 * dU.

    Returns ``(flux, alpha_s)``.
    """
    if str(ec).lower() not in ("ec1", "ec2", "eckep"):
        raise ValueError(f"ES needs an entropy-conservative core, got {ec!r}")
    return evaluate(ec, "es", wl, wr, n, gas, delta=delta, theta=theta)


def interface_entropy_production(wl, wr, alpha, n=None, gas: GasModel = AIR):
    """Per-interface production 1/4 * alpha_S * dV.dU (non-negative)."""
    wl, wr = _face_frame(wl, wr, n)
    du = primitive_to_conserved(wr, gas) - primitive_to_conserved(wl, gas)
    dv = entropy_variables(wr, gas) - entropy_variables(wl, gas)
    return 0.25 * np.asarray(alpha) * np.sum(dv * du, axis=-1)
