"""Entropy-distance shock sensor, fourth-order background diffusion and the
hybrid entropy-stable (HES) flux.

Away from shocks HES is the entropy-conservative core plus a small
fourth-order diffusion scaled by a contact-preserving speed; where the
sensor fires it switches to the full ES diffusion.
"""
from dataclasses import dataclass

import numpy as np

from .fluxes import _face_frame, evaluate
from .gas import AIR, GasModel, physical_flux, primitive_to_conserved, sound_speed
from .kernels import DELTA, THETA

SENSOR_MODES = ("exponential", "quadratic")


def entropy_distance(ul, ur, vl, vr):
    """ED = (U_R - U_L).(V_R - V_L); non-negative by convexity of eta."""
    du = np.asarray(ur) - np.asarray(ul)
    dv = np.asarray(vr) - np.asarray(vl)
    return np.sum(du * dv, axis=-1)


def sensor_raw(sed, q=10.0, mode="exponential"):
    """Unclipped sensor value from the scaled entropy distance."""
    x = q * np.asarray(sed, dtype=np.float64)
    if mode == "exponential":
        return 1.0 - np.abs(np.exp(-x))
    if mode == "quadratic":
        # truncated series of exp(-x); not monotone once x > 1/2
        return 1.0 - np.abs(1.0 - x + x * x)
    raise ValueError(f"unknown sensor mode {mode!r}")


@dataclass
class SensorField:
    phi: object
    raw: object
    sed: object
    q: float = 10.0
    eps: float = 0.1
    mode: str = "exponential"


def _scaled(eds):
    top = max((float(np.max(e)) if np.size(e) else 0.0) for e in eds)
    if not top > 0.0:
        return [np.zeros_like(np.asarray(e, dtype=np.float64)) for e in eds]
    return [np.maximum(np.asarray(e, dtype=np.float64), 0.0) / top for e in eds]


def flatten_1d(phi):
    """phi_{j+1/2} <- max over the faces of its two adjacent cells."""
    out = phi.copy()
    out[1:] = np.maximum(out[1:], phi[:-1])
    out[:-1] = np.maximum(out[:-1], phi[1:])
    return out


def flatten_2d(phi_i, phi_j):
    """2D flatten over all faces of the two cells adjacent to each face.

    ``phi_i`` has shape (ni+1, nj) (faces normal to the i direction),
    ``phi_j`` has shape (ni, nj+1).
    """
    # per-cell max over its four faces
    cell = np.maximum(np.maximum(phi_i[:-1], phi_i[1:]),
                      np.maximum(phi_j[:, :-1], phi_j[:, 1:]))
    oi = phi_i.copy()
    oi[:-1] = np.maximum(oi[:-1], cell)
    oi[1:] = np.maximum(oi[1:], cell)
    oj = phi_j.copy()
    oj[:, :-1] = np.maximum(oj[:, :-1], cell)
    oj[:, 1:] = np.maximum(oj[:, 1:], cell)
    return oi, oj


def sensor_field(eds, q=10.0, eps=0.1, mode="exponential"):
    """Binary sensor per interface.

    ``eds`` is a 1D array of interface entropy distances, or a pair
    ``(ed_i, ed_j)`` of 2D face arrays; SED is normalised by the global max.
    """
    two_d = isinstance(eds, (tuple, list))
    parts = list(eds) if two_d else [eds]
    seds = _scaled(parts)
    raws = [sensor_raw(s, q, mode) for s in seds]
    clipped = [(r > eps).astype(np.float64) for r in raws]
    if two_d:
        phi = flatten_2d(*clipped)
        return SensorField(phi, tuple(raws), tuple(seds), q, eps, mode)
    return SensorField(flatten_1d(clipped[0]), raws[0], seds[0], q, eps, mode)


def ricca_lambda(wl, wr, n=None, gas: GasModel = AIR, delta=DELTA):
    """Contact-preserving speed for the fourth-order diffusion.

    Quiet faces (no jump at all) use the mean |u|; otherwise
    max(|u_L|, |u_R|) plus the mean sound speed when the pressure jumps.
    """
    wl, wr = _face_frame(wl, wr, n)
    du = primitive_to_conserved(wr, gas) - primitive_to_conserved(wl, gas)
    df = physical_flux(wr, None, gas) - physical_flux(wl, None, gas)
    ul = np.abs(wl[..., 1])
    ur = np.abs(wr[..., 1])
    pl = wl[..., -1]
    pr = wr[..., -1]
    quiet = (np.max(np.abs(df), axis=-1) <= delta) & (np.max(np.abs(du), axis=-1) <= delta)
    jump = np.abs(pr - pl) > 1e-12 * np.maximum(pl, pr)
    af = 0.5 * (sound_speed(wl, gas) + sound_speed(wr, gas))
    return np.where(quiet, 0.5 * (ul + ur), np.maximum(ul, ur) + np.where(jump, af, 0.0))


def third_difference(um1, u0, u1, u2):
    """U_{j+2} - 3U_{j+1} + 3U_j - U_{j-1} for the face between j and j+1."""
    return (u2 - 3.0 * u1) + (3.0 * u0 - um1)


def fourth_order_flux(stencil, alpha_r):
    """F_R = 1/2 * alpha_R * (U_{j+2} - 3U_{j+1} + 3U_j - U_{j-1}).

    ``stencil`` stacks the four cells j-1, j, j+1, j+2 on axis -2.
    """
    s = np.asarray(stencil, dtype=np.float64)
    d3 = third_difference(s[..., 0, :], s[..., 1, :], s[..., 2, :], s[..., 3, :])
    return 0.5 * np.asarray(alpha_r)[..., None] * d3


def hes_flux(wl, wr, d3u, phi, n=None, ec="eckep", gas: GasModel = AIR,
             theta=THETA, delta=DELTA):
    """F_EC + (1 - phi) F_R + phi F_RH.

    ``d3u`` is the conserved third difference across the face (global
    frame), ``phi`` the binary sensor. Returns ``(flux, alpha_s)``.
    """
    if str(ec).lower() not in ("ec1", "ec2", "eckep"):
        raise ValueError(f"HES needs an entropy-conservative core, got {ec!r}")
    return evaluate(ec, "hes", wl, wr, n, gas, phi=phi, d3u=d3u,
                    delta=delta, theta=theta)
