"""Vectorised numpy implementation of the face-flux kernel.

Every array argument is indexed by face. States arrive in the global frame
as primitive 4-vectors (rho, u, v, p); the kernel rotates into the face
frame, evaluates the selected flux, and rotates the result back.
"""
import numpy as np
from numpy import log as _log

from .codes import (CENTRAL, EC1, EC2, ECKEP, LLF, ROE, STAB_ES, STAB_HES, STAB_NONE,
                    TANGENT_TOL, ALPHA_ZERO_TOL)


def _split(w, nx, ny):
    r = w[:, 0]
    un = w[:, 1] * nx + w[:, 2] * ny
    ut = -w[:, 1] * ny + w[:, 2] * nx
    p = w[:, 3]
    return r, un, ut, p


def _roe_dissipation(rl, ul, vl, pl, hl, rr, ur, vr, pr, hr, gm1):
    sl = np.sqrt(rl)
    sr = np.sqrt(rr)
    inv = 1.0 / (sl + sr)
    u = (sl * ul + sr * ur) * inv
    v = (sl * vl + sr * vr) * inv
    h = (sl * hl + sr * hr) * inv
    q2 = u * u + v * v
    a = np.sqrt(gm1 * (h - 0.5 * q2))
    rt = sl * sr
    dr = rr - rl
    du = ur - ul
    dv = vr - vl
    dp = pr - pl
    a2 = a * a
    w1 = (dp - rt * a * du) / (2.0 * a2)
    w2 = dr - dp / a2
    w3 = rt * dv
    w4 = (dp + rt * a * du) / (2.0 * a2)
    l1 = np.abs(u - a)
    l2 = np.abs(u)
    l4 = np.abs(u + a)
    d0 = l1 * w1 + l2 * w2 + l4 * w4
    d1 = l1 * w1 * (u - a) + l2 * w2 * u + l4 * w4 * (u + a)
    d2 = (l1 * w1 + l2 * w2 + l4 * w4) * v + l2 * w3
    d3 = (l1 * w1 * (h - u * a) + l2 * w2 * 0.5 * q2 + l2 * w3 * v
          + l4 * w4 * (h + u * a))
    return d0, d1, d2, d3


def face_fluxes(core, stab, wl, wr, nx, ny, phi, d3u, gamma, delta, theta):
    """Numerical flux through each face, global frame.

    Returns ``(flux, alpha_s)`` where ``alpha_s`` is the Rankine-Hugoniot
    scalar diffusion coefficient (zero unless ``stab`` is ES or HES).
    """
    gm1 = gamma - 1.0
    rl, ul, vl, pl = _split(wl, nx, ny)
    rr, ur, vr, pr = _split(wr, nx, ny)

    el = pl / gm1 + 0.5 * rl * (ul * ul + vl * vl)
    er = pr / gm1 + 0.5 * rr * (ur * ur + vr * vr)
    ml = rl * ul
    mr = rr * ur
    fl0, fr0 = ml, mr
    fl1, fr1 = ml * ul + pl, mr * ur + pr
    fl2, fr2 = ml * vl, mr * vr
    fl3, fr3 = ul * (el + pl), ur * (er + pr)
    fb0 = 0.5 * (fl0 + fr0)
    fb1 = 0.5 * (fl1 + fr1)
    fb2 = 0.5 * (fl2 + fr2)
    fb3 = 0.5 * (fl3 + fr3)

    if core in (EC1, EC2, ECKEP):
        bl = rl / pl
        br = rr / pr
        ds = _log(pr / pl) - gamma * _log(rr / rl)
        dv0 = -ds / gm1 - 0.5 * (br * (ur * ur + vr * vr) - bl * (ul * ul + vl * vl))
        dv1 = br * ur - bl * ul
        dv2 = br * vr - bl * vl
        dv3 = bl - br
        dpsi = mr - ml

    if core == CENTRAL:
        f0, f1, f2, f3 = fb0, fb1, fb2, fb3
    elif core == EC1:
        num = fb0 * dv0 + fb1 * dv1 + fb2 * dv2 + fb3 * dv3 - dpsi
        c = num / (dv0 * dv0 + dv1 * dv1 + dv2 * dv2 + dv3 * dv3 + delta)
        f0 = fb0 - c * dv0
        f1 = fb1 - c * dv1
        f2 = fb2 - c * dv2
        f3 = fb3 - c * dv3
    elif core == EC2:
        num = fb0 * dv0 + fb1 * dv1 + fb2 * dv2 + fb3 * dv3 - dpsi
        c = num / (dv3 * dv3 + delta)
        f0, f1, f2 = fb0, fb1, fb2
        f3 = fb3 - c * dv3
    elif core == ECKEP:
        f0 = fb0
        f1 = fb0 * (0.5 * (ul + ur)) + 0.5 * (pl + pr)
        f2 = fb0 * (0.5 * (vl + vr))
        num = f0 * dv0 + f1 * dv1 + f2 * dv2 + fb3 * dv3 - dpsi
        c = num / (dv3 * dv3 + delta)
        f3 = fb3 - c * dv3
    elif core == LLF:
        lam = np.maximum(np.abs(ul) + np.sqrt(gamma * pl / rl),
                         np.abs(ur) + np.sqrt(gamma * pr / rr))
        h = 0.5 * lam
        f0 = fb0 - h * (rr - rl)
        f1 = fb1 - h * (mr - ml)
        f2 = fb2 - h * (rr * vr - rl * vl)
        f3 = fb3 - h * (er - el)
    elif core == ROE:
        d0, d1, d2, d3 = _roe_dissipation(rl, ul, vl, pl, (el + pl) / rl,
                                          rr, ur, vr, pr, (er + pr) / rr, gm1)
        f0 = fb0 - 0.5 * d0
        f1 = fb1 - 0.5 * d1
        f2 = fb2 - 0.5 * d2
        f3 = fb3 - 0.5 * d3
    else:
        raise ValueError(f"unknown flux core {core}")

    alpha = np.zeros_like(rl)
    if stab != STAB_NONE:
        du = (rr - rl, mr - ml, rr * vr - rl * vl, er - el)
        ulc = (rl, ml, rl * vl, el)
        urc = (rr, mr, rr * vr, er)
        df = (fr0 - fl0, fr1 - fl1, fr2 - fl2, fr3 - fl3)
        ua = 0.5 * (ul + ur)
        aa = np.sqrt(gamma * (0.5 * (pl + pr)) / (0.5 * (rl + rr)))
        e1 = np.abs(ua - aa)
        e2 = np.abs(ua)
        e3 = np.abs(ua + aa)
        lmin = np.minimum(np.minimum(e1, e2), e3)
        lmax = np.maximum(np.maximum(e1, e2), e3)
        speeds = []
        mscale = np.maximum(np.maximum(np.abs(ml), np.abs(mr)), 0.5 * (rl + rr) * aa)
        mscale = np.maximum(mscale, np.maximum(np.abs(ulc[2]), np.abs(urc[2])))
        for k in range(4):
            if k == 2:
                tol = TANGENT_TOL * np.maximum(mscale, 1.0)
            else:
                tol = delta * np.maximum(np.maximum(np.abs(ulc[k]), np.abs(urc[k])), 1.0)
            small = np.abs(du[k]) <= tol
            with np.errstate(divide="ignore", invalid="ignore"):
                s = np.abs(df[k] / np.where(small, 1.0, du[k]))
            s = np.minimum(np.maximum(s, lmin), lmax)
            if k == 2:
                s = np.where(small, speeds[0], s)
            else:
                s = np.where(small, lmin, s)
            speeds.append(s)
        alpha = np.minimum(np.minimum(speeds[0], speeds[1]),
                           np.minimum(speeds[2], speeds[3]))
        alpha = np.where(alpha <= ALPHA_ZERO_TOL * lmax, 0.0, alpha)
        fix = (alpha > 0.0) & (alpha < theta)
        alpha = np.where(fix, (alpha * alpha + theta * theta) / (2.0 * theta), alpha)

        h = -0.5 * alpha
        if stab == STAB_ES:
            f0 = f0 + h * du[0]
            f1 = f1 + h * du[1]
            f2 = f2 + h * du[2]
            f3 = f3 + h * du[3]
        elif stab == STAB_HES:
            dfmax = np.maximum(np.maximum(np.abs(df[0]), np.abs(df[1])),
                               np.maximum(np.abs(df[2]), np.abs(df[3])))
            dumax = np.maximum(np.maximum(np.abs(du[0]), np.abs(du[1])),
                               np.maximum(np.abs(du[2]), np.abs(du[3])))
            quiet = (dfmax <= delta) & (dumax <= delta)
            jump = np.abs(pr - pl) > 1e-12 * np.maximum(pl, pr)
            af = 0.5 * (np.sqrt(gamma * pl / rl) + np.sqrt(gamma * pr / rr))
            lam = np.where(quiet, 0.5 * (np.abs(ul) + np.abs(ur)),
                           np.maximum(np.abs(ul), np.abs(ur)) + np.where(jump, af, 0.0))
            g = 0.5 * (lam / 32.0)
            # third differences into the face frame
            r0 = d3u[:, 0]
            r1 = d3u[:, 1] * nx + d3u[:, 2] * ny
            r2 = -d3u[:, 1] * ny + d3u[:, 2] * nx
            r3 = d3u[:, 3]
            off = 1.0 - phi
            f0 = (f0 + off * (g * r0)) + phi * (h * du[0])
            f1 = (f1 + off * (g * r1)) + phi * (h * du[1])
            f2 = (f2 + off * (g * r2)) + phi * (h * du[2])
            f3 = (f3 + off * (g * r3)) + phi * (h * du[3])
        else:
            raise ValueError(f"unknown stabilisation {stab}")

    out = np.empty((rl.shape[0], 4))
    out[:, 0] = f0
    out[:, 1] = f1 * nx - f2 * ny
    out[:, 2] = f1 * ny + f2 * nx
    out[:, 3] = f3
    return out, alpha


def entropy_distance(wl, wr, gamma):
    """dU.dV per face for 4-component primitive states."""
    gm1 = gamma - 1.0

    def uv(w):
        r, u, v, p = w[:, 0], w[:, 1], w[:, 2], w[:, 3]
        b = r / p
        q = u * u + v * v
        s = _log(p) - gamma * _log(r)
        cons = (r, r * u, r * v, p / gm1 + 0.5 * r * q)
        ent = ((gamma - s) / gm1 - 0.5 * b * q, b * u, b * v, -b)
        return cons, ent

    cl, vl = uv(wl)
    cr, vr = uv(wr)
    return sum((cr[k] - cl[k]) * (vr[k] - vl[k]) for k in range(4))
