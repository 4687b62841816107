"""Compiled face-flux kernel.

Mirrors ``_numpy.face_fluxes`` operation for operation, one face at a time.
"""
import math

import numpy as np
from numba import njit, prange

from .codes import (CENTRAL, EC1, EC2, ECKEP, LLF, ROE, STAB_ES, STAB_HES, STAB_NONE,
                    TANGENT_TOL, ALPHA_ZERO_TOL)

_JIT = dict(cache=True, nogil=True)


@njit(**_JIT)
def _roe_dissipation(rl, ul, vl, pl, hl, rr, ur, vr, pr, hr, gm1):
    sl = math.sqrt(rl)
    sr = math.sqrt(rr)
    inv = 1.0 / (sl + sr)
    u = (sl * ul + sr * ur) * inv
    v = (sl * vl + sr * vr) * inv
    h = (sl * hl + sr * hr) * inv
    q2 = u * u + v * v
    a = math.sqrt(gm1 * (h - 0.5 * q2))
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
    l1 = abs(u - a)
    l2 = abs(u)
    l4 = abs(u + a)
    d0 = l1 * w1 + l2 * w2 + l4 * w4
    d1 = l1 * w1 * (u - a) + l2 * w2 * u + l4 * w4 * (u + a)
    d2 = (l1 * w1 + l2 * w2 + l4 * w4) * v + l2 * w3
    d3 = (l1 * w1 * (h - u * a) + l2 * w2 * 0.5 * q2 + l2 * w3 * v
          + l4 * w4 * (h + u * a))
    return d0, d1, d2, d3


@njit(**_JIT)
def _wave_speed(df, du, ul_k, ur_k, lmin, lmax, delta):
    tol = delta * max(max(abs(ul_k), abs(ur_k)), 1.0)
    if abs(du) <= tol:
        return -1.0
    s = abs(df / du)
    return min(max(s, lmin), lmax)


@njit(**_JIT)
def face_flux(core, stab, rl, ul_g, vl_g, pl, rr, ur_g, vr_g, pr, nx, ny,
              phi, e0, e1, e2, e3, gamma, delta, theta):
    gm1 = gamma - 1.0
    ul = ul_g * nx + vl_g * ny
    vl = -ul_g * ny + vl_g * nx
    ur = ur_g * nx + vr_g * ny
    vr = -ur_g * ny + vr_g * nx

    el = pl / gm1 + 0.5 * rl * (ul * ul + vl * vl)
    er = pr / gm1 + 0.5 * rr * (ur * ur + vr * vr)
    ml = rl * ul
    mr = rr * ur
    fl0 = ml
    fr0 = mr
    fl1 = ml * ul + pl
    fr1 = mr * ur + pr
    fl2 = ml * vl
    fr2 = mr * vr
    fl3 = ul * (el + pl)
    fr3 = ur * (er + pr)
    fb0 = 0.5 * (fl0 + fr0)
    fb1 = 0.5 * (fl1 + fr1)
    fb2 = 0.5 * (fl2 + fr2)
    fb3 = 0.5 * (fl3 + fr3)

    dv0 = 0.0
    dv1 = 0.0
    dv2 = 0.0
    dv3 = 0.0
    dpsi = 0.0
    if core == EC1 or core == EC2 or core == ECKEP:
        bl = rl / pl
        br = rr / pr
        ds = math.log(pr / pl) - gamma * math.log(rr / rl)
        dv0 = -ds / gm1 - 0.5 * (br * (ur * ur + vr * vr) - bl * (ul * ul + vl * vl))
        dv1 = br * ur - bl * ul
        dv2 = br * vr - bl * vl
        dv3 = bl - br
        dpsi = mr - ml

    if core == CENTRAL:
        f0 = fb0
        f1 = fb1
        f2 = fb2
        f3 = fb3
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
        f0 = fb0
        f1 = fb1
        f2 = fb2
        f3 = fb3 - c * dv3
    elif core == ECKEP:
        f0 = fb0
        f1 = fb0 * (0.5 * (ul + ur)) + 0.5 * (pl + pr)
        f2 = fb0 * (0.5 * (vl + vr))
        num = f0 * dv0 + f1 * dv1 + f2 * dv2 + fb3 * dv3 - dpsi
        c = num / (dv3 * dv3 + delta)
        f3 = fb3 - c * dv3
    elif core == LLF:
        lam = max(abs(ul) + math.sqrt(gamma * pl / rl),
                  abs(ur) + math.sqrt(gamma * pr / rr))
        h = 0.5 * lam
        f0 = fb0 - h * (rr - rl)
        f1 = fb1 - h * (mr - ml)
        f2 = fb2 - h * (rr * vr - rl * vl)
        f3 = fb3 - h * (er - el)
    else:
        d0, d1, d2, d3 = _roe_dissipation(rl, ul, vl, pl, (el + pl) / rl,
                                          rr, ur, vr, pr, (er + pr) / rr, gm1)
        f0 = fb0 - 0.5 * d0
        f1 = fb1 - 0.5 * d1
        f2 = fb2 - 0.5 * d2
        f3 = fb3 - 0.5 * d3

    alpha = 0.0
    if stab != STAB_NONE:
        du0 = rr - rl
        du1 = mr - ml
        du2 = rr * vr - rl * vl
        du3 = er - el
        ua = 0.5 * (ul + ur)
        aa = math.sqrt(gamma * (0.5 * (pl + pr)) / (0.5 * (rl + rr)))
        x1 = abs(ua - aa)
        x2 = abs(ua)
        x3 = abs(ua + aa)
        lmin = min(min(x1, x2), x3)
        lmax = max(max(x1, x2), x3)
        s0 = _wave_speed(fr0 - fl0, du0, rl, rr, lmin, lmax, delta)
        if s0 < 0.0:
            s0 = lmin
        s1 = _wave_speed(fr1 - fl1, du1, ml, mr, lmin, lmax, delta)
        if s1 < 0.0:
            s1 = lmin
        mscale = max(max(abs(ml), abs(mr)), 0.5 * (rl + rr) * aa)
        mscale = max(mscale, max(abs(rl * vl), abs(rr * vr)))
        s2 = _wave_speed(fr2 - fl2, du2, mscale, 0.0, lmin, lmax, TANGENT_TOL)
        if s2 < 0.0:
            s2 = s0
        s3 = _wave_speed(fr3 - fl3, du3, el, er, lmin, lmax, delta)
        if s3 < 0.0:
            s3 = lmin
        alpha = min(min(s0, s1), min(s2, s3))
        if alpha <= ALPHA_ZERO_TOL * lmax:
            alpha = 0.0
        if alpha > 0.0 and alpha < theta:
            alpha = (alpha * alpha + theta * theta) / (2.0 * theta)

        h = -0.5 * alpha
        if stab == STAB_ES:
            f0 = f0 + h * du0
            f1 = f1 + h * du1
            f2 = f2 + h * du2
            f3 = f3 + h * du3
        else:
            dfmax = max(max(abs(fr0 - fl0), abs(fr1 - fl1)),
                        max(abs(fr2 - fl2), abs(fr3 - fl3)))
            dumax = max(max(abs(du0), abs(du1)), max(abs(du2), abs(du3)))
            al = math.sqrt(gamma * pl / rl)
            ar = math.sqrt(gamma * pr / rr)
            if dfmax <= delta and dumax <= delta:
                lam = 0.5 * (abs(ul) + abs(ur))
            else:
                lam = max(abs(ul), abs(ur))
                if abs(pr - pl) > 1e-12 * max(pl, pr):
                    lam = lam + 0.5 * (al + ar)
                else:
                    lam = lam + 0.0
            g = 0.5 * (lam / 32.0)
            r0 = e0
            r1 = e1 * nx + e2 * ny
            r2 = -e1 * ny + e2 * nx
            r3 = e3
            off = 1.0 - phi
            f0 = (f0 + off * (g * r0)) + phi * (h * du0)
            f1 = (f1 + off * (g * r1)) + phi * (h * du1)
            f2 = (f2 + off * (g * r2)) + phi * (h * du2)
            f3 = (f3 + off * (g * r3)) + phi * (h * du3)

    return f0, f1 * nx - f2 * ny, f1 * ny + f2 * nx, f3, alpha


@njit(**_JIT)
def _loop(core, stab, wl, wr, nx, ny, phi, d3u, gamma, delta, theta, out, alpha):
    for i in range(wl.shape[0]):
        f0, f1, f2, f3, a = face_flux(
            core, stab, wl[i, 0], wl[i, 1], wl[i, 2], wl[i, 3],
            wr[i, 0], wr[i, 1], wr[i, 2], wr[i, 3], nx[i], ny[i], phi[i],
            d3u[i, 0], d3u[i, 1], d3u[i, 2], d3u[i, 3], gamma, delta, theta)
        out[i, 0] = f0
        out[i, 1] = f1
        out[i, 2] = f2
        out[i, 3] = f3
        alpha[i] = a


@njit(parallel=True, cache=True, nogil=True)
def _ploop(core, stab, wl, wr, nx, ny, phi, d3u, gamma, delta, theta, out, alpha):
    for i in prange(wl.shape[0]):
        f0, f1, f2, f3, a = face_flux(
            core, stab, wl[i, 0], wl[i, 1], wl[i, 2], wl[i, 3],
            wr[i, 0], wr[i, 1], wr[i, 2], wr[i, 3], nx[i], ny[i], phi[i],
            d3u[i, 0], d3u[i, 1], d3u[i, 2], d3u[i, 3], gamma, delta, theta)
        out[i, 0] = f0
        out[i, 1] = f1
        out[i, 2] = f2
        out[i, 3] = f3
        alpha[i] = a


PARALLEL_MIN_FACES = 50_000


def face_fluxes(core, stab, wl, wr, nx, ny, phi, d3u, gamma, delta, theta,
                parallel=False):
    n = wl.shape[0]
    out = np.empty((n, 4))
    alpha = np.empty(n)
    loop = _ploop if (parallel and n >= PARALLEL_MIN_FACES) else _loop
    loop(int(core), int(stab), wl, wr, nx, ny, phi, d3u,
         float(gamma), float(delta), float(theta), out, alpha)
    return out, alpha


@njit(**_JIT)
def _ed_loop(wl, wr, gamma, out):
    gm1 = gamma - 1.0
    for i in range(wl.shape[0]):
        rl, ul, vl, pl = wl[i, 0], wl[i, 1], wl[i, 2], wl[i, 3]
        rr, ur, vr, pr = wr[i, 0], wr[i, 1], wr[i, 2], wr[i, 3]
        bl = rl / pl
        br = rr / pr
        ql = ul * ul + vl * vl
        qr = ur * ur + vr * vr
        sl = math.log(pl) - gamma * math.log(rl)
        sr = math.log(pr) - gamma * math.log(rr)
        dv0 = ((gamma - sr) / gm1 - 0.5 * br * qr) - ((gamma - sl) / gm1 - 0.5 * bl * ql)
        dv1 = br * ur - bl * ul
        dv2 = br * vr - bl * vl
        dv3 = bl - br
        du0 = rr - rl
        du1 = rr * ur - rl * ul
        du2 = rr * vr - rl * vl
        du3 = (pr / gm1 + 0.5 * rr * qr) - (pl / gm1 + 0.5 * rl * ql)
        out[i] = du0 * dv0 + du1 * dv1 + du2 * dv2 + du3 * dv3


def entropy_distance(wl, wr, gamma):
    out = np.empty(wl.shape[0])
    _ed_loop(wl, wr, float(gamma), out)
    return out
