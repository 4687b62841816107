"""Exact Riemann solver for the 1D Euler equations of a perfect gas.

Newton iteration on the star pressure (two-rarefaction initial guess),
then self-similar sampling of the wave fan.
"""
from dataclasses import dataclass

import numpy as np

from ..gas import AIR, GasModel


class VacuumError(ValueError):
    """The data generate a vacuum (pressure-positivity condition fails)."""


def _f_k(p, rho, pk, a, g):
    """Pressure function of one side and its derivative."""
    if p > pk:
        A = 2.0 / ((g + 1.0) * rho)
        B = (g - 1.0) / (g + 1.0) * pk
        sq = np.sqrt(A / (p + B))
        return (p - pk) * sq, sq * (1.0 - 0.5 * (p - pk) / (B + p))
    r = p / pk
    f = 2.0 * a / (g - 1.0) * (r ** ((g - 1.0) / (2.0 * g)) - 1.0)
    df = 1.0 / (rho * a) * r ** (-(g + 1.0) / (2.0 * g))
    return f, df


@dataclass
class RiemannSolution:
    wl: tuple
    wr: tuple
    p_star: float
    u_star: float
    left_wave: str
    right_wave: str
    gamma: float
    iterations: int = 0
    residual: float = 0.0

    def _side(self, side):
        rho, u, p = self.wl if side == "left" else self.wr
        return rho, u, p, np.sqrt(self.gamma * p / rho)

    def star_density(self, side):
        g = self.gamma
        rho, _, p, _ = self._side(side)
        ps = self.p_star
        if ps > p:
            r = ps / p
            gm = (g - 1.0) / (g + 1.0)
            return rho * (r + gm) / (gm * r + 1.0)
        return rho * (ps / p) ** (1.0 / g)

    def wave_speeds(self):
        """Head/tail speeds: (left_head, left_tail, contact, right_tail, right_head)."""
        g = self.gamma
        out = []
        for side, sgn in (("left", -1.0), ("right", 1.0)):
            rho, u, p, a = self._side(side)
            if self.p_star > p:
                s = u + sgn * a * np.sqrt((g + 1.0) / (2.0 * g) * self.p_star / p
                                          + (g - 1.0) / (2.0 * g))
                out.append((s, s))
            else:
                a_star = a * (self.p_star / p) ** ((g - 1.0) / (2.0 * g))
                out.append((u + sgn * a, self.u_star + sgn * a_star))
        (lh, lt), (rh, rt) = out
        return lh, lt, self.u_star, rt, rh

    def sample(self, xi):
        """Primitive (rho, u, p) at similarity coordinates xi = (x - x0)/t."""
        xi = np.atleast_1d(np.asarray(xi, dtype=np.float64))
        g = self.gamma
        out = np.empty(xi.shape + (3,))
        lh, lt, us, rt, rh = self.wave_speeds()
        rl, ul, pl, al = self._side("left")
        rr, ur, pr, ar = self._side("right")
        rsl = self.star_density("left")
        rsr = self.star_density("right")
        for k, s in enumerate(xi.ravel()):
            idx = np.unravel_index(k, xi.shape)
            if s <= us:
                if s <= lh:
                    w = (rl, ul, pl)
                elif s >= lt:
                    w = (rsl, us, self.p_star)
                else:
                    c = 2.0 / (g + 1.0) + (g - 1.0) / ((g + 1.0) * al) * (ul - s)
                    w = (rl * c ** (2.0 / (g - 1.0)),
                         2.0 / (g + 1.0) * (al + 0.5 * (g - 1.0) * ul + s),
                         pl * c ** (2.0 * g / (g - 1.0)))
            else:
                if s >= rh:
                    w = (rr, ur, pr)
                elif s <= rt:
                    w = (rsr, us, self.p_star)
                else:
                    c = 2.0 / (g + 1.0) - (g - 1.0) / ((g + 1.0) * ar) * (ur - s)
                    w = (rr * c ** (2.0 / (g - 1.0)),
                         2.0 / (g + 1.0) * (-ar + 0.5 * (g - 1.0) * ur + s),
                         pr * c ** (2.0 * g / (g - 1.0)))
            out[idx] = w
        return out

    def profile(self, x, t, x0=0.0):
        """Primitive states at positions ``x`` and time ``t`` > 0."""
        return self.sample((np.asarray(x, dtype=np.float64) - x0) / t)


def exact_riemann(wl, wr, gas: GasModel = AIR, tol=1e-14, max_iter=100):
    """Solve the Riemann problem with left/right primitive states (rho, u, p)."""
    g = gas.gamma
    rl, ul, pl = (float(v) for v in wl)
    rr, ur, pr = (float(v) for v in wr)
    if not (rl > 0 and rr > 0 and pl > 0 and pr > 0):
        raise ValueError("Riemann data must have positive density and pressure")
    al = np.sqrt(g * pl / rl)
    ar = np.sqrt(g * pr / rr)
    du = ur - ul
    if 2.0 * (al + ar) / (g - 1.0) <= du:
        raise VacuumError("initial data generate vacuum")
    if rl == rr and ul == ur and pl == pr:
        return RiemannSolution((rl, ul, pl), (rr, ur, pr), pl, ul, "none", "none", g)
    # two-rarefaction guess
    z = (g - 1.0) / (2.0 * g)
    p = ((al + ar - 0.5 * (g - 1.0) * du) / (al / pl ** z + ar / pr ** z)) ** (1.0 / z)
    p = max(p, 1e-14 * min(pl, pr))
    it = 0
    for it in range(1, max_iter + 1):
        fl, dfl = _f_k(p, rl, pl, al, g)
        fr, dfr = _f_k(p, rr, pr, ar, g)
        step = (fl + fr + du) / (dfl + dfr)
        p_new = p - step
        if p_new <= 0.0:
            p_new = 0.5 * p
        change = abs(p_new - p) / (0.5 * (p_new + p))
        p = p_new
        if change < tol:
            break
    fl, _ = _f_k(p, rl, pl, al, g)
    fr, _ = _f_k(p, rr, pr, ar, g)
    u = 0.5 * (ul + ur) + 0.5 * (fr - fl)
    res = abs(fl + fr + du)
    return RiemannSolution((rl, ul, pl), (rr, ur, pr), p, u,
                           "shock" if p > pl else "rarefaction",
                           "shock" if p > pr else "rarefaction", g, it, res)
