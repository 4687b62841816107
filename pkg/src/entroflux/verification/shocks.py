"""Normal- and oblique-shock relations for a perfect gas."""
import numpy as np

from ..gas import AIR, GasModel, physical_flux, primitive_to_conserved


def normal_shock_state(upstream, mach, gas: GasModel = AIR, direction=None):
    """Downstream primitive state behind a shock of Mach number ``mach``.

    ``mach`` is the upstream Mach number relative to the shock. The shock
    normal is ``direction`` (unit vector in 2D, +1/-1 in 1D; default +x) and
    the shock travels into the upstream gas along that normal with speed
    u_n + mach * a, so for a quiescent upstream the shock moves along
    ``direction`` and the downstream gas follows it.
    """
    w = np.asarray(upstream, dtype=np.float64)
    if not mach > 1.0:
        if mach == 1.0:
            return w.copy()
        raise ValueError(f"shock Mach number must exceed 1, got {mach}")
    g = gas.gamma
    dim = w.shape[-1]
    if dim == 3:
        n = np.array([1.0 if direction is None else float(direction)])
        vel = w[1:2]
    else:
        n = np.array([1.0, 0.0]) if direction is None else np.asarray(direction, dtype=np.float64)
        vel = w[1:3]
    rho1, p1 = w[0], w[-1]
    a1 = np.sqrt(g * p1 / rho1)
    un1 = float(vel @ n)
    sigma = un1 + mach * a1
    m2 = mach * mach
    rho2 = rho1 * (g + 1.0) * m2 / ((g - 1.0) * m2 + 2.0)
    p2 = p1 * (2.0 * g * m2 - (g - 1.0)) / (g + 1.0)
    # mass conservation in the shock frame
    un2 = sigma - rho1 * (sigma - un1) / rho2
    out = w.copy()
    out[0] = rho2
    out[-1] = p2
    new_vel = vel + (un2 - un1) * n
    out[1:dim - 1] = new_vel
    return out


def shock_speed(upstream, mach, gas: GasModel = AIR, direction=None):
    w = np.asarray(upstream, dtype=np.float64)
    dim = w.shape[-1]
    if dim == 3:
        n = np.array([1.0 if direction is None else float(direction)])
        vel = w[1:2]
    else:
        n = np.array([1.0, 0.0]) if direction is None else np.asarray(direction, dtype=np.float64)
        vel = w[1:3]
    return float(vel @ n) + mach * np.sqrt(gas.gamma * w[-1] / w[0])


def rh_residual(w1, w2, speed, n=None, gas: GasModel = AIR):
    """max |F(w2) - F(w1) - speed * (U(w2) - U(w1))| scaled by max(1, |F|)."""
    f1 = physical_flux(w1, n, gas)
    f2 = physical_flux(w2, n, gas)
    u1 = primitive_to_conserved(w1, gas)
    u2 = primitive_to_conserved(w2, gas)
    scale = max(1.0, float(np.max(np.abs(f1))), float(np.max(np.abs(f2))))
    return float(np.max(np.abs(f2 - f1 - speed * (u2 - u1)))) / scale


def stationary_shock_pair(mach, gas: GasModel = AIR):
    """Left/right states of a standing shock, upstream (1, 1, 1/(gamma M^2)).

    The upstream gas moves at Mach ``mach`` into a shock at rest; the
    downstream state is the normal-shock state for a shock whose normal
    points against the flow, so its speed u_n + M a is exactly zero.
    """
    wl = np.array([1.0, 1.0, 1.0 / (gas.gamma * mach * mach)])
    return wl, normal_shock_state(wl, mach, gas, direction=-1.0)


def oblique_shock_state(upstream, mach, beta_deg, gas: GasModel = AIR):
    """Downstream state behind a stationary oblique shock at angle ``beta``.

    The upstream flow is along +x; the shock makes angle beta with it and
    deflects the flow towards -y (a shock descending to a wall below).
    ``upstream`` must be a 2D primitive state with v = 0.
    """
    w = np.asarray(upstream, dtype=np.float64)
    g = gas.gamma
    beta = np.radians(beta_deg)
    rho1, u1, v1, p1 = w
    mn1 = mach * np.sin(beta)
    m2 = mn1 * mn1
    rho2 = rho1 * (g + 1.0) * m2 / ((g - 1.0) * m2 + 2.0)
    p2 = p1 * (2.0 * g * m2 - (g - 1.0)) / (g + 1.0)
    speed = np.hypot(u1, v1)
    # shock line runs along (cos b, -sin b); its normal points downstream
    n = np.array([np.sin(beta), np.cos(beta)])
    t = np.array([np.cos(beta), -np.sin(beta)])
    vn1 = speed * np.sin(beta)
    vt = speed * np.cos(beta)
    vn2 = rho1 * vn1 / rho2
    vel = vn2 * n + vt * t
    return np.array([rho2, vel[0], vel[1], p2])
