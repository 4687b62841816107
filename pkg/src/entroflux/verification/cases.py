"""Registry of the 1D and 2D test cases.

Each :class:`CaseSpec` knows its domain, default grid, final time (or
steady flag) and how to build an initial field plus boundary conditions.
``build(nx, ny, gas)`` returns a :class:`Setup` whose ``make_disc(scheme)``
gives the discretisation used by :func:`entroflux.solver.run`.
Two-dimensional cases are registered at a desk-scale resolution under
their plain name and at the full resolution under ``<name>_full``.
"""
from dataclasses import dataclass, field, replace

import numpy as np

from .. import boundary as bc
from ..errors import ConfigError
from ..gas import AIR, GasModel, conserved_to_primitive, primitive_to_conserved
from ..grid import (Grid1D, cartesian, half_cylinder_mesh, perturbed_channel_mesh,
                    ramp_mesh)
from ..solver import Discretization1D, Discretization2D
from .riemann import exact_riemann
from .shocks import normal_shock_state, oblique_shock_state, stationary_shock_pair

SQRT3 = np.sqrt(3.0)


@dataclass
class Setup:
    """A built case: grid, initial conserved field and boundary data."""
    grid: object
    U0: np.ndarray
    bcs: object
    gas: GasModel = AIR
    solid: np.ndarray = None
    post_step: object = None
    exact: object = None

    @property
    def ndim(self):
        return 1 if isinstance(self.grid, Grid1D) else 2

    def make_disc(self, scheme):
        if self.ndim == 1:
            return Discretization1D(self.grid, self.bcs, scheme, self.gas)
        return Discretization2D(self.grid, self.bcs, scheme, self.gas, solid=self.solid,
                                post_step=self.post_step)


@dataclass
class CaseSpec:
    name: str
    dim: int
    domain: tuple
    builder: object
    nx: int
    ny: int = None
    t_final: float = None
    steady: bool = False
    steady_tol: float = 1e-8
    max_steps: int = None
    params: dict = field(default_factory=dict)
    variant: str = "desk"
    description: str = ""

    def build(self, nx=None, ny=None, gas: GasModel = None):
        nx = self.nx if nx is None else int(nx)
        ny = self.ny if ny is None else int(ny)
        if nx < 1 or (self.dim == 2 and ny < 1):
            raise ConfigError(f"grid size must be positive, got {nx}x{ny}", key="nx")
        setup = self.builder(self, nx, ny, AIR if gas is None else gas)
        W = conserved_to_primitive(setup.U0, setup.gas, check=False)
        live = W if setup.solid is None else W[~setup.solid]
        if not (np.all(live[..., 0] > 0) and np.all(live[..., -1] > 0)):
            raise ValueError(f"case {self.name}: initial field is not positive")
        return setup

    def initial_state(self, x, y=None, gas: GasModel = AIR):
        """Primitive initial state at points (only for cases with a closed form)."""
        fn = self.params.get("initial")
        if fn is None:
            raise NotImplementedError(f"case {self.name} has no pointwise initial state")
        return fn(self, np.asarray(x, dtype=np.float64),
                  None if y is None else np.asarray(y, dtype=np.float64), gas)


def _cons(W, gas):
    return primitive_to_conserved(np.asarray(W, dtype=np.float64), gas)


# -- 1D ------------------------------------------------------------------

RIEMANN_TABLE = {
    1: (0.3, (1.0, 0.75, 1.0), (0.125, 0.0, 0.1), 0.2),
    2: (0.5, (1.0, 0.0, 1000.0), (1.0, 0.0, 0.01), 0.012),
    3: (0.4, (5.9924, 19.5975, 460.894), (5.9924, -6.19633, 46.0950), 0.035),
    5: (0.5, (1.4, 0.0, 1.0), (1.0, 0.0, 1.0), 2.0),
    6: (0.1, (3.86, -0.81, 10.33), (1.0, -3.44, 1.0), 4.0),
    7: (0.5, (1.4, 0.1, 1.0), (1.0, 0.1, 1.0), 1.0),
}


def _riemann_states(spec, gas):
    p = spec.params
    if "mach" in p:
        return stationary_shock_pair(p["mach"], gas)
    return np.array(p["wl"], dtype=np.float64), np.array(p["wr"], dtype=np.float64)


def _riemann_initial(spec, x, y, gas):
    wl, wr = _riemann_states(spec, gas)
    return np.where((x < spec.params["x0"])[..., None], wl, wr)


def _build_riemann(spec, nx, ny, gas):
    grid = Grid1D(nx, *spec.domain)
    W = _riemann_initial(spec, grid.x, None, gas)
    wl, wr = _riemann_states(spec, gas)
    x0 = spec.params["x0"]

    def exact(t):
        if t <= 0.0:
            return W.copy()
        return exact_riemann(wl, wr, gas).profile(grid.x, t, x0)

    return Setup(grid, _cons(W, gas), (bc.transmissive(), bc.transmissive()), gas,
                 exact=exact)


def _density_wave_initial(spec, x, y, gas, t=0.0):
    W = np.empty(np.shape(x) + (3,))
    W[..., 0] = 1.0 + 0.2 * np.sin(2.0 * np.pi * (x - 0.1 * t))
    W[..., 1] = 0.1
    W[..., 2] = 1.0
    return W


def _build_density_wave(spec, nx, ny, gas):
    grid = Grid1D(nx, *spec.domain)
    W = _density_wave_initial(spec, grid.x, None, gas)
    return Setup(grid, _cons(W, gas), (bc.periodic(), bc.periodic()), gas,
                 exact=lambda t: _density_wave_initial(spec, grid.x, None, gas, t))


# -- 2D smooth -------------------------------------------------------------

def _periodic_bcs():
    return {e: bc.periodic() for e in bc.EDGES}


def _tg_initial(spec, x, y, gas):
    W = np.empty(np.shape(x) + (4,))
    W[..., 0] = 1.0
    W[..., 1] = np.sin(x) * np.cos(y)
    W[..., 2] = -np.cos(x) * np.sin(y)
    W[..., 3] = 100.0 / gas.gamma + (np.cos(2 * x) + np.cos(2 * y)) / 4.0
    return W


def _build_taylor_green(spec, nx, ny, gas):
    x0, x1, y0, y1 = spec.domain
    grid = cartesian(nx, ny, x0, x1, y0, y1)
    W = _tg_initial(spec, grid.xc, grid.yc, gas)
    return Setup(grid, _cons(W, gas), _periodic_bcs(), gas)


def _vortex_initial(spec, x, y, gas, t=0.0):
    p = spec.params
    g = gas.gamma
    x0, x1, y0, y1 = spec.domain
    M = 2.0 / g if p["mach"] is None else p["mach"]
    th = np.radians(p["angle"])
    beta, R, sigma = p["beta"], p["R"], p["sigma"]
    ux, uy = M * np.cos(th), M * np.sin(th)
    lx, ly = x1 - x0, y1 - y0
    # nearest periodic image of the advected centre
    dx = x - (p["xc"] + ux * t)
    dy = y - (p["yc"] + uy * t)
    dx = dx - lx * np.round(dx / lx)
    dy = dy - ly * np.round(dy / ly)
    f = -0.5 / sigma ** 2 * ((dx / R) ** 2 + (dy / R) ** 2)
    om = beta * np.exp(f)
    W = np.empty(np.shape(x) + (4,))
    W[..., 0] = (1.0 - 0.5 * (g - 1.0) * om * om) ** (1.0 / (g - 1.0))
    W[..., 1] = ux - dy * om / R
    W[..., 2] = uy + dx * om / R
    W[..., 3] = W[..., 0] ** g / g
    return W


def _build_vortex(spec, nx, ny, gas):
    x0, x1, y0, y1 = spec.domain
    grid = cartesian(nx, ny, x0, x1, y0, y1)
    W = _vortex_initial(spec, grid.xc, grid.yc, gas)
    return Setup(grid, _cons(W, gas), _periodic_bcs(), gas,
                 exact=lambda t: _vortex_initial(spec, grid.xc, grid.yc, gas, t))


# -- 2D steady ---------------------------------------------------------------

def _uniform(grid, w, gas):
    W = np.broadcast_to(np.asarray(w, dtype=np.float64), grid.shape + (4,)).copy()
    return _cons(W, gas)


def _build_oblique(spec, nx, ny, gas):
    x0, x1, y0, y1 = spec.domain
    grid = cartesian(nx, ny, x0, x1, y0, y1)
    w_in = np.array(spec.params["inflow"])
    w_top = oblique_shock_state(w_in, spec.params["mach"], spec.params["beta"], gas)
    bcs = {"imin": bc.supersonic_inflow(w_in), "imax": bc.supersonic_outflow(),
           "jmin": bc.slip_wall(), "jmax": bc.supersonic_inflow(w_top)}
    return Setup(grid, _uniform(grid, w_in, gas), bcs, gas)


def _build_ramp(spec, nx, ny, gas):
    p = spec.params
    grid = ramp_mesh(nx, ny, length=spec.domain[1], height=spec.domain[3],
                     x_start=p["x_start"], x_end=p["x_end"], angle_deg=p["angle"])
    bcs = {"imin": bc.supersonic_inflow(p["inflow"]), "imax": bc.supersonic_outflow(),
           "jmin": bc.slip_wall(), "jmax": bc.slip_wall()}
    return Setup(grid, _uniform(grid, p["inflow"], gas), bcs, gas)


def _build_half_cylinder(spec, nx, ny, gas):
    grid = half_cylinder_mesh(nx, ny)
    w_in = spec.params["inflow"]
    bcs = {"imin": bc.supersonic_inflow(w_in), "imax": bc.slip_wall(),
           "jmin": bc.supersonic_outflow(), "jmax": bc.supersonic_outflow()}
    return Setup(grid, _uniform(grid, w_in, gas), bcs, gas)


# -- 2D unsteady ---------------------------------------------------------------

def corner_fix(grid, gas, x_corner, y_corner):
    """Post-step fix for the expansion corner of a forward-facing step.

    The two fluid cells touching the step top next to the corner get the
    entropy and total enthalpy of the cell diagonally below and upstream
    of the corner; their own pressure and flow direction are kept.
    """
    i_c = int(np.searchsorted(grid.xc[:, 0], x_corner))
    j_c = int(np.searchsorted(grid.yc[0, :], y_corner))
    ref = (i_c - 1, j_c - 1)
    targets = [(i_c, j_c), (i_c + 1, j_c)]
    g = gas.gamma

    def fix(U):
        w_ref = conserved_to_primitive(U[ref], gas, check=False)
        s_ref = w_ref[3] / w_ref[0] ** g
        h_ref = g / (g - 1.0) * w_ref[3] / w_ref[0] + 0.5 * (w_ref[1] ** 2 + w_ref[2] ** 2)
        for ij in targets:
            w = conserved_to_primitive(U[ij], gas, check=False)
            rho = (w[3] / s_ref) ** (1.0 / g)
            q2 = 2.0 * (h_ref - g / (g - 1.0) * w[3] / rho)
            speed = np.sqrt(max(q2, 0.0))
            mag = np.hypot(w[1], w[2])
            if mag > 0.0:
                u, v = speed * w[1] / mag, speed * w[2] / mag
            else:
                u, v = speed, 0.0
            U[ij] = primitive_to_conserved(np.array([rho, u, v, w[3]]), gas)

    fix.targets = targets
    fix.reference = ref
    return fix


def _build_forward_step(spec, nx, ny, gas):
    p = spec.params
    x0, x1, y0, y1 = spec.domain
    grid = cartesian(nx, ny, x0, x1, y0, y1)
    solid = (grid.xc > p["step_x"]) & (grid.yc < p["step_h"])
    w_in = p["inflow"]
    bcs = {"imin": bc.supersonic_inflow(w_in), "imax": bc.supersonic_outflow(),
           "jmin": bc.slip_wall(), "jmax": bc.slip_wall()}
    post = corner_fix(grid, gas, p["step_x"], p["step_h"]) if p.get("corner_fix", True) else None
    return Setup(grid, _uniform(grid, w_in, gas), bcs, gas, solid=solid, post_step=post)


def _build_diffraction(spec, nx, ny, gas):
    p = spec.params
    x0, x1, y0, y1 = spec.domain
    grid = cartesian(nx, ny, x0, x1, y0, y1)
    solid = (grid.xc < p["corner_x"]) & (grid.yc < p["corner_y"])
    w0 = np.array(p["ambient"])
    w1 = normal_shock_state(w0, p["mach"], gas)
    W = np.where((grid.xc < p["corner_x"])[..., None], w1, w0)
    bcs = {"imin": bc.Segments(((p["corner_y"], bc.symmetry()),
                                (np.inf, bc.supersonic_inflow(w1))), axis="y"),
           "imax": bc.symmetry(), "jmin": bc.symmetry(), "jmax": bc.symmetry()}
    return Setup(grid, _cons(W, gas), bcs, gas, solid=solid)


def _build_odd_even(spec, nx, ny, gas):
    p = spec.params
    length, height = spec.domain[1], spec.domain[3]
    grid = perturbed_channel_mesh(length, height, nx, ny, p["perturbation"])
    w0 = np.array(p["ambient"])
    w1 = normal_shock_state(w0, p["mach"], gas)
    W = np.where((grid.xc < p["shock_x"])[..., None], w1, w0)
    bcs = {"imin": bc.supersonic_inflow(w1), "imax": bc.supersonic_outflow(),
           "jmin": bc.slip_wall(), "jmax": bc.slip_wall()}
    return Setup(grid, _cons(W, gas), bcs, gas)


def dmr_shock_x(y, t):
    """x-position of the Mach-10 shock front at height ``y`` and time ``t``."""
    return 1.0 / 6.0 + (y + 20.0 * t) / SQRT3


def _dmr_initial(spec, x, y, gas, t=0.0):
    pre = np.array(spec.params["pre"])
    post = np.array(spec.params["post"])
    behind = x < dmr_shock_x(y, t)
    return np.where(np.asarray(behind)[..., None], post, pre)


def _build_dmr(spec, nx, ny, gas):
    p = spec.params
    x0, x1, y0, y1 = spec.domain
    grid = cartesian(nx, ny, x0, x1, y0, y1)
    W = _dmr_initial(spec, grid.xc, grid.yc, gas)
    post = p["post"]
    bcs = {"imin": bc.supersonic_inflow(post), "imax": bc.supersonic_outflow(),
           "jmin": bc.Segments(((p["wall_x"], bc.supersonic_inflow(post)),
                                (np.inf, bc.slip_wall())), axis="x"),
           "jmax": bc.time_dependent(lambda gx, gy, t: _dmr_initial(spec, gx, gy, gas, t))}
    return Setup(grid, _cons(W, gas), bcs, gas)


def _build_vortex_filament(spec, nx, ny, gas):
    p = spec.params
    x0, x1, y0, y1 = spec.domain
    grid = cartesian(nx, ny, x0, x1, y0, y1)
    w_up = np.array(p["inflow"])
    w_down = normal_shock_state(w_up, p["mach"], gas, direction=(-1.0, 0.0))
    W = np.where((grid.xc < p["shock_x"])[..., None], w_up, w_down)
    # the stagnant cell is the inflow face whose centre is closest to mid-height
    y_faces = grid.yc[0]
    jm = int(np.argmin(np.abs(y_faces - 0.5 * (y0 + y1))))
    lo, hi = grid.y[0, jm], grid.y[0, jm + 1]
    inflow = bc.supersonic_inflow(w_up)
    bcs = {"imin": bc.Segments(((lo, inflow), (hi, bc.supersonic_inflow(p["filament"])),
                                (np.inf, inflow)), axis="y"),
           "imax": bc.supersonic_outflow(), "jmin": bc.slip_wall(), "jmax": bc.slip_wall()}
    return Setup(grid, _cons(W, gas), bcs, gas)


# -- registry --------------------------------------------------------------------

def _table1_cases():
    out = []
    for k in range(1, 8):
        if k == 4:
            params = {"x0": 0.5, "mach": 2.0}
            t_final = 5.0
            desc = "stationary shock, states from the normal-shock relations (M = 2)"
        else:
            x0, wl, wr, t_final = RIEMANN_TABLE[k]
            params = {"x0": x0, "wl": wl, "wr": wr}
            desc = f"Riemann problem {wl} / {wr} at x0 = {x0}"
        params["initial"] = _riemann_initial
        out.append(CaseSpec(f"case{k}", 1, (0.0, 1.0), _build_riemann, 100,
                            t_final=t_final, params=params, variant="both",
                            description=desc))
    return out


def _two_d(name, domain, builder, desk, full_grid, **kw):
    t_full = kw.pop("t_full", None)
    domain_full = kw.pop("domain_full", domain)
    base = CaseSpec(name, 2, domain, builder, desk[0], desk[1], **kw)
    full = replace(base, name=f"{name}_full", nx=full_grid[0], ny=full_grid[1], variant="full",
                   params=dict(base.params), domain=domain_full,
                   t_final=base.t_final if t_full is None else t_full)
    return [base, full]


def _build_registry():
    cases = _table1_cases()
    cases.append(CaseSpec("sod", 1, (0.0, 1.0), _build_riemann, 100, t_final=0.2,
                          params=dict(cases[0].params), variant="both",
                          description="alias of case1"))
    cases.append(CaseSpec("density_wave", 1, (0.0, 1.0), _build_density_wave, 40,
                          t_final=10.0, params={"initial": _density_wave_initial},
                          variant="both", description="periodic advected density sine"))
    two_pi = 2.0 * np.pi
    cases += _two_d("taylor_green", (0.0, two_pi, 0.0, two_pi), _build_taylor_green,
                    (64, 64), (100, 100), t_final=5.0, t_full=20.0,
                    params={"initial": _tg_initial}, description="periodic Taylor-Green vortex")
    cases += _two_d("isentropic_vortex", (-5.0, 5.0, -5.0, 5.0), _build_vortex,
                    (64, 64), (200, 200), t_final=5.0, t_full=10.0,
                    params={"mach": None, "angle": 45.0, "beta": 1.0, "R": 1.0,
                            "sigma": 1.0, "xc": 0.0, "yc": 0.0, "initial": _vortex_initial},
                    description="isentropic vortex advected at 45 degrees")
    cases += _two_d("oblique_shock", (0.0, 3.0, 0.0, 1.0), _build_oblique,
                    (120, 40), (240, 80), steady=True, max_steps=200_000,
                    params={"inflow": (1.0, 2.9, 0.0, 1.0 / 1.4), "mach": 2.9, "beta": 29.0},
                    description="oblique shock reflecting off a wall")
    cases += _two_d("compression_ramp", (0.0, 3.0, 0.0, 1.0), _build_ramp,
                    (120, 40), (240, 80), steady=True, max_steps=200_000,
                    params={"inflow": (1.0, 2.0, 0.0, 1.0 / 1.4), "x_start": 0.5,
                            "x_end": 1.5, "angle": 15.0},
                    description="Mach 2 flow over a 15 degree ramp")
    cases += _two_d("half_cylinder", None, _build_half_cylinder,
                    (20, 80), (40, 320), steady=True, max_steps=200_000,
                    params={"inflow": (1.0, 20.0, 0.0, 1.0 / 1.4)},
                    description="Mach 20 bow shock ahead of a half-cylinder")
    cases += _two_d("forward_step", (0.0, 3.0, 0.0, 1.0), _build_forward_step,
                    (120, 40), (240, 80), t_final=4.0,
                    params={"inflow": (1.0, 3.0, 0.0, 1.0 / 1.4), "step_x": 0.6,
                            "step_h": 0.2, "corner_fix": True},
                    description="Mach 3 flow over a forward-facing step")
    cases += _two_d("shock_diffraction", (0.0, 1.0, 0.0, 1.0), _build_diffraction,
                    (80, 80), (400, 400), t_final=0.1561,
                    params={"ambient": (1.4, 0.0, 0.0, 1.0), "mach": 5.09,
                            "corner_x": 0.05, "corner_y": 0.6},
                    description="Mach 5.09 shock diffracting over a backward step")
    cases += _two_d("odd_even", (0.0, 600.0, 0.0, 20.0), _build_odd_even,
                    (600, 20), (2400, 20), t_final=80.0, t_full=330.0,
                    domain_full=(0.0, 2400.0, 0.0, 20.0),
                    params={"ambient": (1.0, 0.0, 0.0, 1.0), "mach": 20.0, "shock_x": 5.0,
                            "perturbation": 0.1},
                    description="Mach 20 planar shock on a zigzag centre-line grid")
    cases += _two_d("dmr", (0.0, 4.0, 0.0, 1.0), _build_dmr, (240, 60), (960, 240),
                    t_final=0.2,
                    params={"pre": (1.4, 0.0, 0.0, 1.0),
                            "post": (8.0, 33.0 * SQRT3 / 8.0, -4.125, 116.5),
                            "wall_x": 1.0 / 6.0, "initial": _dmr_initial},
                    description="double Mach reflection of a Mach 10 shock")
    cases += _two_d("vortex_filament", (0.0, 200.0, 0.0, 100.0), _build_vortex_filament,
                    (100, 50), (400, 200), t_final=20.0,
                    params={"inflow": (1.0, 20.0, 0.0, 1.0 / 1.4),
                            "filament": (1.0, 0.0, 0.0, 1.0 / 1.4), "mach": 20.0,
                            "shock_x": 100.0},
                    description="stagnant inflow filament hitting a Mach 20 standing shock")
    return {c.name: c for c in cases}


_REGISTRY = _build_registry()


def case_registry():
    """All registered cases (desk- and full-scale variants)."""
    return list(_REGISTRY.values())


def get_case(name):
    try:
        return _REGISTRY[name.lower()]
    except KeyError:
        raise ConfigError(f"unknown case {name!r}", key="case") from None
