"""Uniform 1D grids and logically rectangular 2D grids.

2D conventions: nodes ``x[i, j], y[i, j]`` with shape (ni+1, nj+1). Cell
(i, j) is bounded by nodes i..i+1 and j..j+1. "i-faces" separate cells
along the first index and have shape (ni+1, nj); their unit normals point
towards increasing i. "j-faces" have shape (ni, nj+1), normals towards
increasing j. Meshes must be right-handed (positive cell areas).
"""
from dataclasses import dataclass, field

import numpy as np

GHOSTS = 2


@dataclass
class Grid1D:
    n_cells: int
    x_min: float = 0.0
    x_max: float = 1.0
    ghost_layers: int = GHOSTS

    def __post_init__(self):
        if self.n_cells < 1:
            raise ValueError("need at least one cell")
        if not self.x_max > self.x_min:
            raise ValueError("x_max must exceed x_min")

    @property
    def dx(self):
        return (self.x_max - self.x_min) / self.n_cells

    @property
    def x(self):
        return self.x_min + (np.arange(self.n_cells) + 0.5) * self.dx

    @property
    def faces(self):
        return self.x_min + np.arange(self.n_cells + 1) * self.dx

    @property
    def volumes(self):
        return np.full(self.n_cells, self.dx)


@dataclass
class StructuredGrid2D:
    x: np.ndarray
    y: np.ndarray
    ghost_layers: int = GHOSTS
    metrics: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.x = np.asarray(self.x, dtype=np.float64)
        self.y = np.asarray(self.y, dtype=np.float64)
        if self.x.shape != self.y.shape or self.x.ndim != 2:
            raise ValueError("node arrays must be 2D and of equal shape")
        if min(self.x.shape) < 2:
            raise ValueError("need at least one cell per direction")
        self._compute_metrics()

    @property
    def ni(self):
        return self.x.shape[0] - 1

    @property
    def nj(self):
        return self.x.shape[1] - 1

    @property
    def shape(self):
        return (self.ni, self.nj)

    def _compute_metrics(self):
        x, y = self.x, self.y
        # i-faces run from node (i, j) to (i, j+1)
        tx = x[:, 1:] - x[:, :-1]
        ty = y[:, 1:] - y[:, :-1]
        si = np.stack([ty, -tx], axis=-1)
        # j-faces run from node (i, j) to (i+1, j)
        tx = x[1:, :] - x[:-1, :]
        ty = y[1:, :] - y[:-1, :]
        sj = np.stack([-ty, tx], axis=-1)
        self.len_i = np.hypot(si[..., 0], si[..., 1])
        self.len_j = np.hypot(sj[..., 0], sj[..., 1])
        self.n_i = si / self.len_i[..., None]
        self.n_j = sj / self.len_j[..., None]
        self.s_i = si
        self.s_j = sj
        # quadrilateral area from the diagonals
        d1x = x[1:, 1:] - x[:-1, :-1]
        d1y = y[1:, 1:] - y[:-1, :-1]
        d2x = x[:-1, 1:] - x[1:, :-1]
        d2y = y[:-1, 1:] - y[1:, :-1]
        self.area = 0.5 * (d1x * d2y - d1y * d2x)
        if not np.all(self.area > 0.0):
            bad = np.argwhere(~(self.area > 0.0))[0]
            raise ValueError(f"non-positive cell area at cell {tuple(bad)}")
        self.xc = 0.25 * (x[:-1, :-1] + x[1:, :-1] + x[:-1, 1:] + x[1:, 1:])
        self.yc = 0.25 * (y[:-1, :-1] + y[1:, :-1] + y[:-1, 1:] + y[1:, 1:])
        # averaged opposite-face vectors, used only by the time-step estimate
        ai = 0.5 * (si[:-1] + si[1:])
        aj = 0.5 * (sj[:, :-1] + sj[:, 1:])
        self.ds_eta = np.hypot(ai[..., 0], ai[..., 1])
        self.ds_zeta = np.hypot(aj[..., 0], aj[..., 1])
        self.n_eta = ai / self.ds_eta[..., None]
        self.n_zeta = aj / self.ds_zeta[..., None]

    @property
    def volumes(self):
        return self.area

    def closure(self):
        """Per-cell sum of outward face vectors (zero for a closed polygon)."""
        return (self.s_i[1:] - self.s_i[:-1]) + (self.s_j[:, 1:] - self.s_j[:, :-1])

    def ghost_centers(self):
        """Cell centres padded by mirroring interior centres across boundary faces.

        Returns ``(xg, yg)`` with shape (ni+4, nj+4); corner ghosts are left
        as NaN (no stencil touches them).
        """
        if "ghost_centers" in self.metrics:
            return self.metrics["ghost_centers"]
        g = self.ghost_layers
        xg = np.full((self.ni + 2 * g, self.nj + 2 * g), np.nan)
        yg = np.full_like(xg, np.nan)
        xg[g:-g, g:-g] = self.xc
        yg[g:-g, g:-g] = self.yc
        for k in range(g):
            # low i
            fx = 0.5 * (self.x[0, :-1] + self.x[0, 1:])
            fy = 0.5 * (self.y[0, :-1] + self.y[0, 1:])
            xg[g - 1 - k, g:-g] = 2 * fx - self.xc[k]
            yg[g - 1 - k, g:-g] = 2 * fy - self.yc[k]
            fx = 0.5 * (self.x[-1, :-1] + self.x[-1, 1:])
            fy = 0.5 * (self.y[-1, :-1] + self.y[-1, 1:])
            xg[self.ni + g + k, g:-g] = 2 * fx - self.xc[-1 - k]
            yg[self.ni + g + k, g:-g] = 2 * fy - self.yc[-1 - k]
            fx = 0.5 * (self.x[:-1, 0] + self.x[1:, 0])
            fy = 0.5 * (self.y[:-1, 0] + self.y[1:, 0])
            xg[g:-g, g - 1 - k] = 2 * fx - self.xc[:, k]
            yg[g:-g, g - 1 - k] = 2 * fy - self.yc[:, k]
            fx = 0.5 * (self.x[:-1, -1] + self.x[1:, -1])
            fy = 0.5 * (self.y[:-1, -1] + self.y[1:, -1])
            xg[g:-g, self.nj + g + k] = 2 * fx - self.xc[:, -1 - k]
            yg[g:-g, self.nj + g + k] = 2 * fy - self.yc[:, -1 - k]
        self.metrics["ghost_centers"] = (xg, yg)
        return xg, yg

    def edge_normals(self, edge):
        """Unit normals of the boundary faces on ``edge`` (pointing along +i or +j)."""
        return {"imin": self.n_i[0], "imax": self.n_i[-1],
                "jmin": self.n_j[:, 0], "jmax": self.n_j[:, -1]}[edge]

    def edge_midpoints(self, edge):
        if edge in ("imin", "imax"):
            k = 0 if edge == "imin" else -1
            return (0.5 * (self.x[k, :-1] + self.x[k, 1:]),
                    0.5 * (self.y[k, :-1] + self.y[k, 1:]))
        k = 0 if edge == "jmin" else -1
        return (0.5 * (self.x[:-1, k] + self.x[1:, k]),
                0.5 * (self.y[:-1, k] + self.y[1:, k]))


def cartesian(nx, ny, x_min=0.0, x_max=1.0, y_min=0.0, y_max=1.0):
    xs = np.linspace(x_min, x_max, nx + 1)
    ys = np.linspace(y_min, y_max, ny + 1)
    x, y = np.meshgrid(xs, ys, indexing="ij")
    return StructuredGrid2D(x, y)


def rotate_grid(grid, angle):
    """Rigidly rotate a grid about the origin (radians)."""
    c, s = np.cos(angle), np.sin(angle)
    return StructuredGrid2D(c * grid.x - s * grid.y, s * grid.x + c * grid.y)


def half_cylinder_mesh(N, M):
    """Bow-shock mesh around the unit half-cylinder.

    Index i runs from the outer inflow arc (i = 1) to the body (i = N+1);
    j sweeps theta from -5pi/12 to 5pi/12. Node (i, j) sits where the ray
    y = -tan(theta) x meets the circle of radius r_i centred at (x_c, 0).
    """
    if N < 2 or M < 2:
        raise ValueError("half_cylinder_mesh needs N >= 2 and M >= 2")
    i = np.arange(1, N + 2, dtype=np.float64)[:, None]
    j = np.arange(1, M + 2, dtype=np.float64)[None, :]
    theta = (j - 1) * 5 * np.pi / (6 * M) - 5 * np.pi / 12
    xc = 1.8 * (N - i + 1) / N
    ri = 1.0 + 2.4 * (N - i + 1) / N
    t2 = 1.0 + np.tan(theta) ** 2
    x = (2 * xc - np.sqrt(4 * xc ** 2 - 4 * t2 * (xc ** 2 - ri ** 2))) / (2 * t2)
    y = -np.tan(theta) * x
    return StructuredGrid2D(x, y)


def perturbed_channel_mesh(length, height, nx=None, ny=None, dy_perturb=0.1):
    """Cartesian channel whose centre-line nodes zigzag by +-dy_perturb.

    Nodes with even column index move up, odd ones down. Default cell
    counts give unit cells.
    """
    nx = int(round(length)) if nx is None else nx
    ny = int(round(height)) if ny is None else ny
    if ny % 2:
        raise ValueError("perturbed_channel_mesh needs an even cell count in y")
    grid = cartesian(nx, ny, 0.0, length, 0.0, height)
    x, y = grid.x.copy(), grid.y.copy()
    jc = ny // 2
    sign = np.where(np.arange(nx + 1) % 2 == 0, 1.0, -1.0)
    y[:, jc] += sign * dy_perturb
    return StructuredGrid2D(x, y)


def ramp_mesh(nx, ny, length=3.0, height=1.0, x_start=0.5, x_end=1.5, angle_deg=15.0):
    """Body-fitted channel over a compression ramp on the lower wall.

    The wall is flat up to ``x_start``, rises at ``angle_deg`` until
    ``x_end`` and is flat again afterwards; grid lines are spaced evenly
    between the wall and the flat top.
    """
    xs = np.linspace(0.0, length, nx + 1)
    wall = np.tan(np.radians(angle_deg)) * np.clip(xs - x_start, 0.0, x_end - x_start)
    eta = np.linspace(0.0, 1.0, ny + 1)
    x = np.repeat(xs[:, None], ny + 1, axis=1)
    y = wall[:, None] + eta[None, :] * (height - wall[:, None])
    return StructuredGrid2D(x, y)
