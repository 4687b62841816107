"""Ghost-cell boundary conditions on primitive states.

Two ghost layers on each side. Ghost layer k (k = 0 next to the boundary)
is built from the k-th interior cell counted from the boundary, so wall
reflections are exact mirror images of the interior stencil.
"""
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError
from .grid import GHOSTS

KINDS = ("periodic", "transmissive", "supersonic_inflow", "supersonic_outflow",
         "slip_wall", "symmetry", "time_dependent")
EDGES = ("imin", "imax", "jmin", "jmax")


@dataclass(frozen=True)
class BoundaryCondition:
    kind: str
    state: tuple = None
    func: object = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ConfigError(f"unknown boundary kind {self.kind!r}", key="bc")
        if self.kind == "supersonic_inflow" and self.state is None:
            raise ConfigError("supersonic_inflow needs a full primitive state", key="bc")
        if self.kind == "time_dependent" and self.func is None:
            raise ConfigError("time_dependent needs a state function", key="bc")


def periodic():
    return BoundaryCondition("periodic")


def transmissive():
    return BoundaryCondition("transmissive")


def supersonic_outflow():
    return BoundaryCondition("supersonic_outflow")


def supersonic_inflow(state):
    return BoundaryCondition("supersonic_inflow", tuple(float(v) for v in state))


def slip_wall():
    return BoundaryCondition("slip_wall")


def symmetry():
    return BoundaryCondition("symmetry")


def time_dependent(func):
    """``func(x, y, t) -> primitive states`` evaluated at ghost centres.

    In 1D ``y`` is None.
    """
    return BoundaryCondition("time_dependent", func=func)


@dataclass(frozen=True)
class Segments:
    """Piecewise boundary along an edge.

    ``parts`` is a sequence of ``(upper, bc)``: a boundary face whose
    midpoint coordinate along ``axis`` ("x" or "y") is below ``upper`` takes
    the first matching bc. The last entry should use ``np.inf``.
    """
    parts: tuple
    axis: str = "x"

    @property
    def kind(self):
        return "segments"


def _mirror(w, n):
    """Reflect the velocity of 4-component states about unit normals ``n``."""
    out = w.copy()
    un = w[..., 1] * n[..., 0] + w[..., 2] * n[..., 1]
    out[..., 1] = w[..., 1] - 2.0 * un * n[..., 0]
    out[..., 2] = w[..., 2] - 2.0 * un * n[..., 1]
    return out


def _ghost_layers(bc, inner, normals, gx, gy, t):
    """Ghost values for one edge from its two inner rows.

    ``inner`` has shape (2, m, nvar): row 0 is the cell on the boundary.
    Returns (2, m, nvar) with row 0 the ghost next to the boundary.
    """
    k = bc.kind
    if k in ("transmissive", "supersonic_outflow"):
        return np.stack([inner[0], inner[0]])
    if k == "supersonic_inflow":
        return np.broadcast_to(np.asarray(bc.state), inner.shape).copy()
    if k in ("slip_wall", "symmetry"):
        if inner.shape[-1] == 3:
            out = inner.copy()
            out[..., 1] = -out[..., 1]
            return out
        return _mirror(inner, normals[None])
    if k == "time_dependent":
        vals = np.asarray(bc.func(gx, gy, t), dtype=np.float64)
        return np.broadcast_to(vals, inner.shape).copy()
    raise ConfigError(f"boundary kind {k!r} cannot fill an edge on its own", key="bc")


def fill_ghosts_1d(w, bcs, grid=None, t=0.0, out=None):
    """Pad interior primitive states (n, 3) to (n + 4, 3)."""
    if len(bcs) != 2:
        raise ConfigError(f"1D needs 2 boundary conditions, got {len(bcs)}", key="bc")
    g = GHOSTS
    n = w.shape[0]
    if out is None:
        out = np.empty((n + 2 * g,) + w.shape[1:])
    out[g:n + g] = w
    left, right = bcs
    if (left.kind == "periodic") != (right.kind == "periodic"):
        raise ConfigError("periodic boundaries must be paired", key="bc")
    if left.kind == "periodic":
        out[:g] = w[n - g:]
        out[n + g:] = w[:g]
        return out
    dx = None if grid is None else grid.dx
    for side, bc in (("left", left), ("right", right)):
        inner = w[:g] if side == "left" else w[::-1][:g]
        gx = None
        if bc.kind == "time_dependent":
            if grid is None:
                raise ConfigError("time_dependent boundary needs the grid", key="bc")
            if side == "left":
                gx = grid.x_min - (np.arange(g) + 0.5) * dx
            else:
                gx = grid.x_max + (np.arange(g) + 0.5) * dx
            vals = np.stack([np.asarray(bc.func(x, None, t), dtype=np.float64) for x in gx])
            ghost = vals
        else:
            ghost = _ghost_layers(bc, inner[:, None, :], None, None, None, t)[:, 0, :]
        if side == "left":
            out[g - 1::-1] = ghost
        else:
            out[n + g:] = ghost
    return out


def _edge_view(wp, edge, ni, nj):
    """(ghost_slice_rows, inner_rows) index helpers for a padded 2D array."""
    g = GHOSTS
    if edge == "imin":
        return [wp[g - 1 - k, g:g + nj] for k in range(g)], [wp[g + k, g:g + nj] for k in range(g)]
    if edge == "imax":
        return ([wp[ni + g + k, g:g + nj] for k in range(g)],
                [wp[ni + g - 1 - k, g:g + nj] for k in range(g)])
    if edge == "jmin":
        return [wp[g:g + ni, g - 1 - k] for k in range(g)], [wp[g:g + ni, g + k] for k in range(g)]
    return ([wp[g:g + ni, nj + g + k] for k in range(g)],
            [wp[g:g + ni, nj + g - 1 - k] for k in range(g)])


def _edge_ghost_centres(grid, edge):
    g = GHOSTS
    xg, yg = grid.ghost_centers()
    ni, nj = grid.ni, grid.nj
    if edge == "imin":
        idx = [(g - 1 - k, slice(g, g + nj)) for k in range(g)]
    elif edge == "imax":
        idx = [(ni + g + k, slice(g, g + nj)) for k in range(g)]
    elif edge == "jmin":
        idx = [(slice(g, g + ni), g - 1 - k) for k in range(g)]
    else:
        idx = [(slice(g, g + ni), nj + g + k) for k in range(g)]
    return np.stack([xg[i] for i in idx]), np.stack([yg[i] for i in idx])


def validate_bcs_2d(bcs):
    if not isinstance(bcs, dict) or set(bcs) != set(EDGES):
        got = sorted(bcs) if isinstance(bcs, dict) else bcs
        raise ConfigError(f"2D needs exactly the edges {EDGES}, got {got}", key="bc")
    for a, b in (("imin", "imax"), ("jmin", "jmax")):
        if (bcs[a].kind == "periodic") != (bcs[b].kind == "periodic"):
            raise ConfigError(f"periodic boundaries must be paired ({a}/{b})", key="bc")


def fill_ghosts_2d(w, grid, bcs, t=0.0, out=None):
    """Pad interior primitive states (ni, nj, 4) to (ni + 4, nj + 4, 4)."""
    validate_bcs_2d(bcs)
    g = GHOSTS
    ni, nj = w.shape[:2]
    if out is None:
        out = np.zeros((ni + 2 * g, nj + 2 * g, w.shape[-1]))
    out[g:g + ni, g:g + nj] = w
    if bcs["imin"].kind == "periodic":
        out[:g, g:g + nj] = w[ni - g:]
        out[ni + g:, g:g + nj] = w[:g]
    if bcs["jmin"].kind == "periodic":
        out[g:g + ni, :g] = w[:, nj - g:]
        out[g:g + ni, nj + g:] = w[:, :g]
    for edge in EDGES:
        bc = bcs[edge]
        if bc.kind == "periodic":
            continue
        ghosts, inner = _edge_view(out, edge, ni, nj)
        inner = np.stack(inner)
        normals = grid.edge_normals(edge)
        need_centres = bc.kind == "time_dependent" or (
            bc.kind == "segments" and any(b.kind == "time_dependent" for _, b in bc.parts))
        gx = gy = None
        if need_centres:
            gx, gy = _edge_ghost_centres(grid, edge)
        if bc.kind == "segments":
            mx, my = grid.edge_midpoints(edge)
            coord = mx if bc.axis == "x" else my
            vals = np.empty_like(inner)
            done = np.zeros(coord.shape, dtype=bool)
            for upper, sub in bc.parts:
                sel = (~done) & (coord < upper)
                if sel.any():
                    sx = None if gx is None else gx[:, sel]
                    sy = None if gy is None else gy[:, sel]
                    vals[:, sel] = _ghost_layers(sub, inner[:, sel], normals[sel], sx, sy, t)
                done |= sel
            if not done.all():
                raise ConfigError(f"segments on {edge} do not cover the edge", key="bc")
        else:
            vals = _ghost_layers(bc, inner, normals, gx, gy, t)
        for k in range(g):
            ghosts[k][...] = vals[k]
    return out
