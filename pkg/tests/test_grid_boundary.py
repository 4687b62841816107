import numpy as np
import pytest

from entroflux import boundary as bc
from entroflux.errors import ConfigError
from entroflux.grid import (Grid1D, cartesian, half_cylinder_mesh, perturbed_channel_mesh,
                            ramp_mesh, rotate_grid)


def _check_metrics(grid):
    assert np.all(grid.area > 0)
    for n in (grid.n_i, grid.n_j):
        np.testing.assert_allclose(np.hypot(n[..., 0], n[..., 1]), 1.0, atol=1e-14)
    assert np.abs(grid.closure()).max() <= 1e-12


def test_grid1d():
    g = Grid1D(10, 0.0, 2.0)
    assert g.dx == pytest.approx(0.2)
    np.testing.assert_allclose(g.x[[0, -1]], [0.1, 1.9])
    with pytest.raises(ValueError):
        Grid1D(10, 1.0, 1.0)


def test_cartesian_metrics():
    g = cartesian(4, 3, 0.0, 2.0, 0.0, 3.0)
    _check_metrics(g)
    np.testing.assert_allclose(g.area, 0.5)
    np.testing.assert_allclose(g.n_i[..., 0], 1.0)
    np.testing.assert_allclose(g.n_j[..., 1], 1.0)


@pytest.mark.parametrize("make", [
    lambda: half_cylinder_mesh(40, 320),
    lambda: half_cylinder_mesh(20, 80),
    lambda: perturbed_channel_mesh(40, 20, dy_perturb=0.1),
    lambda: ramp_mesh(60, 20),
    lambda: rotate_grid(cartesian(8, 8), 0.3),
])
def test_mesh_quality(make):
    _check_metrics(make())


def test_half_cylinder_inner_nodes_on_unit_circle():
    g = half_cylinder_mesh(40, 320)
    np.testing.assert_allclose(np.hypot(g.x[-1], g.y[-1]), 1.0, atol=1e-13)
    # theta range symmetric about the stagnation line
    np.testing.assert_allclose(g.y[:, ::-1], -g.y, atol=1e-13)
    assert g.x[-1, 160] == pytest.approx(-1.0)


def test_perturbed_channel():
    flat = perturbed_channel_mesh(10, 4, dy_perturb=0.0)
    ref = cartesian(10, 4, 0.0, 10.0, 0.0, 4.0)
    np.testing.assert_array_equal(flat.y, ref.y)
    g = perturbed_channel_mesh(10, 4, dy_perturb=0.1)
    line = g.y[:, 2]
    assert line.max() - line.min() == pytest.approx(0.2)
    assert line[0] == pytest.approx(2.1) and line[1] == pytest.approx(1.9)
    assert np.all(perturbed_channel_mesh(10, 4, dy_perturb=0.49).area > 0)
    with pytest.raises(ValueError):
        perturbed_channel_mesh(10, 5)


def test_ghost_1d_periodic_and_wall():
    w = np.arange(15.0).reshape(5, 3) + 1.0
    wp = bc.fill_ghosts_1d(w, (bc.periodic(), bc.periodic()))
    np.testing.assert_array_equal(wp[1], w[-1])
    np.testing.assert_array_equal(wp[0], w[-2])
    np.testing.assert_array_equal(wp[-2], w[0])
    wp = bc.fill_ghosts_1d(w, (bc.slip_wall(), bc.transmissive()))
    np.testing.assert_array_equal(wp[1], w[0] * [1, -1, 1])
    np.testing.assert_array_equal(wp[0], w[1] * [1, -1, 1])
    np.testing.assert_array_equal(wp[-1], w[-1])
    with pytest.raises(ConfigError):
        bc.fill_ghosts_1d(w, (bc.periodic(), bc.transmissive()))


def test_ghost_2d_slip_wall_reflects_normal_velocity():
    g = cartesian(4, 3)
    w = np.tile([1.0, 0.3, 0.2, 1.0], (4, 3, 1))
    bcs = {"imin": bc.transmissive(), "imax": bc.transmissive(),
           "jmin": bc.slip_wall(), "jmax": bc.slip_wall()}
    wp = bc.fill_ghosts_2d(w, g, bcs)
    np.testing.assert_allclose(wp[2:6, 1], [[1.0, 0.3, -0.2, 1.0]] * 4, atol=1e-15)
    np.testing.assert_allclose(wp[2:6, -1], [[1.0, 0.3, -0.2, 1.0]] * 4, atol=1e-15)


def test_ghost_2d_inflow_and_segments():
    g = cartesian(6, 2, 0.0, 6.0, 0.0, 2.0)
    w = np.tile([1.0, 0.0, 0.5, 1.0], (6, 2, 1))
    state = (2.0, 1.0, 0.0, 3.0)
    bcs = {"imin": bc.supersonic_inflow(state), "imax": bc.supersonic_outflow(),
           "jmin": bc.Segments(((2.0, bc.supersonic_inflow(state)), (np.inf, bc.slip_wall()))),
           "jmax": bc.symmetry()}
    wp = bc.fill_ghosts_2d(w, g, bcs)
    np.testing.assert_array_equal(wp[0:2, 2:4], np.broadcast_to(state, (2, 2, 4)))
    np.testing.assert_array_equal(wp[2:4, 1], np.broadcast_to(state, (2, 4)))
    np.testing.assert_allclose(wp[4:8, 1], [[1.0, 0.0, -0.5, 1.0]] * 4)


def test_time_dependent_boundary():
    g = cartesian(4, 2)
    w = np.ones((4, 2, 4))
    bcs = {e: bc.transmissive() for e in bc.EDGES}
    bcs["jmax"] = bc.time_dependent(lambda x, y, t: np.where((x < t)[..., None],
                                                             [2.0, 0, 0, 2.0], [1.0, 0, 0, 1.0]))
    wp = bc.fill_ghosts_2d(w, g, bcs, t=0.5)
    np.testing.assert_array_equal(wp[2:6, -2, 0], [2.0, 2.0, 1.0, 1.0])


def test_bc_validation():
    with pytest.raises(ConfigError):
        bc.BoundaryCondition("bogus")
    with pytest.raises(ConfigError):
        bc.BoundaryCondition("supersonic_inflow")
    with pytest.raises(ConfigError):
        bc.validate_bcs_2d({"imin": bc.periodic()})
