import numpy as np
import pytest

from entroflux.fluxes import eckep_flux
from entroflux.gas import entropy_variables, physical_flux, primitive_to_conserved
from entroflux.hybrid import (entropy_distance, flatten_1d, flatten_2d, fourth_order_flux,
                              hes_flux, ricca_lambda, sensor_field, sensor_raw,
                              third_difference)
from entroflux.stabilization import es_flux

from conftest import CONTACT_L, CONTACT_R, SOD_L, SOD_R, random_normals, random_states


def _ed(wl, wr):
    return entropy_distance(primitive_to_conserved(wl), primitive_to_conserved(wr),
                            entropy_variables(wl), entropy_variables(wr))


def test_entropy_distance_examples():
    assert _ed(SOD_L, SOD_L) == 0.0
    assert _ed(SOD_L, SOD_R) > 0.0


def test_sensor_uniform_flow_is_off():
    sf = sensor_field(np.zeros(11))
    np.testing.assert_array_equal(sf.phi, 0.0)


def test_sensor_raw_values():
    assert sensor_raw(1.0, 10.0) == pytest.approx(1.0 - np.exp(-10.0))
    assert sensor_raw(0.0, 10.0) == 0.0
    assert sensor_raw(1.0, q=1.0, mode="quadratic") == 0.0
    assert sensor_raw(0.5, q=1.0, mode="quadratic") == pytest.approx(0.25)
    # the quadratic form turns negative at the strongest faces (q * SED > 1)
    assert sensor_raw(1.0, q=10.0, mode="quadratic") == pytest.approx(-90.0)
    with pytest.raises(ValueError):
        sensor_raw(0.5, mode="cubic")


def test_sensor_field_peak_is_on_and_flattened():
    ed = np.zeros(11)
    ed[5] = 2.0
    ed[2] = 1e-6
    sf = sensor_field(ed, q=10.0, eps=0.1)
    assert set(np.unique(sf.phi)) <= {0.0, 1.0}
    np.testing.assert_array_equal(np.nonzero(sf.phi)[0], [4, 5, 6])
    assert sf.sed.max() == 1.0


def test_flatten_2d_spreads_over_adjacent_cells():
    phi_i = np.zeros((5, 4))
    phi_j = np.zeros((4, 5))
    phi_i[2, 1] = 1.0  # face between cells (1,1) and (2,1)
    oi, oj = flatten_2d(phi_i, phi_j)
    # all faces of cells (1,1) and (2,1) switch on
    assert oi[1, 1] == oi[2, 1] == oi[3, 1] == 1.0
    assert oj[1, 1] == oj[1, 2] == oj[2, 1] == oj[2, 2] == 1.0
    assert oi.sum() == 3 and oj.sum() == 4


def test_ricca_lambda_branches():
    w = np.array([1.0, 0.1, 1.0])
    assert ricca_lambda(w, w) == pytest.approx(0.1)
    assert ricca_lambda(CONTACT_L, CONTACT_R) == 0.0
    a = 0.5 * (np.sqrt(1.4) + np.sqrt(1.4 * 0.1 / 0.125))
    assert ricca_lambda(SOD_L, SOD_R) == pytest.approx(0.75 + a, rel=1e-14)


def test_fourth_order_flux_examples():
    st = np.array([[0.0], [1.0], [3.0], [7.0]])
    assert fourth_order_flux(st, 1.0)[0] == pytest.approx(0.5)
    const = np.ones((4, 3))
    np.testing.assert_array_equal(fourth_order_flux(const, 2.0), 0.0)
    lin = np.arange(4.0)[:, None] * np.array([1.0, 2.0, 3.0])
    np.testing.assert_array_equal(fourth_order_flux(lin, 2.0), 0.0)
    assert third_difference(0.0, 1.0, 3.0, 7.0) == 1.0


def test_hes_phi_one_bit_identical_to_es(rng, backend):
    wl = random_states(rng, 5000, 4)
    wr = random_states(rng, 5000, 4)
    n = random_normals(rng, 5000)
    d3u = rng.normal(size=(5000, 4))
    f_h, a_h = hes_flux(wl, wr, d3u, 1.0, n)
    f_e, a_e = es_flux(wl, wr, n)
    np.testing.assert_array_equal(f_h, f_e)
    np.testing.assert_array_equal(a_h, a_e)


def test_hes_phi_zero_constant_stencil_is_physical(rng):
    w = random_states(rng, 100, 3)
    f, _ = hes_flux(w, w, np.zeros((100, 3)), 0.0)
    np.testing.assert_array_equal(f, physical_flux(w))


def test_hes_steady_contact_phi_zero():
    d3u = np.array([0.3, 0.0, 0.75])
    f, _ = hes_flux(CONTACT_L, CONTACT_R, d3u, 0.0)
    np.testing.assert_array_equal(f, [0.0, 1.0, 0.0])


def test_hes_phi_zero_adds_scaled_fourth_order_term(rng):
    wl = random_states(rng, 50, 3)
    wr = random_states(rng, 50, 3)
    d3u = rng.normal(size=(50, 3))
    f, _ = hes_flux(wl, wr, d3u, 0.0)
    lam = ricca_lambda(wl, wr)
    ref = eckep_flux(wl, wr) + 0.5 * (lam / 32.0)[:, None] * d3u
    np.testing.assert_allclose(f, ref, rtol=1e-13, atol=1e-13)
