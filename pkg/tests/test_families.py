import csv
import io

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from noetherflux.errors import NonPositiveNeck, NoBracket
from noetherflux.families import (
    catenoid_profile,
    dh_catenoid_data,
    dh_theta_residual,
    dh_theta_residual_direct,
    dh_theta_scan,
    dh_theta_solve,
    h1_closed_form,
    h2r_profile,
    h2r_rotational_end,
    nil_horizontal_catenoid,
    nil_vertical_catenoid,
    sol3_horizontal_plane,
)
from noetherflux.surface import mean_curvature


def _rows(text):
    return list(csv.reader(io.StringIO(text)))


# vertical catenoids


@pytest.mark.parametrize("a", [0.3, 1.0, 2.5])
def test_catenoid_profile_conserves_neck(a):
    prof = catenoid_profile(a)
    t = np.linspace(-3, 3, 61)
    assert np.max(np.abs(prof.conserved(t) - a)) < 1e-10
    f, ft = prof(t)
    assert np.all(f >= a - 1e-14)
    assert np.allclose(f, f[::-1], rtol=1e-10)  # even profile


def test_catenoid_profile_ode_residual():
    prof = catenoid_profile(1.0)
    t = np.linspace(-2.5, 2.5, 41)
    h = 1e-4
    _, ftp = prof(t + h)
    _, ftm = prof(t - h)
    f, ft = prof(t)
    fdd = (ftp - ftm) / (2 * h)
    assert np.max(np.abs(f * (f * f + 4) * fdd - 4 * (1 + ft * ft))) < 1e-6


def test_catenoid_rejects_non_positive_neck():
    with pytest.raises(NonPositiveNeck):
        catenoid_profile(0.0)
    with pytest.raises(NonPositiveNeck):
        nil_vertical_catenoid(-1.0)


def test_catenoid_csv_starts_at_the_neck():
    rows = _rows(catenoid_profile(1.0).to_csv(11))
    assert rows[0] == ["t", "f", "f_t"]
    assert [float(x) for x in rows[1]] == [0.0, 1.0, 0.0]
    assert len(rows) == 12


def test_vertical_catenoid_is_minimal():
    s = nil_vertical_catenoid(1.0)
    T, TH = np.meshgrid(np.linspace(-2.5, 2.5, 7), np.linspace(0, 6, 5))
    assert np.max(np.abs(mean_curvature(s, (T, TH)))) < 1e-6


# horizontal catenoids


@pytest.mark.parametrize("alpha", [0.5, 1.0])
def test_theta_equation_two_quadratures(alpha):
    for theta in (0.2, 0.5):
        assert dh_theta_residual(theta, alpha) == pytest.approx(
            dh_theta_residual_direct(theta, alpha), abs=1e-9)


@pytest.mark.parametrize("alpha", [0.5, 1.0])
def test_theta_solve_and_closure(alpha):
    theta = dh_theta_solve(alpha)
    assert abs(dh_theta_residual(theta, alpha)) < 1e-12
    d = dh_catenoid_data(alpha)
    assert abs(d.closure_residual()) < 1e-10
    assert d.U == pytest.approx(d.half_period_quadrature(), rel=1e-10)
    assert max(d.ode_residuals().values()) < 1e-8
    assert d.sigma2_closed_form() == pytest.approx(d.sigma2_integral(), rel=1e-10)


def test_theta_scan_changes_sign():
    grid, vals = dh_theta_scan(1.0, 16)
    assert len(grid) == 16
    assert vals[0] < 0 < vals[-1]


def test_theta_no_bracket_raises(monkeypatch):
    import noetherflux.families as fam
    monkeypatch.setattr(fam, "dh_theta_residual", lambda th, alpha, m=512: 1.0)
    with pytest.raises(NoBracket):
        fam.dh_theta_solve(1.0)


def test_horizontal_catenoid_is_minimal():
    s, data = nil_horizontal_catenoid(1.0)
    assert s.info["data"] is data
    U, Y = np.meshgrid(np.linspace(0, 2 * data.U, 6, endpoint=False), [-0.5, 0.0, 0.5])
    assert np.max(np.abs(mean_curvature(s, (U, Y)))) < 1e-6


def test_horizontal_catenoid_csv():
    rows = _rows(dh_catenoid_data(0.5).to_csv(9))
    assert rows[0] == ["u", "phi", "beta", "G"]
    assert len(rows) == 10


# rotational ends in H2 x R


@given(st.floats(0.05, 0.9))
def test_h1_integral_is_closed_form_minus_two(r):
    prof = h2r_profile(1.0)
    assert prof.h_integral(r) == pytest.approx(h1_closed_form(r) - 2, abs=1e-8)


@pytest.mark.parametrize("beta", [0.25, 0.5, 2.0, 4.0])
def test_profile_substitution_matches_naive(beta):
    prof = h2r_profile(beta)
    lo, hi = prof.R + 0.05, 0.9
    assert float(prof.h(hi) - prof.h(lo)) == pytest.approx(prof.h_naive(lo, hi), abs=1e-9)


def test_profile_neck_radius():
    assert h2r_profile(1.0).R == 0.0
    assert h2r_profile(4.0).R == pytest.approx(1 / 3)
    assert h2r_profile(0.25).R == pytest.approx(1 / 3)


def test_h_prime_matches_difference_quotient():
    prof = h2r_profile(0.5)
    r, h = 0.6, 1e-5
    fd = (prof.h(r + h) - prof.h(r - h)) / (2 * h)
    assert float(fd) == pytest.approx(float(prof.h_prime(r)), rel=1e-7)


@pytest.mark.parametrize("beta", [0.5, 1.0, 2.0])
def test_rotational_end_has_h_one_half(beta):
    s = h2r_rotational_end(beta)
    R, TH = np.meshgrid(np.linspace(*s.u_range, 5), [0.0, 1.0, 4.0])
    assert np.max(np.abs(mean_curvature(s, (R, TH)) - 0.5)) < 1e-6


def test_rotational_end_range_checked():
    with pytest.raises(ValueError):
        h2r_rotational_end(4.0, (0.2, 0.9))


def test_rotational_end_csv_columns():
    assert _rows(h2r_profile(1.0).to_csv(n=5))[0] == ["r", "h", "h_prime", "h_integral"]
    assert _rows(h2r_profile(0.5).to_csv(n=5))[0] == ["r", "h", "h_prime"]


def test_sol3_plane_is_minimal():
    s = sol3_horizontal_plane()
    U, V = np.meshgrid([-1.0, 0.0, 1.5], [-1.0, 0.3])
    assert np.max(np.abs(mean_curvature(s, (U, V)))) < 1e-8
