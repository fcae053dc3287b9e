import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import random_points
from noetherflux.errors import InvalidSymmetry
from noetherflux.fields import (
    IsometryAction,
    SymmetryId,
    check_symmetry,
    compose_parameters,
    flow_defect,
    group_law_check,
    isometry_apply,
    killing_defect,
    killing_field,
    potential_vector,
    pullback_metric_defect,
    symmetries,
)
from noetherflux.geometry import AmbientSpace, curl_frame, curl_numeric, divergence


def test_sol3_has_no_rotation():
    sp = AmbientSpace.sol3()
    assert SymmetryId.R not in symmetries(sp)
    with pytest.raises(InvalidSymmetry, match="dimension 3"):
        check_symmetry(sp, SymmetryId.R)
    with pytest.raises(InvalidSymmetry):
        killing_field(sp, SymmetryId.R, np.zeros(3))


@pytest.mark.parametrize("name, expected", [
    ("Translation1", SymmetryId.T1), ("3", SymmetryId.T3), ("rotation", SymmetryId.R),
    ("T2", SymmetryId.T2),
])
def test_symmetry_parse(name, expected):
    assert SymmetryId.parse(name) is expected


def test_symmetry_parse_rejects_unknown():
    with pytest.raises(InvalidSymmetry):
        SymmetryId.parse("Boost")


def _killing_fields(space):
    return [(s, (lambda q, s=s: killing_field(space, s, q))) for s in symmetries(space)]


def test_generators_are_killing(space, rng):
    p = random_points(space, rng, 10)
    u, v = rng.normal(size=(2, 10, 3))
    for s, X in _killing_fields(space):
        assert np.max(np.abs(killing_defect(space, X, p, u, v))) < 1e-7, s


def test_non_killing_field_detected(space, rng):
    p = random_points(space, rng, 10)
    u, v = rng.normal(size=(2, 10, 3))

    def X(q):
        out = np.zeros_like(q)
        out[..., 0] = q[..., 0]
        return out

    assert np.max(np.abs(killing_defect(space, X, p, u, v))) > 1e-2


def test_killing_fields_divergence_free(space, rng):
    p = random_points(space, rng)
    for s, X in _killing_fields(space):
        assert np.max(np.abs(divergence(space, X, p))) < 1e-8, s


def test_potentials_curl_to_generators(space, rng):
    from noetherflux.geometry import coords_to_frame
    p = random_points(space, rng)
    for s in symmetries(space):
        S = coords_to_frame(space, p, killing_field(space, s, p))
        F = lambda q, s=s: potential_vector(space, s, q)
        assert np.max(np.abs(curl_frame(space, F, p) - S)) < 1e-7, s
        assert np.max(np.abs(curl_numeric(space, F, p) - S)) < 1e-6, s


def test_mis_signed_potential_detected(space, rng):
    from noetherflux.geometry import coords_to_frame
    p = random_points(space, rng)
    S = coords_to_frame(space, p, killing_field(space, SymmetryId.T3, p))
    c = curl_frame(space, lambda q: -potential_vector(space, SymmetryId.T3, q), p)
    assert np.max(np.abs(c - S)) > 1.0


def test_potential_coordinate_basis_consistent(space, rng):
    from noetherflux.geometry import frame_to_coords
    p = random_points(space, rng, 5)
    for s in symmetries(space):
        assert np.allclose(potential_vector(space, s, p, basis="coordinate"),
                           frame_to_coords(space, p, potential_vector(space, s, p)))


def test_isometries_preserve_metric(space, rng):
    p = random_points(space, rng, 10) * 0.5
    for s in symmetries(space):
        assert pullback_metric_defect(space, s, 0.3, p) < 1e-8, s


def test_flow_generates_killing_field(space, rng):
    p = random_points(space, rng, 10) * 0.5
    for s in symmetries(space):
        assert flow_defect(space, s, p) < 1e-8, s


@given(st.floats(-0.4, 0.4), st.floats(-0.4, 0.4))
def test_group_law(t, s):
    p = np.array([[0.1, -0.2, 0.3], [0.25, 0.05, -0.7]])
    for sp in (AmbientSpace.e3(1.0, 0.25), AmbientSpace.h2xr(), AmbientSpace.nil3(),
               AmbientSpace.sol3()):
        for which in symmetries(sp):
            assert group_law_check(sp, which, t, s, p) < 1e-12


def test_inverse_is_negative_parameter(space):
    p = np.array([0.1, 0.2, -0.3])
    for s in symmetries(space):
        act = IsometryAction(space, s, 0.35)
        assert np.allclose(act.inverse().apply(act.apply(p)), p, atol=1e-13)


def test_horizontal_composition_is_not_additive():
    sp = AmbientSpace.e3(1.0, 0.25)
    r = compose_parameters(sp, SymmetryId.T1, 0.3, 0.4)
    assert r == pytest.approx(0.7 / (1 - 0.25 * 0.12))
    assert compose_parameters(AmbientSpace.nil3(), SymmetryId.T1, 0.3, 0.4) == pytest.approx(0.7)


def test_rotation_fixes_the_axis(space):
    if space.is_sol3:
        pytest.skip("no rotation")
    p = np.array([0.0, 0.0, 0.7])
    assert np.allclose(isometry_apply(space, SymmetryId.R, 1.1, p), p)
