import numpy as np
import pytest

from noetherflux.errors import (
    InvalidSymmetry,
    MissingBaseFlux,
    NonConvergent,
    TableRowUnavailable,
)
from noetherflux.families import vertical_catenoid_cycle
from noetherflux.fields import IsometryAction, SymmetryId, potential_vector
from noetherflux.geometry import AmbientSpace
from noetherflux.noether import (
    TABLES,
    Cycle,
    FluxReport,
    NoetherContext,
    Relation,
    cmc_part_prediction,
    flux,
    flux_report,
    homological_invariance,
    line_integral,
    table_branch,
    transformation_table_predict,
    vanishing_by_symmetry,
)
from noetherflux.surface import pushforward_surface
from noetherflux.verify import _flatten, build_family, cmc_rule_defects, pointwise_row_defects

T1, T2, T3, R = SymmetryId.T1, SymmetryId.T2, SymmetryId.T3, SymmetryId.R


@pytest.fixture(scope="module")
def vertical():
    return build_family("vertical_catenoid", {"a": 1.5})


@pytest.fixture(scope="module")
def rot_end():
    return build_family("rotational_end", {"beta": 0.5})


@pytest.fixture(scope="module")
def horizontal():
    return build_family("horizontal_catenoid", {"alpha": 0.5})


def test_vertical_catenoid_fluxes(vertical):
    for c in vertical.cycles:
        r = flux_report(vertical.space, 0.0, vertical.surface, c)
        assert r.sigma3 == pytest.approx(2 * np.pi * 1.5, abs=1e-9)
        assert max(abs(r.sigma1), abs(r.sigma2), abs(r.sigmaR)) < 1e-10


@pytest.mark.parametrize("beta", [0.5, 2.0])
def test_rotational_end_vertical_flux(beta):
    case = build_family("rotational_end", {"beta": beta})
    for c in case.cycles:
        r = flux_report(case.space, 0.5, case.surface, c)
        assert r.sigma3 == pytest.approx(2 * np.pi * (1 - beta), abs=1e-8)
        assert max(abs(r.sigma1), abs(r.sigma2), abs(r.sigmaR)) < 1e-10


def test_horizontal_catenoid_fluxes(horizontal):
    data = horizontal.data
    for c in horizontal.cycles:
        r = flux_report(horizontal.space, 0.0, horizontal.surface, c)
        assert r.sigma2 == pytest.approx(data.sigma2_closed_form(), rel=1e-10)
        assert max(abs(r.sigma1), abs(r.sigma3), abs(r.sigmaR)) < 1e-9


def test_homological_invariance(rot_end):
    for S in (T1, T2, T3, R):
        ctx = NoetherContext(rot_end.space, 0.5, rot_end.surface, S)
        assert homological_invariance(ctx, list(rot_end.cycles)) < 1e-8


def test_wrong_mean_curvature_breaks_invariance(rot_end):
    ctx = NoetherContext(rot_end.space, -0.5, rot_end.surface, T3)
    assert homological_invariance(ctx, list(rot_end.cycles)) > 1.0


def test_orientation_reversal_flips_sign(vertical):
    ctx = NoetherContext(vertical.space, 0.0, vertical.surface, T3)
    c = vertical.cycles[0]
    assert flux(ctx, c.reversed()) == -flux(ctx, c)


def test_gauge_independence(rot_end):
    # F + grad(phi) has the same curl; the flux around a closed cycle is unchanged
    sp = rot_end.space

    def grad_phi(p):
        # phi = x1 x3 + sin(x2); gradient in coordinates is g^{-1} dphi
        from noetherflux.geometry import metric_at
        d = np.stack([p[..., 2], np.cos(p[..., 1]), p[..., 0]], -1)
        return np.linalg.solve(metric_at(sp, p), d[..., None])[..., 0]

    for S in (T1, T3, R):
        base = NoetherContext(sp, 0.5, rot_end.surface, S)
        gauged = NoetherContext(sp, 0.5, rot_end.surface, S, potential=lambda p, S=S:
                                potential_vector(sp, S, p, basis="coordinate") + grad_phi(p))
        c = rot_end.cycles[1]
        assert flux(gauged, c) == pytest.approx(flux(base, c), abs=1e-10)


def test_doubling_converges(vertical):
    ctx = NoetherContext(vertical.space, 0.0, vertical.surface, T3)
    c = vertical.cycles[2].with_samples(64)
    assert flux(ctx, c, converge_tol=1e-10) == pytest.approx(2 * np.pi * 1.5, abs=1e-9)


def test_non_convergence_raises(vertical):
    ctx = NoetherContext(vertical.space, 0.0, vertical.surface, T3)
    with pytest.raises(NonConvergent):
        flux(ctx, vertical.cycles[0].with_samples(8), converge_tol=0.0, n_max=64)


def test_determinism(vertical):
    c = vertical.cycles[1]
    a = flux_report(vertical.space, 0.0, vertical.surface, c).as_dict()
    b = flux_report(vertical.space, 0.0, vertical.surface, c).as_dict()
    assert a == b


def test_sol3_rejects_rotation():
    case = build_family("sol3_plane")
    with pytest.raises(InvalidSymmetry):
        NoetherContext(case.space, 0.0, case.surface, R)
    r = flux_report(case.space, 0.0, case.surface, case.cycles[0])
    assert r.sigmaR is None
    with pytest.raises(MissingBaseFlux):
        r.get(R)
    assert "sigmaR" not in r.as_dict()


def test_line_integral_of_exact_form_vanishes(vertical):
    def grad_x3(p):
        from noetherflux.geometry import metric_at
        d = np.zeros_like(p)
        d[..., 2] = 1.0
        return np.linalg.solve(metric_at(vertical.space, p), d[..., None])[..., 0]

    assert abs(line_integral(vertical.space, vertical.surface, grad_x3, vertical.cycles[0])) < 1e-12


def test_cycle_closure(vertical):
    line = Cycle.param_line("u", 0.5, 0.0, 2 * np.pi)
    assert line.closure_defect() == pytest.approx(2 * np.pi)
    assert line.closure_defect(vertical.surface) < 1e-12
    open_arc = Cycle.param_line("u", 0.5, 0.0, 3.0)
    assert open_arc.closure_defect(vertical.surface) > 0.1
    assert Cycle.circle((0, 0), 1.0).closure_defect() < 1e-15
    with pytest.raises(ValueError):
        Cycle.param_line("w", 0.0, 0.0, 1.0)


@pytest.mark.parametrize("acting, t", [(T1, 0.3), (T2, -0.4), (R, 0.7), (T3, 1.2)])
def test_table_predicts_moved_fluxes(vertical, acting, t):
    sp = vertical.space
    c = vertical.cycles[1]
    base = flux_report(sp, 0.0, vertical.surface, c)
    moved = pushforward_surface(vertical.surface, IsometryAction(sp, acting, t))
    for target in (T1, T2, T3, R):
        pred = transformation_table_predict(sp, target, IsometryAction(sp, acting, t), base)
        # the form of `target` on the moved surface, integrated over the same cycle
        assert flux(NoetherContext(sp, 0.0, moved, target), c) == pytest.approx(pred, abs=1e-7)


def test_tables_pointwise_on_minimal_part(rot_end):
    d = pointwise_row_defects(rot_end.space, rot_end.surface, rot_end.cycles[0], m=64)
    assert np.max(np.abs(_flatten(d))) < 1e-7


def test_tau_zero_mu3_row_is_pointwise_only(rot_end):
    sp = rot_end.space
    assert table_branch(sp) == "E3_tau_zero"
    assert TABLES["E3_tau_zero"][(T3, T1)] is None
    with pytest.raises(TableRowUnavailable):
        transformation_table_predict(sp, T3, IsometryAction(sp, T1, 0.1), {T3: 1.0})


def test_cmc_rule_derived_holds(rot_end):
    d = cmc_rule_defects(rot_end.space, rot_end.surface, rot_end.cycles[0], m=64)
    assert np.max(np.abs(_flatten(d))) < 1e-7


def test_cmc_rule_displayed_misses_a_factor(rot_end):
    # the numerator-free weight is off by exactly -kappa' t^2 mu3'/|.|^2
    sp, s, c = rot_end.space, rot_end.surface, rot_end.cycles[0]
    disp = cmc_rule_defects(sp, s, c, times=(0.5,), rule="displayed", m=64)
    assert np.max(np.abs(disp[(T1, 0.5)])) > 1e-3
    assert np.max(np.abs(disp[(R, 0.5)])) < 1e-7


def test_cmc_rule_needs_tau_zero():
    sp = AmbientSpace.nil3()
    with pytest.raises(TableRowUnavailable):
        cmc_part_prediction(sp, IsometryAction(sp, T1, 0.1), np.zeros(3), 0.0, 0.0, 0.0)


def test_missing_base_flux():
    sp = AmbientSpace.nil3()
    with pytest.raises(MissingBaseFlux):
        transformation_table_predict(sp, T1, IsometryAction(sp, T2, 0.2), {T1: 1.0})


def test_vanishing_relations():
    nil = AmbientSpace.nil3()
    rels = vanishing_by_symmetry(nil, None, T1)
    assert [str(r) for r in rels] == ["mu_2 = 0", "mu_3 = 0"]
    e = AmbientSpace.e3(1.0, 0.25)
    rel = vanishing_by_symmetry(e, None, T2)[1]
    assert rel.evaluate({T1: 0.0, R: 0.5, T3: -1.0}) == pytest.approx(0.0)
    assert vanishing_by_symmetry(e, None, T3) == []
    assert len(vanishing_by_symmetry(AmbientSpace.sol3(), None, T3)) == 2
    assert Relation(((1.0, T1),)).evaluate(FluxReport(2.0, 0, 0, None, 1)) == 2.0


def test_vertical_cycle_name():
    assert vertical_catenoid_cycle(0.7).name == "{x3=0.7}"
