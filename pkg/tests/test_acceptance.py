"""Acceptance criteria, one printed PASS/FAIL/BLOCKED line each.

Run under pytest (``pytest tests/test_acceptance.py -s``) or directly as a
script (``python tests/test_acceptance.py``).
"""

from __future__ import annotations

import sys
from dataclasses import dataclass

import numpy as np
import pytest

from noetherflux.errors import NoBracket
from noetherflux.families import (
    catenoid_profile,
    dh_theta_scan,
    dh_theta_solve,
    h2r_rotational_end,
    horizontal_catenoid_cycle,
    nil_horizontal_catenoid,
    nil_vertical_catenoid,
    rotational_end_cycle,
    sol3_horizontal_plane,
    vertical_catenoid_cycle,
)
from noetherflux.fields import (
    IsometryAction,
    SymmetryId,
    killing_defect,
    killing_field,
    potential_vector,
    symmetries,
    volume_field,
)
from noetherflux.geometry import coords_to_frame, curl_frame, divergence, frame_matrix, metric_at
from noetherflux.noether import Cycle, NoetherContext, flux, flux_report
from noetherflux.surface import pushforward_surface
from noetherflux.verify import (
    DEFAULT_SPACES,
    _flatten,
    all_passed,
    cmc_rule_defects,
    mis_signed_potential,
    non_killing_field,
    sample_points,
    suite_fields,
    suite_geometry,
    table_row_defects,
)

T1, T2, T3, R = SymmetryId.T1, SymmetryId.T2, SymmetryId.T3, SymmetryId.R
SEED = 0
TIMES = (0.1, 0.5, 1.0)


@dataclass
class Outcome:
    label: str
    status: str
    detail: str

    @property
    def line(self) -> str:
        return f"{self.status:<8}{self.label}: {self.detail}"


def _judge(label, checks, blocked=None) -> Outcome:
    """``checks`` is a list of (name, max_error, tolerance)."""
    if blocked:
        return Outcome(label, "BLOCKED", blocked)
    bad = [(n, e, t) for n, e, t in checks if not (e < t)]
    parts = [f"{n}={e:.2e} (tol {t:.0e})" for n, e, t in (bad or checks)]
    return Outcome(label, "FAIL" if bad else "PASS", "; ".join(parts))


def _max(x) -> float:
    x = np.abs(np.asarray(x, dtype=float))
    return float(np.max(x)) if x.size else 0.0


# ---------------------------------------------------------------------------
# criteria


def criterion_1() -> Outcome:
    levels = (-1.0, 0.0, 0.7, 2.0)
    rel, other, pointwise = [], [], []
    for a in (0.5, 1.0, 2.0):
        s = nil_vertical_catenoid(a)
        prof = s.info["profile"]
        for t in levels:
            rep = flux_report(s.space, 0.0, s, vertical_catenoid_cycle(t))
            rel.append((rep.sigma3 - 2 * np.pi * a) / (2 * np.pi * a))
            other.extend([rep.sigma1, rep.sigma2, rep.sigmaR])
            f, ft = prof(np.array(t))
            pointwise.append(rep.sigma3 - 2 * np.pi * 2 * f / np.sqrt(4 + ft**2 * (4 + f**2)))
    return _judge("1 vertical catenoid sigma3 = 2 pi a",
                  [("sigma3_rel", _max(rel), 1e-6), ("sigma1,2,R", _max(other), 1e-8),
                   ("pointwise", _max(pointwise), 1e-8)])


def criterion_2() -> Outcome:
    checks = []
    s3, other, drift = [], [], []
    for beta in (0.5, 1.0, 2.0):
        s = h2r_rotational_end(beta)
        lo, hi = s.u_range
        expected = 2 * np.pi * (1 - beta)
        base = None
        for r in np.linspace(lo, hi, 5)[1:-1]:
            rep = flux_report(s.space, 0.5, s, rotational_end_cycle(r))
            base = base or rep
            err = rep.sigma3 - expected
            s3.append((err / abs(expected), 1e-5) if expected else (err, 1e-6))
            other.extend([rep.sigma1, rep.sigma2, rep.sigmaR])
        c = rotational_end_cycle(np.linspace(lo, hi, 5)[1])
        for which, t in ((T1, 0.4), (T3, 1.0)):
            moved = pushforward_surface(s, IsometryAction(s.space, which, t))
            rep = flux_report(s.space, 0.5, moved, c)
            drift.extend(rep.values()[k] - base.values()[k] for k in base.values())
    worst = max(s3, key=lambda e: abs(e[0]) / e[1])
    checks.append(("sigma3", abs(worst[0]), worst[1]))
    checks.append(("sigma1,2,R", _max(other), 1e-7))
    checks.append(("pushforward", _max(drift), 1e-6))
    return _judge("2 H2xR rotational ends sigma3 = 2 pi (1 - beta)", checks)


def criterion_3() -> Outcome:
    other, spread, rel = [], [], []
    for alpha in (0.5, 1.0):
        try:
            dh_theta_solve(alpha)
        except NoBracket as exc:
            grid, vals = dh_theta_scan(alpha)
            curve = ", ".join(f"({g:.3f}, {v:.2e})" for g, v in zip(grid, vals))
            return _judge("3 horizontal catenoid", [],
                          blocked=f"alpha={alpha}: {exc}; residual curve {curve}")
        s, data = nil_horizontal_catenoid(alpha)
        s2 = []
        for t in (0.0, 0.5):
            rep = flux_report(s.space, 0.0, s, horizontal_catenoid_cycle(data, t))
            other.extend([rep.sigma1, rep.sigma3, rep.sigmaR])
            s2.append(rep.sigma2)
        closed = data.cos2theta / (alpha * data.C) * float(data.state(data.U)[2]) \
            - 2 * data.C * data.U
        spread.append(max(s2) - min(s2))
        rel.extend((np.array(s2) - closed) / abs(closed))
    return _judge("3 horizontal catenoid sigma2 closed form",
                  [("sigma1,3,R", _max(other), 1e-5), ("sigma2_spread", _max(spread), 1e-5),
                   ("sigma2_rel", _max(rel), 1e-4)])


def _identity_errors(space, potentials=None):
    rng = np.random.default_rng(SEED)
    p = sample_points(space, rng, 50)
    u, v = rng.normal(size=(2, 50, 3))
    curl, kill = [], []
    for S in symmetries(space):
        F = (potentials or {}).get(S) or (lambda q, S=S: potential_vector(space, S, q))
        target = coords_to_frame(space, p, killing_field(space, S, p))
        curl.append(_max(curl_frame(space, F, p) - target))
        kill.append(_max(killing_defect(space, lambda q, S=S: killing_field(space, S, q),
                                        p, u, v)))
    div = _max(divergence(space, lambda q: volume_field(space, q), p, richardson=True) - 1)
    E = frame_matrix(space, p)
    gram = _max(np.einsum("...ki,...kl,...lj->...ij", E, metric_at(space, p), E) - np.eye(3))
    return max(curl), max(kill), div, gram


def criterion_4(potentials_for=None) -> Outcome:
    errs = np.array([_identity_errors(sp, (potentials_for or {}).get(sp))
                     for sp in DEFAULT_SPACES])
    return _judge("4 identity suite (curl F = S, Killing, div Xi = 1, Gram)",
                  [("curl", errs[:, 0].max(), 1e-5), ("killing", errs[:, 1].max(), 1e-5),
                   ("div_volume", errs[:, 2].max(), 1e-8), ("gram", errs[:, 3].max(), 1e-10)])


def _table_cases():
    yield "vertical_catenoid", nil_vertical_catenoid(1.0), 0.0, vertical_catenoid_cycle(0.7)
    s, data = nil_horizontal_catenoid(1.0)
    yield "horizontal_catenoid", s, 0.0, horizontal_catenoid_cycle(data, 0.0)
    s = h2r_rotational_end(0.5)
    yield "rotational_end", s, 0.5, rotational_end_cycle(0.7)
    yield "sol3_plane", sol3_horizontal_plane(), 0.0, Cycle.circle((0.2, -0.1), 0.7)


def criterion_5(rule="derived") -> Outcome:
    rows, mu3 = [], []
    for name, s, H, c in _table_cases():
        if rule == "derived":
            rows.append(_max(_flatten(table_row_defects(s.space, H, s, c, TIMES))))
        if s.space.tau == 0.0 and not s.space.is_sol3:
            mu3.append(_max(_flatten(cmc_rule_defects(s.space, s, c, TIMES, rule=rule))))
    if rule == "displayed":
        return _judge("5b tau = 0 mu3' rule as displayed (no 1 - kappa' t^2 numerator)",
                      [("mu3_pointwise", max(mu3), 1e-6)])
    return _judge("5 transformation tables",
                  [("homology_rows", max(rows), 1e-6), ("mu3_pointwise_derived", max(mu3), 1e-6)])


def criterion_6() -> Outcome:
    s = sol3_horizontal_plane()
    sol = []
    for c in (Cycle.circle((0.2, -0.1), 0.7), Cycle.circle((-0.5, 0.4), 1.0)):
        rep = flux_report(s.space, 0.0, s, c)
        sol.extend([rep.sigma1, rep.sigma2])
    cat = []
    s = nil_vertical_catenoid(1.0)
    for t in (-1.0, 0.0, 0.7, 2.0):
        rep = flux_report(s.space, 0.0, s, vertical_catenoid_cycle(t))
        cat.extend([rep.sigma1, rep.sigma2])
    return _judge("6 vanishing by symmetry",
                  [("sol3_plane_mu1_mu2", _max(sol), 1e-8), ("catenoid_sigma1_2", _max(cat), 1e-8)])


def criterion_7() -> Outcome:
    doubling = []
    for name, s, H, c in _table_cases():
        a = flux_report(s.space, H, s, c, n=1024).values()
        b = flux_report(s.space, H, s, c, n=2048).values()
        doubling.extend(a[k] - b[k] for k in a)
    ode = []
    for a in (0.5, 1.0, 2.0):
        tight, loose = nil_vertical_catenoid(a, tol=1e-12), nil_vertical_catenoid(a, tol=1e-10)
        for t in (-1.0, 0.0, 0.7, 2.0):
            c = vertical_catenoid_cycle(t)
            ode.append(flux(NoetherContext(tight.space, 0.0, tight, T3), c)
                       - flux(NoetherContext(loose.space, 0.0, loose, T3), c))
    return _judge("7 numerical robustness",
                  [("doubling_1024_2048", _max(doubling), 1e-9),
                   ("ode_tol_1e-12_1e-10", _max(ode), 1e-7)])


def criterion_8() -> Outcome:
    failures = {}
    for sp in DEFAULT_SPACES:
        twice = lambda p, sp=sp: 2 * volume_field(sp, p)  # noqa: E731
        failures.setdefault("corrupted_volume", []).append(
            not all_passed(suite_geometry(sp, SEED, 50, volume=twice)))
        failures.setdefault("non_killing", []).append(
            not all_passed(suite_fields(sp, SEED, 50, killing={T1: non_killing_field(sp)})))
    mis = {sp: {S: mis_signed_potential(sp, S) for S in symmetries(sp)} for sp in DEFAULT_SPACES}
    failures["mis_signed_potential"] = [criterion_4(mis).status == "FAIL"]
    caught = {k: all(v) for k, v in failures.items()}
    status = "PASS" if all(caught.values()) else "FAIL"
    detail = "; ".join(f"{k} {'rejected' if v else 'NOT rejected'}" for k, v in caught.items())
    return Outcome("8 negative controls", status, detail)


CRITERIA = (criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
            criterion_7, criterion_8)


# ---------------------------------------------------------------------------
# pytest entry points


def _report(capsys, outcome: Outcome):
    with capsys.disabled():
        print("\n" + outcome.line)
    return outcome


@pytest.mark.parametrize("criterion", CRITERIA, ids=lambda f: f.__name__)
def test_criterion(criterion, capsys):
    outcome = _report(capsys, criterion())
    assert outcome.status == "PASS", outcome.line


@pytest.mark.xfail(strict=True, reason="the numerator-free tau = 0 mu3' rule lacks the "
                   "(1 - kappa' t^2) numerator; its pointwise defect is exactly "
                   "-kappa' t^2 mu3'/|1 - kappa' t w|^2")
def test_criterion_5_displayed_rule(capsys):
    outcome = _report(capsys, criterion_5("displayed"))
    assert outcome.status == "PASS", outcome.line


if __name__ == "__main__":
    outcomes = [c() for c in CRITERIA] + [criterion_5("displayed")]
    for o in outcomes:
        print(o.line)
    sys.exit(0 if all(o.status == "PASS" for o in outcomes[:-1]) else 1)
