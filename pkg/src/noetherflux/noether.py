"""Noether forms along cycles: flux, torque and their transformation laws.

On a CMC-H patch with unit normal N the Noether form of a Killing field S
with potential F (``curl F = S``) is

    mu_S(w) = <S, *df(w)> - 2H <F, df(w)>,

closed on the surface, so its integral over a cycle depends only on the
homology class.  Fluxes are integrated with the periodic trapezoid rule.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import (
    InvalidSymmetry,
    MissingBaseFlux,
    NonConvergent,
    PotentialUnavailable,
    TableRowUnavailable,
)
from .fields import (
    IsometryAction,
    SymmetryId,
    check_symmetry,
    inverse_differential,
    killing_field,
    potential_vector,
    symmetries,
)
from .geometry import AmbientSpace, cross_coords, inner_coords
from .surface import SurfacePatch, _normal_from

T1, T2, T3, R = SymmetryId.T1, SymmetryId.T2, SymmetryId.T3, SymmetryId.R

DEFAULT_SAMPLES = 2048


@dataclass(frozen=True)
class Cycle:
    """Closed curve ``s in [0, 1) -> (u, v)`` with its velocity ``d(u, v)/ds``."""

    curve: Callable[[np.ndarray], tuple[np.ndarray, np.ndarray]]
    velocity: Callable[[np.ndarray], tuple[np.ndarray, np.ndarray]]
    n: int = DEFAULT_SAMPLES
    orientation: int = 1
    name: str = "cycle"

    @classmethod
    def param_line(cls, fixed: str, value: float, start: float, period: float,
                   n: int = DEFAULT_SAMPLES, orientation: int = 1,
                   name: Optional[str] = None) -> "Cycle":
        """The loop ``{fixed = value}`` sweeping the other parameter once."""
        if fixed not in ("u", "v"):
            raise ValueError("fixed must be 'u' or 'v'")

        def curve(s):
            s = np.asarray(s, dtype=float)
            moving = start + period * s
            const = np.full_like(s, value)
            return (const, moving) if fixed == "u" else (moving, const)

        def velocity(s):
            s = np.asarray(s, dtype=float)
            zero, speed = np.zeros_like(s), np.full_like(s, period)
            return (zero, speed) if fixed == "u" else (speed, zero)

        return cls(curve, velocity, n, orientation, name or f"{{{fixed}={value:g}}}")

    @classmethod
    def circle(cls, center: tuple[float, float], radius: float,
               n: int = DEFAULT_SAMPLES, name: str = "circle") -> "Cycle":
        cu, cv = center
        two_pi = 2 * np.pi

        def curve(s):
            a = two_pi * np.asarray(s, dtype=float)
            return cu + radius * np.cos(a), cv + radius * np.sin(a)

        def velocity(s):
            a = two_pi * np.asarray(s, dtype=float)
            return -two_pi * radius * np.sin(a), two_pi * radius * np.cos(a)

        return cls(curve, velocity, n, 1, name)

    def with_samples(self, n: int) -> "Cycle":
        return Cycle(self.curve, self.velocity, int(n), self.orientation, self.name)

    def reversed(self) -> "Cycle":
        return Cycle(self.curve, self.velocity, self.n, -self.orientation, self.name)

    def nodes(self, n: Optional[int] = None) -> np.ndarray:
        n = self.n if n is None else n
        return np.arange(n) / n

    def closure_defect(self, surface: Optional[SurfacePatch] = None) -> float:
        """Gap between the endpoints, in the ambient chart when ``surface`` is given.

        Parameter lines of a periodic patch close only through the image, so
        pass the surface for them.
        """
        u0, v0 = self.curve(np.array([0.0]))
        u1, v1 = self.curve(np.array([1.0]))
        if surface is None:
            return float(max(abs(u1 - u0)[0], abs(v1 - v0)[0]))
        return float(np.max(np.abs(surface.point(u1, v1) - surface.point(u0, v0))))


@dataclass(frozen=True)
class NoetherContext:
    space: AmbientSpace
    H: float
    surface: SurfacePatch
    symmetry: SymmetryId
    # Optional replacement potential; same signature as potential_vector
    # with coordinate output.  Used to probe gauge independence.
    potential: Optional[Callable[[np.ndarray], np.ndarray]] = None

    def __post_init__(self):
        check_symmetry(self.space, self.symmetry)
        if not np.isfinite(self.H):
            raise ValueError("H must be finite")
        if self.surface.space != self.space:
            raise ValueError("surface lives in a different space")

    def potential_at(self, p) -> np.ndarray:
        if self.potential is not None:
            return self.potential(p)
        try:
            return potential_vector(self.space, self.symmetry, p, basis="coordinate")
        except InvalidSymmetry:
            raise
        except Exception as exc:  # branch formulas that do not apply
            raise PotentialUnavailable(
                f"no potential for {self.symmetry.value} in {self.space.describe()}"
            ) from exc


def _pieces(ctx: NoetherContext, u, v, w):
    s = ctx.surface
    p = s.point(u, v)
    fu, fv = s.tangents(u, v)
    n = _normal_from(s, p, fu, fv)
    w = np.asarray(w, dtype=float)
    dfw = w[..., 0, None] * fu + w[..., 1, None] * fv
    sdf = cross_coords(ctx.space, p, dfw, n)
    return p, dfw, sdf


def noether_form_value(ctx: NoetherContext, uv, w) -> np.ndarray:
    """``<S, *df(w)> - 2H <F, df(w)>``; the potential is skipped when H = 0."""
    u, v = uv
    p, dfw, sdf = _pieces(ctx, u, v, w)
    S = killing_field(ctx.space, ctx.symmetry, p)
    value = inner_coords(ctx.space, p, S, sdf)
    if ctx.H != 0.0:
        value = value - 2 * ctx.H * inner_coords(ctx.space, p, ctx.potential_at(p), dfw)
    return value


def minimal_part(ctx: NoetherContext, uv, w) -> np.ndarray:
    u, v = uv
    p, _, sdf = _pieces(ctx, u, v, w)
    return inner_coords(ctx.space, p, killing_field(ctx.space, ctx.symmetry, p), sdf)


def cmc_part(ctx: NoetherContext, uv, w) -> np.ndarray:
    u, v = uv
    p, dfw, _ = _pieces(ctx, u, v, w)
    return inner_coords(ctx.space, p, ctx.potential_at(p), dfw)


def _line_integral(form, cycle: Cycle, n: int) -> float:
    s = cycle.nodes(n)
    u, v = cycle.curve(s)
    du, dv = cycle.velocity(s)
    w = np.stack([du, dv], axis=-1)
    vals = form((u, v), w)
    # Fixed summation order keeps results bit-for-bit reproducible.
    return cycle.orientation * float(np.sum(vals)) / n


def flux(ctx: NoetherContext, cycle: Cycle, converge_tol: Optional[float] = None,
         n_max: int = 1 << 16) -> float:
    """Trapezoid-rule integral of the Noether form around ``cycle``.

    With ``converge_tol`` the sample count is doubled until two successive
    values agree to that tolerance, raising ``NonConvergent`` past ``n_max``.
    """

    def form(uv, w):
        return noether_form_value(ctx, uv, w)

    n = cycle.n
    value = _line_integral(form, cycle, n)
    if converge_tol is None:
        return value
    while True:
        if 2 * n > n_max:
            raise NonConvergent(
                f"flux on {cycle.name} not converged to {converge_tol:g} at n={n}")
        refined = _line_integral(form, cycle, 2 * n)
        if abs(refined - value) < converge_tol:
            return refined
        n, value = 2 * n, refined


def line_integral(space: AmbientSpace, surface: SurfacePatch, field_fn, cycle: Cycle,
                  n: Optional[int] = None) -> float:
    """``oint <X, df>`` for a coordinate field callable X along a cycle."""

    def form(uv, w):
        u, v = uv
        p = surface.point(u, v)
        fu, fv = surface.tangents(u, v)
        dfw = w[..., 0, None] * fu + w[..., 1, None] * fv
        return inner_coords(space, p, field_fn(p), dfw)

    return _line_integral(form, cycle, cycle.n if n is None else n)


@dataclass(frozen=True)
class FluxReport:
    sigma1: float
    sigma2: float
    sigma3: float
    sigmaR: Optional[float]
    n: int
    cycle: str = "cycle"
    meta: dict = field(default_factory=dict, compare=False)

    def get(self, which: SymmetryId) -> float:
        which = SymmetryId(which) if not isinstance(which, SymmetryId) else which
        value = {T1: self.sigma1, T2: self.sigma2, T3: self.sigma3, R: self.sigmaR}[which]
        if value is None:
            raise MissingBaseFlux(f"report has no {which.value} flux")
        return value

    def as_dict(self) -> dict:
        out = {"cycle": self.cycle, "n": self.n, "sigma1": self.sigma1,
               "sigma2": self.sigma2, "sigma3": self.sigma3}
        if self.sigmaR is not None:
            out["sigmaR"] = self.sigmaR
        return out

    def values(self) -> dict:
        out = {T1: self.sigma1, T2: self.sigma2, T3: self.sigma3}
        if self.sigmaR is not None:
            out[R] = self.sigmaR
        return out


def flux_report(space: AmbientSpace, H: float, surface: SurfacePatch, cycle: Cycle,
                n: Optional[int] = None) -> FluxReport:
    if n is not None:
        cycle = cycle.with_samples(n)
    values = {S: flux(NoetherContext(space, H, surface, S), cycle) for S in symmetries(space)}
    return FluxReport(values[T1], values[T2], values[T3], values.get(R), cycle.n, cycle.name)


def homological_invariance(ctx: NoetherContext, cycles: list[Cycle]) -> float:
    values = [flux(ctx, c) for c in cycles]
    if len(values) < 2:
        return 0.0
    return max(abs(a - b) for a, b in itertools.combinations(values, 2))


def transformed_form_value(ctx: NoetherContext, action: IsometryAction, uv, w,
                           h: float = 1e-5) -> np.ndarray:
    """The form of ``ctx.symmetry`` on ``action o f``, pulled back to ``f``:

    ``<dA^{-1} S(A f), *df> - 2H <dA^{-1} F(A f), df>`` with ``A = action``.
    """
    u, v = uv
    space = ctx.space
    p, dfw, sdf = _pieces(ctx, u, v, w)
    q = action.apply(p)
    S_back = inverse_differential(space, action.which, action.t, q,
                                  killing_field(space, ctx.symmetry, q), h)
    value = inner_coords(space, p, S_back, sdf)
    if ctx.H != 0.0:
        F_back = inverse_differential(space, action.which, action.t, q,
                                      ctx.potential_at(q), h)
        value = value - 2 * ctx.H * inner_coords(space, p, F_back, dfw)
    return value


# ---------------------------------------------------------------------------
# transformation tables
#
# TABLES[branch][(target, acting)] is a list of (coefficient(t, kp, tau), source)
# terms: mu_target(S_acting(t)) = sum coefficient * mu_source.  A value of None
# marks a row that exists only pointwise.


def _q(t, kp, tau):
    return (1 - kp * t * t) / (1 + kp * t * t)


def _one(t, kp, tau):
    return 1.0


def _identity(target):
    return [(_one, target)]


def _e3_table(tau_zero: bool) -> dict:
    rows = {}
    for target in (T1, T2, T3, R):
        for acting in (T1, T2, T3, R):
            rows[(target, acting)] = _identity(target)
    d = lambda t, kp, tau: 1 + kp * t * t  # noqa: E731
    rows[(T1, T2)] = [(_q, T1),
                      (lambda t, kp, tau: 4 * kp * t / d(t, kp, tau), R),
                      (lambda t, kp, tau: 2 * tau * t / d(t, kp, tau), T3)]
    rows[(T1, R)] = [(lambda t, kp, tau: np.cos(t), T1),
                     (lambda t, kp, tau: -np.sin(t), T2)]
    rows[(T2, T1)] = [(_q, T2),
                      (lambda t, kp, tau: -4 * kp * t / d(t, kp, tau), R),
                      (lambda t, kp, tau: -2 * tau * t / d(t, kp, tau), T3)]
    rows[(T2, R)] = [(lambda t, kp, tau: np.cos(t), T2),
                     (lambda t, kp, tau: np.sin(t), T1)]
    rows[(R, T1)] = [(_q, R),
                     (lambda t, kp, tau: t / d(t, kp, tau), T2),
                     (lambda t, kp, tau: -tau * t * t / d(t, kp, tau), T3)]
    rows[(R, T2)] = [(_q, R),
                     (lambda t, kp, tau: -t / d(t, kp, tau), T1),
                     (lambda t, kp, tau: -tau * t * t / d(t, kp, tau), T3)]
    if tau_zero:
        # The tau terms vanish; the CMC part of mu_3 moves with point-dependent
        # weights under the horizontal translations.
        rows[(T3, T1)] = None
        rows[(T3, T2)] = None
    return rows


def _sol3_table() -> dict:
    rows = {}
    for target in (T1, T2, T3):
        for acting in (T1, T2, T3):
            rows[(target, acting)] = _identity(target)
    rows[(T1, T3)] = [(lambda t, kp, tau: np.exp(t), T1)]
    rows[(T2, T3)] = [(lambda t, kp, tau: np.exp(-t), T2)]
    rows[(T3, T1)] = [(_one, T3), (lambda t, kp, tau: -t, T1)]
    rows[(T3, T2)] = [(_one, T3), (lambda t, kp, tau: t, T2)]
    return rows


TABLES = {
    "E3_tau_nonzero": _e3_table(tau_zero=False),
    "E3_tau_zero": _e3_table(tau_zero=True),
    "Sol3": _sol3_table(),
}


def table_branch(space: AmbientSpace) -> str:
    if space.is_sol3:
        return "Sol3"
    return "E3_tau_zero" if space.tau == 0.0 else "E3_tau_nonzero"


def table_row(space: AmbientSpace, target: SymmetryId, acting: SymmetryId):
    check_symmetry(space, target)
    check_symmetry(space, acting)
    return TABLES[table_branch(space)][(target, acting)]


def transformation_table_predict(space: AmbientSpace, symmetry: SymmetryId,
                                 action: IsometryAction, base: FluxReport | dict,
                                 extra: Optional[dict] = None) -> float:
    """Predicted flux of ``symmetry`` on the moved surface, from base fluxes.

    ``base`` is a FluxReport or a mapping SymmetryId -> flux of the unmoved
    surface.  The pointwise-only rows raise ``TableRowUnavailable``; use
    :func:`cmc_part_prediction` for those.
    """
    row = table_row(space, symmetry, action.which)
    if row is None:
        raise TableRowUnavailable(
            f"mu_{symmetry.short} under S_{action.which.short}(t) has no "
            f"homology-level rule when tau = 0")
    total = 0.0
    for coef, source in row:
        c = coef(action.t, space.kappa_prime, space.tau)
        if c == 0.0:
            continue
        try:
            value = base.get(source) if isinstance(base, FluxReport) else base[source]
        except KeyError as exc:
            raise MissingBaseFlux(f"base flux {source.value} missing") from exc
        if value is None:
            raise MissingBaseFlux(f"base flux {source.value} missing")
        total += c * value
    return total


def cmc_part_prediction(space: AmbientSpace, action: IsometryAction, p,
                        mu3_prime, s1_df, s2_df, rule: str = "derived") -> np.ndarray:
    """Pointwise law for ``<F3, df>`` under the isometries of E3(kappa, 0).

    ``mu3_prime``, ``s1_df`` and ``s2_df`` are ``<F3, df(w)>``, ``<S1, df(w)>``
    and ``<S2, df(w)>`` at the points ``p`` of the unmoved surface.

    Pulling ``F3 = (lambda/2) Im(conj(w) dw)`` back through the horizontal
    translation gives the weight ``(1 - kappa' t^2)/|1 - kappa' t w|^2`` on
    ``mu3_prime``; ``rule="displayed"`` drops the numerator and is kept so
    that the numerator-free form stays checkable.
    """
    if space.is_sol3 or space.tau != 0.0:
        raise TableRowUnavailable("pointwise CMC-part rules are for tau = 0 only")
    if rule not in ("derived", "displayed"):
        raise ValueError(f"unknown rule {rule!r}")
    p = np.asarray(p, dtype=float)
    t, kp = action.t, space.kappa_prime
    w = p[..., 0] + 1j * p[..., 1]
    lam = space.lam(p)
    num = 1.0 if rule == "displayed" else 1 - kp * t * t
    if action.which is T1:
        m = np.abs(1 - kp * t * w) ** 2
        return num * mu3_prime / m + t / (2 * lam * m) * s2_df
    if action.which is T2:
        m = np.abs(1 + 1j * kp * t * w) ** 2
        return num * mu3_prime / m - t / (2 * lam * m) * s1_df
    return np.asarray(mu3_prime, dtype=float)


# ---------------------------------------------------------------------------
# vanishing by symmetry


@dataclass(frozen=True)
class Relation:
    """A linear combination of fluxes forced to vanish: ``sum c_i mu_i = 0``."""

    terms: tuple[tuple[float, SymmetryId], ...]

    def evaluate(self, values: FluxReport | dict) -> float:
        get = values.get if isinstance(values, FluxReport) else values.__getitem__
        return float(sum(c * get(s) for c, s in self.terms))

    def __str__(self):
        parts = [f"{c:g}*mu_{s.short}" if c != 1 else f"mu_{s.short}" for c, s in self.terms]
        return " + ".join(parts) + " = 0"


def vanishing_by_symmetry(space: AmbientSpace, surface: Optional[SurfacePatch],
                          invariance: SymmetryId) -> list[Relation]:
    """Fluxes forced to vanish when the surface is invariant under a family.

    The caller asserts the invariance; for the rotation the cycle must also be
    homologous to its rotated image.  Families without a rule give ``[]``.
    """
    invariance = check_symmetry(space, invariance)

    def single(s):
        return Relation(((1.0, s),))

    if space.is_sol3:
        return {T1: [single(T1)], T2: [single(T2)],
                T3: [single(T1), single(T2)]}[invariance]
    if invariance is R:
        return [single(T1), single(T2)]
    if invariance is T3:
        return []
    other = T2 if invariance is T1 else T1
    if space.tau == 0.0:
        return [single(other), single(R)]
    if space.kappa == 0.0:
        return [single(other), single(T3)]
    return [single(other), Relation(((space.kappa, R), (2 * space.tau, T3)))]
