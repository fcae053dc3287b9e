"""Parametrized surface patches and their first/second order invariants."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Callable, Optional

import numpy as np

from .errors import DegenerateImmersion, ParamOutsideDomain
from .fields import IsometryAction
from .geometry import (
    AmbientSpace,
    christoffel_at,
    cross_coords,
    inner_coords,
)

Chart = Callable[[np.ndarray, np.ndarray], np.ndarray]
Partials = Callable[[np.ndarray, np.ndarray], tuple[np.ndarray, np.ndarray]]

IMMERSION_EPS = 1e-10


@dataclass(frozen=True)
class SurfacePatch:
    """Immersion ``(u, v) -> M`` on a rectangle, coordinate-basis output.

    ``partials`` may be omitted, in which case first derivatives are central
    differences of ``chart`` with step ``h_first``.  Second derivatives are
    always central differences (of ``partials`` when given) with step
    ``h_second``.  The unit normal is ``f_u x f_v`` normalized, so the order
    of the parameters fixes the orientation.
    """

    space: AmbientSpace
    chart: Chart
    u_range: tuple[float, float]
    v_range: tuple[float, float]
    partials: Optional[Partials] = None
    periodic: tuple[bool, bool] = (False, False)
    H: float = 0.0
    name: str = "surface"
    h_first: float = 1e-6
    h_second: float = 1e-4
    info: dict = field(default_factory=dict, compare=False)

    @property
    def periods(self) -> tuple[float, float]:
        return (self.u_range[1] - self.u_range[0], self.v_range[1] - self.v_range[0])

    def check_params(self, u, v):
        u = np.asarray(u, dtype=float)
        v = np.asarray(v, dtype=float)
        # FD stencils may poke slightly past a closed edge.
        slack = 10 * self.h_second
        for vals, (lo, hi), per, name in ((u, self.u_range, self.periodic[0], "u"),
                                          (v, self.v_range, self.periodic[1], "v")):
            if per:
                continue
            if np.any(vals < lo - slack) or np.any(vals > hi + slack):
                raise ParamOutsideDomain(
                    f"{name} outside [{lo}, {hi}] on patch {self.name!r}")
        return u, v

    def point(self, u, v) -> np.ndarray:
        u, v = self.check_params(u, v)
        return np.asarray(self.chart(u, v), dtype=float)

    def tangents(self, u, v) -> tuple[np.ndarray, np.ndarray]:
        u, v = self.check_params(u, v)
        if self.partials is not None:
            fu, fv = self.partials(u, v)
            return np.asarray(fu, dtype=float), np.asarray(fv, dtype=float)
        h = self.h_first
        fu = (self.chart(u + h, v) - self.chart(u - h, v)) / (2 * h)
        fv = (self.chart(u, v + h) - self.chart(u, v - h)) / (2 * h)
        return fu, fv

    def second_partials(self, u, v):
        u, v = self.check_params(u, v)
        h = self.h_second
        if self.partials is not None:
            fu_p, fv_p = self.partials(u + h, v)
            fu_m, fv_m = self.partials(u - h, v)
            gu_p, gv_p = self.partials(u, v + h)
            gu_m, gv_m = self.partials(u, v - h)
            fuu = (fu_p - fu_m) / (2 * h)
            fvv = (gv_p - gv_m) / (2 * h)
            fuv = 0.5 * ((fv_p - fv_m) + (gu_p - gu_m)) / (2 * h)
            return fuu, fuv, fvv
        c = self.chart
        f0 = c(u, v)
        fuu = (c(u + h, v) - 2 * f0 + c(u - h, v)) / h**2
        fvv = (c(u, v + h) - 2 * f0 + c(u, v - h)) / h**2
        fuv = (c(u + h, v + h) - c(u + h, v - h) - c(u - h, v + h) + c(u - h, v - h)) / (4 * h * h)
        return fuu, fuv, fvv

    def with_info(self, **kwargs) -> "SurfacePatch":
        return replace(self, info={**self.info, **kwargs})


def _split(uv):
    u, v = uv
    return np.asarray(u, dtype=float), np.asarray(v, dtype=float)


def differential(s: SurfacePatch, uv, w) -> np.ndarray:
    """``w1 f_u + w2 f_v`` at ``chart(u, v)``, coordinate components."""
    u, v = _split(uv)
    fu, fv = s.tangents(u, v)
    w = np.asarray(w, dtype=float)
    return w[..., 0, None] * fu + w[..., 1, None] * fv


def _normal_from(s: SurfacePatch, p, fu, fv) -> np.ndarray:
    n = cross_coords(s.space, p, fu, fv)
    norm = np.sqrt(inner_coords(s.space, p, n, n))
    if np.any(norm <= IMMERSION_EPS):
        raise DegenerateImmersion(f"|f_u x f_v| vanishes on patch {s.name!r}")
    return n / norm[..., None]


def unit_normal(s: SurfacePatch, uv) -> np.ndarray:
    u, v = _split(uv)
    p = s.point(u, v)
    fu, fv = s.tangents(u, v)
    return _normal_from(s, p, fu, fv)


def area_element(s: SurfacePatch, uv) -> np.ndarray:
    u, v = _split(uv)
    p = s.point(u, v)
    fu, fv = s.tangents(u, v)
    n = cross_coords(s.space, p, fu, fv)
    return np.sqrt(inner_coords(s.space, p, n, n))


def star_df(s: SurfacePatch, uv, w) -> np.ndarray:
    """Quarter turn of ``df(w)``: ``df(w) x N``, so ``*df(e1) = -e2``."""
    u, v = _split(uv)
    p = s.point(u, v)
    fu, fv = s.tangents(u, v)
    n = _normal_from(s, p, fu, fv)
    w = np.asarray(w, dtype=float)
    dfw = w[..., 0, None] * fu + w[..., 1, None] * fv
    return cross_coords(s.space, p, dfw, n)


def mean_curvature(s: SurfacePatch, uv, h_christoffel: float = 1e-5) -> np.ndarray:
    """Half the trace of ``II_ij = <D_i f_j, N>`` in the induced metric.

    With this sign, ``H > 0`` when the surface bends towards ``N``; it is
    the sign for which the Noether form of a CMC-H patch is closed.
    """
    u, v = _split(uv)
    space = s.space
    p = s.point(u, v)
    fu, fv = s.tangents(u, v)
    n = _normal_from(s, p, fu, fv)
    fuu, fuv, fvv = s.second_partials(u, v)
    gamma = christoffel_at(space, p, h_christoffel, richardson=True)

    def cov(a, b, ab):
        return ab + np.einsum("...kij,...i,...j->...k", gamma, a, b)

    L = inner_coords(space, p, cov(fu, fu, fuu), n)
    M = inner_coords(space, p, cov(fu, fv, fuv), n)
    Nn = inner_coords(space, p, cov(fv, fv, fvv), n)
    E = inner_coords(space, p, fu, fu)
    F = inner_coords(space, p, fu, fv)
    G = inner_coords(space, p, fv, fv)
    return 0.5 * (E * Nn - 2 * F * M + G * L) / (E * G - F * F)


def pushforward_surface(s: SurfacePatch, action: IsometryAction,
                        h: float = 1e-5) -> SurfacePatch:
    """``action o s``; partials by the chain rule through the numerical Jacobian."""
    if action.space != s.space:
        raise ValueError("isometry acts on a different space than the patch")

    def chart(u, v):
        return action.apply(s.chart(u, v))

    def partials(u, v):
        p = s.chart(u, v)
        fu, fv = s.tangents(u, v)
        return action.differential(p, fu, h), action.differential(p, fv, h)

    return replace(
        s,
        chart=chart,
        partials=partials,
        name=f"{action.which.short}({action.t:g})*{s.name}",
        info={**s.info, "pushed_by": (action.which.value, action.t)},
    )
