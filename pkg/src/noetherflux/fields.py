"""Killing fields, potential vectors, volume field and isometry families."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import InvalidSymmetry, PointOutsideDomain
from .geometry import (
    DEFAULT_STEP,
    AmbientSpace,
    Basis,
    coords_to_frame,
    covariant_derivative,
    frame_to_coords,
    inner_coords,
    metric_at,
)


class SymmetryId(enum.Enum):
    T1 = "Translation1"
    T2 = "Translation2"
    T3 = "Translation3"
    R = "Rotation"

    @classmethod
    def parse(cls, name: str) -> "SymmetryId":
        key = str(name).strip()
        aliases = {"1": cls.T1, "2": cls.T2, "3": cls.T3, "R": cls.R,
                   "T1": cls.T1, "T2": cls.T2, "T3": cls.T3}
        if key in aliases:
            return aliases[key]
        for member in cls:
            if member.value.lower() == key.lower():
                return member
        raise InvalidSymmetry(f"unknown symmetry {name!r}")

    @property
    def short(self) -> str:
        return {"T1": "1", "T2": "2", "T3": "3", "R": "R"}[self.name]


def symmetries(space: AmbientSpace) -> list[SymmetryId]:
    if space.is_sol3:
        return [SymmetryId.T1, SymmetryId.T2, SymmetryId.T3]
    return list(SymmetryId)


def check_symmetry(space: AmbientSpace, which: SymmetryId) -> SymmetryId:
    which = SymmetryId(which) if not isinstance(which, SymmetryId) else which
    if space.is_sol3 and which is SymmetryId.R:
        raise InvalidSymmetry(
            "Sol3 has no rotation: its isometry group is of dimension 3"
        )
    return which


def _stack(*cols):
    return np.stack(np.broadcast_arrays(*cols), axis=-1)


def killing_field(space: AmbientSpace, which: SymmetryId, p) -> np.ndarray:
    """Infinitesimal generator ``S_i`` at ``p``, coordinate components."""
    which = check_symmetry(space, which)
    p = space.check_domain(p)
    x1, x2 = p[..., 0], p[..., 1]
    one, zero = np.ones_like(x1), np.zeros_like(x1)
    if space.is_sol3:
        if which is SymmetryId.T1:
            return _stack(one, zero, zero)
        if which is SymmetryId.T2:
            return _stack(zero, one, zero)
        return _stack(-x1, x2, one)
    kp, tau = space.kappa_prime, space.tau
    if which is SymmetryId.T1:
        return _stack(1 + kp * (x1**2 - x2**2), 2 * kp * x1 * x2, tau * x2)
    if which is SymmetryId.T2:
        return _stack(2 * kp * x1 * x2, 1 - kp * (x1**2 - x2**2), -tau * x1)
    if which is SymmetryId.T3:
        return _stack(zero, zero, one)
    return _stack(-x2, x1, zero)


def _horizontal(space, which, p):
    sf = coords_to_frame(space, p, killing_field(space, which, p))
    sf[..., 2] = 0.0
    return sf


def potential_vector(space: AmbientSpace, which: SymmetryId, p,
                     basis: Basis = "frame") -> np.ndarray:
    """A field ``F`` with ``curl F = S_i``; frame components by default.

    The case split on (kappa, tau) is explicit.  For kappa != 0 the factor
    ``1/sigma`` is ``2 tau / kappa``, which vanishes when tau = 0.
    """
    which = check_symmetry(space, which)
    p = space.check_domain(p)
    x1, x2, x3 = p[..., 0], p[..., 1], p[..., 2]
    zero = np.zeros_like(x1)
    if space.is_sol3:
        if which is SymmetryId.T1:
            F = _stack(zero, zero, x2)
        elif which is SymmetryId.T2:
            F = _stack(zero, zero, -x1)
        else:
            F = _stack(-x2 * np.exp(-x3) / 2, x1 * np.exp(x3) / 2, -x1 * x2)
    elif which is SymmetryId.T3:
        if space.tau != 0.0:
            F = _stack(zero, zero, np.full_like(x1, -1.0 / (2 * space.tau)))
        else:
            F = _stack(-x2 / 2, x1 / 2, zero)
    elif space.kappa != 0.0:
        lam = space.lam(p)
        vertical = {
            SymmetryId.T1: lam * x2,
            SymmetryId.T2: -lam * x1,
            SymmetryId.R: lam / (2 * space.kappa_prime),
        }[which]
        F = space.inv_sigma * _horizontal(space, which, p)
        F[..., 2] = vertical
    else:
        tau = space.tau
        if which is SymmetryId.T1:
            F = _stack(zero, tau * x1 * x2 - x3, zero)
        elif which is SymmetryId.T2:
            F = _stack(tau * x1 * x2 + x3, zero, zero)
        else:
            F = _stack(x1 * x3, x2 * x3, zero)
    if basis == "frame":
        return F
    return frame_to_coords(space, p, F)


def volume_field(space: AmbientSpace, p) -> np.ndarray:
    """``x3 E3`` in coordinates (E3 = d/dx3 in every model used here)."""
    p = space.check_domain(p)
    out = np.zeros_like(p)
    out[..., 2] = p[..., 2]
    return out


# ---------------------------------------------------------------------------
# isometries


def isometry_apply(space: AmbientSpace, which: SymmetryId, t: float, p) -> np.ndarray:
    which = check_symmetry(space, which)
    p = space.check_domain(p)
    x1, x2, x3 = p[..., 0], p[..., 1], p[..., 2]
    if space.is_sol3:
        if which is SymmetryId.T1:
            return _stack(x1 + t, x2, x3)
        if which is SymmetryId.T2:
            return _stack(x1, x2 + t, x3)
        return _stack(np.exp(-t) * x1, np.exp(t) * x2, x3 + t)
    if which is SymmetryId.T3:
        return _stack(x1, x2, x3 + t)
    if which is SymmetryId.R:
        c, s = np.cos(t), np.sin(t)
        return _stack(c * x1 - s * x2, s * x1 + c * x2, x3)

    kp, tau, kappa = space.kappa_prime, space.tau, space.kappa
    w = x1 + 1j * x2
    if which is SymmetryId.T1:
        den = 1 - kp * t * w
        w_new = (t + w) / den
        if kappa == 0.0:
            x3_new = x3 + tau * t * x2
        else:
            x3_new = x3 + (8 * tau / kappa) * np.arctan(
                kp * t * x2 / (1 - kp * t * x1 + np.abs(den)))
    else:
        den = 1 + 1j * kp * t * w
        w_new = (1j * t + w) / den
        if kappa == 0.0:
            x3_new = x3 - tau * t * x1
        else:
            x3_new = x3 - (8 * tau / kappa) * np.arctan(
                kp * t * x1 / (1 - kp * t * x2 + np.abs(den)))
    out = _stack(w_new.real, w_new.imag, x3_new)
    if not np.all(space.contains(out)):
        raise PointOutsideDomain("isometry image left the chart domain")
    return out


def compose_parameters(space: AmbientSpace, which: SymmetryId, t: float, s: float) -> float:
    """Parameter ``r`` with ``S(t) o S(s) = S(r)``.

    The horizontal translations of E3(kappa, tau) are parametrized so that
    their parameters add like velocities, ``(t + s)/(1 - kappa' t s)``; every
    other family is additive.
    """
    which = check_symmetry(space, which)
    if (not space.is_sol3 and space.kappa != 0.0
            and which in (SymmetryId.T1, SymmetryId.T2)):
        return (t + s) / (1 - space.kappa_prime * t * s)
    return t + s


def isometry_jacobian(space: AmbientSpace, which: SymmetryId, t: float, p,
                      h: float = DEFAULT_STEP) -> np.ndarray:
    """Numerical Jacobian ``J[..., i, j] = d(S(t))^i / dx^j``."""
    p = space.check_domain(p)
    cols = []
    for j in range(3):
        e = np.eye(3)[j]
        cols.append((isometry_apply(space, which, t, p + h * e)
                     - isometry_apply(space, which, t, p - h * e)) / (2 * h))
    return np.stack(cols, axis=-1)


def isometry_differential(space: AmbientSpace, which: SymmetryId, t: float, p, v,
                          h: float = DEFAULT_STEP) -> np.ndarray:
    """Push the coordinate vector ``v`` at ``p`` forward by ``dS(t)``."""
    J = isometry_jacobian(space, which, t, p, h)
    return np.einsum("...ij,...j->...i", J, np.asarray(v, dtype=float))


def inverse_differential(space: AmbientSpace, which: SymmetryId, t: float, q, v,
                         h: float = DEFAULT_STEP) -> np.ndarray:
    """``dS(t)^{-1} v`` for ``v`` based at the image point ``q``.

    ``S(t)^{-1} = S(-t)`` for every family, so this is ``dS(-t)`` at ``q``.
    """
    return isometry_differential(space, which, -t, q, v, h)


@dataclass(frozen=True)
class IsometryAction:
    space: AmbientSpace
    which: SymmetryId
    t: float

    def __post_init__(self):
        check_symmetry(self.space, self.which)

    def apply(self, p) -> np.ndarray:
        return isometry_apply(self.space, self.which, self.t, p)

    def differential(self, p, v, h: float = DEFAULT_STEP) -> np.ndarray:
        return isometry_differential(self.space, self.which, self.t, p, v, h)

    def inverse(self) -> "IsometryAction":
        return IsometryAction(self.space, self.which, -self.t)


def group_law_check(space: AmbientSpace, which: SymmetryId, t: float, s: float,
                    points) -> float:
    points = np.atleast_2d(np.asarray(points, dtype=float))
    if points.size == 0:
        return 0.0
    lhs = isometry_apply(space, which, t, isometry_apply(space, which, s, points))
    rhs = isometry_apply(space, which, compose_parameters(space, which, t, s), points)
    return float(np.max(np.abs(lhs - rhs)))


def pullback_metric_defect(space: AmbientSpace, which: SymmetryId, t: float, p,
                           h: float = DEFAULT_STEP) -> float:
    """``max |J^T g(S p) J - g(p)|``: zero exactly for an isometry."""
    p = space.check_domain(p)
    J = isometry_jacobian(space, which, t, p, h)
    g_img = metric_at(space, isometry_apply(space, which, t, p))
    pulled = np.einsum("...ki,...kl,...lj->...ij", J, g_img, J)
    return float(np.max(np.abs(pulled - metric_at(space, p))))


def flow_defect(space: AmbientSpace, which: SymmetryId, p, h: float = 1e-5) -> float:
    """``max |d/dt S(t)(p) at 0 - S_i(p)|`` by a central difference in t."""
    p = space.check_domain(p)
    velocity = (isometry_apply(space, which, h, p) - isometry_apply(space, which, -h, p)) / (2 * h)
    return float(np.max(np.abs(velocity - killing_field(space, which, p))))


def killing_defect(space: AmbientSpace, X, p, u, v, h: float = DEFAULT_STEP) -> np.ndarray:
    """``<nabla_u X, v> + <nabla_v X, u>`` for a coordinate field callable X."""
    du = covariant_derivative(space, X, p, u, h)
    dv = covariant_derivative(space, X, p, v, h)
    return inner_coords(space, p, du, v) + inner_coords(space, p, dv, u)


__all__ = [
    "SymmetryId", "symmetries", "check_symmetry", "killing_field",
    "potential_vector", "volume_field", "isometry_apply", "compose_parameters",
    "isometry_jacobian", "isometry_differential", "inverse_differential",
    "IsometryAction", "group_law_check", "pullback_metric_defect",
    "flow_defect", "killing_defect",
]
