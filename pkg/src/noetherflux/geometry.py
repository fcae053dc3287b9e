"""Metric structure of the homogeneous spaces E3(kappa, tau) and Sol3.

All point-wise functions accept a single point of shape ``(3,)`` or a batch
of shape ``(..., 3)`` and broadcast over the leading axes.  Vector fields are
callables ``X(p) -> (..., 3)``; unless stated otherwise their components are
taken in the coordinate basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Literal

import numpy as np

from .errors import BasePointMismatch, BranchMismatch, PointOutsideDomain

VectorField = Callable[[np.ndarray], np.ndarray]
Basis = Literal["coordinate", "frame"]

DEFAULT_STEP = 1e-5

# Levi-Civita symbol, used for both the cross product and the curl.
_EPS = np.zeros((3, 3, 3))
for _i, _j, _k in [(0, 1, 2), (1, 2, 0), (2, 0, 1)]:
    _EPS[_i, _j, _k] = 1.0
    _EPS[_i, _k, _j] = -1.0


@dataclass(frozen=True)
class AmbientSpace:
    """E3(kappa, tau) in the disc/plane model, or Sol3.

    ``kind`` is ``"E3"`` or ``"Sol3"``.  For Sol3 the curvature parameters are
    fixed to zero and ignored.
    """

    kind: str
    kappa: float = 0.0
    tau: float = 0.0

    def __post_init__(self):
        if self.kind == "E3":
            if self.kappa - 4.0 * self.tau**2 == 0.0:
                raise ValueError("E3(kappa, tau) requires kappa - 4 tau^2 != 0")
        elif self.kind == "Sol3":
            object.__setattr__(self, "kappa", 0.0)
            object.__setattr__(self, "tau", 0.0)
        else:
            raise ValueError(f"unknown space kind {self.kind!r}")

    @classmethod
    def e3(cls, kappa: float, tau: float) -> "AmbientSpace":
        return cls("E3", float(kappa), float(tau))

    @classmethod
    def sol3(cls) -> "AmbientSpace":
        return cls("Sol3")

    @classmethod
    def nil3(cls) -> "AmbientSpace":
        return cls("E3", 0.0, 0.5)

    @classmethod
    def h2xr(cls) -> "AmbientSpace":
        return cls("E3", -1.0, 0.0)

    @property
    def is_sol3(self) -> bool:
        return self.kind == "Sol3"

    @property
    def kappa_prime(self) -> float:
        return self.kappa / 4.0

    @property
    def sigma(self) -> float:
        if self.is_sol3 or self.tau == 0.0:
            raise BranchMismatch("sigma = kappa/(2 tau) needs tau != 0")
        return self.kappa / (2.0 * self.tau)

    @property
    def inv_sigma(self) -> float:
        """``1/sigma = 2 tau / kappa``; finite (zero) when tau = 0."""
        if self.is_sol3 or self.kappa == 0.0:
            raise BranchMismatch("1/sigma = 2 tau/kappa needs kappa != 0")
        return 2.0 * self.tau / self.kappa

    @property
    def domain_radius(self) -> float:
        """Radius of the base disc, ``inf`` when the base is the whole plane."""
        if self.kind == "E3" and self.kappa < 0:
            return 2.0 / np.sqrt(-self.kappa)
        return np.inf

    def lam(self, p) -> np.ndarray:
        """Conformal factor ``1/(1 + kappa' |w|^2)`` of the base."""
        p = np.asarray(p, dtype=float)
        return 1.0 / (1.0 + self.kappa_prime * (p[..., 0] ** 2 + p[..., 1] ** 2))

    def contains(self, p) -> np.ndarray:
        p = np.asarray(p, dtype=float)
        if self.kind == "E3" and self.kappa < 0:
            return p[..., 0] ** 2 + p[..., 1] ** 2 < self.domain_radius**2
        return np.isfinite(p).all(axis=-1)

    def check_domain(self, p) -> np.ndarray:
        p = np.asarray(p, dtype=float)
        if p.shape[-1:] != (3,):
            raise ValueError(f"points must have trailing dimension 3, got {p.shape}")
        if not np.all(self.contains(p)):
            raise PointOutsideDomain(
                f"point outside the chart domain of {self.describe()}"
            )
        return p

    def describe(self) -> str:
        if self.is_sol3:
            return "Sol3"
        return f"E3(kappa={self.kappa:g}, tau={self.tau:g})"


@dataclass(frozen=True)
class TangentVector:
    base: np.ndarray
    comps: np.ndarray
    basis: Basis = "coordinate"

    def __post_init__(self):
        object.__setattr__(self, "base", np.asarray(self.base, dtype=float))
        object.__setattr__(self, "comps", np.asarray(self.comps, dtype=float))
        if self.basis not in ("coordinate", "frame"):
            raise ValueError(f"unknown basis {self.basis!r}")

    def to_coordinate(self, space: AmbientSpace) -> "TangentVector":
        if self.basis == "coordinate":
            return self
        return TangentVector(self.base, frame_to_coords(space, self.base, self.comps))

    def to_frame(self, space: AmbientSpace) -> "TangentVector":
        if self.basis == "frame":
            return self
        return TangentVector(
            self.base, coords_to_frame(space, self.base, self.comps), "frame"
        )


# ---------------------------------------------------------------------------
# metric and frame


def metric_at(space: AmbientSpace, p) -> np.ndarray:
    """Metric tensor in the coordinate basis, shape ``(..., 3, 3)``."""
    p = space.check_domain(p)
    x1, x2, x3 = p[..., 0], p[..., 1], p[..., 2]
    g = np.zeros(p.shape[:-1] + (3, 3))
    if space.is_sol3:
        g[..., 0, 0] = np.exp(2 * x3)
        g[..., 1, 1] = np.exp(-2 * x3)
        g[..., 2, 2] = 1.0
        return g
    lam = space.lam(p)
    # ds^2 = lam^2 |dw|^2 + (a dx1 + b dx2 + dx3)^2
    a = space.tau * lam * x2
    b = -space.tau * lam * x1
    g[..., 0, 0] = lam**2 + a * a
    g[..., 1, 1] = lam**2 + b * b
    g[..., 2, 2] = 1.0
    g[..., 0, 1] = g[..., 1, 0] = a * b
    g[..., 0, 2] = g[..., 2, 0] = a
    g[..., 1, 2] = g[..., 2, 1] = b
    return g


def frame_matrix(space: AmbientSpace, p) -> np.ndarray:
    """Orthonormal frame as a matrix whose column ``i`` holds ``E_{i+1}``."""
    p = space.check_domain(p)
    x1, x2, x3 = p[..., 0], p[..., 1], p[..., 2]
    E = np.zeros(p.shape[:-1] + (3, 3))
    E[..., 2, 2] = 1.0
    if space.is_sol3:
        E[..., 0, 0] = np.exp(-x3)
        E[..., 1, 1] = np.exp(x3)
        return E
    lam = space.lam(p)
    if space.tau != 0.0:
        c = np.cos(space.sigma * x3)
        s = np.sin(space.sigma * x3)
        tau = space.tau
        E[..., 0, 0] = c / lam
        E[..., 1, 0] = s / lam
        E[..., 2, 0] = tau * (x1 * s - x2 * c)
        E[..., 0, 1] = -s / lam
        E[..., 1, 1] = c / lam
        E[..., 2, 1] = tau * (x1 * c + x2 * s)
    else:
        E[..., 0, 0] = 1.0 / lam
        E[..., 1, 1] = 1.0 / lam
    return E


def frame_at(space: AmbientSpace, p) -> tuple[TangentVector, TangentVector, TangentVector]:
    p = np.asarray(p, dtype=float)
    E = frame_matrix(space, p)
    return tuple(TangentVector(p, E[..., :, i]) for i in range(3))


def frame_to_coords(space: AmbientSpace, p, comps) -> np.ndarray:
    E = frame_matrix(space, p)
    return np.einsum("...ij,...j->...i", E, np.asarray(comps, dtype=float))


def coords_to_frame(space: AmbientSpace, p, comps) -> np.ndarray:
    # The frame is orthonormal, so its inverse is E^T g.
    E = frame_matrix(space, p)
    g = metric_at(space, p)
    return np.einsum("...ji,...jk,...k->...i", E, g, np.asarray(comps, dtype=float))


def inner_coords(space: AmbientSpace, p, u, v) -> np.ndarray:
    g = metric_at(space, p)
    return np.einsum("...i,...ij,...j->...", u, g, v)


def cross_coords(space: AmbientSpace, p, u, v) -> np.ndarray:
    """Metric cross product of coordinate vectors, oriented by ``(E1, E2, E3)``."""
    uf = coords_to_frame(space, p, u)
    vf = coords_to_frame(space, p, v)
    return frame_to_coords(space, p, np.cross(uf, vf))


def _same_base(u: TangentVector, v: TangentVector, p=None):
    base = u.base if p is None else np.asarray(p, dtype=float)
    if not (np.allclose(u.base, base, rtol=0, atol=1e-14) and
            np.allclose(v.base, base, rtol=0, atol=1e-14)):
        raise BasePointMismatch("tangent vectors are based at different points")
    return base


def inner(space: AmbientSpace, p, u: TangentVector, v: TangentVector) -> float:
    p = _same_base(u, v, p)
    if u.basis == v.basis == "frame":
        return np.einsum("...i,...i->...", u.comps, v.comps)
    return inner_coords(space, p, u.to_coordinate(space).comps,
                        v.to_coordinate(space).comps)


def cross(space: AmbientSpace, p, u: TangentVector, v: TangentVector) -> TangentVector:
    p = _same_base(u, v, p)
    uf = u.to_frame(space).comps
    vf = v.to_frame(space).comps
    return TangentVector(p, np.cross(uf, vf), "frame").to_coordinate(space)


# ---------------------------------------------------------------------------
# finite differences


def directional_diff(func: Callable, p, direction, h: float = DEFAULT_STEP,
                     richardson: bool = False) -> np.ndarray:
    """Central difference of ``func`` at ``p`` along ``direction``."""
    p = np.asarray(p, dtype=float)
    d = np.asarray(direction, dtype=float)

    def _central(step):
        # leading axes of p and direction broadcast; func output keeps its own
        # trailing shape.
        return (np.asarray(func(p + step * d)) - np.asarray(func(p - step * d))) / (2 * step)

    if not richardson:
        return _central(h)
    return (4.0 * _central(h / 2) - _central(h)) / 3.0


def partials(func: Callable, p, h: float = DEFAULT_STEP,
             richardson: bool = False) -> np.ndarray:
    """Coordinate partials; the derivative index is the last new axis.

    For ``func(p)`` of shape ``(..., *S)`` the result has shape ``(..., *S, 3)``.
    """
    cols = [directional_diff(func, p, np.eye(3)[k], h, richardson) for k in range(3)]
    return np.stack(cols, axis=-1)


def christoffel_at(space: AmbientSpace, p, h: float = DEFAULT_STEP,
                   richardson: bool = False) -> np.ndarray:
    """Levi-Civita symbols ``Gamma[..., k, i, j]`` from finite differences of g."""
    p = space.check_domain(p)
    g = metric_at(space, p)
    ginv = np.linalg.inv(g)
    # dg[..., i, j, l] = d_l g_ij
    dg = partials(lambda q: metric_at(space, q), p, h, richardson)
    # lower[..., l, i, j] = (d_i g_jl + d_j g_il - d_l g_ij) / 2
    lower = 0.5 * (
        np.einsum("...jli->...lij", dg)
        + np.einsum("...ilj->...lij", dg)
        - np.einsum("...ijl->...lij", dg)
    )
    return np.einsum("...kl,...lij->...kij", ginv, lower)


def covariant_derivative(space: AmbientSpace, X: VectorField, p, u,
                         h: float = DEFAULT_STEP) -> np.ndarray:
    """``nabla_u X`` at ``p`` in coordinates, for a coordinate-basis field X."""
    p = space.check_domain(p)
    u = np.asarray(u, dtype=float)
    dX = directional_diff(X, p, u, h)
    gamma = christoffel_at(space, p, h)
    return dX + np.einsum("...kij,...i,...j->...k", gamma, u, X(p))


def divergence(space: AmbientSpace, X: VectorField, p, h: float = DEFAULT_STEP,
               richardson: bool = False) -> np.ndarray:
    """``(1/sqrt g) d_i (sqrt g X^i)`` by central differences."""
    p = space.check_domain(p)

    def density(q):
        return np.sqrt(np.linalg.det(metric_at(space, q)))[..., None] * X(q)

    d = partials(density, p, h, richardson)
    vol = np.sqrt(np.linalg.det(metric_at(space, p)))
    return np.trace(d, axis1=-2, axis2=-1) / vol


def divergence_christoffel(space: AmbientSpace, X: VectorField, p,
                           h: float = DEFAULT_STEP) -> np.ndarray:
    """Divergence as ``d_i X^i + Gamma^i_{ik} X^k``, an independent route."""
    p = space.check_domain(p)
    dX = partials(X, p, h)
    gamma = christoffel_at(space, p, h)
    return np.trace(dX, axis1=-2, axis2=-1) + np.einsum("...iik,...k->...", gamma, X(p))


def _frame_field(space: AmbientSpace, X: VectorField, basis: Basis) -> VectorField:
    if basis == "frame":
        return X
    return lambda q: coords_to_frame(space, q, X(q))


def _coord_field(space: AmbientSpace, X: VectorField, basis: Basis) -> VectorField:
    if basis == "coordinate":
        return X
    return lambda q: frame_to_coords(space, q, X(q))


def curl_frame(space: AmbientSpace, X: VectorField, p, h: float = DEFAULT_STEP,
               basis: Basis = "frame", richardson: bool = False) -> np.ndarray:
    """Curl from the closed-form frame expressions; frame components out.

    ``dX^i(E_j)`` is a central difference along the vector ``E_j(p)``.
    """
    p = space.check_domain(p)
    Xf = _frame_field(space, X, basis)
    E = frame_matrix(space, p)
    # D[..., i, j] = dX^i(E_j)
    D = np.stack(
        [directional_diff(Xf, p, E[..., :, j], h, richardson) for j in range(3)],
        axis=-1,
    )
    X0 = Xf(p)
    out = np.empty(np.shape(X0))
    out[..., 0] = D[..., 2, 1] - D[..., 1, 2]
    out[..., 1] = D[..., 0, 2] - D[..., 2, 0]
    out[..., 2] = D[..., 1, 0] - D[..., 0, 1]
    if space.is_sol3:
        out[..., 0] += X0[..., 1]
        out[..., 1] += X0[..., 0]
    elif space.tau != 0.0:
        out[..., 0] -= space.sigma * X0[..., 0]
        out[..., 1] -= space.sigma * X0[..., 1]
        out[..., 2] -= 2.0 * space.tau * X0[..., 2]
    else:
        x1, x2 = p[..., 0], p[..., 1]
        out[..., 2] += 2.0 * space.kappa_prime * (x2 * X0[..., 0] - x1 * X0[..., 1])
    return out


def curl_numeric(space: AmbientSpace, X: VectorField, p, h: float = DEFAULT_STEP,
                 basis: Basis = "frame", richardson: bool = False) -> np.ndarray:
    """``(* d X^flat)^sharp`` in coordinates; frame components out.

    Independent of the frame formulas: only the metric and its determinant
    enter.
    """
    p = space.check_domain(p)
    Xc = _coord_field(space, X, basis)

    def flat(q):
        return np.einsum("...ij,...j->...i", metric_at(space, q), Xc(q))

    # dflat[..., k, j] = d_j flat_k
    dflat = partials(flat, p, h, richardson)
    vol = np.sqrt(np.linalg.det(metric_at(space, p)))
    curl = np.einsum("ijk,...kj->...i", _EPS, dflat) / vol[..., None]
    return coords_to_frame(space, p, curl)
