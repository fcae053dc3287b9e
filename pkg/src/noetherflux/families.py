"""Example surfaces: catenoids in Nil3, CMC-1/2 rotational ends in H2xR, a Sol3 plane.

Orientation conventions (the normal is ``f_u x f_v`` normalized):

* vertical catenoid, parameters ``(t, theta)``, cycles ``{x3 = t}`` run with
  increasing ``theta``;
* horizontal catenoid, parameters ``(u, y2)``, cycles ``{y2 = t}`` run with
  increasing ``u``;
* rotational end, parameters ``(r, theta)``, cycles ``{r = t}`` run with
  increasing ``theta``.  This order puts the normal on the mean-convex side,
  where ``H = +1/2``.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.integrate import quad

from .errors import NoBracket, NonConvergent, NonPositiveNeck, PeriodNotFound
from .geometry import AmbientSpace
from .noether import Cycle
from .ode import DEFAULT_RTOL, bisect, integrate
from .surface import SurfacePatch

TWO_PI = 2 * np.pi


# ---------------------------------------------------------------------------
# vertical catenoids in Nil3


def _catenoid_rhs(t, y):
    f, ft = y
    return [ft, 4.0 * (1.0 + ft * ft) / (f * (f * f + 4.0))]


@dataclass
class CatenoidProfile:
    """Solution of ``f (f^2 + 4) f'' = 4 (1 + f'^2)``, ``f(0) = a``, ``f'(0) = 0``."""

    a: float
    T: float
    tol: float
    _forward: object = field(repr=False)
    _backward: object = field(repr=False)

    def __call__(self, t):
        """``(f, f_t)`` at ``t`` (any shape)."""
        t = np.asarray(t, dtype=float)
        flat = t.ravel()
        out = np.empty((2, flat.size))
        pos = flat >= 0
        if pos.any():
            out[:, pos] = self._forward.sol(flat[pos])
        if (~pos).any():
            out[:, ~pos] = self._backward.sol(flat[~pos])
        return out[0].reshape(t.shape), out[1].reshape(t.shape)

    def second_derivative(self, t):
        f, ft = self(t)
        return 4.0 * (1.0 + ft * ft) / (f * (f * f + 4.0))

    def conserved(self, t):
        """``2 f / sqrt(4 + f_t^2 (4 + f^2))``; equals ``a`` along the flow."""
        f, ft = self(t)
        return 2 * f / np.sqrt(4 + ft * ft * (4 + f * f))

    def samples(self, n: int = 201):
        t = np.linspace(-self.T, self.T, n)
        f, ft = self(t)
        return t, f, ft

    def to_csv(self, n: int = 201) -> str:
        # first row is the neck t = 0, then increasing |t| alternating signs
        t = np.linspace(0.0, self.T, (n + 1) // 2)
        ts = [0.0]
        for x in t[1:]:
            ts.extend([x, -x])
        f, ft = self(np.array(ts))
        return _csv(["t", "f", "f_t"], zip(ts, f, ft))


def catenoid_profile(a: float, T: float = 3.0, tol: float = DEFAULT_RTOL) -> CatenoidProfile:
    if not a > 0:
        raise NonPositiveNeck(f"neck size must be positive, got {a}")
    if not T > 0:
        raise ValueError("T must be positive")
    fwd = integrate(_catenoid_rhs, T, [a, 0.0], rtol=tol)
    bwd = integrate(_catenoid_rhs, -T, [a, 0.0], rtol=tol)
    return CatenoidProfile(float(a), float(T), tol, fwd, bwd)


def nil_vertical_catenoid(a: float, T: float = 3.0, tol: float = DEFAULT_RTOL) -> SurfacePatch:
    """``(t, theta) -> (f cos theta, f sin theta, t)`` in Nil3 = E3(0, 1/2)."""
    prof = catenoid_profile(a, T, tol)

    def chart(t, th):
        f, _ = prof(t)
        return np.stack(np.broadcast_arrays(f * np.cos(th), f * np.sin(th), t), axis=-1)

    def partials(t, th):
        f, ft = prof(t)
        c, s = np.cos(th), np.sin(th)
        fu = np.stack(np.broadcast_arrays(ft * c, ft * s, np.ones_like(f * c)), axis=-1)
        fv = np.stack(np.broadcast_arrays(-f * s, f * c, np.zeros_like(f * c)), axis=-1)
        return fu, fv

    return SurfacePatch(
        AmbientSpace.nil3(), chart, (-T, T), (0.0, TWO_PI), partials,
        periodic=(False, True), H=0.0, name=f"vertical_catenoid(a={a:g})",
        info={"profile": prof, "a": a},
    )


def vertical_catenoid_cycle(t: float, n: int = 2048) -> Cycle:
    return Cycle.param_line("u", t, 0.0, TWO_PI, n, name=f"{{x3={t:g}}}")


# ---------------------------------------------------------------------------
# horizontal catenoids in Nil3


def _dh_constants(alpha, theta):
    return np.sin(2 * theta) / (2 * alpha), np.cos(2 * theta)


def _dh_P(t, alpha, theta):
    C, c2 = _dh_constants(alpha, theta)
    return alpha**2 + c2 * t**2 - C**2 * t**4


def dh_theta_residual(theta: float, alpha: float, m: int = 512) -> float:
    """Left side of the closing condition on theta.

    The endpoint factor ``1/sqrt(1 - t^2)`` is removed by ``t = sin(psi)``;
    the resulting integrand is smooth and periodic in ``psi`` so the
    midpoint rule over a full period converges spectrally.
    """
    C, c2 = _dh_constants(alpha, theta)
    psi = (np.arange(m) + 0.5) * TWO_PI / m
    t = np.sin(psi)
    P = _dh_P(t, alpha, theta)
    if np.any(P <= 0):
        return np.nan
    sP = np.sqrt(P)
    g = (2 * alpha * C**2 * t**2 - alpha * c2 + C**2 * t**2 * sP) / (sP * (alpha + sP))
    # the integral over [-pi/2, pi/2] is half the full-period integral
    return float(np.pi * g.mean())


def dh_theta_residual_direct(theta: float, alpha: float) -> float:
    """Same integral in the original variable, algebraic endpoint weights."""
    C, c2 = _dh_constants(alpha, theta)

    def g(t):
        P = _dh_P(t, alpha, theta)
        sP = np.sqrt(P)
        return (2 * alpha * C**2 * t**2 - alpha * c2 + C**2 * t**2 * sP) / (sP * (alpha + sP))

    val, _ = quad(g, -1, 1, weight="alg", wvar=(-0.5, -0.5), epsabs=1e-14, epsrel=1e-13)
    return val


def _theta_admissible_max(alpha: float) -> float:
    """Largest theta in (0, pi/4] keeping P(1) = alpha^2 + cos 2theta - C^2 > 0."""
    def p1(th):
        return alpha**2 + np.cos(2 * th) - (np.sin(2 * th) / (2 * alpha)) ** 2

    if p1(np.pi / 4) > 0:
        return np.pi / 4
    return bisect(p1, 1e-12, np.pi / 4)


def dh_theta_solve(alpha: float, tol: float = 1e-14, scan: int = 64) -> float:
    """Root of the theta closing condition in ``(0, pi/4)``."""
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    hi = _theta_admissible_max(alpha) * (1 - 1e-9)
    grid = np.linspace(1e-6, hi, scan)
    vals = np.array([dh_theta_residual(th, alpha) for th in grid])
    ok = np.isfinite(vals)
    for k in range(len(grid) - 1):
        if ok[k] and ok[k + 1] and np.sign(vals[k]) != np.sign(vals[k + 1]):
            return bisect(lambda th: dh_theta_residual(th, alpha), grid[k], grid[k + 1], tol)
    raise NoBracket(
        f"theta equation has no sign change on (0, {hi:.6g}) for alpha={alpha:g}",
    )


def dh_theta_scan(alpha: float, n: int = 64):
    """Residual curve of the theta equation, attached to bracket failures."""
    hi = _theta_admissible_max(alpha) * (1 - 1e-9)
    grid = np.linspace(1e-6, hi, n)
    return grid, np.array([dh_theta_residual(th, alpha) for th in grid])


@dataclass
class DHCatenoidData:
    alpha: float
    theta: float
    C: float
    U: float
    delta_beta: float
    delta_G: float
    _sol: object = field(repr=False)

    @property
    def cos2theta(self) -> float:
        return float(np.cos(2 * self.theta))

    def rates(self, phi):
        """``(phi', beta', G')`` as functions of phi (the system is autonomous)."""
        c = np.cos(phi)
        P = _dh_P(c, self.alpha, self.theta)
        dphi = -np.sqrt(P)
        dbeta = self.C * c * c
        dG = (self.C**2 * c * c - self.cos2theta) / (self.alpha - dphi)
        return dphi, dbeta, dG

    def state(self, u):
        """``(phi, beta, G)`` at any ``u``, continued by the 2U quasi-period."""
        u = np.asarray(u, dtype=float)
        period = 2 * self.U
        k = np.floor(u / period)
        ur = u - k * period
        y = self._sol.sol(ur.ravel()).reshape((3,) + u.shape)
        return (y[0] - TWO_PI * k, y[1] + k * self.delta_beta, y[2] + k * self.delta_G)

    def closure_residual(self) -> float:
        """Change of ``A`` over a full period; zero when the section closes."""
        return float(self.alpha / self.C * self.delta_G + self.delta_beta)

    def sigma2_closed_form(self) -> float:
        G_U = float(self.state(np.array(self.U))[2])
        return self.cos2theta / (self.alpha * self.C) * G_U - 2 * self.C * self.U

    def sigma2_integral(self, n: int = 4096) -> float:
        """``(1/(2 alpha C)) int_0^{2U} (C^2 + G'^2)(G' cos^2 phi - 2 alpha) du``."""
        u = 2 * self.U * np.arange(n) / n
        phi, _, _ = self.state(u)
        _, _, dG = self.rates(phi)
        integrand = (self.C**2 + dG**2) * (dG * np.cos(phi) ** 2 - 2 * self.alpha)
        return float(2 * self.U * integrand.mean() / (2 * self.alpha * self.C))

    def half_period_quadrature(self, m: int = 1024) -> float:
        """``U = int_0^pi dphi / sqrt(P(cos phi))``, independent of the ODE."""
        phi = (np.arange(m) + 0.5) * np.pi / m
        return float(np.pi * np.mean(1 / np.sqrt(_dh_P(np.cos(phi), self.alpha, self.theta))))

    def ode_residuals(self, n: int = 512) -> dict:
        """Residuals of the defining equations along a grid of the dense output."""
        u = np.linspace(0, 2 * self.U, n)
        y = self._sol.sol(u)
        dy = np.array([self._rhs_raw(0.0, y[:, k]) for k in range(n)]).T
        phi = y[0]
        c = np.cos(phi)
        # d/du of the dense output, by central differences
        h = 1e-6
        up = np.clip(u + h, 0, None)
        um = np.clip(u - h, 0, None)
        deriv = (self._sol.sol(up) - self._sol.sol(um)) / (up - um)
        first_integral = deriv[0] ** 2 - (self.alpha**2 + self.cos2theta * c**2 - self.C**2 * c**4)
        return {
            "phi_first_integral": float(np.max(np.abs(first_integral))),
            "beta_prime": float(np.max(np.abs(deriv[1] - self.C * c**2))),
            "G_prime": float(np.max(np.abs(
                deriv[2] - (self.C**2 * c**2 - self.cos2theta) / (self.alpha - deriv[0])))),
            "rhs_consistency": float(np.max(np.abs(deriv - dy))),
        }

    def _rhs_raw(self, u, y):
        dphi, dbeta, dG = self.rates(y[0])
        return np.array([dphi, dbeta, dG])

    def to_csv(self, n: int = 257) -> str:
        u = np.linspace(0, 2 * self.U, n)
        phi, beta, G = self.state(u)
        return _csv(["u", "phi", "beta", "G"], zip(u, phi, beta, G))


def dh_catenoid_data(alpha: float, tol: float = DEFAULT_RTOL,
                     theta: float | None = None) -> DHCatenoidData:
    if theta is None:
        theta = dh_theta_solve(alpha)
    C, c2 = _dh_constants(alpha, theta)

    def rhs(u, y):
        c = np.cos(y[0])
        P = alpha**2 + c2 * c * c - C**2 * c**4
        dphi = -np.sqrt(P)
        return [dphi, C * c * c, (C**2 * c * c - c2) / (alpha - dphi)]

    phi_grid = (np.arange(1024) + 0.5) * np.pi / 1024
    U_guess = np.pi * np.mean(1 / np.sqrt(_dh_P(np.cos(phi_grid), alpha, theta)))
    sol = integrate(rhs, 2.2 * U_guess, [0.0, 0.0, 0.0], rtol=tol, atol=tol)

    def phase(u):
        return float(sol.sol(u)[0]) + np.pi

    try:
        U = bisect(phase, 0.5 * U_guess, 1.5 * U_guess, xtol=1e-15)
    except NoBracket as exc:
        raise PeriodNotFound(f"phi never reaches -pi for alpha={alpha:g}") from exc
    y2U = sol.sol(2 * U)
    return DHCatenoidData(float(alpha), float(theta), float(C), float(U),
                          float(y2U[1]), float(y2U[2]), sol)


def nil_horizontal_catenoid(alpha: float, tol: float = DEFAULT_RTOL,
                            y2_range: tuple[float, float] = (-1.0, 1.0)):
    """Horizontal catenoid as a patch in ``(u, y2)``, plus its data.

    With ``v = (y2 + G(u))/C`` the immersion is 2U-periodic in ``u``; the
    patch is returned in the standard Nil3 chart, ``x3 = y3 - y1 y2 / 2``.
    """
    data = dh_catenoid_data(alpha, tol)
    a, C, c2 = data.alpha, data.C, data.cos2theta

    def pieces(u, s):
        phi, beta, G = data.state(u)
        c, sn = np.cos(phi), np.sin(phi)
        P = a**2 + c2 * c * c - C**2 * c**4
        dphi = -np.sqrt(P)
        dbeta = C * c * c
        den = a - dphi
        dG = (C**2 * c * c - c2) / den
        ddphi = -sn * (c2 * c - 2 * C**2 * c**3)
        ddG = (-2 * C**2 * c * sn * dphi * den + (C**2 * c * c - c2) * ddphi) / den**2
        A = a / C * (s + G) + beta
        Au = a / C * dG + dbeta
        As = a / C
        return c, sn, dphi, dG, ddG, A, Au, As

    def chart(u, s):
        c, sn, dphi, dG, ddG, A, Au, As = pieces(u, s)
        ch, sh = np.cosh(A), np.sinh(A)
        F1 = dG / a * c * sh - C / a * sn * ch
        h = C / a * (dG / a - 1) * c * ch - (C**2 / a + dG) / a * sn * sh
        s_b = np.broadcast_to(s, F1.shape)
        return np.stack([F1, s_b, h - F1 * s_b / 2], axis=-1)

    def partials(u, s):
        c, sn, dphi, dG, ddG, A, Au, As = pieces(u, s)
        ch, sh = np.cosh(A), np.sinh(A)
        s_b = np.broadcast_to(s, c.shape)
        F1 = dG / a * c * sh - C / a * sn * ch
        # derivatives of F1 and h with respect to A (at fixed u)
        F1_A = dG / a * c * ch - C / a * sn * sh
        h_A = C / a * (dG / a - 1) * c * sh - (C**2 / a + dG) / a * sn * ch
        # explicit u dependence through phi and G'
        F1_u = (ddG / a * c * sh - dG / a * sn * dphi * sh
                - C / a * c * dphi * ch) + F1_A * Au
        h_u = (C / a * (ddG / a) * c * ch - C / a * (dG / a - 1) * sn * dphi * ch
               - ddG / a * sn * sh - (C**2 / a + dG) / a * c * dphi * sh) + h_A * Au
        F1_s = F1_A * As
        h_s = h_A * As
        zero, one = np.zeros_like(c), np.ones_like(c)
        fu = np.stack([F1_u, zero, h_u - F1_u * s_b / 2], axis=-1)
        fs = np.stack([F1_s, one, h_s - (F1_s * s_b + F1) / 2], axis=-1)
        return fu, fs

    patch = SurfacePatch(
        AmbientSpace.nil3(), chart, (0.0, 2 * data.U), y2_range, partials,
        periodic=(True, False), H=0.0, name=f"horizontal_catenoid(alpha={alpha:g})",
        info={"data": data, "alpha": alpha},
    )
    return patch, data


def horizontal_catenoid_cycle(data: DHCatenoidData, t: float, n: int = 2048) -> Cycle:
    return Cycle.param_line("v", t, 0.0, 2 * data.U, n, name=f"{{y2={t:g}}}")


# ---------------------------------------------------------------------------
# CMC-1/2 rotational ends in H2 x R


@dataclass(frozen=True)
class RotationalEndData:
    """Profile ``h_beta`` of the rotational CMC-1/2 ends, as a function of r."""

    beta: float
    tol: float = 1e-12

    @property
    def t0(self) -> float:
        return abs(np.log(self.beta))

    @property
    def R(self) -> float:
        """Infimum of admissible inner radii, ``|(sqrt b - 1)/(sqrt b + 1)|``."""
        sb = np.sqrt(self.beta)
        return abs((sb - 1) / (sb + 1))

    @staticmethod
    def distance(r):
        """Hyperbolic distance to the axis, ``2 log((1 + r)/(1 - r))``."""
        r = np.asarray(r, dtype=float)
        return 2 * np.log((1 + r) / (1 - r))

    def integrand(self, t):
        """``(cosh t - beta)/sqrt(2 beta cosh t - 1 - beta^2)``, stable near t0."""
        t = np.asarray(t, dtype=float)
        t0, b = self.t0, self.beta
        # 2 b cosh t - 1 - b^2 = 2 b (cosh t - cosh t0)
        rad = 4 * b * np.sinh((t + t0) / 2) * np.sinh((t - t0) / 2)
        return (np.cosh(t) - b) / np.sqrt(rad)

    def _substituted(self, s):
        t = self.t0 + s * s
        b = self.beta
        rad = 4 * b * np.sinh((t + self.t0) / 2) * np.sinh(s * s / 2)
        # 2 s / sqrt(rad) stays bounded as s -> 0
        with np.errstate(invalid="ignore", divide="ignore"):
            ratio = np.where(s == 0, 2 / np.sqrt(2 * b * np.sinh(self.t0) + (b == 1)),
                             2 * s / np.sqrt(rad))
        return (np.cosh(t) - b) * ratio

    @lru_cache(maxsize=4096)
    def _h_scalar(self, r: float) -> float:
        d = float(self.distance(r))
        if d < self.t0:
            raise ValueError(f"r={r} is below the neck radius {self.R:.6g}")
        val, err = quad(self._substituted, 0.0, np.sqrt(d - self.t0),
                        epsabs=self.tol, epsrel=self.tol, limit=200)
        if not np.isfinite(val) or err > max(1e3 * self.tol, 1e-8) * max(1.0, abs(val)):
            raise NonConvergent(f"h_beta quadrature failed at r={r}: err={err:.2e}")
        return val

    def h_integral(self, r) -> np.ndarray:
        """``h_beta(r)`` by quadrature after ``t = t0 + s^2``."""
        r = np.asarray(r, dtype=float)
        uniq, inv = np.unique(r.ravel(), return_inverse=True)
        vals = np.array([self._h_scalar(float(x)) for x in uniq])
        return vals[inv].reshape(r.shape)

    def h(self, r) -> np.ndarray:
        """The height function; closed form ``2(1 + r^2)/(1 - r^2)`` when beta = 1."""
        if self.beta == 1.0:
            return h1_closed_form(r)
        return self.h_integral(r)

    def h_prime(self, r) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        return self.integrand(self.distance(r)) * 4 / (1 - r * r)

    def h_naive(self, r_lo: float, r_hi: float) -> float:
        """``h(r_hi) - h(r_lo)`` by direct quadrature in t (no singularity when r_lo > R)."""
        val, _ = quad(self.integrand, float(self.distance(r_lo)), float(self.distance(r_hi)),
                      epsabs=1e-13, epsrel=1e-13, limit=200)
        return val

    def to_csv(self, r_lo: float | None = None, r_hi: float = 0.95, n: int = 101) -> str:
        r_lo = max(self.R, 0.0) + 1e-3 if r_lo is None else r_lo
        r = np.linspace(r_lo, r_hi, n)
        cols = ["r", "h", "h_prime"]
        rows = [r, self.h(r), self.h_prime(r)]
        if self.beta == 1.0:
            cols.append("h_integral")
            rows.append(self.h_integral(r))
        return _csv(cols, zip(*rows))


def h1_closed_form(r):
    r = np.asarray(r, dtype=float)
    return 2 * (1 + r * r) / (1 - r * r)


def h2r_profile(beta: float, tol: float = 1e-12) -> RotationalEndData:
    if not beta > 0:
        raise ValueError("beta must be positive")
    return RotationalEndData(float(beta), tol)


def h2r_rotational_end(beta: float, r_range: tuple[float, float] | None = None,
                       tol: float = 1e-12) -> SurfacePatch:
    """``(r, theta) -> (4r/(1+r^2) e^{i theta}, h_beta(r))`` in E3(-1, 0).

    The unit-disc radius ``2r/(1+r^2)`` of the Poincare model becomes
    ``4r/(1+r^2)`` in the radius-2 disc of the E3(-1, 0) chart.
    """
    prof = h2r_profile(beta, tol)
    if r_range is None:
        r_range = (max(prof.R + 1e-3, 0.5), 0.95)
    lo, hi = r_range
    if not (prof.R < lo < hi < 1):
        raise ValueError(f"r range must satisfy {prof.R:.6g} < r_lo < r_hi < 1")

    def chart(r, th):
        rho = 4 * r / (1 + r * r)
        return np.stack(np.broadcast_arrays(rho * np.cos(th), rho * np.sin(th), prof.h(r)), axis=-1)

    def partials(r, th):
        rho = 4 * r / (1 + r * r)
        drho = 4 * (1 - r * r) / (1 + r * r) ** 2
        c, s = np.cos(th), np.sin(th)
        f_th = np.stack(np.broadcast_arrays(-rho * s, rho * c, 0 * (rho * c)), axis=-1)
        f_r = np.stack(np.broadcast_arrays(drho * c, drho * s, prof.h_prime(r) + 0 * c), axis=-1)
        return f_r, f_th

    return SurfacePatch(
        AmbientSpace.h2xr(), chart, (lo, hi), (0.0, TWO_PI), partials,
        periodic=(False, True), H=0.5, name=f"rotational_end(beta={beta:g})",
        info={"profile": prof, "beta": beta},
    )


def rotational_end_cycle(t: float, n: int = 2048) -> Cycle:
    return Cycle.param_line("u", t, 0.0, TWO_PI, n, name=f"{{r={t:g}}}")


# ---------------------------------------------------------------------------
# Sol3


def sol3_horizontal_plane(extent: float = 2.0) -> SurfacePatch:
    def chart(u, v):
        return np.stack(np.broadcast_arrays(u, v, 0.0 * u), axis=-1)

    def partials(u, v):
        one = np.ones(np.broadcast(u, v).shape)
        zero = np.zeros_like(one)
        return np.stack([one, zero, zero], axis=-1), np.stack([zero, one, zero], axis=-1)

    return SurfacePatch(
        AmbientSpace.sol3(), chart, (-extent, extent), (-extent, extent), partials,
        H=0.0, name="sol3_plane",
    )


def _csv(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([repr(float(x)) for x in row])
    return buf.getvalue()
