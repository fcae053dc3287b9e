"""Shared adaptive ODE integration and root bracketing helpers."""

from __future__ import annotations

from typing import Callable

import numpy as np
from scipy.integrate import solve_ivp

from .errors import NoBracket, SolverFailure

DEFAULT_RTOL = 1e-12


def integrate(rhs: Callable, t_end: float, y0, rtol: float = DEFAULT_RTOL,
              atol: float | None = None, t0: float = 0.0):
    """Integrate ``y' = rhs(t, y)`` from ``t0`` to ``t_end`` with dense output.

    Uses the embedded 8(5,3) Dormand-Prince pair.  Returns the scipy
    ``OdeSolution`` interpolant.
    """
    atol = rtol if atol is None else atol
    sol = solve_ivp(rhs, (t0, t_end), np.asarray(y0, dtype=float), method="DOP853",
                    rtol=rtol, atol=atol, dense_output=True)
    if not sol.success:
        raise SolverFailure(sol.message)
    return sol


def bisect(func: Callable[[float], float], lo: float, hi: float, xtol: float = 1e-15,
           max_iter: int = 200) -> float:
    """Plain bisection on a sign change of ``func`` in ``[lo, hi]``."""
    flo, fhi = func(lo), func(hi)
    if not (np.isfinite(flo) and np.isfinite(fhi)) or np.sign(flo) == np.sign(fhi):
        raise NoBracket(f"no sign change on [{lo:.6g}, {hi:.6g}]: f = {flo:.3g}, {fhi:.3g}")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if hi - lo <= xtol or mid in (lo, hi):
            break
        fmid = func(mid)
        if fmid == 0.0:
            return mid
        if np.sign(fmid) == np.sign(flo):
            lo, flo = mid, fmid
        else:
            hi = mid
    return 0.5 * (lo + hi)
