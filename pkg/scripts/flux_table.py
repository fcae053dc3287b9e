"""Flux and torque of every built-in family on its default cycles."""

import argparse

import numpy as np

from noetherflux.noether import flux_report
from noetherflux.verify import build_family


def expected(case):
    p = case.params
    if case.name == "vertical_catenoid":
        return f"sigma3 = 2 pi a = {2 * np.pi * p['a']:.12g}"
    if case.name == "rotational_end":
        return f"sigma3 = 2 pi (1 - beta) = {2 * np.pi * (1 - p['beta']):.12g}"
    if case.name == "horizontal_catenoid":
        return f"sigma2 closed form = {case.data.sigma2_closed_form():.12g}"
    return "sigma1 = sigma2 = 0"


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=2048, help="quadrature samples per cycle")
    args = ap.parse_args()
    runs = [("vertical_catenoid", {"a": a}) for a in (0.5, 1.0, 2.0)]
    runs += [("horizontal_catenoid", {"alpha": a}) for a in (0.5, 1.0)]
    runs += [("rotational_end", {"beta": b}) for b in (0.5, 1.0, 2.0)]
    runs += [("sol3_plane", {})]
    for name, params in runs:
        case = build_family(name, params)
        print(f"{name} {params}  [{expected(case)}]")
        for c in case.cycles:
            r = flux_report(case.space, case.H, case.surface, c, n=args.n)
            torque = "" if r.sigmaR is None else f" sigmaR={r.sigmaR: .3e}"
            print(f"  {c.name:<14} sigma1={r.sigma1: .3e} sigma2={r.sigma2: .12g} "
                  f"sigma3={r.sigma3: .12g}{torque}")


if __name__ == "__main__":
    main()
