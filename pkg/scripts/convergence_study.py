"""Trapezoid-rule convergence of the fluxes as the sample count doubles."""

import argparse

from noetherflux.noether import flux_report
from noetherflux.verify import build_family


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-min", type=int, default=16)
    ap.add_argument("--n-max", type=int, default=4096)
    args = ap.parse_args()
    for name, params in (("vertical_catenoid", {"a": 1.0}), ("horizontal_catenoid", {"alpha": 1.0}),
                         ("rotational_end", {"beta": 0.5})):
        case = build_family(name, params)
        c = case.cycles[0]
        print(f"{name} on {c.name}")
        prev, n = None, args.n_min
        while n <= args.n_max:
            vals = flux_report(case.space, case.H, case.surface, c, n=n).values()
            change = "" if prev is None else \
                f"  max change {max(abs(vals[k] - prev[k]) for k in vals):.2e}"
            print(f"  n={n:<6}" + " ".join(f"{k.short}={v: .14g}" for k, v in vals.items()) + change)
            prev, n = vals, 2 * n


if __name__ == "__main__":
    main()
