"""Worst defect of each transformation-table row, per test surface.

Homology-level rows compare the flux of the moved surface with the table's
prediction; the tau = 0 rows for the CMC part of mu_3 are checked pointwise
with both the derived weight and the numerator-free displayed one.
"""

import numpy as np

from noetherflux.verify import (
    TABLE_TIMES,
    build_family,
    cmc_rule_defects,
    pointwise_row_defects,
    table_row_defects,
)


def worst_by_row(defects):
    rows = {}
    for key, val in defects.items():
        row = key[:2]
        rows[row] = max(rows.get(row, 0.0), float(np.max(np.abs(val))))
    return rows


def main():
    for name, params in (("vertical_catenoid", {"a": 1.0}), ("horizontal_catenoid", {"alpha": 1.0}),
                         ("rotational_end", {"beta": 0.5}), ("sol3_plane", {})):
        case = build_family(name, params)
        c = case.cycles[0]
        print(f"{name} {params}, cycle {c.name}, t in {TABLE_TIMES}")
        hom = worst_by_row(table_row_defects(case.space, case.H, case.surface, c))
        pw = worst_by_row(pointwise_row_defects(case.space, case.surface, c))
        for row in sorted(pw, key=lambda r: (r[0].value, r[1].value)):
            h = hom.get(row)
            h = "pointwise only" if h is None else f"{h:.2e}"
            print(f"  mu_{row[0].short} under S_{row[1].short}: flux {h:>14}  "
                  f"minimal part pointwise {pw[row]:.2e}")
        if case.space.tau == 0.0 and not case.space.is_sol3:
            for rule in ("derived", "displayed"):
                d = cmc_rule_defects(case.space, case.surface, c, rule=rule)
                worst = max(float(np.max(np.abs(v))) for v in d.values())
                print(f"  <F3, df> rule ({rule}): worst pointwise defect {worst:.2e}")


if __name__ == "__main__":
    main()
