"""Brute-force and closure censuses of all skew morphisms for every tiny group in the catalogue."""

import time

from skewprod import catalog
from skewprod.oracle import compare

GROUPS = [f"c{n}" for n in range(1, 11)] + ["klein", "sym(3)", "d4", "q8", "c2xc4", "c2xc2xc2"]


def main():
    print(f"{'group':10s} {'|B|':>4s} {'total':>6s} {'proper':>6s} {'agree':>6s} {'time':>6s}")
    for spec in GROUPS:
        B = catalog.parse_group_spec(spec)
        t0 = time.perf_counter()
        a, _, equal = compare(B, spec)
        print(f"{spec:10s} {B.order:4d} {a.total_count:6d} {a.proper_count:6d} {str(equal):>6s}"
              f" {time.perf_counter() - t0:6.2f}")


if __name__ == "__main__":
    main()
