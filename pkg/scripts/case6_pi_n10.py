"""Stream all of Alt(10) through the factorisation in Alt(11) and check pi(b) = 1^b.

About 1.8 million elements, streamed in chunks.
"""

import time

from skewprod.classify import verify_pi_formula


def main():
    for n in (8, 10):
        t0 = time.perf_counter()
        holds, checked = verify_pi_formula(n)
        print(f"n = {n}: pi(b) = 1^b {'holds' if holds else 'FAILS'} on {checked} elements"
              f" ({time.perf_counter() - t0:.1f}s)")


if __name__ == "__main__":
    main()
