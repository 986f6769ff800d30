"""Table of pairing-span vs. invariant dimensions for multilinear forms.

Shows both the ordered pairings (each matched pair in both orientations)
and the unordered ones, which fall short once a symplectic part appears.
"""

import argparse

from quivinv.oracle import fft_check
from quivinv.suite import FFT_CASES


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--extra", action="store_true", help="also run (4,0,2), (3,2,2) and (0,4,2)")
    args = p.parse_args()
    cases = list(FFT_CASES) + ([(4, 0, 2), (3, 2, 2), (0, 4, 2)] if args.extra else [])
    print(f"{'N':>2} {'Nsp':>3} {'i':>2} {'oracle':>6} {'ordered':>7} {'unordered':>9}")
    for n, n_sp, i in cases:
        a = fft_check(n, n_sp, i, guard=None)
        b = fft_check(n, n_sp, i, guard=None, oriented=False)
        print(f"{n:>2} {n_sp:>3} {i:>2} {a['oracle_dim']:>6} {a['pairing_span_dim']:>7} {b['pairing_span_dim']:>9}")


if __name__ == "__main__":
    main()
