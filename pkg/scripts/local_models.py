"""Multiplicities, tangent dimensions and fiber sizes of local models at stable points."""

import argparse
from itertools import combinations_with_replacement

from quivinv.local_model import (
    closed_form_multiplicity,
    fiber_cardinality,
    hilbert_series,
    make_spec,
    multiplicity,
    tangent_dim,
)


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--genera", type=int, nargs="+", default=[2, 3])
    p.add_argument("--max-summands", type=int, default=4)
    p.add_argument("--max-rank", type=int, default=2)
    args = p.parse_args()
    print(f"{'g':>2} {'ranks':<14} {'mult':>6} {'closed':>6} {'tangent':>7} {'fiber':>5}  series numerator")
    for g in args.genera:
        for n in range(2, args.max_summands + 1):
            for ranks in combinations_with_replacement(range(1, args.max_rank + 1), n):
                spec = make_spec(g, list(ranks))
                hs = hilbert_series(spec)
                num = " ".join(str(x) for x in hs.numerator)
                print(f"{g:>2} {str(ranks):<14} {multiplicity(spec):>6} {closed_form_multiplicity(spec):>6} "
                      f"{tangent_dim(spec):>7} {fiber_cardinality(spec):>5}  [{num}] / (1-t)^{hs.a} (1-t^2)^{hs.b}")


if __name__ == "__main__":
    main()
