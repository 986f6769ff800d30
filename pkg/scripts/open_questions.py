"""Empirical answers to the questions the theory leaves open.

1. Is a trace word always equal to the trace of its adjoint reversal, or
   only up to sign?  Checked on random representations of mixed quivers.
2. For polarized pfaffians, do multilinear weight profiles suffice to span
   the part of the SO-invariants that is odd under a reflection?
"""

import argparse
import json

from quivinv.evaluate import evaluate_word, random_representation
from quivinv.pfaffian_so import PfaffianContext, generic_degree_report
from quivinv.quiver import build_doubled, gram_matrix
from quivinv.suite import INSTANCES, load_instance
from quivinv.words import enumerate_cycles


def reversal_signs(samples, seed):
    rows = {}
    for name in INSTANCES:
        q, dims, _ = load_instance(name)
        dq = build_doubled(q)
        forms = gram_matrix(q, dims)
        seen = {"equal": 0, "negated": 0, "other": 0}
        for w in enumerate_cycles(dq, 4):
            for k in range(samples):
                rho = random_representation(q, dims, seed, "reversal", k)
                x = evaluate_word(w, rho, forms, dq)
                y = evaluate_word(w.adjoint_reversal(), rho, forms, dq)
                if x == y:
                    seen["equal"] += 1
                elif x == -y:
                    seen["negated"] += 1
                else:
                    seen["other"] += 1
        rows[name] = seen
    return rows


def pfaffian_hypotheses():
    out = []
    for dim_w, m in ((2, 1), (2, 2), (2, 3), (4, 1), (4, 2)):
        max_d = 4 if dim_w == 2 or m == 1 else 2
        rep = generic_degree_report(PfaffianContext(dim_w, m), max_d, guard=None)
        out.append({
            "dim_w": dim_w,
            "m": m,
            "degrees": max_d,
            "all_profiles_account": all(r["accounted"] for r in rep["degrees"]),
            "multilinear_suffice": all(r["multilinear_suffices"] for r in rep["degrees"]),
        })
    return out


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--samples", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()
    print(json.dumps({"adjoint_reversal": reversal_signs(args.samples, args.seed),
                      "pfaffian_profiles": pfaffian_hypotheses()}, indent=2))


if __name__ == "__main__":
    main()
