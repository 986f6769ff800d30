"""Bundled verification instances and the full suite report."""

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

from .evaluate import invariance_report
from .local_model import (
    corollary_tangent_dim,
    fiber_cardinality,
    make_spec,
    multiplicity,
    regraded_t_coefficient,
    ORTHOGONAL,
    SYMPLECTIC,
    PAIR,
    DecompositionSpec,
    SummandSpec,
)
from .oracle import DEFAULT_GUARD, check_spanning, fft_check
from .pfaffian_so import (
    PfaffianContext,
    generic_degree_report,
    pf_square_membership,
    pfaffian_transform_check,
    so_extension_check,
)
from .quiver import SymQuiver
from .words import generators

FFT_CASES = [(1, 0, 1), (2, 0, 1), (2, 0, 2), (3, 0, 2), (0, 2, 1), (0, 2, 2), (1, 2, 1), (2, 2, 1), (2, 2, 2)]


def _quiver(vertices, arrows, pairs=()):
    return {
        "vertices": [{"id": v, "class": c} for v, c in vertices],
        "pairs": [list(p) for p in pairs],
        "arrows": [{"id": a, "src": s, "dst": d} for a, s, d in arrows],
    }


# name -> (quiver description, dims, max polynomial degree)
INSTANCES = {
    "o1-loop": (_quiver([("s", "orthogonal")], [("a", "s", "s")]), {"s": 1}, 4),
    "o2-loop": (_quiver([("s", "orthogonal")], [("a", "s", "s")]), {"s": 2}, 4),
    "o3-loop": (_quiver([("s", "orthogonal")], [("a", "s", "s")]), {"s": 3}, 4),
    "o2-two-loops": (_quiver([("s", "orthogonal")], [("a", "s", "s"), ("b", "s", "s")]), {"s": 2}, 4),
    "o1-o2-both-ways": (
        _quiver([("s", "orthogonal"), ("t", "orthogonal")], [("a", "s", "t"), ("b", "t", "s")]),
        {"s": 1, "t": 2},
        4,
    ),
    "sp2-loop": (_quiver([("t", "symplectic")], [("a", "t", "t")]), {"t": 2}, 4),
    "o2-to-sp2": (_quiver([("s", "orthogonal"), ("t", "symplectic")], [("a", "s", "t")]), {"s": 2, "t": 2}, 4),
    "o2-sp2-both-ways": (
        _quiver([("s", "orthogonal"), ("t", "symplectic")], [("a", "s", "t"), ("b", "t", "s")]),
        {"s": 2, "t": 2},
        4,
    ),
    "gl2-loop": (_quiver([("u", "gl"), ("v", "gl")], [("a", "u", "u")], [("u", "v")]), {"u": 2, "v": 2}, 4),
    "gl2-cross": (
        _quiver([("u", "gl"), ("v", "gl")], [("a", "u", "v"), ("b", "v", "u")], [("u", "v")]),
        {"u": 2, "v": 2},
        4,
    ),
    "mixed-cycle": (
        _quiver(
            [("s", "orthogonal"), ("t", "symplectic"), ("u", "gl"), ("v", "gl")],
            [("a", "s", "t"), ("b", "t", "u"), ("c", "s", "v")],
            [("u", "v")],
        ),
        {"s": 1, "t": 2, "u": 1, "v": 1},
        4,
    ),
    "o2-gl1-sp2-loop": (
        _quiver(
            [("s", "orthogonal"), ("t", "symplectic"), ("u", "gl"), ("v", "gl")],
            [("a", "s", "u"), ("b", "u", "t"), ("c", "t", "t")],
            [("u", "v")],
        ),
        {"s": 2, "t": 2, "u": 1, "v": 1},
        4,
    ),
}


def load_instance(name):
    d, dims, max_d = INSTANCES[name]
    return SymQuiver.from_dict(d), dict(dims), max_d


@dataclass
class SuiteConfig:
    seed: int = 0
    max_word_len: int = 4
    max_degree: int = 4
    invariance_samples: int = 100
    pfaffian_samples: int = 200
    extension_samples: int = 30
    guard: int = DEFAULT_GUARD
    instances: list = field(default_factory=lambda: list(INSTANCES))
    corrupt: object = None


def worker_count(requested=None):
    """Number of worker processes, capped by ``QUIVINV_THREADS``."""
    n = requested or os.cpu_count() or 1
    cap = os.environ.get("QUIVINV_THREADS")
    if cap:
        try:
            n = min(n, max(1, int(cap)))
        except ValueError:
            pass
    return max(1, n)


def parallel_map(fn, items, workers=None):
    """Map in worker processes, returning results in input order."""
    items = list(items)
    workers = min(worker_count(workers), len(items)) if items else 1
    if workers <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, items))


def _fft_job(args):
    case, guard = args
    return fft_check(*case, guard=guard)


def spanning_job(args):
    name, max_word_len, max_degree, guard = args
    q, dims, max_d = load_instance(name)
    top = min(max_d, max_degree)
    rows = [check_spanning(q, dims, d, max_word_len, guard) for d in range(1, top + 1)]
    return {"instance": name, "degrees": rows, "pass": all(r["pass"] for r in rows)}


def invariance_job(args):
    name, max_word_len, samples, seed, corrupt = args
    q, dims, _ = load_instance(name)
    words = generators(q, dims, max_word_len, seed=seed)
    rep = invariance_report(words, q, dims, samples, seed, corrupt)
    rep["instance"] = name
    return rep


def fft_section(workers=None, guard=DEFAULT_GUARD, cases=FFT_CASES):
    rows = parallel_map(_fft_job, [(tuple(c), guard) for c in cases], workers)
    return {"cases": rows, "pass": all(r["pass"] for r in rows)}


def spanning_section(cfg, workers=None):
    rows = parallel_map(spanning_job, [(n, cfg.max_word_len, cfg.max_degree, cfg.guard) for n in cfg.instances], workers)
    return {"instances": rows, "pass": all(r["pass"] for r in rows)}


def invariance_section(cfg, workers=None):
    jobs = [(n, cfg.max_word_len, cfg.invariance_samples, cfg.seed, cfg.corrupt) for n in cfg.instances]
    rows = parallel_map(invariance_job, jobs, workers)
    total = sum(r["samples"] for r in rows)
    flipped = sum(r["det_minus_one_samples"] for r in rows)
    failures = sum(r["total_failures"] for r in rows)
    return {
        "instances": [
            {k: r[k] for k in ("instance", "samples", "det_minus_one_samples", "failures",
                               "compatibility_failures", "total_failures")}
            for r in rows
        ],
        "total_samples": total,
        "det_minus_one_samples": flipped,
        "total_failures": failures,
        "pass": failures == 0,
    }


def pfaffian_section(cfg):
    transform = pfaffian_transform_check(cfg.pfaffian_samples, cfg.seed)
    degree = [generic_degree_report(PfaffianContext(2, m), 4, cfg.guard) for m in (1, 2, 3)]
    membership = [
        dict(pf_square_membership(PfaffianContext(dw, 1), cfg.guard), dim_w=dw, m=1) for dw in (2, 4)
    ]
    extension = [so_extension_check(PfaffianContext(dw, m), cfg.extension_samples, cfg.seed, pf_square_degree=False)
                 for dw, m in ((2, 1), (2, 3), (4, 1), (4, 2), (6, 1))]
    return {
        "transform": transform,
        "degree_reports": degree,
        "pf_square": membership,
        "extension": extension,
        "pass": transform["pass"]
        and all(r["pass"] for r in degree)
        and all(r["member"] for r in membership)
        and all(r["pass"] for r in extension),
    }


MULTIPLICITY_CASES = [
    ((2, (1, 1)), 1),
    ((2, (1, 2)), 2),
    ((3, (1, 1)), 2),
    ((2, (2, 2)), 8),
    ((2, (1, 1, 1)), 2),
    ((2, (1, 1, 1, 1)), 8),
]


def multiplicity_section():
    rows = []
    for (g, ranks), expected in MULTIPLICITY_CASES:
        got = multiplicity(make_spec(g, list(ranks)))
        rows.append({"genus": g, "ranks": list(ranks), "multiplicity": got, "expected": expected,
                     "pass": got == expected})
    return {"cases": rows, "pass": all(r["pass"] for r in rows)}


def tangent_section():
    rows = []
    for g in (2, 3):
        for r1 in (1, 2):
            for r2 in (1, 2):
                spec = make_spec(g, [r1, r2])
                formula = corollary_tangent_dim(spec)
                series = regraded_t_coefficient(spec)
                rows.append({"genus": g, "ranks": [r1, r2], "formula": formula, "series_t_coefficient": series,
                             "pass": formula == series})
    anchor = corollary_tangent_dim(make_spec(2, [1, 2]))
    return {"cases": rows, "anchor_g2_r12": anchor, "pass": all(r["pass"] for r in rows) and anchor == 4}


def fiber_sweep(max_rank=4, max_summands=3, max_mult=2):
    """Every orthogonal-flavor spec with summand ranks up to ``max_rank``.

    Up to ``max_summands`` summands of any kind, multiplicity spaces up to
    ``max_mult``.  The expected value is recomputed here from the parity
    rule rather than taken from the predicate.
    """
    from itertools import combinations_with_replacement

    pieces = []
    for r in range(1, max_rank + 1):
        for m in range(1, max_mult + 1):
            pieces.append(SummandSpec(ORTHOGONAL, r, m))
            pieces.append(SummandSpec(PAIR, r, m))
            if r % 2 == 0 and m % 2 == 0:
                pieces.append(SummandSpec(SYMPLECTIC, r, m))
    checked = odd = 0
    failures = []
    for k in range(1, max_summands + 1):
        for combo in combinations_with_replacement(pieces, k):
            spec = DecompositionSpec(2, combo, ORTHOGONAL)
            checked += 1
            c = fiber_cardinality(spec)
            if spec.total_rank % 2:
                odd += 1
                if c != 1:
                    failures.append(spec.to_dict())
                    continue
            all_even = all(s.rank % 2 == 0 for s in combo if s.kind == ORTHOGONAL)
            if (c == 2) != (all_even and spec.total_rank % 2 == 0):
                failures.append(spec.to_dict())
    return {"specs_checked": checked, "odd_total_rank": odd, "failures": failures, "pass": not failures}


def run_suite(cfg=None, workers=None):
    """Everything the acceptance criteria ask for, as one JSON-ready dict."""
    cfg = cfg or SuiteConfig()
    report = {
        "config": {k: v for k, v in asdict(cfg).items()},
        "fft": fft_section(workers, cfg.guard),
        "spanning": spanning_section(cfg, workers),
        "invariance": invariance_section(cfg, workers),
        "pfaffian": pfaffian_section(cfg),
        "multiplicity": multiplicity_section(),
        "tangent": tangent_section(),
        "fiber": fiber_sweep(),
    }
    report["pass"] = all(v["pass"] for k, v in report.items() if isinstance(v, dict) and "pass" in v)
    return report
