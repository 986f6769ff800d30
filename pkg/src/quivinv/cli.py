"""Command line front end.

Exit codes: 0 pass, 1 a theorem check failed, 2 bad input, 3 guard rail
exceeded, 4 unsupported configuration.
"""

import argparse
import json
import sys
from dataclasses import dataclass

from .errors import QuivInvError, TooLarge, UnsupportedConfiguration
from .evaluate import invariance_report
from .local_model import load_spec, local_model_report
from .oracle import DEFAULT_GUARD, check_spanning
from .quiver import VertexKind, build_doubled, parse_quiver, validate_dimension
from .suite import SuiteConfig, fft_section, run_suite
from .words import enumerate_cycles, generators

EXIT_PASS, EXIT_FAIL, EXIT_INPUT, EXIT_GUARD, EXIT_UNSUPPORTED = 0, 1, 2, 3, 4


@dataclass
class RunConfig:
    command: str
    input: str = None
    max_degree: int = None
    max_word_len: int = None
    samples: int = None
    seed: int = 0
    json: bool = False
    guard_rail: int = DEFAULT_GUARD
    negative_control: str = None
    workers: int = None

    def word_len(self, default=None):
        return self.max_word_len or self.max_degree or default


def _positive(text):
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return n


def _nonnegative(text):
    n = int(text)
    if n < 0:
        raise argparse.ArgumentTypeError("must be a nonnegative integer")
    return n


def build_parser():
    p = argparse.ArgumentParser(prog="quivinv", description="Invariants of symmetric quiver representations.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--input", help="JSON file (quiver description or local-model spec)")
        sp.add_argument("--max-degree", type=_positive, help="largest polynomial degree / word length")
        sp.add_argument("--max-word-len", type=_positive, help="largest trace word length")
        sp.add_argument("--samples", type=_positive, help="random samples for invariance checks")
        sp.add_argument("--seed", type=_nonnegative, default=0)
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.add_argument("--guard-rail", type=_positive, default=DEFAULT_GUARD,
                        help="maximum size of a monomial space")
        sp.add_argument("--workers", type=_positive, help="worker processes (capped by QUIVINV_THREADS)")

    common(sub.add_parser("gens", help="list trace-word generators with an invariance spot check"))
    v = sub.add_parser("verify", help="check the generator theorems (bundled suite without --input)")
    common(v)
    v.add_argument("--negative-control", nargs="?", const="skip-sign", choices=["skip-sign", "transpose"],
                   help="deliberately corrupt adjoint evaluation; the run must then fail")
    common(sub.add_parser("local", help="local model of the moduli space at a polystable point"))
    return p


def _default_dims(q):
    return {v: 2 if k is VertexKind.SYMPLECTIC else 1 for v, k in q.vertices}


def _read_json(path):
    if path is None:
        raise QuivInvError("--input is required")
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise QuivInvError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise QuivInvError(f"{path} is not valid JSON: {exc}") from exc


def _load_quiver(path):
    d = _read_json(path)
    if not isinstance(d, dict):
        raise QuivInvError("quiver description must be a JSON object")
    q, dims = parse_quiver(d)
    if dims is None:
        dims = validate_dimension(q, _default_dims(q))
    return q, dims


def cmd_gens(cfg):
    q, dims = _load_quiver(cfg.input)
    length = cfg.word_len()
    if length is None:
        raise QuivInvError("gens needs --max-degree or --max-word-len")
    samples = cfg.samples or 20
    words = enumerate_cycles(build_doubled(q), length) if q.arrows else []
    nonzero = set(generators(q, dims, length, seed=cfg.seed))
    rep = invariance_report(words, q, dims, samples, cfg.seed) if words else {"failures": [], "total_failures": 0,
                                                                              "compatibility_failures": {}}
    rows = [
        {"word": w.to_json(), "length": len(w), "nonzero": w in nonzero, "invariance_failures": f}
        for w, f in zip(words, rep["failures"])
    ]
    out = {
        "dims": dict(sorted(dims.items())),
        "max_word_len": length,
        "samples": samples,
        "seed": cfg.seed,
        "words": rows,
        "compatibility_failures": rep.get("compatibility_failures", {}),
        "pass": rep["total_failures"] == 0,
    }
    lines = [f"{'word':<40} {'len':>3} {'nonzero':>7} {'fail':>4}"]
    for r in rows:
        text = " ".join(s["arrow"] + ("*" if s["star"] else "") for s in r["word"])
        lines.append(f"{text:<40} {r['length']:>3} {str(r['nonzero']):>7} {r['invariance_failures']:>4}")
    lines.append(f"{len(rows)} words, dims {out['dims']}, {'ok' if out['pass'] else 'INVARIANCE FAILURE'}")
    return out, lines, EXIT_PASS if out["pass"] else EXIT_FAIL


def _verify_quiver(cfg, d):
    q, dims = parse_quiver(d)
    if dims is None:
        dims = validate_dimension(q, _default_dims(q))
    max_d = cfg.max_degree or 4
    length = cfg.max_word_len or max_d
    rows = [check_spanning(q, dims, k, length, cfg.guard_rail) for k in range(1, max_d + 1)]
    words = generators(q, dims, length, seed=cfg.seed)
    inv = invariance_report(words, q, dims, cfg.samples or 100, cfg.seed, cfg.negative_control)
    inv.pop("words")
    out = {
        "dims": dict(sorted(dims.items())),
        "spanning": rows,
        "invariance": inv,
        "pass": all(r["pass"] for r in rows) and inv["total_failures"] == 0,
    }
    return out


def cmd_verify(cfg):
    if cfg.input is None:
        sc = SuiteConfig(seed=cfg.seed, guard=cfg.guard_rail, corrupt=cfg.negative_control)
        if cfg.max_word_len:
            sc.max_word_len = cfg.max_word_len
        if cfg.max_degree:
            sc.max_degree = cfg.max_degree
        if cfg.samples:
            sc.invariance_samples = cfg.samples
        out = run_suite(sc, cfg.workers)
        lines = [f"{k:<14} {'pass' if v['pass'] else 'FAIL'}"
                 for k, v in out.items() if isinstance(v, dict) and "pass" in v]
    else:
        d = _read_json(cfg.input)
        if not isinstance(d, dict):
            raise QuivInvError("input must be a JSON object")
        if "fft" in d:
            try:
                cases = [tuple(int(x) for x in c) for c in d["fft"]]
                if any(len(c) != 3 for c in cases):
                    raise ValueError
            except (TypeError, ValueError) as exc:
                raise QuivInvError("fft entries must be [N, N_sp, i] triples") from exc
            out = fft_section(cfg.workers, cfg.guard_rail, cases)
            lines = [f"N={r['N']} N'={r['N_sp']} i={r['i']}: span {r['pairing_span_dim']} oracle {r['oracle_dim']} "
                     f"{'pass' if r['pass'] else 'FAIL'}" for r in out["cases"]]
        else:
            out = _verify_quiver(cfg, d)
            lines = [f"degree {r['degree']}: oracle {r['oracle_dim']} span {r['span_dim']} "
                     f"{'pass' if r['pass'] else 'FAIL'}" for r in out["spanning"]]
            lines.append(f"invariance: {out['invariance']['samples']} samples, "
                         f"{out['invariance']['total_failures']} failures")
        if cfg.negative_control:
            out["negative_control"] = cfg.negative_control
    lines.append("PASS" if out["pass"] else "FAIL")
    return out, lines, EXIT_PASS if out["pass"] else EXIT_FAIL


def cmd_local(cfg):
    if cfg.input is None:
        raise QuivInvError("local needs --input with a decomposition spec")
    spec = load_spec(cfg.input)
    report = local_model_report(spec)
    out = report.to_json()
    checks = report.cross_check
    ok = checks["riemann_roch_ok"] and checks["quiver_ok"]
    if "closed_form_multiplicity" in checks:
        ok = ok and checks["closed_form_multiplicity"] == report.multiplicity
    if "corollary_tangent_dim" in checks:
        ok = ok and checks["corollary_tangent_dim"] == checks["regraded_t_coefficient"] == report.tangent_dim
    out["pass"] = ok
    lines = [f"genus {spec.genus}, flavor {spec.flavor}, total rank {spec.total_rank}"]
    for item in out["h1ad"]["summands"]:
        lines.append(f"  {item['block']:<8} {item['label']:<22} {item['h1']:>4} x {item['tensor']:<4} = {item['dim']}")
    lines.append(f"  H1(Ad P) total {out['h1ad']['total']}")
    for key in ("tangent_dim", "multiplicity", "fiber_cardinality"):
        lines.append(f"{key:<18} {out[key]!s:<8} {out['provenance'].get(key, '')}")
    for note in report.unsupported:
        lines.append(f"unsupported: {note}")
    if not ok:
        return out, lines, EXIT_FAIL
    return out, lines, EXIT_UNSUPPORTED if report.unsupported else EXIT_PASS


COMMANDS = {"gens": cmd_gens, "verify": cmd_verify, "local": cmd_local}


def run(cfg):
    """Execute ``cfg``; returns ``(exit code, payload or None, human lines)``."""
    try:
        out, lines, code = COMMANDS[cfg.command](cfg)
    except TooLarge as exc:
        return EXIT_GUARD, {"error": "too-large", "message": str(exc)}, [f"guard rail: {exc}"]
    except UnsupportedConfiguration as exc:
        return EXIT_UNSUPPORTED, {"error": "unsupported", "message": str(exc)}, [f"unsupported: {exc}"]
    except (QuivInvError, OSError, KeyError, TypeError) as exc:
        return EXIT_INPUT, {"error": "input", "message": str(exc)}, [f"input error: {exc}"]
    return code, out, lines


def main(argv=None):
    args = build_parser().parse_args(argv)
    cfg = RunConfig(
        command=args.command,
        input=args.input,
        max_degree=args.max_degree,
        max_word_len=args.max_word_len,
        samples=args.samples,
        seed=args.seed,
        json=args.json,
        guard_rail=args.guard_rail,
        negative_control=getattr(args, "negative_control", None),
        workers=args.workers,
    )
    code, out, lines = run(cfg)
    if cfg.json:
        sys.stdout.write(json.dumps(out, sort_keys=True, indent=2) + "\n")
    else:
        stream = sys.stdout if code in (EXIT_PASS, EXIT_FAIL, EXIT_UNSUPPORTED) else sys.stderr
        stream.write("\n".join(lines) + "\n")
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
