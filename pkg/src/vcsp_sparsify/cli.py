"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field

from . import generators
from .applications import (
    TwoLinSystem, TwoSatFormula, decode_2lin, decode_2sat, encode_2lin, encode_2sat,
    sum_mod_value, twolin_value_batch, twosat_value_batch, demonstrate_sum_nonsparsifiable,
)
from .double_cover import gamma
from .hypergraph import KSatFormula, ksat_value_batch, sparsify_ksat
from .io import ParseError, format_cover, format_instance, parse_instance
from .model import VcspInstance, WeightedDigraph, value_batch
from .oracle import (
    MAX_ENUMERATION_N, VerificationResult, and_completeness_check, exhaustive_max_error,
)
from .pipeline import PredicateEntry, SparsifyReport, sparsify_instance
from .predicates import ALL_PREDICATES, SparsifiabilityClass, classify
from .sparsifier import SamplerConfig, size_bound

EXIT_OK, EXIT_VERIFY, EXIT_USAGE = 0, 1, 2


@dataclass
class RunConfig:
    command: str
    input: str | None = None
    output: str | None = None
    eps: float = 0.25
    seed: int = 0
    verify: bool = False
    format: str | None = None
    oversample: float = 8.0
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if not 0 < self.eps < 1:
            raise ValueError(f"eps must lie in (0, 1), got {self.eps}")


def _evaluator(obj):
    if isinstance(obj, VcspInstance):
        return value_batch
    if isinstance(obj, TwoSatFormula):
        return twosat_value_batch
    if isinstance(obj, TwoLinSystem):
        return twolin_value_batch
    if isinstance(obj, KSatFormula):
        return ksat_value_batch
    raise TypeError(type(obj).__name__)


def sparsify_any(obj, cfg: SamplerConfig):
    """Sparsify an instance of any supported kind; output has the input's kind."""
    if isinstance(obj, KSatFormula):
        out = sparsify_ksat(obj, cfg)
        report = SparsifyReport(cfg.eps, cfg.seed, [
            PredicateEntry("clauses", SparsifiabilityClass.NONTRIVIAL, len(obj.clauses), len(out.clauses))
        ])
        return out, report
    if isinstance(obj, TwoSatFormula):
        out, report = sparsify_instance(encode_2sat(obj), cfg)
        return decode_2sat(out), report
    if isinstance(obj, TwoLinSystem):
        out, report = sparsify_instance(encode_2lin(obj), cfg)
        return decode_2lin(out), report
    return sparsify_instance(obj, cfg)


def verify_pair(original, sparsified) -> VerificationResult:
    if type(original) is not type(sparsified) or original.n != sparsified.n:
        raise ValueError("instances must have the same kind and variable count")
    return exhaustive_max_error(original, sparsified, _evaluator(original), original.n)


def _read(path: str, kind: str | None):
    with open(path) as f:
        return parse_instance(f.read(), kind)


def _write(text: str, path: str | None, out):
    if path is None or path == "-":
        out.write(text)
    else:
        with open(path, "w") as f:
            f.write(text)


def _cmd_classify(cfg: RunConfig, out, err) -> int:
    for p in ALL_PREDICATES:
        bits = "".join(map(str, p.bits))
        out.write(f"{p.name}\t{bits}\t{classify(p).value}\n")
    return EXIT_OK


def _cmd_sparsify(cfg: RunConfig, out, err) -> int:
    obj = _read(cfg.input, cfg.format)
    scfg = SamplerConfig(cfg.eps, cfg.seed, cfg.oversample)
    result, report = sparsify_any(obj, scfg)
    status = EXIT_OK
    if cfg.verify:
        if obj.n > MAX_ENUMERATION_N:
            err.write(f"warning: --verify skipped, {obj.n} variables exceed the enumeration limit\n")
        else:
            report.verified = verify_pair(obj, result)
            if not report.verified.passes(cfg.eps):
                status = EXIT_VERIFY
    _write(format_instance(result), cfg.output, out)
    report_path = cfg.extra.get("report")
    _write(report.to_json() + "\n", report_path, err if report_path is None else out)
    return status


def _cmd_gamma(cfg: RunConfig, out, err) -> int:
    obj = _read(cfg.input, cfg.format)
    if isinstance(obj, TwoSatFormula):
        obj = encode_2sat(obj)
    elif isinstance(obj, TwoLinSystem):
        obj = encode_2lin(obj)
    elif not isinstance(obj, VcspInstance):
        raise ValueError("gamma needs a two-variable instance")
    g = WeightedDigraph.from_edges(obj.n, [(c.u, c.v, c.weight) for c in obj.constraints])
    _write(format_cover(gamma(g)), cfg.output, out)
    return EXIT_OK


def _cmd_verify(cfg: RunConfig, out, err) -> int:
    original = _read(cfg.input, cfg.format)
    sparsified = _read(cfg.extra["sparsified"], cfg.format)
    res = verify_pair(original, sparsified)
    payload = dict(res.to_dict(), eps=cfg.eps, passed=res.passes(cfg.eps))
    _write(json.dumps(payload, indent=2, sort_keys=True) + "\n", cfg.output, out)
    return EXIT_OK if res.passes(cfg.eps) else EXIT_VERIFY


def _cmd_demo(cfg: RunConfig, out, err) -> int:
    n, m, k, a = (cfg.extra[key] for key in ("n", "m", "k", "a"))
    g = generators.random_strongly_asymmetric(n, m, cfg.seed)
    and_demo, sum_demo = [], []
    ok = True
    for e, (u, v, w) in enumerate(g.edges):
        cand = g.without_edge(e)
        viol = and_completeness_check(g, cand)
        ok &= viol is not None and viol.candidate_value == 0 and viol.original_value > 0
        and_demo.append({
            "dropped": [u, v, w],
            "witness": None if viol is None else sorted(viol.subset),
            "original": None if viol is None else viol.original_value,
            "sparsified": None if viol is None else viol.candidate_value,
        })
        A = demonstrate_sum_nonsparsifiable(g, e, k, a)
        full, rest = sum_mod_value(g, k, a, A), sum_mod_value(cand, k, a, A)
        ok &= rest == 0 and full > 0
        sum_demo.append({"dropped": [u, v, w], "assignment": list(A), "original": full, "sparsified": rest})
    payload = {
        "graph": {"n": n, "edges": [list(e) for e in g.edges]},
        "and": and_demo,
        "sum_mod": {"k": k, "a": a, "cases": sum_demo},
        "all_witnessed": bool(ok),
    }
    _write(json.dumps(payload, indent=2, sort_keys=True) + "\n", cfg.output, out)
    return EXIT_OK if ok else EXIT_VERIFY


def _cmd_bench(cfg: RunConfig, out, err) -> int:
    if cfg.input:
        obj = _read(cfg.input, cfg.format)
    else:
        n, m = cfg.extra["n"], cfg.extra["m"]
        obj = generators.random_2lin(n, m, cfg.seed)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["eps", "seed", "n", "m_in", "m_out", "size_bound", "max_rel_error", "zero_mismatch"])
    for eps in cfg.extra["eps_list"]:
        for s in range(cfg.seed, cfg.seed + cfg.extra["seeds"]):
            result, report = sparsify_any(obj, SamplerConfig(eps, s, cfg.oversample))
            if obj.n <= MAX_ENUMERATION_N:
                res = verify_pair(obj, result)
                err_val, zm = f"{res.max_rel_error:.6g}", res.zero_mismatch
            else:
                err_val, zm = "", ""
            w.writerow([eps, s, obj.n, report.total_in, report.total_out,
                        f"{size_bound(obj.n, eps, cfg.oversample):.1f}", err_val, zm])
    _write(buf.getvalue(), cfg.output, out)
    return EXIT_OK


COMMANDS = {
    "classify": _cmd_classify,
    "sparsify": _cmd_sparsify,
    "gamma": _cmd_gamma,
    "verify": _cmd_verify,
    "demo-nonsparsifiable": _cmd_demo,
    "bench": _cmd_bench,
}


def run(cfg: RunConfig, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        return COMMANDS[cfg.command](cfg, out, err)
    except ParseError as exc:
        err.write(f"parse error: {exc}\n")
        return EXIT_USAGE
    except (ValueError, OSError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE


def _eps_list(text: str) -> list[float]:
    return [float(x) for x in text.split(",") if x]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vcsp-sparsify", description="Sparsify two-variable boolean VCSPs.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_input=True):
        if with_input:
            p.add_argument("input")
        p.add_argument("-o", "--output", default=None, help="output path (default: stdout)")
        p.add_argument("--format", choices=["vcsp", "2sat", "ksat", "2lin"], default=None,
                       help="force the input kind (wcnf files are 2sat or ksat)")

    sub.add_parser("classify", help="list all 16 predicates with their class")

    p = sub.add_parser("sparsify", help="sparsify an instance")
    common(p)
    p.add_argument("--eps", type=float, default=0.25)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--oversample", type=float, default=8.0)
    p.add_argument("--verify", action="store_true", help="exhaustively check every assignment (n <= 24)")
    p.add_argument("--report", default=None, help="JSON report path (default: stderr)")

    p = sub.add_parser("gamma", help="print the bipartite double cover")
    common(p)

    p = sub.add_parser("verify", help="compare an instance with a sparsified version")
    common(p)
    p.add_argument("sparsified")
    p.add_argument("--eps", type=float, default=0.25)

    p = sub.add_parser("demo-nonsparsifiable", help="show And and Sum-mod-k witnesses on a random graph")
    common(p, with_input=False)
    p.add_argument("--n", type=int, default=6)
    p.add_argument("--m", type=int, default=8)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--a", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("bench", help="output size and error against eps, as CSV")
    p.add_argument("input", nargs="?", default=None)
    p.add_argument("-o", "--output", default=None)
    p.add_argument("--format", choices=["vcsp", "2sat", "ksat", "2lin"], default=None)
    p.add_argument("--eps", type=_eps_list, default=[0.9, 0.5, 0.25])
    p.add_argument("--seeds", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--oversample", type=float, default=8.0)
    p.add_argument("--n", type=int, default=12, help="random 2LIN size when no input is given")
    p.add_argument("--m", type=int, default=2000)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    extra = {}
    for key in ("report", "sparsified", "n", "m", "k", "a", "seeds"):
        if hasattr(args, key):
            extra[key] = getattr(args, key)
    eps = getattr(args, "eps", 0.25)
    if isinstance(eps, list):
        extra["eps_list"] = eps
        eps = 0.25
        if any(not 0 < e < 1 for e in extra["eps_list"]):
            raise ValueError("every eps must lie in (0, 1)")
    return RunConfig(
        command=args.command,
        input=getattr(args, "input", None),
        output=getattr(args, "output", None),
        eps=eps,
        seed=getattr(args, "seed", 0),
        verify=getattr(args, "verify", False),
        format=getattr(args, "format", None),
        oversample=getattr(args, "oversample", 8.0),
        extra=extra,
    )


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
