"""Command line entry point: ``rttlab <subcommand> ...``.

Exit codes: 0 success, 1 usage error, 2 verification or property failure,
3 budget exhausted (whatever was computed is still printed or written).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from fractions import Fraction
from pathlib import Path

from ..absorption import detect_partition, montgomery_template, verify_absorber
from ..errors import ConstructionError, ParseError, PatternError, RttLabError
from ..graph import Graph, min_degree
from ..independence import alpha_r, alpha_star_r
from ..patterns import Pattern
from ..tiling import allowance, max_tiling
from .config import ConfigError, ConstructionSpec, ExperimentConfig, rational
from .experiment import run_experiment
from .io import dumps, read_graph, write_graph
from .report import report

OK, USAGE, FAILED, BUDGET = 0, 1, 2, 3


class _Usage(Exception):
    pass


def _emit(payload: dict, args, text: str | None = None) -> None:
    body = json.dumps(payload, sort_keys=True, default=str, indent=2) + "\n" if args.json else (text or "")
    if args.out and args.command not in ("generate", "experiment"):
        Path(args.out).write_text(body)
    else:
        sys.stdout.write(body)


def load_graph(source: str, seed: int, fmt: str | None = None) -> Graph:
    """A path to a graph file, or a construction literal such as ``g0:n=10,eta=3/10``."""
    p = Path(source)
    if p.exists():
        return read_graph(p, fmt)
    if ":" in source:
        return ConstructionSpec.parse(source).build(seed).graph
    raise _Usage(f"{source!r} is neither a file nor a construction literal")


def _vertices(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise _Usage(f"expected comma-separated vertices, got {text!r}") from None


def cmd_generate(args) -> int:
    con = ConstructionSpec.parse(args.spec).build(args.seed)
    g = con.graph
    if args.out:
        write_graph(g, args.out, args.format)
    else:
        sys.stdout.write(dumps(g, args.format or "graph6"))
    info = {"spec": args.spec, "n": g.n, "m": g.num_edges, "min_degree": min_degree(g) if g.n else 0}
    info.update({k: v for k, v in con.record.items() if isinstance(v, (int, str, bool, tuple, list))
                 and k != "base_edges"})
    sys.stderr.write(json.dumps(info, sort_keys=True, default=str) + "\n")
    return OK


def cmd_solve(args) -> int:
    g = load_graph(args.graph, args.seed, args.format)
    f = Pattern.parse(args.pattern)
    out = max_tiling(g, f, args.budget)
    payload = {
        "n": g.n,
        "pattern": str(f),
        "copies": out.copies,
        "uncovered": g.n - f.k * out.copies,
        "optimal": out.optimal,
        "upper_bound": out.upper_bound,
        "nodes": out.nodes,
        "tiling": [list(c.vertices) for c in out.tiling.copies],
    }
    if args.eta is not None:
        payload["allowance"] = allowance(args.eta, f.k)
        payload["quasiperfect"] = payload["uncovered"] <= payload["allowance"] or (False if out.optimal else None)
    text = (f"{payload['copies']} copies of {f}, {payload['uncovered']} uncovered, "
            f"{'optimal' if out.optimal else f'bound {out.upper_bound}'} after {out.nodes} nodes\n")
    _emit(payload, args, text)
    return OK if out.optimal else BUDGET


def cmd_alpha(args) -> int:
    g = load_graph(args.graph, args.seed, args.format)
    rep = (alpha_star_r if args.star else alpha_r)(g, args.r, args.budget)
    name = f"alpha*_{args.r}" if args.star else f"alpha_{args.r}"
    payload = {"quantity": name, "value": rep.value, "exact": rep.exact, "witness": rep.witness}
    _emit(payload, args, f"{name} = {rep.value}{'' if rep.exact else ' (lower bound)'}\n")
    return OK if rep.exact else BUDGET


def cmd_verify_absorber(args) -> int:
    g = load_graph(args.graph, args.seed, args.format)
    f = Pattern.parse(args.pattern)
    s, a = _vertices(args.S), _vertices(args.A)
    try:
        res = verify_absorber(g, f, s, a, args.t, args.budget)
    except ValueError as err:
        _emit({"valid": False, "reason": str(err)}, args, f"invalid: {err}\n")
        return FAILED
    word = {True: "valid", False: "invalid", None: "undecided"}[res]
    _emit({"valid": res}, args, word + "\n")
    return {True: OK, False: FAILED, None: BUDGET}[res]


def cmd_template(args) -> int:
    tpl = montgomery_template(args.m, args.beta, args.seed, retries=args.retries)
    payload = {
        "m": tpl.m, "beta": str(tpl.beta), "x_size": tpl.x_size, "y_size": tpl.y_size, "z_size": tpl.z_size,
        "max_degree": tpl.max_degree, "sampled": tpl.sampled, "subsets_checked": tpl.subsets_checked,
        "attempts": tpl.attempts, "edges": [list(e) for e in tpl.edges],
    }
    text = (f"template m={tpl.m} beta={tpl.beta}: |X|={tpl.x_size} |Y|={tpl.y_size} |Z|={tpl.z_size}, "
            f"max degree {tpl.max_degree}, {tpl.subsets_checked} subsets "
            f"{'sampled' if tpl.sampled else 'checked exhaustively'}, attempt {tpl.attempts}\n")
    _emit(payload, args, text)
    return OK


def cmd_merge(args) -> int:
    g = load_graph(args.graph, args.seed, args.format)
    f = Pattern.parse(args.pattern)
    final, ev, log = detect_partition(g, f, args.delta, args.t, seed=args.seed)
    weak = ev.weak_within_pairs
    payload = {
        "initial_parts": ev.partition.as_lists(),
        "parts": final.as_lists(),
        "threshold": ev.threshold,
        "sampled": ev.sampled,
        "merges": [{"merged": [list(a) for a in m.merged], "plus": list(m.plus.coords),
                    "minus": list(m.minus.coords)} for m in log],
        "weak_within_pairs": weak,
    }
    lines = [f"{final.C} part(s) (initial {ev.partition.C}, threshold {ev.threshold})"]
    lines += [f"  part {i}: {p}" for i, p in enumerate(final.as_lists())]
    if weak:
        lines.append(f"  {len(weak)} within-part pairs lack a strong certificate")
    _emit(payload, args, "\n".join(lines) + "\n")
    return OK


def cmd_experiment(args) -> int:
    cfg = ExperimentConfig.load(args.config)
    if args.out:
        cfg = replace(cfg, output=Path(args.out))
    if args.workers:
        cfg = replace(cfg, workers=args.workers)
    records = run_experiment(cfg)
    bad = [r for r in records if r.status.startswith("error")]
    partial = [r for r in records if r.status.startswith("budget")]
    sys.stdout.write(f"{len(records)} rows written to {cfg.output}; {len(bad)} errors, {len(partial)} over budget\n")
    if bad:
        return FAILED
    return BUDGET if partial else OK


def cmd_report(args) -> int:
    try:
        text = report(args.csv, args.svg)
    except ValueError as err:
        sys.stderr.write(f"rttlab: {err}\n")
        return FAILED
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="RNG seed (default 0)")
    common.add_argument("--budget", type=int, default=argparse.SUPPRESS, help="search node budget (default 10^7)")
    common.add_argument("--format", choices=("graph6", "edgelist"), default=argparse.SUPPRESS,
                        help="graph file format (default: by extension)")
    common.add_argument("--out", default=argparse.SUPPRESS, help="output path")
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")

    parser = argparse.ArgumentParser(prog="rttlab", parents=[common], description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", parents=[common], help="build a graph from a construction literal")
    p.add_argument("spec")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("solve", parents=[common], help="maximum F-tiling")
    p.add_argument("graph", help="graph file or construction literal")
    p.add_argument("--pattern", default="K3")
    p.add_argument("--eta", type=rational, default=None)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("alpha", parents=[common], help="alpha_r or alpha*_r")
    p.add_argument("graph")
    p.add_argument("-r", type=int, default=2)
    p.add_argument("--star", action="store_true")
    p.set_defaults(func=cmd_alpha)

    p = sub.add_parser("verify-absorber", parents=[common], help="check an (F, t)-absorber")
    p.add_argument("graph")
    p.add_argument("--pattern", default="K3")
    p.add_argument("--S", required=True, help="comma-separated k-set")
    p.add_argument("--A", required=True, help="comma-separated absorber vertices")
    p.add_argument("-t", type=int, default=1)
    p.set_defaults(func=cmd_verify_absorber)

    p = sub.add_parser("template", parents=[common], help="build and verify a matching template")
    p.add_argument("-m", type=int, required=True)
    p.add_argument("--beta", type=rational, default=Fraction(1, 2))
    p.add_argument("--retries", type=int, default=200)
    p.set_defaults(func=cmd_template)

    p = sub.add_parser("merge", parents=[common], help="reachability partition and merging")
    p.add_argument("graph")
    p.add_argument("--pattern", default="K3")
    p.add_argument("--delta", type=rational, default=Fraction(1, 10))
    p.add_argument("-t", type=int, default=1)
    p.set_defaults(func=cmd_merge)

    p = sub.add_parser("experiment", parents=[common], help="run a sweep config")
    p.add_argument("config")
    p.add_argument("--workers", type=int, default=0)
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("report", parents=[common], help="summarise a results CSV")
    p.add_argument("csv")
    p.add_argument("--svg", default=None, help="write an uncovered-vs-n scatter here")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return OK if exc.code == 0 else USAGE
    for name, default in (("seed", 0), ("budget", 10**7), ("format", None), ("out", None), ("json", False)):
        if not hasattr(args, name):
            setattr(args, name, default)
    try:
        return args.func(args)
    except (_Usage, ConfigError, PatternError, ParseError, FileNotFoundError) as err:
        sys.stderr.write(f"rttlab: {err}\n")
        return USAGE
    except ConstructionError as err:
        sys.stderr.write(f"rttlab: {err}\n")
        return FAILED
    except RttLabError as err:
        sys.stderr.write(f"rttlab: {err}\n")
        return FAILED


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
