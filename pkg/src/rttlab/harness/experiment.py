"""Sweep runner: generate, measure, solve, persist one CSV row per point."""

from __future__ import annotations

import csv
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields
from pathlib import Path

from ..errors import RttLabError
from ..graph import min_degree
from ..independence import alpha_r, alpha_star_r
from ..patterns import Pattern
from ..tiling import allowance, has_factor, max_tiling
from .config import ExperimentConfig, SweepPoint
from .io import write_graph


@dataclass
class ExperimentRecord:
    spec: str
    pattern: str
    eta: str
    r: int
    n: int | str = ""
    min_degree: int | str = ""
    alpha_r: int | str = ""
    alpha_r_exact: bool | str = ""
    alpha_star: int | str = ""
    alpha_star_exact: bool | str = ""
    copies: int | str = ""
    uncovered: int | str = ""
    allowance: int | str = ""
    quasiperfect: bool | str = ""
    factor: str = ""
    optimal: bool | str = ""
    nodes: int | str = ""
    wall_time: str = ""
    seed: int = 0
    graph_file: str = ""
    status: str = "ok"

    def row(self) -> dict[str, str]:
        out = {}
        for k, v in asdict(self).items():
            out[k] = str(v).lower() if isinstance(v, bool) else str(v)
        return out


COLUMNS = tuple(f.name for f in fields(ExperimentRecord))
VOLATILE = ("wall_time",)


def _factor_verdict(g, f: Pattern, uncovered: int, optimal: bool, budget: int) -> str:
    if uncovered == 0:
        return "yes"
    if g.n % f.k or optimal:
        return "no"
    return has_factor(g, f, budget)


def run_point(point: SweepPoint, graph_dir: Path | None = None, rel_to: Path | None = None) -> ExperimentRecord:
    """Everything for one sweep point; failures land in ``status``."""
    start = time.perf_counter()
    rec = ExperimentRecord(str(point.spec), point.pattern, str(point.eta), point.r, seed=point.seed)
    try:
        f = Pattern.parse(point.pattern)
        g = point.spec.build(point.seed).graph
        rec.n = g.n
        rec.min_degree = min_degree(g) if g.n else 0
        if graph_dir is not None:
            path = write_graph(g, graph_dir / f"{point.index:04d}.g6")
            rec.graph_file = str(path.relative_to(rel_to)) if rel_to else str(path)
        inexact = []
        if "alpha_r" in point.measure and g.n:
            a = alpha_r(g, point.r, point.alpha_budget)
            rec.alpha_r, rec.alpha_r_exact = a.value, a.exact
            if not a.exact:
                inexact.append("alpha_r")
        if "alpha_star" in point.measure and g.n >= point.r:
            a = alpha_star_r(g, point.r, point.alpha_budget)
            rec.alpha_star, rec.alpha_star_exact = a.value, a.exact
            if not a.exact:
                inexact.append("alpha_star")
        out = max_tiling(g, f, point.budget)
        rec.copies = out.copies
        rec.uncovered = g.n - f.k * out.copies
        rec.allowance = allowance(point.eta, f.k)
        if rec.uncovered <= rec.allowance:
            rec.quasiperfect = True
        elif out.optimal:
            rec.quasiperfect = False
        else:
            rec.quasiperfect = "unknown"
        rec.optimal = out.optimal
        rec.nodes = out.nodes
        rec.factor = _factor_verdict(g, f, rec.uncovered, out.optimal, point.budget)
        if not out.optimal:
            inexact.append("tiling")
        if inexact:
            rec.status = "budget:" + "+".join(inexact)
    except (RttLabError, ValueError) as err:
        rec.status = "error:" + type(err).__name__ + ":" + str(err).replace("\n", " ")
    rec.wall_time = f"{time.perf_counter() - start:.4f}"
    return rec


def _run(args) -> ExperimentRecord:
    return run_point(*args)


def run_experiment(config: ExperimentConfig, *, persist_graphs: bool = True) -> list[ExperimentRecord]:
    """Run every sweep point and write the CSV; rows come back in sweep order."""
    out = Path(config.output)
    out.parent.mkdir(parents=True, exist_ok=True)
    graph_dir = out.parent / (out.stem + "_graphs") if persist_graphs else None
    jobs = [(p, graph_dir, out.parent) for p in config.points()]
    if config.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            records = list(pool.map(_run, jobs))
    else:
        records = [_run(j) for j in jobs]
    write_records(records, out)
    return records


def write_records(records, path) -> Path:
    path = Path(path)
    with path.open("w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=COLUMNS, lineterminator="\n")
        w.writeheader()
        for rec in records:
            w.writerow(rec.row())
    return path


def read_records(path) -> list[dict[str, str]]:
    """Rows of a results CSV; raises ValueError when the header is not ours."""
    with Path(path).open(newline="") as fh:
        reader = csv.DictReader(fh)
        rows = list(reader)
        header = reader.fieldnames
    if header is None:
        return []
    missing = [c for c in COLUMNS if c not in header]
    if missing:
        raise ValueError(f"schema mismatch: missing columns {missing}")
    return rows


def stable_rows(rows) -> list[tuple[str, ...]]:
    """Rows with the wall-clock columns dropped, for golden comparisons."""
    keep = [c for c in COLUMNS if c not in VOLATILE]
    return [tuple(r[c] if isinstance(r, dict) else r.row()[c] for c in keep) for r in rows]
