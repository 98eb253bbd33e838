"""Graph I/O, experiment configs, sweeps, reports and the command line."""

from __future__ import annotations

from .config import ConfigError, ConstructionSpec, ExperimentConfig, SweepPoint, rational
from .experiment import COLUMNS, ExperimentRecord, read_records, run_experiment, run_point, stable_rows, write_records
from .io import dumps, from_edgelist, from_graph6, loads, read_graph, to_edgelist, to_graph6, write_graph
from .report import report, scatter_svg, summary, table

__all__ = [
    "COLUMNS",
    "ConfigError",
    "ConstructionSpec",
    "ExperimentConfig",
    "ExperimentRecord",
    "SweepPoint",
    "dumps",
    "from_edgelist",
    "from_graph6",
    "loads",
    "rational",
    "read_graph",
    "read_records",
    "report",
    "run_experiment",
    "run_point",
    "scatter_svg",
    "stable_rows",
    "summary",
    "table",
    "to_edgelist",
    "to_graph6",
    "write_graph",
    "write_records",
]
