"""Desk-scale laboratory for Ramsey-Turan tiling problems."""

from __future__ import annotations

from .errors import (
    CertificateError,
    ConstructionError,
    EmptyGraphError,
    HostMismatchError,
    ParseError,
    PatternError,
    ResourceError,
    RttLabError,
)
from .graph import (
    Graph,
    VertexSet,
    clique_number,
    edges_between,
    girth,
    max_clique,
    min_degree,
)
from .patterns import Pattern, PatternCopy, embed_pattern_at, enumerate_copies, gamma
from .tiling import SolveOutcome, Tiling, has_factor, max_tiling, quasiperfect_gap

__version__ = "0.1.0"
