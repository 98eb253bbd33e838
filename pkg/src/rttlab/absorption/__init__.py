"""Absorbers, reachability, templates and partition merging."""

from __future__ import annotations

from .absorbers import compact_absorber, find_absorber, find_disjoint_absorbers, proof_absorber, verify_absorber
from .absorbing_set import AbsorbingSet, absorbs, build_absorbing_set, reverify_ledger
from .merging import (
    MergeStep,
    PartitionEvidence,
    detect_partition,
    initial_partition,
    merge_partition,
    robust_vectors,
)
from .partition import IndexVector, VertexPartition, index_vector, k_vectors, transferral
from .reachability import (
    ReachabilityCertificate,
    RobustnessCertificate,
    build_fan,
    concatenate_reachability,
    find_connector,
    find_disjoint_connectors,
    is_connector,
    robust_vector_certificate,
)
from .template import Template, montgomery_template

__all__ = [
    "AbsorbingSet",
    "IndexVector",
    "MergeStep",
    "PartitionEvidence",
    "ReachabilityCertificate",
    "RobustnessCertificate",
    "Template",
    "VertexPartition",
    "absorbs",
    "build_absorbing_set",
    "build_fan",
    "compact_absorber",
    "concatenate_reachability",
    "detect_partition",
    "find_absorber",
    "find_connector",
    "find_disjoint_absorbers",
    "find_disjoint_connectors",
    "index_vector",
    "initial_partition",
    "is_connector",
    "k_vectors",
    "merge_partition",
    "montgomery_template",
    "proof_absorber",
    "reverify_ledger",
    "robust_vector_certificate",
    "robust_vectors",
    "transferral",
    "verify_absorber",
]
